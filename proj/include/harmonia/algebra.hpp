#pragma once

#include <functional>
#include <span>
#include <utility>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "harmonia/numeric.hpp"

namespace harmonia::alg {

using Matrix = Eigen::MatrixXcd;

enum class Carrier { Matrix, GridFn, C1Fn };

/// Element of one of three concrete unital algebras: d x d complex matrices
/// with the operator norm, samples on the M-point grid x_i = i/(M-1) of [0,1]
/// with the sup norm, and (value, derivative) sample pairs with the C^1 norm.
class Element {
 public:
  static Element matrix(Matrix m);
  static Element grid_fn(std::vector<Complex> values);
  static Element c1_fn(std::vector<Complex> values, std::vector<Complex> derivs);

  static Element sample_grid(std::size_t M, const std::function<Complex(double)>& f);
  /// Samples f and f'; rejects derivative data whose centered differences
  /// disagree with f' by more than 10/M^2 at interior points.
  static Element sample_c1(std::size_t M, const std::function<Complex(double)>& f,
                           const std::function<Complex(double)>& fprime);

  Carrier carrier() const;
  /// d for matrices, M for grid carriers.
  std::size_t size() const;

  const Matrix& mat() const;
  std::span<const Complex> values() const;
  std::span<const Complex> derivs() const;

  Element identity() const;
  Element zero() const;
  bool same_shape(const Element& o) const;

  /// Largest entry modulus; a cheap scale for renormalizing powers.
  double max_abs() const;

  friend Element operator+(const Element& x, const Element& y);
  friend Element operator-(const Element& x, const Element& y);
  friend Element operator*(const Element& x, const Element& y);
  friend Element operator*(Complex s, const Element& x);

 private:
  struct Grid {
    std::vector<Complex> v;
  };
  struct C1 {
    std::vector<Complex> v;
    std::vector<Complex> d;
  };
  explicit Element(std::variant<Matrix, Grid, C1> p) : payload_(std::move(p)) {}
  std::variant<Matrix, Grid, C1> payload_;
};

enum class NormMethod { Exact, PowerIteration };

struct NormReport {
  double value;
  NormMethod method;
  std::size_t iterations = 0;
  double tolerance = 0.0;
};

/// Matrix: largest singular value by power iteration on x* x (relative
/// tolerance 1e-12, at most 10^4 iterations); GridFn: max modulus; C1Fn: sup
/// of values plus sup of derivatives.
NormReport alg_norm(const Element& x);
double norm(const Element& x);

Element power(const Element& x, unsigned n);

struct NeumannResult {
  Element inverse;
  double bound;       ///< 1/(1 - ||a||) when ||a|| < 1, else sum of ||a^j|| over used terms
  std::size_t terms;
  double residual;    ///< ||(e - a) S - e||
};

/// Partial sums of sum_j a^j until ||(e - a) S - e|| <= tol. Requires
/// ||a^k|| < 1 for some k <= 64; at most 10^5 terms.
NeumannResult neumann_inverse(const Element& a, double tol);

/// True iff a_norm * b_inv_norm < 1.
bool perturb_invertible(double b_inv_norm, double a_norm);

/// (b - a)^{-1} = b^{-1} (e - a b^{-1})^{-1}, the second factor by the
/// Neumann series.
NeumannResult invert_perturbed(const Element& b_inv, const Element& a, double tol);

struct SpectralRadius {
  double estimate;                               ///< min of ||x^n||^{1/n} over computed n
  std::vector<std::pair<unsigned, double>> sequence;  ///< (n, ||x^n||^{1/n})
};

/// Evaluates ||x^n||^{1/n} at n = 1..16, at powers of two, and at the last
/// eight n <= maxPower. Powers are carried as (renormalized element, log scale).
SpectralRadius spectral_radius(const Element& x, unsigned max_power);

/// max |eigenvalue| for d <= 8 (complex Schur via Eigen).
double spectral_radius_eig(const Element& x);

/// Cumulative trapezoid matrix on the M-point grid of [0,1].
Matrix volterra_matrix(std::size_t M);

/// sup-norm operator norm of T^n for the discretized Volterra operator; the
/// entries are nonnegative, so this is max_i (T^n 1)_i. Requires 1 <= n <= 12, M >= 500.
double volterra_power_norm(unsigned n, std::size_t M);

struct CStarReport {
  double norm;
  double adjoint_norm;
  double star_product_norm;  ///< ||T* T||
  double commutator_norm;    ///< ||T* T - T T*||
  bool normal;
  std::vector<std::pair<unsigned, double>> power_norms;  ///< ||T^l||, l = 1..8
  bool power_identity;  ///< ||T^l|| = ||T||^l for l <= 8; only asserted when normal
};

CStarReport cstar_checks(const Element& T);

/// Pointwise product with derivative f' g + f g'.
Element c1_product(const Element& f, const Element& g);

}  // namespace harmonia::alg
