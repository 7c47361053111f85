#pragma once

#include <functional>
#include <span>
#include <vector>

#include "harmonia/numeric.hpp"

namespace harmonia::torus {

using Point = std::vector<Complex>;
using SignedIndex = std::vector<int>;

/// Uniform grid on T^n with N (even, >= 4) samples per dimension; grid
/// point k is (e^{2 pi i k_1/N}, ..., e^{2 pi i k_n/N}), stored row-major.
class TorusGrid {
 public:
  TorusGrid(std::size_t dim, std::size_t samples_per_dim);

  std::size_t dim() const { return dim_; }
  std::size_t n() const { return n_; }
  std::size_t size() const { return size_; }
  /// Largest admissible |alpha_j|: N/2 - 1 (the Nyquist bin is excluded).
  int max_band() const { return static_cast<int>(n_ / 2) - 1; }

  /// Per-dimension grid indices of flat index `flat`.
  std::vector<std::size_t> unflatten(std::size_t flat) const;
  Point point(std::size_t flat) const;
  /// e^{2 pi i m / N}, exact at quarter turns.
  Complex root(long long m) const;

  bool operator==(const TorusGrid&) const = default;

 private:
  std::size_t dim_;
  std::size_t n_;
  std::size_t size_;
  std::vector<Complex> roots_;
};

class TorusFunction {
 public:
  TorusFunction(TorusGrid grid, std::vector<Complex> values);
  static TorusFunction sample(const TorusGrid& grid,
                              const std::function<Complex(const Point&)>& f);

  const TorusGrid& grid() const { return grid_; }
  std::span<const Complex> values() const { return values_; }
  const Complex& operator[](std::size_t flat) const { return values_[flat]; }

 private:
  TorusGrid grid_;
  std::vector<Complex> values_;
};

/// Coefficients a(alpha) for alpha in Z^n with max_j |alpha_j| <= K, dense.
class CoeffTable {
 public:
  CoeffTable(std::size_t dim, int band);

  std::size_t dim() const { return dim_; }
  int band() const { return band_; }
  std::size_t size() const { return data_.size(); }

  bool in_band(std::span<const int> alpha) const;
  Complex at(std::span<const int> alpha) const;
  void set(std::span<const int> alpha, Complex v);
  SignedIndex index(std::size_t flat) const;
  const Complex& operator[](std::size_t flat) const { return data_[flat]; }
  Complex& operator[](std::size_t flat) { return data_[flat]; }

  /// sum |a(alpha)|
  double l1_norm() const;

  /// Unit mass at alpha.
  static CoeffTable delta(std::size_t dim, int band, std::span<const int> alpha);

 private:
  std::size_t flat(std::span<const int> alpha) const;

  std::size_t dim_;
  int band_;
  std::vector<Complex> data_;
};

/// Riemann sum N^{-n} sum_k f(z_k) z_k^{-alpha}; requires |alpha_j| <= N/2 - 1.
Complex fourier_coeff(const TorusFunction& f, std::span<const int> alpha);

/// All coefficients with |alpha_j| <= band (default: the full admissible band).
CoeffTable analyze(const TorusFunction& f, int band = -1);

/// sum_alpha c(alpha) z~^alpha with z~_j^{a} = conj(z_j)^{-a} for a < 0.
/// Requires the point in the closed unit polydisk.
Complex synthesize(const CoeffTable& c, std::span<const Complex> z);

/// Grid convolution N^{-n} sum_w f(z . w^{-1}) g(w).
TorusFunction convolve_torus(const TorusFunction& f, const TorusFunction& g);

/// (a * b)(alpha) = sum_beta a(alpha - beta) b(beta); output band Ka + Kb.
CoeffTable z_convolve(const CoeffTable& a, const CoeffTable& b);

/// P(z, w) = (1/2pi) (1 - |z|^2) / |w - z|^2 for |z| < 1, |w| = 1.
double poisson_kernel(Complex z, Complex w);
/// P_n(z, w) = prod_j P(z_j, w_j).
double poisson_kernel_n(std::span<const Complex> z, std::span<const Complex> w);

/// Grid quadrature of P_n(z, .) over T^n with |dw| measure (should be 1).
double poisson_mass(std::span<const Complex> z, std::size_t samples_per_dim);

/// Kernel quadrature N^{-n} sum_k f(w_k) (2 pi)^n P_n(z, w_k).
Complex poisson_extend(const TorusFunction& f, std::span<const Complex> z);

/// Bound on |poisson_extend - synthesize(analyze(f))| for f of band K on an
/// N-grid, from the aliased Poisson coefficients rho^{|m|}, |m| >= N - K.
double poisson_alias_bound(const CoeffTable& c, std::size_t samples_per_dim,
                           std::span<const Complex> z);

struct AbelSum {
  Complex value;
  /// sup_j |a_j| r^{J+1} / (1 - r)
  double tail_bound;
};

/// sum_{j <= J} a_j r^j for r in [0, 1).
AbelSum abel_sum(std::span<const Complex> a, double r);

/// c_n = sum_{j=0}^n a_j b_{n-j}, for n < min(len a, len b).
std::vector<Complex> cauchy_product(std::span<const Complex> a,
                                    std::span<const Complex> b);

struct Parseval {
  double sum_of_squares;   ///< sum over the band of |f^(alpha)|^2
  double energy_integral;  ///< N^{-n} sum_k |f(z_k)|^2
};

Parseval parseval(const TorusFunction& f);

/// Samples f(r e^{2 pi i k/N}), k = 0..N-1.
std::vector<Complex> sample_circle(const std::function<Complex(Complex)>& f,
                                   double r, std::size_t n);

/// Trapezoid Laurent coefficient (1/N) sum_k f(r e^{i t_k}) r^{-j} e^{-i j t_k}.
/// Requires N > 2|j| and r > 0.
Complex laurent_coeff(std::span<const Complex> samples, double r, int j);

/// r^{-j} max_k |f(r e^{i t_k})|.
double laurent_coeff_bound(std::span<const Complex> samples, double r, int j);

struct AnalyticTypeReport {
  bool analytic;
  std::vector<SignedIndex> offending;
};

/// True iff every coefficient with a negative component has modulus <= tol.
AnalyticTypeReport analytic_type_test(const CoeffTable& c, double tol);

struct MaxPrincipleReport {
  double gap;           ///< interior_max - boundary_max
  double interior_max;
  double boundary_max;  ///< grid maximum refined by local ascent
};

/// Interior sup of |synthesize| over the given points minus the boundary sup
/// over T^n, the latter located on a grid with `boundary_samples` per
/// dimension and refined by coordinate ascent.
MaxPrincipleReport max_principle_gap(const CoeffTable& c,
                                     std::span<const Point> interior,
                                     std::size_t boundary_samples);

/// Finite atomic measure on T^n. Atom locations are projected to exact unit
/// modulus; coincident atoms are merged by summing weights.
class TorusAtomicMeasure {
 public:
  struct Atom {
    Point z;
    Complex weight;
  };

  TorusAtomicMeasure(std::size_t dim, std::vector<Atom> atoms);

  std::size_t dim() const { return dim_; }
  const std::vector<Atom>& atoms() const { return atoms_; }
  double total_variation() const;

 private:
  std::size_t dim_;
  std::vector<Atom> atoms_;
};

/// mu^(alpha) = sum_k c_k z_k^{-alpha}.
Complex measure_fourier_coeff(const TorusAtomicMeasure& mu,
                              std::span<const int> alpha);

/// Atoms z_k . w_l with weights c_k d_l.
TorusAtomicMeasure measure_convolve(const TorusAtomicMeasure& mu,
                                    const TorusAtomicMeasure& nu);

/// Grid function z -> sum_k c_k (2 pi)^n P_n(r . z, z_k), r_j in [0, 1).
TorusFunction poisson_smooth(const TorusAtomicMeasure& mu,
                             std::span<const double> r, const TorusGrid& grid);

/// N^{-n} sum_k f(z_k) g(z_k), the normalized integral of f g over T^n.
Complex torus_mean(const TorusFunction& f, const TorusFunction& g);

}  // namespace harmonia::torus
