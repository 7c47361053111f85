#pragma once

#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "harmonia/numeric.hpp"

namespace harmonia::line {

using RealPoint = std::vector<double>;

enum class Decay { Compact, Exponential };

/// Samples of f on the uniform grid x_k = -L + k h, k = 0..M-1 per axis,
/// h = 2L/M, stored row-major.
class LineFunction {
 public:
  LineFunction(std::size_t dim, double L, std::size_t M, std::vector<Complex> values,
               Decay decay = Decay::Compact);

  static LineFunction sample(std::size_t dim, double L, std::size_t M,
                             const std::function<Complex(const RealPoint&)>& f,
                             Decay decay = Decay::Compact);

  std::size_t dim() const { return dim_; }
  double half_width() const { return L_; }
  std::size_t m() const { return m_; }
  double h() const { return 2.0 * L_ / static_cast<double>(m_); }
  std::size_t size() const { return values_.size(); }
  Decay decay() const { return decay_; }
  std::span<const Complex> values() const { return values_; }
  const Complex& operator[](std::size_t flat) const { return values_[flat]; }

  /// Grid coordinate -L + i h.
  double coord(std::size_t i) const { return -L_ + static_cast<double>(i) * h(); }
  std::vector<std::size_t> unflatten(std::size_t flat) const;
  RealPoint point(std::size_t flat) const;
  bool same_grid(const LineFunction& o) const;

  /// h^n sum |f(x_k)|
  double l1_norm() const;

  /// Pointwise a f + b g on a common grid.
  static LineFunction combine(Complex a, const LineFunction& f, Complex b,
                              const LineFunction& g);

 private:
  std::size_t dim_;
  double L_;
  std::size_t m_;
  std::vector<Complex> values_;
  Decay decay_;
};

/// One-dimensional closed-form factor.
struct Factor {
  enum class Kind { QPlus, QMinus, PA, Indicator };
  Kind kind;
  double a;
  double b = 0.0;  ///< right end for indicators

  static Factor q_plus(double a);
  static Factor q_minus(double a);
  static Factor p_a(double a);
  static Factor indicator(double a, double b);

  double operator()(double x) const;
  /// Transform at zeta; throws PreconditionError outside the admissible region.
  Complex ft(Complex zeta) const;
  double l1_norm() const;
  /// sup over real |xi| >= R of |ft(xi)|.
  double tail_sup(double R) const;
};

/// Product of one-dimensional factors, one per axis.
class ClosedFormFn {
 public:
  explicit ClosedFormFn(std::vector<Factor> factors);
  ClosedFormFn(Factor f) : ClosedFormFn(std::vector<Factor>{f}) {}  // NOLINT

  std::size_t dim() const { return factors_.size(); }
  const std::vector<Factor>& factors() const { return factors_; }
  double operator()(std::span<const double> x) const;
  double l1_norm() const;

 private:
  std::vector<Factor> factors_;
};

/// zeta = xi + i eta with signature eps; requires eps_j eta_j >= 0.
class HalfPlanePoint {
 public:
  HalfPlanePoint(std::vector<Complex> zeta, std::vector<int> eps);
  /// Real point; signature all +1.
  static HalfPlanePoint real(std::span<const double> xi);

  const std::vector<Complex>& zeta() const { return zeta_; }
  const std::vector<int>& eps() const { return eps_; }
  bool is_real() const;

 private:
  std::vector<Complex> zeta_;
  std::vector<int> eps_;
};

/// Trapezoid transform h^n sum f(x_k) e^{-i xi . x_k}; requires |xi_j| h <= pi/4.
Complex ft_quadrature(const LineFunction& f, std::span<const double> xi);

/// Closed-form transform, product over axes.
Complex ft_closed_form(const ClosedFormFn& g, std::span<const Complex> zeta);

/// Samples of g on the grid.
LineFunction sample_closed_form(const ClosedFormFn& g, double L, std::size_t M);

/// Discrete convolution h^n sum_k f(x_k) g(y - x_k) on [-2L, 2L]^n with 2M
/// samples per axis (same spacing h).
LineFunction convolve_line(const LineFunction& f, const LineFunction& g);

/// x -> f(x - t); t_j must be integer multiples of h, and no nonzero sample
/// may leave the box.
LineFunction translate(const LineFunction& f, std::span<const double> t);

/// x -> e^{i w . x} f(x).
LineFunction modulate(const LineFunction& f, std::span<const double> w);
/// Complex w is admitted only for compactly supported f.
LineFunction modulate(const LineFunction& f, std::span<const Complex> w);

/// P_{n,a}(x) = pi^{-n} prod a_j / (a_j^2 + x_j^2).
double poisson_Rn(std::span<const double> a, std::span<const double> x);

struct MassReport {
  double quadrature;  ///< trapezoid over [-X, X]^n, per axis
  double tail;        ///< analytic mass outside the box
  double total;
};

/// Unit-mass check: per-axis trapezoid of P_a over [-X, X] with M intervals
/// plus the analytic tail 1 - (2/pi) atan(X/a).
MassReport poisson_Rn_mass(std::span<const double> a, double X, std::size_t M);

/// Integral of p_a^ = 2a/(a^2 + xi^2) over R: trapezoid on [-X, X] with M
/// intervals plus the analytic tail 2 pi - 4 atan(X/a).
MassReport pa_hat_integral(double a, double X, std::size_t M);

/// sup over grid points of |(P_{n,a} * f~)(x_k) - f(x_k)|, where f~ is the
/// piecewise-linear interpolant of the samples; the convolution is exact.
double approx_identity_error(const LineFunction& f, std::span<const double> a);

struct FormulaCheck {
  Complex lhs;
  Complex rhs;
  double tolerance;
};

/// lhs = int f^(xi) g(xi) dxi, rhs = int f(x) g^(x) dx, both as nested sums.
/// Requires L_g h_f <= pi/4 and L_f h_g <= pi/4.
FormulaCheck multiplication_formula_check(const LineFunction& f, const LineFunction& g);

struct InversionCheck {
  Complex lhs;        ///< Gauss-Legendre quadrature of f^(xi) e^{i xi.w} e^{-sum a|xi|} on a box
  Complex rhs;        ///< (2 pi)^n (P_{n,a} * f)(w), the sum taken over grid samples
  double tail_bound;  ///< bound on the part of the lhs integral outside the box
  double box;         ///< half-width of the xi box
};

/// Requires a_j > 0 and the box half-width pi/(4h) large enough for the tail
/// to fall below `tail_tol`; the box stops where the tail does.
InversionCheck inversion_check(const LineFunction& f, std::span<const double> a,
                               std::span<const double> w, double tail_tol = 1e-7);

/// Finite atomic measure on R^n with merged duplicate locations.
class LineAtomicMeasure {
 public:
  struct Atom {
    RealPoint u;
    Complex weight;
  };

  LineAtomicMeasure(std::size_t dim, std::vector<Atom> atoms);
  static LineAtomicMeasure delta(RealPoint u);

  std::size_t dim() const { return dim_; }
  const std::vector<Atom>& atoms() const { return atoms_; }
  double total_variation() const;
  bool operator==(const LineAtomicMeasure& o) const;

 private:
  std::size_t dim_;
  std::vector<Atom> atoms_;
};

/// mu^(zeta) = sum c_k e^{-i zeta . u_k}. For non-real zeta every atom must lie
/// in the quadrant Q_{n,-eps}, so that |e^{-i zeta . u}| <= 1.
Complex measure_ft(const LineAtomicMeasure& mu, const HalfPlanePoint& zeta);

LineAtomicMeasure measure_convolve(const LineAtomicMeasure& mu, const LineAtomicMeasure& nu);

/// x -> sum c_k g(x - u_k) on the grid of g; atoms must be on-grid shifts.
LineFunction fn_measure_convolve(const LineFunction& g, const LineAtomicMeasure& mu);
/// x -> sum c_k g(x - u_k) for a closed form.
Complex fn_measure_convolve(const ClosedFormFn& g, const LineAtomicMeasure& mu,
                            std::span<const double> x);

struct RLProfile {
  std::vector<std::pair<double, double>> points;  ///< (R, sup_{|xi|_inf >= R} |g^(xi)|)
  bool decaying;
};

/// Exact profile from the closed forms.
RLProfile riemann_lebesgue_profile(const ClosedFormFn& g, std::span<const double> R);
/// Sampled one-dimensional f: sup over a xi grid inside the adequacy band.
RLProfile riemann_lebesgue_profile(const LineFunction& f, std::span<const double> R);
/// Atomic measure: the transform is almost periodic, so the profile is the
/// same sup for every R and a nonzero measure is flagged as non-decaying.
RLProfile riemann_lebesgue_profile(const LineAtomicMeasure& mu, std::span<const double> R);

}  // namespace harmonia::line
