#pragma once

#include <map>
#include <span>
#include <vector>

#include "harmonia/multiindex.hpp"
#include "harmonia/numeric.hpp"

namespace harmonia {

/// Sparse polynomial on C^n: a finite map alpha -> a_alpha. Exactly-zero
/// coefficients are never stored; every arithmetic result is purged.
class Polynomial {
 public:
  using Terms = std::map<MultiIndex, Complex>;

  explicit Polynomial(std::size_t dim);
  Polynomial(std::size_t dim, Terms terms);

  static Polynomial constant(std::size_t dim, Complex c);
  static Polynomial monomial(const MultiIndex& alpha, Complex c = 1.0);
  /// The coordinate function z_j (0-based j).
  static Polynomial variable(std::size_t dim, std::size_t j);

  std::size_t dim() const { return dim_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  Complex coefficient(const MultiIndex& alpha) const;
  /// Largest |alpha| among stored terms (0 for the zero polynomial).
  unsigned degree() const;

  Complex operator()(std::span<const Complex> z) const;

  Polynomial operator+(const Polynomial& other) const;
  Polynomial operator-(const Polynomial& other) const;
  Polynomial operator*(const Polynomial& other) const;
  Polynomial operator*(Complex s) const;

  bool operator==(const Polynomial& other) const = default;

 private:
  void purge();

  std::size_t dim_;
  Terms terms_;
};

Complex poly_eval(const Polynomial& p, std::span<const Complex> z);

/// Cauchy product: c_gamma = sum over alpha + beta = gamma of a_alpha b_beta.
Polynomial poly_mul(const Polynomial& p, const Polynomial& q);

/// Term-by-term partial derivative d^alpha p.
Polynomial poly_derivative(const Polynomial& p, const MultiIndex& alpha);

/// sum over beta + gamma = alpha of alpha!/(beta! gamma!) d^beta p d^gamma q.
Polynomial leibniz_expand(const Polynomial& p, const Polynomial& q,
                          const MultiIndex& alpha);

/// Formal power series truncated at total degree maxDegree.
class PowerSeriesTrunc {
 public:
  PowerSeriesTrunc(std::size_t dim, unsigned max_degree);
  PowerSeriesTrunc(std::size_t dim, unsigned max_degree,
                   Polynomial::Terms terms);

  /// sum_{|alpha| <= D} z^alpha (geometric in every variable).
  static PowerSeriesTrunc geometric(std::size_t dim, unsigned max_degree);
  /// One-variable sum_{l <= D} z^l / l!.
  static PowerSeriesTrunc exponential(unsigned max_degree);

  std::size_t dim() const { return dim_; }
  unsigned max_degree() const { return max_degree_; }
  const Polynomial::Terms& terms() const { return terms_; }
  Polynomial as_polynomial() const;

 private:
  std::size_t dim_;
  unsigned max_degree_;
  Polynomial::Terms terms_;
};

/// p_0, ..., p_D with p_l the degree-l homogeneous part.
std::vector<Polynomial> homogeneous_parts(const PowerSeriesTrunc& s);

/// Finite-order surrogate for limsup_l |p_l(z)|^{1/l}: the maximum of
/// |p_l(z)|^{1/l} over l in [ceil(D/2), D], l >= 1. Requires D >= 4.
double root_test_estimate(const PowerSeriesTrunc& s,
                          std::span<const Complex> z);

struct SeriesValue {
  Complex value;
  /// Truncation remainder |z|^{N+1}/(N+1)! E(|z|) plus a floating-point
  /// rounding allowance for the partial sum.
  double error_bound;
};

/// Partial sum of E(z) = sum_j z^j / j! through j = N.
SeriesValue exp_series(Complex z, unsigned order);

}  // namespace harmonia
