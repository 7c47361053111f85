#include "harmonia/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "harmonia/error.hpp"

namespace harmonia {

namespace {

void check_keys(std::size_t dim, const Polynomial::Terms& t) {
  for (const auto& [alpha, c] : t) {
    require(alpha.size() == dim, "polynomial term has wrong dimension");
  }
}

// alpha_j (alpha_j - 1) ... (alpha_j - k + 1) as a double (exact at the
// sizes used here).
double falling(unsigned a, unsigned k) {
  double r = 1.0;
  for (unsigned i = 0; i < k; ++i) r *= static_cast<double>(a - i);
  return r;
}

}  // namespace

Polynomial::Polynomial(std::size_t dim) : dim_(dim) {
  require(dim >= 1, "polynomial dimension must be positive");
}

Polynomial::Polynomial(std::size_t dim, Terms terms)
    : dim_(dim), terms_(std::move(terms)) {
  require(dim >= 1, "polynomial dimension must be positive");
  check_keys(dim_, terms_);
  purge();
}

Polynomial Polynomial::constant(std::size_t dim, Complex c) {
  Terms t;
  t[MultiIndex(dim)] = c;
  return Polynomial(dim, std::move(t));
}

Polynomial Polynomial::monomial(const MultiIndex& alpha, Complex c) {
  Terms t;
  t[alpha] = c;
  return Polynomial(alpha.size(), std::move(t));
}

Polynomial Polynomial::variable(std::size_t dim, std::size_t j) {
  require(j < dim, "variable index out of range");
  MultiIndex a(dim);
  a[j] = 1;
  return monomial(a);
}

void Polynomial::purge() {
  std::erase_if(terms_, [](const auto& kv) { return kv.second == Complex{}; });
}

Complex Polynomial::coefficient(const MultiIndex& alpha) const {
  auto it = terms_.find(alpha);
  return it == terms_.end() ? Complex{} : it->second;
}

unsigned Polynomial::degree() const {
  return terms_.empty() ? 0U : terms_.rbegin()->first.degree();
}

Complex Polynomial::operator()(std::span<const Complex> z) const {
  require(z.size() == dim_, "polynomial evaluation: dimension mismatch");
  std::vector<Complex> vals;
  vals.reserve(terms_.size());
  for (const auto& [alpha, c] : terms_) vals.push_back(c * monomial_eval(z, alpha));
  return pairwise_sum(vals);
}

Polynomial Polynomial::operator+(const Polynomial& other) const {
  require(dim_ == other.dim_, "polynomial dimension mismatch");
  Terms t = terms_;
  for (const auto& [alpha, c] : other.terms_) t[alpha] += c;
  return Polynomial(dim_, std::move(t));
}

Polynomial Polynomial::operator-(const Polynomial& other) const {
  return *this + other * Complex{-1.0, 0.0};
}

Polynomial Polynomial::operator*(const Polynomial& other) const {
  return poly_mul(*this, other);
}

Polynomial Polynomial::operator*(Complex s) const {
  Terms t;
  for (const auto& [alpha, c] : terms_) t[alpha] = c * s;
  return Polynomial(dim_, std::move(t));
}

Complex poly_eval(const Polynomial& p, std::span<const Complex> z) {
  return p(z);
}

Polynomial poly_mul(const Polynomial& p, const Polynomial& q) {
  require(p.dim() == q.dim(), "poly_mul: dimension mismatch");
  Polynomial::Terms t;
  for (const auto& [a, ca] : p.terms()) {
    for (const auto& [b, cb] : q.terms()) t[a + b] += ca * cb;
  }
  return Polynomial(p.dim(), std::move(t));
}

Polynomial poly_derivative(const Polynomial& p, const MultiIndex& alpha) {
  require(p.dim() == alpha.size(), "poly_derivative: dimension mismatch");
  Polynomial::Terms t;
  for (const auto& [beta, c] : p.terms()) {
    if (!alpha.dominated_by(beta)) continue;
    double scale = 1.0;
    for (std::size_t j = 0; j < alpha.size(); ++j) {
      scale *= falling(beta[j], alpha[j]);
    }
    t[beta - alpha] += c * scale;
  }
  return Polynomial(p.dim(), std::move(t));
}

Polynomial leibniz_expand(const Polynomial& p, const Polynomial& q,
                          const MultiIndex& alpha) {
  require(p.dim() == q.dim() && p.dim() == alpha.size(),
          "leibniz_expand: dimension mismatch");
  Polynomial sum(p.dim());
  for (const MultiIndex& beta : sub_indices(alpha)) {
    const MultiIndex gamma = alpha - beta;
    const double m = static_cast<double>(multinomial(alpha, beta, gamma));
    sum = sum + poly_mul(poly_derivative(p, beta), poly_derivative(q, gamma)) * m;
  }
  return sum;
}

PowerSeriesTrunc::PowerSeriesTrunc(std::size_t dim, unsigned max_degree)
    : dim_(dim), max_degree_(max_degree) {
  require(dim >= 1, "series dimension must be positive");
}

PowerSeriesTrunc::PowerSeriesTrunc(std::size_t dim, unsigned max_degree,
                                   Polynomial::Terms terms)
    : dim_(dim), max_degree_(max_degree), terms_(std::move(terms)) {
  require(dim >= 1, "series dimension must be positive");
  for (const auto& [alpha, c] : terms_) {
    require(alpha.size() == dim, "series term has wrong dimension");
    require(alpha.degree() <= max_degree,
            "series term degree exceeds the truncation order");
  }
  std::erase_if(terms_, [](const auto& kv) { return kv.second == Complex{}; });
}

PowerSeriesTrunc PowerSeriesTrunc::geometric(std::size_t dim,
                                             unsigned max_degree) {
  Polynomial::Terms t;
  for (unsigned l = 0; l <= max_degree; ++l) {
    for (const MultiIndex& a : indices_of_degree(dim, l)) t[a] = 1.0;
  }
  return PowerSeriesTrunc(dim, max_degree, std::move(t));
}

PowerSeriesTrunc PowerSeriesTrunc::exponential(unsigned max_degree) {
  Polynomial::Terms t;
  double c = 1.0;
  for (unsigned l = 0; l <= max_degree; ++l) {
    if (l > 0) c /= static_cast<double>(l);
    t[MultiIndex{static_cast<int>(l)}] = c;
  }
  return PowerSeriesTrunc(1, max_degree, std::move(t));
}

Polynomial PowerSeriesTrunc::as_polynomial() const {
  return Polynomial(dim_, terms_);
}

std::vector<Polynomial> homogeneous_parts(const PowerSeriesTrunc& s) {
  std::vector<Polynomial::Terms> parts(s.max_degree() + 1);
  for (const auto& [alpha, c] : s.terms()) parts[alpha.degree()][alpha] = c;
  std::vector<Polynomial> out;
  out.reserve(parts.size());
  for (auto& t : parts) out.emplace_back(s.dim(), std::move(t));
  return out;
}

double root_test_estimate(const PowerSeriesTrunc& s,
                          std::span<const Complex> z) {
  require(s.max_degree() >= 4, "root_test_estimate: maxDegree must be >= 4");
  require(z.size() == s.dim(), "root_test_estimate: dimension mismatch");
  const auto parts = homogeneous_parts(s);
  const unsigned top = s.max_degree();
  const unsigned lo = std::max(1U, (top + 1) / 2);
  double best = 0.0;
  for (unsigned l = lo; l <= top; ++l) {
    const double m = std::abs(parts[l](z));
    best = std::max(best, std::pow(m, 1.0 / l));
  }
  return best;
}

SeriesValue exp_series(Complex z, unsigned order) {
  const double az = std::abs(z);
  Complex term{1.0, 0.0};
  Complex sum = term;
  double abs_sum = 1.0;
  for (unsigned j = 1; j <= order; ++j) {
    term *= z / static_cast<double>(j);
    sum += term;
    abs_sum += std::abs(term);
  }
  // |z|^{N+1}/(N+1)! computed without overflow
  double tail = 1.0;
  for (unsigned j = 1; j <= order + 1; ++j) tail *= az / static_cast<double>(j);
  const double eps = std::numeric_limits<double>::epsilon();
  const double rounding = 4.0 * (order + 2) * eps * abs_sum;
  return {sum, tail * std::exp(az) + rounding};
}

}  // namespace harmonia
