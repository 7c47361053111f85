#include "harmonia/algebra.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <random>

#include "harmonia/error.hpp"

namespace harmonia::alg {

namespace {

constexpr double kPowerTol = 1e-12;
constexpr std::size_t kPowerCap = 10000;

double max_modulus(std::span<const Complex> v) {
  double m = 0.0;
  for (const Complex& c : v) m = std::max(m, std::abs(c));
  return m;
}

void check_finite(std::span<const Complex> v) {
  for (const Complex& c : v) {
    require(std::isfinite(c.real()) && std::isfinite(c.imag()), "algebra element must be finite");
  }
}

// Power iteration for the top eigenvalue of A* A from the start vector v.
std::pair<double, std::size_t> top_singular(const Matrix& A, Eigen::VectorXcd v) {
  const Matrix G = A.adjoint() * A;
  std::mt19937_64 rng(0);
  std::normal_distribution<double> gauss;
  double lambda = 0.0;
  for (std::size_t it = 1; it <= kPowerCap; ++it) {
    double nv = v.norm();
    if (nv == 0.0) {
      // stagnated in the kernel; restart from a seeded random vector
      for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = Complex(gauss(rng), gauss(rng));
      nv = v.norm();
    }
    v /= nv;
    Eigen::VectorXcd w = G * v;
    const double next = v.dot(w).real();
    if (it > 1 && std::abs(next - lambda) <= kPowerTol * std::abs(next)) {
      return {std::sqrt(std::max(next, 0.0)), it};
    }
    lambda = next;
    v = std::move(w);
  }
  throw ConvergenceError("operator norm: power iteration did not converge");
}

}  // namespace

Element Element::matrix(Matrix m) {
  require(m.rows() == m.cols() && m.rows() >= 1, "matrix element must be square and nonempty");
  check_finite(std::span<const Complex>(m.data(), static_cast<std::size_t>(m.size())));
  return Element(std::move(m));
}

Element Element::grid_fn(std::vector<Complex> values) {
  require(values.size() >= 2, "grid function needs at least two samples");
  check_finite(values);
  return Element(Grid{std::move(values)});
}

Element Element::c1_fn(std::vector<Complex> values, std::vector<Complex> derivs) {
  require(values.size() >= 2 && values.size() == derivs.size(),
          "C1 function needs matching value and derivative samples");
  check_finite(values);
  check_finite(derivs);
  return Element(C1{std::move(values), std::move(derivs)});
}

Element Element::sample_grid(std::size_t M, const std::function<Complex(double)>& f) {
  require(M >= 2, "grid function needs at least two samples");
  std::vector<Complex> v(M);
  for (std::size_t i = 0; i < M; ++i) v[i] = f(static_cast<double>(i) / static_cast<double>(M - 1));
  return grid_fn(std::move(v));
}

Element Element::sample_c1(std::size_t M, const std::function<Complex(double)>& f,
                           const std::function<Complex(double)>& fprime) {
  require(M >= 3, "C1 function needs at least three samples");
  std::vector<Complex> v(M);
  std::vector<Complex> d(M);
  const double dx = 1.0 / static_cast<double>(M - 1);
  for (std::size_t i = 0; i < M; ++i) {
    const double x = static_cast<double>(i) * dx;
    v[i] = f(x);
    d[i] = fprime(x);
  }
  const double tol = 10.0 / (static_cast<double>(M) * static_cast<double>(M));
  for (std::size_t i = 1; i + 1 < M; ++i) {
    const Complex cd = (v[i + 1] - v[i - 1]) / (2.0 * dx);
    if (std::abs(cd - d[i]) > tol) {
      throw PreconditionError("sample_c1: derivative samples disagree with centered differences");
    }
  }
  return c1_fn(std::move(v), std::move(d));
}

Carrier Element::carrier() const {
  return static_cast<Carrier>(payload_.index());
}

std::size_t Element::size() const {
  if (const auto* m = std::get_if<Matrix>(&payload_)) return static_cast<std::size_t>(m->rows());
  if (const auto* g = std::get_if<Grid>(&payload_)) return g->v.size();
  return std::get<C1>(payload_).v.size();
}

const Matrix& Element::mat() const {
  const auto* m = std::get_if<Matrix>(&payload_);
  require(m != nullptr, "element is not a matrix");
  return *m;
}

std::span<const Complex> Element::values() const {
  if (const auto* g = std::get_if<Grid>(&payload_)) return g->v;
  if (const auto* c = std::get_if<C1>(&payload_)) return c->v;
  throw PreconditionError("matrix element has no sample values");
}

std::span<const Complex> Element::derivs() const {
  const auto* c = std::get_if<C1>(&payload_);
  require(c != nullptr, "element carries no derivative samples");
  return c->d;
}

Element Element::identity() const {
  const std::size_t n = size();
  switch (carrier()) {
    case Carrier::Matrix:
      return Element(Matrix(Matrix::Identity(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n))));
    case Carrier::GridFn:
      return Element(Grid{std::vector<Complex>(n, 1.0)});
    case Carrier::C1Fn:
      return Element(C1{std::vector<Complex>(n, 1.0), std::vector<Complex>(n, 0.0)});
  }
  return *this;
}

Element Element::zero() const { return Complex(0.0) * *this; }

bool Element::same_shape(const Element& o) const {
  return carrier() == o.carrier() && size() == o.size();
}

double Element::max_abs() const {
  if (const auto* m = std::get_if<Matrix>(&payload_)) return m->cwiseAbs().maxCoeff();
  if (const auto* g = std::get_if<Grid>(&payload_)) return max_modulus(g->v);
  const auto& c = std::get<C1>(payload_);
  return std::max(max_modulus(c.v), max_modulus(c.d));
}

namespace {

std::vector<Complex> zip(std::span<const Complex> a, std::span<const Complex> b,
                         Complex sa, Complex sb) {
  std::vector<Complex> r(a.size());
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = sa * a[i] + sb * b[i];
  return r;
}

Element linear(const Element& x, const Element& y, Complex sx, Complex sy) {
  require(x.same_shape(y), "algebra elements have different carriers or sizes");
  switch (x.carrier()) {
    case Carrier::Matrix:
      return Element::matrix(sx * x.mat() + sy * y.mat());
    case Carrier::GridFn:
      return Element::grid_fn(zip(x.values(), y.values(), sx, sy));
    case Carrier::C1Fn:
      return Element::c1_fn(zip(x.values(), y.values(), sx, sy),
                            zip(x.derivs(), y.derivs(), sx, sy));
  }
  return x;
}

}  // namespace

Element operator+(const Element& x, const Element& y) { return linear(x, y, 1.0, 1.0); }
Element operator-(const Element& x, const Element& y) { return linear(x, y, 1.0, -1.0); }

Element operator*(Complex s, const Element& x) {
  switch (x.carrier()) {
    case Carrier::Matrix:
      return Element::matrix(s * x.mat());
    case Carrier::GridFn:
      return Element::grid_fn(zip(x.values(), x.values(), s, 0.0));
    case Carrier::C1Fn:
      return Element::c1_fn(zip(x.values(), x.values(), s, 0.0),
                            zip(x.derivs(), x.derivs(), s, 0.0));
  }
  return x;
}

Element operator*(const Element& x, const Element& y) {
  require(x.same_shape(y), "algebra elements have different carriers or sizes");
  switch (x.carrier()) {
    case Carrier::Matrix:
      return Element::matrix(x.mat() * y.mat());
    case Carrier::GridFn: {
      std::vector<Complex> v(x.size());
      for (std::size_t i = 0; i < v.size(); ++i) v[i] = x.values()[i] * y.values()[i];
      return Element::grid_fn(std::move(v));
    }
    case Carrier::C1Fn:
      return c1_product(x, y);
  }
  return x;
}

Element c1_product(const Element& f, const Element& g) {
  require(f.carrier() == Carrier::C1Fn && g.carrier() == Carrier::C1Fn,
          "c1_product needs C1 elements");
  require(f.size() == g.size(), "c1_product: grid mismatch");
  const std::size_t n = f.size();
  std::vector<Complex> v(n);
  std::vector<Complex> d(n);
  for (std::size_t i = 0; i < n; ++i) {
    v[i] = f.values()[i] * g.values()[i];
    d[i] = f.derivs()[i] * g.values()[i] + f.values()[i] * g.derivs()[i];
  }
  return Element::c1_fn(std::move(v), std::move(d));
}

NormReport alg_norm(const Element& x) {
  switch (x.carrier()) {
    case Carrier::GridFn:
      return {max_modulus(x.values()), NormMethod::Exact};
    case Carrier::C1Fn:
      return {max_modulus(x.values()) + max_modulus(x.derivs()), NormMethod::Exact};
    case Carrier::Matrix:
      break;
  }
  const Matrix& A = x.mat();
  const double scale = A.cwiseAbs().maxCoeff();
  if (scale == 0.0) return {0.0, NormMethod::Exact};
  const Matrix B = A / scale;
  const auto n = B.rows();
  Eigen::VectorXcd ones = Eigen::VectorXcd::Ones(n);
  auto [s1, it1] = top_singular(B, ones);
  // a second, seeded start guards against a start vector orthogonal to the
  // top singular vector
  std::mt19937_64 rng(0);
  std::normal_distribution<double> gauss;
  Eigen::VectorXcd r(n);
  for (Eigen::Index i = 0; i < n; ++i) r[i] = Complex(gauss(rng), gauss(rng));
  auto [s2, it2] = top_singular(B, r);
  return {scale * std::max(s1, s2), NormMethod::PowerIteration, it1 + it2, kPowerTol};
}

double norm(const Element& x) { return alg_norm(x).value; }

Element power(const Element& x, unsigned n) {
  Element r = x.identity();
  Element b = x;
  while (n) {
    if (n & 1U) r = r * b;
    n >>= 1U;
    if (n) b = b * b;
  }
  return r;
}

NeumannResult neumann_inverse(const Element& a, double tol) {
  require(tol > 0.0, "neumann_inverse: tolerance must be positive");
  const double na = norm(a);
  {
    bool ok = false;
    Element p = a;
    for (unsigned k = 1; k <= 64; ++k) {
      if (norm(p) < 1.0) {
        ok = true;
        break;
      }
      p = p * a;
    }
    if (!ok) throw PreconditionError("neumann_inverse: no power a^k, k <= 64, has norm < 1");
  }
  const Element e = a.identity();
  const Element ema = e - a;
  Element S = e;
  Element P = a;  // a^terms
  double power_sum = 1.0;
  constexpr std::size_t kMaxTerms = 100000;
  for (std::size_t terms = 1; terms <= kMaxTerms; ++terms) {
    const double np = norm(P);
    // (e - a) S_m - e = -a^m
    if (np <= 0.5 * tol) {
      const double res = norm(ema * S - e);
      if (res <= tol) {
        const double bound = na < 1.0 ? 1.0 / (1.0 - na) : power_sum;
        return {S, bound, terms, res};
      }
    }
    S = S + P;
    power_sum += np;
    P = P * a;
  }
  throw ConvergenceError("neumann_inverse: residual above tolerance after 100000 terms");
}

bool perturb_invertible(double b_inv_norm, double a_norm) {
  require(b_inv_norm >= 0.0 && a_norm >= 0.0, "perturb_invertible: norms must be nonnegative");
  return a_norm * b_inv_norm < 1.0;
}

NeumannResult invert_perturbed(const Element& b_inv, const Element& a, double tol) {
  NeumannResult inner = neumann_inverse(a * b_inv, tol);
  inner.inverse = b_inv * inner.inverse;
  inner.bound *= norm(b_inv);
  return inner;
}

SpectralRadius spectral_radius(const Element& x, unsigned max_power) {
  require(max_power >= 8, "spectral_radius: maxPower must be at least 8");
  const double nx = norm(x);
  SpectralRadius out{0.0, {}};
  if (nx == 0.0) {
    out.sequence.emplace_back(1U, 0.0);
    return out;
  }
  struct Scaled {
    Element y;
    double log_scale;  // x^n / ||x||^n = e^{log_scale} y
  };
  auto renorm = [](Element y, double ls) {
    const double m = y.max_abs();
    if (m == 0.0) return Scaled{std::move(y), 0.0};
    return Scaled{(1.0 / m) * y, ls + std::log(m)};
  };
  auto mul = [&](const Scaled& p, const Scaled& q) {
    return renorm(p.y * q.y, p.log_scale + q.log_scale);
  };
  auto value = [&](const Scaled& p, unsigned n) {
    const double ny = norm(p.y);
    if (ny == 0.0) return 0.0;
    return nx * std::exp((p.log_scale + std::log(ny)) / static_cast<double>(n));
  };

  std::vector<unsigned> wanted;
  for (unsigned n = 1; n <= std::min(16U, max_power); ++n) wanted.push_back(n);
  for (unsigned n = 32; n <= max_power; n *= 2) wanted.push_back(n);
  for (unsigned n = max_power - 7; n <= max_power; ++n) wanted.push_back(n);
  std::sort(wanted.begin(), wanted.end());
  wanted.erase(std::unique(wanted.begin(), wanted.end()), wanted.end());

  const Scaled base = renorm(Complex(1.0 / nx) * x, 0.0);
  // squares base^{2^k}
  std::vector<Scaled> sq{base};
  while ((1U << sq.size()) <= max_power) sq.push_back(mul(sq.back(), sq.back()));
  auto pow_scaled = [&](unsigned n) {
    std::optional<Scaled> r;
    for (std::size_t k = 0; k < sq.size(); ++k) {
      if (n & (1U << k)) r = r ? mul(*r, sq[k]) : sq[k];
    }
    return *r;
  };

  out.estimate = std::numeric_limits<double>::infinity();
  std::optional<Scaled> cur;
  unsigned cur_n = 0;
  for (unsigned n : wanted) {
    if (cur && n == cur_n + 1) {
      cur = mul(*cur, base);
    } else {
      cur = pow_scaled(n);
    }
    cur_n = n;
    const double v = value(*cur, n);
    out.sequence.emplace_back(n, v);
    out.estimate = std::min(out.estimate, v);
  }
  return out;
}

double spectral_radius_eig(const Element& x) {
  const Matrix& A = x.mat();
  require(A.rows() <= 8, "spectral_radius_eig: dimension must be <= 8");
  Eigen::ComplexEigenSolver<Matrix> es(A, false);
  if (es.info() != Eigen::Success) {
    throw ConvergenceError("spectral_radius_eig: eigenvalue iteration did not converge");
  }
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

Matrix volterra_matrix(std::size_t M) {
  require(M >= 2, "volterra_matrix: need at least two grid points");
  const double dx = 1.0 / static_cast<double>(M - 1);
  const auto m = static_cast<Eigen::Index>(M);
  Matrix T = Matrix::Zero(m, m);
  for (Eigen::Index i = 1; i < m; ++i) {
    T(i, 0) = 0.5 * dx;
    for (Eigen::Index j = 1; j < i; ++j) T(i, j) = dx;
    T(i, i) = 0.5 * dx;
  }
  return T;
}

double volterra_power_norm(unsigned n, std::size_t M) {
  require(n >= 1 && n <= 12, "volterra_power_norm: n must lie in 1..12");
  require(M >= 500, "volterra_power_norm: grid must have at least 500 points");
  const double dx = 1.0 / static_cast<double>(M - 1);
  std::vector<double> v(M, 1.0);
  std::vector<double> w(M);
  for (unsigned k = 0; k < n; ++k) {
    w[0] = 0.0;
    double acc = 0.0;
    for (std::size_t i = 1; i < M; ++i) {
      acc += 0.5 * dx * (v[i - 1] + v[i]);
      w[i] = acc;
    }
    std::swap(v, w);
  }
  return *std::max_element(v.begin(), v.end());
}

CStarReport cstar_checks(const Element& T) {
  const Matrix& A = T.mat();
  require(A.rows() <= 16, "cstar_checks: dimension must be <= 16");
  CStarReport r{};
  r.norm = norm(T);
  const Element adj = Element::matrix(A.adjoint());
  r.adjoint_norm = norm(adj);
  r.star_product_norm = norm(adj * T);
  r.commutator_norm = norm(Element::matrix(A.adjoint() * A - A * A.adjoint()));
  r.normal = r.commutator_norm <= 1e-12;
  r.power_identity = r.normal;
  Element p = T;
  for (unsigned l = 1; l <= 8; ++l) {
    const double nl = norm(p);
    r.power_norms.emplace_back(l, nl);
    const double expect = std::pow(r.norm, static_cast<double>(l));
    if (r.normal && std::abs(nl - expect) > 1e-8 * std::max(expect, 1e-300)) {
      r.power_identity = false;
    }
    p = p * T;
  }
  return r;
}

}  // namespace harmonia::alg
