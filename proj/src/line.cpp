#include "harmonia/line.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "harmonia/error.hpp"
#include "harmonia/quadrature.hpp"

namespace harmonia::line {

namespace {

std::size_t ipow_size(std::size_t b, std::size_t e) {
  std::size_t r = 1;
  for (std::size_t i = 0; i < e; ++i) r *= b;
  return r;
}

bool next_index(std::vector<std::size_t>& k, std::size_t m) {
  for (std::size_t j = k.size(); j-- > 0;) {
    if (++k[j] < m) return true;
    k[j] = 0;
  }
  return false;
}

std::size_t flatten(std::span<const std::size_t> k, std::size_t m) {
  std::size_t f = 0;
  for (std::size_t v : k) f = f * m + v;
  return f;
}

Complex sinc(Complex w) {
  if (std::abs(w) < 1e-4) {
    const Complex w2 = w * w;
    return 1.0 - w2 / 6.0 + w2 * w2 / 120.0;
  }
  return std::sin(w) / w;
}

Decay combine_decay(Decay a, Decay b) {
  return (a == Decay::Compact && b == Decay::Compact) ? Decay::Compact
                                                      : Decay::Exponential;
}

}  // namespace

LineFunction::LineFunction(std::size_t dim, double L, std::size_t M,
                           std::vector<Complex> values, Decay decay)
    : dim_(dim), L_(L), m_(M), values_(std::move(values)), decay_(decay) {
  require(dim >= 1, "line function dimension must be positive");
  require(L > 0.0 && std::isfinite(L), "line function half-width must be positive");
  require(M >= 8, "line function needs at least 8 samples per axis");
  require(values_.size() == ipow_size(M, dim), "line function: value count must be M^n");
  for (const Complex& v : values_) {
    require(std::isfinite(v.real()) && std::isfinite(v.imag()),
            "line function values must be finite");
  }
}

LineFunction LineFunction::sample(std::size_t dim, double L, std::size_t M,
                                  const std::function<Complex(const RealPoint&)>& f,
                                  Decay decay) {
  require(dim >= 1 && M >= 8, "line function: bad grid");
  std::vector<Complex> v(ipow_size(M, dim));
  const double h = 2.0 * L / static_cast<double>(M);
  std::vector<std::size_t> k(dim, 0);
  RealPoint x(dim);
  std::size_t flat = 0;
  do {
    for (std::size_t j = 0; j < dim; ++j) x[j] = -L + static_cast<double>(k[j]) * h;
    v[flat++] = f(x);
  } while (next_index(k, M));
  return LineFunction(dim, L, M, std::move(v), decay);
}

std::vector<std::size_t> LineFunction::unflatten(std::size_t flat) const {
  std::vector<std::size_t> k(dim_);
  for (std::size_t j = dim_; j-- > 0;) {
    k[j] = flat % m_;
    flat /= m_;
  }
  return k;
}

RealPoint LineFunction::point(std::size_t flat) const {
  const auto k = unflatten(flat);
  RealPoint x(dim_);
  for (std::size_t j = 0; j < dim_; ++j) x[j] = coord(k[j]);
  return x;
}

bool LineFunction::same_grid(const LineFunction& o) const {
  return dim_ == o.dim_ && L_ == o.L_ && m_ == o.m_;
}

double LineFunction::l1_norm() const {
  std::vector<double> t(values_.size());
  for (std::size_t k = 0; k < t.size(); ++k) t[k] = std::abs(values_[k]);
  return pairwise_sum(t) * std::pow(h(), static_cast<double>(dim_));
}

LineFunction LineFunction::combine(Complex a, const LineFunction& f, Complex b,
                                   const LineFunction& g) {
  require(f.same_grid(g), "combine: grid mismatch");
  std::vector<Complex> v(f.size());
  for (std::size_t k = 0; k < v.size(); ++k) v[k] = a * f[k] + b * g[k];
  return LineFunction(f.dim(), f.half_width(), f.m(), std::move(v),
                      combine_decay(f.decay(), g.decay()));
}

Factor Factor::q_plus(double a) {
  require(a > 0.0, "q_plus: a must be positive");
  return {Kind::QPlus, a};
}

Factor Factor::q_minus(double a) {
  require(a > 0.0, "q_minus: a must be positive");
  return {Kind::QMinus, a};
}

Factor Factor::p_a(double a) {
  require(a > 0.0, "p_a: a must be positive");
  return {Kind::PA, a};
}

Factor Factor::indicator(double a, double b) {
  require(a < b, "indicator: need a < b");
  return {Kind::Indicator, a, b};
}

// Jumps take the midpoint value, which is what the trapezoid rule wants.
double Factor::operator()(double x) const {
  switch (kind) {
    case Kind::QPlus:
      return x > 0.0 ? std::exp(-a * x) : (x == 0.0 ? 0.5 : 0.0);
    case Kind::QMinus:
      return x < 0.0 ? std::exp(a * x) : (x == 0.0 ? 0.5 : 0.0);
    case Kind::PA:
      return std::exp(-a * std::abs(x));
    case Kind::Indicator:
      if (x > a && x < b) return 1.0;
      if (x == a || x == b) return 0.5;
      return 0.0;
  }
  return 0.0;
}

Complex Factor::ft(Complex zeta) const {
  const Complex i{0.0, 1.0};
  const double eta = zeta.imag();
  switch (kind) {
    case Kind::QPlus:
      require(eta <= 0.0, "q_plus transform needs Im zeta <= 0");
      return 1.0 / (a + i * zeta);
    case Kind::QMinus:
      require(eta >= 0.0, "q_minus transform needs Im zeta >= 0");
      return 1.0 / (a - i * zeta);
    case Kind::PA:
      require(eta == 0.0, "p_a transform needs real zeta");
      return 2.0 * a / (a * a + zeta * zeta);
    case Kind::Indicator: {
      require(eta == 0.0 || (eta < 0.0 && a >= 0.0) || (eta > 0.0 && b <= 0.0),
              "indicator transform: zeta outside the admissible half-plane");
      const double c = 0.5 * (b - a);
      const double mid = 0.5 * (a + b);
      return (b - a) * sinc(c * zeta) * std::exp(-i * zeta * mid);
    }
  }
  return {};
}

double Factor::l1_norm() const {
  switch (kind) {
    case Kind::QPlus:
    case Kind::QMinus:
      return 1.0 / a;
    case Kind::PA:
      return 2.0 / a;
    case Kind::Indicator:
      return b - a;
  }
  return 0.0;
}

double Factor::tail_sup(double R) const {
  require(R >= 0.0, "tail_sup: R must be nonnegative");
  switch (kind) {
    case Kind::QPlus:
    case Kind::QMinus:
      return 1.0 / std::hypot(a, R);
    case Kind::PA:
      return 2.0 * a / (a * a + R * R);
    case Kind::Indicator: {
      if (R == 0.0) return b - a;
      const double c = 0.5 * (b - a);
      auto g = [&](double xi) { return 2.0 * std::abs(std::sin(c * xi)) / xi; };
      // past R + pi/c the profile repeats with a smaller 1/xi factor
      const double span = kPi / c;
      constexpr int kGrid = 2048;
      int best = 0;
      double bv = g(R);
      for (int s = 1; s <= kGrid; ++s) {
        const double v = g(R + span * s / kGrid);
        if (v > bv) {
          bv = v;
          best = s;
        }
      }
      double lo = R + span * std::max(0, best - 1) / kGrid;
      double hi = R + span * std::min(kGrid, best + 1) / kGrid;
      for (int it = 0; it < 100 && hi - lo > 1e-15 * hi; ++it) {
        const double m1 = lo + (hi - lo) / 3.0;
        const double m2 = hi - (hi - lo) / 3.0;
        if (g(m1) < g(m2)) lo = m1; else hi = m2;
      }
      return std::max(bv, g(0.5 * (lo + hi)));
    }
  }
  return 0.0;
}

ClosedFormFn::ClosedFormFn(std::vector<Factor> factors) : factors_(std::move(factors)) {
  require(!factors_.empty(), "closed form needs at least one factor");
  for (const Factor& f : factors_) {
    if (f.kind == Factor::Kind::Indicator) {
      require(f.a < f.b, "indicator: need a < b");
    } else {
      require(f.a > 0.0, "exponential kinds need a > 0");
    }
  }
}

double ClosedFormFn::operator()(std::span<const double> x) const {
  require(x.size() == dim(), "closed form: point dimension mismatch");
  double v = 1.0;
  for (std::size_t j = 0; j < x.size(); ++j) v *= factors_[j](x[j]);
  return v;
}

double ClosedFormFn::l1_norm() const {
  double v = 1.0;
  for (const Factor& f : factors_) v *= f.l1_norm();
  return v;
}

HalfPlanePoint::HalfPlanePoint(std::vector<Complex> zeta, std::vector<int> eps)
    : zeta_(std::move(zeta)), eps_(std::move(eps)) {
  require(!zeta_.empty() && zeta_.size() == eps_.size(),
          "half-plane point: zeta and signature lengths differ");
  for (std::size_t j = 0; j < zeta_.size(); ++j) {
    require(eps_[j] == 1 || eps_[j] == -1, "signature entries must be +1 or -1");
    require(eps_[j] * zeta_[j].imag() >= 0.0,
            "half-plane point: zeta not in the closed half-plane of its signature");
  }
}

HalfPlanePoint HalfPlanePoint::real(std::span<const double> xi) {
  std::vector<Complex> z(xi.begin(), xi.end());
  return HalfPlanePoint(std::move(z), std::vector<int>(xi.size(), 1));
}

bool HalfPlanePoint::is_real() const {
  return std::all_of(zeta_.begin(), zeta_.end(),
                     [](const Complex& z) { return z.imag() == 0.0; });
}

Complex ft_quadrature(const LineFunction& f, std::span<const double> xi) {
  require(xi.size() == f.dim(), "ft_quadrature: frequency dimension mismatch");
  const double h = f.h();
  for (double x : xi) {
    if (std::abs(x) * h > kPi / 4.0) {
      throw PreconditionError("ft_quadrature: |xi| h exceeds pi/4 (inadequate sampling)");
    }
  }
  // per-axis phase tables
  std::vector<std::vector<Complex>> ph(f.dim(), std::vector<Complex>(f.m()));
  for (std::size_t j = 0; j < f.dim(); ++j) {
    for (std::size_t i = 0; i < f.m(); ++i) ph[j][i] = std::polar(1.0, -xi[j] * f.coord(i));
  }
  std::vector<Complex> t(f.size());
  std::vector<std::size_t> k(f.dim(), 0);
  std::size_t flat = 0;
  do {
    Complex v = f[flat];
    for (std::size_t j = 0; j < f.dim(); ++j) v *= ph[j][k[j]];
    t[flat++] = v;
  } while (next_index(k, f.m()));
  return pairwise_sum(t) * std::pow(h, static_cast<double>(f.dim()));
}

Complex ft_closed_form(const ClosedFormFn& g, std::span<const Complex> zeta) {
  require(zeta.size() == g.dim(), "ft_closed_form: point dimension mismatch");
  Complex v{1.0, 0.0};
  for (std::size_t j = 0; j < zeta.size(); ++j) v *= g.factors()[j].ft(zeta[j]);
  return v;
}

LineFunction sample_closed_form(const ClosedFormFn& g, double L, std::size_t M) {
  const bool compact = std::all_of(g.factors().begin(), g.factors().end(), [](const Factor& f) {
    return f.kind == Factor::Kind::Indicator;
  });
  return LineFunction::sample(
      g.dim(), L, M, [&](const RealPoint& x) { return Complex(g(x)); },
      compact ? Decay::Compact : Decay::Exponential);
}

LineFunction convolve_line(const LineFunction& f, const LineFunction& g) {
  require(f.same_grid(g), "convolve_line: grid mismatch");
  const std::size_t n = f.dim();
  const std::size_t M = f.m();
  const std::size_t M2 = 2 * M;
  const double scale = std::pow(f.h(), static_cast<double>(n));
  std::vector<std::vector<Complex>> acc(ipow_size(M2, n));
  std::vector<std::size_t> kf(n, 0);
  std::vector<std::size_t> out(n);
  std::size_t ff = 0;
  // y_m = -2L + m h and x_k = -L + k h, so y_m - x_k is grid point m - k of g
  do {
    const Complex a = f[ff++];
    if (a == Complex{}) continue;
    std::vector<std::size_t> kg(n, 0);
    std::size_t gf = 0;
    do {
      const Complex b = g[gf++];
      if (b == Complex{}) continue;
      for (std::size_t j = 0; j < n; ++j) out[j] = kf[j] + kg[j];
      acc[flatten(out, M2)].push_back(a * b);
    } while (next_index(kg, M));
  } while (next_index(kf, M));
  std::vector<Complex> v(acc.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = pairwise_sum(acc[i]) * scale;
  return LineFunction(n, 2.0 * f.half_width(), M2, std::move(v),
                      combine_decay(f.decay(), g.decay()));
}

namespace {

std::vector<long long> grid_shift(const LineFunction& f, std::span<const double> t) {
  require(t.size() == f.dim(), "shift dimension mismatch");
  std::vector<long long> s(t.size());
  for (std::size_t j = 0; j < t.size(); ++j) {
    const double q = t[j] / f.h();
    const double r = std::round(q);
    require(std::abs(q - r) <= 1e-9 * (1.0 + std::abs(q)),
            "translate: shift is not a multiple of the grid spacing");
    s[j] = static_cast<long long>(r);
  }
  return s;
}

std::vector<Complex> shifted_values(const LineFunction& f, std::span<const long long> s) {
  const long long M = static_cast<long long>(f.m());
  std::vector<Complex> v(f.size());
  std::vector<std::size_t> k(f.dim(), 0);
  std::size_t flat = 0;
  do {
    const Complex x = f[flat++];
    if (x == Complex{}) continue;
    std::size_t dst = 0;
    for (std::size_t j = 0; j < k.size(); ++j) {
      const long long d = static_cast<long long>(k[j]) + s[j];
      if (d < 0 || d >= M) throw PreconditionError("translate: support leaves the grid box");
      dst = dst * f.m() + static_cast<std::size_t>(d);
    }
    v[dst] = x;
  } while (next_index(k, f.m()));
  return v;
}

}  // namespace

LineFunction translate(const LineFunction& f, std::span<const double> t) {
  const auto s = grid_shift(f, t);
  return LineFunction(f.dim(), f.half_width(), f.m(), shifted_values(f, s), f.decay());
}

LineFunction modulate(const LineFunction& f, std::span<const double> w) {
  require(w.size() == f.dim(), "modulate: dimension mismatch");
  std::vector<Complex> v(f.size());
  for (std::size_t k = 0; k < v.size(); ++k) {
    const RealPoint x = f.point(k);
    double ph = 0.0;
    for (std::size_t j = 0; j < x.size(); ++j) ph += w[j] * x[j];
    v[k] = f[k] * std::polar(1.0, ph);
  }
  return LineFunction(f.dim(), f.half_width(), f.m(), std::move(v), f.decay());
}

LineFunction modulate(const LineFunction& f, std::span<const Complex> w) {
  require(w.size() == f.dim(), "modulate: dimension mismatch");
  const bool real = std::all_of(w.begin(), w.end(), [](Complex c) { return c.imag() == 0.0; });
  if (!real && f.decay() != Decay::Compact) {
    throw PreconditionError("modulate: complex frequency needs compact support");
  }
  std::vector<Complex> v(f.size());
  for (std::size_t k = 0; k < v.size(); ++k) {
    const RealPoint x = f.point(k);
    Complex ph{};
    for (std::size_t j = 0; j < x.size(); ++j) ph += w[j] * x[j];
    v[k] = f[k] * std::exp(Complex(0.0, 1.0) * ph);
  }
  return LineFunction(f.dim(), f.half_width(), f.m(), std::move(v), f.decay());
}

double poisson_Rn(std::span<const double> a, std::span<const double> x) {
  require(a.size() == x.size() && !a.empty(), "poisson_Rn: dimension mismatch");
  double v = 1.0;
  for (std::size_t j = 0; j < a.size(); ++j) {
    require(a[j] > 0.0, "poisson_Rn: a_j must be positive");
    v *= a[j] / (kPi * (a[j] * a[j] + x[j] * x[j]));
  }
  return v;
}

namespace {

double trapezoid(const std::function<double(double)>& f, double X, std::size_t M) {
  require(X > 0.0 && M >= 2, "trapezoid: bad interval");
  const double h = 2.0 * X / static_cast<double>(M);
  std::vector<double> t(M + 1);
  for (std::size_t i = 0; i <= M; ++i) t[i] = f(-X + static_cast<double>(i) * h);
  t.front() *= 0.5;
  t.back() *= 0.5;
  return pairwise_sum(t) * h;
}

}  // namespace

MassReport poisson_Rn_mass(std::span<const double> a, double X, std::size_t M) {
  require(!a.empty(), "poisson_Rn_mass: empty parameter vector");
  double quad = 1.0;
  double total = 1.0;
  for (double aj : a) {
    require(aj > 0.0, "poisson_Rn_mass: a_j must be positive");
    const double q = trapezoid([&](double x) { return aj / (kPi * (aj * aj + x * x)); }, X, M);
    quad *= q;
    total *= q + (2.0 / kPi) * std::atan(aj / X);
  }
  return {quad, total - quad, total};
}

MassReport pa_hat_integral(double a, double X, std::size_t M) {
  require(a > 0.0, "pa_hat_integral: a must be positive");
  const double q = trapezoid([&](double xi) { return 2.0 * a / (a * a + xi * xi); }, X, M);
  const double tail = 4.0 * std::atan(a / X);
  return {q, tail, q + tail};
}

namespace {

// (P_a * hat_c)(x) for the hat of half-width h centred at c.
double poisson_hat(double a, double c, double h, double x) {
  auto piece = [a](double u0, double u1, double& i0, double& i1) {
    const double d = u1 - u0;
    i0 = std::atan2(a * d, a * a + u0 * u1) / kPi;
    i1 = a / kTwoPi * std::log1p(d * (u1 + u0) / (a * a + u0 * u0));
  };
  double i0 = 0.0;
  double i1 = 0.0;
  const double ul = c - h - x;
  const double um = c - x;
  const double ur = c + h - x;
  piece(ul, um, i0, i1);
  double v = (i1 - ul * i0) / h;
  piece(um, ur, i0, i1);
  v += (ur * i0 - i1) / h;
  return v;
}

}  // namespace

double approx_identity_error(const LineFunction& f, std::span<const double> a) {
  require(a.size() == f.dim(), "approx_identity_error: dimension mismatch");
  for (double aj : a) require(aj > 0.0, "approx_identity_error: a_j must be positive");
  const std::size_t n = f.dim();
  const std::size_t M = f.m();
  const double h = f.h();
  std::vector<Complex> cur(f.values().begin(), f.values().end());
  std::vector<Complex> next(cur.size());
  std::vector<double> B(M * M);
  std::vector<Complex> terms(M);
  for (std::size_t axis = 0; axis < n; ++axis) {
    for (std::size_t i = 0; i < M; ++i) {
      for (std::size_t k = 0; k < M; ++k) {
        B[i * M + k] = poisson_hat(a[axis], f.coord(k), h, f.coord(i));
      }
    }
    // mode product along `axis` of the row-major tensor
    const std::size_t inner = ipow_size(M, n - 1 - axis);
    const std::size_t outer = ipow_size(M, axis);
    for (std::size_t o = 0; o < outer; ++o) {
      for (std::size_t r = 0; r < inner; ++r) {
        const std::size_t base = o * M * inner + r;
        for (std::size_t i = 0; i < M; ++i) {
          for (std::size_t k = 0; k < M; ++k) terms[k] = B[i * M + k] * cur[base + k * inner];
          next[base + i * inner] = pairwise_sum(terms);
        }
      }
    }
    std::swap(cur, next);
  }
  double err = 0.0;
  for (std::size_t k = 0; k < cur.size(); ++k) err = std::max(err, std::abs(cur[k] - f[k]));
  return err;
}

FormulaCheck multiplication_formula_check(const LineFunction& f, const LineFunction& g) {
  require(f.dim() == g.dim(), "multiplication_formula_check: dimension mismatch");
  require(g.half_width() * f.h() <= kPi / 4.0 && f.half_width() * g.h() <= kPi / 4.0,
          "multiplication_formula_check: grids too coarse for the transform band");
  auto side = [](const LineFunction& u, const LineFunction& v) {
    std::vector<Complex> t(v.size());
    for (std::size_t l = 0; l < v.size(); ++l) {
      if (v[l] == Complex{}) continue;
      const RealPoint y = v.point(l);
      t[l] = ft_quadrature(u, y) * v[l];
    }
    return pairwise_sum(t) * std::pow(v.h(), static_cast<double>(v.dim()));
  };
  const double tol = 1e-6 * (f.l1_norm() * g.l1_norm() + 1.0);
  return {side(f, g), side(g, f), tol};
}

InversionCheck inversion_check(const LineFunction& f, std::span<const double> a,
                               std::span<const double> w, double tail_tol) {
  const std::size_t n = f.dim();
  require(a.size() == n && w.size() == n, "inversion_check: dimension mismatch");
  for (double aj : a) require(aj > 0.0, "inversion_check: a_j must be positive");
  const double F = f.l1_norm();
  auto tail_of = [&](double X) {
    double full = 1.0;
    double box = 1.0;
    for (double aj : a) {
      full *= 2.0 / aj;
      box *= -2.0 * std::expm1(-aj * X) / aj;
    }
    return F * (full - box);
  };
  const double band = kPi / (4.0 * f.h());
  require(tail_of(band) <= tail_tol,
          "inversion_check: grid too coarse for the exponential tail at this a");
  double lo = 0.0;
  double hi = band;
  for (int it = 0; it < 60; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (tail_of(mid) <= tail_tol) hi = mid; else lo = mid;
  }
  const double X = hi;

  // Gauss-Legendre panels on [-X, 0] and [0, X], fine enough for the
  // oscillation e^{i xi (w - x)} with |w - x| <= |w| + L.
  const auto& gl = gauss_legendre(16);
  std::vector<std::vector<std::pair<double, double>>> nodes(n);
  std::size_t total = 1;
  for (std::size_t j = 0; j < n; ++j) {
    const double freq = std::abs(w[j]) + f.half_width() + a[j] + 1.0;
    const std::size_t panels = static_cast<std::size_t>(std::ceil(X * freq / 6.0));
    const double width = X / static_cast<double>(panels);
    for (int side : {-1, 1}) {
      for (std::size_t p = 0; p < panels; ++p) {
        const double c = side * (static_cast<double>(p) + 0.5) * width;
        for (const auto& [t, wt] : gl) {
          nodes[j].emplace_back(c + 0.5 * width * t, 0.5 * width * wt);
        }
      }
    }
    total *= nodes[j].size();
  }
  require(static_cast<double>(total) * static_cast<double>(f.size()) <= 2e10,
          "inversion_check: quadrature too large for this grid and dimension");

  std::vector<Complex> terms(total);
  std::vector<std::size_t> k(n, 0);
  std::vector<double> xi(n);
  std::size_t flat = 0;
  do {
    double weight = 1.0;
    double damp = 0.0;
    double phase = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      xi[j] = nodes[j][k[j]].first;
      weight *= nodes[j][k[j]].second;
      damp += a[j] * std::abs(xi[j]);
      phase += xi[j] * w[j];
    }
    terms[flat++] = ft_quadrature(f, xi) * std::polar(weight * std::exp(-damp), phase);
  } while ([&] {
    for (std::size_t j = n; j-- > 0;) {
      if (++k[j] < nodes[j].size()) return true;
      k[j] = 0;
    }
    return false;
  }());
  const Complex lhs = pairwise_sum(terms);

  std::vector<Complex> r(f.size());
  for (std::size_t q = 0; q < f.size(); ++q) {
    if (f[q] == Complex{}) continue;
    const RealPoint x = f.point(q);
    RealPoint d(n);
    for (std::size_t j = 0; j < n; ++j) d[j] = w[j] - x[j];
    r[q] = f[q] * poisson_Rn(a, d);
  }
  const double scale = std::pow(kTwoPi * f.h(), static_cast<double>(n));
  return {lhs, pairwise_sum(r) * scale, tail_of(X), X};
}

LineAtomicMeasure::LineAtomicMeasure(std::size_t dim, std::vector<Atom> atoms) : dim_(dim) {
  require(dim >= 1, "measure dimension must be positive");
  std::map<RealPoint, Complex> merged;
  for (Atom& a : atoms) {
    require(a.u.size() == dim, "atom location has wrong dimension");
    for (double x : a.u) require(std::isfinite(x), "atom location must be finite");
    require(std::isfinite(a.weight.real()) && std::isfinite(a.weight.imag()),
            "atom weight must be finite");
    merged[a.u] += a.weight;
  }
  for (auto& [u, c] : merged) {
    if (c != Complex{}) atoms_.push_back({u, c});
  }
}

LineAtomicMeasure LineAtomicMeasure::delta(RealPoint u) {
  const std::size_t d = u.size();
  return LineAtomicMeasure(d, {{std::move(u), 1.0}});
}

double LineAtomicMeasure::total_variation() const {
  std::vector<double> t(atoms_.size());
  for (std::size_t k = 0; k < t.size(); ++k) t[k] = std::abs(atoms_[k].weight);
  return pairwise_sum(t);
}

bool LineAtomicMeasure::operator==(const LineAtomicMeasure& o) const {
  if (dim_ != o.dim_ || atoms_.size() != o.atoms_.size()) return false;
  for (std::size_t k = 0; k < atoms_.size(); ++k) {
    if (atoms_[k].u != o.atoms_[k].u || atoms_[k].weight != o.atoms_[k].weight) return false;
  }
  return true;
}

Complex measure_ft(const LineAtomicMeasure& mu, const HalfPlanePoint& zeta) {
  require(zeta.zeta().size() == mu.dim(), "measure_ft: dimension mismatch");
  const bool real = zeta.is_real();
  std::vector<Complex> t(mu.atoms().size());
  for (std::size_t k = 0; k < t.size(); ++k) {
    const auto& atom = mu.atoms()[k];
    Complex e{};
    for (std::size_t j = 0; j < mu.dim(); ++j) {
      if (!real && zeta.eps()[j] * atom.u[j] > 0.0) {
        throw PreconditionError("measure_ft: atom outside the quadrant for complex zeta");
      }
      e += zeta.zeta()[j] * atom.u[j];
    }
    t[k] = atom.weight * std::exp(Complex(0.0, -1.0) * e);
  }
  return pairwise_sum(t);
}

LineAtomicMeasure measure_convolve(const LineAtomicMeasure& mu, const LineAtomicMeasure& nu) {
  require(mu.dim() == nu.dim(), "measure_convolve: dimension mismatch");
  std::vector<LineAtomicMeasure::Atom> atoms;
  for (const auto& a : mu.atoms()) {
    for (const auto& b : nu.atoms()) {
      RealPoint u(a.u.size());
      for (std::size_t j = 0; j < u.size(); ++j) u[j] = a.u[j] + b.u[j];
      atoms.push_back({std::move(u), a.weight * b.weight});
    }
  }
  return LineAtomicMeasure(mu.dim(), std::move(atoms));
}

LineFunction fn_measure_convolve(const LineFunction& g, const LineAtomicMeasure& mu) {
  require(g.dim() == mu.dim(), "fn_measure_convolve: dimension mismatch");
  std::vector<std::vector<Complex>> acc(g.size());
  for (const auto& atom : mu.atoms()) {
    const auto s = grid_shift(g, atom.u);
    const auto v = shifted_values(g, s);
    for (std::size_t k = 0; k < v.size(); ++k) {
      if (v[k] != Complex{}) acc[k].push_back(atom.weight * v[k]);
    }
  }
  std::vector<Complex> out(g.size());
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = pairwise_sum(acc[k]);
  return LineFunction(g.dim(), g.half_width(), g.m(), std::move(out), g.decay());
}

Complex fn_measure_convolve(const ClosedFormFn& g, const LineAtomicMeasure& mu,
                            std::span<const double> x) {
  require(g.dim() == mu.dim() && x.size() == g.dim(), "fn_measure_convolve: dimension mismatch");
  std::vector<Complex> t(mu.atoms().size());
  RealPoint y(x.size());
  for (std::size_t k = 0; k < t.size(); ++k) {
    for (std::size_t j = 0; j < y.size(); ++j) y[j] = x[j] - mu.atoms()[k].u[j];
    t[k] = mu.atoms()[k].weight * g(y);
  }
  return pairwise_sum(t);
}

RLProfile riemann_lebesgue_profile(const ClosedFormFn& g, std::span<const double> R) {
  RLProfile out{{}, true};
  for (double r : R) {
    double best = 0.0;
    for (std::size_t j = 0; j < g.dim(); ++j) {
      double v = g.factors()[j].tail_sup(r);
      for (std::size_t i = 0; i < g.dim(); ++i) {
        if (i != j) v *= g.factors()[i].tail_sup(0.0);
      }
      best = std::max(best, v);
    }
    out.points.emplace_back(r, best);
  }
  return out;
}

RLProfile riemann_lebesgue_profile(const LineFunction& f, std::span<const double> R) {
  require(f.dim() == 1, "sampled profile is one-dimensional");
  require(!R.empty(), "profile needs at least one R");
  const double band = kPi / (4.0 * f.h());
  const double rmin = *std::min_element(R.begin(), R.end());
  for (double r : R) require(r >= 0.0 && r <= band, "profile: R outside the adequacy band");
  const double step = std::max(kPi / (8.0 * f.half_width()), (band - rmin) / 2000.0);
  std::vector<std::pair<double, double>> samples;
  for (double xi = rmin;; xi += step) {
    const double x = std::min(xi, band);
    const double v = std::max(std::abs(ft_quadrature(f, std::span<const double>(&x, 1))),
                              std::abs(ft_quadrature(f, std::vector<double>{-x})));
    samples.emplace_back(x, v);
    if (x >= band) break;
  }
  RLProfile out{{}, false};
  for (double r : R) {
    double best = 0.0;
    for (const auto& [x, v] : samples) {
      if (x >= r) best = std::max(best, v);
    }
    out.points.emplace_back(r, best);
  }
  out.decaying = out.points.size() >= 2 && out.points.back().second < out.points.front().second;
  return out;
}

RLProfile riemann_lebesgue_profile(const LineAtomicMeasure& mu, std::span<const double> R) {
  require(mu.dim() == 1, "measure profile is one-dimensional");
  double umax = 0.0;
  for (const auto& a : mu.atoms()) umax = std::max(umax, std::abs(a.u[0]));
  const double step = kPi / (8.0 * (umax + 1.0));
  double sup = 0.0;
  for (int s = 0; s <= 4096; ++s) {
    const double xi = step * s;
    sup = std::max(sup, std::abs(measure_ft(mu, HalfPlanePoint::real(std::vector<double>{xi}))));
  }
  RLProfile out{{}, mu.atoms().empty()};
  for (double r : R) out.points.emplace_back(r, sup);
  return out;
}

}  // namespace harmonia::line
