#include "oracles.hpp"

#include <algorithm>
#include <limits>
#include <numbers>

namespace oracle {

double dual_norm_real_extreme(const std::vector<double>& g, bool p_is_one) {
  const std::size_t n = g.size();
  double best = 0.0;
  if (p_is_one) {
    for (std::size_t j = 0; j < n; ++j)
      for (double s : {-1.0, 1.0}) best = std::max(best, std::abs(s * g[j]));
    return best;
  }
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    double sum = 0.0;
    for (std::size_t j = 0; j < n; ++j) sum += ((mask >> j) & 1U ? -1.0 : 1.0) * g[j];
    best = std::max(best, std::abs(sum));
  }
  return best;
}

namespace {

// Magnitudes on ||r||_p = 1 from barycentric-style parameters in [0,1].
std::vector<double> magnitudes(const std::vector<double>& s, std::size_t n, double p) {
  std::vector<double> w(n, 1.0);
  if (std::isinf(p)) return w;
  double rest = 1.0;
  for (std::size_t j = 0; j + 1 < n; ++j) {
    w[j] = rest * s[j];
    rest -= w[j];
  }
  w[n - 1] = rest;
  for (auto& x : w) x = std::pow(std::max(x, 0.0), 1.0 / p);
  return w;
}

}  // namespace

double dual_norm_zoom(const std::vector<Complex>& g, double p) {
  const std::size_t n = g.size();
  // parameters: phases of coordinates 1..n-1 relative to coordinate 0,
  // then n-1 magnitude parameters (none for p = inf).
  const std::size_t nphase = n - 1;
  const std::size_t nmag = std::isinf(p) ? 0 : n - 1;
  const std::size_t np = nphase + nmag;
  auto value = [&](const std::vector<double>& x) {
    std::vector<double> s(x.begin() + static_cast<long>(nphase), x.end());
    auto r = magnitudes(s, n, p);
    Complex sum = r[0] * g[0];
    for (std::size_t j = 1; j < n; ++j) sum += std::polar(r[j], x[j - 1]) * g[j];
    return std::abs(sum);
  };
  if (np == 0) return value({});

  std::vector<double> lo(np), hi(np);
  for (std::size_t k = 0; k < np; ++k) {
    lo[k] = k < nphase ? -std::numbers::pi : 0.0;
    hi[k] = k < nphase ? std::numbers::pi : 1.0;
  }
  const int pts = np <= 2 ? 64 : 12;
  double best = 0.0;
  std::vector<double> arg(np);
  for (int round = 0; round < 28; ++round) {
    std::vector<double> cur(np), best_x = arg;
    std::vector<int> idx(np, 0);
    while (true) {
      for (std::size_t k = 0; k < np; ++k)
        cur[k] = lo[k] + (hi[k] - lo[k]) * idx[k] / double(pts - 1);
      double v = value(cur);
      if (v > best) {
        best = v;
        best_x = cur;
      }
      std::size_t k = 0;
      while (k < np && ++idx[k] == pts) idx[k++] = 0;
      if (k == np) break;
    }
    arg = best_x;
    for (std::size_t k = 0; k < np; ++k) {
      double half = (hi[k] - lo[k]) / 4.0;
      double l = arg[k] - half, h = arg[k] + half;
      if (k >= nphase) {
        l = std::max(l, 0.0);
        h = std::min(h, 1.0);
      }
      lo[k] = l;
      hi[k] = h;
    }
  }
  return best;
}

Complex naive_fourier_coeff(const std::vector<Complex>& values, std::size_t dim, std::size_t N,
                            const std::vector<int>& alpha) {
  Complex sum = 0.0;
  std::vector<std::size_t> k(dim, 0);
  for (std::size_t flat = 0; flat < values.size(); ++flat) {
    std::size_t rem = flat;
    double phase = 0.0;
    for (std::size_t j = dim; j-- > 0;) {
      k[j] = rem % N;
      rem /= N;
    }
    for (std::size_t j = 0; j < dim; ++j)
      phase -= 2.0 * std::numbers::pi * double(alpha[j]) * double(k[j]) / double(N);
    sum += values[flat] * std::polar(1.0, phase);
  }
  return sum / std::pow(double(N), double(dim));
}

Complex naive_synthesize(const std::vector<Complex>& coeffs, std::size_t dim, int K,
                         const std::vector<Complex>& z) {
  const std::size_t side = static_cast<std::size_t>(2 * K + 1);
  Complex sum = 0.0;
  for (std::size_t flat = 0; flat < coeffs.size(); ++flat) {
    std::size_t rem = flat;
    Complex term = coeffs[flat];
    for (std::size_t j = dim; j-- > 0;) {
      int a = static_cast<int>(rem % side) - K;
      rem /= side;
      term *= a >= 0 ? std::pow(z[j], a) : std::pow(std::conj(z[j]), -a);
    }
    sum += term;
  }
  return sum;
}

double svd_norm(const Eigen::MatrixXcd& m) {
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
  return svd.singularValues()(0);
}

Eigen::MatrixXcd matrix_power(const Eigen::MatrixXcd& m, unsigned n) {
  Eigen::MatrixXcd r = Eigen::MatrixXcd::Identity(m.rows(), m.cols());
  for (unsigned k = 0; k < n; ++k) r = r * m;
  return r;
}

namespace {

using P = std::pair<double, double>;

double cross(const P& o, const P& a, const P& b) {
  return (a.first - o.first) * (b.second - o.second) - (a.second - o.second) * (b.first - o.first);
}

std::vector<P> hull2d(const std::vector<std::vector<double>>& pts) {
  std::vector<P> p;
  for (const auto& v : pts) p.emplace_back(v[0], v[1]);
  std::sort(p.begin(), p.end());
  p.erase(std::unique(p.begin(), p.end()), p.end());
  if (p.size() < 3) return p;
  std::vector<P> h(2 * p.size());
  std::size_t k = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    while (k >= 2 && cross(h[k - 2], h[k - 1], p[i]) <= 0) --k;
    h[k++] = p[i];
  }
  for (std::size_t i = p.size() - 1, t = k + 1; i-- > 0;) {
    while (k >= t && cross(h[k - 2], h[k - 1], p[i]) <= 0) --k;
    h[k++] = p[i];
  }
  h.resize(k - 1);
  return h;
}

double seg_dist(const P& a, const P& b, const P& x) {
  double dx = b.first - a.first, dy = b.second - a.second;
  double len2 = dx * dx + dy * dy;
  double t = len2 > 0 ? ((x.first - a.first) * dx + (x.second - a.second) * dy) / len2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  return std::hypot(a.first + t * dx - x.first, a.second + t * dy - x.second);
}

}  // namespace

double polygon_signed_distance(const std::vector<std::vector<double>>& pts,
                               const std::vector<double>& x) {
  auto h = hull2d(pts);
  P q{x[0], x[1]};
  double d = std::numeric_limits<double>::infinity();
  if (h.size() == 1) return std::hypot(h[0].first - q.first, h[0].second - q.second);
  for (std::size_t i = 0; i < h.size(); ++i) d = std::min(d, seg_dist(h[i], h[(i + 1) % h.size()], q));
  if (h.size() < 3) return d;
  bool inside = true;
  for (std::size_t i = 0; i < h.size(); ++i)
    if (cross(h[i], h[(i + 1) % h.size()], q) < 0) inside = false;
  return inside ? -d : d;
}

bool in_convex_polygon_2d(const std::vector<std::vector<double>>& pts,
                          const std::vector<double>& x, double eps) {
  return polygon_signed_distance(pts, x) <= eps;
}

double tent(double x) { return std::max(0.0, 1.0 - std::abs(x)); }

double tent_ft(double xi) {
  if (xi == 0.0) return 1.0;
  double s = std::sin(xi / 2) / (xi / 2);
  return s * s;
}

double poisson_tent(double a, double x) {
  // int (c0 + c1 y) a / (pi (a^2 + (x - y)^2)) dy over [lo, hi]
  auto piece = [&](double c0, double c1, double lo, double hi) {
    double u0 = lo - x, u1 = hi - x;
    double at = std::atan(u1 / a) - std::atan(u0 / a);
    double lg = std::log(a * a + u1 * u1) - std::log(a * a + u0 * u0);
    return (c0 + c1 * x) * at / std::numbers::pi + c1 * a / (2 * std::numbers::pi) * lg;
  };
  return piece(1.0, 1.0, -1.0, 0.0) + piece(1.0, -1.0, 0.0, 1.0);
}

double inv_factorial(unsigned n) {
  double f = 1.0;
  for (unsigned k = 2; k <= n; ++k) f *= k;
  return 1.0 / f;
}

std::vector<Complex> random_complex(std::mt19937_64& rng, std::size_t n, double scale) {
  std::uniform_real_distribution<double> u(-scale, scale);
  std::vector<Complex> v(n);
  for (auto& x : v) x = Complex(u(rng), u(rng));
  return v;
}

std::vector<double> random_real(std::mt19937_64& rng, std::size_t n, double scale) {
  std::uniform_real_distribution<double> u(-scale, scale);
  std::vector<double> v(n);
  for (auto& x : v) x = u(rng);
  return v;
}

}  // namespace oracle
