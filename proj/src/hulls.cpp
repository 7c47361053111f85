#include "harmonia/hulls.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include <Eigen/Dense>

#include "harmonia/error.hpp"

namespace harmonia::hull {

namespace {

constexpr std::size_t kIterCap = 100000;
constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm2(std::span<const double> a) { return std::sqrt(dot(a, a)); }

RVec combination(std::span<const RVec> pts, std::span<const double> w, std::size_t d) {
  RVec u(d, 0.0);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (w[i] == 0.0) continue;
    for (std::size_t j = 0; j < d; ++j) u[j] += w[i] * pts[i][j];
  }
  return u;
}

void check_finite(std::span<const double> v, const char* what) {
  for (double x : v) require(std::isfinite(x), what);
}

// Drops points from a positive combination until the remaining ones are
// affinely independent; the represented point is unchanged.
void caratheodory(std::vector<RVec>& pts, std::vector<double>& w) {
  const std::size_t d = pts.empty() ? 0 : pts.front().size();
  while (pts.size() > 1) {
    const auto k = static_cast<Eigen::Index>(pts.size());
    Eigen::MatrixXd K(static_cast<Eigen::Index>(d) + 1, k);
    for (Eigen::Index c = 0; c < k; ++c) {
      for (std::size_t j = 0; j < d; ++j) K(static_cast<Eigen::Index>(j), c) = pts[c][j];
      K(static_cast<Eigen::Index>(d), c) = 1.0;
    }
    Eigen::FullPivLU<Eigen::MatrixXd> lu(K);
    if (lu.rank() == k) break;
    Eigen::VectorXd c = lu.kernel().col(0);
    if (c.maxCoeff() <= 0.0) c = -c;
    double theta = std::numeric_limits<double>::infinity();
    Eigen::Index arg = 0;
    for (Eigen::Index i = 0; i < k; ++i) {
      if (c[i] > 0.0 && w[i] / c[i] < theta) {
        theta = w[i] / c[i];
        arg = i;
      }
    }
    for (Eigen::Index i = 0; i < k; ++i) w[i] = std::max(0.0, w[i] - theta * c[i]);
    w[arg] = 0.0;
    std::vector<RVec> np;
    std::vector<double> nw;
    for (Eigen::Index i = 0; i < k; ++i) {
      if (w[i] > 0.0) {
        np.push_back(std::move(pts[i]));
        nw.push_back(w[i]);
      }
    }
    pts = std::move(np);
    w = std::move(nw);
  }
  const double s = std::accumulate(w.begin(), w.end(), 0.0);
  for (double& x : w) x /= s;
}

InsideConvexCombination make_inside(std::span<const RVec> S, std::span<const double> t,
                                    bool dominated, double tol) {
  InsideConvexCombination in;
  for (std::size_t i = 0; i < S.size(); ++i) {
    if (t[i] > 0.0) {
      in.support.push_back(S[i]);
      in.weights.push_back(t[i]);
    }
  }
  caratheodory(in.support, in.weights);
  in.dominated = dominated;
  in.tolerance = tol;
  return in;
}

// Projection of x onto the affine hull of the active points; returns
// nonnegative simplex weights or nothing.
std::optional<std::vector<double>> affine_polish(std::span<const RVec> S,
                                                 std::span<const double> t,
                                                 std::span<const double> x) {
  std::vector<std::size_t> act;
  for (std::size_t i = 0; i < S.size(); ++i) {
    if (t[i] > 0.0) act.push_back(i);
  }
  if (act.size() < 2) return std::nullopt;
  const std::size_t d = x.size();
  const RVec& a0 = S[act[0]];
  Eigen::MatrixXd B(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(act.size() - 1));
  Eigen::VectorXd rhs(static_cast<Eigen::Index>(d));
  for (std::size_t j = 0; j < d; ++j) {
    rhs[static_cast<Eigen::Index>(j)] = x[j] - a0[j];
    for (std::size_t c = 1; c < act.size(); ++c) {
      B(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(c - 1)) = S[act[c]][j] - a0[j];
    }
  }
  const Eigen::VectorXd c = B.completeOrthogonalDecomposition().solve(rhs);
  std::vector<double> w(S.size(), 0.0);
  double rest = 1.0;
  for (std::size_t k = 1; k < act.size(); ++k) {
    const double v = c[static_cast<Eigen::Index>(k - 1)];
    if (v < 0.0) return std::nullopt;
    w[act[k]] = v;
    rest -= v;
  }
  if (rest < 0.0) return std::nullopt;
  w[act[0]] = rest;
  return w;
}

std::size_t nearest(std::span<const RVec> S, std::span<const double> x) {
  std::size_t best = 0;
  double bd = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < S.size(); ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < x.size(); ++j) s += (S[i][j] - x[j]) * (S[i][j] - x[j]);
    if (s < bd) {
      bd = s;
      best = i;
    }
  }
  return best;
}

}  // namespace

PointCloud::PointCloud(std::size_t dim, std::vector<RVec> points)
    : dim_(dim), points_(std::move(points)) {
  require(dim >= 1, "point cloud dimension must be positive");
  require(!points_.empty(), "point cloud must be nonempty");
  for (const RVec& p : points_) {
    require(p.size() == dim, "point cloud: point has wrong dimension");
    check_finite(p, "point cloud coordinates must be finite");
  }
}

CircularSample::CircularSample(std::size_t n, std::vector<CVec> points, bool completely_circular)
    : n_(n), points_(std::move(points)), circular_(completely_circular) {
  require(n >= 1, "sample dimension must be positive");
  require(!points_.empty(), "sample must be nonempty");
  for (const CVec& p : points_) {
    require(p.size() == n, "sample point has wrong dimension");
    for (const Complex& c : p) {
      require(std::isfinite(c.real()) && std::isfinite(c.imag()), "sample points must be finite");
    }
  }
}

LogRegion log_region(const CircularSample& E, std::vector<std::size_t> pattern) {
  LogRegion out{std::move(pattern), {}};
  for (std::size_t j : out.pattern) require(j < E.n(), "log_region: pattern index out of range");
  for (const CVec& w : E.points()) {
    RVec p;
    bool ok = true;
    for (std::size_t j : out.pattern) {
      const double m = std::abs(w[j]);
      if (m == 0.0) {
        ok = false;
        break;
      }
      p.push_back(std::log(m));
    }
    if (ok) out.points.push_back(std::move(p));
  }
  return out;
}

double MonomialWitness::sup_on_e() const { return std::exp(log_sup_on_e); }
double MonomialWitness::value_at_z() const { return std::exp(log_value_at_z); }

bool is_inside(const HullCertificate& c) {
  return std::holds_alternative<InsideConvexCombination>(c);
}

std::string kind_name(const HullCertificate& c) {
  static const char* names[] = {"InsideConvexCombination", "SeparatingFunctional",
                                "MonomialWitness", "ExponentialWitness", "NotApplicable"};
  return names[c.index()];
}

HullCertificate convex_membership(std::span<const double> x, const PointCloud& S, double tol) {
  require(x.size() == S.dim(), "convex_membership: dimension mismatch");
  require(tol > 0.0, "convex_membership: tolerance must be positive");
  check_finite(x, "convex_membership: point must be finite");
  const auto& A = S.points();
  const std::size_t m = A.size();
  const std::size_t d = S.dim();
  const double out_thresh = tol * (1.0 + norm2(x));

  std::vector<double> t(m, 0.0);
  t[nearest(A, x)] = 1.0;
  RVec u = combination(A, t, d);
  std::vector<double> g(m);
  RVec p(d);

  for (std::size_t it = 0; it < kIterCap; ++it) {
    if (it % 100 == 99) u = combination(A, t, d);
    for (std::size_t j = 0; j < d; ++j) p[j] = u[j] - x[j];
    const double dist = norm2(p);
    if (dist <= tol) {
      auto in = make_inside(A, t, false, tol);
      in.residual = norm2([&] {
        RVec r = combination(in.support, in.weights, d);
        for (std::size_t j = 0; j < d; ++j) r[j] -= x[j];
        return r;
      }());
      return in;
    }
    std::size_t s = 0;
    std::size_t v = 0;
    double gu = 0.0;
    double gv = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < m; ++i) {
      g[i] = dot(A[i], p);
      if (g[i] < g[s]) s = i;
      if (t[i] > 0.0) {
        gu += t[i] * g[i];
        if (g[i] > gv) {
          gv = g[i];
          v = i;
        }
      }
    }
    const double margin = g[s] - dot(p, x);
    if (margin > out_thresh) {
      RVec lambda(d);
      for (std::size_t j = 0; j < d; ++j) lambda[j] = -p[j];
      return SeparatingFunctional{std::move(lambda), margin, tol};
    }
    const double gap = gu - g[s];
    if (gap <= tol * tol) {
      // converged with the margin inside the tolerance band: boundary point
      auto in = make_inside(A, t, false, tol);
      in.residual = dist;
      return in;
    }
    if (it % 20 == 0) {
      if (auto w = affine_polish(A, t, x)) {
        RVec nu = combination(A, *w, d);
        double nd = 0.0;
        for (std::size_t j = 0; j < d; ++j) nd += (nu[j] - x[j]) * (nu[j] - x[j]);
        if (std::sqrt(nd) < dist) {
          t = std::move(*w);
          u = std::move(nu);
          continue;
        }
      }
    }
    // away step when the active vertex v offers more decrease than the FW vertex s
    const bool away = (gv - gu) > gap && t[v] < 1.0;
    RVec dir(d);
    double gmax = 1.0;
    if (away) {
      for (std::size_t j = 0; j < d; ++j) dir[j] = u[j] - A[v][j];
      gmax = t[v] / (1.0 - t[v]);
    } else {
      for (std::size_t j = 0; j < d; ++j) dir[j] = A[s][j] - u[j];
    }
    const double dd = dot(dir, dir);
    if (dd == 0.0) break;
    const double gamma = std::clamp(-dot(p, dir) / dd, 0.0, gmax);
    if (away) {
      for (double& ti : t) ti *= 1.0 + gamma;
      t[v] -= gamma;
      if (gamma == gmax) t[v] = 0.0;
    } else {
      for (double& ti : t) ti *= 1.0 - gamma;
      t[s] += gamma;
    }
    for (std::size_t j = 0; j < d; ++j) u[j] += gamma * dir[j];
  }
  throw ConvergenceError("convex_membership: Frank-Wolfe iteration cap reached");
}

HullCertificate downward_membership(std::span<const double> r, std::span<const RVec> A,
                                    double tol) {
  require(!A.empty(), "downward_membership: empty point set");
  require(tol > 0.0, "downward_membership: tolerance must be positive");
  const std::size_t d = r.size();
  for (const RVec& a : A) {
    require(a.size() == d, "downward_membership: dimension mismatch");
    check_finite(a, "downward_membership: points must be finite");
  }
  check_finite(r, "downward_membership: query must be finite");
  const std::size_t m = A.size();
  const double out_thresh = tol * (1.0 + norm2(r));

  // start at the sample closest to dominating r
  std::vector<double> t(m, 0.0);
  {
    std::size_t best = 0;
    double bq = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < m; ++i) {
      double s = 0.0;
      for (std::size_t j = 0; j < d; ++j) s += std::pow(std::max(0.0, r[j] - A[i][j]), 2);
      if (s < bq) {
        bq = s;
        best = i;
      }
    }
    t[best] = 1.0;
  }
  RVec u = combination(A, t, d);
  RVec q(d);
  std::vector<double> g(m);

  for (std::size_t it = 0; it < kIterCap; ++it) {
    if (it % 100 == 99) u = combination(A, t, d);
    for (std::size_t j = 0; j < d; ++j) q[j] = std::max(0.0, r[j] - u[j]);
    const double qn = norm2(q);
    if (qn <= tol) {
      auto in = make_inside(A, t, true, tol);
      RVec c = combination(in.support, in.weights, d);
      for (std::size_t j = 0; j < d; ++j) c[j] = std::max(0.0, r[j] - c[j]);
      in.residual = norm2(c);
      return in;
    }
    // gradient of g/2 at vertex i is -<a_i, q>
    std::size_t s = 0;
    std::size_t v = 0;
    double gu = 0.0;
    double gv = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < m; ++i) {
      g[i] = -dot(A[i], q);
      if (g[i] < g[s]) s = i;
      if (t[i] > 0.0) {
        gu += t[i] * g[i];
        if (g[i] > gv) {
          gv = g[i];
          v = i;
        }
      }
    }
    const double margin = dot(q, r) + g[s];
    if (margin > out_thresh) return SeparatingFunctional{q, margin, tol};
    const double gap = gu - g[s];
    if (gap <= tol * tol) {
      auto in = make_inside(A, t, true, tol);
      in.residual = qn;
      return in;
    }
    const bool away = (gv - gu) > gap && t[v] < 1.0;
    RVec dir(d);
    double gmax = 1.0;
    if (away) {
      for (std::size_t j = 0; j < d; ++j) dir[j] = u[j] - A[v][j];
      gmax = t[v] / (1.0 - t[v]);
    } else {
      for (std::size_t j = 0; j < d; ++j) dir[j] = A[s][j] - u[j];
    }
    // phi'(gamma) = -<dir, (r - u - gamma dir)_+> is nondecreasing
    auto dphi = [&](double gamma) {
      double s2 = 0.0;
      for (std::size_t j = 0; j < d; ++j) {
        s2 -= dir[j] * std::max(0.0, r[j] - u[j] - gamma * dir[j]);
      }
      return s2;
    };
    if (dphi(0.0) >= 0.0) break;
    double gamma = gmax;
    if (dphi(gmax) > 0.0) {
      double lo = 0.0;
      double hi = gmax;
      for (int k = 0; k < 200 && hi - lo > 1e-17 * (1.0 + hi); ++k) {
        const double mid = 0.5 * (lo + hi);
        if (dphi(mid) < 0.0) lo = mid; else hi = mid;
      }
      gamma = 0.5 * (lo + hi);
    }
    if (away) {
      for (double& ti : t) ti *= 1.0 + gamma;
      t[v] -= gamma;
      if (gamma == gmax) t[v] = 0.0;
    } else {
      for (double& ti : t) ti *= 1.0 - gamma;
      t[s] += gamma;
    }
    for (std::size_t j = 0; j < d; ++j) u[j] += gamma * dir[j];
  }
  // no descent direction left: the margin is within tolerance
  for (std::size_t j = 0; j < d; ++j) q[j] = std::max(0.0, r[j] - u[j]);
  double best = kNegInf;
  for (const RVec& a : A) best = std::max(best, dot(q, a));
  const double margin = dot(q, r) - best;
  if (margin > out_thresh) return SeparatingFunctional{q, margin, tol};
  auto in = make_inside(A, t, true, tol);
  in.residual = norm2(q);
  return in;
}

namespace {

bool contains(std::span<const RVec> S, const RVec& p) {
  return std::find(S.begin(), S.end(), p) != S.end();
}

bool weights_ok(const InsideConvexCombination& in) {
  if (in.weights.size() != in.support.size() || in.weights.empty()) return false;
  double s = 0.0;
  for (double w : in.weights) {
    if (!(w >= 0.0)) return false;
    s += w;
  }
  return std::abs(s - 1.0) <= 1e-12;
}

}  // namespace

bool verify_convex(const HullCertificate& c, std::span<const double> x, const PointCloud& S) {
  const std::size_t d = S.dim();
  if (x.size() != d) return false;
  const double scale = 1.0 + norm2(x);
  if (const auto* in = std::get_if<InsideConvexCombination>(&c)) {
    if (in->dominated || !weights_ok(*in) || in->support.size() > d + 1) return false;
    for (const RVec& p : in->support) {
      if (!contains(S.points(), p)) return false;
    }
    RVec u = combination(in->support, in->weights, d);
    double r2 = 0.0;
    for (std::size_t j = 0; j < d; ++j) r2 += (u[j] - x[j]) * (u[j] - x[j]);
    const double tol = in->tolerance;
    return std::sqrt(r2) <= tol + 1e-12 * scale || r2 <= tol * scale + tol * tol;
  }
  if (const auto* sep = std::get_if<SeparatingFunctional>(&c)) {
    if (sep->lambda.size() != d) return false;
    double best = kNegInf;
    for (const RVec& a : S.points()) best = std::max(best, dot(sep->lambda, a));
    const double margin = dot(sep->lambda, x) - best;
    return margin > sep->tolerance * scale && margin > 0.0;
  }
  return false;
}

bool verify_downward(const HullCertificate& c, std::span<const double> r,
                     std::span<const RVec> A) {
  const std::size_t d = r.size();
  const double scale = 1.0 + norm2(r);
  if (const auto* in = std::get_if<InsideConvexCombination>(&c)) {
    if (!weights_ok(*in) || in->support.size() > d + 1) return false;
    for (const RVec& p : in->support) {
      if (p.size() != d || !contains(A, p)) return false;
    }
    RVec u = combination(in->support, in->weights, d);
    double q2 = 0.0;
    for (std::size_t j = 0; j < d; ++j) q2 += std::pow(std::max(0.0, r[j] - u[j]), 2);
    const double tol = in->tolerance;
    return std::sqrt(q2) <= tol + 1e-12 * scale || q2 <= tol * scale + tol * tol;
  }
  if (const auto* sep = std::get_if<SeparatingFunctional>(&c)) {
    if (sep->lambda.size() != d) return false;
    for (double l : sep->lambda) {
      if (l < 0.0) return false;
    }
    double best = kNegInf;
    for (const RVec& a : A) best = std::max(best, dot(sep->lambda, a));
    const double margin = dot(sep->lambda, r) - best;
    return margin > sep->tolerance * scale && margin > 0.0;
  }
  return false;
}

double log_monomial_sup(const CircularSample& E, const MultiIndex& alpha) {
  require(alpha.size() == E.n(), "monomial_sup: dimension mismatch");
  double best = kNegInf;
  for (const CVec& w : E.points()) {
    double s = 0.0;
    bool zero = false;
    for (std::size_t j = 0; j < alpha.size(); ++j) {
      if (alpha[j] == 0) continue;
      const double m = std::abs(w[j]);
      if (m == 0.0) {
        zero = true;
        break;
      }
      s += static_cast<double>(alpha[j]) * std::log(m);
    }
    if (!zero) best = std::max(best, s);
  }
  return best;
}

double monomial_sup(const CircularSample& E, const MultiIndex& alpha) {
  require(alpha.size() == E.n(), "monomial_sup: dimension mismatch");
  double best = 0.0;
  for (const CVec& w : E.points()) best = std::max(best, std::abs(monomial_eval(w, alpha)));
  return best;
}

std::pair<unsigned long long, unsigned long long> best_rational(double x,
                                                                unsigned long long qmax) {
  require(x >= 0.0 && std::isfinite(x), "best_rational: x must be finite and nonnegative");
  require(qmax >= 1, "best_rational: qmax must be positive");
  unsigned long long h1 = 1, h2 = 0, k1 = 0, k2 = 1;
  std::pair<unsigned long long, unsigned long long> best{
      static_cast<unsigned long long>(std::floor(x)), 1};
  double y = x;
  for (int it = 0; it < 64; ++it) {
    const double a = std::floor(y);
    if (a > 1e15) break;
    const auto ai = static_cast<unsigned long long>(a);
    const unsigned long long h = ai * h1 + h2;
    const unsigned long long k = ai * k1 + k2;
    if (k > qmax) break;
    best = {h, k};
    const double frac = y - a;
    if (frac <= 1e-15 * std::max(1.0, y)) break;
    y = 1.0 / frac;
    h2 = h1;
    h1 = h;
    k2 = k1;
    k1 = k;
  }
  return best;
}

namespace {

double log_abs_monomial(std::span<const Complex> z, const MultiIndex& alpha) {
  double s = 0.0;
  for (std::size_t j = 0; j < alpha.size(); ++j) {
    if (alpha[j] == 0) continue;
    const double m = std::abs(z[j]);
    if (m == 0.0) return kNegInf;
    s += static_cast<double>(alpha[j]) * std::log(m);
  }
  return s;
}

std::vector<unsigned long long> denominator_caps() {
  std::vector<unsigned long long> caps;
  for (unsigned long long q = 1; q < 10000; q *= 2) caps.push_back(q);
  for (unsigned long long q = 10000; q < 1000000; q *= 2) caps.push_back(q);
  caps.push_back(1000000);
  return caps;
}

}  // namespace

HullCertificate poly_hull_membership(std::span<const Complex> z, const CircularSample& E,
                                     double tol) {
  require(z.size() == E.n(), "poly_hull_membership: dimension mismatch");
  for (const Complex& c : z) {
    require(std::isfinite(c.real()) && std::isfinite(c.imag()), "poly_hull_membership: z must be finite");
  }
  std::vector<std::size_t> I;
  for (std::size_t j = 0; j < z.size(); ++j) {
    if (z[j] != Complex{}) I.push_back(j);
  }
  if (I.empty()) {
    InsideConvexCombination in;
    in.dominated = true;
    in.tolerance = tol;
    return in;
  }
  MultiIndex pattern(E.n());
  for (std::size_t j : I) pattern[j] = 1;
  const LogRegion A = log_region(E, I);
  if (A.points.empty()) {
    return MonomialWitness{pattern, kNegInf, log_abs_monomial(z, pattern)};
  }
  RVec r;
  for (std::size_t j : I) r.push_back(std::log(std::abs(z[j])));
  HullCertificate c = downward_membership(r, A.points, tol);
  const auto* sep = std::get_if<SeparatingFunctional>(&c);
  if (sep == nullptr) return c;

  const double lmax = *std::max_element(sep->lambda.begin(), sep->lambda.end());
  for (unsigned long long cap : denominator_caps()) {
    std::vector<std::pair<unsigned long long, unsigned long long>> pq;
    unsigned long long L = 1;
    bool overflow = false;
    for (double l : sep->lambda) {
      pq.push_back(best_rational(std::clamp(l / lmax, 0.0, 1.0), cap));
      L = std::lcm(L, pq.back().second);
      if (L > (1ULL << 31)) {
        overflow = true;
        break;
      }
    }
    if (overflow) continue;
    MultiIndex alpha(E.n());
    for (std::size_t k = 0; k < I.size(); ++k) {
      alpha[I[k]] = static_cast<unsigned>(pq[k].first * (L / pq[k].second));
    }
    if (alpha.is_zero()) continue;
    const double lv = log_abs_monomial(z, alpha);
    const double ls = log_monomial_sup(E, alpha);
    if (lv > ls) return MonomialWitness{alpha, ls, lv};
  }
  throw CertificateError("poly_hull_membership: no monomial witness verified against the samples");
}

bool verify_poly(const HullCertificate& c, std::span<const Complex> z, const CircularSample& E,
                 double tol) {
  if (z.size() != E.n()) return false;
  if (const auto* in = std::get_if<InsideConvexCombination>(&c)) {
    std::vector<std::size_t> I;
    for (std::size_t j = 0; j < z.size(); ++j) {
      if (z[j] != Complex{}) I.push_back(j);
    }
    if (I.empty()) return in->weights.empty();
    const LogRegion A = log_region(E, I);
    RVec r;
    for (std::size_t j : I) r.push_back(std::log(std::abs(z[j])));
    InsideConvexCombination copy = *in;
    copy.tolerance = std::max(copy.tolerance, tol);
    return in->dominated && verify_downward(copy, r, A.points);
  }
  if (const auto* mw = std::get_if<MonomialWitness>(&c)) {
    if (mw->alpha.size() != E.n() || mw->alpha.is_zero()) return false;
    const double lv = log_abs_monomial(z, mw->alpha);
    const double ls = log_monomial_sup(E, mw->alpha);
    return lv > ls;
  }
  if (const auto* ew = std::get_if<ExponentialWitness>(&c)) {
    if (ew->mu.size() != E.n() || !(ew->t > 0.0)) return false;
    auto val = [&](std::span<const Complex> w) {
      Complex m{};
      for (std::size_t j = 0; j < w.size(); ++j) m += ew->mu[j] * w[j];
      return std::abs(1.0 + ew->t * m);
    };
    double sup = 0.0;
    for (const CVec& w : E.points()) sup = std::max(sup, val(w));
    return val(z) > sup;
  }
  return false;
}

HullCertificate exp_certificate(std::span<const Complex> z, const CircularSample& E, double tol) {
  require(z.size() == E.n(), "exp_certificate: dimension mismatch");
  const std::size_t n = E.n();
  auto embed = [n](std::span<const Complex> w) {
    RVec v(2 * n);
    for (std::size_t j = 0; j < n; ++j) {
      v[j] = w[j].real();
      v[n + j] = w[j].imag();
    }
    return v;
  };
  std::vector<RVec> pts;
  for (const CVec& w : E.points()) pts.push_back(embed(w));
  const PointCloud cloud(2 * n, std::move(pts));
  const RVec x = embed(z);
  const HullCertificate c = convex_membership(x, cloud, tol);
  const auto* sep = std::get_if<SeparatingFunctional>(&c);
  if (sep == nullptr) return NotApplicable{"z lies in the closed convex hull of the sample"};

  CVec mu(n);
  for (std::size_t j = 0; j < n; ++j) mu[j] = Complex(sep->lambda[j], -sep->lambda[n + j]);
  auto mu_of = [&](std::span<const Complex> w) {
    Complex m{};
    for (std::size_t j = 0; j < n; ++j) m += mu[j] * w[j];
    return m;
  };
  const Complex mz = mu_of(z);
  double sup_re = kNegInf;
  double C = 0.0;
  for (const CVec& w : E.points()) {
    const Complex m = mu_of(w);
    sup_re = std::max(sup_re, m.real());
    C = std::max(C, std::norm(m));
  }
  const double gap = mz.real() - sup_re;
  if (!(gap > 0.0)) throw CertificateError("exp_certificate: separation lost in complex form");
  const double t = std::min(1.0, gap / (2.0 * C + 2.0 * std::norm(mz) + 1.0));
  double bsup = 0.0;
  for (const CVec& w : E.points()) bsup = std::max(bsup, std::abs(1.0 + t * mu_of(w)));
  const double vz = std::abs(1.0 + t * mz);
  if (!(vz > bsup)) throw CertificateError("exp_certificate: witness failed self-verification");
  return ExponentialWitness{std::move(mu), t, bsup, vz};
}

EbReport eb_dichotomy(double b, unsigned degree_cap, std::size_t ray_samples,
                      std::optional<CVec> exterior) {
  require(b > 0.0 && std::isfinite(b), "eb_dichotomy: b must be positive and finite");
  require(degree_cap >= 1, "eb_dichotomy: degree cap must be positive");
  require(ray_samples >= 2, "eb_dichotomy: need at least two ray samples");
  EbReport rep{b, false, std::nullopt, 0.0, {}, std::nullopt};

  const unsigned long long qmax = std::max(1U, degree_cap / 2);
  const auto [p, q] = best_rational(b, qmax);
  if (p >= 1 && std::abs(static_cast<double>(p) - b * static_cast<double>(q)) <=
                    1e-12 * static_cast<double>(q)) {
    rep.rational = true;
    const MultiIndex beta(std::vector<unsigned>{static_cast<unsigned>(p), static_cast<unsigned>(q)});
    rep.bounded = beta;
    // boundary rays (s, -b s) of E(b) in log coordinates
    constexpr double kS = 40.0;
    double best = kNegInf;
    for (std::size_t k = 0; k < ray_samples; ++k) {
      const double s = -kS + 2.0 * kS * static_cast<double>(k) / static_cast<double>(ray_samples - 1);
      best = std::max(best, static_cast<double>(p) * s + static_cast<double>(q) * (-b * s));
    }
    rep.bounded_sup = std::exp(best);
    if (exterior) {
      require(exterior->size() == 2, "eb_dichotomy: exterior point must lie in C^2");
      const double lv = log_abs_monomial(*exterior, beta);
      if (lv > best) rep.exterior = MonomialWitness{beta, best, lv};
    }
    return rep;
  }

  const double target = std::log(1e6) + 1.0;
  constexpr double kDelta = 1e-3;
  for (unsigned deg = 1; deg <= degree_cap; ++deg) {
    for (unsigned a1 = 0; a1 <= deg; ++a1) {
      const unsigned a2 = deg - a1;
      const double c = static_cast<double>(a1) - b * static_cast<double>(a2);
      if (std::abs(c) <= 1e-12 * std::max(1.0, static_cast<double>(a2))) {
        throw PreconditionError("eb_dichotomy: b is rational with denominator above D/2");
      }
      // log|w^alpha| = s (a1 - b a2) - a2 delta on the ray (s, -b s - delta)
      const double s = std::copysign((target + a2 * kDelta) / std::abs(c), c);
      RVec lp{s, -b * s - kDelta};
      const double lm = a1 * lp[0] + a2 * lp[1];
      rep.unbounded.push_back(
          {MultiIndex(std::vector<unsigned>{a1, a2}), std::move(lp), lm});
    }
  }
  return rep;
}

bool torus_invariance_check(const CircularSample& E, std::span<const Complex> z,
                            std::span<const CVec> ts, double tol) {
  const bool base = is_inside(poly_hull_membership(z, E, tol));
  for (const CVec& t : ts) {
    require(t.size() == z.size(), "torus_invariance_check: dimension mismatch");
    CVec tz(z.size());
    for (std::size_t j = 0; j < z.size(); ++j) tz[j] = t[j] * z[j];
    if (is_inside(poly_hull_membership(tz, E, tol)) != base) return false;
  }
  return true;
}

double three_lines_check(double A0, double A1, const std::function<Complex(Complex)>& f,
                         std::size_t nx, std::size_t ny, double ymax) {
  require(A0 >= 0.0 && A1 >= 0.0, "three_lines_check: bounds must be nonnegative");
  require(nx >= 2 && ny >= 1 && ymax >= 0.0, "three_lines_check: bad grid");
  double worst = kNegInf;
  for (std::size_t i = 0; i < nx; ++i) {
    const double x = static_cast<double>(i) / static_cast<double>(nx - 1);
    const double bound = std::pow(A0, 1.0 - x) * std::pow(A1, x);
    for (std::size_t k = 0; k < ny; ++k) {
      const double y = ny == 1 ? 0.0 : -ymax + 2.0 * ymax * static_cast<double>(k) / static_cast<double>(ny - 1);
      worst = std::max(worst, std::abs(f(Complex(x, y))) - bound);
    }
  }
  return worst;
}

}  // namespace harmonia::hull
