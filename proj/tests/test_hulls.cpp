#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "harmonia/error.hpp"
#include "harmonia/hulls.hpp"
#include "oracles.hpp"

using namespace harmonia;
using namespace harmonia::hull;
using std::numbers::pi;

namespace {

// Independent re-check of a convex certificate, without the library verifier.
bool recheck_convex(const HullCertificate& c, const RVec& x, const PointCloud& S) {
  if (const auto* in = std::get_if<InsideConvexCombination>(&c)) {
    double sum = 0.0;
    RVec u(x.size(), 0.0);
    for (std::size_t k = 0; k < in->weights.size(); ++k) {
      if (in->weights[k] < -1e-15) return false;
      sum += in->weights[k];
      bool found = false;
      for (const auto& p : S.points()) found = found || p == in->support[k];
      if (!found) return false;
      for (std::size_t j = 0; j < x.size(); ++j) u[j] += in->weights[k] * in->support[k][j];
    }
    double r = 0.0;
    for (std::size_t j = 0; j < x.size(); ++j) r += (u[j] - x[j]) * (u[j] - x[j]);
    return std::abs(sum - 1.0) <= 1e-12 && in->support.size() <= x.size() + 1 && std::sqrt(r) <= 1e-6;
  }
  const auto& sep = std::get<SeparatingFunctional>(c);
  double best = -INFINITY, at = 0.0;
  for (const auto& p : S.points()) {
    double v = 0.0;
    for (std::size_t j = 0; j < x.size(); ++j) v += sep.lambda[j] * p[j];
    best = std::max(best, v);
  }
  for (std::size_t j = 0; j < x.size(); ++j) at += sep.lambda[j] * x[j];
  return at > best;
}

// Independent check of a monomial witness against the samples.
bool recheck_monomial(const MonomialWitness& m, const CVec& z, const CircularSample& E) {
  auto mod = [&](const CVec& w) {
    double v = 1.0;
    for (std::size_t j = 0; j < w.size(); ++j) v *= std::pow(std::abs(w[j]), double(m.alpha[j]));
    return v;
  };
  double sup = 0.0;
  for (const auto& w : E.points()) sup = std::max(sup, mod(w));
  return mod(z) > sup;
}

bool recheck_exponential(const ExponentialWitness& e, const CVec& z, const CircularSample& E) {
  auto val = [&](const CVec& w) {
    Complex s = 0.0;
    for (std::size_t j = 0; j < w.size(); ++j) s += e.mu[j] * w[j];
    return std::abs(1.0 + e.t * s);
  };
  double sup = 0.0;
  for (const auto& w : E.points()) sup = std::max(sup, val(w));
  return val(z) > sup;
}

CircularSample torus_sample(std::size_t k) {
  std::vector<CVec> pts;
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j)
      pts.push_back({std::polar(1.0, 2 * pi * i / k), std::polar(1.0, 2 * pi * j / k)});
  return CircularSample(2, pts);
}

// Boundary tori of the polydisks with radii (2, 1) and (1, 2), with phases.
CircularSample bidisk_union() {
  std::vector<CVec> pts;
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 8; ++j) {
      double a = 2 * pi * i / 8, b = 2 * pi * j / 8;
      pts.push_back({std::polar(2.0, a), std::polar(1.0, b)});
      pts.push_back({std::polar(1.0, a), std::polar(2.0, b)});
    }
  return CircularSample(2, pts);
}

CircularSample eb_sample(double b) {
  std::vector<CVec> pts;
  for (int k = 0; k <= 200; ++k) {
    double s = -5.0 + 10.0 * k / 200;
    for (int p = 0; p < 4; ++p) pts.push_back({std::polar(std::exp(s), p * pi / 2), std::polar(std::exp(-b * s), p * pi / 3)});
  }
  return CircularSample(2, pts);
}

}  // namespace

TEST_CASE("convex membership examples") {
  PointCloud tri(2, {{0, 0}, {1, 0}, {0, 1}});
  for (const auto& p : tri.points()) {
    auto c = convex_membership(p, tri);
    REQUIRE(is_inside(c));
    auto& in = std::get<InsideConvexCombination>(c);
    REQUIRE(in.support.size() == 1);
    CHECK(in.support[0] == p);
    CHECK(in.weights[0] == doctest::Approx(1.0));
  }
  RVec x{1, 1};
  auto c = convex_membership(x, tri);
  REQUIRE(std::holds_alternative<SeparatingFunctional>(c));
  auto& sep = std::get<SeparatingFunctional>(c);
  CHECK(sep.lambda[0] == doctest::Approx(0.5).epsilon(1e-6));
  CHECK(sep.lambda[1] == doctest::Approx(0.5).epsilon(1e-6));
  CHECK(sep.margin == doctest::Approx(0.5).epsilon(1e-6));
  CHECK(verify_convex(c, x, tri));
  CHECK(kind_name(c) == "SeparatingFunctional");

  PointCloud sq(2, {{0, 0}, {1, 0}, {0, 1}, {1, 1}});
  RVec mid{0.5, 0.5};
  auto m = convex_membership(mid, sq);
  REQUIRE(is_inside(m));
  CHECK(verify_convex(m, mid, sq));
  CHECK(recheck_convex(m, mid, sq));
  CHECK(std::get<InsideConvexCombination>(m).support.size() <= 3);
  CHECK(kind_name(m) == "InsideConvexCombination");

  CHECK_THROWS_AS(convex_membership(RVec{1.0}, sq), PreconditionError);
  CHECK_THROWS_AS(PointCloud(2, {}), PreconditionError);
  CHECK_FALSE(verify_convex(NotApplicable{"x"}, mid, sq));
  // tampered certificates are rejected
  auto bad = sep;
  bad.lambda = {-0.5, -0.5};
  CHECK_FALSE(verify_convex(bad, x, tri));
  auto bad_in = std::get<InsideConvexCombination>(m);
  bad_in.support[0] = {3, 3};
  CHECK_FALSE(verify_convex(bad_in, mid, sq));
}

TEST_CASE("property: convex membership against the polygon oracle") {
  std::mt19937_64 rng(60);
  std::uniform_real_distribution<double> u(-1, 1);
  int inside = 0, outside = 0;
  for (int t = 0; t < 400; ++t) {
    std::vector<RVec> pts;
    for (int k = 0; k < 3 + t % 10; ++k) pts.push_back({u(rng), u(rng)});
    PointCloud S(2, pts);
    RVec x{1.3 * u(rng), 1.3 * u(rng)};
    auto c = convex_membership(x, S);
    REQUIRE(verify_convex(c, x, S));
    REQUIRE(recheck_convex(c, x, S));
    double sd = oracle::polygon_signed_distance(pts, x);
    if (sd > 1e-6) {
      REQUIRE_FALSE(is_inside(c));
      ++outside;
    } else if (sd < -1e-6) {
      REQUIRE(is_inside(c));
      ++inside;
    }
  }
  CHECK(inside > 50);
  CHECK(outside > 50);
  for (int t = 0; t < 100; ++t) {
    std::size_t d = 3 + t % 4;
    std::vector<RVec> pts;
    for (int k = 0; k < 12; ++k) {
      RVec p(d);
      for (auto& v : p) v = u(rng);
      pts.push_back(p);
    }
    PointCloud S(d, pts);
    RVec x(d);
    for (auto& v : x) v = 0.6 * u(rng);
    auto c = convex_membership(x, S);
    REQUIRE(verify_convex(c, x, S));
    REQUIRE(recheck_convex(c, x, S));
  }
}

TEST_CASE("downward closure") {
  std::vector<RVec> origin{{0, 0}};
  CHECK(is_inside(downward_membership(RVec{-1, -0.1}, origin)));
  CHECK(is_inside(downward_membership(RVec{0, 0}, origin)));
  CHECK_FALSE(is_inside(downward_membership(RVec{0.1, -1}, origin)));
  CHECK_FALSE(is_inside(downward_membership(RVec{-1, 0.1}, origin)));

  std::vector<RVec> seg{{0, -1}, {-1, 0}};
  auto in = downward_membership(RVec{-0.5, -0.5}, seg);
  CHECK(is_inside(in));
  CHECK(verify_downward(in, RVec{-0.5, -0.5}, seg));
  auto out = downward_membership(RVec{-0.2, -0.2}, seg);
  REQUIRE(std::holds_alternative<SeparatingFunctional>(out));
  for (double l : std::get<SeparatingFunctional>(out).lambda) CHECK(l >= 0.0);
  CHECK(verify_downward(out, RVec{-0.2, -0.2}, seg));

  std::mt19937_64 rng(61);
  std::uniform_real_distribution<double> u(-1, 1);
  for (int t = 0; t < 200; ++t) {
    std::vector<RVec> A;
    for (int k = 0; k < 5; ++k) A.push_back({u(rng), u(rng), u(rng)});
    RVec r{u(rng), u(rng), u(rng)};
    auto c = downward_membership(r, A);
    REQUIRE(verify_downward(c, r, A));
    if (is_inside(c)) {
      RVec lower = r;
      for (auto& v : lower) v -= std::abs(u(rng));
      REQUIRE(is_inside(downward_membership(lower, A)));
    }
  }
}

TEST_CASE("polynomial hull of the torus") {
  auto E = torus_sample(16);
  std::mt19937_64 rng(62);
  std::uniform_real_distribution<double> r(0, 1), th(-pi, pi);
  for (int t = 0; t < 50; ++t) {
    CVec z{std::polar(r(rng), th(rng)), std::polar(r(rng), th(rng))};
    auto c = poly_hull_membership(z, E);
    REQUIRE(is_inside(c));
    REQUIRE(verify_poly(c, z, E));
  }
  CVec z{1.1, 0.5};
  auto c = poly_hull_membership(z, E);
  REQUIRE(std::holds_alternative<MonomialWitness>(c));
  auto& m = std::get<MonomialWitness>(c);
  CHECK(m.alpha[0] > 0);
  CHECK(m.alpha[1] == 0);
  CHECK(recheck_monomial(m, z, E));
  CHECK(verify_poly(c, z, E));
  CHECK(kind_name(c) == "MonomialWitness");
  CHECK(monomial_sup(E, MultiIndex{3, 5}) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(monomial_sup(E, MultiIndex{0, 0}) == 1.0);
  CHECK(is_inside(poly_hull_membership(CVec{0.0, 0.0}, E)));
  CHECK(is_inside(poly_hull_membership(CVec{0.0, 0.0}, CircularSample(2, {{Complex(5), Complex(0)}}))));
}

TEST_CASE("polynomial hull with vanishing coordinates") {
  CircularSample axis(2, {{Complex(1.0), Complex(0.0)}, {Complex(0, -2), Complex(0.0)}});
  CVec z{0.5, 0.1};
  auto c = poly_hull_membership(z, axis);
  REQUIRE(std::holds_alternative<MonomialWitness>(c));
  auto& m = std::get<MonomialWitness>(c);
  CHECK(m.alpha == MultiIndex{1, 1});
  CHECK(std::isinf(m.log_sup_on_e));
  CHECK(m.sup_on_e() == 0.0);
  CHECK(verify_poly(c, z, axis));
  CHECK(is_inside(poly_hull_membership(CVec{Complex(0, 1.5), 0.0}, axis)));
  CHECK_FALSE(is_inside(poly_hull_membership(CVec{Complex(2.5), 0.0}, axis)));
}

TEST_CASE("multiplicative convexity") {
  auto E = bidisk_union();
  CVec z{std::sqrt(2.0), std::sqrt(2.0)};
  auto c = poly_hull_membership(z, E);
  CHECK(is_inside(c));
  CHECK(verify_poly(c, z, E));
  CVec out{1.5, 1.5};
  auto co = poly_hull_membership(out, E);
  REQUIRE_FALSE(is_inside(co));
  CHECK(verify_poly(co, out, E));
  CHECK(recheck_monomial(std::get<MonomialWitness>(co), out, E));

  std::mt19937_64 rng(63);
  std::uniform_real_distribution<double> a(0.01, 0.99), th(-pi, pi);
  for (int t = 0; t < 200; ++t) {
    const auto& v = E.points()[rng() % E.points().size()];
    const auto& w = E.points()[rng() % E.points().size()];
    double s = a(rng);
    CVec u{std::polar(std::pow(std::abs(v[0]), s) * std::pow(std::abs(w[0]), 1 - s), th(rng)),
           std::polar(std::pow(std::abs(v[1]), s) * std::pow(std::abs(w[1]), 1 - s), th(rng))};
    auto cu = poly_hull_membership(u, E);
    REQUIRE(is_inside(cu));
    REQUIRE(verify_poly(cu, u, E));
  }
  for (const auto& w : E.points()) REQUIRE(is_inside(poly_hull_membership(w, E)));
}

TEST_CASE("exponential certificates") {
  CircularSample zero(1, {{Complex(0.0)}});
  auto c = exp_certificate(CVec{1.0}, zero);
  REQUIRE(std::holds_alternative<ExponentialWitness>(c));
  auto& e = std::get<ExponentialWitness>(c);
  CHECK(e.value_at_z > 1.0);
  CHECK(e.boundary_sup == doctest::Approx(1.0));
  CHECK(recheck_exponential(e, {1.0}, zero));
  CHECK(verify_poly(c, CVec{1.0}, zero));
  CHECK(kind_name(c) == "ExponentialWitness");

  std::vector<CVec> circ;
  for (int k = 0; k < 64; ++k) circ.push_back({std::polar(1.0, 2 * pi * k / 64)});
  CircularSample S(1, circ);
  auto c2 = exp_certificate(CVec{2.0}, S);
  REQUIRE(std::holds_alternative<ExponentialWitness>(c2));
  CHECK(recheck_exponential(std::get<ExponentialWitness>(c2), {2.0}, S));
  CHECK(verify_poly(c2, CVec{2.0}, S));
  auto na = exp_certificate(CVec{0.3}, S);
  CHECK(std::holds_alternative<NotApplicable>(na));
  CHECK(kind_name(na) == "NotApplicable");
  CHECK_FALSE(verify_poly(na, CVec{0.3}, S));
}

TEST_CASE("property: certificate soundness on random circular samples") {
  std::mt19937_64 rng(64);
  std::uniform_real_distribution<double> r(0.1, 2.0), th(-pi, pi), zr(0.0, 3.0);
  int exp_ok = 0, mono = 0;
  for (int t = 0; t < 100; ++t) {
    std::size_t n = 1 + t % 3;
    std::vector<CVec> pts;
    for (int k = 0; k < 6; ++k) {
      CVec base(n);
      for (auto& x : base) x = r(rng);
      for (int p = 0; p < 8; ++p) {
        CVec w(n);
        for (std::size_t j = 0; j < n; ++j) w[j] = std::polar(std::abs(base[j]), th(rng));
        pts.push_back(w);
      }
    }
    CircularSample E(n, pts);
    for (int q = 0; q < 5; ++q) {
      CVec z(n);
      for (auto& x : z) x = std::polar(zr(rng), th(rng));
      auto c = poly_hull_membership(z, E);
      REQUIRE(verify_poly(c, z, E));
      if (auto* m = std::get_if<MonomialWitness>(&c)) {
        REQUIRE(recheck_monomial(*m, z, E));
        ++mono;
      }
      auto e = exp_certificate(z, E);
      if (auto* w = std::get_if<ExponentialWitness>(&e)) {
        REQUIRE(verify_poly(e, z, E));
        REQUIRE(recheck_exponential(*w, z, E));
        ++exp_ok;
      }
    }
    for (const auto& w : E.points()) REQUIRE(is_inside(poly_hull_membership(w, E)));
  }
  CHECK(exp_ok > 50);
  CHECK(mono > 50);
}

TEST_CASE("E(b) dichotomy") {
  auto rep = eb_dichotomy(0.5, 20);
  CHECK(rep.rational);
  REQUIRE(rep.bounded.has_value());
  CHECK(*rep.bounded == MultiIndex{1, 2});
  CHECK(rep.bounded_sup <= 1.0 + 1e-12);
  CHECK(rep.unbounded.empty());
  CHECK(monomial_sup(eb_sample(0.5), MultiIndex{1, 2}) == doctest::Approx(1.0).epsilon(1e-12));

  CVec ext{2.0, 1 / std::sqrt(2.0) + 1e-3};
  auto with = eb_dichotomy(0.5, 20, 401, ext);
  REQUIRE(with.exterior.has_value());
  CHECK(with.exterior->alpha == MultiIndex{1, 2});
  CHECK(with.exterior->value_at_z() == doctest::Approx(2 * std::pow(1 / std::sqrt(2.0) + 1e-3, 2)).epsilon(1e-12));
  CHECK(with.exterior->value_at_z() > with.exterior->sup_on_e());

  auto irr = eb_dichotomy(std::sqrt(2.0), 20);
  CHECK_FALSE(irr.rational);
  CHECK_FALSE(irr.bounded.has_value());
  CHECK(irr.unbounded.size() == 21 * 22 / 2 - 1);
  for (const auto& w : irr.unbounded) {
    REQUIRE(w.alpha.degree() >= 1);
    REQUIRE(w.alpha.degree() <= 20);
    // the witness point lies in E(b) and the monomial is large there
    REQUIRE(std::sqrt(2.0) * w.log_point[0] + w.log_point[1] <= 1e-12);
    double lm = w.alpha[0] * w.log_point[0] + w.alpha[1] * w.log_point[1];
    REQUIRE(lm == doctest::Approx(w.log_modulus).epsilon(1e-12));
    REQUIRE(lm > std::log(1e6));
  }
  auto big = eb_dichotomy(std::sqrt(2.0), 50);
  CHECK(big.unbounded.size() == 51 * 52 / 2 - 1);
  auto r23 = eb_dichotomy(2.0 / 3.0, 10);
  REQUIRE(r23.bounded.has_value());
  CHECK(*r23.bounded == MultiIndex{2, 3});
  CHECK_THROWS_AS(eb_dichotomy(0.0, 10), PreconditionError);
  CHECK(best_rational(0.5, 10) == std::pair<unsigned long long, unsigned long long>{1, 2});
  CHECK(best_rational(pi, 100) == std::pair<unsigned long long, unsigned long long>{22, 7});
}

TEST_CASE("torus invariance") {
  auto E = bidisk_union();
  std::mt19937_64 rng(65);
  std::uniform_real_distribution<double> th(-pi, pi);
  std::vector<CVec> ts;
  for (int k = 0; k < 8; ++k) ts.push_back({std::polar(1.0, th(rng)), std::polar(1.0, th(rng))});
  CVec in{Complex(0.5, 1.0), 0.9};
  CHECK(torus_invariance_check(E, in, ts));
  CVec out{1.5, Complex(0, 1.5)};
  CHECK(torus_invariance_check(E, out, ts));
  auto c = poly_hull_membership(out, E);
  auto& m = std::get<MonomialWitness>(c);
  for (const auto& t : ts) {
    CVec tz{t[0] * out[0], t[1] * out[1]};
    CHECK(recheck_monomial(m, tz, E));
  }
  CHECK(torus_invariance_check(E, CVec{0.0, 0.0}, ts));
}

TEST_CASE("three lines") {
  CHECK(three_lines_check(2.0, 2.0, [](Complex) { return Complex(2.0); }) == doctest::Approx(0.0));
  CHECK(three_lines_check(std::exp(-1.0), 1.0, [](Complex t) { return std::exp(t - 1.0); }) <= 1e-15);
  auto E = bidisk_union();
  std::mt19937_64 rng(66);
  std::uniform_real_distribution<double> th(-pi, pi);
  for (int k = 0; k < 20; ++k) {
    const auto& v = E.points()[rng() % E.points().size()];
    const auto& w = E.points()[rng() % E.points().size()];
    Complex u0 = std::polar(1.0, th(rng)), u1 = std::polar(1.0, th(rng));
    auto g = [&](Complex tau, std::size_t j, Complex u) {
      return u * std::exp(tau * std::log(std::abs(v[j])) + (1.0 - tau) * std::log(std::abs(w[j])));
    };
    auto f = [&](Complex tau) { return g(tau, 0, u0) * g(tau, 1, u1); };
    double A0 = std::abs(w[0] * w[1]), A1 = std::abs(v[0] * v[1]);
    REQUIRE(three_lines_check(A0, A1, f) <= 1e-9);
  }
  CHECK(three_lines_check(0.5, 1.0, [](Complex) { return Complex(1.0); }) > 0.4);
}
