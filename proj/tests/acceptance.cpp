// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fail.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <string>

#include "harmonia/algebra.hpp"
#include "harmonia/hulls.hpp"
#include "harmonia/line.hpp"
#include "harmonia/seq_spaces.hpp"
#include "harmonia/torus.hpp"
#include "oracles.hpp"

using namespace harmonia;
using std::numbers::pi;

namespace {

struct Outcome {
  bool ok;
  std::string detail;
};

int failures = 0;

void run(int k, const char* what, double limit_s, const std::function<Outcome()>& body) {
  auto t0 = std::chrono::steady_clock::now();
  Outcome o{false, ""};
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  bool ok = o.ok && dt < limit_s;
  if (!ok) ++failures;
  std::printf("%s criterion %d: %s [%s; %.3f s, limit %g s]\n", ok ? "PASS" : "FAIL", k, what,
              o.detail.c_str(), dt, limit_s);
  std::fflush(stdout);
}

std::string sci(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

torus::CoeffTable random_table(std::mt19937_64& rng, std::size_t dim, int K, bool analytic) {
  torus::CoeffTable c(dim, K);
  auto v = oracle::random_complex(rng, c.size());
  for (std::size_t i = 0; i < c.size(); ++i) {
    bool neg = false;
    for (int a : c.index(i)) neg = neg || a < 0;
    c[i] = analytic && neg ? Complex(0.0) : v[i];
  }
  return c;
}

torus::TorusFunction synth_on_grid(const torus::CoeffTable& c, const torus::TorusGrid& g) {
  std::vector<Complex> vals(g.size());
  for (std::size_t k = 0; k < g.size(); ++k) vals[k] = torus::synthesize(c, g.point(k));
  return torus::TorusFunction(g, vals);
}

line::LineFunction random_compact(std::mt19937_64& rng, double L, std::size_t M) {
  std::uniform_real_distribution<double> c(-0.5, 0.5);
  auto w = oracle::random_complex(rng, 2);
  double c1 = c(rng), c2 = c(rng);
  return line::LineFunction::sample(1, L, M, [&](const line::RealPoint& x) {
    return w[0] * oracle::tent(x[0] - c1) + w[1] * oracle::tent(2 * (x[0] - c2));
  });
}

}  // namespace

int main() {
  run(1, "Poisson kernel mass on T, N = 512, |z| <= 0.9", 1.0, [] {
    double worst = 0.0;
    for (double r : {0.0, 0.1, 0.3, 0.5, 0.7, 0.8, 0.85, 0.9})
      for (int k = 0; k < 16; ++k) {
        Complex z[] = {std::polar(r, 2 * pi * k / 16 + 0.1)};
        worst = std::max(worst, std::abs(torus::poisson_mass(z, 512) - 1.0));
      }
    return Outcome{worst <= 1e-10, "max |mass - 1| = " + sci(worst)};
  });

  run(2, "integral of the transform of p_1 with analytic tail equals 2 pi", 1.0, [] {
    auto r = line::pa_hat_integral(1.0, 1e3, 16000);
    double e = std::abs(r.total - 2 * pi);
    return Outcome{e <= 1e-8, "|total - 2 pi| = " + sci(e)};
  });

  run(3, "Volterra table n = 1..6, M = 2000", 30.0, [] {
    double worst = 0.0;
    for (unsigned n = 1; n <= 6; ++n)
      worst = std::max(worst, std::abs(alg::volterra_power_norm(n, 2000) / oracle::inv_factorial(n) - 1.0));
    return Outcome{worst <= 1e-2, "max |sigma(n) n! - 1| = " + sci(worst)};
  });

  run(4, "Gelfand formula vs eigenvalues, 50 random 4x4", 30.0, [] {
    std::mt19937_64 rng(4);
    int bad = 0;
    double worst = 0.0;
    for (int t = 0; t < 50; ++t) {
      auto v = oracle::random_complex(rng, 16);
      alg::Matrix m(4, 4);
      for (int i = 0; i < 16; ++i) m(i / 4, i % 4) = v[i];
      auto x = alg::Element::matrix(m);
      double R = alg::spectral_radius_eig(x);
      double e = std::abs(alg::spectral_radius(x, 256).estimate - R) / (1 + R);
      worst = std::max(worst, e);
      if (e > 1e-2) ++bad;
    }
    return Outcome{bad == 0, std::to_string(bad) + " outside tolerance, worst relative gap " + sci(worst)};
  });

  run(5, "convolution theorems: 100 torus pairs, 20 line pairs", 30.0, [] {
    std::mt19937_64 rng(5);
    torus::TorusGrid g(1, 64);
    double tw = 0.0;
    for (int t = 0; t < 100; ++t) {
      int K = 1 + t % 31;
      auto a = random_table(rng, 1, K, false), b = random_table(rng, 1, K, false);
      auto c = torus::analyze(torus::convolve_torus(synth_on_grid(a, g), synth_on_grid(b, g)), K);
      for (std::size_t i = 0; i < c.size(); ++i) tw = std::max(tw, std::abs(c[i] - a[i] * b[i]));
    }
    double lw = 0.0;
    for (int t = 0; t < 20; ++t) {
      auto f = random_compact(rng, 1.5, 128), h = random_compact(rng, 1.5, 128);
      auto fh = line::convolve_line(f, h);
      for (double xi : {0.0, 0.5, 1.0, 3.0, 10.0}) {
        double x[] = {xi};
        lw = std::max(lw, std::abs(line::ft_quadrature(fh, x) - line::ft_quadrature(f, x) * line::ft_quadrature(h, x)));
      }
    }
    return Outcome{tw <= 1e-12 && lw <= 1e-6, "torus max error " + sci(tw) + ", line max error " + sci(lw)};
  });

  run(6, "Parseval on 100 band-limited functions", 5.0, [] {
    std::mt19937_64 rng(6);
    double worst = 0.0;
    for (int t = 0; t < 100; ++t) {
      std::size_t dim = 1 + t % 2;
      torus::TorusGrid g(dim, dim == 1 ? 64 : 16);
      auto f = synth_on_grid(random_table(rng, dim, g.max_band(), false), g);
      auto p = torus::parseval(f);
      worst = std::max(worst, std::abs(p.sum_of_squares - p.energy_integral) / std::max(1.0, p.energy_integral));
    }
    return Outcome{worst <= 1e-12, "max relative gap " + sci(worst)};
  });

  run(7, "inequality suites, 1000 cases each", 10.0, [] {
    using namespace seq;
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> pu(1.0, 10.0), ps(0.05, 1.0), tu(0.0, 1.0), mag(-3, 1);
    auto vec = [&](std::size_t n) {
      auto v = oracle::random_complex(rng, n);
      for (auto& x : v) x *= std::pow(10.0, mag(rng));
      return SeqVector(v);
    };
    const double slack = 1 + 1e-12;
    int holder = 0, mink = 0, quasi = 0, interp = 0, cs = 0;
    for (int t = 0; t < 1000; ++t) {
      std::size_t n = 1 + t % 12;
      auto f = vec(n), g = vec(n);
      Exponent p(t % 10 == 0 ? 1.0 : pu(rng));
      Exponent q = conjugate_exponent(p);
      if (lp_norm(f.hadamard(g), Exponent(1)) > lp_norm(f, p) * lp_norm(g, q) * slack) ++holder;
      if (lp_norm(f + g, p) > (lp_norm(f, p) + lp_norm(g, p)) * slack) ++mink;
      Exponent s(ps(rng));
      if (lp_power_sum(f + g, s) > (lp_power_sum(f, s) + lp_power_sum(g, s)) * slack) ++quasi;
      double a = tu(rng);
      std::vector<Complex> h(n);
      for (std::size_t j = 0; j < n; ++j) h[j] = std::pow(std::abs(f[j]), a) * std::pow(std::abs(g[j]), 1 - a);
      Exponent r(t % 2 ? ps(rng) : pu(rng));
      if (lp_norm(SeqVector(h), r) > std::pow(lp_norm(f, r), a) * std::pow(lp_norm(g, r), 1 - a) * slack) ++interp;
      if (std::abs(inner_product(f, g)) > lp_norm(f, Exponent(2)) * lp_norm(g, Exponent(2)) * slack) ++cs;
    }
    int total = holder + mink + quasi + interp + cs;
    return Outcome{total == 0, "violations: Holder " + std::to_string(holder) + ", Minkowski " + std::to_string(mink) +
                                   ", quasi-triangle " + std::to_string(quasi) + ", interpolation " +
                                   std::to_string(interp) + ", Cauchy-Schwarz " + std::to_string(cs)};
  });

  run(8, "dual norms vs brute force, 200 random g", 60.0, [] {
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> pu(1.0, 6.0);
    double worst = 0.0;
    for (int t = 0; t < 100; ++t) {
      auto g = oracle::random_complex(rng, 1 + t % 3);
      double p = t % 4 == 0 ? INFINITY : t % 4 == 1 ? 1.0 : pu(rng);
      double got = seq::dual_norm(seq::SeqVector(g), std::isinf(p) ? seq::Exponent::infinity() : seq::Exponent(p)).value;
      worst = std::max(worst, std::abs(got - oracle::dual_norm_zoom(g, p)));
    }
    for (int t = 0; t < 100; ++t) {
      auto g = oracle::random_real(rng, 1 + t % 12);
      bool one = t % 2 == 0;
      double got = seq::dual_norm(seq::SeqVector::real(g), one ? seq::Exponent(1) : seq::Exponent::infinity()).value;
      worst = std::max(worst, std::abs(got - oracle::dual_norm_real_extreme(g, one)));
    }
    return Outcome{worst <= 1e-6, "max |closed form - oracle| = " + sci(worst)};
  });

  run(9, "Pol(T^2) on a 21x21 modulus grid", 60.0, [] {
    std::vector<hull::CVec> pts;
    for (int i = 0; i < 16; ++i)
      for (int j = 0; j < 16; ++j) pts.push_back({std::polar(1.0, 2 * pi * i / 16), std::polar(1.0, 2 * pi * j / 16)});
    hull::CircularSample E(2, pts);
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> th(-pi, pi);
    int wrong = 0, unverified = 0;
    for (int i = 0; i <= 20; ++i)
      for (int j = 0; j <= 20; ++j) {
        double r1 = 0.1 * i, r2 = 0.1 * j;
        hull::CVec z{std::polar(r1, th(rng)), std::polar(r2, th(rng))};
        auto c = hull::poly_hull_membership(z, E);
        bool expect = std::max(r1, r2) <= 1.0;
        if (hull::is_inside(c) != expect) ++wrong;
        if (!expect) {
          const auto* m = std::get_if<hull::MonomialWitness>(&c);
          if (m == nullptr || !hull::verify_poly(c, z, E)) {
            ++unverified;
            continue;
          }
          // independent recheck of the witness
          double sup = 0.0, at = std::pow(std::abs(z[0]), double(m->alpha[0])) * std::pow(std::abs(z[1]), double(m->alpha[1]));
          for (const auto& w : pts)
            sup = std::max(sup, std::pow(std::abs(w[0]), double(m->alpha[0])) * std::pow(std::abs(w[1]), double(m->alpha[1])));
          if (!(at > sup)) ++unverified;
        }
      }
    return Outcome{wrong == 0 && unverified == 0,
                   std::to_string(wrong) + " misclassified, " + std::to_string(unverified) + " unverified witnesses"};
  });

  run(10, "E(b) dichotomy: b = 1/2 and b = sqrt 2", 30.0, [] {
    auto half = hull::eb_dichotomy(0.5, 20);
    bool ok = half.rational && half.bounded && *half.bounded == MultiIndex{1, 2};
    auto irr = hull::eb_dichotomy(std::sqrt(2.0), 20);
    std::size_t good = 0;
    for (const auto& w : irr.unbounded) {
      bool in_eb = std::sqrt(2.0) * w.log_point[0] + w.log_point[1] <= 1e-12;
      double lm = w.alpha[0] * w.log_point[0] + w.alpha[1] * w.log_point[1];
      if (in_eb && lm > std::log(1e6) && w.alpha.degree() >= 1 && w.alpha.degree() <= 20) ++good;
    }
    ok = ok && !irr.rational && good == 21 * 22 / 2 - 1;
    return Outcome{ok, "bounded monomial " + std::string(half.bounded ? "found" : "missing") + ", " +
                           std::to_string(good) + "/230 unbounded witnesses"};
  });

  run(11, "Abel sum of (-1)^j at r = 0.999, J = 1e5", 1.0, [] {
    std::vector<Complex> a(100000);
    for (std::size_t j = 0; j < a.size(); ++j) a[j] = j % 2 ? -1.0 : 1.0;
    double e = std::abs(torus::abel_sum(a, 0.999).value - 0.5);
    return Outcome{e <= 1e-3, "|A(r) - 1/2| = " + sci(e)};
  });

  run(12, "approximate identity on R for the tent", 10.0, [] {
    auto tent = line::LineFunction::sample(1, 2.0, 256, [](const line::RealPoint& x) { return Complex(oracle::tent(x[0])); });
    double e[3];
    int i = 0;
    for (double a : {0.1, 0.01, 0.001}) {
      double av[] = {a};
      e[i++] = line::approx_identity_error(tent, av);
    }
    bool ok = e[0] > e[1] && e[1] > e[2] && e[2] < 0.02;
    return Outcome{ok, "errors " + sci(e[0]) + ", " + sci(e[1]) + ", " + sci(e[2])};
  });

  run(13, "atomic-measure calculus", 1.0, [] {
    using line::LineAtomicMeasure;
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> u(-3, 3);
    bool exact = true;
    double ft = 0.0;
    for (int t = 0; t < 50; ++t) {
      std::vector<LineAtomicMeasure::Atom> am, an;
      for (auto c : oracle::random_complex(rng, 4)) am.push_back({{u(rng)}, c});
      for (auto c : oracle::random_complex(rng, 3)) an.push_back({{u(rng)}, c});
      LineAtomicMeasure mu(1, am), nu(1, an);
      auto conv = line::measure_convolve(mu, nu);
      // the convolution is the pairwise atom table
      std::vector<LineAtomicMeasure::Atom> pairs;
      for (const auto& a : mu.atoms())
        for (const auto& b : nu.atoms()) pairs.push_back({{a.u[0] + b.u[0]}, a.weight * b.weight});
      exact = exact && conv == LineAtomicMeasure(1, pairs);
      exact = exact && line::measure_convolve(mu, LineAtomicMeasure::delta({0.0})) == mu;
      double x[] = {u(rng)};
      auto z = line::HalfPlanePoint::real(x);
      ft = std::max(ft, std::abs(line::measure_ft(conv, z) - line::measure_ft(mu, z) * line::measure_ft(nu, z)));
      double uu = double(int(u(rng) * 4)) / 4, vv = double(int(u(rng) * 4)) / 4;
      exact = exact && line::measure_convolve(LineAtomicMeasure::delta({uu}), LineAtomicMeasure::delta({vv})) ==
                           LineAtomicMeasure::delta({uu + vv});
    }
    auto f = random_compact(rng, 4.0, 64);
    for (double s : {0.0, 0.5, -1.25, 2.0}) {
      double t[] = {s};
      auto a = line::fn_measure_convolve(f, LineAtomicMeasure::delta({s}));
      auto b = line::translate(f, t);
      for (std::size_t k = 0; k < f.size(); ++k) exact = exact && a[k] == b[k];
    }
    return Outcome{exact && ft <= 1e-12,
                   std::string(exact ? "identities exact" : "identity mismatch") + ", transform product error " + sci(ft)};
  });

  run(14, "maximum principle, 200 random analytic-type tables", 30.0, [] {
    std::mt19937_64 rng(14);
    std::uniform_real_distribution<double> r(0, 1), th(-pi, pi);
    double worst = -INFINITY;
    for (int t = 0; t < 200; ++t) {
      std::size_t dim = 1 + t % 2;
      auto c = random_table(rng, dim, 3, true);
      std::vector<torus::Point> pts(dim == 1 ? 2000 : 5000);
      for (auto& p : pts) {
        p.resize(dim);
        for (auto& x : p) x = std::polar(std::sqrt(r(rng)), th(rng));
      }
      worst = std::max(worst, torus::max_principle_gap(c, pts, 64).gap);
    }
    return Outcome{worst <= 1e-10, "max gap " + sci(worst)};
  });

  std::printf("%d criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
