#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "harmonia/algebra.hpp"
#include "harmonia/error.hpp"
#include "harmonia/hulls.hpp"
#include "harmonia/json_io.hpp"
#include "harmonia/line.hpp"
#include "harmonia/polynomial.hpp"
#include "harmonia/seq_spaces.hpp"
#include "harmonia/torus.hpp"

using namespace harmonia;
using io::fmt;
using io::json;

namespace {

const char* kSchemas = R"(Input schemas (JSON; complex numbers are {"re": x, "im": y}, a bare number, or [re, im]):
  sequence      {"entries": [{re, im}, ...]}            (seq ops also accept CSV: "re" or "re,im" per line)
  polynomial    {"dim": n, "terms": [{"alpha": [..], re, im}, ...]}
  torus fn      {"dim": n, "N": N, "values": [{re, im}, ...]}   row-major, N even >= 4
  coeff table   {"dim": n, "K": K, "coeffs": [{"alpha": [..], re, im}, ...]}
  line fn       {"dim": n, "L": L, "M": M, "decay": "compact"|"exponential", "values": [...]}
  closed form   {"factors": [{"kind": "q_plus"|"q_minus"|"p_a", "a": a} | {"kind": "indicator", "a": a, "b": b}]}
  line measure  {"dim": n, "atoms": [{"u": [..], re, im}, ...]}
  matrix        {"d": d, "entries": [{re, im}, ...]}    row-major
  point cloud   {"d": d, "points": [[..], ...]}
  sample        {"n": n, "points": [[{re, im}, ...], ...], "flags": {"completely_circular": true}}
  certificate   {"kind": ..., fields of the certificate, optional "z" or "x"}
Point-valued flags (--z, --xi, --alpha, ...) take inline JSON arrays, e.g. --z '[0.5, [0, 0.2]]'.
Exit status: 0 ok, 2 parse error, 3 precondition violated, 4 certificate rejected, 5 no convergence.)";

json inline_json(const std::string& text) {
  auto j = io::parse_json(text);
  if (!j.is_array()) j = json::array({j});
  return j;
}

std::vector<Complex> complex_flag(const std::string& s) { return io::complex_list_from_json(inline_json(s)); }
std::vector<double> real_flag(const std::string& s) { return io::real_list_from_json(inline_json(s)); }
std::vector<int> int_flag(const std::string& s) {
  std::vector<int> out;
  for (const auto& x : inline_json(s)) {
    if (!x.is_number_integer()) throw ParseError("expected integers in '" + s + "'");
    out.push_back(x.get<int>());
  }
  return out;
}
MultiIndex alpha_flag(const std::string& s) {
  auto v = int_flag(s);
  std::vector<long long> w(v.begin(), v.end());
  try {
    return MultiIndex::from_signed(w);
  } catch (const PreconditionError& e) {
    throw ParseError(e.what());
  }
}

seq::Exponent exponent_flag(const std::string& s) {
  if (s == "inf" || s == "infinity") return seq::Exponent::infinity();
  try {
    std::size_t used = 0;
    double p = std::stod(s, &used);
    if (used != s.size()) throw ParseError("bad exponent '" + s + "'");
    return seq::Exponent(p);
  } catch (const std::logic_error&) {
    throw ParseError("bad exponent '" + s + "'");
  }
}

json complex_json(Complex c) { return io::to_json(c); }

struct Flags {
  std::string in, in2, coeffs, closed, measure, mu, nu, points, sample, cert, out;
  std::string p = "2";
  std::string z = "[0]", xi = "[0]", zeta = "[0]", eps, alpha = "[0]", a = "[1]", w = "[0]",
              x = "[0]", R = "[0, 1, 2, 4, 8, 16, 32]", exterior, op = "ft";
  int band = -1, j = 0;
  double r = 0.5, tol = 1e-9, tail_tol = 1e-7, X = 1e5, b = 0.5, rmax = 2.0;
  double neumann_tol = 1e-12;
  unsigned max_power = 256, n = 6, degree = 20, d = 4;
  std::size_t grid = 2000, M = 200000, rays = 401, samples = 16, N = 4096, K = 8;
  std::uint64_t seed = 0;
  double pa = 1.0;
  std::string Xs = "[10, 100, 1000, 10000]", radii = "[0.5, 0.75, 0.9, 0.95, 0.99, 0.995]";
  std::size_t hull_grid = 21;
  bool mass = false, exp_witness = false;
};

std::string csv_header(std::initializer_list<const char*> cols) {
  std::string s;
  for (auto c : cols) s += (s.empty() ? "" : ",") + std::string(c);
  return s + "\n";
}

void seq_commands(CLI::App& app, Flags& f, std::function<std::string()>& run) {
  auto* seq = app.add_subcommand("seq", "finite sequence spaces");
  seq->require_subcommand(1);
  auto* norm = seq->add_subcommand("norm", "||f||_p");
  norm->add_option("--in", f.in, "sequence (JSON or CSV)")->required();
  norm->add_option("--p", f.p, "exponent, a positive number or inf")->capture_default_str();
  norm->callback([&] {
    run = [&] { return fmt(seq::lp_norm(io::read_seq_file(f.in), exponent_flag(f.p))) + "\n"; };
  });
  auto* dual = seq->add_subcommand("dual", "dual norm of f -> <f, g> on l^p with an extremizer");
  dual->add_option("--in", f.in, "sequence g")->required();
  dual->add_option("--p", f.p, "exponent p >= 1 or inf")->capture_default_str();
  dual->callback([&] {
    run = [&] {
      auto r = seq::dual_norm(io::read_seq_file(f.in), exponent_flag(f.p));
      json j{{"value", r.value}, {"extremizer", io::to_json(r.extremizer)}};
      return io::dump(j) + "\n";
    };
  });
  for (const char* name : {"pair", "inner"}) {
    bool inner = std::string(name) == "inner";
    auto* c = seq->add_subcommand(name, inner ? "sum f conj(g)" : "sum f g");
    c->add_option("--f", f.in, "sequence f")->required();
    c->add_option("--g", f.in2, "sequence g")->required();
    c->callback([&, inner] {
      run = [&, inner] {
        auto a = io::read_seq_file(f.in), b = io::read_seq_file(f.in2);
        return io::dump(complex_json(inner ? seq::inner_product(a, b) : seq::pairing(a, b))) + "\n";
      };
    });
  }
  auto* conj = seq->add_subcommand("conj", "conjugate exponent");
  conj->add_option("--p", f.p, "exponent p >= 1 or inf")->capture_default_str();
  conj->callback([&] {
    run = [&] { return seq::conjugate_exponent(exponent_flag(f.p)).to_string() + "\n"; };
  });
}

void poly_commands(CLI::App& app, Flags& f, std::function<std::string()>& run) {
  auto* poly = app.add_subcommand("poly", "sparse polynomials on C^n");
  poly->require_subcommand(1);
  auto* mul = poly->add_subcommand("mul", "product p q");
  mul->add_option("--p", f.in, "polynomial")->required();
  mul->add_option("--q", f.in2, "polynomial")->required();
  mul->callback([&] {
    run = [&] {
      auto p = io::polynomial_from_json(io::read_json_file(f.in));
      auto q = io::polynomial_from_json(io::read_json_file(f.in2));
      return io::dump(io::to_json(poly_mul(p, q))) + "\n";
    };
  });
  auto* deriv = poly->add_subcommand("deriv", "d^alpha p");
  deriv->add_option("--p", f.in, "polynomial")->required();
  deriv->add_option("--alpha", f.alpha, "multi-index, e.g. [2,1]")->required();
  deriv->callback([&] {
    run = [&] {
      auto p = io::polynomial_from_json(io::read_json_file(f.in));
      return io::dump(io::to_json(poly_derivative(p, alpha_flag(f.alpha)))) + "\n";
    };
  });
  auto* leib = poly->add_subcommand("leibniz", "Leibniz expansion of d^alpha (p q)");
  leib->add_option("--p", f.in, "polynomial")->required();
  leib->add_option("--q", f.in2, "polynomial")->required();
  leib->add_option("--alpha", f.alpha, "multi-index")->required();
  leib->callback([&] {
    run = [&] {
      auto p = io::polynomial_from_json(io::read_json_file(f.in));
      auto q = io::polynomial_from_json(io::read_json_file(f.in2));
      auto alpha = alpha_flag(f.alpha);
      auto lhs = poly_derivative(poly_mul(p, q), alpha);
      auto rhs = leibniz_expand(p, q, alpha);
      double diff = 0.0;
      for (const auto& [beta, c] : (lhs - rhs).terms()) diff = std::max(diff, std::abs(c));
      json j{{"expansion", io::to_json(rhs)}, {"max_difference_from_direct", diff}};
      return io::dump(j) + "\n";
    };
  });
  auto* ev = poly->add_subcommand("eval", "p(z)");
  ev->add_option("--p", f.in, "polynomial")->required();
  ev->add_option("--z", f.z, "point of C^n")->required();
  ev->callback([&] {
    run = [&] {
      auto p = io::polynomial_from_json(io::read_json_file(f.in));
      return io::dump(complex_json(poly_eval(p, complex_flag(f.z)))) + "\n";
    };
  });
}

void torus_commands(CLI::App& app, Flags& f, std::function<std::string()>& run) {
  auto* torus = app.add_subcommand("torus", "Fourier analysis on T^n");
  torus->require_subcommand(1);
  auto* an = torus->add_subcommand("analyze", "Fourier coefficients of grid samples");
  an->add_option("--in", f.in, "torus function")->required();
  an->add_option("--band", f.band, "K (default: N/2 - 1)")->capture_default_str();
  an->callback([&] {
    run = [&] {
      auto fn = io::torus_function_from_json(io::read_json_file(f.in));
      return io::dump(io::to_json(torus::analyze(fn, f.band))) + "\n";
    };
  });
  auto* syn = torus->add_subcommand("synth", "sum c(alpha) z~^alpha in the closed polydisk");
  syn->add_option("--coeffs", f.coeffs, "coefficient table")->required();
  syn->add_option("--z", f.z, "point")->required();
  syn->callback([&] {
    run = [&] {
      auto c = io::coeff_table_from_json(io::read_json_file(f.coeffs));
      return io::dump(complex_json(torus::synthesize(c, complex_flag(f.z)))) + "\n";
    };
  });
  auto* conv = torus->add_subcommand("conv", "grid convolution f * g");
  conv->add_option("--f", f.in, "torus function")->required();
  conv->add_option("--g", f.in2, "torus function")->required();
  conv->callback([&] {
    run = [&] {
      auto a = io::torus_function_from_json(io::read_json_file(f.in));
      auto b = io::torus_function_from_json(io::read_json_file(f.in2));
      return io::dump(io::to_json(torus::convolve_torus(a, b))) + "\n";
    };
  });
  auto* poi = torus->add_subcommand("poisson", "Poisson extension: kernel quadrature vs series");
  poi->add_option("--in", f.in, "torus function")->required();
  poi->add_option("--z", f.z, "point of the open polydisk")->required();
  poi->callback([&] {
    run = [&] {
      auto fn = io::torus_function_from_json(io::read_json_file(f.in));
      auto z = complex_flag(f.z);
      auto c = torus::analyze(fn);
      auto kernel = torus::poisson_extend(fn, z);
      auto series = torus::synthesize(c, z);
      json j{{"kernel", complex_json(kernel)},
             {"series", complex_json(series)},
             {"difference", std::abs(kernel - series)},
             {"alias_bound", torus::poisson_alias_bound(c, fn.grid().n(), z)}};
      return io::dump(j) + "\n";
    };
  });
  auto* par = torus->add_subcommand("parseval", "sum |f^|^2 and the energy integral");
  par->add_option("--in", f.in, "torus function")->required();
  par->callback([&] {
    run = [&] {
      auto p = torus::parseval(io::torus_function_from_json(io::read_json_file(f.in)));
      return csv_header({"sum_of_squares", "energy_integral"}) + fmt(p.sum_of_squares) + "," +
             fmt(p.energy_integral) + "\n";
    };
  });
  auto* lau = torus->add_subcommand("laurent", "Laurent coefficient from circle samples");
  lau->add_option("--in", f.in, "samples f(r e^{2 pi i k/N}) as a sequence")->required();
  lau->add_option("--r", f.r, "circle radius")->capture_default_str();
  lau->add_option("--j", f.j, "coefficient index")->capture_default_str();
  lau->callback([&] {
    run = [&] {
      auto s = io::read_seq_file(f.in);
      json j{{"coefficient", complex_json(torus::laurent_coeff(s.entries(), f.r, f.j))},
             {"bound", torus::laurent_coeff_bound(s.entries(), f.r, f.j)}};
      return io::dump(j) + "\n";
    };
  });
}

std::string profile_csv(const line::RLProfile& p) {
  std::string s = csv_header({"R", "sup"});
  for (auto [R, v] : p.points) s += fmt(R) + "," + fmt(v) + "\n";
  s += std::string("# decaying=") + (p.decaying ? "true" : "false") + "\n";
  return s;
}

void line_commands(CLI::App& app, Flags& f, std::function<std::string()>& run) {
  auto* ln = app.add_subcommand("line", "Fourier analysis on R^n");
  ln->require_subcommand(1);
  auto* ft = ln->add_subcommand("ft", "Fourier transform of samples or of a closed form");
  auto* in_opt = ft->add_option("--in", f.in, "line function (trapezoid transform at real --xi)");
  auto* cf_opt = ft->add_option("--closed", f.closed, "closed form (exact transform at --zeta)");
  in_opt->excludes(cf_opt);
  ft->add_option("--xi", f.xi, "real frequency")->capture_default_str();
  ft->add_option("--zeta", f.zeta, "complex frequency for closed forms")->capture_default_str();
  ft->callback([&] {
    run = [&] {
      if (!f.closed.empty()) {
        auto g = io::closed_form_from_json(io::read_json_file(f.closed));
        return io::dump(complex_json(line::ft_closed_form(g, complex_flag(f.zeta)))) + "\n";
      }
      if (f.in.empty()) throw ParseError("line ft needs --in or --closed");
      auto fn = io::line_function_from_json(io::read_json_file(f.in));
      return io::dump(complex_json(line::ft_quadrature(fn, real_flag(f.xi)))) + "\n";
    };
  });
  auto* conv = ln->add_subcommand("conv", "discrete convolution f * g");
  conv->add_option("--f", f.in, "line function")->required();
  conv->add_option("--g", f.in2, "line function")->required();
  conv->callback([&] {
    run = [&] {
      auto a = io::line_function_from_json(io::read_json_file(f.in));
      auto b = io::line_function_from_json(io::read_json_file(f.in2));
      return io::dump(io::to_json(line::convolve_line(a, b))) + "\n";
    };
  });
  auto* poi = ln->add_subcommand("poisson", "Poisson kernel P_a(x), or its mass check with --mass");
  poi->add_option("--a", f.a, "scales a_j > 0")->capture_default_str();
  poi->add_option("--x", f.x, "point")->capture_default_str();
  poi->add_flag("--mass", f.mass, "report quadrature + tail mass over [-X, X]^n");
  poi->add_option("--X", f.X, "box half-width")->capture_default_str();
  poi->add_option("--M", f.M, "trapezoid intervals per axis")->capture_default_str();
  poi->callback([&] {
    run = [&] {
      auto a = real_flag(f.a);
      if (!f.mass) return fmt(line::poisson_Rn(a, real_flag(f.x))) + "\n";
      auto m = line::poisson_Rn_mass(a, f.X, f.M);
      json j{{"quadrature", m.quadrature}, {"tail", m.tail}, {"total", m.total}};
      return io::dump(j) + "\n";
    };
  });
  auto* inv = ln->add_subcommand("invert", "Poisson-regularized inversion at w");
  inv->add_option("--in", f.in, "line function")->required();
  inv->add_option("--a", f.a, "scales a_j > 0")->capture_default_str();
  inv->add_option("--w", f.w, "point")->capture_default_str();
  inv->add_option("--tail-tol", f.tail_tol, "tail tolerance for the frequency box")
      ->capture_default_str();
  inv->callback([&] {
    run = [&] {
      auto fn = io::line_function_from_json(io::read_json_file(f.in));
      auto r = line::inversion_check(fn, real_flag(f.a), real_flag(f.w), f.tail_tol);
      json j{{"lhs", complex_json(r.lhs)},
             {"rhs", complex_json(r.rhs)},
             {"difference", std::abs(r.lhs - r.rhs)},
             {"tail_bound", r.tail_bound},
             {"box", r.box}};
      return io::dump(j) + "\n";
    };
  });
  auto* rl = ln->add_subcommand("rl-profile", "R -> sup_{|xi| >= R} |g^(xi)|");
  auto* o1 = rl->add_option("--in", f.in, "line function (one-dimensional)");
  auto* o2 = rl->add_option("--closed", f.closed, "closed form");
  auto* o3 = rl->add_option("--measure", f.measure, "atomic measure (one-dimensional)");
  o1->excludes(o2)->excludes(o3);
  o2->excludes(o3);
  rl->add_option("--R", f.R, "radii")->capture_default_str();
  rl->callback([&] {
    run = [&] {
      auto R = real_flag(f.R);
      if (!f.closed.empty())
        return profile_csv(line::riemann_lebesgue_profile(
            io::closed_form_from_json(io::read_json_file(f.closed)), R));
      if (!f.measure.empty())
        return profile_csv(line::riemann_lebesgue_profile(
            io::line_measure_from_json(io::read_json_file(f.measure)), R));
      if (f.in.empty()) throw ParseError("rl-profile needs --in, --closed or --measure");
      return profile_csv(line::riemann_lebesgue_profile(
          io::line_function_from_json(io::read_json_file(f.in)), R));
    };
  });
  auto* ms = ln->add_subcommand("measure", "atomic measures: ft, conv, tv");
  ms->add_option("--mu", f.mu, "measure")->required();
  ms->add_option("--nu", f.nu, "second measure (conv)");
  ms->add_option("--op", f.op, "ft | conv | tv")->capture_default_str();
  ms->add_option("--zeta", f.zeta, "frequency (ft)")->capture_default_str();
  ms->add_option("--eps", f.eps, "signature of the half-planes, e.g. [1,-1] (default all +1)");
  ms->callback([&] {
    run = [&]() -> std::string {
      auto mu = io::line_measure_from_json(io::read_json_file(f.mu));
      if (f.op == "tv") return fmt(mu.total_variation()) + "\n";
      if (f.op == "conv") {
        if (f.nu.empty()) throw ParseError("measure conv needs --nu");
        auto nu = io::line_measure_from_json(io::read_json_file(f.nu));
        return io::dump(io::to_json(line::measure_convolve(mu, nu))) + "\n";
      }
      if (f.op != "ft") throw ParseError("unknown measure op '" + f.op + "'");
      auto zeta = complex_flag(f.zeta);
      auto eps = f.eps.empty() ? std::vector<int>(zeta.size(), 1) : int_flag(f.eps);
      return io::dump(complex_json(line::measure_ft(mu, line::HalfPlanePoint(zeta, eps)))) + "\n";
    };
  });
}

alg::Element read_matrix(const std::string& path) {
  return alg::Element::matrix(io::matrix_from_json(io::read_json_file(path)));
}

void alg_commands(CLI::App& app, Flags& f, std::function<std::string()>& run) {
  auto* alg = app.add_subcommand("alg", "Banach algebra computations on matrices");
  alg->require_subcommand(1);
  auto* nm = alg->add_subcommand("norm", "operator norm");
  nm->add_option("--in", f.in, "matrix")->required();
  nm->callback([&] {
    run = [&] {
      auto r = alg::alg_norm(read_matrix(f.in));
      json j{{"value", r.value},
             {"method", r.method == alg::NormMethod::Exact ? "exact" : "power_iteration"},
             {"iterations", r.iterations},
             {"tolerance", r.tolerance}};
      return io::dump(j) + "\n";
    };
  });
  auto* inv = alg->add_subcommand("invert", "(e - a)^{-1} by the Neumann series");
  inv->add_option("--in", f.in, "matrix a")->required();
  inv->add_option("--b-inv", f.in2, "matrix b^{-1}: invert b - a instead");
  inv->add_option("--tol", f.neumann_tol, "residual tolerance")->capture_default_str();
  inv->callback([&] {
    run = [&] {
      auto a = read_matrix(f.in);
      auto r = f.in2.empty() ? alg::neumann_inverse(a, f.neumann_tol)
                             : alg::invert_perturbed(read_matrix(f.in2), a, f.neumann_tol);
      json j{{"inverse", io::matrix_to_json(r.inverse.mat())},
             {"bound", r.bound},
             {"terms", r.terms},
             {"residual", r.residual}};
      return io::dump(j) + "\n";
    };
  });
  auto* sr = alg->add_subcommand("specrad", "Gelfand sequence ||x^n||^{1/n}");
  sr->add_option("--in", f.in, "matrix")->required();
  sr->add_option("--max-power", f.max_power, "largest n")->capture_default_str();
  sr->callback([&] {
    run = [&] {
      auto x = read_matrix(f.in);
      auto r = alg::spectral_radius(x, f.max_power);
      json seqj = json::array();
      for (auto [n, v] : r.sequence) seqj.push_back(json{{"n", n}, {"value", v}});
      json j{{"estimate", r.estimate}, {"sequence", seqj}};
      if (x.size() <= 8) j["eigenvalue_radius"] = alg::spectral_radius_eig(x);
      return io::dump(j) + "\n";
    };
  });
  auto* vol = alg->add_subcommand("volterra", "sup-norm of T^n for the discretized Volterra operator");
  vol->add_option("--n", f.n, "power")->capture_default_str();
  vol->add_option("--grid", f.grid, "grid points M")->capture_default_str();
  vol->callback([&] { run = [&] { return fmt(alg::volterra_power_norm(f.n, f.grid)) + "\n"; }; });
  auto* cs = alg->add_subcommand("cstar", "C* identity and normality checks");
  cs->add_option("--in", f.in, "matrix")->required();
  cs->callback([&] {
    run = [&] {
      auto r = alg::cstar_checks(read_matrix(f.in));
      json pw = json::array();
      for (auto [l, v] : r.power_norms) pw.push_back(json{{"l", l}, {"norm", v}});
      json j{{"norm", r.norm},
             {"adjoint_norm", r.adjoint_norm},
             {"star_product_norm", r.star_product_norm},
             {"commutator_norm", r.commutator_norm},
             {"normal", r.normal},
             {"power_norms", pw},
             {"power_identity", r.power_identity}};
      return io::dump(j) + "\n";
    };
  });
}

void hull_commands(CLI::App& app, Flags& f, std::function<std::string()>& run) {
  auto* hull = app.add_subcommand("hull", "convex and polynomial hulls with certificates");
  hull->require_subcommand(1);
  auto* cv = hull->add_subcommand("convex", "x in Con(S)?");
  cv->add_option("--points", f.points, "point cloud")->required();
  cv->add_option("--x", f.x, "query point")->required();
  cv->add_option("--tol", f.tol, "tolerance")->capture_default_str();
  cv->callback([&] {
    run = [&] {
      auto S = io::point_cloud_from_json(io::read_json_file(f.points));
      auto x = real_flag(f.x);
      auto c = hull::convex_membership(x, S, f.tol);
      auto j = io::to_json(c);
      j["x"] = x;
      return io::dump(j) + "\n";
    };
  });
  auto* pol = hull->add_subcommand("pol", "z in Pol(E)? (or an exponential witness with --exp)");
  pol->add_option("--sample", f.sample, "sample of E")->required();
  pol->add_option("--z", f.z, "query point")->required();
  pol->add_option("--tol", f.tol, "tolerance")->capture_default_str();
  pol->add_flag("--exp", f.exp_witness, "separate z from Con(E) by 1 + t mu(w)");
  pol->callback([&] {
    run = [&] {
      auto E = io::circular_sample_from_json(io::read_json_file(f.sample));
      auto z = complex_flag(f.z);
      auto c = f.exp_witness ? hull::exp_certificate(z, E, f.tol)
                             : hull::poly_hull_membership(z, E, f.tol);
      auto j = io::to_json(c);
      json zj = json::array();
      for (auto v : z) zj.push_back(complex_json(v));
      j["z"] = zj;
      return io::dump(j) + "\n";
    };
  });
  auto* eb = hull->add_subcommand("eb", "bounded/unbounded dichotomy for E(b) = {|z1|^b |z2| <= 1}");
  eb->add_option("--b", f.b, "b > 0")->capture_default_str();
  eb->add_option("--degree", f.degree, "degree cap D")->capture_default_str();
  eb->add_option("--rays", f.rays, "ray samples")->capture_default_str();
  eb->add_option("--exterior", f.exterior, "exterior point to certify");
  eb->callback([&] {
    run = [&] {
      std::optional<hull::CVec> ext;
      if (!f.exterior.empty()) ext = complex_flag(f.exterior);
      auto r = hull::eb_dichotomy(f.b, f.degree, f.rays, ext);
      json j{{"b", r.b}, {"rational", r.rational}};
      if (r.bounded) {
        j["bounded"] = r.bounded->exponents();
        j["bounded_sup"] = r.bounded_sup;
      }
      json un = json::array();
      for (const auto& w : r.unbounded)
        un.push_back(json{{"alpha", w.alpha.exponents()},
                          {"log_point", w.log_point},
                          {"log_modulus", w.log_modulus}});
      j["unbounded"] = un;
      if (r.exterior) j["exterior"] = io::to_json(hull::HullCertificate{*r.exterior});
      return io::dump(j) + "\n";
    };
  });
  auto* chk = hull->add_subcommand("check-cert", "re-verify a certificate against a sample");
  chk->add_option("cert", f.cert, "certificate JSON")->required();
  chk->add_option("sample", f.sample, "sample (n, points) or point cloud (d, points)")->required();
  chk->add_option("--tol", f.tol, "tolerance")->capture_default_str();
  chk->callback([&] {
    run = [&] {
      auto cj = io::read_json_file(f.cert);
      auto sj = io::read_json_file(f.sample);
      auto c = io::certificate_from_json(cj);
      bool ok = false;
      if (sj.contains("n")) {
        if (!cj.contains("z")) throw ParseError("certificate lacks the query point 'z'");
        auto z = io::complex_list_from_json(cj["z"]);
        ok = hull::verify_poly(c, z, io::circular_sample_from_json(sj), f.tol);
      } else {
        if (!cj.contains("x")) throw ParseError("certificate lacks the query point 'x'");
        auto x = io::real_list_from_json(cj["x"]);
        ok = hull::verify_convex(c, x, io::point_cloud_from_json(sj));
      }
      if (!ok) throw CertificateError("certificate rejected: " + hull::kind_name(c));
      return std::string("verified ") + hull::kind_name(c) + "\n";
    };
  });
}

void demo_commands(CLI::App& app, Flags& f, std::function<std::string()>& run) {
  auto* demo = app.add_subcommand("demo", "tables and plot data (CSV)");
  demo->require_subcommand(1);

  auto* vol = demo->add_subcommand("volterra", "sigma(n) = ||T^n|| against 1/n!");
  vol->add_option("--n", f.n, "largest power")->capture_default_str();
  vol->add_option("--grid", f.grid, "grid points M")->capture_default_str();
  vol->callback([&] {
    run = [&] {
      std::string s = csv_header({"n", "sigma", "inv_factorial", "rel_error"});
      double fact = 1.0;
      for (unsigned k = 1; k <= f.n; ++k) {
        fact *= k;
        double sigma = alg::volterra_power_norm(k, f.grid);
        s += std::to_string(k) + "," + fmt(sigma) + "," + fmt(1.0 / fact) + "," +
             fmt(std::abs(sigma * fact - 1.0)) + "\n";
      }
      return s;
    };
  });

  auto* pint = demo->add_subcommand("p-integral", "int p_a^ dxi = 2 pi: trapezoid plus analytic tail");
  pint->add_option("--a", f.pa, "a > 0")->capture_default_str();
  pint->add_option("--M", f.M, "trapezoid intervals")->capture_default_str();
  pint->add_option("--X", f.Xs, "box half-widths")->capture_default_str();
  pint->callback([&] {
    run = [&] {
      std::string s = csv_header({"X", "quadrature", "tail", "total", "error"});
      for (double X : real_flag(f.Xs)) {
        auto m = line::pa_hat_integral(f.pa, X, f.M);
        s += fmt(X) + "," + fmt(m.quadrature) + "," + fmt(m.tail) + "," + fmt(m.total) + "," +
             fmt(std::abs(m.total - kTwoPi)) + "\n";
      }
      return s;
    };
  });

  auto* pt = demo->add_subcommand("pol-torus", "Pol(T^2) on a modulus grid");
  pt->add_option("--grid", f.hull_grid, "grid points per axis")->capture_default_str();
  pt->add_option("--rmax", f.rmax, "largest modulus")->capture_default_str();
  pt->add_option("--samples", f.samples, "torus samples per axis")->capture_default_str();
  pt->add_option("--tol", f.tol, "tolerance")->capture_default_str();
  pt->callback([&] {
    run = [&] {
      std::vector<hull::CVec> pts;
      for (std::size_t a = 0; a < f.samples; ++a)
        for (std::size_t b = 0; b < f.samples; ++b)
          pts.push_back({unit_phase(double(a) / double(f.samples)),
                         unit_phase(double(b) / double(f.samples))});
      hull::CircularSample E(2, pts);
      std::string s = csv_header({"r1", "r2", "inside", "certificate", "verified"});
      for (std::size_t i = 0; i < f.hull_grid; ++i)
        for (std::size_t k = 0; k < f.hull_grid; ++k) {
          double r1 = f.rmax * double(i) / double(f.hull_grid - 1);
          double r2 = f.rmax * double(k) / double(f.hull_grid - 1);
          std::vector<Complex> z{r1, Complex(0.0, r2)};
          auto c = hull::poly_hull_membership(z, E, f.tol);
          s += fmt(r1) + "," + fmt(r2) + "," + (hull::is_inside(c) ? "1" : "0") + "," +
               hull::kind_name(c) + "," + (hull::verify_poly(c, z, E, f.tol) ? "1" : "0") + "\n";
        }
      return s;
    };
  });

  auto* eb = demo->add_subcommand("eb", "E(b) dichotomy report");
  eb->add_option("--b", f.b, "b > 0")->capture_default_str();
  eb->add_option("--degree", f.degree, "degree cap D")->capture_default_str();
  eb->add_option("--rays", f.rays, "ray samples")->capture_default_str();
  eb->callback([&] {
    run = [&] {
      auto r = hull::eb_dichotomy(f.b, f.degree, f.rays);
      std::string s = csv_header({"kind", "alpha1", "alpha2", "log_s", "log_t", "value"});
      if (r.bounded)
        s += "bounded," + std::to_string((*r.bounded)[0]) + "," + std::to_string((*r.bounded)[1]) +
             ",,," + fmt(r.bounded_sup) + "\n";
      for (const auto& w : r.unbounded)
        s += "unbounded," + std::to_string(w.alpha[0]) + "," + std::to_string(w.alpha[1]) + "," +
             fmt(w.log_point[0]) + "," + fmt(w.log_point[1]) + "," + fmt(w.log_modulus) + "\n";
      return s;
    };
  });

  auto* pr = demo->add_subcommand("poisson-radial", "Poisson extension at r z0 as r -> 1");
  pr->add_option("--N", f.N, "samples on T")->capture_default_str();
  pr->add_option("--K", f.K, "band of the random trigonometric polynomial")->capture_default_str();
  pr->add_option("--seed", f.seed, "random seed")->capture_default_str();
  pr->add_option("--r", f.radii, "radii")->capture_default_str();
  pr->callback([&] {
    run = [&] {
      std::mt19937_64 rng(f.seed);
      std::uniform_real_distribution<double> u(-1.0, 1.0);
      int K = static_cast<int>(f.K);
      torus::CoeffTable c(1, K);
      for (std::size_t k = 0; k < c.size(); ++k) c[k] = Complex(u(rng), u(rng));
      torus::TorusGrid grid(1, f.N);
      auto fn = torus::TorusFunction::sample(
          grid, [&](const torus::Point& w) { return torus::synthesize(c, w); });
      Complex z0 = unit_phase(0.1);
      std::vector<Complex> zb{z0};
      Complex target = torus::synthesize(c, zb);
      std::string s = csv_header({"r", "re", "im", "target_re", "target_im", "error", "alias_bound"});
      for (double r : real_flag(f.radii)) {
        std::vector<Complex> z{r * z0};
        auto v = torus::poisson_extend(fn, z);
        s += fmt(r) + "," + fmt(v.real()) + "," + fmt(v.imag()) + "," + fmt(target.real()) + "," +
             fmt(target.imag()) + "," + fmt(std::abs(v - target)) + "," +
             fmt(torus::poisson_alias_bound(c, f.N, z)) + "\n";
      }
      return s;
    };
  });

  auto* gf = demo->add_subcommand("gelfand", "||x^n||^{1/n} against max |eigenvalue|");
  gf->add_option("--d", f.d, "matrix size (<= 8)")->capture_default_str();
  gf->add_option("--seed", f.seed, "random seed")->capture_default_str();
  gf->add_option("--max-power", f.max_power, "largest n")->capture_default_str();
  gf->callback([&] {
    run = [&] {
      std::mt19937_64 rng(f.seed);
      std::uniform_real_distribution<double> u(-1.0, 1.0);
      alg::Matrix m(f.d, f.d);
      for (unsigned r = 0; r < f.d; ++r)
        for (unsigned c = 0; c < f.d; ++c) m(r, c) = Complex(u(rng), u(rng));
      auto x = alg::Element::matrix(m);
      auto sr = alg::spectral_radius(x, f.max_power);
      double eig = alg::spectral_radius_eig(x);
      std::string s = csv_header({"n", "value", "eigenvalue_radius"});
      for (auto [n, v] : sr.sequence) s += std::to_string(n) + "," + fmt(v) + "," + fmt(eig) + "\n";
      return s;
    };
  });
}

int exit_code(const std::exception& e) {
  if (dynamic_cast<const ParseError*>(&e)) return 2;
  if (dynamic_cast<const CertificateError*>(&e)) return 4;
  if (dynamic_cast<const ConvergenceError*>(&e)) return 5;
  return 3;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"harmonia: harmonic analysis toolkit", "harmonia"};
  app.footer(kSchemas);
  app.require_subcommand(1);
  Flags f;
  std::function<std::string()> run;
  app.add_option("--out", f.out, "write the result to a file instead of stdout");
  seq_commands(app, f, run);
  poly_commands(app, f, run);
  torus_commands(app, f, run);
  line_commands(app, f, run);
  alg_commands(app, f, run);
  hull_commands(app, f, run);
  demo_commands(app, f, run);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    std::string text = run();
    if (f.out.empty()) {
      std::cout << text;
    } else {
      std::ofstream o(f.out);
      if (!o) throw ParseError("cannot write " + f.out);
      o << text;
    }
  } catch (const Error& e) {
    std::cerr << "harmonia: " << e.what() << "\n";
    return exit_code(e);
  } catch (const std::exception& e) {
    std::cerr << "harmonia: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
