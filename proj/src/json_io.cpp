#include "harmonia/json_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include "harmonia/error.hpp"

namespace harmonia::io {
namespace {

const json& field(const json& j, const char* key) {
  if (!j.is_object()) throw ParseError(std::string("expected an object with field '") + key + "'");
  auto it = j.find(key);
  if (it == j.end()) throw ParseError(std::string("missing field '") + key + "'");
  return *it;
}

double number(const json& j, const char* what) {
  if (j.is_null()) return std::numeric_limits<double>::quiet_NaN();
  if (!j.is_number()) throw ParseError(std::string("expected a number for ") + what);
  return j.get<double>();
}

std::size_t count(const json& j, const char* what) {
  if (!j.is_number_integer() && !j.is_number_unsigned())
    throw ParseError(std::string("expected an integer for ") + what);
  auto v = j.get<long long>();
  if (v < 0) throw ParseError(std::string("negative ") + what);
  return static_cast<std::size_t>(v);
}

const json& array(const json& j, const char* what) {
  if (!j.is_array()) throw ParseError(std::string("expected an array for ") + what);
  return j;
}

// Infinite logs are written as strings so the document stays valid JSON.
json extended(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (std::isnan(x)) return "nan";
  return x;
}

double extended_from(const json& j) {
  if (j.is_string()) {
    auto s = j.get<std::string>();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
    throw ParseError("bad extended number '" + s + "'");
  }
  return number(j, "extended number");
}

json multi_index_json(const MultiIndex& a) { return a.exponents(); }

MultiIndex multi_index_from(const json& j) {
  std::vector<unsigned> e;
  for (const auto& x : array(j, "alpha")) {
    if (!x.is_number_integer() && !x.is_number_unsigned()) throw ParseError("alpha entries must be integers");
    auto v = x.get<long long>();
    if (v < 0) throw ParseError("alpha entries must be nonnegative");
    e.push_back(static_cast<unsigned>(v));
  }
  return MultiIndex(std::move(e));
}

std::vector<Complex> values_from(const json& j) { return complex_list_from_json(j); }

json values_json(std::span<const Complex> v) {
  json out = json::array();
  for (auto c : v) out.push_back(to_json(c));
  return out;
}

template <class F>
auto guarded(F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const json::exception& e) {
    throw ParseError(e.what());
  }
}

}  // namespace

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_json(ss.str());
}

json to_json(Complex c) { return json{{"re", c.real()}, {"im", c.imag()}}; }

Complex complex_from_json(const json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2) return {number(j[0], "re"), number(j[1], "im")};
  double im = 0.0;
  if (j.is_object() && j.contains("im")) im = number(j["im"], "im");
  return {number(field(j, "re"), "re"), im};
}

std::vector<Complex> complex_list_from_json(const json& j) {
  std::vector<Complex> out;
  for (const auto& x : array(j, "complex list")) out.push_back(complex_from_json(x));
  return out;
}

std::vector<double> real_list_from_json(const json& j) {
  std::vector<double> out;
  for (const auto& x : array(j, "real list")) out.push_back(number(x, "real entry"));
  return out;
}

json to_json(const Polynomial& p) {
  json terms = json::array();
  for (const auto& [alpha, c] : p.terms())
    terms.push_back(json{{"alpha", multi_index_json(alpha)}, {"re", c.real()}, {"im", c.imag()}});
  return json{{"dim", p.dim()}, {"terms", terms}};
}

Polynomial polynomial_from_json(const json& j) {
  return guarded([&] {
    auto dim = count(field(j, "dim"), "dim");
    Polynomial::Terms terms;
    for (const auto& t : array(field(j, "terms"), "terms")) {
      auto alpha = multi_index_from(field(t, "alpha"));
      if (alpha.size() != dim) throw ParseError("term alpha has wrong length");
      terms[alpha] += complex_from_json(t);
    }
    return Polynomial(dim, std::move(terms));
  });
}

json to_json(const seq::SeqVector& v) { return json{{"entries", values_json(v.entries())}}; }

seq::SeqVector seq_from_json(const json& j) {
  return guarded([&] {
    auto e = values_from(field(j, "entries"));
    if (e.empty()) throw ParseError("empty sequence");
    return seq::SeqVector(std::move(e));
  });
}

seq::SeqVector seq_from_csv(const std::string& text) {
  std::vector<Complex> e;
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    double re = 0.0, im = 0.0;
    char extra = 0;
    auto comma = line.find(',');
    int got = comma == std::string::npos
                  ? std::sscanf(line.c_str(), " %lf %c", &re, &extra)
                  : std::sscanf(line.c_str(), " %lf , %lf %c", &re, &im, &extra);
    int want = comma == std::string::npos ? 1 : 2;
    if (got != want) throw ParseError("bad CSV line " + std::to_string(lineno));
    e.emplace_back(re, im);
  }
  if (e.empty()) throw ParseError("empty sequence");
  return seq::SeqVector(std::move(e));
}

seq::SeqVector read_seq_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  auto text = ss.str();
  auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') return seq_from_json(parse_json(text));
  return seq_from_csv(text);
}

json to_json(const torus::TorusFunction& f) {
  return json{{"dim", f.grid().dim()}, {"N", f.grid().n()}, {"values", values_json(f.values())}};
}

torus::TorusFunction torus_function_from_json(const json& j) {
  return guarded([&] {
    torus::TorusGrid grid(count(field(j, "dim"), "dim"), count(field(j, "N"), "N"));
    auto v = values_from(field(j, "values"));
    if (v.size() != grid.size()) throw ParseError("values length does not match N^dim");
    return torus::TorusFunction(grid, std::move(v));
  });
}

json to_json(const torus::CoeffTable& c) {
  json coeffs = json::array();
  for (std::size_t k = 0; k < c.size(); ++k) {
    if (c[k] == Complex{}) continue;
    coeffs.push_back(json{{"alpha", c.index(k)}, {"re", c[k].real()}, {"im", c[k].imag()}});
  }
  return json{{"dim", c.dim()}, {"K", c.band()}, {"coeffs", coeffs}};
}

torus::CoeffTable coeff_table_from_json(const json& j) {
  return guarded([&] {
    auto dim = count(field(j, "dim"), "dim");
    torus::CoeffTable c(dim, static_cast<int>(count(field(j, "K"), "K")));
    for (const auto& t : array(field(j, "coeffs"), "coeffs")) {
      auto alpha = field(t, "alpha").get<std::vector<int>>();
      if (alpha.size() != dim) throw ParseError("coefficient alpha has wrong length");
      if (!c.in_band(alpha)) throw ParseError("coefficient alpha outside the band");
      c.set(alpha, c.at(alpha) + complex_from_json(t));
    }
    return c;
  });
}

json to_json(const torus::TorusAtomicMeasure& mu) {
  json atoms = json::array();
  for (const auto& a : mu.atoms())
    atoms.push_back(json{{"z", values_json(a.z)}, {"re", a.weight.real()}, {"im", a.weight.imag()}});
  return json{{"dim", mu.dim()}, {"atoms", atoms}};
}

torus::TorusAtomicMeasure torus_measure_from_json(const json& j) {
  return guarded([&] {
    std::vector<torus::TorusAtomicMeasure::Atom> atoms;
    for (const auto& a : array(field(j, "atoms"), "atoms"))
      atoms.push_back({values_from(field(a, "z")), complex_from_json(a)});
    std::size_t dim = j.contains("dim") ? count(j["dim"], "dim")
                      : atoms.empty()   ? throw ParseError("measure needs dim or atoms")
                                        : atoms.front().z.size();
    return torus::TorusAtomicMeasure(dim, std::move(atoms));
  });
}

json to_json(const line::LineFunction& f) {
  return json{{"dim", f.dim()},
              {"L", f.half_width()},
              {"M", f.m()},
              {"decay", f.decay() == line::Decay::Compact ? "compact" : "exponential"},
              {"values", values_json(f.values())}};
}

line::LineFunction line_function_from_json(const json& j) {
  return guarded([&] {
    auto decay = line::Decay::Compact;
    if (j.contains("decay")) {
      auto d = j["decay"].get<std::string>();
      if (d == "exponential") decay = line::Decay::Exponential;
      else if (d != "compact") throw ParseError("decay must be 'compact' or 'exponential'");
    }
    return line::LineFunction(count(field(j, "dim"), "dim"), number(field(j, "L"), "L"),
                              count(field(j, "M"), "M"), values_from(field(j, "values")), decay);
  });
}

json to_json(const line::ClosedFormFn& g) {
  json fs = json::array();
  for (const auto& f : g.factors()) {
    switch (f.kind) {
      case line::Factor::Kind::QPlus: fs.push_back(json{{"kind", "q_plus"}, {"a", f.a}}); break;
      case line::Factor::Kind::QMinus: fs.push_back(json{{"kind", "q_minus"}, {"a", f.a}}); break;
      case line::Factor::Kind::PA: fs.push_back(json{{"kind", "p_a"}, {"a", f.a}}); break;
      case line::Factor::Kind::Indicator:
        fs.push_back(json{{"kind", "indicator"}, {"a", f.a}, {"b", f.b}});
        break;
    }
  }
  return json{{"factors", fs}};
}

line::ClosedFormFn closed_form_from_json(const json& j) {
  return guarded([&] {
    std::vector<line::Factor> fs;
    for (const auto& f : array(field(j, "factors"), "factors")) {
      auto kind = field(f, "kind").get<std::string>();
      double a = number(field(f, "a"), "a");
      if (kind == "q_plus") fs.push_back(line::Factor::q_plus(a));
      else if (kind == "q_minus") fs.push_back(line::Factor::q_minus(a));
      else if (kind == "p_a") fs.push_back(line::Factor::p_a(a));
      else if (kind == "indicator") fs.push_back(line::Factor::indicator(a, number(field(f, "b"), "b")));
      else throw ParseError("unknown factor kind '" + kind + "'");
    }
    if (fs.empty()) throw ParseError("closed form needs at least one factor");
    return line::ClosedFormFn(std::move(fs));
  });
}

json to_json(const line::LineAtomicMeasure& mu) {
  json atoms = json::array();
  for (const auto& a : mu.atoms())
    atoms.push_back(json{{"u", a.u}, {"re", a.weight.real()}, {"im", a.weight.imag()}});
  return json{{"dim", mu.dim()}, {"atoms", atoms}};
}

line::LineAtomicMeasure line_measure_from_json(const json& j) {
  return guarded([&] {
    std::vector<line::LineAtomicMeasure::Atom> atoms;
    for (const auto& a : array(field(j, "atoms"), "atoms"))
      atoms.push_back({real_list_from_json(field(a, "u")), complex_from_json(a)});
    std::size_t dim = j.contains("dim") ? count(j["dim"], "dim")
                      : atoms.empty()   ? throw ParseError("measure needs dim or atoms")
                                        : atoms.front().u.size();
    return line::LineAtomicMeasure(dim, std::move(atoms));
  });
}

json matrix_to_json(const alg::Matrix& m) {
  json e = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c) e.push_back(to_json(m(r, c)));
  return json{{"d", m.rows()}, {"entries", e}};
}

alg::Matrix matrix_from_json(const json& j) {
  return guarded([&] {
    auto d = count(field(j, "d"), "d");
    if (d == 0) throw ParseError("matrix size must be positive");
    auto e = values_from(field(j, "entries"));
    if (e.size() != d * d) throw ParseError("matrix needs d*d entries");
    alg::Matrix m(d, d);
    for (std::size_t r = 0; r < d; ++r)
      for (std::size_t c = 0; c < d; ++c) m(r, c) = e[r * d + c];
    return m;
  });
}

json to_json(const hull::PointCloud& s) { return json{{"d", s.dim()}, {"points", s.points()}}; }

hull::PointCloud point_cloud_from_json(const json& j) {
  return guarded([&] {
    std::vector<hull::RVec> pts;
    for (const auto& p : array(field(j, "points"), "points")) pts.push_back(real_list_from_json(p));
    return hull::PointCloud(count(field(j, "d"), "d"), std::move(pts));
  });
}

json to_json(const hull::CircularSample& s) {
  json pts = json::array();
  for (const auto& p : s.points()) pts.push_back(values_json(p));
  return json{{"n", s.n()},
              {"points", pts},
              {"flags", json{{"completely_circular", s.completely_circular()}}}};
}

hull::CircularSample circular_sample_from_json(const json& j) {
  return guarded([&] {
    std::vector<hull::CVec> pts;
    for (const auto& p : array(field(j, "points"), "points")) pts.push_back(values_from(p));
    bool circ = true;
    if (j.contains("flags") && j["flags"].contains("completely_circular"))
      circ = j["flags"]["completely_circular"].get<bool>();
    return hull::CircularSample(count(field(j, "n"), "n"), std::move(pts), circ);
  });
}

json to_json(const hull::HullCertificate& c) {
  json out{{"kind", hull::kind_name(c)}};
  std::visit(
      [&](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, hull::InsideConvexCombination>) {
          out["weights"] = v.weights;
          out["support"] = v.support;
          out["dominated"] = v.dominated;
          out["residual"] = v.residual;
          out["tolerance"] = v.tolerance;
        } else if constexpr (std::is_same_v<T, hull::SeparatingFunctional>) {
          out["lambda"] = v.lambda;
          out["margin"] = v.margin;
          out["tolerance"] = v.tolerance;
        } else if constexpr (std::is_same_v<T, hull::MonomialWitness>) {
          out["alpha"] = multi_index_json(v.alpha);
          out["log_sup_on_e"] = extended(v.log_sup_on_e);
          out["log_value_at_z"] = extended(v.log_value_at_z);
        } else if constexpr (std::is_same_v<T, hull::ExponentialWitness>) {
          out["mu"] = values_json(v.mu);
          out["t"] = v.t;
          out["boundary_sup"] = v.boundary_sup;
          out["value_at_z"] = v.value_at_z;
        } else {
          out["reason"] = v.reason;
        }
      },
      c);
  return out;
}

hull::HullCertificate certificate_from_json(const json& j) {
  return guarded([&]() -> hull::HullCertificate {
    auto kind = field(j, "kind").get<std::string>();
    auto opt = [&](const char* k, double dflt) {
      return j.contains(k) ? number(j[k], k) : dflt;
    };
    if (kind == "InsideConvexCombination") {
      hull::InsideConvexCombination c;
      c.weights = real_list_from_json(field(j, "weights"));
      for (const auto& p : array(field(j, "support"), "support"))
        c.support.push_back(real_list_from_json(p));
      c.dominated = j.value("dominated", false);
      c.residual = opt("residual", 0.0);
      c.tolerance = opt("tolerance", 0.0);
      return c;
    }
    if (kind == "SeparatingFunctional") {
      return hull::SeparatingFunctional{real_list_from_json(field(j, "lambda")),
                                        number(field(j, "margin"), "margin"),
                                        opt("tolerance", 0.0)};
    }
    if (kind == "MonomialWitness") {
      return hull::MonomialWitness{multi_index_from(field(j, "alpha")),
                                   extended_from(field(j, "log_sup_on_e")),
                                   extended_from(field(j, "log_value_at_z"))};
    }
    if (kind == "ExponentialWitness") {
      return hull::ExponentialWitness{values_from(field(j, "mu")), number(field(j, "t"), "t"),
                                      opt("boundary_sup", 0.0), opt("value_at_z", 0.0)};
    }
    if (kind == "NotApplicable") return hull::NotApplicable{j.value("reason", std::string{})};
    throw ParseError("unknown certificate kind '" + kind + "'");
  });
}

std::string fmt(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string dump(const json& j) { return j.dump(2); }

}  // namespace harmonia::io
