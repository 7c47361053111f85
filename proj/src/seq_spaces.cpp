#include "harmonia/seq_spaces.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "harmonia/error.hpp"

namespace harmonia::seq {

namespace {

void check_same_length(const SeqVector& a, const SeqVector& b, const char* op) {
  if (a.size() != b.size()) {
    throw PreconditionError(std::string(op) + ": length mismatch");
  }
}

bool needs_scaling(std::span<const Complex> v, double p) {
  if (p > 8.0) return true;
  double lo = std::numeric_limits<double>::infinity();
  double hi = 0.0;
  for (const Complex& z : v) {
    const double a = std::abs(z);
    if (a == 0.0) continue;
    lo = std::min(lo, a);
    hi = std::max(hi, a);
  }
  return hi > 0.0 && hi > 1e6 * lo;
}

double max_abs(std::span<const Complex> v) {
  double m = 0.0;
  for (const Complex& z : v) m = std::max(m, std::abs(z));
  return m;
}

}  // namespace

SeqVector::SeqVector(std::vector<Complex> entries) : v_(std::move(entries)) {
  require(!v_.empty(), "SeqVector must have at least one entry");
  for (const Complex& z : v_) {
    require(std::isfinite(z.real()) && std::isfinite(z.imag()),
            "SeqVector entries must be finite");
  }
}

SeqVector SeqVector::real(std::span<const double> xs) {
  return SeqVector(std::vector<Complex>(xs.begin(), xs.end()));
}

SeqVector SeqVector::operator+(const SeqVector& o) const {
  check_same_length(*this, o, "add");
  std::vector<Complex> r(v_);
  for (std::size_t j = 0; j < r.size(); ++j) r[j] += o.v_[j];
  return SeqVector(std::move(r));
}

SeqVector SeqVector::operator-(const SeqVector& o) const {
  check_same_length(*this, o, "subtract");
  std::vector<Complex> r(v_);
  for (std::size_t j = 0; j < r.size(); ++j) r[j] -= o.v_[j];
  return SeqVector(std::move(r));
}

SeqVector SeqVector::operator*(Complex s) const {
  std::vector<Complex> r(v_);
  for (Complex& z : r) z *= s;
  return SeqVector(std::move(r));
}

SeqVector SeqVector::hadamard(const SeqVector& o) const {
  check_same_length(*this, o, "hadamard");
  std::vector<Complex> r(v_);
  for (std::size_t j = 0; j < r.size(); ++j) r[j] *= o.v_[j];
  return SeqVector(std::move(r));
}

Exponent::Exponent(double p) : p_(p) {
  require(p > 0.0 && !std::isnan(p), "exponent must be positive or infinity");
}

std::string Exponent::to_string() const {
  if (is_infinite()) return "inf";
  std::ostringstream os;
  os.precision(17);
  os << p_;
  return os.str();
}

double lp_norm(const SeqVector& f, Exponent p) {
  const auto v = f.entries();
  if (p.is_infinite()) return max_abs(v);
  const double pv = p.value();
  std::vector<double> terms(v.size());
  if (pv == 1.0) {
    for (std::size_t j = 0; j < v.size(); ++j) terms[j] = std::abs(v[j]);
    return pairwise_sum(terms);
  }
  if (needs_scaling(v, pv)) {
    const double m = max_abs(v);
    if (m == 0.0) return 0.0;
    for (std::size_t j = 0; j < v.size(); ++j) {
      terms[j] = std::pow(std::abs(v[j]) / m, pv);
    }
    return m * std::pow(pairwise_sum(terms), 1.0 / pv);
  }
  for (std::size_t j = 0; j < v.size(); ++j) {
    const double a = std::abs(v[j]);
    terms[j] = pv == 2.0 ? a * a : std::pow(a, pv);
  }
  const double s = pairwise_sum(terms);
  return pv == 2.0 ? std::sqrt(s) : std::pow(s, 1.0 / pv);
}

double lp_power_sum(const SeqVector& f, Exponent p) {
  require(!p.is_infinite(), "lp_power_sum needs a finite exponent");
  std::vector<double> terms(f.size());
  for (std::size_t j = 0; j < f.size(); ++j) {
    terms[j] = std::pow(std::abs(f[j]), p.value());
  }
  return pairwise_sum(terms);
}

Exponent conjugate_exponent(Exponent p) {
  if (p.is_infinite()) return Exponent(1.0);
  require(p.value() >= 1.0, "conjugate exponent requires p >= 1");
  if (p.value() == 1.0) return Exponent::infinity();
  return Exponent(p.value() / (p.value() - 1.0));
}

Complex pairing(const SeqVector& f, const SeqVector& g) {
  check_same_length(f, g, "pairing");
  std::vector<Complex> t(f.size());
  for (std::size_t j = 0; j < f.size(); ++j) t[j] = f[j] * g[j];
  return pairwise_sum(t);
}

Complex inner_product(const SeqVector& f, const SeqVector& g) {
  check_same_length(f, g, "inner_product");
  std::vector<Complex> t(f.size());
  for (std::size_t j = 0; j < f.size(); ++j) t[j] = f[j] * std::conj(g[j]);
  return pairwise_sum(t);
}

DualNorm dual_norm(const SeqVector& g, Exponent p) {
  require(p.is_infinite() || p.value() >= 1.0, "dual_norm requires p >= 1");
  const Exponent q = conjugate_exponent(p);
  const double value = lp_norm(g, q);
  const std::size_t n = g.size();
  std::vector<Complex> f(n, Complex{});
  auto phase = [&](std::size_t j) { return std::polar(1.0, -std::arg(g[j])); };
  if (value == 0.0) return {0.0, SeqVector(std::move(f))};

  if (!p.is_infinite() && p.value() == 1.0) {
    // all mass on the first coordinate where |g| is maximal
    std::size_t best = 0;
    for (std::size_t j = 1; j < n; ++j) {
      if (std::abs(g[j]) > std::abs(g[best])) best = j;
    }
    f[best] = phase(best);
  } else if (p.is_infinite()) {
    for (std::size_t j = 0; j < n; ++j) {
      if (g[j] != Complex{}) f[j] = phase(j);
    }
  } else {
    // |f|^p = |g|^q, i.e. |f| = |g|^{q/p} = |g|^{1/(p-1)}, then normalized
    const double expo = 1.0 / (p.value() - 1.0);
    const double m = lp_norm(g, Exponent::infinity());
    for (std::size_t j = 0; j < n; ++j) {
      if (g[j] == Complex{}) continue;
      f[j] = phase(j) * std::pow(std::abs(g[j]) / m, expo);
    }
    const double nf = lp_norm(SeqVector(f), p);
    for (Complex& z : f) z /= nf;
  }
  return {value, SeqVector(std::move(f))};
}

void check_seminorm_axioms(const Seminorm& n, std::size_t length,
                           unsigned seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  auto rand_vec = [&] {
    std::vector<Complex> v(length);
    for (Complex& z : v) z = {gauss(rng), gauss(rng)};
    return SeqVector(std::move(v));
  };
  for (int trial = 0; trial < 10; ++trial) {
    const SeqVector u = rand_vec();
    const SeqVector w = rand_vec();
    const Complex t{gauss(rng), gauss(rng)};
    const double nu = n(u);
    const double nw = n(w);
    const double ntu = n(u * t);
    const double nuw = n(u + w);
    const double scale = 1.0 + nu + nw;
    if (nu < 0.0 || nw < 0.0) {
      throw PreconditionError("seminorm evaluator returned a negative value");
    }
    if (std::abs(ntu - std::abs(t) * nu) > 1e-9 * (scale + std::abs(t) * nu)) {
      throw PreconditionError("seminorm evaluator is not absolutely homogeneous");
    }
    if (nuw > nu + nw + 1e-9 * scale) {
      throw PreconditionError("seminorm evaluator is not subadditive");
    }
  }
}

double seminorm_family_metric(const SeqVector& v, const SeqVector& w,
                              const std::vector<Seminorm>& family) {
  require(!family.empty(), "seminorm family must be nonempty");
  check_same_length(v, w, "seminorm_family_metric");
  for (const Seminorm& n : family) check_seminorm_axioms(n, v.size());
  const SeqVector d = v - w;
  double best = 0.0;
  for (std::size_t l = 1; l <= family.size(); ++l) {
    best = std::max(best, std::min(family[l - 1](d), 1.0 / static_cast<double>(l)));
  }
  return best;
}

Seminorm lp_seminorm(Exponent p) {
  require(p.is_infinite() || p.value() >= 1.0, "lp_seminorm requires p >= 1");
  return [p](const SeqVector& f) { return lp_norm(f, p); };
}

Seminorm weighted_sup_seminorm(int k) {
  return [k](const SeqVector& f) {
    double m = 0.0;
    for (std::size_t j = 0; j < f.size(); ++j) {
      m = std::max(m, std::pow(static_cast<double>(j + 1), k) * std::abs(f[j]));
    }
    return m;
  };
}

}  // namespace harmonia::seq
