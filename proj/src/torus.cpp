#include "harmonia/torus.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "harmonia/error.hpp"

namespace harmonia::torus {

namespace {

constexpr double kUnitTol = 1e-12;

std::size_t ipow_size(std::size_t b, std::size_t e) {
  std::size_t r = 1;
  for (std::size_t i = 0; i < e; ++i) r *= b;
  return r;
}

long long mod(long long a, long long n) {
  const long long r = a % n;
  return r < 0 ? r + n : r;
}

// z~^a for a single coordinate.
Complex modified_power(Complex z, int a) {
  return a >= 0 ? ipow(z, static_cast<unsigned>(a))
                : ipow(std::conj(z), static_cast<unsigned>(-a));
}

// w^{-a} for |w| = 1.
Complex unit_inverse_power(Complex w, int a) {
  return a >= 0 ? ipow(std::conj(w), static_cast<unsigned>(a))
                : ipow(w, static_cast<unsigned>(-a));
}

void check_same_grid(const TorusGrid& a, const TorusGrid& b) {
  if (!(a == b)) throw PreconditionError("torus functions live on different grids");
}

}  // namespace

TorusGrid::TorusGrid(std::size_t dim, std::size_t samples_per_dim)
    : dim_(dim), n_(samples_per_dim) {
  require(dim >= 1, "torus dimension must be positive");
  require(samples_per_dim >= 4 && samples_per_dim % 2 == 0,
          "samples per dimension must be even and >= 4");
  size_ = ipow_size(n_, dim_);
  roots_.resize(n_);
  for (std::size_t m = 0; m < n_; ++m) {
    roots_[m] = unit_phase(static_cast<double>(m) / static_cast<double>(n_));
  }
}

std::vector<std::size_t> TorusGrid::unflatten(std::size_t flat) const {
  std::vector<std::size_t> k(dim_);
  for (std::size_t j = dim_; j-- > 0;) {
    k[j] = flat % n_;
    flat /= n_;
  }
  return k;
}

Point TorusGrid::point(std::size_t flat) const {
  const auto k = unflatten(flat);
  Point z(dim_);
  for (std::size_t j = 0; j < dim_; ++j) z[j] = roots_[k[j]];
  return z;
}

Complex TorusGrid::root(long long m) const {
  return roots_[static_cast<std::size_t>(mod(m, static_cast<long long>(n_)))];
}

TorusFunction::TorusFunction(TorusGrid grid, std::vector<Complex> values)
    : grid_(std::move(grid)), values_(std::move(values)) {
  require(values_.size() == grid_.size(), "torus function: value count must be N^n");
  for (const Complex& v : values_) {
    require(std::isfinite(v.real()) && std::isfinite(v.imag()),
            "torus function values must be finite");
  }
}

TorusFunction TorusFunction::sample(
    const TorusGrid& grid, const std::function<Complex(const Point&)>& f) {
  std::vector<Complex> v(grid.size());
  for (std::size_t k = 0; k < grid.size(); ++k) v[k] = f(grid.point(k));
  return TorusFunction(grid, std::move(v));
}

CoeffTable::CoeffTable(std::size_t dim, int band) : dim_(dim), band_(band) {
  require(dim >= 1, "coefficient table dimension must be positive");
  require(band >= 0, "coefficient band must be nonnegative");
  data_.assign(ipow_size(static_cast<std::size_t>(2 * band + 1), dim), Complex{});
}

bool CoeffTable::in_band(std::span<const int> alpha) const {
  if (alpha.size() != dim_) return false;
  return std::all_of(alpha.begin(), alpha.end(),
                     [&](int a) { return std::abs(a) <= band_; });
}

std::size_t CoeffTable::flat(std::span<const int> alpha) const {
  require(alpha.size() == dim_, "coefficient index has wrong dimension");
  require(in_band(alpha), "coefficient index outside the band");
  const std::size_t w = static_cast<std::size_t>(2 * band_ + 1);
  std::size_t f = 0;
  for (int a : alpha) f = f * w + static_cast<std::size_t>(a + band_);
  return f;
}

Complex CoeffTable::at(std::span<const int> alpha) const {
  if (!in_band(alpha)) {
    require(alpha.size() == dim_, "coefficient index has wrong dimension");
    return {};
  }
  return data_[flat(alpha)];
}

void CoeffTable::set(std::span<const int> alpha, Complex v) { data_[flat(alpha)] = v; }

SignedIndex CoeffTable::index(std::size_t f) const {
  const std::size_t w = static_cast<std::size_t>(2 * band_ + 1);
  SignedIndex a(dim_);
  for (std::size_t j = dim_; j-- > 0;) {
    a[j] = static_cast<int>(f % w) - band_;
    f /= w;
  }
  return a;
}

double CoeffTable::l1_norm() const {
  std::vector<double> t(data_.size());
  for (std::size_t i = 0; i < t.size(); ++i) t[i] = std::abs(data_[i]);
  return pairwise_sum(t);
}

CoeffTable CoeffTable::delta(std::size_t dim, int band, std::span<const int> alpha) {
  CoeffTable c(dim, band);
  c.set(alpha, 1.0);
  return c;
}

Complex fourier_coeff(const TorusFunction& f, std::span<const int> alpha) {
  const TorusGrid& g = f.grid();
  require(alpha.size() == g.dim(), "fourier_coeff: index dimension mismatch");
  for (int a : alpha) {
    if (std::abs(a) > g.max_band()) {
      throw PreconditionError("fourier_coeff: index outside the Nyquist band");
    }
  }
  std::vector<Complex> terms(g.size());
  std::vector<std::size_t> k(g.dim(), 0);
  for (std::size_t flat = 0; flat < g.size(); ++flat) {
    long long m = 0;
    for (std::size_t j = 0; j < g.dim(); ++j) {
      m += static_cast<long long>(k[j]) * alpha[j];
    }
    terms[flat] = f[flat] * g.root(-m);
    // advance the row-major counter
    for (std::size_t j = g.dim(); j-- > 0;) {
      if (++k[j] < g.n()) break;
      k[j] = 0;
    }
  }
  return pairwise_sum(terms) / static_cast<double>(g.size());
}

CoeffTable analyze(const TorusFunction& f, int band) {
  const int K = band < 0 ? f.grid().max_band() : band;
  require(K <= f.grid().max_band(), "analyze: band exceeds the Nyquist limit");
  CoeffTable c(f.grid().dim(), K);
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = fourier_coeff(f, c.index(i));
  return c;
}

Complex synthesize(const CoeffTable& c, std::span<const Complex> z) {
  require(z.size() == c.dim(), "synthesize: point dimension mismatch");
  for (const Complex& zj : z) {
    if (std::abs(zj) > 1.0 + kUnitTol) {
      throw PreconditionError("synthesize: point outside the closed unit polydisk");
    }
  }
  const int K = c.band();
  // per-coordinate tables of z~_j^a, a in [-K, K]
  std::vector<std::vector<Complex>> pw(z.size(), std::vector<Complex>(2 * K + 1));
  for (std::size_t j = 0; j < z.size(); ++j) {
    for (int a = -K; a <= K; ++a) pw[j][a + K] = modified_power(z[j], a);
  }
  std::vector<Complex> terms(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (c[i] == Complex{}) continue;
    const SignedIndex a = c.index(i);
    Complex t = c[i];
    for (std::size_t j = 0; j < z.size(); ++j) t *= pw[j][a[j] + K];
    terms[i] = t;
  }
  return pairwise_sum(terms);
}

TorusFunction convolve_torus(const TorusFunction& f, const TorusFunction& g) {
  check_same_grid(f.grid(), g.grid());
  const TorusGrid& grid = f.grid();
  const std::size_t n = grid.n();
  const std::size_t total = grid.size();
  std::vector<Complex> out(total);
  std::vector<Complex> terms(total);
  for (std::size_t z = 0; z < total; ++z) {
    const auto kz = grid.unflatten(z);
    std::vector<std::size_t> kw(grid.dim(), 0);
    for (std::size_t w = 0; w < total; ++w) {
      // index of z . w^{-1}
      std::size_t d = 0;
      for (std::size_t j = 0; j < grid.dim(); ++j) d = d * n + (kz[j] + n - kw[j]) % n;
      terms[w] = f[d] * g[w];
      for (std::size_t j = grid.dim(); j-- > 0;) {
        if (++kw[j] < n) break;
        kw[j] = 0;
      }
    }
    out[z] = pairwise_sum(terms) / static_cast<double>(total);
  }
  return TorusFunction(grid, std::move(out));
}

CoeffTable z_convolve(const CoeffTable& a, const CoeffTable& b) {
  require(a.dim() == b.dim(), "z_convolve: dimension mismatch");
  CoeffTable out(a.dim(), a.band() + b.band());
  std::vector<std::vector<Complex>> acc(out.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == Complex{}) continue;
    const SignedIndex ai = a.index(i);
    for (std::size_t k = 0; k < b.size(); ++k) {
      if (b[k] == Complex{}) continue;
      const SignedIndex bk = b.index(k);
      SignedIndex s(ai);
      for (std::size_t j = 0; j < s.size(); ++j) s[j] += bk[j];
      const std::size_t w = static_cast<std::size_t>(2 * out.band() + 1);
      std::size_t f = 0;
      for (int v : s) f = f * w + static_cast<std::size_t>(v + out.band());
      acc[f].push_back(a[i] * b[k]);
    }
  }
  for (std::size_t f = 0; f < out.size(); ++f) out[f] = pairwise_sum(acc[f]);
  return out;
}

double poisson_kernel(Complex z, Complex w) {
  const double az = std::abs(z);
  if (!(az < 1.0)) throw PreconditionError("poisson_kernel: |z| must be < 1");
  if (std::abs(std::abs(w) - 1.0) > kUnitTol) {
    throw PreconditionError("poisson_kernel: |w| must be 1");
  }
  return (1.0 - az * az) / (kTwoPi * std::norm(w - z));
}

double poisson_kernel_n(std::span<const Complex> z, std::span<const Complex> w) {
  require(z.size() == w.size(), "poisson_kernel_n: dimension mismatch");
  double p = 1.0;
  for (std::size_t j = 0; j < z.size(); ++j) p *= poisson_kernel(z[j], w[j]);
  return p;
}

double poisson_mass(std::span<const Complex> z, std::size_t samples_per_dim) {
  const TorusGrid grid(z.size(), samples_per_dim);
  std::vector<double> t(grid.size());
  for (std::size_t k = 0; k < grid.size(); ++k) {
    t[k] = poisson_kernel_n(z, grid.point(k));
  }
  // |dw| has total mass 2 pi per dimension
  return pairwise_sum(t) * std::pow(kTwoPi / static_cast<double>(samples_per_dim),
                                    static_cast<double>(z.size()));
}

Complex poisson_extend(const TorusFunction& f, std::span<const Complex> z) {
  const TorusGrid& grid = f.grid();
  require(z.size() == grid.dim(), "poisson_extend: point dimension mismatch");
  for (const Complex& zj : z) {
    if (!(std::abs(zj) < 1.0)) {
      throw PreconditionError("poisson_extend: point must lie in the open polydisk");
    }
  }
  const double norm = std::pow(kTwoPi, static_cast<double>(grid.dim()));
  std::vector<Complex> t(grid.size());
  for (std::size_t k = 0; k < grid.size(); ++k) {
    t[k] = f[k] * (norm * poisson_kernel_n(z, grid.point(k)));
  }
  return pairwise_sum(t) / static_cast<double>(grid.size());
}

double poisson_alias_bound(const CoeffTable& c, std::size_t samples_per_dim,
                           std::span<const Complex> z) {
  require(z.size() == c.dim(), "poisson_alias_bound: dimension mismatch");
  const double N = static_cast<double>(samples_per_dim);
  const double K = static_cast<double>(c.band());
  double factor = 1.0;
  for (const Complex& zj : z) {
    const double rho = std::abs(zj);
    factor *= 1.0 + 2.0 * std::pow(rho, N - K) / (1.0 - std::pow(rho, N));
  }
  const double l1 = c.l1_norm();
  return l1 * (factor - 1.0) + 1e-13 * (1.0 + l1);
}

AbelSum abel_sum(std::span<const Complex> a, double r) {
  require(r >= 0.0 && r < 1.0, "abel_sum: r must lie in [0, 1)");
  require(!a.empty(), "abel_sum: empty sequence");
  Complex acc{};
  for (std::size_t j = a.size(); j-- > 0;) acc = acc * r + a[j];
  double sup = 0.0;
  for (const Complex& v : a) sup = std::max(sup, std::abs(v));
  const double tail = sup * std::pow(r, static_cast<double>(a.size())) / (1.0 - r);
  return {acc, tail};
}

std::vector<Complex> cauchy_product(std::span<const Complex> a,
                                    std::span<const Complex> b) {
  const std::size_t n = std::min(a.size(), b.size());
  std::vector<Complex> c(n);
  std::vector<Complex> t;
  for (std::size_t k = 0; k < n; ++k) {
    t.assign(k + 1, Complex{});
    for (std::size_t j = 0; j <= k; ++j) t[j] = a[j] * b[k - j];
    c[k] = pairwise_sum(t);
  }
  return c;
}

Parseval parseval(const TorusFunction& f) {
  const CoeffTable c = analyze(f);
  std::vector<double> sq(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) sq[i] = std::norm(c[i]);
  std::vector<double> en(f.values().size());
  for (std::size_t k = 0; k < en.size(); ++k) en[k] = std::norm(f[k]);
  return {pairwise_sum(sq), pairwise_sum(en) / static_cast<double>(en.size())};
}

std::vector<Complex> sample_circle(const std::function<Complex(Complex)>& f,
                                   double r, std::size_t n) {
  require(r > 0.0, "sample_circle: radius must be positive");
  require(n >= 1, "sample_circle: need at least one sample");
  std::vector<Complex> s(n);
  for (std::size_t k = 0; k < n; ++k) {
    s[k] = f(r * unit_phase(static_cast<double>(k) / static_cast<double>(n)));
  }
  return s;
}

Complex laurent_coeff(std::span<const Complex> samples, double r, int j) {
  require(r > 0.0, "laurent_coeff: radius must be positive");
  const std::size_t n = samples.size();
  if (n <= 2 * static_cast<std::size_t>(std::abs(j))) {
    throw PreconditionError("laurent_coeff: too few samples for this index");
  }
  std::vector<Complex> t(n);
  for (std::size_t k = 0; k < n; ++k) {
    const long long m = mod(-static_cast<long long>(k) * j, static_cast<long long>(n));
    t[k] = samples[k] * unit_phase(static_cast<double>(m) / static_cast<double>(n));
  }
  return pairwise_sum(t) / static_cast<double>(n) * std::pow(r, -j);
}

double laurent_coeff_bound(std::span<const Complex> samples, double r, int j) {
  double m = 0.0;
  for (const Complex& s : samples) m = std::max(m, std::abs(s));
  return std::pow(r, -j) * m;
}

AnalyticTypeReport analytic_type_test(const CoeffTable& c, double tol) {
  AnalyticTypeReport rep{true, {}};
  for (std::size_t i = 0; i < c.size(); ++i) {
    const SignedIndex a = c.index(i);
    const bool negative = std::any_of(a.begin(), a.end(), [](int v) { return v < 0; });
    if (negative && std::abs(c[i]) > tol) {
      rep.analytic = false;
      rep.offending.push_back(a);
    }
  }
  return rep;
}

namespace {

double boundary_modulus(const CoeffTable& c, std::span<const double> theta) {
  Point z(theta.size());
  for (std::size_t j = 0; j < theta.size(); ++j) z[j] = std::polar(1.0, theta[j]);
  return std::abs(synthesize(c, z));
}

// Pattern search on the angles starting from a grid maximum.
double refine_boundary_max(const CoeffTable& c, std::vector<double> theta,
                           double step) {
  double best = boundary_modulus(c, theta);
  while (step > 1e-11) {
    bool improved = false;
    for (std::size_t j = 0; j < theta.size(); ++j) {
      for (double s : {step, -step}) {
        std::vector<double> trial = theta;
        trial[j] += s;
        const double v = boundary_modulus(c, trial);
        if (v > best) {
          best = v;
          theta = std::move(trial);
          improved = true;
          break;
        }
      }
    }
    if (!improved) step *= 0.5;
  }
  return best;
}

}  // namespace

MaxPrincipleReport max_principle_gap(const CoeffTable& c,
                                     std::span<const Point> interior,
                                     std::size_t boundary_samples) {
  const TorusGrid grid(c.dim(), boundary_samples);
  std::vector<std::pair<double, std::size_t>> vals(grid.size());
  for (std::size_t k = 0; k < grid.size(); ++k) {
    vals[k] = {std::abs(synthesize(c, grid.point(k))), k};
  }
  const std::size_t keep = std::min<std::size_t>(8, vals.size());
  std::partial_sort(vals.begin(), vals.begin() + static_cast<long>(keep), vals.end(),
                    [](const auto& a, const auto& b) { return a.first > b.first; });
  double boundary = vals.front().first;
  const double step = kTwoPi / static_cast<double>(boundary_samples);
  for (std::size_t i = 0; i < keep; ++i) {
    const auto k = grid.unflatten(vals[i].second);
    std::vector<double> theta(k.size());
    for (std::size_t j = 0; j < k.size(); ++j) theta[j] = step * static_cast<double>(k[j]);
    boundary = std::max(boundary, refine_boundary_max(c, theta, step));
  }
  double inner = 0.0;
  for (const Point& z : interior) {
    for (const Complex& zj : z) {
      require(std::abs(zj) < 1.0, "max_principle_gap: interior point not in the open polydisk");
    }
    inner = std::max(inner, std::abs(synthesize(c, z)));
  }
  return {inner - boundary, inner, boundary};
}

TorusAtomicMeasure::TorusAtomicMeasure(std::size_t dim, std::vector<Atom> atoms)
    : dim_(dim) {
  require(dim >= 1, "measure dimension must be positive");
  std::map<std::vector<std::pair<double, double>>, std::size_t> seen;
  for (Atom& a : atoms) {
    require(a.z.size() == dim, "atom location has wrong dimension");
    std::vector<std::pair<double, double>> key;
    for (Complex& zj : a.z) {
      const double m = std::abs(zj);
      require(m > 0.0 && std::isfinite(m), "atom location must be nonzero and finite");
      zj /= m;
      key.emplace_back(zj.real(), zj.imag());
    }
    auto [it, inserted] = seen.emplace(key, atoms_.size());
    if (inserted) {
      atoms_.push_back(std::move(a));
    } else {
      atoms_[it->second].weight += a.weight;
    }
  }
}

double TorusAtomicMeasure::total_variation() const {
  std::vector<double> t(atoms_.size());
  for (std::size_t k = 0; k < t.size(); ++k) t[k] = std::abs(atoms_[k].weight);
  return pairwise_sum(t);
}

Complex measure_fourier_coeff(const TorusAtomicMeasure& mu,
                              std::span<const int> alpha) {
  require(alpha.size() == mu.dim(), "measure_fourier_coeff: index dimension mismatch");
  std::vector<Complex> t(mu.atoms().size());
  for (std::size_t k = 0; k < t.size(); ++k) {
    Complex v = mu.atoms()[k].weight;
    for (std::size_t j = 0; j < alpha.size(); ++j) {
      v *= unit_inverse_power(mu.atoms()[k].z[j], alpha[j]);
    }
    t[k] = v;
  }
  return pairwise_sum(t);
}

TorusAtomicMeasure measure_convolve(const TorusAtomicMeasure& mu,
                                    const TorusAtomicMeasure& nu) {
  require(mu.dim() == nu.dim(), "measure_convolve: dimension mismatch");
  std::vector<TorusAtomicMeasure::Atom> atoms;
  for (const auto& a : mu.atoms()) {
    for (const auto& b : nu.atoms()) {
      Point z(a.z.size());
      for (std::size_t j = 0; j < z.size(); ++j) z[j] = a.z[j] * b.z[j];
      atoms.push_back({std::move(z), a.weight * b.weight});
    }
  }
  return TorusAtomicMeasure(mu.dim(), std::move(atoms));
}

TorusFunction poisson_smooth(const TorusAtomicMeasure& mu,
                             std::span<const double> r, const TorusGrid& grid) {
  require(r.size() == mu.dim() && grid.dim() == mu.dim(),
          "poisson_smooth: dimension mismatch");
  for (double rj : r) require(rj >= 0.0 && rj < 1.0, "poisson_smooth: r must lie in [0, 1)");
  const double norm = std::pow(kTwoPi, static_cast<double>(mu.dim()));
  std::vector<Complex> v(grid.size());
  std::vector<Complex> t(mu.atoms().size());
  for (std::size_t k = 0; k < grid.size(); ++k) {
    Point z = grid.point(k);
    for (std::size_t j = 0; j < z.size(); ++j) z[j] *= r[j];
    for (std::size_t a = 0; a < t.size(); ++a) {
      t[a] = mu.atoms()[a].weight * (norm * poisson_kernel_n(z, mu.atoms()[a].z));
    }
    v[k] = pairwise_sum(t);
  }
  return TorusFunction(grid, std::move(v));
}

Complex torus_mean(const TorusFunction& f, const TorusFunction& g) {
  check_same_grid(f.grid(), g.grid());
  std::vector<Complex> t(f.values().size());
  for (std::size_t k = 0; k < t.size(); ++k) t[k] = f[k] * g[k];
  return pairwise_sum(t) / static_cast<double>(t.size());
}

}  // namespace harmonia::torus
