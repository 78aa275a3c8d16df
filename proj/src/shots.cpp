#include "gcim/shots.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "gcim/errors.hpp"
#include "gcim/parallel.hpp"

namespace gcim {

namespace {

constexpr double kImagTol = 1e-10;

// Linear interpolation between order statistics.
double percentile(std::vector<double> v, double q) {
  std::sort(v.begin(), v.end());
  const double pos = q * static_cast<double>(v.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, v.size() - 1);
  return v[lo] + (pos - static_cast<double>(lo)) * (v[hi] - v[lo]);
}

std::mt19937_64 entry_stream(std::uint64_t seed, std::uint64_t run, std::uint64_t matrix,
                             std::uint64_t entry) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(run), static_cast<std::uint32_t>(run >> 32),
                    static_cast<std::uint32_t>(matrix), static_cast<std::uint32_t>(entry),
                    static_cast<std::uint32_t>(entry >> 32)};
  return std::mt19937_64(seq);
}

}  // namespace

const char* to_string(ShotMode m) { return m == ShotMode::Binomial ? "binomial" : "gaussian"; }

ShotMode parse_shot_mode(const std::string& name) {
  if (name == "binomial") return ShotMode::Binomial;
  if (name == "gaussian") return ShotMode::Gaussian;
  throw ConfigError("unknown shot mode '" + name + "'");
}

void ShotConfig::validate() const {
  if (!(tau >= 1.0) || !std::isfinite(tau)) throw ConfigError("tau must be at least 1");
  if (!(s_multiplier >= 1.0) || !std::isfinite(s_multiplier))
    throw ConfigError("s_multiplier must be at least 1");
  if (tau * s_multiplier > 4e18) throw ConfigError("shot counts must stay below 4e18");
}

double EntryEstimator::mean() const {
  double m = 0.0;
  for (std::size_t k = 0; k < c.size(); ++k) m += c[k] * p[k];
  return m;
}

double EntryEstimator::variance() const {
  if (shots.size() != c.size()) throw ContractViolation("entry has no shot allocation");
  double v = 0.0;
  for (std::size_t k = 0; k < c.size(); ++k)
    if (shots[k] > 0) v += c[k] * c[k] * (1.0 - p[k] * p[k]) / static_cast<double>(shots[k]);
  return v;
}

EntryEstimator exact_decomposition(const StateVector& bra, const PauliSum& h, const StateVector& ket) {
  if (bra.size() != ket.size()) throw ShapeError("bra and ket lengths differ");
  EntryEstimator e;
  for (const auto& [pauli, coeff] : h.terms()) {
    if (std::abs(coeff.imag()) > kImagTol) throw ConsistencyError("Pauli coefficient is not real");
    if (coeff.real() == 0.0) continue;
    const Complex v = bra.dot(apply_pauli(pauli, ket));
    e.c.push_back(coeff.real());
    e.p.push_back(std::clamp(v.real(), -1.0, 1.0));
  }
  return e;
}

double sample_entry(const EntryEstimator& est, ShotMode mode, std::mt19937_64& rng) {
  if (est.shots.size() != est.c.size()) throw ContractViolation("entry has no shot allocation");
  double xi = 0.0;
  for (std::size_t k = 0; k < est.c.size(); ++k) {
    const std::int64_t n = est.shots[k];
    if (n <= 0) continue;
    const double p = est.p[k];
    const auto nd = static_cast<double>(n);
    double lambda;
    if (std::abs(p) >= 1.0) {
      lambda = p * nd;
    } else if (mode == ShotMode::Binomial) {
      std::binomial_distribution<std::int64_t> bin(n, 0.5 * (1.0 + p));
      lambda = 2.0 * static_cast<double>(bin(rng)) - nd;
    } else {
      std::normal_distribution<double> g(nd * p, std::sqrt(nd * (1.0 - p * p)));
      lambda = g(rng);
    }
    xi += est.c[k] * lambda / nd;
  }
  return xi;
}

std::vector<std::int64_t> allocate_shots_uniform(std::size_t n_terms, double tau) {
  return std::vector<std::int64_t>(n_terms, static_cast<std::int64_t>(std::llround(tau)));
}

std::vector<std::int64_t> allocate_shots_is(const std::vector<double>& coeffs, double tau,
                                            std::size_t n_term) {
  double total = 0.0;
  for (double c : coeffs) total += std::abs(c);
  if (!(total > 0.0)) throw ContractViolation("importance sampling needs a nonzero coefficient");
  std::vector<std::int64_t> out;
  out.reserve(coeffs.size());
  for (double c : coeffs) {
    if (c == 0.0) {
      out.push_back(0);
      continue;
    }
    const double n = std::abs(c) / total * tau * static_cast<double>(n_term);
    out.push_back(std::max<std::int64_t>(1, std::llround(n)));
  }
  return out;
}

std::int64_t chebyshev_shots(const std::vector<double>& coeffs, double a, double eta,
                             const std::vector<double>& p) {
  if (!(a > 0.0)) throw ContractViolation("accuracy a must be positive");
  if (!(eta > 0.0 && eta < 1.0 + 1e-15)) throw ContractViolation("eta must lie in (0, 1]");
  if (!p.empty() && p.size() != coeffs.size()) throw ShapeError("p and coefficient counts differ");
  double sum = 0.0;
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    const double pk = p.empty() ? 0.0 : p[k];
    sum += coeffs[k] * coeffs[k] * (1.0 - pk * pk);
  }
  // Relative guard so exact quotients such as 1e8 do not round up to 1e8 + 1.
  const double n = sum / (a * a * eta);
  return static_cast<std::int64_t>(std::ceil(n * (1.0 - 1e-12)));
}

std::size_t MatrixDecomposition::entry(Eigen::Index i, Eigen::Index j) const {
  if (i > j) std::swap(i, j);
  if (i < 0 || j >= dim) throw RangeError("matrix entry out of range");
  // Row-major upper triangle: rows 0..i-1 hold Σ (dim − r) entries.
  return static_cast<std::size_t>(i * dim - i * (i - 1) / 2 + (j - i));
}

MatrixDecomposition decompose_matrices(const std::vector<StateVector>& states, const PauliSum& h) {
  if (states.empty()) throw EmptySubspaceError("basis is empty");
  MatrixDecomposition d;
  d.dim = static_cast<Eigen::Index>(states.size());
  const std::size_t n_entries = static_cast<std::size_t>(d.dim * (d.dim + 1) / 2);
  d.h.resize(n_entries);
  d.s.resize(n_entries);
  d.exact = build_matrices(states, h);

  std::vector<std::pair<PauliString, double>> terms;
  for (const auto& [pauli, coeff] : h.terms()) {
    if (std::abs(coeff.imag()) > kImagTol) throw ConsistencyError("Pauli coefficient is not real");
    if (coeff.real() != 0.0) terms.emplace_back(pauli, coeff.real());
  }
  for (Eigen::Index j = 0; j < d.dim; ++j) {
    const auto& ket = states[static_cast<std::size_t>(j)];
    std::vector<StateVector> images(terms.size());
    parallel_for(terms.size(), [&](std::size_t k) { images[k] = apply_pauli(terms[k].first, ket); });
    for (Eigen::Index i = 0; i <= j; ++i) {
      const auto& bra = states[static_cast<std::size_t>(i)];
      const std::size_t e = d.entry(i, j);
      EntryEstimator& he = d.h[e];
      for (std::size_t k = 0; k < terms.size(); ++k) {
        he.c.push_back(terms[k].second);
        he.p.push_back(std::clamp(bra.dot(images[k]).real(), -1.0, 1.0));
      }
      const Complex ov = bra.dot(ket);
      if (std::abs(d.exact.h(i, j).imag()) > kImagTol || std::abs(ov.imag()) > kImagTol)
        throw ConsistencyError("projected matrices are not real");
      d.s[e].c = {1.0};
      d.s[e].p = {std::clamp(ov.real(), -1.0, 1.0)};
    }
  }
  return d;
}

void allocate(MatrixDecomposition& d, const ShotConfig& cfg) {
  cfg.validate();
  for (auto& e : d.h)
    e.shots = cfg.importance_sampling ? allocate_shots_is(e.c, cfg.tau, e.c.size())
                                      : allocate_shots_uniform(e.c.size(), cfg.tau);
  for (auto& e : d.s) e.shots = allocate_shots_uniform(1, cfg.tau * cfg.s_multiplier);
}

ProjectedMatrices perturb_matrices(const MatrixDecomposition& d, const ShotConfig& cfg,
                                   std::uint64_t run) {
  ProjectedMatrices out{MatrixXc(d.dim, d.dim), MatrixXc(d.dim, d.dim)};
  for (Eigen::Index i = 0; i < d.dim; ++i)
    for (Eigen::Index j = i; j < d.dim; ++j) {
      const std::size_t e = d.entry(i, j);
      auto rh = entry_stream(cfg.seed, run, 0, e);
      auto rs = entry_stream(cfg.seed, run, 1, e);
      out.h(i, j) = out.h(j, i) = sample_entry(d.h[e], cfg.mode, rh);
      out.s(i, j) = out.s(j, i) = sample_entry(d.s[e], cfg.mode, rs);
    }
  return out;
}

McSummary mc_experiment(const MatrixDecomposition& d, double exact_energy, const ShotConfig& cfg,
                        int runs, double threshold) {
  if (runs < 2) throw ConfigError("Monte Carlo needs at least two runs");
  McSummary out;
  out.errors.resize(static_cast<std::size_t>(runs));
  out.kept_dims.resize(static_cast<std::size_t>(runs));
  parallel_for(static_cast<std::size_t>(runs), [&](std::size_t r) {
    const ProjectedMatrices m = perturb_matrices(d, cfg, r);
    const auto res = solve_gevp(m.h, m.s, threshold);
    out.errors[r] = std::abs(res.eigenvalues(0) - exact_energy);
    out.kept_dims[r] = res.kept_dim;
  });
  out.mean_error = std::accumulate(out.errors.begin(), out.errors.end(), 0.0) / runs;
  out.median_error = percentile(out.errors, 0.5);
  out.ci_low = percentile(out.errors, 0.025);
  out.ci_high = percentile(out.errors, 0.975);
  return out;
}

int hf_filter(double value, double threshold) {
  if (value > threshold) return 1;
  if (value < -threshold) return -1;
  return 0;
}

}  // namespace gcim
