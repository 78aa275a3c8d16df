#include <doctest.h>

#include <cmath>
#include <numeric>
#include <random>

#include "gcim/adapt.hpp"
#include "gcim/errors.hpp"
#include "gcim/fcidump.hpp"
#include "gcim/shots.hpp"
#include "oracles.hpp"

using namespace gcim;

namespace {

const Problem& h4() {
  static const Problem p = make_problem(read_fcidump(GCIM_TEST_DATA "/h4_linear_1.0584.fcidump"));
  return p;
}

std::vector<StateVector> early_basis(int iterations) {
  AdaptConfig c;
  c.max_iterations = iterations;
  const AdaptTrace t = run_adapt_gcim(h4(), c);
  std::vector<StateVector> st;
  for (const auto& r : t.basis) st.push_back(prepare_state(r, h4()));
  return st;
}

struct Moments {
  double mean, var;
};

Moments sample_moments(const EntryEstimator& e, ShotMode mode, int draws, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  double s = 0.0, s2 = 0.0;
  for (int k = 0; k < draws; ++k) {
    const double x = sample_entry(e, mode, rng);
    s += x;
    s2 += x * x;
  }
  const double mean = s / draws;
  return {mean, (s2 - draws * mean * mean) / (draws - 1)};
}

std::vector<double> ranks(const std::vector<double>& v) {
  std::vector<std::size_t> idx(v.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](auto a, auto b) { return v[a] < v[b]; });
  std::vector<double> r(v.size());
  for (std::size_t k = 0; k < idx.size(); ++k) r[idx[k]] = static_cast<double>(k);
  return r;
}

double spearman(const std::vector<double>& a, const std::vector<double>& b) {
  const auto ra = ranks(a), rb = ranks(b);
  const double n = static_cast<double>(a.size());
  double d2 = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) d2 += (ra[k] - rb[k]) * (ra[k] - rb[k]);
  return 1.0 - 6.0 * d2 / (n * (n * n - 1.0));
}

}  // namespace

TEST_CASE("exact decomposition reproduces the projected matrices") {
  const auto st = early_basis(2);
  const ProjectedMatrices m = build_matrices(st, h4().hamiltonian);
  for (std::size_t i = 0; i < st.size(); ++i)
    for (std::size_t j = 0; j < st.size(); ++j) {
      const EntryEstimator e = exact_decomposition(st[i], h4().hamiltonian, st[j]);
      CHECK(std::abs(e.mean() - m.h(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)).real()) < 1e-10);
      for (double p : e.p) CHECK(std::abs(p) <= 1.0);
    }

  PauliSum h = PauliSum::identity(2, 0.7);
  h.add(PauliString::parse("ZI"), 0.0);
  h.add(PauliString::parse("XX"), 0.3);
  std::mt19937_64 rng(1);
  const StateVector a = oracle::random_state(rng, 2), b = oracle::random_state(rng, 2);
  const EntryEstimator e = exact_decomposition(a, h, b);
  CHECK(e.size() == 2);
  CHECK(e.p[0] == doctest::Approx(a.dot(b).real()).epsilon(1e-14));
  CHECK_THROWS_AS(exact_decomposition(a, PauliSum::identity(2, Complex{0.0, 1.0}), b), ConsistencyError);
}

TEST_CASE("sample_entry statistics") {
  SUBCASE("certain outcomes have no variance") {
    EntryEstimator e{{0.5, -2.0}, {1.0, -1.0}, {7, 9}};
    std::mt19937_64 rng(3);
    CHECK(sample_entry(e, ShotMode::Binomial, rng) == doctest::Approx(2.5));
    CHECK(sample_entry(e, ShotMode::Gaussian, rng) == doctest::Approx(2.5));
  }
  SUBCASE("single fair term") {
    EntryEstimator e{{1.0}, {0.0}, {100}};
    CHECK(e.variance() == doctest::Approx(0.01));
    for (ShotMode mode : {ShotMode::Binomial, ShotMode::Gaussian}) {
      const Moments m = sample_moments(e, mode, 100000, 7);
      CHECK(std::abs(m.var / 0.01 - 1.0) < 0.05);
      CHECK(std::abs(m.mean) < 4.0 * std::sqrt(0.01 / 100000));
    }
  }
  SUBCASE("random decompositions follow the variance law") {
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::uniform_int_distribution<int> terms(1, 50), shots(10, 1000);
    for (int trial = 0; trial < 5; ++trial) {
      EntryEstimator e;
      const int n = terms(rng);
      for (int k = 0; k < n; ++k) {
        e.c.push_back(u(rng));
        e.p.push_back(0.95 * u(rng));
        e.shots.push_back(shots(rng));
      }
      const Moments m = sample_moments(e, ShotMode::Binomial, 100000, 100 + trial);
      CHECK(std::abs(m.var / e.variance() - 1.0) < 0.05);
      CHECK(std::abs(m.mean - e.mean()) < 4.0 * std::sqrt(e.variance() / 100000));
    }
  }
  CHECK_THROWS_AS(EntryEstimator({{1.0}, {0.0}, {}}).variance(), ContractViolation);
}

TEST_CASE("shot allocation") {
  CHECK(allocate_shots_is({1.0, 3.0}, 100.0, 2) == std::vector<std::int64_t>{50, 150});
  CHECK(allocate_shots_is({-2.0, 2.0, 2.0}, 40.0, 3) == std::vector<std::int64_t>{40, 40, 40});
  CHECK(allocate_shots_is({1.0, 0.0, 1e-9}, 10.0, 3) == std::vector<std::int64_t>{30, 0, 1});
  CHECK_THROWS_AS(allocate_shots_is({0.0, 0.0}, 10.0, 2), ContractViolation);
  CHECK(allocate_shots_uniform(3, 25.0) == std::vector<std::int64_t>{25, 25, 25});

  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + trial % 40;
    EntryEstimator e;
    for (std::size_t k = 0; k < n; ++k) {
      e.c.push_back(u(rng));
      e.p.push_back(0.0);
    }
    const double tau = 1000.0;
    e.shots = allocate_shots_is(e.c, tau, n);
    const auto total = std::accumulate(e.shots.begin(), e.shots.end(), std::int64_t{0});
    CHECK(std::abs(static_cast<double>(total) - tau * n) <= static_cast<double>(n));
    const double is_var = e.variance();
    e.shots = allocate_shots_uniform(n, tau);
    CHECK(is_var <= e.variance() * (1.0 + 1e-3));
  }
}

TEST_CASE("chebyshev shot budget") {
  CHECK(chebyshev_shots({1.0}, 1e-4, 1.0) == 100000000);
  CHECK(chebyshev_shots({1.0}, 5e-5, 1.0) == 4 * chebyshev_shots({1.0}, 1e-4, 1.0));
  CHECK(chebyshev_shots({1.0}, 1e-4, 1.0, {0.6}) == 64000000);
  CHECK_THROWS_AS(chebyshev_shots({1.0}, 0.0, 0.5), ContractViolation);

  std::vector<double> coeffs;
  for (const auto& [p, c] : h4().hamiltonian.terms()) coeffs.push_back(c.real());
  for (double eta : {0.01, 0.05}) {
    const auto n = chebyshev_shots(coeffs, 1e-4, eta);
    CHECK(n > 1e9);
    CHECK(n < 1e13);
  }
}

TEST_CASE("perturbed matrices") {
  const auto st = early_basis(3);
  MatrixDecomposition d = decompose_matrices(st, h4().hamiltonian);
  CHECK(d.entry(2, 1) == d.entry(1, 2));
  CHECK(d.entry(0, 0) == 0);
  CHECK(d.entry(d.dim - 1, d.dim - 1) == d.h.size() - 1);

  ShotConfig big;
  big.mode = ShotMode::Gaussian;
  big.tau = 1e14;
  allocate(d, big);
  const ProjectedMatrices m = perturb_matrices(d, big, 0);
  CHECK((m.h - d.exact.h).cwiseAbs().maxCoeff() < 1e-6);
  CHECK((m.s - d.exact.s).cwiseAbs().maxCoeff() < 1e-6);

  ShotConfig small;
  small.tau = 50;
  allocate(d, small);
  const ProjectedMatrices a = perturb_matrices(d, small, 4), b = perturb_matrices(d, small, 4);
  CHECK(a.h == b.h);
  CHECK(a.s == b.s);
  CHECK(a.h.isApprox(a.h.adjoint()));
  CHECK(perturb_matrices(d, small, 5).h != a.h);

  int indefinite = 0;
  for (std::uint64_t run = 0; run < 50; ++run) {
    const ProjectedMatrices n = perturb_matrices(d, small, run);
    if (Eigen::SelfAdjointEigenSolver<MatrixXc>(n.s).eigenvalues()(0) < 0) ++indefinite;
    CHECK_NOTHROW(solve_gevp(n.h, n.s, 1e-5));
  }
  CHECK(indefinite > 0);
}

TEST_CASE("Monte Carlo experiment") {
  const auto st = early_basis(3);
  MatrixDecomposition d = decompose_matrices(st, h4().hamiltonian);
  const double exact = solve_gevp(d.exact.h, d.exact.s, 1e-5).eigenvalues(0);

  ShotConfig quiet;
  quiet.mode = ShotMode::Gaussian;
  quiet.tau = 1e18;
  quiet.s_multiplier = 1.0;
  allocate(d, quiet);
  const McSummary z = mc_experiment(d, exact, quiet, 10);
  CHECK(z.ci_high < 1e-7);
  CHECK(z.ci_low <= z.median_error);
  CHECK(z.median_error <= z.ci_high);
  CHECK_THROWS_AS(mc_experiment(d, exact, quiet, 1), ConfigError);

  std::vector<double> taus, errs;
  for (double lt = 3.0; lt <= 7.0; lt += 0.5) {
    ShotConfig c;
    c.mode = ShotMode::Gaussian;
    c.tau = std::pow(10.0, lt);
    c.seed = 2;
    allocate(d, c);
    taus.push_back(c.tau);
    errs.push_back(mc_experiment(d, exact, c, 100).mean_error);
  }
  CHECK(spearman(taus, errs) < -0.9);
}

TEST_CASE("hf_filter") {
  CHECK(hf_filter(0.35) == 1);
  CHECK(hf_filter(-0.5) == -1);
  CHECK(hf_filter(0.1) == 0);
  CHECK(hf_filter(0.2) == 0);
  std::mt19937_64 rng(4);
  std::uniform_int_distribution<int> truth(-1, 1);
  std::uniform_real_distribution<double> noise(-0.199, 0.199);
  for (int k = 0; k < 10000; ++k) {
    const int t = truth(rng);
    CHECK(hf_filter(t + noise(rng)) == t);
  }
}

TEST_CASE("shot config validation") {
  ShotConfig c;
  CHECK_NOTHROW(c.validate());
  c.tau = 0.5;
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c = ShotConfig{};
  c.s_multiplier = 0.0;
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c = ShotConfig{};
  c.tau = 1e17;
  CHECK_THROWS_AS(c.validate(), ConfigError);
  CHECK(parse_shot_mode("gaussian") == ShotMode::Gaussian);
  CHECK_THROWS_AS(parse_shot_mode("poisson"), ConfigError);
}
