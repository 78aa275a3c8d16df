#include <doctest.h>

#include <cmath>
#include <random>

#include "gcim/adapt.hpp"
#include "gcim/errors.hpp"
#include "gcim/fcidump.hpp"
#include "gcim/models.hpp"
#include "oracles.hpp"

using namespace gcim;

namespace {

const Problem& toy() {
  static const Problem p = make_problem(hubbard_dimer());
  return p;
}

const Problem& h4() {
  static const Problem p = make_problem(read_fcidump(GCIM_TEST_DATA "/h4_linear_1.0584.fcidump"));
  return p;
}

const Problem& h4_square() {
  static const Problem p = make_problem(read_fcidump(GCIM_TEST_DATA "/h4_square_1.0584.fcidump"));
  return p;
}

std::size_t pool_index(const Problem& p, const std::string& label) {
  for (std::size_t k = 0; k < p.pool_size(); ++k)
    if (p.pool[k].label == label) return k;
  FAIL("missing pool label " << label);
  return 0;
}

BasisRecipe random_recipe(std::mt19937_64& rng, const Problem& p, int factors) {
  std::uniform_int_distribution<std::size_t> op(0, p.pool_size() - 1);
  std::uniform_real_distribution<double> ang(-kPi, kPi);
  BasisRecipe r;
  for (int k = 0; k < factors; ++k) r.factors.push_back({op(rng), ang(rng)});
  return r;
}

// Minimum of a unimodal-near-the-bracket function by golden section.
template <class F>
double golden_min(F&& f, double a, double b) {
  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  double c = b - g * (b - a), d = a + g * (b - a);
  double fc = f(c), fd = f(d);
  for (int it = 0; it < 200 && b - a > 1e-13; ++it) {
    if (fc < fd) {
      b = d, d = c, fd = fc;
      c = b - g * (b - a), fc = f(c);
    } else {
      a = c, c = d, fc = fd;
      d = a + g * (b - a), fd = f(d);
    }
  }
  return std::min(fc, fd);
}

void check_monotone(const AdaptTrace& t) {
  for (std::size_t k = 1; k < t.iterations.size(); ++k)
    CHECK(t.iterations[k].energy <= t.iterations[k - 1].energy + 1e-10);
}

}  // namespace

TEST_CASE("bfgs minimizes smooth objectives") {
  const Objective rosen = [](const Eigen::VectorXd& x, Eigen::VectorXd& g) {
    g.resize(2);
    g(0) = -2 * (1 - x(0)) - 400 * x(0) * (x(1) - x(0) * x(0));
    g(1) = 200 * (x(1) - x(0) * x(0));
    return std::pow(1 - x(0), 2) + 100 * std::pow(x(1) - x(0) * x(0), 2);
  };
  const BfgsResult r = bfgs_minimize(rosen, Eigen::Vector2d(-1.2, 1.0));
  CHECK(r.converged());
  CHECK(r.x(0) == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(r.x(1) == doctest::Approx(1.0).epsilon(1e-8));

  const Objective bowl = [](const Eigen::VectorXd& x, Eigen::VectorXd& g) {
    g = 2.0 * x;
    return x.squaredNorm();
  };
  const BfgsResult z = bfgs_minimize(bowl, Eigen::Vector3d::Zero());
  CHECK(z.rounds == 0);
  CHECK(z.converged());

  BfgsOptions capped;
  capped.max_rounds = 2;
  const BfgsResult c = bfgs_minimize(rosen, Eigen::Vector2d(-1.2, 1.0), capped);
  CHECK(c.rounds == 2);
  CHECK(c.status == BfgsStatus::BudgetExhausted);
  CHECK(c.value <= 24.2 + 1e-12);
}

TEST_CASE("ansatz gradient matches central differences") {
  std::mt19937_64 rng(11);
  const Problem& p = h4();
  for (int trial = 0; trial < 8; ++trial) {
    const BasisRecipe r = random_recipe(rng, p, 1 + trial % 5);
    const AnsatzValue v = ansatz_energy_gradient(r, p);
    CHECK(v.energy == doctest::Approx(p.energy(prepare_state(r, p))).epsilon(1e-12));
    const double h = 1e-5;
    for (std::size_t j = 0; j < r.size(); ++j) {
      BasisRecipe up = r, dn = r;
      up.factors[j].theta += h;
      dn.factors[j].theta -= h;
      const double fd =
          (p.energy(prepare_state(up, p)) - p.energy(prepare_state(dn, p))) / (2 * h);
      const double g = v.gradient(static_cast<Eigen::Index>(j));
      CHECK(std::abs(g - fd) / std::max(std::abs(fd), 1e-4) < 1e-6);
    }
  }
}

TEST_CASE("single-rotation VQE matches a dense grid minimum") {
  const Problem& p = toy();
  const std::size_t op = pool_index(p, "singlet(0,0,1,1)");
  const MatrixXc h = oracle::sum_dense(p.hamiltonian);
  const MatrixXc a = oracle::sum_dense(p.pool[op].qubit);
  const Complex i{0.0, 1.0};
  Eigen::SelfAdjointEigenSolver<MatrixXc> es(i * a);
  auto energy = [&](double theta) {
    Eigen::VectorXcd ph(es.eigenvalues().size());
    for (Eigen::Index k = 0; k < ph.size(); ++k) ph(k) = std::exp(-i * theta * es.eigenvalues()(k));
    const Eigen::VectorXcd v =
        es.eigenvectors() * (ph.asDiagonal() * (es.eigenvectors().adjoint() * p.reference));
    return v.dot(h * v).real();
  };
  const int n = 100000;
  double best = 1e300, best_t = 0.0;
  for (int k = 0; k < n; ++k) {
    const double t = -kPi + 2 * kPi * k / n;
    const double e = energy(t);
    if (e < best) best = e, best_t = t;
  }
  const double step = 2 * kPi / n;
  const double oracle_min = golden_min(energy, best_t - step, best_t + step);

  const VqeResult r = vqe_minimize(BasisRecipe{{{op, 0.0}}}, p);
  CHECK(r.status == BfgsStatus::Converged);
  CHECK(std::abs(r.energy - oracle_min) < 1e-9);
  CHECK(r.energy <= best + 1e-12);
  CHECK(r.energy == doctest::Approx(1.0 - std::sqrt(5.0)).epsilon(1e-10));

  const VqeResult again = vqe_minimize(r.recipe, p);
  CHECK(again.rounds == 0);
  CHECK(again.recipe == r.recipe);
  CHECK_THROWS_AS(vqe_minimize(BasisRecipe{}, p), ContractViolation);
}

TEST_CASE("select_operator") {
  const Problem& p = h4();
  SUBCASE("identity Hamiltonian ties at zero") {
    Problem q = p;
    q.h_matrix = to_sparse(PauliSum::identity(p.n_qubits));
    const Selection s = select_operator(q.reference, q);
    CHECK(s.index == 0);
    for (double g : s.gradients) CHECK(g == 0.0);
    CHECK(select_operator(q.reference, q, {0, 1}).index == 2);
  }
  SUBCASE("gradients match dense commutators") {
    const Problem q = make_problem(hubbard_chain(3, 1.0, 3.0));
    std::mt19937_64 rng(5);
    const StateVector psi = oracle::random_state(rng, q.n_qubits);
    const MatrixXc h = oracle::sum_dense(q.hamiltonian);
    const Selection s = select_operator(psi, q);
    for (std::size_t l = 0; l < q.pool_size(); ++l) {
      const MatrixXc a = oracle::sum_dense(q.pool[l].qubit);
      const double dense = psi.dot((h * a - a * h) * psi).real();
      CHECK(std::abs(s.gradients[l] - dense) < 1e-10);
    }
  }
  SUBCASE("occupied-occupied and virtual-virtual singles vanish at HF") {
    const Selection s = select_operator(p.reference, p);
    CHECK(s.gradients[pool_index(p, "single(1,0)")] == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(s.gradients[pool_index(p, "single(3,2)")] == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(s.index == pool_index(p, "singlet(0,1,2,3)"));
  }
  SUBCASE("nothing selectable") {
    std::set<std::size_t> all;
    for (std::size_t l = 0; l < p.pool_size(); ++l) all.insert(l);
    CHECK_THROWS_AS(select_operator(p.reference, p, all), EmptySubspaceError);
  }
}

TEST_CASE("adapt config validation") {
  AdaptConfig c;
  CHECK_NOTHROW(c.validate());
  c.gcim_tol = 0.0;
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c = AdaptConfig{};
  c.m = 0;
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c = AdaptConfig{};
  c.n = -1;
  CHECK_THROWS_AS(c.validate(), ConfigError);
  CHECK(parse_algorithm("adapt-vqe-gcim-1") == Algorithm::AdaptVqeGcimOneShot);
  CHECK_THROWS_AS(parse_algorithm("vqe"), ConfigError);
}

TEST_CASE("ADAPT-GCIM") {
  const AdaptConfig cfg;
  SUBCASE("toy model reaches the exact ground energy") {
    AdaptTrace t = run_adapt_gcim(toy(), cfg);
    attach_exact(t, exact_reference(toy()));
    CHECK(t.converged);
    CHECK(*t.error < 1e-10);
    CHECK(*t.exact_energy == doctest::Approx(1.0 - std::sqrt(5.0)).epsilon(1e-12));
    CHECK(t.iterations.front().added.size() == 2);
    CHECK(t.iterations.front().added.front().empty());
    check_monotone(t);
  }
  SUBCASE("linear H4 selects the (0,1,2,3) singlet first and converges") {
    AdaptTrace t = run_adapt_gcim(h4(), cfg);
    attach_exact(t, exact_reference(h4()));
    CHECK(t.iterations.front().label == "singlet(0,1,2,3)");
    CHECK(t.converged);
    CHECK(*t.error < 1e-8);
    check_monotone(t);
    for (const auto& r : t.iterations) CHECK(r.subspace_dim <= 2 * static_cast<std::size_t>(r.iteration));
    std::set<std::size_t> seen;
    for (const auto& r : t.iterations) CHECK(seen.insert(r.selected).second);
  }
  SUBCASE("pool exhaustion is exact") {
    AdaptConfig c = cfg;
    c.exhaust_pool = true;
    AdaptTrace t = run_adapt_gcim(h4_square(), c);
    attach_exact(t, exact_reference(h4_square()));
    CHECK(t.stop_reason == "pool-exhausted");
    CHECK(t.iterations.size() == h4_square().pool_size());
    CHECK(*t.error < 1e-8);
    CHECK(*t.overlap_deficit < 1e-6);
  }
  SUBCASE("max_iterations flags the trace unconverged") {
    AdaptConfig c = cfg;
    c.max_iterations = 2;
    const AdaptTrace t = run_adapt_gcim(h4(), c);
    CHECK_FALSE(t.converged);
    CHECK(t.iterations.size() == 2);
  }
  SUBCASE("deterministic") {
    const AdaptTrace a = run_adapt_gcim(h4(), cfg), b = run_adapt_gcim(h4(), cfg);
    REQUIRE(a.iterations.size() == b.iterations.size());
    for (std::size_t k = 0; k < a.iterations.size(); ++k) {
      CHECK(a.iterations[k].energy == b.iterations[k].energy);
      CHECK(a.iterations[k].selected == b.iterations[k].selected);
    }
  }
  SUBCASE("gevp solver agrees on a small run") {
    AdaptConfig c = cfg;
    c.solver = SubspaceSolver::Gevp;
    const AdaptTrace g = run_adapt_gcim(h4(), c), o = run_adapt_gcim(h4(), cfg);
    CHECK(std::abs(g.final_energy - o.final_energy) < 1e-8);
  }
}

TEST_CASE("ADAPT-VQE") {
  AdaptTrace t = run_adapt_vqe(toy(), AdaptConfig{});
  attach_exact(t, exact_reference(toy()));
  CHECK(t.converged);
  CHECK(*t.error < 1e-8);

  AdaptTrace h = run_adapt_vqe(h4(), AdaptConfig{});
  CHECK(h.converged);
  check_monotone(h);
  CHECK(h.total_rounds > 0);

  Problem empty = toy();
  empty.pool.clear();
  empty.generators.clear();
  CHECK_THROWS_AS(run_adapt_vqe(empty, AdaptConfig{}), EmptySubspaceError);
}

TEST_CASE("ADAPT-VQE-GCIM") {
  const AdaptTrace vqe = run_adapt_vqe(h4(), AdaptConfig{});
  const AdaptTrace t = run_adapt_vqe_gcim(h4(), AdaptConfig{});
  for (const auto& r : t.iterations) CHECK(r.energy <= *r.vqe_energy + 1e-10);
  check_monotone(t);
  CHECK(t.final_energy <= vqe.final_energy + 1e-10);

  AdaptConfig one;
  one.max_iterations = 1;
  const AdaptTrace s = run_adapt_vqe_gcim(h4(), one);
  CHECK(s.iterations.size() == 1);
  CHECK(s.iterations.front().subspace_dim == 2);
}

TEST_CASE("ADAPT-VQE-GCIM(1)") {
  const AdaptTrace t = run_adapt_vqe_gcim_one_shot(h4(), AdaptConfig{});
  REQUIRE(t.vqe_energy);
  CHECK(t.basis.size() == t.basis.back().size() + 1);
  CHECK(t.final_energy <= *t.vqe_energy + 1e-10);

  // One converged rotation: the two basis vectors coincide, so the solve is the
  // direct 2×2 problem on {G(θ*)|HF⟩, G(θ*)|HF⟩}.
  const AdaptTrace s = run_adapt_vqe_gcim_one_shot(toy(), AdaptConfig{});
  REQUIRE(s.basis.size() == 2);
  const StateVector v = prepare_state(s.basis.front(), toy());
  std::vector<StateVector> pair{v, v};
  const ProjectedMatrices m = build_matrices(pair, toy().h_matrix);
  const auto direct = solve_gevp(m.h, m.s);
  CHECK(s.final_energy == doctest::Approx(direct.eigenvalues(0)).epsilon(1e-12));
  CHECK(s.final_energy == doctest::Approx(*s.vqe_energy).epsilon(1e-12));
}

TEST_CASE("ADAPT-GCIM(m,n)") {
  AdaptConfig never;
  never.m = 1000000;
  const AdaptTrace plain = run_adapt_gcim(h4_square(), AdaptConfig{});
  const AdaptTrace mn = run_adapt_gcim_mn(h4_square(), never);
  REQUIRE(plain.iterations.size() == mn.iterations.size());
  for (std::size_t k = 0; k < plain.iterations.size(); ++k)
    CHECK(plain.iterations[k].energy == mn.iterations[k].energy);
  CHECK(mn.total_rounds == 0);

  AdaptConfig c;
  c.m = 5;
  c.n = 2;
  AdaptTrace t = run_adapt_gcim_mn(h4_square(), c);
  attach_exact(t, exact_reference(h4_square()));
  const int iters = static_cast<int>(t.iterations.size());
  CHECK(t.converged);
  CHECK(t.total_rounds <= 2 * (iters / 5));
  CHECK(*t.error < 1e-8);
  check_monotone(t);
  for (const auto& r : t.iterations)
    if (r.iteration % 5 != 0) CHECK(r.rounds == 0);
}

TEST_CASE("subspace energy gradient") {
  const Problem& p = h4();
  SUBCASE("errors and absent parameters") {
    const std::vector<BasisRecipe> basis{BasisRecipe{}, BasisRecipe{{{3, 0.4}}}};
    std::vector<StateVector> st;
    for (const auto& r : basis) st.push_back(prepare_state(r, p));
    const ProjectedMatrices m = build_matrices(st, p.h_matrix);
    const auto res = solve_gevp(m.h, m.s);
    CHECK(gcim_energy_gradient(basis, res, p, 7) == 0.0);
    CHECK_THROWS_AS(gcim_energy_gradient(basis, res, p, p.pool_size()), RangeError);
  }
  SUBCASE("one basis vector reduces to the ansatz gradient") {
    const std::vector<BasisRecipe> basis{BasisRecipe{{{5, 0.3}, {9, -0.7}}}};
    const StateVector v = prepare_state(basis[0], p);
    const ProjectedMatrices m = build_matrices({v}, p.h_matrix);
    const auto res = solve_gevp(m.h, m.s);
    const AnsatzValue a = ansatz_energy_gradient(basis[0], p);
    CHECK(gcim_energy_gradient(basis, res, p, 9) == doctest::Approx(a.gradient(1)).epsilon(1e-10));
  }
  SUBCASE("central differences on random subspaces") {
    std::mt19937_64 rng(23);
    int done = 0;
    while (done < 10) {
      std::vector<BasisRecipe> basis{BasisRecipe{}};
      for (int b = 0; b < 4; ++b) basis.push_back(random_recipe(rng, p, 1 + b % 3));
      auto solve = [&](const std::vector<BasisRecipe>& bs) {
        std::vector<StateVector> st;
        for (const auto& r : bs) st.push_back(prepare_state(r, p));
        const ProjectedMatrices m = build_matrices(st, p.h_matrix);
        return std::make_pair(solve_gevp(m.h, m.s), Eigen::SelfAdjointEigenSolver<MatrixXc>(m.s).eigenvalues()(0));
      };
      const auto [res, smin] = solve(basis);
      if (smin < 1e-3 || res.eigenvalues(1) - res.eigenvalues(0) < 1e-3) continue;
      const std::size_t s = basis[1 + done % 4].factors.front().op;
      auto shifted = [&](double h) {
        auto bs = basis;
        for (auto& r : bs)
          for (auto& f : r.factors)
            if (f.op == s) f.theta += h;
        return solve(bs).first.eigenvalues(0);
      };
      const double h = 1e-5;
      const double fd = (shifted(h) - shifted(-h)) / (2 * h);
      const double g = gcim_energy_gradient(basis, res, p, s);
      CHECK(std::abs(g - fd) / std::max(std::abs(fd), 1e-4) < 1e-5);
      ++done;
    }
  }
}

TEST_CASE("UCC translation") {
  const Problem& p = toy();
  const BasisRecipe ucc = uccsd_recipe(p);
  CHECK(ucc.size() == p.pool_size());
  CHECK(ucc.factors.back().op == 0);

  const TranslateResult hf = ucc_translate(p.reference, ucc, p);
  CHECK(hf.deficit == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(hf.rounds == 0);
  CHECK(recipe_angles(hf.recipe).isZero());

  const ExactReference ex = exact_reference(p);
  const TranslateResult t = ucc_translate(ex.state, ucc, p);
  CHECK(t.deficit >= 0.0);
  CHECK(t.deficit <= 1.0);
  CHECK(t.deficit < 1e-4);
  CHECK(t.energy == doctest::Approx(ex.energy).epsilon(1e-6));

  CHECK_THROWS_AS(ucc_translate(2.0 * p.reference, ucc, p), ContractViolation);
}
