#include <doctest.h>

#include <random>

#include "gcim/errors.hpp"
#include "gcim/fermion.hpp"
#include "gcim/spectrum.hpp"
#include "gcim/statevector.hpp"
#include "oracles.hpp"

using namespace gcim;

TEST_CASE("hf_state occupation convention") {
  CHECK(hf_index(4, 1, 1) == 3);
  CHECK(hf_index(8, 2, 2) == 15);
  CHECK(hf_index(8, 2, 1) == 7);
  CHECK(hf_state(4, 1, 1)(3) == Complex(1.0));
  CHECK_THROWS_AS(hf_state(4, 3, 0), RangeError);

  FermionOperator n0;
  n0.n_modes = 4;
  n0.terms.push_back({1.0, {0}, {0}});
  const StateVector hf = hf_state(4, 1, 1);
  CHECK((hf.adjoint() * oracle::sum_dense(jordan_wigner(n0)) * hf)(0, 0) == Complex(1.0));
}

TEST_CASE("apply_paulisum") {
  std::mt19937_64 rng(9);
  const StateVector v = oracle::random_state(rng, 3);
  CHECK((apply_paulisum(PauliSum::identity(3), v) - v).norm() == 0.0);

  const auto z0 = PauliSum::single(PauliString::parse("ZII"));
  const StateVector one = basis_state(3, 1);
  CHECK((apply_paulisum(z0, one) + one).norm() == 0.0);

  for (int n = 1; n <= 6; ++n) {
    const auto h = oracle::random_hermitian(rng, n, 15);
    const StateVector w = oracle::random_state(rng, n);
    CHECK((apply_paulisum(h, w) - oracle::sum_dense(h) * w).cwiseAbs().maxCoeff() < 1e-12);
  }
  CHECK_THROWS_AS(apply_paulisum(PauliSum::identity(2), v), ShapeError);
}

TEST_CASE("expectation") {
  std::mt19937_64 rng(10);
  const StateVector v = oracle::random_state(rng, 4);
  CHECK(std::abs(expectation(v, PauliSum::identity(4), v) - 1.0) < 1e-14);
  const auto z0 = PauliSum::single(PauliString::parse("ZIII"));
  CHECK(expectation(basis_state(4, 0), z0, basis_state(4, 0)) == Complex(1.0));
  CHECK(expectation(basis_state(4, 1), z0, basis_state(4, 1)) == Complex(-1.0));
  for (int t = 0; t < 20; ++t) {
    const auto h = oracle::random_hermitian(rng, 4, 10);
    const StateVector w = oracle::random_state(rng, 4);
    CHECK(std::abs(expectation(w, h, w).imag()) < 1e-12);
  }
  const StateVector w = oracle::random_state(rng, 4);
  CHECK(std::abs(expectation(v, PauliSum::identity(4), w) - v.dot(w)) < 1e-14);
}

TEST_CASE("exp_apply against the dense exponential") {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> th(-kPi, kPi);
  for (int n = 1; n <= 6; ++n)
    for (int t = 0; t < 3; ++t) {
      const auto a = oracle::random_anti_hermitian(rng, n, 6);
      const StateVector v = oracle::random_state(rng, n);
      const double theta = th(rng);
      const StateVector w = exp_apply(a, theta, v);
      CHECK(std::abs(w.norm() - 1.0) < 1e-12);
      const MatrixXc ref = oracle::expm_anti_hermitian(oracle::sum_dense(a), theta);
      CHECK((w - ref * v).cwiseAbs().maxCoeff() < 1e-10);
      CHECK((exp_apply(a, -theta, w) - v).cwiseAbs().maxCoeff() < 1e-10);
      CHECK((exp_apply(compile_generator(a), theta, v) - w).cwiseAbs().maxCoeff() < 1e-12);
    }
  const auto a = oracle::random_anti_hermitian(rng, 2, 4);
  const StateVector v = oracle::random_state(rng, 2);
  CHECK((exp_apply(a, 0.0, v) - v).norm() == 0.0);
  CHECK_THROWS_AS(exp_apply(PauliSum::identity(2), 0.1, v), ContractViolation);
}

TEST_CASE("exact_spectrum trivial and dense-oracle cases") {
  auto mz = PauliSum::single(PauliString::parse("Z"), -1.0);
  auto s = exact_spectrum(mz, 1);
  CHECK(s.eigenvalues(0) == doctest::Approx(-1.0));
  CHECK(std::abs(s.ground_state(0)) == doctest::Approx(1.0));
  auto pz = exact_spectrum(PauliSum::single(PauliString::parse("Z")), 1);
  CHECK(pz.eigenvalues(0) == doctest::Approx(-1.0));
  CHECK(std::abs(pz.ground_state(1)) == doctest::Approx(1.0));

  auto c = exact_spectrum(PauliSum::identity(3, 0.7), 8);
  for (Eigen::Index k = 0; k < 8; ++k) CHECK(c.eigenvalues(k) == doctest::Approx(0.7));

  std::mt19937_64 rng(13);
  const auto h = oracle::random_hermitian(rng, 4, 20);
  const auto spec = exact_spectrum(h, 16);
  // Roots of the characteristic polynomial via the companion route: a general
  // (non-Hermitian) eigensolver on the Kronecker-built matrix.
  Eigen::ComplexEigenSolver<MatrixXc> ces(oracle::sum_dense(h));
  std::vector<double> roots;
  for (auto z : ces.eigenvalues()) roots.push_back(z.real());
  std::sort(roots.begin(), roots.end());
  for (int k = 0; k < 16; ++k) CHECK(std::abs(spec.eigenvalues(k) - roots[k]) < 1e-9);
  CHECK(spec.residuals.maxCoeff() < 1e-9);
  CHECK_THROWS_AS(exact_spectrum(PauliSum::identity(17), 1), ResourceError);
}

TEST_CASE("Lanczos agrees with dense diagonalization") {
  std::mt19937_64 rng(14);
  const auto h = oracle::random_hermitian(rng, 9, 60);
  const auto dense = exact_spectrum(h, 4);
  LanczosOptions opts;
  opts.krylov_dim = 40;
  const auto lz = lanczos_lowest(to_sparse(h), 4, opts);
  CHECK((dense.eigenvalues - lz.eigenvalues).cwiseAbs().maxCoeff() < 1e-9);
  CHECK(lz.residuals.maxCoeff() < 1e-9);
}

TEST_CASE("sector spectrum") {
  // Two electrons in two orbitals of a Hubbard dimer: exact ground energy 1 - sqrt(5) at t=1, U=2.
  FermionOperator h;
  h.n_modes = 4;
  for (int s = 0; s < 2; ++s) {
    h.terms.push_back({-1.0, {s}, {2 + s}});
    h.terms.push_back({-1.0, {2 + s}, {s}});
  }
  h.terms.push_back({2.0, {0, 1}, {1, 0}});
  h.terms.push_back({2.0, {2, 3}, {3, 2}});
  const auto q = jordan_wigner(h);
  const auto sec = exact_spectrum(q, 2, Sector{1, 1, false});
  CHECK(sec.eigenvalues(0) == doctest::Approx(1.0 - std::sqrt(5.0)).epsilon(1e-12));
  const auto singlet = exact_spectrum(q, 3, Sector{1, 1, true});
  CHECK(singlet.eigenvalues.size() == 3);
  CHECK(singlet.eigenvalues(0) == doctest::Approx(1.0 - std::sqrt(5.0)).epsilon(1e-12));
  CHECK(singlet.residuals.maxCoeff() < 1e-9);
  // Sz = 0 triplet at zero energy is excluded from the singlet list.
  CHECK(sec.eigenvalues(1) == doctest::Approx(0.0));
  CHECK(singlet.eigenvalues(1) == doctest::Approx(2.0));
}
