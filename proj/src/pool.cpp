#include "gcim/pool.hpp"

#include <cmath>

#include "gcim/errors.hpp"

namespace gcim {

namespace {

constexpr Spin U = Spin::Up;
constexpr Spin D = Spin::Down;

struct SpinPattern {
  double weight;
  Spin p, q, r, s;
};

constexpr SpinPattern kSinglet[] = {
    {1.0, U, D, U, D}, {-1.0, U, D, D, U}, {-1.0, D, U, U, D}, {1.0, D, U, D, U}};

constexpr SpinPattern kTriplet[] = {{2.0, U, U, U, U}, {1.0, U, D, U, D}, {1.0, U, D, D, U},
                                    {1.0, D, U, U, D}, {1.0, D, U, D, U}, {2.0, D, D, D, D}};

std::string make_label(OperatorKind kind, const std::array<int, 4>& s) {
  std::string out = to_string(kind);
  out += '(' + std::to_string(s[0]) + ',' + std::to_string(s[1]);
  if (kind != OperatorKind::Single) out += ',' + std::to_string(s[2]) + ',' + std::to_string(s[3]);
  return out + ')';
}

}  // namespace

const char* to_string(OperatorKind k) {
  switch (k) {
    case OperatorKind::Single: return "single";
    case OperatorKind::DoubleSinglet: return "singlet";
    default: return "triplet";
  }
}

FermionOperator spin_adapted_excitation(OperatorKind kind, const std::array<int, 4>& sp,
                                        int n_spatial) {
  FermionOperator e;
  e.n_modes = 2 * n_spatial;
  const int nind = kind == OperatorKind::Single ? 2 : 4;
  for (int a = 0; a < nind; ++a)
    if (sp[a] < 0 || sp[a] >= n_spatial) throw RangeError("spatial index out of range");
  if (kind == OperatorKind::Single) {
    for (Spin s : {U, D}) e.terms.push_back({1.0, {spin_orbital(sp[0], s)}, {spin_orbital(sp[1], s)}});
    return e;
  }
  auto add = [&](const SpinPattern& pat) {
    e.terms.push_back({pat.weight,
                       {spin_orbital(sp[0], pat.p), spin_orbital(sp[1], pat.q)},
                       {spin_orbital(sp[2], pat.r), spin_orbital(sp[3], pat.s)}});
  };
  if (kind == OperatorKind::DoubleSinglet) {
    for (const auto& pat : kSinglet) add(pat);
  } else {
    for (const auto& pat : kTriplet) add(pat);
  }
  return e;
}

std::vector<PoolOperator> build_pool(int n_spatial) {
  if (n_spatial < 2) throw RangeError("pool needs at least two spatial orbitals");
  if (2 * n_spatial > kMaxQubits) throw ResourceError("too many spin orbitals for the pool");
  const int nq = 2 * n_spatial;
  std::vector<PoolOperator> pool;

  auto emit = [&](OperatorKind kind, std::array<int, 4> sp) {
    FermionOperator e = normal_ordered(spin_adapted_excitation(kind, sp, n_spatial));
    double norm2 = 0.0;
    for (const auto& t : e.terms) norm2 += std::norm(t.coefficient);
    if (norm2 < 1e-24) return;
    e *= 1.0 / std::sqrt(norm2);
    FermionOperator t = e;
    t -= e.adjoint();
    t = normal_ordered(t);
    if (t.terms.empty()) return;
    PauliSum q = jordan_wigner(t, nq);
    if (q.empty()) return;
    pool.push_back({kind, sp, std::move(e), std::move(t), std::move(q), make_label(kind, sp)});
  };

  for (int p = 1; p < n_spatial; ++p)
    for (int q = 0; q < p; ++q) emit(OperatorKind::Single, {p, q, -1, -1});
  for (int p = 0; p < n_spatial; ++p)
    for (int q = p; q < n_spatial; ++q)
      for (int r = 0; r < n_spatial; ++r)
        for (int s = r; s < n_spatial; ++s) {
          if (std::make_pair(p, q) >= std::make_pair(r, s)) continue;
          emit(OperatorKind::DoubleSinglet, {p, q, r, s});
          emit(OperatorKind::DoubleTriplet, {p, q, r, s});
        }
  return pool;
}

PauliSum pool_gradient_operator(const PoolOperator& op, const PauliSum& h) {
  if (op.qubit.n_qubits() != h.n_qubits()) throw ShapeError("pool operator and H widths differ");
  return commutator(h, op.qubit);
}

std::vector<CompiledGenerator> compile_pool(const std::vector<PoolOperator>& pool) {
  std::vector<CompiledGenerator> out;
  out.reserve(pool.size());
  for (const auto& op : pool) out.push_back(compile_generator(op.qubit));
  return out;
}

}  // namespace gcim
