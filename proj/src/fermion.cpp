#include "gcim/fermion.hpp"

#include <algorithm>
#include <map>
#include <utility>

#include "gcim/errors.hpp"

namespace gcim {

namespace {

// Bubble sort descending; returns false when a mode repeats.
bool sort_descending(std::vector<int>& v, int& sign) {
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t j = 0; j + 1 < v.size() - i; ++j) {
      if (v[j] == v[j + 1]) return false;
      if (v[j] < v[j + 1]) {
        std::swap(v[j], v[j + 1]);
        sign = -sign;
      }
    }
  for (std::size_t j = 0; j + 1 < v.size(); ++j)
    if (v[j] == v[j + 1]) return false;
  return true;
}

void check_modes(const FermionTerm& t, int n) {
  for (int m : t.creation)
    if (m < 0 || m >= n) throw RangeError("spin-orbital index " + std::to_string(m) + " overflows");
  for (int m : t.annihilation)
    if (m < 0 || m >= n) throw RangeError("spin-orbital index " + std::to_string(m) + " overflows");
}

}  // namespace

FermionTerm FermionTerm::adjoint() const {
  FermionTerm t;
  t.coefficient = std::conj(coefficient);
  t.creation.assign(annihilation.rbegin(), annihilation.rend());
  t.annihilation.assign(creation.rbegin(), creation.rend());
  return t;
}

FermionOperator FermionOperator::adjoint() const {
  FermionOperator out;
  out.n_modes = n_modes;
  out.constant = std::conj(constant);
  out.terms.reserve(terms.size());
  for (const auto& t : terms) out.terms.push_back(t.adjoint());
  return out;
}

FermionOperator& FermionOperator::operator+=(const FermionOperator& o) {
  n_modes = std::max(n_modes, o.n_modes);
  constant += o.constant;
  terms.insert(terms.end(), o.terms.begin(), o.terms.end());
  return *this;
}

FermionOperator& FermionOperator::operator-=(const FermionOperator& o) {
  n_modes = std::max(n_modes, o.n_modes);
  constant -= o.constant;
  for (auto t : o.terms) {
    t.coefficient = -t.coefficient;
    terms.push_back(std::move(t));
  }
  return *this;
}

FermionOperator& FermionOperator::operator*=(Complex c) {
  constant *= c;
  for (auto& t : terms) t.coefficient *= c;
  return *this;
}

FermionOperator normal_ordered(const FermionOperator& op, double tol) {
  using Key = std::pair<std::vector<int>, std::vector<int>>;
  std::map<Key, Complex> merged;
  std::vector<Key> order;
  for (const auto& t : op.terms) {
    Key k{t.creation, t.annihilation};
    int sign = 1;
    if (!sort_descending(k.first, sign) || !sort_descending(k.second, sign)) continue;
    auto [it, inserted] = merged.try_emplace(k, Complex{});
    if (inserted) order.push_back(k);
    it->second += static_cast<double>(sign) * t.coefficient;
  }
  FermionOperator out;
  out.n_modes = op.n_modes;
  out.constant = op.constant;
  for (const auto& k : order) {
    const Complex c = merged[k];
    if (std::abs(c) < tol) continue;
    out.terms.push_back({c, k.first, k.second});
  }
  return out;
}

bool is_conjugate_closed(const FermionOperator& op, double tol) {
  if (std::abs(op.constant.imag()) > tol) return false;
  const FermionOperator n = normal_ordered(op, 0.0);
  std::map<std::pair<std::vector<int>, std::vector<int>>, Complex> lookup;
  for (const auto& t : n.terms) lookup[{t.creation, t.annihilation}] = t.coefficient;
  for (const auto& t : n.terms) {
    FermionOperator single;
    single.terms.push_back(t.adjoint());
    const FermionOperator adj = normal_ordered(single, 0.0);
    if (adj.terms.empty()) continue;
    const auto& a = adj.terms.front();
    auto it = lookup.find({a.creation, a.annihilation});
    if (it == lookup.end() || std::abs(it->second - a.coefficient) > tol) return false;
  }
  return true;
}

PauliSum ladder_operator(int mode, bool dagger, int n_qubits) {
  if (mode < 0 || mode >= n_qubits)
    throw RangeError("spin-orbital index " + std::to_string(mode) + " overflows");
  std::uint64_t zmask = (mode == 0) ? 0 : ((1ULL << mode) - 1);
  const std::uint64_t bit = 1ULL << mode;
  PauliSum out(n_qubits);
  out.add(PauliString::from_masks(n_qubits, bit, zmask), 0.5);
  // Y_p carries both bits.
  out.add(PauliString::from_masks(n_qubits, bit, zmask | bit),
          dagger ? Complex{0.0, -0.5} : Complex{0.0, 0.5});
  return out;
}

PauliSum jordan_wigner(const FermionTerm& term, int n_qubits) {
  check_modes(term, n_qubits);
  PauliSum acc = PauliSum::identity(n_qubits, term.coefficient);
  for (int m : term.creation) acc = acc * ladder_operator(m, true, n_qubits);
  for (int m : term.annihilation) acc = acc * ladder_operator(m, false, n_qubits);
  return acc;
}

PauliSum jordan_wigner(const FermionOperator& op, int n_qubits) {
  PauliSum out(n_qubits);
  if (op.constant != Complex{}) out.add(PauliString(n_qubits), op.constant);
  for (const auto& t : op.terms) out += jordan_wigner(t, n_qubits);
  return simplify(out);
}

PauliSum jordan_wigner(const FermionOperator& op) { return jordan_wigner(op, op.n_modes); }

PauliSum number_operator(int n_spatial) {
  FermionOperator n;
  n.n_modes = 2 * n_spatial;
  for (int p = 0; p < n.n_modes; ++p) n.terms.push_back({1.0, {p}, {p}});
  return jordan_wigner(n);
}

PauliSum sz_operator(int n_spatial) {
  FermionOperator sz;
  sz.n_modes = 2 * n_spatial;
  for (int g = 0; g < n_spatial; ++g) {
    sz.terms.push_back({0.5, {spin_orbital(g, Spin::Up)}, {spin_orbital(g, Spin::Up)}});
    sz.terms.push_back({-0.5, {spin_orbital(g, Spin::Down)}, {spin_orbital(g, Spin::Down)}});
  }
  return jordan_wigner(sz);
}

// S² = S₋S₊ + S_z(S_z + 1).
PauliSum s_squared_operator(int n_spatial) {
  FermionOperator plus;
  plus.n_modes = 2 * n_spatial;
  for (int g = 0; g < n_spatial; ++g)
    plus.terms.push_back({1.0, {spin_orbital(g, Spin::Up)}, {spin_orbital(g, Spin::Down)}});
  const PauliSum sp = jordan_wigner(plus);
  const PauliSum sm = jordan_wigner(plus.adjoint());
  const PauliSum sz = sz_operator(n_spatial);
  const int n = 2 * n_spatial;
  return simplify(sm * sp + sz * (sz + PauliSum::identity(n)));
}

}  // namespace gcim
