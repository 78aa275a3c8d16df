#include "gcim/statevector.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "gcim/errors.hpp"

namespace gcim {

namespace {

constexpr double kTaylorCutoff = 1e-14;
constexpr int kTaylorMaxOrder = 200;

Complex y_phase(int ny) {
  switch (ny % 4) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
  }
}

// Substeps keep |θ|·‖A‖ ≤ 1 per step so terms decay from the first order.
template <class Apply>
StateVector taylor_exp(Apply&& apply, double theta, double bound, const StateVector& v) {
  const int steps = std::max(1, static_cast<int>(std::ceil(std::abs(theta) * bound)));
  const double dt = theta / steps;
  StateVector out = v;
  for (int step = 0; step < steps; ++step) {
    StateVector term = out;
    for (int k = 1; k <= kTaylorMaxOrder; ++k) {
      term = apply(term) * (dt / k);
      out += term;
      if (term.norm() < kTaylorCutoff) break;
    }
  }
  return out;
}

}  // namespace

int qubit_count(const StateVector& v) {
  const auto n = static_cast<std::uint64_t>(v.size());
  if (n == 0 || !std::has_single_bit(n)) throw ShapeError("state length is not a power of two");
  return std::countr_zero(n);
}

StateVector basis_state(int n_qubits, std::uint64_t index) {
  if (n_qubits < 0 || n_qubits > 30) throw ResourceError("statevector limited to 30 qubits");
  const Eigen::Index dim = Eigen::Index{1} << n_qubits;
  if (index >= static_cast<std::uint64_t>(dim)) throw RangeError("basis index out of range");
  StateVector v = StateVector::Zero(dim);
  v(static_cast<Eigen::Index>(index)) = 1.0;
  return v;
}

std::uint64_t hf_index(int n_qubits, int n_alpha, int n_beta) {
  if (n_alpha < 0 || n_beta < 0 || (n_alpha > 0 && 2 * n_alpha - 2 >= n_qubits) ||
      (n_beta > 0 && 2 * n_beta - 1 >= n_qubits))
    throw RangeError("occupation overflows the qubit register");
  std::uint64_t idx = 0;
  for (int g = 0; g < n_alpha; ++g) idx |= 1ULL << (2 * g);
  for (int g = 0; g < n_beta; ++g) idx |= 1ULL << (2 * g + 1);
  return idx;
}

StateVector hf_state(int n_qubits, int n_alpha, int n_beta) {
  return basis_state(n_qubits, hf_index(n_qubits, n_alpha, n_beta));
}

StateVector apply_pauli(const PauliString& p, const StateVector& v) {
  if (qubit_count(v) != p.n_qubits()) throw ShapeError("state and operator qubit counts differ");
  StateVector out(v.size());
  const Complex base = y_phase(p.y_count());
  const std::uint64_t x = p.x_mask(), z = p.z_mask();
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const auto u = static_cast<std::uint64_t>(i);
    out(static_cast<Eigen::Index>(u ^ x)) = ((std::popcount(u & z) & 1) ? -base : base) * v(i);
  }
  return out;
}

StateVector apply_paulisum(const PauliSum& h, const StateVector& v) {
  const int n = qubit_count(v);
  if (n != h.n_qubits()) throw ShapeError("state and operator qubit counts differ");
  StateVector out = StateVector::Zero(v.size());
  for (const auto& [p, c] : h.terms()) {
    const Complex base = c * y_phase(p.y_count());
    const std::uint64_t x = p.x_mask(), z = p.z_mask();
    for (Eigen::Index i = 0; i < v.size(); ++i) {
      const auto u = static_cast<std::uint64_t>(i);
      const Complex a = (std::popcount(u & z) & 1) ? -base : base;
      out(static_cast<Eigen::Index>(u ^ x)) += a * v(i);
    }
  }
  return out;
}

Complex expectation(const StateVector& bra, const PauliSum& h, const StateVector& ket) {
  if (bra.size() != ket.size()) throw ShapeError("bra and ket lengths differ");
  return bra.dot(apply_paulisum(h, ket));
}

CompiledGenerator compile_generator(const PauliSum& a) {
  if (!a.is_anti_hermitian(1e-12)) throw ContractViolation("generator is not anti-Hermitian");
  return {to_sparse(a), a.one_norm()};
}

StateVector exp_apply(const PauliSum& a, double theta, const StateVector& v) {
  if (!a.is_anti_hermitian(1e-12)) throw ContractViolation("generator is not anti-Hermitian");
  if (qubit_count(v) != a.n_qubits()) throw ShapeError("state and generator qubit counts differ");
  if (theta == 0.0) return v;
  return taylor_exp([&](const StateVector& x) { return apply_paulisum(a, x); }, theta,
                    a.one_norm(), v);
}

StateVector exp_apply(const CompiledGenerator& a, double theta, const StateVector& v) {
  if (a.matrix.cols() != v.size()) throw ShapeError("state and generator sizes differ");
  if (theta == 0.0) return v;
  return taylor_exp([&](const StateVector& x) -> StateVector { return a.matrix * x; }, theta,
                    a.norm_bound, v);
}

}  // namespace gcim
