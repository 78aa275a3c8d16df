#include "gcim/pauli.hpp"

#include <algorithm>
#include <bit>
#include <cstdio>
#include <vector>

#include "gcim/errors.hpp"

namespace gcim {

namespace {

Complex i_power(int k) {
  switch (((k % 4) + 4) % 4) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
  }
}

void check_same_width(int a, int b) {
  if (a != b)
    throw ShapeError("pauli width mismatch: " + std::to_string(a) + " vs " + std::to_string(b));
}

}  // namespace

PauliString::PauliString(int n_qubits) : n_(n_qubits) {
  if (n_qubits < 0 || n_qubits > kMaxQubits)
    throw RangeError("qubit count out of range: " + std::to_string(n_qubits));
}

PauliString PauliString::from_masks(int n_qubits, std::uint64_t x, std::uint64_t z) {
  PauliString p(n_qubits);
  const std::uint64_t live = n_qubits == 64 ? ~0ULL : ((1ULL << n_qubits) - 1);
  if ((x | z) & ~live) throw RangeError("pauli mask exceeds qubit count");
  p.x_ = x;
  p.z_ = z;
  return p;
}

PauliString PauliString::parse(std::string_view text) {
  PauliString p(static_cast<int>(text.size()));
  for (int q = 0; q < p.n_; ++q) {
    switch (text[q]) {
      case 'I': break;
      case 'X': p.set(q, Pauli::X); break;
      case 'Y': p.set(q, Pauli::Y); break;
      case 'Z': p.set(q, Pauli::Z); break;
      default:
        throw ParseError("illegal pauli character '" + std::string(1, text[q]) + "' at position " +
                             std::to_string(q),
                         0);
    }
  }
  return p;
}

Pauli PauliString::op(int qubit) const {
  if (qubit < 0 || qubit >= n_) throw RangeError("qubit index out of range");
  const bool x = (x_ >> qubit) & 1ULL;
  const bool z = (z_ >> qubit) & 1ULL;
  if (x && z) return Pauli::Y;
  if (x) return Pauli::X;
  if (z) return Pauli::Z;
  return Pauli::I;
}

PauliString& PauliString::set(int qubit, Pauli p) {
  if (qubit < 0 || qubit >= n_) throw RangeError("qubit index out of range");
  const std::uint64_t bit = 1ULL << qubit;
  x_ &= ~bit;
  z_ &= ~bit;
  if (p == Pauli::X || p == Pauli::Y) x_ |= bit;
  if (p == Pauli::Z || p == Pauli::Y) z_ |= bit;
  return *this;
}

int PauliString::weight() const noexcept { return std::popcount(x_ | z_); }
int PauliString::y_count() const noexcept { return std::popcount(x_ & z_); }

std::string PauliString::str() const {
  static constexpr char kChars[] = {'I', 'X', 'Y', 'Z'};
  std::string s(n_, 'I');
  for (int q = 0; q < n_; ++q) s[q] = kChars[static_cast<int>(op(q))];
  return s;
}

// With P = i^{x·z} X^x Z^z per qubit, moving Z^{za} past X^{xb} costs (-1)^{za·xb}.
PauliProduct pauli_mul(const PauliString& a, const PauliString& b) {
  check_same_width(a.n_qubits(), b.n_qubits());
  const std::uint64_t cx = a.x_mask() ^ b.x_mask();
  const std::uint64_t cz = a.z_mask() ^ b.z_mask();
  const int e = std::popcount(a.x_mask() & a.z_mask()) + std::popcount(b.x_mask() & b.z_mask()) +
                2 * std::popcount(a.z_mask() & b.x_mask()) - std::popcount(cx & cz);
  return {i_power(e), PauliString::from_masks(a.n_qubits(), cx, cz)};
}

PauliSum PauliSum::identity(int n_qubits, Complex c) {
  PauliSum s(n_qubits);
  s.add(PauliString(n_qubits), c);
  return s;
}

PauliSum PauliSum::single(const PauliString& p, Complex c) {
  PauliSum s(p.n_qubits());
  s.add(p, c);
  return s;
}

void PauliSum::add(const PauliString& p, Complex c) {
  check_same_width(n_, p.n_qubits());
  auto [it, inserted] = terms_.try_emplace(p, c);
  if (!inserted) it->second += c;
}

Complex PauliSum::coefficient(const PauliString& p) const {
  auto it = terms_.find(p);
  return it == terms_.end() ? Complex{} : it->second;
}

PauliSum& PauliSum::operator+=(const PauliSum& o) {
  check_same_width(n_, o.n_);
  for (const auto& [p, c] : o.terms_) add(p, c);
  return *this;
}

PauliSum& PauliSum::operator-=(const PauliSum& o) {
  check_same_width(n_, o.n_);
  for (const auto& [p, c] : o.terms_) add(p, -c);
  return *this;
}

PauliSum& PauliSum::operator*=(Complex c) {
  for (auto& [p, v] : terms_) v *= c;
  return *this;
}

PauliSum PauliSum::adjoint() const {
  PauliSum out(n_);
  for (const auto& [p, c] : terms_) out.terms_.emplace(p, std::conj(c));
  return out;
}

double PauliSum::one_norm() const {
  double s = 0.0;
  for (const auto& [p, c] : terms_) s += std::abs(c);
  return s;
}

bool PauliSum::is_hermitian(double tol) const {
  for (const auto& [p, c] : terms_)
    if (std::abs(c.imag()) > tol) return false;
  return true;
}

bool PauliSum::is_anti_hermitian(double tol) const {
  for (const auto& [p, c] : terms_)
    if (std::abs(c.real()) > tol) return false;
  return true;
}

PauliSum operator+(PauliSum a, const PauliSum& b) { return a += b; }
PauliSum operator-(PauliSum a, const PauliSum& b) { return a -= b; }
PauliSum operator*(PauliSum a, Complex c) { return a *= c; }
PauliSum operator*(Complex c, PauliSum a) { return a *= c; }

PauliSum operator*(const PauliSum& a, const PauliSum& b) {
  check_same_width(a.n_qubits(), b.n_qubits());
  PauliSum out(a.n_qubits());
  for (const auto& [pa, ca] : a.terms())
    for (const auto& [pb, cb] : b.terms()) {
      auto [phase, pc] = pauli_mul(pa, pb);
      out.add(pc, phase * ca * cb);
    }
  return out;
}

PauliSum simplify(const PauliSum& h, double tol) {
  PauliSum out(h.n_qubits());
  for (const auto& [p, c] : h.terms())
    if (std::abs(c) >= tol) out.add(p, c);
  return out;
}

PauliSum commutator(const PauliSum& a, const PauliSum& b) {
  check_same_width(a.n_qubits(), b.n_qubits());
  PauliSum out(a.n_qubits());
  for (const auto& [pa, ca] : a.terms())
    for (const auto& [pb, cb] : b.terms()) {
      // Commuting strings cancel; anticommuting ones contribute twice.
      const int overlap = std::popcount(pa.x_mask() & pb.z_mask()) +
                          std::popcount(pa.z_mask() & pb.x_mask());
      if (overlap % 2 == 0) continue;
      auto [phase, pc] = pauli_mul(pa, pb);
      out.add(pc, 2.0 * phase * ca * cb);
    }
  return simplify(out);
}

MatrixXc jw_to_matrix(const PauliSum& h, int n_qubits) {
  if (n_qubits != h.n_qubits()) throw ShapeError("qubit count does not match the pauli sum");
  if (n_qubits > 16) throw ResourceError("dense matrix limited to 16 qubits");
  const Eigen::Index dim = Eigen::Index{1} << n_qubits;
  MatrixXc m = MatrixXc::Zero(dim, dim);
  for (const auto& [p, c] : h.terms()) {
    const Complex base = c * i_power(p.y_count());
    for (Eigen::Index col = 0; col < dim; ++col) {
      const auto i = static_cast<std::uint64_t>(col);
      const double sign = (std::popcount(i & p.z_mask()) & 1) ? -1.0 : 1.0;
      m(static_cast<Eigen::Index>(i ^ p.x_mask()), col) += sign * base;
    }
  }
  return m;
}

MatrixXc jw_to_matrix(const PauliSum& h) { return jw_to_matrix(h, h.n_qubits()); }

SparseMatrixXc to_sparse(const PauliSum& h) {
  const int n = h.n_qubits();
  if (n > 30) throw ResourceError("sparse matrix limited to 30 qubits");
  const Eigen::Index dim = Eigen::Index{1} << n;

  // Terms sharing an x mask land on the same off-diagonal.
  struct Group {
    std::uint64_t x;
    std::vector<std::pair<std::uint64_t, Complex>> zc;
  };
  std::map<std::uint64_t, Group> by_x;
  for (const auto& [p, c] : h.terms()) {
    auto& g = by_x[p.x_mask()];
    g.x = p.x_mask();
    g.zc.emplace_back(p.z_mask(), c * i_power(p.y_count()));
  }

  SparseMatrixXc m(dim, dim);
  m.reserve(Eigen::VectorXi::Constant(dim, static_cast<int>(by_x.size())));
  std::vector<std::pair<Eigen::Index, Complex>> row;
  for (Eigen::Index r = 0; r < dim; ++r) {
    row.clear();
    for (const auto& [x, g] : by_x) {
      const std::uint64_t col = static_cast<std::uint64_t>(r) ^ x;
      Complex v{};
      for (const auto& [z, c] : g.zc) v += (std::popcount(col & z) & 1) ? -c : c;
      if (v != Complex{}) row.emplace_back(static_cast<Eigen::Index>(col), v);
    }
    std::sort(row.begin(), row.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    for (const auto& [col, v] : row) m.insert(r, col) = v;
  }
  m.makeCompressed();
  return m;
}

std::string to_text(const PauliSum& h) {
  std::string out;
  char buf[96];
  for (const auto& [p, c] : h.terms()) {
    std::snprintf(buf, sizeof buf, "%+.17g %+.17g ", c.real(), c.imag());
    out += buf;
    out += p.str();
    out += '\n';
  }
  return out;
}

}  // namespace gcim
