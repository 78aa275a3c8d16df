#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>

#include "gcim/types.hpp"

namespace gcim {

enum class Pauli : std::uint8_t { I, X, Y, Z };

inline constexpr int kMaxQubits = 64;

// Symplectic storage: X sets x, Z sets z, Y sets both.
class PauliString {
 public:
  PauliString() = default;
  explicit PauliString(int n_qubits);

  static PauliString from_masks(int n_qubits, std::uint64_t x, std::uint64_t z);
  // Qubit 0 is the first character.
  static PauliString parse(std::string_view text);

  int n_qubits() const noexcept { return n_; }
  std::uint64_t x_mask() const noexcept { return x_; }
  std::uint64_t z_mask() const noexcept { return z_; }

  Pauli op(int qubit) const;
  PauliString& set(int qubit, Pauli p);

  int weight() const noexcept;
  int y_count() const noexcept;
  bool is_identity() const noexcept { return (x_ | z_) == 0; }

  std::string str() const;

  friend bool operator==(const PauliString&, const PauliString&) = default;
  friend auto operator<=>(const PauliString& a, const PauliString& b) {
    if (a.n_ != b.n_) return a.n_ <=> b.n_;
    if (a.x_ != b.x_) return a.x_ <=> b.x_;
    return a.z_ <=> b.z_;
  }

 private:
  int n_ = 0;
  std::uint64_t x_ = 0;
  std::uint64_t z_ = 0;
};

struct PauliProduct {
  Complex phase;
  PauliString string;
};

// a·b = phase·c with phase in {±1, ±i}.
PauliProduct pauli_mul(const PauliString& a, const PauliString& b);

class PauliSum {
 public:
  using TermMap = std::map<PauliString, Complex>;

  PauliSum() = default;
  explicit PauliSum(int n_qubits) : n_(n_qubits) {}

  static PauliSum identity(int n_qubits, Complex c = 1.0);
  static PauliSum single(const PauliString& p, Complex c = 1.0);

  int n_qubits() const noexcept { return n_; }
  const TermMap& terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }
  bool empty() const noexcept { return terms_.empty(); }

  // Accumulates into an existing entry; never drops.
  void add(const PauliString& p, Complex c);
  Complex coefficient(const PauliString& p) const;

  PauliSum& operator+=(const PauliSum& o);
  PauliSum& operator-=(const PauliSum& o);
  PauliSum& operator*=(Complex c);

  PauliSum adjoint() const;
  double one_norm() const;
  bool is_hermitian(double tol = 1e-12) const;
  bool is_anti_hermitian(double tol = 1e-12) const;

  friend bool operator==(const PauliSum&, const PauliSum&) = default;

 private:
  int n_ = 0;
  TermMap terms_;
};

PauliSum operator+(PauliSum a, const PauliSum& b);
PauliSum operator-(PauliSum a, const PauliSum& b);
PauliSum operator*(const PauliSum& a, const PauliSum& b);
PauliSum operator*(PauliSum a, Complex c);
PauliSum operator*(Complex c, PauliSum a);

PauliSum simplify(const PauliSum& h, double tol = 1e-14);
PauliSum commutator(const PauliSum& a, const PauliSum& b);

// Qubit 0 least significant. n ≤ 16.
MatrixXc jw_to_matrix(const PauliSum& h, int n_qubits);
MatrixXc jw_to_matrix(const PauliSum& h);

// Sparse form for repeated application; rows ordered by basis index.
SparseMatrixXc to_sparse(const PauliSum& h);

// One "coefficient PAULI" line per term, sorted canonically.
std::string to_text(const PauliSum& h);

}  // namespace gcim
