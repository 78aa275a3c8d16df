#pragma once

#include <cstdint>
#include <vector>

#include "gcim/adapt.hpp"
#include "gcim/pool.hpp"

namespace gcim {

enum class CnotScheme { Standard, Reduced, GivensFswap, GivensAdjacent };

const char* to_string(CnotScheme s);
CnotScheme parse_cnot_scheme(const std::string& name);
inline constexpr CnotScheme kCnotSchemes[] = {CnotScheme::Standard, CnotScheme::Reduced,
                                              CnotScheme::GivensFswap, CnotScheme::GivensAdjacent};

// exp(θ(a†_p a_q − h.c.)) with q < p. Throws RangeError otherwise.
std::int64_t cnot_count_single(int p, int q, CnotScheme scheme);
// exp(θ(a†_p a†_r a_q a_s − h.c.)) with q < s < p < r. Throws RangeError otherwise.
std::int64_t cnot_count_double(int q, int s, int p, int r, CnotScheme scheme);

// Sum over the normal-ordered terms of the excitation half, one order-1 Trotter
// factor each. Term indices are sorted; coinciding indices are kept as a multiset.
std::int64_t cnot_count(const PoolOperator& op, CnotScheme scheme);

std::int64_t ansatz_cnot_total(const BasisRecipe& recipe, const std::vector<PoolOperator>& pool,
                               CnotScheme scheme);

struct MeasurementEstimate {
  int iterations = 0;
  std::size_t generating_functions = 0;
  std::size_t n_term = 0;
  double n_opt = 0.0;        // optimization measurements per iteration: mean rounds × n_term
  double vqe_style = 0.0;    // n_opt·N_iter + N_term·N_iter
  double gcim_matrix = 0.0;  // N_GF²·(N_term + 1)
  double gcim_style = 0.0;   // gcim_matrix + N_term·N_iter
};

// Totals after each iteration of the trace; empty trace gives an empty list.
std::vector<MeasurementEstimate> measurement_estimate(const AdaptTrace& trace, std::size_t n_term);

}  // namespace gcim
