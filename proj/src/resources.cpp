#include "gcim/resources.hpp"

#include <algorithm>

#include "gcim/errors.hpp"

namespace gcim {

namespace {

struct SchemeName {
  CnotScheme s;
  const char* name;
};

constexpr SchemeName kNames[] = {{CnotScheme::Standard, "standard"},
                                 {CnotScheme::Reduced, "reduced"},
                                 {CnotScheme::GivensFswap, "givens-fswap"},
                                 {CnotScheme::GivensAdjacent, "givens-adjacent"}};

std::int64_t single_formula(std::int64_t spread, CnotScheme scheme) {
  switch (scheme) {
    case CnotScheme::Standard: return 4 * spread;
    case CnotScheme::Reduced: return 2 * spread + 1;
    case CnotScheme::GivensFswap: return 6 * spread - 4;
    default: return 2;
  }
}

// Indices in ascending order a ≤ b ≤ c ≤ d, i.e. (q, s, p, r).
std::int64_t double_formula(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d,
                            CnotScheme scheme) {
  switch (scheme) {
    case CnotScheme::Standard: return 16 * ((b - a) + (d - c) + 1);
    case CnotScheme::Reduced: return 2 * ((b - a) + (d - c)) + 9;
    case CnotScheme::GivensFswap: return 6 * ((d - b) + (c - a)) - 10;
    default: return 14;
  }
}

}  // namespace

const char* to_string(CnotScheme s) {
  for (const auto& n : kNames)
    if (n.s == s) return n.name;
  return "unknown";
}

CnotScheme parse_cnot_scheme(const std::string& name) {
  for (const auto& n : kNames)
    if (name == n.name) return n.s;
  throw ConfigError("unknown CNOT scheme '" + name + "'");
}

std::int64_t cnot_count_single(int p, int q, CnotScheme scheme) {
  if (q < 0 || !(q < p)) throw RangeError("single excitation needs 0 <= q < p");
  return single_formula(p - q, scheme);
}

std::int64_t cnot_count_double(int q, int s, int p, int r, CnotScheme scheme) {
  if (q < 0 || !(q < s && s < p && p < r)) throw RangeError("double excitation needs 0 <= q < s < p < r");
  return double_formula(q, s, p, r, scheme);
}

std::int64_t cnot_count(const PoolOperator& op, CnotScheme scheme) {
  std::int64_t total = 0;
  for (const auto& t : op.excitation.terms) {
    std::vector<int> idx(t.creation);
    idx.insert(idx.end(), t.annihilation.begin(), t.annihilation.end());
    std::sort(idx.begin(), idx.end());
    if (idx.size() == 2) {
      total += single_formula(idx[1] - idx[0], scheme);
    } else if (idx.size() == 4) {
      total += double_formula(idx[0], idx[1], idx[2], idx[3], scheme);
    } else {
      throw ContractViolation("pool term is neither a single nor a double excitation");
    }
  }
  return total;
}

std::int64_t ansatz_cnot_total(const BasisRecipe& recipe, const std::vector<PoolOperator>& pool,
                               CnotScheme scheme) {
  std::int64_t total = 0;
  for (const auto& f : recipe.factors) {
    if (f.op >= pool.size()) throw RangeError("recipe names a pool index beyond the pool");
    total += cnot_count(pool[f.op], scheme);
  }
  return total;
}

std::vector<MeasurementEstimate> measurement_estimate(const AdaptTrace& trace, std::size_t n_term) {
  std::vector<MeasurementEstimate> out;
  std::size_t n_gf = 0;
  int rounds = 0;
  for (const auto& rec : trace.iterations) {
    MeasurementEstimate m;
    m.iterations = rec.iteration;
    n_gf += rec.added.size();
    rounds += rec.rounds;
    m.generating_functions = n_gf;
    m.n_term = n_term;
    const double iters = static_cast<double>(m.iterations);
    const double nt = static_cast<double>(n_term);
    m.n_opt = static_cast<double>(rounds) / iters * nt;
    m.vqe_style = m.n_opt * iters + nt * iters;
    m.gcim_matrix = static_cast<double>(n_gf) * static_cast<double>(n_gf) * (nt + 1.0);
    m.gcim_style = m.gcim_matrix + nt * iters;
    out.push_back(m);
  }
  return out;
}

}  // namespace gcim
