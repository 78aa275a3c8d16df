#include "gcim/fcidump.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "gcim/errors.hpp"

namespace gcim {

namespace {

std::string upper(std::string s) {
  for (auto& ch : s) ch = static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
  return s;
}

double parse_real(std::string tok, int line) {
  for (auto& ch : tok)
    if (ch == 'D' || ch == 'd') ch = 'E';
  double im = 0.0;
  double re = 0.0;
  std::size_t used = 0;
  try {
    if (!tok.empty() && tok.front() == '(') {
      const auto comma = tok.find(',');
      if (comma == std::string::npos || tok.back() != ')') throw std::invalid_argument(tok);
      re = std::stod(tok.substr(1, comma - 1));
      im = std::stod(tok.substr(comma + 1, tok.size() - comma - 2));
      used = tok.size();
    } else {
      re = std::stod(tok, &used);
    }
  } catch (const std::exception&) {
    throw ParseError("malformed number '" + tok + "'", line);
  }
  if (used != tok.size()) throw ParseError("malformed number '" + tok + "'", line);
  if (std::abs(im) > 1e-12)
    throw ConsistencyError("line " + std::to_string(line) + ": complex integral with imaginary part " +
                           std::to_string(im));
  return re;
}

int parse_int(const std::string& tok, int line) {
  std::size_t used = 0;
  int v = 0;
  try {
    v = std::stoi(tok, &used);
  } catch (const std::exception&) {
    throw ParseError("malformed integer '" + tok + "'", line);
  }
  if (used != tok.size()) throw ParseError("malformed integer '" + tok + "'", line);
  return v;
}

using EriKey = std::array<int, 4>;

EriKey canonical_eri(int p, int q, int r, int s) {
  if (p < q) std::swap(p, q);
  if (r < s) std::swap(r, s);
  if (std::make_pair(p, q) < std::make_pair(r, s)) {
    std::swap(p, r);
    std::swap(q, s);
  }
  return {p, q, r, s};
}

}  // namespace

SpatialIntegrals::SpatialIntegrals(int n_orb_, int n_elec_, int ms2_)
    : n_orb(n_orb_), n_elec(n_elec_), ms2(ms2_) {
  if (n_orb < 1) throw RangeError("NORB must be at least 1");
  if (n_elec < 0 || n_elec > 2 * n_orb) throw RangeError("NELEC outside [0, 2*NORB]");
  one_body = Eigen::MatrixXd::Zero(n_orb, n_orb);
  two_body.assign(static_cast<std::size_t>(n_orb) * n_orb * n_orb * n_orb, 0.0);
}

void SpatialIntegrals::set_eri(int p, int q, int r, int s, double v) {
  for (auto [a, b] : {std::pair{p, q}, std::pair{q, p}})
    for (auto [c, d] : {std::pair{r, s}, std::pair{s, r}}) {
      two_body[index(a, b, c, d)] = v;
      two_body[index(c, d, a, b)] = v;
    }
}

void SpatialIntegrals::set_one_body(int p, int q, double v) {
  one_body(p, q) = v;
  one_body(q, p) = v;
}

void SpatialIntegrals::validate(double tol) const {
  if (n_orb < 1) throw ConsistencyError("n_orb must be at least 1");
  if (n_elec < 0 || n_elec > 2 * n_orb) throw ConsistencyError("n_elec outside [0, 2*n_orb]");
  if ((n_elec + ms2) % 2 != 0 || std::abs(ms2) > n_elec)
    throw ConsistencyError("MS2 incompatible with NELEC");
  if (one_body.rows() != n_orb || one_body.cols() != n_orb)
    throw ConsistencyError("one-body block has wrong shape");
  if ((one_body - one_body.transpose()).cwiseAbs().maxCoeff() > tol)
    throw ConsistencyError("one-body integrals not symmetric");
  for (int p = 0; p < n_orb; ++p)
    for (int q = 0; q < n_orb; ++q)
      for (int r = 0; r < n_orb; ++r)
        for (int s = 0; s < n_orb; ++s) {
          const double v = eri(p, q, r, s);
          if (std::abs(v - eri(q, p, r, s)) > tol || std::abs(v - eri(p, q, s, r)) > tol ||
              std::abs(v - eri(r, s, p, q)) > tol)
            throw ConsistencyError("two-body integrals break 8-fold symmetry");
        }
}

SpatialIntegrals parse_fcidump(std::istream& in) {
  std::string line;
  int lineno = 0;

  // Namelist header: "&FCI key=value, ... &END" or "/".
  std::string header;
  int header_start = 0;
  bool closed = false;
  while (std::getline(in, line)) {
    ++lineno;
    std::string u = upper(line);
    if (header_start == 0) {
      if (u.find_first_not_of(" \t\r") == std::string::npos) continue;
      const auto at = u.find("&FCI");
      if (at == std::string::npos) throw ParseError("expected &FCI namelist header", lineno);
      header_start = lineno;
      u = u.substr(at + 4);
    }
    auto end = u.find("&END");
    if (end == std::string::npos) {
      const auto slash = u.find('/');
      if (slash != std::string::npos) end = slash;
    }
    if (end != std::string::npos) {
      header += u.substr(0, end);
      closed = true;
      break;
    }
    header += u + " ";
  }
  if (header_start == 0) throw ParseError("missing &FCI header", lineno);
  if (!closed) throw ParseError("unterminated namelist header", lineno);

  std::map<std::string, std::vector<std::string>> fields;
  {
    for (auto& ch : header)
      if (ch == ',') ch = ' ';
    std::istringstream hs(header);
    std::string tok, key;
    while (hs >> tok) {
      const auto eq = tok.find('=');
      if (eq != std::string::npos) {
        key = tok.substr(0, eq);
        if (key.empty()) throw ParseError("empty key in header", header_start);
        fields[key];
        if (eq + 1 < tok.size()) fields[key].push_back(tok.substr(eq + 1));
      } else if (tok == "=") {
        continue;
      } else {
        if (key.empty()) throw ParseError("value without key in header: " + tok, header_start);
        fields[key].push_back(tok);
      }
    }
  }
  auto scalar = [&](const std::string& k, bool required, int fallback) {
    auto it = fields.find(k);
    if (it == fields.end()) {
      if (required) throw ParseError("header lacks " + k, header_start);
      return fallback;
    }
    if (it->second.empty()) throw ParseError("header key " + k + " has no value", header_start);
    return parse_int(it->second.front(), header_start);
  };
  const int norb = scalar("NORB", true, 0);
  const int nelec = scalar("NELEC", true, 0);
  const int ms2 = scalar("MS2", false, 0);
  if (norb < 1) throw ParseError("NORB must be positive", header_start);
  if (nelec < 0 || nelec > 2 * norb) throw ParseError("NELEC outside [0, 2*NORB]", header_start);

  SpatialIntegrals ints(norb, nelec, ms2);
  std::map<EriKey, double> seen;
  auto record = [&](const EriKey& key, double v, int ln) {
    auto [it, inserted] = seen.try_emplace(key, v);
    if (!inserted && std::abs(it->second - v) > 1e-10)
      throw ConsistencyError("line " + std::to_string(ln) + ": conflicting duplicate integral");
  };

  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::vector<std::string> toks;
    std::string tok;
    while (ls >> tok) toks.push_back(tok);
    if (toks.empty()) continue;
    if (toks.size() != 5) throw ParseError("expected 'value i j k l'", lineno);
    const double v = parse_real(toks[0], lineno);
    std::array<int, 4> idx{};
    for (int a = 0; a < 4; ++a) {
      idx[a] = parse_int(toks[a + 1], lineno);
      if (idx[a] < 0 || idx[a] > norb)
        throw RangeError("line " + std::to_string(lineno) + ": index " + std::to_string(idx[a]) +
                         " outside [0, " + std::to_string(norb) + "]");
    }
    const auto [i, j, k, l] = idx;
    if (i == 0 && j == 0 && k == 0 && l == 0) {
      record({-1, -1, -1, -1}, v, lineno);
      ints.core_energy = v;
    } else if (i > 0 && j > 0 && k == 0 && l == 0) {
      record({-2, -2, std::max(i, j), std::min(i, j)}, v, lineno);
      ints.set_one_body(i - 1, j - 1, v);
    } else if (i > 0 && j == 0 && k == 0 && l == 0) {
      continue;  // orbital energy
    } else if (i > 0 && j > 0 && k > 0 && l > 0) {
      record(canonical_eri(i, j, k, l), v, lineno);
      ints.set_eri(i - 1, j - 1, k - 1, l - 1, v);
    } else {
      throw ParseError("unrecognized index pattern", lineno);
    }
  }
  return ints;
}

SpatialIntegrals parse_fcidump(const std::string& text) {
  std::istringstream in(text);
  return parse_fcidump(in);
}

SpatialIntegrals read_fcidump(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open FCIDUMP file: " + path.string());
  return parse_fcidump(in);
}

std::string write_fcidump(const SpatialIntegrals& ints, double tol) {
  std::ostringstream out;
  const int n = ints.n_orb;
  out << " &FCI NORB=" << n << ",NELEC=" << ints.n_elec << ",MS2=" << ints.ms2 << ",\n  ORBSYM=";
  for (int p = 0; p < n; ++p) out << "1,";
  out << "\n  ISYM=1,\n &END\n";
  char buf[128];
  auto row = [&](double v, int i, int j, int k, int l) {
    if (std::abs(v) <= tol && !(i == 0 && j == 0)) return;
    std::snprintf(buf, sizeof buf, "%24.17e %4d %4d %4d %4d\n", v, i, j, k, l);
    out << buf;
  };
  for (int p = 0; p < n; ++p)
    for (int q = 0; q <= p; ++q)
      for (int r = 0; r < n; ++r)
        for (int s = 0; s <= r; ++s) {
          if (p * (p + 1) / 2 + q < r * (r + 1) / 2 + s) continue;
          if (ints.eri(p, q, r, s) == 0.0) continue;
          row(ints.eri(p, q, r, s), p + 1, q + 1, r + 1, s + 1);
        }
  for (int p = 0; p < n; ++p)
    for (int q = 0; q <= p; ++q)
      if (ints.one_body(p, q) != 0.0) row(ints.one_body(p, q), p + 1, q + 1, 0, 0);
  row(ints.core_energy, 0, 0, 0, 0);
  return out.str();
}

SpatialIntegrals transform_integrals(const SpatialIntegrals& ints, const Eigen::MatrixXd& c) {
  const int n = ints.n_orb;
  if (c.rows() != n || c.cols() != n) throw ShapeError("orbital coefficient matrix shape mismatch");
  SpatialIntegrals out(n, ints.n_elec, ints.ms2);
  out.core_energy = ints.core_energy;
  out.one_body = c.transpose() * ints.one_body * c;

  // Four quarter transformations, one index at a time.
  const auto nn = static_cast<std::size_t>(n);
  std::vector<double> a = ints.two_body, b(a.size());
  auto at = [nn](int p, int q, int r, int s) {
    return ((static_cast<std::size_t>(p) * nn + q) * nn + r) * nn + s;
  };
  for (int slot = 0; slot < 4; ++slot) {
    std::fill(b.begin(), b.end(), 0.0);
    for (int p = 0; p < n; ++p)
      for (int q = 0; q < n; ++q)
        for (int r = 0; r < n; ++r)
          for (int s = 0; s < n; ++s) {
            std::array<int, 4> src{p, q, r, s};
            const int old = src[slot];
            for (int k = 0; k < n; ++k) {
              src[slot] = k;
              b[at(p, q, r, s)] += c(k, old) * a[at(src[0], src[1], src[2], src[3])];
            }
          }
    std::swap(a, b);
  }
  out.two_body = std::move(a);
  return out;
}

FermionHamiltonian assemble_hamiltonian(const SpatialIntegrals& ints) {
  const int n = ints.n_orb;
  FermionHamiltonian h;
  h.n_modes = 2 * n;
  h.constant = ints.core_energy;
  constexpr std::array<Spin, 2> spins{Spin::Up, Spin::Down};
  for (int p = 0; p < n; ++p)
    for (int q = 0; q < n; ++q) {
      const double v = ints.one_body(p, q);
      if (v == 0.0) continue;
      for (Spin s : spins) h.terms.push_back({v, {spin_orbital(p, s)}, {spin_orbital(q, s)}});
    }
  for (int p = 0; p < n; ++p)
    for (int q = 0; q < n; ++q)
      for (int r = 0; r < n; ++r)
        for (int s = 0; s < n; ++s) {
          const double v = ints.eri(p, q, r, s);
          if (v == 0.0) continue;
          for (Spin sg : spins)
            for (Spin tau : spins) {
              const int ps = spin_orbital(p, sg), qs = spin_orbital(q, sg);
              const int rt = spin_orbital(r, tau), st = spin_orbital(s, tau);
              if (ps == rt || st == qs) continue;
              h.terms.push_back({0.5 * v, {ps, rt}, {st, qs}});
            }
        }
  return normal_ordered(h);
}

}  // namespace gcim
