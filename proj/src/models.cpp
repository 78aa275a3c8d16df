#include "gcim/models.hpp"

#include "gcim/errors.hpp"

namespace gcim {

SpatialIntegrals hubbard_chain(int n_sites, double t, double u) {
  if (n_sites < 2) throw RangeError("Hubbard chain needs at least two sites");
  SpatialIntegrals site(n_sites, n_sites, n_sites % 2);
  for (int i = 0; i + 1 < n_sites; ++i) site.set_one_body(i, i + 1, -t);
  for (int i = 0; i < n_sites; ++i) site.set_eri(i, i, i, i, u);

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(site.one_body);
  Eigen::MatrixXd c = es.eigenvectors();
  // Fix column signs so the transform is reproducible across Eigen versions.
  for (int k = 0; k < n_sites; ++k) {
    Eigen::Index big = 0;
    c.col(k).cwiseAbs().maxCoeff(&big);
    if (c(big, k) < 0) c.col(k) *= -1.0;
  }
  SpatialIntegrals mo = transform_integrals(site, c);
  // Round-off breaks the symmetry at the 1e-16 level; restore it exactly.
  mo.one_body = 0.5 * (mo.one_body + mo.one_body.transpose()).eval();
  SpatialIntegrals sym(n_sites, n_sites, n_sites % 2);
  sym.core_energy = mo.core_energy;
  sym.one_body = mo.one_body;
  for (int p = 0; p < n_sites; ++p)
    for (int q = 0; q <= p; ++q)
      for (int r = 0; r < n_sites; ++r)
        for (int s = 0; s <= r; ++s) {
          if (p * (p + 1) / 2 + q < r * (r + 1) / 2 + s) continue;
          double v = 0.0;
          int perms[8][4] = {{p, q, r, s}, {q, p, r, s}, {p, q, s, r}, {q, p, s, r},
                             {r, s, p, q}, {s, r, p, q}, {r, s, q, p}, {s, r, q, p}};
          for (auto& x : perms) v += mo.eri(x[0], x[1], x[2], x[3]);
          sym.set_eri(p, q, r, s, v / 8.0);
        }
  return sym;
}

}  // namespace gcim
