#pragma once

#include "gcim/fcidump.hpp"

namespace gcim {

// Half-filled open Hubbard chain (odd counts carry MS2 = 1), expressed in the canonical orbitals of its
// hopping matrix so the lowest-filled determinant is the mean-field reference.
SpatialIntegrals hubbard_chain(int n_sites, double t, double u);

// Two electrons in two sites; exact ground energy (U − √(U² + 16t²))/2.
inline SpatialIntegrals hubbard_dimer(double t = 1.0, double u = 2.0) {
  return hubbard_chain(2, t, u);
}

}  // namespace gcim
