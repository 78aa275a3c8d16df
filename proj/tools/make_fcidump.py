#!/usr/bin/env python3
"""Generate STO-3G FCIDUMP fixtures (and FCI reference energies) with PySCF.

Integrals are produced in the canonical RHF molecular-orbital basis. The
reference energies are written next to the FCIDUMP files so the C++ test
suite can cross-check its own exact diagonalization against an external
FCI solver.

Usage:
    python3 tools/make_fcidump.py [OUTPUT_DIR]
"""

import json
import os
import sys

import numpy as np
from pyscf import ao2mo, fci, gto, scf
from pyscf.tools import fcidump


def linear_chain(n, spacing):
    return [("H", (0.0, 0.0, i * spacing)) for i in range(n)]


SYSTEMS = {
    "h4_linear_1.0584": linear_chain(4, 1.0584),
    "h4_square_1.0584": [
        ("H", (0.0, 0.0, 0.0)),
        ("H", (1.0584, 0.0, 0.0)),
        ("H", (0.0, 1.0584, 0.0)),
        ("H", (1.0584, 1.0584, 0.0)),
    ],
    "lih_1.546": [("Li", (0.0, 0.0, 0.0)), ("H", (0.0, 0.0, 1.546))],
    "h6_linear_1.0584": linear_chain(6, 1.0584),
    "h6_linear_5.0": linear_chain(6, 5.0),
}


def build(name, atoms, outdir):
    mol = gto.M(atom=atoms, basis="sto-3g", unit="Angstrom", verbose=0)
    mf = scf.RHF(mol)
    mf.conv_tol = 1e-12
    mf.max_cycle = 500
    mf.kernel()
    if not mf.converged:
        mf = scf.newton(mf).run()
    path = os.path.join(outdir, name + ".fcidump")
    fcidump.from_scf(mf, path, tol=1e-15)

    h1 = mf.mo_coeff.T @ mf.get_hcore() @ mf.mo_coeff
    eri = ao2mo.restore(1, ao2mo.kernel(mol, mf.mo_coeff), mol.nao)
    cis = fci.direct_spin1.FCI()
    cis.conv_tol = 1e-13
    cis.nroots = 4
    energies, _ = cis.kernel(h1, eri, mol.nao, mol.nelec, ecore=mol.energy_nuc())
    spins = [cis.spin_square(v, mol.nao, mol.nelec)[0] for v in _]
    singlets = [float(e) for e, s in zip(energies, spins) if abs(s) < 1e-6]
    return {
        "file": os.path.basename(path),
        "n_orb": int(mol.nao),
        "n_elec": int(sum(mol.nelec)),
        "e_hf": float(mf.e_tot),
        "e_fci": float(energies[0]),
        "fci_singlets": singlets,
    }


def main():
    outdir = sys.argv[1] if len(sys.argv) > 1 else os.path.join(
        os.path.dirname(__file__), "..", "tests", "data")
    os.makedirs(outdir, exist_ok=True)
    refs = {}
    for name, atoms in SYSTEMS.items():
        refs[name] = build(name, atoms, outdir)
        print(name, refs[name]["e_fci"])
    with open(os.path.join(outdir, "fci_reference.json"), "w") as fh:
        json.dump(refs, fh, indent=2, sort_keys=True)
        fh.write("\n")


if __name__ == "__main__":
    np.set_printoptions(precision=12)
    main()
