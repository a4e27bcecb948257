# Copyright 2026 The LBCS Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Regenerates data/molecules: STO-3G molecular Hamiltonians under the
Jordan-Wigner encoding with spin-block qubit order (all spin-up orbitals,
then all spin-down), so the Hartree-Fock state is a computational basis
state and qubits i and i+n/2 are spin partners.

Needs openfermion, openfermionpyscf and pyscf. Geometries are common
equilibrium values in angstrom.
"""

import argparse
import json
import math
import pathlib

from openfermion import (MolecularData, get_fermion_operator, jordan_wigner,
                         reorder, up_then_down)
from openfermionpyscf import run_pyscf


def water():
    half = math.radians(104.45 / 2)
    r = 0.9578
    return [("O", (0.0, 0.0, 0.0)),
            ("H", (r * math.sin(half), r * math.cos(half), 0.0)),
            ("H", (-r * math.sin(half), r * math.cos(half), 0.0))]


MOLECULES = {
    "h2": [("H", (0.0, 0.0, 0.0)), ("H", (0.0, 0.0, 0.7414))],
    "lih": [("Li", (0.0, 0.0, 0.0)), ("H", (0.0, 0.0, 1.5949))],
    "h2o": water(),
}


def license_header():
    lines = pathlib.Path(__file__).read_text().splitlines()
    return [line for line in lines[:lines.index("")] if line.startswith("#")]


def generate(name, geometry, out_dir):
    mol = run_pyscf(MolecularData(geometry, "sto-3g", 1, 0), run_scf=True)
    n = mol.n_qubits
    ham = jordan_wigner(reorder(get_fermion_operator(mol.get_molecular_hamiltonian()),
                                up_then_down))
    lines = license_header() + [""]
    for term, coef in sorted(ham.terms.items()):
        if abs(coef) < 1e-12:
            continue
        label = ["I"] * n
        for qubit, op in term:
            label[qubit] = op
        lines.append(f"{float(coef.real)!r} {''.join(label)}")
    (out_dir / f"{name}.txt").write_text("\n".join(lines) + "\n")
    # Interleaved orbital i (even: up, odd: down) lands on qubit i//2 or n/2 + i//2.
    occupied = {i // 2 + (n // 2 if i % 2 else 0) for i in range(mol.n_electrons)}
    return "".join("1" if q in occupied else "0" for q in range(n))


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", type=pathlib.Path, default=pathlib.Path("data/molecules"))
    args = parser.parse_args()
    args.out.mkdir(parents=True, exist_ok=True)
    refs = {name: generate(name, geom, args.out) for name, geom in MOLECULES.items()}
    print(json.dumps(refs, indent=2))


if __name__ == "__main__":
    main()
