"""Jordan-Wigner mapping of fermionic mode products onto Pauli sums.

Convention: c_j -> (prod_{k<j} Z_k) (X_j + i Y_j)/2, so mode order equals
qubit order and strings run over all lower-indexed modes.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .operators import OperatorSum, PauliTerm

CREATE = "create"
ANNIHILATE = "annihilate"


@dataclass(frozen=True)
class FermionMode:
    """A single creation or annihilation operator on one mode."""

    index: int
    kind: str

    def __post_init__(self):
        if self.kind not in (CREATE, ANNIHILATE):
            raise ValueError(f"kind must be {CREATE!r} or {ANNIHILATE!r}")
        if self.index < 0:
            raise ValueError("mode index must be nonnegative")


def annihilate(index: int) -> FermionMode:
    return FermionMode(index, ANNIHILATE)


def create(index: int) -> FermionMode:
    return FermionMode(index, CREATE)


def _single_mode(mode: FermionMode, n_modes: int) -> OperatorSum:
    j = mode.index
    string = {k: "Z" for k in range(j)}
    # annihilation carries +iY, creation -iY
    sign = 1j if mode.kind == ANNIHILATE else -1j
    tx = PauliTerm.from_map(0.5, {**string, j: "X"})
    ty = PauliTerm.from_map(0.5 * sign, {**string, j: "Y"})
    return OperatorSum(n_modes, [tx, ty])


def jordan_wigner(modes: Sequence[FermionMode] | FermionMode, n_modes: int) -> OperatorSum:
    """Map a product of fermionic operators to qubits.

    ``modes`` is applied left to right as an operator product, e.g.
    ``[create(0), annihilate(1)]`` maps c_0^dag c_1.
    """
    if isinstance(modes, FermionMode):
        modes = [modes]
    if not modes:
        return OperatorSum.identity(n_modes)
    for m in modes:
        if m.index >= n_modes:
            raise ValueError("mode index exceeds n_modes")
    out = _single_mode(modes[0], n_modes)
    for m in modes[1:]:
        out = out @ _single_mode(m, n_modes)
    return out


def number_operator(index: int, n_modes: int) -> OperatorSum:
    """n_j = c_j^dag c_j = (I - Z_j)/2."""
    return jordan_wigner([create(index), annihilate(index)], n_modes)
