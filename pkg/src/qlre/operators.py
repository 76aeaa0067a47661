"""Sparse Pauli-string operator algebra with a dense realization.

Operators are stored as weighted Pauli strings with identity letters left
implicit, so symbolic Hamiltonians on thousands of sites stay cheap.  Dense
matrices are only produced on demand, behind a width guard.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Dict, Iterable, List, Mapping, Tuple

import numpy as np

MERGE_TOL = 1e-14
DENSE_MAX_QUBITS = 14

PAULI_MATRICES = {
    "I": np.eye(2, dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
}

# Single-site products: (a, b) -> (phase, letter), identities handled separately.
_PRODUCT = {
    ("X", "X"): (1.0, "I"),
    ("Y", "Y"): (1.0, "I"),
    ("Z", "Z"): (1.0, "I"),
    ("X", "Y"): (1j, "Z"),
    ("Y", "X"): (-1j, "Z"),
    ("Y", "Z"): (1j, "X"),
    ("Z", "Y"): (-1j, "X"),
    ("Z", "X"): (1j, "Y"),
    ("X", "Z"): (-1j, "Y"),
}


@dataclass(frozen=True)
class PauliTerm:
    """One weighted Pauli string; ``letters`` maps site index to X/Y/Z."""

    coefficient: complex
    letters: Tuple[Tuple[int, str], ...] = ()

    @staticmethod
    def from_map(coefficient: complex, letters: Mapping[int, str]) -> "PauliTerm":
        items = tuple(sorted((int(q), p) for q, p in letters.items() if p != "I"))
        for _, p in items:
            if p not in ("X", "Y", "Z"):
                raise ValueError(f"unknown Pauli letter {p!r}")
        return PauliTerm(complex(coefficient), items)

    @property
    def letter_map(self) -> Dict[int, str]:
        return dict(self.letters)

    @property
    def weight(self) -> int:
        return len(self.letters)

    def support(self) -> Tuple[int, ...]:
        return tuple(q for q, _ in self.letters)

    def dagger(self) -> "PauliTerm":
        return PauliTerm(np.conj(self.coefficient), self.letters)


def multiply(a: PauliTerm, b: PauliTerm) -> PauliTerm:
    """Product of two Pauli terms with the exact group phase."""
    letters: Dict[int, str] = dict(a.letters)
    phase = 1.0 + 0j
    for q, p in b.letters:
        if q not in letters:
            letters[q] = p
            continue
        ph, out = _PRODUCT.get((letters[q], p), (1.0, "I"))
        phase *= ph
        if out == "I":
            del letters[q]
        else:
            letters[q] = out
    return PauliTerm.from_map(a.coefficient * b.coefficient * phase, letters)


class OperatorSum:
    """Canonical sum of Pauli terms on ``site_count`` qubits.

    Terms with identical letter maps are merged on construction and
    coefficients below ``MERGE_TOL`` are dropped, so equality of letter maps
    is the only notion of term identity.
    """

    def __init__(self, site_count: int, terms: Iterable[PauliTerm] = ()):
        self.site_count = int(site_count)
        merged: Dict[Tuple[Tuple[int, str], ...], complex] = {}
        for t in terms:
            if t.letters and t.letters[-1][0] >= self.site_count:
                raise ValueError("term exceeds site_count")
            merged[t.letters] = merged.get(t.letters, 0j) + t.coefficient
        self.terms: List[PauliTerm] = [
            PauliTerm(c, k) for k, c in sorted(merged.items()) if abs(c) > MERGE_TOL
        ]

    # -- constructors -------------------------------------------------
    @staticmethod
    def zero(site_count: int) -> "OperatorSum":
        return OperatorSum(site_count, ())

    @staticmethod
    def identity(site_count: int, coefficient: complex = 1.0) -> "OperatorSum":
        return OperatorSum(site_count, [PauliTerm(complex(coefficient), ())])

    @staticmethod
    def single(site_count: int, qubit: int, letter: str, coefficient: complex = 1.0) -> "OperatorSum":
        return OperatorSum(site_count, [PauliTerm.from_map(coefficient, {qubit: letter})])

    @staticmethod
    def from_strings(site_count: int, weighted: Mapping[str, complex]) -> "OperatorSum":
        """Build from {"XIZ": coeff, ...} style strings of length site_count."""
        terms = []
        for s, c in weighted.items():
            if len(s) != site_count:
                raise ValueError("string length mismatch")
            terms.append(PauliTerm.from_map(c, {i: p for i, p in enumerate(s) if p != "I"}))
        return OperatorSum(site_count, terms)

    # -- algebra ------------------------------------------------------
    def __add__(self, other: "OperatorSum") -> "OperatorSum":
        self._check(other)
        return OperatorSum(self.site_count, list(self.terms) + list(other.terms))

    def __sub__(self, other: "OperatorSum") -> "OperatorSum":
        return self + (other * -1)

    def __mul__(self, scalar: complex) -> "OperatorSum":
        return OperatorSum(
            self.site_count, [PauliTerm(t.coefficient * scalar, t.letters) for t in self.terms]
        )

    __rmul__ = __mul__

    def __matmul__(self, other: "OperatorSum") -> "OperatorSum":
        self._check(other)
        prods = [multiply(a, b) for a in self.terms for b in other.terms]
        return OperatorSum(self.site_count, prods)

    def dagger(self) -> "OperatorSum":
        return OperatorSum(self.site_count, [t.dagger() for t in self.terms])

    def _check(self, other: "OperatorSum"):
        if self.site_count != other.site_count:
            raise ValueError("site_count mismatch")

    def __len__(self) -> int:
        return len(self.terms)

    def __repr__(self) -> str:
        inner = " + ".join(
            f"({t.coefficient:.4g})*{dict(t.letters) or 'I'}" for t in self.terms[:6]
        )
        more = f" ... [{len(self.terms)} terms]" if len(self.terms) > 6 else ""
        return f"OperatorSum(n={self.site_count}, {inner}{more})"

    # -- queries ------------------------------------------------------
    def norm_bound(self) -> float:
        """Triangle-inequality bound sum_k |c_k| >= operator norm."""
        return float(sum(abs(t.coefficient) for t in self.terms))

    def to_dense(self) -> np.ndarray:
        """Dense 2^n x 2^n matrix; site 0 is the leftmost tensor factor."""
        n = self.site_count
        if n > DENSE_MAX_QUBITS:
            raise ValueError(f"dense realization capped at {DENSE_MAX_QUBITS} qubits, got {n}")
        dim = 2**n
        out = np.zeros((dim, dim), dtype=complex)
        for t in self.terms:
            m = np.array([[t.coefficient]])
            lm = t.letter_map
            for q in range(n):
                m = np.kron(m, PAULI_MATRICES[lm.get(q, "I")])
            out += m
        return out

    # -- serialization ------------------------------------------------
    def to_json_dict(self) -> dict:
        return {
            "n": self.site_count,
            "terms": [
                {
                    "c": [t.coefficient.real, t.coefficient.imag],
                    "p": {str(q): p for q, p in t.letters},
                }
                for t in self.terms
            ],
        }

    @staticmethod
    def from_json_dict(d: dict) -> "OperatorSum":
        terms = [
            PauliTerm.from_map(complex(e["c"][0], e["c"][1]), {int(q): p for q, p in e["p"].items()})
            for e in d["terms"]
        ]
        return OperatorSum(int(d["n"]), terms)

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), sort_keys=True)

    @staticmethod
    def from_json(s: str) -> "OperatorSum":
        return OperatorSum.from_json_dict(json.loads(s))


def commutator(a: OperatorSum, b: OperatorSum) -> OperatorSum:
    """[a, b] = ab - ba in canonical merged form."""
    return (a @ b) - (b @ a)


def anticommutator(a: OperatorSum, b: OperatorSum) -> OperatorSum:
    return (a @ b) + (b @ a)


def norm_bound(a: OperatorSum) -> float:
    return a.norm_bound()


def term_as_sum(term: PauliTerm, site_count: int) -> OperatorSum:
    return OperatorSum(site_count, [term])
