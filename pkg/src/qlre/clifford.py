"""Clifford tableaux: composition, uniform sampling, and Pauli conjugation.

A tableau stores the images of the X_i and Z_i generators as rows of a 2n x 2n
binary symplectic matrix (columns split [x | z]) plus one sign bit per row.
Conjugation of arbitrary Pauli terms is exact, including the i-phases arising
from Y letters.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List

import numpy as np

from .operators import OperatorSum, PauliTerm, multiply

_SQ2 = 1.0 / np.sqrt(2.0)

RANDOM_CLIFFORD_MAX_QUBITS = 30  # combo sampling packs 2n bits into an int64


@dataclass
class CliffordTableau:
    mat: np.ndarray  # (2n, 2n) uint8, rows: images of X_0..X_{n-1}, Z_0..Z_{n-1}
    phase: np.ndarray  # (2n,) uint8 sign bits

    @property
    def n(self) -> int:
        return self.mat.shape[0] // 2

    # -- constructors ---------------------------------------------------
    @staticmethod
    def identity(n: int) -> "CliffordTableau":
        return CliffordTableau(np.eye(2 * n, dtype=np.uint8), np.zeros(2 * n, dtype=np.uint8))

    # -- gate composition (appends gate after the current circuit) ------
    def _rows(self):
        n = self.n
        return self.mat[:, :n], self.mat[:, n:]

    def apply_h(self, q: int) -> "CliffordTableau":
        x, z = self._rows()
        self.phase ^= x[:, q] & z[:, q]
        x[:, q], z[:, q] = z[:, q].copy(), x[:, q].copy()
        return self

    def apply_s(self, q: int) -> "CliffordTableau":
        x, z = self._rows()
        self.phase ^= x[:, q] & z[:, q]
        z[:, q] ^= x[:, q]
        return self

    def apply_x(self, q: int) -> "CliffordTableau":
        _, z = self._rows()
        self.phase ^= z[:, q]
        return self

    def apply_z(self, q: int) -> "CliffordTableau":
        x, _ = self._rows()
        self.phase ^= x[:, q]
        return self

    def apply_cx(self, control: int, target: int) -> "CliffordTableau":
        x, z = self._rows()
        self.phase ^= x[:, control] & z[:, target] & (x[:, target] ^ z[:, control] ^ 1)
        x[:, target] ^= x[:, control]
        z[:, control] ^= z[:, target]
        return self

    # -- structure checks ------------------------------------------------
    def is_valid(self) -> bool:
        """Rows must preserve the symplectic form: <r_i, r_j> = [j == i+n mod 2n]."""
        n = self.n
        m = self.mat.astype(np.uint8)
        x, z = m[:, :n], m[:, n:]
        form = (x @ z.T + z @ x.T) % 2
        want = np.zeros((2 * n, 2 * n), dtype=np.uint8)
        for i in range(n):
            want[i, i + n] = want[i + n, i] = 1
        return bool(np.array_equal(form, want))

    # -- row access -------------------------------------------------------
    def row_term(self, r: int) -> PauliTerm:
        """The image Pauli of generator row r as a +-1 weighted term."""
        n = self.n
        letters = {}
        for q in range(n):
            xq, zq = self.mat[r, q], self.mat[r, n + q]
            if xq and zq:
                letters[q] = "Y"
            elif xq:
                letters[q] = "X"
            elif zq:
                letters[q] = "Z"
        return PauliTerm.from_map(-1.0 if self.phase[r] else 1.0, letters)

    # -- serialization -----------------------------------------------------
    def to_json_dict(self) -> dict:
        return {
            "n": self.n,
            "mat": self.mat.astype(int).tolist(),
            "phase": self.phase.astype(int).tolist(),
        }

    @staticmethod
    def from_json_dict(d: dict) -> "CliffordTableau":
        return CliffordTableau(
            np.array(d["mat"], dtype=np.uint8), np.array(d["phase"], dtype=np.uint8)
        )


def _term_bits(term: PauliTerm, n: int):
    x = np.zeros(n, dtype=np.uint8)
    z = np.zeros(n, dtype=np.uint8)
    y_count = 0
    for q, p in term.letters:
        if p == "X":
            x[q] = 1
        elif p == "Z":
            z[q] = 1
        else:
            x[q] = z[q] = 1
            y_count += 1
    return x, z, y_count


def conjugate_term(tab: CliffordTableau, term: PauliTerm, site_count: int) -> PauliTerm:
    """U P U^dag for one Pauli term; always a single term again."""
    n = tab.n
    if site_count != n:
        raise ValueError("tableau width does not match operator width")
    x, z, y_count = _term_bits(term, n)
    # P = i^{#Y} prod_q X_q^{x_q} Z_q^{z_q}; conjugate factor by factor.
    acc = PauliTerm(1.0, ())
    for q in range(n):
        if x[q]:
            acc = multiply(acc, tab.row_term(q))
        if z[q]:
            acc = multiply(acc, tab.row_term(n + q))
    # letter string = i^{#Y} prod X^x Z^z, and acc already carries true letters
    coeff = term.coefficient * (1j**y_count) * acc.coefficient
    return PauliTerm(coeff, acc.letters)


def conjugate_by_clifford(tab: CliffordTableau, a: OperatorSum) -> OperatorSum:
    """Conjugate every term; term count and coefficient magnitudes are preserved."""
    if tab.n != a.site_count:
        raise ValueError("width mismatch")
    return OperatorSum(a.site_count, [conjugate_term(tab, t, a.site_count) for t in a.terms])


def conjugate_by_T(qubit: int, a: OperatorSum) -> OperatorSum:
    """T a T^dag: X -> (X+Y)/sqrt2, Y -> (Y-X)/sqrt2 on the target qubit."""
    if not 0 <= qubit < a.site_count:
        raise ValueError("qubit index out of range")
    out: List[PauliTerm] = []
    for t in a.terms:
        lm = t.letter_map
        p = lm.get(qubit)
        if p is None or p == "Z":
            out.append(t)
        elif p == "X":
            out.append(PauliTerm.from_map(t.coefficient * _SQ2, {**lm, qubit: "X"}))
            out.append(PauliTerm.from_map(t.coefficient * _SQ2, {**lm, qubit: "Y"}))
        else:  # Y
            out.append(PauliTerm.from_map(t.coefficient * _SQ2, {**lm, qubit: "Y"}))
            out.append(PauliTerm.from_map(-t.coefficient * _SQ2, {**lm, qubit: "X"}))
    return OperatorSum(a.site_count, out)


def hadamard_layer(n: int) -> CliffordTableau:
    t = CliffordTableau.identity(n)
    for q in range(n):
        t.apply_h(q)
    return t


# ---------------------------------------------------------------------------
# uniform random sampling via sequential symplectic pair construction
# ---------------------------------------------------------------------------

def _symp(u: np.ndarray, v: np.ndarray, n: int) -> int:
    return int((u[:n] @ v[n:] + u[n:] @ v[:n]) % 2)


def _combo(basis: List[np.ndarray], bits: int) -> np.ndarray:
    out = np.zeros_like(basis[0])
    for i, b in enumerate(basis):
        if (bits >> i) & 1:
            out ^= b
    return out


def _gf2_independent(vectors: List[np.ndarray], count: int) -> List[np.ndarray]:
    """First ``count`` GF(2)-independent vectors from the list."""
    picked: List[np.ndarray] = []
    pivots: List[int] = []
    reduced: List[np.ndarray] = []
    for v in vectors:
        w = v.copy()
        for p, r in zip(pivots, reduced):
            if w[p]:
                w ^= r
        nz = np.nonzero(w)[0]
        if nz.size:
            pivots.append(int(nz[0]))
            reduced.append(w)
            picked.append(v)
            if len(picked) == count:
                break
    if len(picked) != count:
        raise RuntimeError("symplectic complement lost rank")
    return picked


def random_clifford(n: int, seed: int) -> CliffordTableau:
    """Uniformly random tableau, deterministic per seed."""
    if n < 1:
        raise ValueError("n >= 1 required")
    if n > RANDOM_CLIFFORD_MAX_QUBITS:
        raise ValueError(f"sampler supports up to {RANDOM_CLIFFORD_MAX_QUBITS} qubits")
    rng = np.random.default_rng(seed)
    basis: List[np.ndarray] = [np.eye(2 * n, dtype=np.uint8)[i] for i in range(2 * n)]
    x_rows: List[np.ndarray] = []
    z_rows: List[np.ndarray] = []
    for m in range(n, 0, -1):
        dim = 2 * m
        a = _combo(basis, int(rng.integers(1, 1 << dim)))
        # pick any basis vector c with <a, c> = 1, then map uniform v -> solution
        c = next(b for b in basis if _symp(a, b, n) == 1)
        v = _combo(basis, int(rng.integers(0, 1 << dim)))
        b = v if _symp(a, v, n) == 1 else v ^ c
        x_rows.append(a)
        z_rows.append(b)
        # symplectic Gram-Schmidt: project remaining basis off the (a, b) pair
        projected = []
        for w in basis:
            w2 = w.copy()
            if _symp(w2, b, n):
                w2 ^= a
            if _symp(w2, a, n):
                w2 ^= b
            projected.append(w2)
        if m > 1:
            basis = _gf2_independent(projected, dim - 2)
    mat = np.array(x_rows + z_rows, dtype=np.uint8)
    phase = rng.integers(0, 2, size=2 * n).astype(np.uint8)
    tab = CliffordTableau(mat, phase)
    if not tab.is_valid():
        raise RuntimeError("sampled tableau failed the symplectic invariant")
    return tab


# ---------------------------------------------------------------------------
# dense unitary realization (verification scale)
# ---------------------------------------------------------------------------

TABLEAU_DENSE_MAX_QUBITS = 10


def tableau_to_unitary(tab: CliffordTableau) -> np.ndarray:
    """A dense unitary realizing the tableau (global phase arbitrary).

    Column for |0..0> is the joint +1 eigenvector of the signed Z images;
    the remaining columns follow by applying X images.
    """
    n = tab.n
    if n > TABLEAU_DENSE_MAX_QUBITS:
        raise ValueError("dense tableau realization capped at "
                         f"{TABLEAU_DENSE_MAX_QUBITS} qubits")
    dim = 2**n
    z_dense = [
        OperatorSum(n, [tab.row_term(n + k)]).to_dense() for k in range(n)
    ]
    x_dense = [OperatorSum(n, [tab.row_term(k)]).to_dense() for k in range(n)]
    rng = np.random.default_rng(12345)
    col0 = None
    for _ in range(8):
        v = rng.normal(size=dim) + 1j * rng.normal(size=dim)
        for zk in z_dense:
            v = 0.5 * (v + zk @ v)
        norm = np.linalg.norm(v)
        if norm > 1e-8:
            col0 = v / norm
            break
    if col0 is None:
        raise RuntimeError("stabilizer projector annihilated all trial vectors")
    cols = {0: col0}
    for idx in range(1, dim):
        low = idx & -idx  # lowest set bit
        prev = cols[idx ^ low]
        k = n - 1 - int(np.log2(low))  # qubit 0 is the most significant bit
        cols[idx] = x_dense[k] @ prev
    u = np.column_stack([cols[i] for i in range(dim)])
    return u
