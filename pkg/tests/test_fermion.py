import numpy as np
import pytest

from qlre.fermion import FermionMode, annihilate, create, jordan_wigner, number_operator
from qlre.operators import OperatorSum, anticommutator


def test_single_mode_no_string():
    c0 = jordan_wigner(annihilate(0), 1)
    x = OperatorSum.single(1, 0, "X")
    y = OperatorSum.single(1, 0, "Y")
    ref = (x + y * 1j) * 0.5
    assert c0.terms == ref.terms


def test_creation_string_convention():
    cdag2 = jordan_wigner(create(2), 4)
    # Z (x) Z (x) (X - iY)/2 (x) I
    keys = {t.letters: t.coefficient for t in cdag2.terms}
    assert keys[((0, "Z"), (1, "Z"), (2, "X"))] == pytest.approx(0.5)
    assert keys[((0, "Z"), (1, "Z"), (2, "Y"))] == pytest.approx(-0.5j)


@pytest.mark.parametrize("n", [4, 6])
def test_canonical_anticommutation_dense(n):
    for i in range(n):
        for j in range(n):
            acomm = anticommutator(
                jordan_wigner(annihilate(i), n), jordan_wigner(create(j), n)
            )
            want = np.eye(2**n) if i == j else np.zeros((2**n, 2**n))
            np.testing.assert_allclose(acomm.to_dense(), want, atol=1e-12)
            # {c_i, c_j} = 0 always
            acomm2 = anticommutator(
                jordan_wigner(annihilate(i), n), jordan_wigner(annihilate(j), n)
            )
            np.testing.assert_allclose(acomm2.to_dense(), 0 * want, atol=1e-12)


def test_number_operator():
    n1 = number_operator(1, 2)
    z1 = OperatorSum.single(2, 1, "Z")
    ref = (OperatorSum.identity(2) - z1) * 0.5
    assert n1.terms == ref.terms


def test_invalid_mode():
    with pytest.raises(ValueError):
        FermionMode(0, "destroy")
    with pytest.raises(ValueError):
        jordan_wigner(annihilate(5), 4)
