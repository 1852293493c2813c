"""Shared fixtures.  The convention gate runs before everything else: the
three pinned anchor values must reproduce exactly or no other test is
meaningful."""

import random
from fractions import Fraction

import pytest

from hksym.exactnum import GaussRat
from hksym.symplectic import SymplecticSpace
from hksym.symtensor import SymTensor, contract, endo_of_quadratic, eval_on_vectors, sp_action


def linear(sp, k):
    return SymTensor.linear(sp, sp.basis_vector(k))


@pytest.fixture(scope="session", autouse=True)
def anchor_gate():
    """The three convention anchors; everything downstream assumes them."""
    sp = SymplecticSpace(1)
    p = linear(sp, 0)
    q = linear(sp, 1)
    # anchor 1: p_q = <p, omega q> = omega(q, p) = -1
    assert eval_on_vectors(p, [sp.basis_vector(1)]) == GaussRat(-1)
    # anchor 2: S_{p,q} = -(1/4) mu p^2 for S = lambda p^4 + mu p^3 q
    lam, mu = GaussRat(Fraction(3, 5)), GaussRat(-2)
    s = (p ** 4).scale(lam) + ((p ** 3) * q).scale(mu)
    s_pq = contract(contract(s, sp.basis_vector(0)), sp.basis_vector(1))
    assert s_pq == (p * p).scale(-(mu * GaussRat(Fraction(1, 4))))
    # anchor 3: pq . S = -2 lambda p^4 - mu p^3 q
    acted = sp_action(endo_of_quadratic(p * q), s)
    assert acted == (p ** 4).scale(GaussRat(-2) * lam) + ((p ** 3) * q).scale(-mu)


@pytest.fixture
def rng():
    return random.Random(20240817)
