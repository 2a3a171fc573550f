import pytest

from ssbim.hecke import HeckeAlgebra, LaurentPoly, v
from ssbim.parabolic import ParabolicModule, TriangularityError

from conftest import coxeter


def test_worked_examples(H_A2):
    H, W = H_A2, H_A2.W
    s1, s2 = W.element((0,)), W.element((1,))
    P = ParabolicModule.of(H, {0})
    assert P.act(P.unit, H.gen(0)) == P.unit * v**-1
    assert P.act(P.unit, H.one) == P.unit
    assert P.act(P.basis(s2), H.gen(0)) == P.basis(W.element((1, 0)))
    assert P.p_map(H.gen(0)) == P.unit * v**-1
    assert P.p_map(H.H(s2)) == P.basis(s2)
    assert P.i_map(P.unit) == H.one + H.gen(0) * v**-1
    assert P.kl(s2) == P.basis(s2) + P.unit * v
    assert P.kl(0) == P.unit
    assert P.bar(P.unit) == P.unit
    assert ParabolicModule.of(H, {0}) is P


def test_rejects_nonminimal(H_A2):
    P = ParabolicModule.of(H_A2, {0})
    with pytest.raises(ValueError):
        P.basis(H_A2.W.element((0,)))


@pytest.mark.parametrize("kind", ["A2", "B2", "A3"])
@pytest.mark.parametrize("S0", [{0}, {1}, {0, 1}])
def test_p_is_module_map_and_commutes_with_bar(kind, S0):
    H = HeckeAlgebra.of(coxeter(kind))
    W = H.W
    P = ParabolicModule.of(H, S0)
    for x in W.elements():
        hx = H.H(x)
        assert P.p_map(H.bar(hx)) == P.bar(P.p_map(hx))
        for s in range(W.rank):
            assert P.p_map(H.mul_gen(hx, s)) == P.act(P.p_map(hx), H.gen(s))
    for w in P.cosets:
        m = P.basis(w) * (1 + v)
        assert P.bar(P.bar(m)) == m
        # p o i is multiplication by the Poincare polynomial of W_S0 in v^-2
        poin = sum((v ** (-2 * W.length(u)) for u in W.parabolic_elements(S0)), LaurentPoly())
        assert P.p_map(P.i_map(m)) == m * poin


@pytest.mark.parametrize("kind", ["A2", "B2"])
def test_pairing_adjoint(kind):
    H = HeckeAlgebra.of(coxeter(kind))
    P = ParabolicModule.of(H, {0})
    for x in P.cosets:
        assert P.pairing(P.basis(x), P.basis(x))[0] == 1
        for y in P.cosets:
            m, n = P.basis(x) * (2 + v), P.kl(y)
            assert P.pairing(m * v, n) == P.pairing(m, n) * v**-1
            for s in range(H.W.rank):
                Hs = H.gen(s)
                assert P.pairing(P.act(m, Hs), n) == P.pairing(m, P.act(n, H.omega(Hs)))


@pytest.mark.parametrize("kind", ["A2", "B2", "A3"])
def test_parabolic_kl_basis(kind):
    H = HeckeAlgebra.of(coxeter(kind))
    for S0 in ({0}, {0, 1}, set()):
        P = ParabolicModule.of(H, S0)
        for w in P.cosets:
            b = P.kl(w)
            assert P.bar(b) == b
            assert b[w] == 1
            assert all(c.min_degree >= 1 for y, c in b.items() if y != w)
            if not S0:
                assert b.terms == H.kl(w).terms


def test_decompose(H_A2):
    H, W = H_A2, H_A2.W
    P = ParabolicModule.of(H, {0})
    s2 = W.element((1,))
    assert P.kl_decomposition(P.kl(s2)) == {s2: LaurentPoly(1)}
    assert P.kl_decomposition(P.elt()) == {}
    ch = P.p_map(H.mul(H.kl(s2), H.kl(W.element((0,)))))
    dec = P.kl_decomposition(ch)
    assert all(c.has_nonnegative_coefficients() for c in dec.values())
    with pytest.raises(TriangularityError):
        P.decompose(P.basis(s2), {s2: P.basis(s2) * 2})
