import random
from fractions import Fraction

import pytest

from hochstar import blocksolve
from hochstar.cochain import (
    Cochain,
    apply,
    degree_split,
    delta,
    delta_T,
    flip,
    flip_split,
    inner,
    key_degree,
)
from hochstar.multiindex import indices_up_to
from hochstar.poly import Poly, parse_poly, random_poly
from hochstar.starprod import pi1
from hochstar.verify import x_antisym3

E1, E2 = (1, 0), (0, 1)


def random_cochain(rng, arity, n, max_order=2, nterms=4, tilde=False, poly_degree=1):
    idx = [a for a in indices_up_to(n, max_order) if not tilde or any(a)]
    terms = {}
    for _ in range(nterms):
        key = tuple(rng.choice(idx) for _ in range(arity))
        terms[key] = random_poly(rng, n, poly_degree, max_terms=2)
    return Cochain(arity, n, terms)


def hochschild_definition(phi, fs):
    """delta Phi (f1..f_{p+1}) straight from the coboundary formula."""
    p = phi.arity
    total = fs[0] * apply(phi, fs[1:])
    for k in range(1, p + 1):
        merged = fs[:k - 1] + [fs[k - 1] * fs[k]] + fs[k + 1:]
        term = apply(phi, merged)
        total = total + (term if k % 2 == 0 else -term)
    last = apply(phi, fs[:p]) * fs[p]
    return total + (last if (p + 1) % 2 == 0 else -last)


def test_apply_examples(moyal):
    phi = Cochain.basis((E1, E2), 2)
    assert apply(phi, [parse_poly("x1^2", 2), parse_poly("x2", 2)]) == parse_poly("2*x1", 2)
    one = Poly.const(2, 1)
    assert apply(phi, [parse_poly("x1^3", 2), one]).is_zero()
    assert apply(pi1(moyal), [Poly.var(2, 0), Poly.var(2, 1)]) == Poly.const(2, Fraction(1, 2))
    with pytest.raises(ValueError):
        apply(phi, [one])


def test_delta_examples():
    assert delta(Cochain.basis(((2,),), 1)) == Cochain.basis(((1,), (1,)), 1, -1)
    assert delta(Cochain.basis((E1, E2), 2)).is_zero()
    assert delta(Cochain.basis(((1,), (2,)), 1)) == Cochain.basis(((1,), (1,), (1,)), 1)


def test_delta_of_zero_index():
    # delta X^0 (f, g) = f g
    got = delta(Cochain.basis(((0, 0),), 2))
    assert got == Cochain.basis(((0, 0), (0, 0)), 2)


def test_delta_T_examples():
    assert delta_T(Cochain.basis(((1,), (1,)), 1)) == Cochain.basis(((2,),), 1, -1)
    assert delta_T(Cochain.basis(((0, 0), (1, 2)), 2)).is_zero()
    assert delta_T(Cochain.basis(((0, 0), (0, 0)), 2)) == Cochain.basis(((0, 0),), 2)


@pytest.mark.parametrize("seed", range(12))
def test_delta_matches_hochschild_definition(seed):
    rng = random.Random(seed)
    n = 2
    for arity in (1, 2):
        phi = random_cochain(rng, arity, n, poly_degree=2)
        fs = [random_poly(rng, n, 3) for _ in range(arity + 1)]
        assert apply(delta(phi), fs) == hochschild_definition(phi, fs)


@pytest.mark.parametrize("seed", range(10))
def test_delta_squared_zero(seed):
    rng = random.Random(100 + seed)
    for n in (1, 2, 3):
        for arity in (1, 2):
            phi = random_cochain(rng, arity, n, max_order=5 // arity if n < 3 else 2)
            assert delta(delta(phi)).is_zero()


@pytest.mark.parametrize("seed", range(10))
def test_adjointness(seed):
    rng = random.Random(200 + seed)
    for n in (1, 2):
        for arity in (1, 2):
            phi = random_cochain(rng, arity, n, nterms=6)
            psi = random_cochain(rng, arity + 1, n, nterms=12, max_order=2)
            assert inner(delta_T(psi), phi) == inner(psi, delta(phi))


@pytest.mark.parametrize("seed", range(6))
def test_degree_and_tilde_preserved(seed):
    rng = random.Random(300 + seed)
    for arity in (1, 2):
        phi = random_cochain(rng, arity, 2, max_order=3)
        for l, part in degree_split(phi).items():
            out = delta(part)
            assert all(key_degree(k) == l for k in out.terms)
        tphi = random_cochain(rng, arity, 2, tilde=True)
        assert delta(tphi).is_tilde
        tpsi = random_cochain(rng, arity + 1, 2, tilde=True)
        assert delta_T(tpsi).is_tilde


def test_delta_agrees_with_block_matrix():
    for n in (1, 2, 3):
        for l in indices_up_to(n, 4):
            for p in (1, 2):
                for tilde in (True, False):
                    m = blocksolve.delta_matrix(p, tuple(l), tilde)
                    for c, key in enumerate(m.col_basis.tuples):
                        image = delta(Cochain.basis(key, n))
                        column = {m.row_basis.tuples[r]: row[c]
                                  for r, row in enumerate(m.entries) if row[c]}
                        assert {k: v.constant_term() for k, v in image.terms.items()} == column


def test_inner_examples():
    a = Cochain.basis((E1, E2), 2)
    assert inner(a, a) == Poly.const(2, 1)
    assert inner(a, Cochain.basis((E2, E1), 2)).is_zero()
    x1 = Poly.var(2, 0)
    assert inner(Cochain.basis((E1, E1), 2, x1), Cochain.basis((E1, E1), 2, 2)) == x1 * 2


def test_degree_split_examples(so3):
    assert set(degree_split(pi1(so3))) == {(1, 1, 0), (1, 0, 1), (0, 1, 1)}
    phi = Cochain.basis(((1,), (1,)), 1) + Cochain.basis(((2,), (2,)), 1)
    assert set(degree_split(phi)) == {(2,), (4,)}
    assert degree_split(Cochain(2, 1)) == {}
    rng = random.Random(5)
    psi = random_cochain(rng, 2, 3, nterms=10)
    total = Cochain(2, 3)
    for part in degree_split(psi).values():
        total = total + part
    assert total == psi


def test_flip_split_examples(so3):
    p1 = pi1(so3)
    sym, anti = flip_split(p1)
    assert sym.is_zero() and anti == p1
    half = Fraction(1, 2)
    s, a = flip_split(Cochain.basis((E1, E2), 2))
    assert s == (Cochain.basis((E1, E2), 2) + Cochain.basis((E2, E1), 2)) * half
    assert a == (Cochain.basis((E1, E2), 2) - Cochain.basis((E2, E1), 2)) * half
    s3, a3 = flip_split(x_antisym3(0, 1, 2, 3))
    assert s3.is_zero() and a3 == x_antisym3(0, 1, 2, 3)
    with pytest.raises(ValueError):
        flip_split(Cochain.basis(((1,),), 1))


@pytest.mark.parametrize("seed", range(6))
def test_flip_symmetry_exchange(seed):
    rng = random.Random(400 + seed)
    phi = random_cochain(rng, 2, 3, tilde=True, nterms=8)
    sym, anti = flip_split(phi)
    assert sym + anti == phi
    assert flip(sym) == sym and flip(anti) == -anti
    dsym, danti = delta(sym), delta(anti)
    assert flip(dsym) == -dsym
    assert flip(danti) == danti


def test_json_roundtrip(so3):
    c = pi1(so3)
    data = c.to_json()
    assert data["arity"] == 2
    assert [t["key"] for t in data["terms"]] == sorted(t["key"] for t in data["terms"])
    assert Cochain.from_json(data, 3) == c


def test_key_validation():
    with pytest.raises(ValueError):
        Cochain(2, 2, {((1, 0),): 1})
