import random

import pytest
from hypothesis import given, strategies as st

from confequiv.errors import UnsupportedOnQuotient
from confequiv.groups import ball, eval_word, RepresentativePair
from confequiv.laurent import LaurentPoly
from confequiv.paper_checks import (
    center_checks,
    identity_checks,
    inverse_checks,
    matrix_agreement,
    phi_checks,
    random_kelement,
)
from confequiv.paper_groups import (
    IDENTITY,
    K1,
    K2,
    K3,
    MODE_G,
    MODE_H,
    MODE_K,
    KElement,
    PaperGroup,
    center_membership,
    k_inv,
    k_mul,
    k_pow,
    matrix_product,
    order_bounded,
    phi,
    phi_inv,
    reduce,
)

t = LaurentPoly.monomial
ONE = LaurentPoly.constant(1)
ZERO = LaurentPoly()
MODES = (MODE_K, MODE_G, MODE_H)


def test_mul_examples():
    assert k_mul(K1, K2) == KElement(1, ONE) == matrix_product(K1, K2)
    x = KElement(2, t(-1), ONE + t(3), t(5))
    assert k_mul(IDENTITY, x) == x == k_mul(x, IDENTITY)
    assert k_mul(k_mul(k_inv(K1), K2), K1) == KElement(0, t(1))


def test_inv_examples():
    assert k_inv(IDENTITY) == IDENTITY
    assert k_inv(K3) == KElement(0, ZERO, -ONE)
    assert k_inv(KElement(0, t(1))) == KElement(0, -t(1))
    for x in (K3, KElement(0, t(1))):
        assert matrix_product(x, k_inv(x)) == IDENTITY


def test_phi_examples():
    assert phi(IDENTITY) == IDENTITY
    assert phi(K3) == KElement(0, ZERO, t(1))
    with pytest.raises(UnsupportedOnQuotient):
        phi(K3, MODE_G)
    with pytest.raises(UnsupportedOnQuotient):
        phi_inv(K3, MODE_H)


def test_reduce_examples():
    assert reduce(KElement(0, D=LaurentPoly.constant(2)), MODE_H) == IDENTITY
    assert reduce(KElement(0, D=t(-1)), MODE_G) == KElement(0, D=t(-1))
    assert reduce(KElement(0, D=ONE + t(1)), MODE_G) == IDENTITY
    x = KElement(0, D=LaurentPoly({-2: 4, 0: 3, 2: 1}))
    assert reduce(x, MODE_H) == KElement(0, D=LaurentPoly({-2: 4, 0: 1}))
    assert reduce(x, MODE_K) == x


def test_order_examples():
    z = KElement(0, D=ONE)
    assert order_bounded(z, MODE_H, 100) == 2
    assert order_bounded(KElement(0, D=t(-1)), MODE_G, 100) is None
    assert order_bounded(IDENTITY, MODE_K, 1) == 1
    assert order_bounded(K1, MODE_K, 50) is None
    with pytest.raises(ValueError):
        order_bounded(z, MODE_H, 0)


def test_order_shortcut_agrees_with_iteration():
    rng = random.Random(2)
    for _ in range(50):
        x = random_kelement(rng)
        if x.a == 0:
            continue
        y = x
        for _ in range(20):
            assert y != IDENTITY
            y = k_mul(y, x)


def test_center_examples():
    assert center_membership(KElement(0, D=LaurentPoly({-3: 1, 4: 7})))
    assert not center_membership(K1)
    assert not center_membership(K2)
    assert center_checks()["ok"]


def test_center_elements_commute():
    rng = random.Random(4)
    for _ in range(200):
        z = KElement(0, D=random_kelement(rng).D)
        x = random_kelement(rng)
        assert k_mul(z, x) == k_mul(x, z)


def test_generator_identities():
    res = identity_checks(-6, 6)
    assert res["ok"]
    for row in res["rows"]:
        m = row["m"]
        k1m = k_pow(K1, m)
        u = k_mul(k_mul(k_pow(K1, -m), K2), k1m)
        comm = k_mul(k_mul(k_mul(K3, u), k_inv(K3)), k_inv(u))
        # the convention x y x^-1 y^-1 gives -t^m; the reversed order gives +t^m
        assert comm == KElement(0, D=-t(m))
        rev = k_mul(k_mul(k_mul(u, K3), k_inv(u)), k_inv(K3))
        assert rev == KElement(0, D=t(m))


def test_random_checks():
    assert matrix_agreement(500, seed=1)["ok"]
    assert phi_checks(500, seed=1)["ok"]
    assert inverse_checks(200, seed=1)["ok"]


kelements = st.builds(
    KElement,
    st.integers(-3, 3),
    *[st.dictionaries(st.integers(-3, 3), st.integers(-3, 3), max_size=3).map(LaurentPoly)] * 3,
)


@given(kelements, kelements, kelements, st.sampled_from(MODES))
def test_group_axioms(x, y, z, mode):
    x, y, z = reduce(x, mode), reduce(y, mode), reduce(z, mode)
    assert k_mul(k_mul(x, y, mode), z, mode) == k_mul(x, k_mul(y, z, mode), mode)
    assert k_mul(IDENTITY, x, mode) == x == k_mul(x, IDENTITY, mode)
    assert k_mul(x, k_inv(x, mode), mode) == IDENTITY == k_mul(k_inv(x, mode), x, mode)


@given(kelements, kelements, st.sampled_from(MODES))
def test_reduce_is_a_congruence(x, y, mode):
    assert k_mul(reduce(x, mode), reduce(y, mode), mode) == reduce(k_mul(x, y), mode)


@given(kelements, kelements)
def test_phi_automorphism(x, y):
    assert phi(k_mul(x, y)) == k_mul(phi(x), phi(y))
    assert phi_inv(phi(x)) == x


@given(st.integers(-4, 4), st.dictionaries(st.integers(0, 5), st.integers(-3, 3), max_size=4))
def test_phi_moves_n_m_into_n_m_plus_1(m, coeffs):
    D = LaurentPoly(coeffs).shift(m)  # an element of t^m Z[t]
    image = phi(KElement(0, D=D)).D
    assert all(d >= m + 1 for d, _ in image.terms)


def test_paper_group_views():
    for kind in ("paper-K", "paper-G", "paper-H"):
        g = PaperGroup(kind)
        assert g.parse_element("k1") == K1
        assert g.default_generators() == (K1, K2, K3)
        assert not g.is_finite
    H = PaperGroup("paper-H")
    assert H.parse_element({"a": 0, "D": {"0": 3}}) == KElement(0, D=ONE)
    k1, k2, k3 = PaperGroup("paper-K").default_generators()
    pair = RepresentativePair((1, 2, 1), (-1, 1, 1))
    assert eval_word(PaperGroup("paper-K"), (k1, k2, k3), pair) == KElement(0, t(1))
    assert len(ball(PaperGroup("paper-G"), (K1, K2, K3), 2)) > 1
