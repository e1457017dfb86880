import itertools
import random

import pytest

from confequiv.configurations import (
    ConfigurationSet,
    configuration_of,
    configurations,
    stabilized_configurations,
    two_sided_configurations,
)
from confequiv.errors import ScopeViolation, UnsupportedOnInfinite
from confequiv.groups import FreeGroup, cyclic, generating_tuple, named_group
from confequiv.partitions import (
    Homomorphism,
    Partition,
    first_letter_partition,
    pullback_partition,
    singletons,
    trivial_partition,
)
from confequiv.catalog import enumerate_generating_tuples, enumerate_partitions

from conftest import SMALL_GROUPS, small_group


def oracle_configurations(view, gens, blocks, two_sided=False):
    """Definition-level oracle: search colors c_0..c_n with a witness x."""
    m, n = len(blocks), len(gens)
    width = 2 * n + 1 if two_sided else n + 1
    found = set()
    for colors in itertools.product(range(1, m + 1), repeat=width):
        for x in blocks[colors[0] - 1]:
            ok = all(view.mul(g, x) in blocks[colors[i + 1] - 1] for i, g in enumerate(gens))
            if two_sided:
                ok = ok and all(view.mul(x, g) in blocks[colors[n + i + 1] - 1] for i, g in enumerate(gens))
            if ok:
                found.add(colors)
                break
    return tuple(sorted(found))


def test_configuration_of_examples():
    z2 = cyclic(2)
    P = singletons(z2)
    assert configuration_of(z2, (1,), P, 0) == (1, 2)
    assert configuration_of(z2, (1,), P, 1) == (2, 1)
    assert configuration_of(z2, (1,), trivial_partition(z2), 1) == (1, 1)


def test_configuration_set_examples():
    z4 = cyclic(4)
    assert configurations(z4, (1,), singletons(z4)).tuples == ((1, 2), (2, 3), (3, 4), (4, 1))
    v4 = named_group("V4")  # 0=(0,0) 1=(0,1) 2=(1,0) 3=(1,1)
    P = Partition([[0], [1, 2, 3]])
    got = configurations(v4, (2, 1), P).tuples
    assert set(got) == {(1, 2, 2), (2, 2, 2), (2, 1, 2), (2, 2, 1)}
    assert got == oracle_configurations(v4, (2, 1), P.blocks)
    for name in ("S3", "Q8"):
        g = small_group(name)
        gens = g.default_generators()
        assert configurations(g, gens, trivial_partition(g)).tuples == ((1,) * (len(gens) + 1),)


def test_two_sided_examples():
    z2 = cyclic(2)
    assert two_sided_configurations(z2, (1,), singletons(z2)).tuples == ((1, 2, 2), (2, 1, 1))
    s3 = small_group("S3")
    gens = s3.default_generators()
    assert two_sided_configurations(s3, gens, trivial_partition(s3)).tuples == ((1,) * 5,)


@pytest.mark.parametrize("name", ["Z4", "V4", "S3", "Z6", "D4", "Q8"])
def test_matches_definition_oracle(name):
    g = small_group(name)
    rng = random.Random(name)
    tuples = list(enumerate_generating_tuples(g, 2))
    parts = list(enumerate_partitions(g, 3))
    for _ in range(25):
        gens, P = rng.choice(tuples), rng.choice(parts)
        for two in (False, True):
            assert configurations(g, gens, P, two_sided=two).tuples == \
                oracle_configurations(g, gens, P.blocks, two)


@pytest.mark.parametrize("name", ["Z4", "V4", "Z2xZ4", "Z8"])
def test_abelian_two_sided_duplicates(name):
    g = small_group(name)
    for gens in list(enumerate_generating_tuples(g, 2))[:10]:
        for P in list(enumerate_partitions(g, 3))[:40]:
            one = configurations(g, gens, P)
            two = two_sided_configurations(g, gens, P)
            assert two.tuples == tuple(sorted(t + t[1:] for t in one.tuples))


def test_recoloring_equivariance():
    rng = random.Random(5)
    for _ in range(60):
        g = small_group(rng.choice(sorted(SMALL_GROUPS)))
        gens = g.default_generators()
        m = rng.randint(1, min(4, g.order))
        P = rng.choice([p for p in enumerate_partitions(g, m) if p.m == m])
        for sigma in itertools.permutations(range(1, m + 1)):
            base = configurations(g, gens, P)
            assert configurations(g, gens, P.permuted(sigma)) == base.recolored(sigma)


def test_element_order_does_not_matter():
    g = small_group("D4")
    gens = g.default_generators()
    P = Partition([[0, 5], [1, 2, 7], [3, 4, 6]])
    rng = random.Random(1)
    base = configurations(g, gens, P)
    for _ in range(10):
        order = g.elements()
        rng.shuffle(order)
        from confequiv.configurations import _collect

        assert tuple(sorted(_collect(g, gens, P, order, False))) == base.tuples


def test_canonical_form():
    cs = ConfigurationSet("one-sided", 1, 2, ((2, 1), (1, 2)))
    assert cs.tuples == ((1, 2), (2, 1))
    assert ConfigurationSet("one-sided", 1, 2, ((2, 2), (2, 1))).canonical().tuples == ((1, 1), (1, 2))
    with pytest.raises(ValueError):
        ConfigurationSet("one-sided", 1, 2, ((1, 3),))
    assert ConfigurationSet.from_json(cs.to_json()) == cs


# ---------------------------------------------------------------------------
# ball scopes


def test_free_group_stabilises_by_radius_3():
    f = FreeGroup(2)
    gens = f.default_generators()
    P = first_letter_partition(f)
    observed = [configurations(f, gens, P, radius=R).tuples for R in range(1, 5)]
    assert [len(o) for o in observed] == [1, 5, 11, 11]
    for a, b in zip(observed, observed[1:]):
        assert set(a) <= set(b)
    cs = stabilized_configurations(f, gens, P, 4, 2)
    assert cs.exactness["status"] == "stable" and cs.exactness["radius"] == 3
    assert cs.tuples == observed[2]
    assert not cs.is_exact


def test_stabilisation_edge_cases():
    f = FreeGroup(2)
    P = first_letter_partition(f)
    assert stabilized_configurations(f, f.default_generators(), P, 1, 2).exactness["status"] == "unstable"
    g = small_group("Z6")
    gens = (1,)
    cs = stabilized_configurations(g, gens, singletons(g), 8, 2)
    # the ball of radius R-1 around e covers Z6 from R-1 = 3 on
    assert cs.exactness == {"status": "stable", "radius": 4, "span": 2, "checked_to": 5}
    assert cs == configurations(g, gens, singletons(g))


def test_infinite_needs_radius():
    f = FreeGroup(2)
    with pytest.raises(UnsupportedOnInfinite):
        configurations(f, f.default_generators(), first_letter_partition(f))
    P = first_letter_partition(f).restrict([x for x, _ in __import__("confequiv").ball(f, f.default_generators(), 1)])
    with pytest.raises(ScopeViolation):
        configurations(f, f.default_generators(), P, radius=3)


# ---------------------------------------------------------------------------
# transfer along epimorphisms


EPIS = [("Z4", "Z2", {1: 1}), ("V4", "Z2", {1: 0, 2: 1}), ("S3", "Z2", None), ("D4", "V4", {1: 2, 4: 1})]


def epi(src, tgt, imgs):
    s = small_group(src)
    t = small_group(tgt)
    if imgs is None:
        return Homomorphism(s, t, [0 if s.labels[x] in ("e", "(1 2 3)", "(1 3 2)") else 1 for x in s.elements()])
    return Homomorphism.from_generators(s, t, imgs)


def _union(P, idx):
    return frozenset().union(*[P.blocks[i - 1] for i in idx]) if idx else frozenset()


@pytest.mark.parametrize("src,tgt,imgs", EPIS)
def test_translation_and_subalgebra_transfer(src, tgt, imgs):
    q = epi(src, tgt, imgs)
    G, H = q.source, q.target
    rng = random.Random(src)
    tuples = list(enumerate_generating_tuples(G, 2))
    parts = list(enumerate_partitions(H, 4))
    for _ in range(20):
        gens, F = rng.choice(tuples), rng.choice(parts)
        E = pullback_partition(q, F)
        hgens = tuple(q(g) for g in gens)
        assert configurations(G, gens, E) == configurations(H, hgens, F)
        m = F.m
        subsets = [s for r in range(m + 1) for s in itertools.combinations(range(1, m + 1), r)]
        for g, h in zip(gens, hgens):
            for I1, I2 in itertools.product(subsets, repeat=2):
                A1, A2, B1, B2 = _union(E, I1), _union(E, I2), _union(F, I1), _union(F, I2)
                gA1 = frozenset(G.mul(g, x) for x in A1)
                hB1 = frozenset(H.mul(h, y) for y in B1)
                if gA1 <= A2:
                    assert hB1 <= B2
                if gA1 == A2:
                    assert hB1 == B2
        # coarsen both sides by the same grouping of colors
        grouping = [rng.randint(1, 2) for _ in range(m)]
        if len(set(grouping)) == 2:
            Ec = Partition([_union(E, [i + 1 for i in range(m) if grouping[i] == j]) for j in (1, 2)])
            Fc = Partition([_union(F, [i + 1 for i in range(m) if grouping[i] == j]) for j in (1, 2)])
            assert configurations(G, gens, Ec) == configurations(H, hgens, Fc)
            assert two_sided_configurations(G, gens, Ec) == two_sided_configurations(H, hgens, Fc)
