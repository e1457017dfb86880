import itertools
import json

import pytest

from confequiv.catalog import (
    ConfigurationCatalog,
    catalog,
    catalog_bytes,
    class_data,
    compare_catalogs,
    configuration_sets,
    enumerate_generating_tuples,
    enumerate_partitions,
    is_normal_set,
    restricted_growth_strings,
)
from confequiv.configurations import ConfigurationSet, configurations
from confequiv.errors import ShapeMismatch, TooLarge, UnsupportedOnInfinite
from confequiv.groups import FreeGroup, closure, cyclic, named_group

from conftest import SMALL_GROUPS, small_group


def brute_partitions(items, max_m):
    """All set partitions by recursive insertion (independent of growth strings)."""
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for p in brute_partitions(rest, max_m):
        for i in range(len(p)):
            yield p[:i] + [[first] + p[i]] + p[i + 1:]
        if len(p) < max_m:
            yield [[first]] + p


def test_partition_counts():
    assert sum(1 for _ in restricted_growth_strings(4, 4)) == 15  # Bell(4)
    assert sum(1 for _ in restricted_growth_strings(4, 2)) == 8
    for size in range(1, 7):
        for max_m in range(1, 5):
            ours = {frozenset(map(frozenset, p.blocks)) for p in enumerate_partitions(cyclic(size), max_m)}
            ref = {frozenset(map(frozenset, p)) for p in brute_partitions(list(range(size)), max_m)}
            assert ours == ref


def test_generating_tuples():
    z4 = cyclic(4)
    assert [tuple(t) for t in enumerate_generating_tuples(z4, 1)] == [(1,), (3,)]
    v4 = named_group("V4")
    assert list(enumerate_generating_tuples(v4, 1)) == []
    two = list(enumerate_generating_tuples(v4, 2))
    assert len(two) == 6
    s3 = small_group("S3")
    ref = [t for t in itertools.permutations(range(6), 2) if len(closure(s3, t)) == 6]
    assert [tuple(t) for t in enumerate_generating_tuples(s3, 2) if len(t) == 2] == ref
    with pytest.raises(UnsupportedOnInfinite):
        list(enumerate_generating_tuples(FreeGroup(2), 1))


def test_small_catalog_examples():
    z4 = cyclic(4)
    cs = ConfigurationSet("one-sided", 1, 4, ((1, 2), (2, 3), (3, 4), (4, 1)))
    assert cs in catalog(z4, 1, 4)
    assert len(catalog(named_group("V4"), 1, 4)) == 0
    trivial = catalog(cyclic(1), 1, 1)
    assert trivial.sets == frozenset({(1, 1, ((1, 1),))})


@pytest.mark.parametrize("name", ["Z1", "Z3", "Z4", "V4", "S3", "Z6", "D4", "Q8"])
@pytest.mark.parametrize("two_sided", [False, True])
def test_vectorised_matches_python(name, two_sided):
    g = small_group(name)
    max_m = 3
    ref_canon, ref_raw = set(), set()
    for gens in enumerate_generating_tuples(g, 2):
        for P in enumerate_partitions(g, max_m):
            cs = configurations(g, gens, P, two_sided=two_sided)
            ref_raw.add((cs.n, cs.m, cs.tuples))
            ref_canon.add((cs.n, cs.m, cs.canonical().tuples))
    assert configuration_sets(g, 2, max_m, two_sided) == ref_canon
    assert configuration_sets(g, 2, max_m, two_sided, canonical=False) == ref_raw


def test_guards():
    with pytest.raises(TooLarge):
        configuration_sets(cyclic(13), 1, 2)
    with pytest.raises(TooLarge):
        configuration_sets(cyclic(4), 1, 6)


def test_isomorphic_presentations_equal():
    a = catalog(cyclic(6), 2, 3)
    b = catalog(named_group("Z2xZ3"), 2, 3)
    assert a.group_id != b.group_id
    assert compare_catalogs(a, b).equal


def test_z4_v4_witness():
    a, b = catalog(cyclic(4), 1, 2), catalog(named_group("V4"), 1, 2)
    cmp = compare_catalogs(a, b)
    assert cmp.verdict == "contains" and not cmp.only_in_b
    assert cmp.to_json()["summary"] == "differs within bounds"
    with pytest.raises(ShapeMismatch):
        compare_catalogs(a, catalog(cyclic(4), 1, 3))


def test_threads_and_cache(tmp_path):
    g = small_group("D4")
    one = catalog(g, 2, 3, threads=1)
    eight = catalog(g, 2, 3, threads=8)
    assert catalog_bytes(one) == catalog_bytes(eight)
    first = catalog(g, 2, 3, cache_dir=tmp_path)
    files = list(tmp_path.iterdir())
    assert len(files) == 1
    assert files[0].read_bytes() == catalog_bytes(first)
    again = catalog(g, 2, 3, cache_dir=tmp_path)
    assert catalog_bytes(again) == catalog_bytes(first)
    assert ConfigurationCatalog.from_json(json.loads(catalog_bytes(first))) == first


def brute_class_number(g):
    # commuting pairs count |G| * k(G)
    pairs = sum(1 for x in g.elements() for y in g.elements() if g.mul(x, y) == g.mul(y, x))
    return pairs // g.order


@pytest.mark.parametrize("name", sorted(SMALL_GROUPS))
def test_class_numbers(name):
    g = small_group(name)
    cd = class_data(g)
    assert cd.class_number == brute_class_number(g)
    expected = {"S3": 3, "D4": 5, "Q8": 5}
    assert cd.class_number == expected.get(name, g.order if g.is_abelian else None)
    assert cd.center == frozenset(
        x for x in g.elements() if all(g.mul(x, y) == g.mul(y, x) for y in g.elements())
    )


def test_normal_sets():
    s3 = small_group("S3")
    for cls in class_data(s3).classes:
        assert is_normal_set(s3, cls)
    transposition = next(x for x in s3.elements() if s3.mul(x, x) == s3.identity and x != s3.identity)
    assert not is_normal_set(s3, {s3.identity, transposition})
