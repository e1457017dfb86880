"""Bounded configuration catalogs of small finite groups and class invariants.

A catalog collects, for every generating tuple of size ``<= max_n`` and every
partition into ``<= max_m`` blocks, the configuration set, reduced to the
representative of its recoloring orbit whose sorted tuple list is
lexicographically least.  Partitions are enumerated unordered (restricted
growth strings); the recoloring reduction accounts for every block order.

Comparisons are always stamped with their bounds: a difference proves the
full configuration families differ, equality proves nothing beyond the bounds.
"""

from __future__ import annotations

import itertools
import json
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Iterator, Sequence

import numpy as np

from .configurations import ONE_SIDED, TWO_SIDED, ConfigurationSet
from .errors import ShapeMismatch, TooLarge, UnsupportedOnInfinite
from .groups import FiniteGroup, GeneratingTuple, GroupView, closure
from .partitions import Partition

FORMAT_VERSION = 1
ORDER_GUARD = 12
COLOR_GUARD = 5

CatalogKey = tuple  # (n, m, ((c0, c1, ...), ...))


def _require_finite(view: GroupView) -> None:
    if not view.is_finite:
        raise UnsupportedOnInfinite(f"{view.kind} group is infinite")


def enumerate_generating_tuples(view: GroupView, max_n: int, strict: bool = False
                                ) -> Iterator[GeneratingTuple]:
    """Ordered tuples of distinct elements, size 1..max_n, that generate.

    Size first, then lexicographic in element index.
    """
    _require_finite(view)
    elems = view.elements()
    if strict:
        elems = [x for x in elems if x != view.identity]
    for n in range(1, max_n + 1):
        for tup in itertools.permutations(elems, n):
            if len(closure(view, tup)) == view.order:
                yield GeneratingTuple(tup, verified=True)


def restricted_growth_strings(size: int, max_m: int) -> Iterator[tuple[int, ...]]:
    """Set partitions of ``range(size)`` into at most ``max_m`` blocks as
    0-based restricted growth strings, in lexicographic order."""
    if size == 0:
        return
    word = [0] * size

    def rec(pos: int, top: int):
        if pos == size:
            yield tuple(word)
            return
        for c in range(min(top + 2, max_m)):
            word[pos] = c
            yield from rec(pos + 1, max(top, c))

    yield from rec(1, 0)


def _guard(view: GroupView, max_m: int, allow_large: bool) -> None:
    _require_finite(view)
    if allow_large:
        return
    if view.order > ORDER_GUARD:
        raise TooLarge(f"group order {view.order} exceeds the guard {ORDER_GUARD}")
    if max_m > COLOR_GUARD:
        raise TooLarge(f"max_m {max_m} exceeds the guard {COLOR_GUARD}")


def enumerate_partitions(view: GroupView, max_m: int, allow_large: bool = False
                         ) -> Iterator[Partition]:
    """Every set partition into 1..max_m blocks, blocks sorted by least element."""
    _require_finite(view)
    if not allow_large and view.order > ORDER_GUARD:
        raise TooLarge(f"group order {view.order} exceeds the guard {ORDER_GUARD}")
    elems = view.elements()
    for rgs in restricted_growth_strings(view.order, max_m):
        yield Partition.from_colors(elems, [c + 1 for c in rgs])


# ---------------------------------------------------------------------------
# vectorised configuration sets


def _colorings_by_m(order: int, max_m: int) -> dict[int, np.ndarray]:
    groups: dict[int, list] = {}
    for rgs in restricted_growth_strings(order, max_m):
        groups.setdefault(max(rgs) + 1, []).append(rgs)
    return {m: np.array(rows, dtype=np.int64) for m, rows in sorted(groups.items())}


def _position_maps(view: FiniteGroup, gens: Sequence[int], two_sided: bool) -> np.ndarray:
    maps = [np.arange(view.order)] + [view.left_perm(g) for g in gens]
    if two_sided:
        maps += [view.right_perm(g) for g in gens]
    return np.stack(maps)  # (width, N)


def _sorted_code_rows(colorings: np.ndarray, maps: np.ndarray, m: int) -> np.ndarray:
    """For colorings of shape (..., N): each set's codes sorted ascending,
    duplicates dropped and the tail padded with -1.

    A configuration ``(c_0..c_w)`` (0-based colors) has code
    ``sum c_k m^(w-k)``, so code order is lexicographic tuple order and the
    padded rows compare exactly like sorted tuple lists.
    """
    width = maps.shape[0]
    weights = m ** np.arange(width - 1, -1, -1, dtype=np.int64)
    codes = np.tensordot(colorings[..., maps], weights, axes=([-2], [0]))  # (..., N)
    codes = np.sort(codes, axis=-1)
    big = np.iinfo(np.int64).max
    dup = np.zeros_like(codes, dtype=bool)
    dup[..., 1:] = codes[..., 1:] == codes[..., :-1]
    codes = np.where(dup, big, codes)
    codes = np.sort(codes, axis=-1)
    return np.where(codes == big, -1, codes)


def _lexmin_over_axis0(rows: np.ndarray) -> np.ndarray:
    """rows (P, K, N) -> (K, N), lexicographic minimum over the first axis."""
    P, K, N = rows.shape
    alive = np.ones((P, K), dtype=bool)
    big = np.iinfo(np.int64).max
    for j in range(N):
        vals = np.where(alive, rows[:, :, j], big)
        alive &= vals == vals.min(axis=0)
    pick = alive.argmax(axis=0)
    return rows[pick, np.arange(K)]


def _decode(row: Sequence[int], m: int, width: int) -> tuple[tuple[int, ...], ...]:
    out = []
    for code in row:
        if code < 0:
            break
        digits = []
        for _ in range(width):
            code, d = divmod(int(code), m)
            digits.append(d + 1)
        out.append(tuple(reversed(digits)))
    return tuple(out)


def _sets_for_tuple(view: FiniteGroup, gens: Sequence[int], colorings: dict[int, np.ndarray],
                    two_sided: bool, canonical: bool) -> set[CatalogKey]:
    maps = _position_maps(view, gens, two_sided)
    width = maps.shape[0]
    found: set[CatalogKey] = set()
    for m, cols in colorings.items():
        if canonical and m > 1:
            perms = np.array(list(itertools.permutations(range(m))), dtype=np.int64)
            rows = _lexmin_over_axis0(_sorted_code_rows(perms[:, cols], maps, m))
        else:
            rows = _sorted_code_rows(cols, maps, m)
        for row in np.unique(rows, axis=0):
            found.add((len(gens), m, _decode(row, m, width)))
    return found


def configuration_sets(view: GroupView, max_n: int, max_m: int, two_sided: bool = False,
                       canonical: bool = True, threads: int = 1,
                       allow_large: bool = False) -> set[CatalogKey]:
    """All (n, m, tuples) keys over every configuration pair within bounds."""
    _guard(view, max_m, allow_large)
    colorings = _colorings_by_m(view.order, max_m)
    tuples = list(enumerate_generating_tuples(view, max_n))

    def work(gens):
        return _sets_for_tuple(view, gens, colorings, two_sided, canonical)

    found: set[CatalogKey] = set()
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            for part in pool.map(work, tuples):
                found |= part
    else:
        for gens in tuples:
            found |= work(gens)
    return found


# ---------------------------------------------------------------------------
# catalogs


@dataclass(frozen=True)
class ConfigurationCatalog:
    group_id: str
    max_n: int
    max_m: int
    kind: str
    sets: frozenset

    def __len__(self):
        return len(self.sets)

    def __contains__(self, cs) -> bool:
        if isinstance(cs, ConfigurationSet):
            cs = (cs.n, cs.m, cs.canonical().tuples)
        return cs in self.sets

    def sorted_sets(self) -> list[CatalogKey]:
        return sorted(self.sets)

    def to_json(self) -> dict:
        return {
            "format_version": FORMAT_VERSION,
            "group": self.group_id,
            "kind": self.kind,
            "bounds": {"max_n": self.max_n, "max_m": self.max_m},
            "count": len(self.sets),
            "sets": [_key_json(k) for k in self.sorted_sets()],
        }

    @classmethod
    def from_json(cls, obj: dict) -> ConfigurationCatalog:
        if obj.get("format_version") != FORMAT_VERSION:
            raise ValueError("unsupported catalog format version")
        sets = frozenset(
            (s["n"], s["m"], tuple(tuple(t) for t in s["tuples"])) for s in obj["sets"]
        )
        return cls(obj["group"], obj["bounds"]["max_n"], obj["bounds"]["max_m"], obj["kind"], sets)


def _key_json(key: CatalogKey) -> dict:
    n, m, tuples = key
    return {"n": n, "m": m, "tuples": [list(t) for t in tuples]}


def key_to_set(key: CatalogKey, kind: str = ONE_SIDED) -> ConfigurationSet:
    n, m, tuples = key
    return ConfigurationSet(kind, n, m, tuples)


def catalog_bytes(cat: ConfigurationCatalog) -> bytes:
    return (json.dumps(cat.to_json(), sort_keys=True, separators=(",", ":")) + "\n").encode()


def default_cache_dir() -> Path | None:
    env = os.environ.get("CONFEQUIV_CACHE_DIR")
    return Path(env) if env else None


def catalog(view: GroupView, max_n: int, max_m: int, kind: str = ONE_SIDED,
            cache_dir: str | Path | None = None, threads: int = 1,
            allow_large: bool = False) -> ConfigurationCatalog:
    if kind not in (ONE_SIDED, TWO_SIDED):
        raise ValueError(f"unknown catalog kind {kind!r}")
    _guard(view, max_m, allow_large)
    group_id = view.fingerprint()
    path = None
    if cache_dir is not None:
        path = Path(cache_dir) / f"{group_id}-{kind}-n{max_n}-m{max_m}.json"
        if path.exists():
            cached = ConfigurationCatalog.from_json(json.loads(path.read_text()))
            if (cached.group_id, cached.kind, cached.max_n, cached.max_m) == \
                    (group_id, kind, max_n, max_m):
                return cached
    sets = configuration_sets(view, max_n, max_m, two_sided=(kind == TWO_SIDED),
                              threads=threads, allow_large=allow_large)
    cat = ConfigurationCatalog(group_id, max_n, max_m, kind, frozenset(sets))
    if path is not None:
        path.parent.mkdir(parents=True, exist_ok=True)
        tmp = path.with_suffix(f".tmp{os.getpid()}")
        tmp.write_bytes(catalog_bytes(cat))
        tmp.replace(path)
    return cat


@dataclass(frozen=True)
class CatalogComparison:
    verdict: str  # equal | strictly-contained | contains | incomparable
    only_in_a: tuple
    only_in_b: tuple
    max_n: int
    max_m: int
    kind: str

    @property
    def equal(self) -> bool:
        return self.verdict == "equal"

    def to_json(self, limit: int | None = 5) -> dict:
        a, b = sorted(self.only_in_a), sorted(self.only_in_b)
        return {
            "verdict": self.verdict,
            "summary": "equal within bounds" if self.equal else "differs within bounds",
            "within_bounds": {"max_n": self.max_n, "max_m": self.max_m, "kind": self.kind},
            "conclusive": not self.equal,
            "only_in_a_count": len(a),
            "only_in_b_count": len(b),
            "only_in_a": [_key_json(k) for k in a[:limit]],
            "only_in_b": [_key_json(k) for k in b[:limit]],
        }


def compare_catalogs(c1: ConfigurationCatalog, c2: ConfigurationCatalog) -> CatalogComparison:
    if (c1.max_n, c1.max_m, c1.kind) != (c2.max_n, c2.max_m, c2.kind):
        raise ShapeMismatch("catalogs were built with different bounds or kinds")
    a_only = tuple(sorted(c1.sets - c2.sets))
    b_only = tuple(sorted(c2.sets - c1.sets))
    if not a_only and not b_only:
        verdict = "equal"
    elif not a_only:
        verdict = "strictly-contained"
    elif not b_only:
        verdict = "contains"
    else:
        verdict = "incomparable"
    return CatalogComparison(verdict, a_only, b_only, c1.max_n, c1.max_m, c1.kind)


# ---------------------------------------------------------------------------
# conjugacy invariants


@dataclass(frozen=True)
class ClassData:
    classes: tuple[frozenset, ...]
    center: frozenset

    @property
    def class_number(self) -> int:
        return len(self.classes)

    def to_json(self, view: GroupView) -> dict:
        def labels(s):
            return [view.label(x) for x in sorted(s)]

        return {
            "class_number": self.class_number,
            "class_sizes": [len(c) for c in self.classes],
            "classes": [labels(c) for c in self.classes],
            "center": labels(self.center),
        }


def class_data(view: GroupView) -> ClassData:
    _require_finite(view)
    seen: set = set()
    classes = []
    for x in view.elements():
        if x in seen:
            continue
        orbit = frozenset(view.mul(view.mul(g, x), view.inv(g)) for g in view.elements())
        seen |= orbit
        classes.append(orbit)
    center = frozenset(x for c in classes if len(c) == 1 for x in c)
    return ClassData(tuple(classes), center)


def is_normal_set(view: GroupView, S) -> bool:
    _require_finite(view)
    S = frozenset(S)
    return all(
        frozenset(view.mul(view.mul(g, s), view.inv(g)) for s in S) == S for g in view.elements()
    )
