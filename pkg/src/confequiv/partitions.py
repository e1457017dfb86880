"""Partitions (colorings), atoms of finite set algebras, and quotient pullbacks.

Block order is meaningful: block ``j`` (1-based) is color ``j``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

from .errors import (
    NotEpimorphism,
    NotGenerating,
    NotNormal,
    ScopeViolation,
    ShapeMismatch,
    UnsupportedOnInfinite,
)
from .groups import FiniteGroup, FreeGroup, GroupView, closure


class Partition:
    """Ordered blocks over an explicit finite universe."""

    oracle = False

    def __init__(self, blocks: Iterable[Iterable], universe: Iterable | None = None,
                 scope: str = "full"):
        self.blocks = tuple(frozenset(b) for b in blocks)
        self.scope = scope
        self._color: dict = {}
        for j, block in enumerate(self.blocks, start=1):
            if not block:
                raise ShapeMismatch(f"block {j} is empty")
            for x in block:
                if x in self._color:
                    raise ShapeMismatch(f"element {x!r} lies in blocks {self._color[x]} and {j}")
                self._color[x] = j
        if universe is not None:
            universe = set(universe)
            if universe != set(self._color):
                raise ScopeViolation("blocks do not cover exactly the universe")

    @classmethod
    def from_colors(cls, elements: Sequence, colors: Sequence[int], scope: str = "full") -> Partition:
        """Build from a 1-based color per element."""
        m = max(colors)
        blocks: list[list] = [[] for _ in range(m)]
        for x, c in zip(elements, colors):
            blocks[c - 1].append(x)
        return cls(blocks, scope=scope)

    @property
    def m(self) -> int:
        return len(self.blocks)

    @property
    def universe(self) -> frozenset:
        return frozenset(self._color)

    def color(self, x) -> int:
        try:
            return self._color[x]
        except KeyError:
            raise ScopeViolation(f"element {x!r} is outside the partition's scope") from None

    def colors(self, elements: Sequence) -> list[int]:
        return [self.color(x) for x in elements]

    def permuted(self, sigma: Sequence[int]) -> Partition:
        """Recolor: old color ``j`` becomes ``sigma[j-1]`` (1-based)."""
        blocks: list = [None] * self.m
        for j, block in enumerate(self.blocks):
            blocks[sigma[j] - 1] = block
        return Partition(blocks, scope=self.scope)

    def key(self) -> tuple:
        return tuple(tuple(sorted(b, key=repr)) for b in self.blocks)

    def __eq__(self, other):
        return isinstance(other, Partition) and self.blocks == other.blocks

    def __hash__(self):
        return hash(self.blocks)

    def __repr__(self):
        return f"Partition({[sorted(b, key=repr) for b in self.blocks]})"


class OraclePartition:
    """Partition of an infinite group given by a color function.

    Disjointness and cover hold by construction; non-emptiness can only be
    checked on a finite working set, see :meth:`restrict`.
    """

    oracle = True

    def __init__(self, m: int, color_fn: Callable[[object], int], name: str = "oracle"):
        self.m = m
        self._fn = color_fn
        self.name = name
        self.scope = "oracle"

    def color(self, x) -> int:
        c = self._fn(x)
        if not 1 <= c <= self.m:
            raise ScopeViolation(f"oracle {self.name} returned color {c}")
        return c

    def colors(self, elements: Sequence) -> list[int]:
        return [self.color(x) for x in elements]

    def restrict(self, elements: Sequence, radius: int | None = None) -> Partition:
        """Explicit partition of a working set (scope-checked only there)."""
        blocks: list[list] = [[] for _ in range(self.m)]
        for x in elements:
            blocks[self.color(x) - 1].append(x)
        scope = "ball" if radius is None else f"ball-{radius}"
        return Partition(blocks, scope=scope)

    def __repr__(self):
        return f"OraclePartition({self.name!r}, m={self.m})"


def first_letter_partition(view: FreeGroup) -> OraclePartition:
    """{e}, S(a), S(a^-1), S(b), S(b^-1), ... where S(w) holds the reduced
    words starting with letter w."""

    def color(x):
        if not x:
            return 1
        s = x[0]
        return 2 + 2 * (abs(s) - 1) + (0 if s > 0 else 1)

    return OraclePartition(2 * view.rank + 1, color, name="first-letter")


def singletons(view: FiniteGroup) -> Partition:
    return Partition([[x] for x in view.elements()], universe=view.elements())


def trivial_partition(view: FiniteGroup) -> Partition:
    return Partition([view.elements()], universe=view.elements())


# ---------------------------------------------------------------------------
# set algebra


def _universe_of(universe) -> list:
    if isinstance(universe, GroupView):
        return universe.elements()
    return list(universe)


def atoms(universe, sets: Sequence[Iterable]) -> Partition:
    """Atoms of the set algebra generated by ``sets`` inside ``universe``.

    Elements are grouped by membership signature.  Blocks are ordered so that
    membership sorts before non-membership coordinate by coordinate; the
    all-outside class therefore comes last.
    """
    elems = _universe_of(universe)
    elem_set = set(elems)
    sets = [frozenset(s) for s in sets]
    for s in sets:
        if not s <= elem_set:
            raise ScopeViolation("a generating set leaves the universe")
    classes: dict[tuple, list] = {}
    for x in elems:
        sig = tuple(x in s for s in sets)
        classes.setdefault(sig, []).append(x)
    order = sorted(classes, key=lambda sig: tuple(not b for b in sig))
    return Partition([classes[sig] for sig in order], universe=elems)


def meet(P: Partition, Q: Partition) -> Partition:
    if P.universe != Q.universe:
        raise ScopeViolation("partitions live on different scopes")
    elems = sorted(P.universe, key=_sort_key)
    return atoms(elems, list(P.blocks) + list(Q.blocks))


def _sort_key(x):
    return (0, x) if isinstance(x, int) else (1, repr(x))


def is_refinement(fine: Partition, coarse: Partition) -> bool:
    if fine.universe != coarse.universe:
        raise ScopeViolation("partitions live on different scopes")
    return all(sum(1 for c in coarse.blocks if b & c) == 1 for b in fine.blocks)


@dataclass(frozen=True)
class SimilarityWitness:
    """For each refined block j, the coarse indices it meets, on both sides."""

    incidence_a: tuple[frozenset, ...]
    incidence_b: tuple[frozenset, ...]

    @property
    def similar(self) -> bool:
        return self.incidence_a == self.incidence_b

    def mismatches(self) -> list[int]:
        return [j for j, (a, b) in enumerate(zip(self.incidence_a, self.incidence_b), 1) if a != b]

    def to_json(self) -> dict:
        return {
            "incidence_a": [sorted(s) for s in self.incidence_a],
            "incidence_b": [sorted(s) for s in self.incidence_b],
            "mismatched_blocks": self.mismatches(),
        }


def incidence(fine: Partition, coarse: Partition) -> tuple[frozenset, ...]:
    return tuple(
        frozenset(i for i, c in enumerate(coarse.blocks, start=1) if b & c) for b in fine.blocks
    )


def similar(pair_a: tuple[Partition, Partition], pair_b: tuple[Partition, Partition]):
    """Similarity of (refined, coarse) pairs over two groups.

    Returns ``(flag, witness)``.
    """
    (fa, ca), (fb, cb) = pair_a, pair_b
    if fa.m != fb.m or ca.m != cb.m:
        raise ShapeMismatch(
            f"block counts differ: refined {fa.m} vs {fb.m}, coarse {ca.m} vs {cb.m}"
        )
    if not (is_refinement(fa, ca) and is_refinement(fb, cb)):
        raise ShapeMismatch("each pair must be (refinement, coarse partition)")
    witness = SimilarityWitness(incidence(fa, ca), incidence(fb, cb))
    return witness.similar, witness


# ---------------------------------------------------------------------------
# homomorphisms and pullbacks


class Homomorphism:
    """A homomorphism between finite views, stored as an image table."""

    def __init__(self, source: FiniteGroup, target: GroupView, images: Sequence):
        if not source.is_finite:
            raise UnsupportedOnInfinite("tabulated homomorphisms need a finite source")
        images = tuple(images)
        if len(images) != source.order:
            raise NotEpimorphism("image table has the wrong length")
        for x in source.elements():
            for y in source.elements():
                if images[source.mul(x, y)] != target.mul(images[x], images[y]):
                    raise NotEpimorphism(f"not a homomorphism at ({x}, {y})")
        self.source = source
        self.target = target
        self.images = images

    @classmethod
    def from_generators(cls, source: FiniteGroup, target: GroupView, gen_images: dict):
        """Extend ``{generator: image}`` multiplicatively (checked)."""
        images = {source.identity: target.identity}
        frontier = [source.identity]
        gens = list(gen_images.items())
        while frontier:
            nxt = []
            for x in frontier:
                for g, h in gens:
                    y = source.mul(x, g)
                    if y not in images:
                        images[y] = target.mul(images[x], h)
                        nxt.append(y)
            frontier = nxt
        if len(images) != source.order:
            raise NotGenerating("generator images do not determine the map")
        return cls(source, target, [images[x] for x in source.elements()])

    def __call__(self, x):
        return self.images[x]

    def is_surjective(self) -> bool:
        return self.target.is_finite and set(self.images) == set(self.target.elements())

    def kernel(self) -> set:
        return {x for x in self.source.elements() if self.images[x] == self.target.identity}


class QuotientReduction:
    """Natural map from one paper group to a quotient (e.g. K -> G)."""

    def __init__(self, source: GroupView, target):
        self.source = source
        self.target = target

    def __call__(self, x):
        return self.target.reduce(x)


def pullback_partition(q, F):
    """Preimages ``q^-1(F_j)`` in block order of ``F``."""
    if isinstance(q, Homomorphism):
        if not q.is_surjective():
            raise NotEpimorphism("map is not onto the partitioned group")
        if not F.oracle and F.universe != frozenset(q.target.elements()):
            raise NotEpimorphism("partition does not live on the map's target")
        blocks: list[list] = [[] for _ in range(F.m)]
        for x in q.source.elements():
            blocks[F.color(q(x)) - 1].append(x)
        return Partition(blocks, universe=q.source.elements())
    return OraclePartition(F.m, lambda x: F.color(q(x)), name="pullback")


def _is_normal_subgroup(view: FiniteGroup, N: set) -> bool:
    if view.identity not in N:
        return False
    if any(view.mul(x, view.inv(y)) not in N for x in N for y in N):
        return False
    return all(view.mul(view.mul(g, n), view.inv(g)) in N for g in view.elements() for n in N)


def n_extension(view: FiniteGroup, N: Iterable, g_mod: Sequence) -> tuple:
    """Append to ``g_mod`` a greedily chosen generating tuple of ``N``.

    Candidates are scanned in element order; elements already in ``g_mod``
    are skipped (they count toward generating ``N``).
    """
    if not view.is_finite:
        raise UnsupportedOnInfinite("N-extensions need a finite view")
    N = set(N)
    if not _is_normal_subgroup(view, N):
        raise NotNormal("N is not a normal subgroup")
    g_mod = tuple(g_mod)
    if len(closure(view, list(g_mod) + sorted(N))) != view.order:
        raise NotGenerating("the image of g_mod does not generate the quotient")
    inside = [g for g in g_mod if g in N]
    chosen: list = []
    reached = closure(view, inside)
    for x in sorted(N):
        if reached >= N:
            break
        if x in reached or x in g_mod:
            continue
        chosen.append(x)
        reached = closure(view, inside + chosen)
    return g_mod + tuple(chosen)
