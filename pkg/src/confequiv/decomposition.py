"""Checking claimed paradoxical (and more generally G = nG) decompositions.

A claim lists groups of pieces ``(translator, set)``.  It is valid when all
sets are pairwise disjoint and, for every group, the translated sets
``translator * set`` cover the scope.  On a free-group ball of radius R the
cover condition is only checked on ``ball(R - L)`` with L the longest
translator, so every membership test is made on a fully known word.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import UnsupportedDescription
from .groups import FreeGroup, GroupView, RepresentativePair, ball, eval_word


@dataclass(frozen=True)
class SetDescription:
    kind: str  # "explicit" or "prefix"
    items: frozenset = field(default_factory=frozenset)

    @classmethod
    def explicit(cls, elements: Iterable) -> SetDescription:
        return cls("explicit", frozenset(elements))

    @classmethod
    def prefix(cls, prefixes: Iterable[tuple[int, ...]]) -> SetDescription:
        prefixes = [tuple(p) for p in prefixes]
        for p in prefixes:
            if any(a == -b for a, b in zip(p, p[1:])):
                raise UnsupportedDescription(f"prefix {p} is not a reduced word")
        return cls("prefix", frozenset(prefixes))

    def contains(self, view: GroupView, x) -> bool:
        if self.kind == "explicit":
            return x in self.items
        if not isinstance(view, FreeGroup):
            raise UnsupportedDescription("prefix sets only make sense in a free group")
        return any(x[: len(p)] == p for p in self.items)

    def to_json(self, view: GroupView) -> dict:
        key = "elements" if self.kind == "explicit" else "prefixes"
        return {key: sorted(view.label(x) for x in self.items)}


@dataclass(frozen=True)
class Piece:
    translator: RepresentativePair
    set: SetDescription


@dataclass(frozen=True)
class DecompositionClaim:
    groups: tuple[tuple[Piece, ...], ...]

    def pieces(self) -> list[tuple[int, int, Piece]]:
        return [(i, j, p) for i, grp in enumerate(self.groups, 1) for j, p in enumerate(grp, 1)]

    @property
    def max_translator_length(self) -> int:
        return max((len(p.translator) for _, _, p in self.pieces()), default=0)


@dataclass(frozen=True)
class DecompositionVerdict:
    valid: bool
    witness: object = None
    conditions: tuple[str, ...] = ()
    scope: dict = field(default_factory=dict)

    def to_json(self, view: GroupView) -> dict:
        out = {"verdict": "valid" if self.valid else "invalid", "scope": self.scope}
        if not self.valid:
            out["witness"] = view.label(self.witness)
            out["violations"] = list(self.conditions)
        return out


def pieces_bound(claim: DecompositionClaim) -> int:
    """Total piece count; an upper bound on the Tarski number (two groups) or
    on the n-group analogue when the claim verifies."""
    return sum(len(g) for g in claim.groups)


def verify_decomposition(view: GroupView, gens: Sequence, claim: DecompositionClaim,
                         radius: int | None = None) -> DecompositionVerdict:
    """Validate ``claim``; the witness is the first violating element in scope
    order (index order for finite views, breadth-first ball order otherwise)."""
    if radius is None:
        scope = view.elements()
        cover_scope = set(scope)
        scope_info = {"kind": "full", "order": view.order}
    else:
        entries = ball(view, gens, radius)
        scope = [x for x, _ in entries]
        cover_radius = radius - claim.max_translator_length
        cover_scope = {x for x, w in entries if len(w) <= cover_radius}
        scope_info = {"kind": "ball", "radius": radius, "cover_radius": max(cover_radius, -1)}
    for _, _, p in claim.pieces():
        if p.set.kind == "prefix" and not isinstance(view, FreeGroup):
            raise UnsupportedDescription("prefix sets only make sense in a free group")

    inv_translators = [
        [(view.inv(eval_word(view, gens, p.translator)), p.set) for p in grp]
        for grp in claim.groups
    ]
    labelled = claim.pieces()
    for x in scope:
        problems = []
        holders = [(i, j) for i, j, p in labelled if p.set.contains(view, x)]
        if len(holders) > 1:
            problems.append("sets overlap: " + ", ".join(f"P[{i},{j}]" for i, j in holders))
        if x in cover_scope:
            for i, grp in enumerate(inv_translators, 1):
                if not any(s.contains(view, view.mul(t, x)) for t, s in grp):
                    problems.append(f"group {i} does not cover")
        if problems:
            return DecompositionVerdict(False, x, tuple(problems), scope_info)
    return DecompositionVerdict(True, scope=scope_info)


def classical_free_claim(view: FreeGroup) -> DecompositionClaim:
    """The 4-piece decomposition of F2: S(a) and a*S(a^-1) cover, as do S(b)
    and b*S(b^-1)."""
    e = RepresentativePair((), ())
    a = RepresentativePair((1,), (1,))
    b = RepresentativePair((2,), (1,))
    return DecompositionClaim((
        (Piece(e, SetDescription.prefix([(1,)])), Piece(a, SetDescription.prefix([(-1,)]))),
        (Piece(e, SetDescription.prefix([(2,)])), Piece(b, SetDescription.prefix([(-2,)]))),
    ))
