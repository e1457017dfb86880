"""Configuration sets of a (generating tuple, partition) pair.

For ``x`` in the group the one-sided configuration is
``(color(x), color(g_1 x), ..., color(g_n x))``; the two-sided one appends
``color(x g_1), ..., color(x g_n)``.  Colors are 1-based block indices and a
set is stored as its lexicographically sorted tuple list.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import UnsupportedOnInfinite
from .groups import GroupView, ball

ONE_SIDED = "one-sided"
TWO_SIDED = "two-sided"
EXACT = {"status": "exact"}


@dataclass(frozen=True)
class ConfigurationSet:
    kind: str
    n: int
    m: int
    tuples: tuple[tuple[int, ...], ...]
    exactness: dict = field(default_factory=lambda: dict(EXACT), compare=False, hash=False)

    def __post_init__(self):
        object.__setattr__(self, "tuples", tuple(sorted(set(map(tuple, self.tuples)))))
        width = self.n + 1 if self.kind == ONE_SIDED else 2 * self.n + 1
        for t in self.tuples:
            if len(t) != width or not all(1 <= c <= self.m for c in t):
                raise ValueError(f"bad configuration {t} for n={self.n}, m={self.m}")

    def __len__(self):
        return len(self.tuples)

    def __iter__(self):
        return iter(self.tuples)

    @property
    def is_exact(self) -> bool:
        return self.exactness.get("status") == "exact"

    def recolored(self, sigma: Sequence[int]) -> ConfigurationSet:
        """Apply color permutation ``j -> sigma[j-1]`` to every tuple."""
        return ConfigurationSet(
            self.kind, self.n, self.m,
            tuple(tuple(sigma[c - 1] for c in t) for t in self.tuples),
            dict(self.exactness),
        )

    def canonical(self) -> ConfigurationSet:
        """Representative of the recoloring orbit with the least sorted tuple list."""
        best = min(
            (self.recolored(sigma).tuples for sigma in itertools.permutations(range(1, self.m + 1))),
        )
        return ConfigurationSet(self.kind, self.n, self.m, best, dict(self.exactness))

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "n": self.n,
            "m": self.m,
            "exactness": self.exactness,
            "tuples": [list(t) for t in self.tuples],
        }

    @classmethod
    def from_json(cls, obj: dict) -> ConfigurationSet:
        return cls(obj["kind"], int(obj["n"]), int(obj["m"]),
                   tuple(tuple(t) for t in obj["tuples"]), obj.get("exactness", dict(EXACT)))


def configuration_of(view: GroupView, gens: Sequence, P, x) -> tuple[int, ...]:
    return (P.color(x),) + tuple(P.color(view.mul(g, x)) for g in gens)


def two_sided_configuration_of(view: GroupView, gens: Sequence, P, x) -> tuple[int, ...]:
    return configuration_of(view, gens, P, x) + tuple(P.color(view.mul(x, g)) for g in gens)


def _scope_elements(view: GroupView, gens: Sequence, radius: int | None) -> list:
    if radius is None:
        if not view.is_finite:
            raise UnsupportedOnInfinite("infinite views need a ball radius")
        return view.elements()
    if radius < 1:
        raise ValueError("ball scope needs radius >= 1")
    return [x for x, _ in ball(view, gens, radius - 1)]


def _collect(view, gens, P, elements: Iterable, two_sided: bool) -> set:
    of = two_sided_configuration_of if two_sided else configuration_of
    return {of(view, gens, P, x) for x in elements}


def configurations(view: GroupView, gens: Sequence, P, radius: int | None = None,
                   two_sided: bool = False) -> ConfigurationSet:
    """Configuration set over the whole finite group, or over ``ball(radius-1)``
    so that every ``g_i x`` (and ``x g_i``) stays inside ``ball(radius)``."""
    elements = _scope_elements(view, gens, radius)
    exactness = dict(EXACT) if radius is None else {"status": "observed", "radius": radius}
    found = _collect(view, gens, P, elements, two_sided)
    return ConfigurationSet(TWO_SIDED if two_sided else ONE_SIDED, len(gens), P.m,
                            tuple(found), exactness)


def two_sided_configurations(view: GroupView, gens: Sequence, P,
                             radius: int | None = None) -> ConfigurationSet:
    return configurations(view, gens, P, radius, two_sided=True)


def stabilized_configurations(view: GroupView, gens: Sequence, P, rmax: int, span: int = 2,
                              two_sided: bool = False) -> ConfigurationSet:
    """Observed sets at radii ``1..rmax``; returns the first set that stays
    unchanged for ``span`` consecutive radii (tagged ``stable``), otherwise the
    radius-``rmax`` set tagged ``unstable``.

    Stability is a heuristic and is never reported as exactness.
    """
    if span < 2:
        raise ValueError("span must be >= 2")
    if rmax < 1:
        raise ValueError("rmax must be >= 1")
    kind = TWO_SIDED if two_sided else ONE_SIDED
    layers: dict[int, list] = {}
    for x, word in ball(view, gens, rmax - 1):
        layers.setdefault(len(word), []).append(x)
    found: set = set()
    history: list[frozenset] = []
    for r in range(1, rmax + 1):
        found |= _collect(view, gens, P, layers.get(r - 1, []), two_sided)
        history.append(frozenset(found))
        if len(history) >= span and len(set(history[-span:])) == 1:
            first = r - span + 1
            return ConfigurationSet(kind, len(gens), P.m, tuple(history[first - 1]),
                                    {"status": "stable", "radius": first, "span": span,
                                     "checked_to": r})
    return ConfigurationSet(kind, len(gens), P.m, tuple(found),
                            {"status": "unstable", "radius": rmax, "span": span})
