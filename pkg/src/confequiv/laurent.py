"""Sparse Laurent polynomials over the integers, Z[t, t^-1]."""

from __future__ import annotations

from typing import Iterable, Mapping


class LaurentPoly:
    """Immutable integer Laurent polynomial stored as ``{degree: coefficient}``.

    Zero coefficients are never stored, so the zero polynomial has an empty
    mapping and equality is plain mapping equality.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[int, int] | Iterable[tuple[int, int]] = ()):
        if isinstance(terms, Mapping):
            terms = terms.items()
        acc: dict[int, int] = {}
        for deg, coeff in terms:
            deg, coeff = int(deg), int(coeff)
            acc[deg] = acc.get(deg, 0) + coeff
        self._terms = tuple(sorted((d, c) for d, c in acc.items() if c))
        self._hash = None

    @classmethod
    def monomial(cls, degree: int, coeff: int = 1) -> LaurentPoly:
        return cls({degree: coeff})

    @classmethod
    def constant(cls, c: int) -> LaurentPoly:
        return cls({0: c})

    @property
    def terms(self) -> tuple[tuple[int, int], ...]:
        return self._terms

    def as_dict(self) -> dict[int, int]:
        return dict(self._terms)

    def coeff(self, degree: int) -> int:
        for d, c in self._terms:
            if d == degree:
                return c
        return 0

    def is_zero(self) -> bool:
        return not self._terms

    def min_degree(self) -> int | None:
        return self._terms[0][0] if self._terms else None

    def max_degree(self) -> int | None:
        return self._terms[-1][0] if self._terms else None

    def __bool__(self):
        return bool(self._terms)

    def __eq__(self, other):
        if isinstance(other, int):
            other = LaurentPoly.constant(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self._terms)
        return self._hash

    def __add__(self, other):
        if isinstance(other, int):
            other = LaurentPoly.constant(other)
        return LaurentPoly(self._terms + other._terms)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly((d, -c) for d, c in self._terms)

    def __sub__(self, other):
        if isinstance(other, int):
            other = LaurentPoly.constant(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return LaurentPoly((d, c * other) for d, c in self._terms)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return LaurentPoly(
            (d1 + d2, c1 * c2) for d1, c1 in self._terms for d2, c2 in other._terms
        )

    __rmul__ = __mul__

    def shift(self, k: int) -> LaurentPoly:
        """Multiply by ``t**k``."""
        return LaurentPoly((d + k, c) for d, c in self._terms)

    def filter(self, keep) -> LaurentPoly:
        return LaurentPoly((d, c) for d, c in self._terms if keep(d))

    def to_json(self) -> dict[str, int]:
        return {str(d): c for d, c in self._terms}

    @classmethod
    def from_json(cls, obj) -> LaurentPoly:
        if obj is None:
            return cls()
        if isinstance(obj, int):
            return cls.constant(obj)
        return cls({int(d): int(c) for d, c in obj.items()})

    def __repr__(self):
        return f"LaurentPoly({dict(self._terms)!r})"

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for d, c in self._terms:
            if d == 0:
                mono = str(c)
            else:
                t = "t" if d == 1 else f"t^{d}"
                mono = t if c == 1 else ("-" + t if c == -1 else f"{c}*{t}")
            parts.append(mono)
        return " + ".join(parts).replace("+ -", "- ")


ZERO = LaurentPoly()
ONE = LaurentPoly.constant(1)
T = LaurentPoly.monomial(1)
