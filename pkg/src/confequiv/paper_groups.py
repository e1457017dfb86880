"""The Laurent-matrix group K and its quotients G and H.

An element ``(A, B, C, D)`` of K stands for the matrix::

    [1  B  D]
    [0  A  C]
    [0  0  1]

with ``B, C, D`` in Z[t, t^-1] and ``A = t^a``.  Multiplying two such matrices
gives the law

    (A,B,C,D)(X,Y,Z,W) = (AX, BX+Y, C+AZ, D+BZ+W).

The often-quoted variant ``(AX, BX+Y, C+AW, D+BW+Z)`` swaps Z and W and is not
a group law (``e * x != x`` in general), so the matrix-derived law is used.

The centre is ``{(1,0,0,D)}``.  The quotients kill a central subgroup of
D-values, so reduction of D after every product is a congruence:

* ``G = K / N0`` with ``N0 = Z[t]``: keep only negative-degree terms of D.
* ``H = K / (2Z + N1)`` with ``N1 = tZ[t]``: keep negative degrees and the
  constant term mod 2.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .errors import InvalidGroupSpec, UnsupportedOnQuotient
from .groups import GroupView
from .laurent import LaurentPoly, ZERO

MODE_K = "none"
MODE_G = "mod-N0"
MODE_H = "mod-2Z-plus-N1"
QUOTIENT_MODES = (MODE_K, MODE_G, MODE_H)

_KIND_TO_MODE = {"paper-K": MODE_K, "paper-G": MODE_G, "paper-H": MODE_H}


@dataclass(frozen=True)
class KElement:
    a: int = 0
    B: LaurentPoly = ZERO
    C: LaurentPoly = ZERO
    D: LaurentPoly = ZERO

    def to_json(self) -> dict:
        return {"a": self.a, "B": self.B.to_json(), "C": self.C.to_json(), "D": self.D.to_json()}

    @classmethod
    def from_json(cls, obj) -> KElement:
        if isinstance(obj, str):
            obj = json.loads(obj)
        try:
            return cls(int(obj.get("a", 0)), LaurentPoly.from_json(obj.get("B")),
                       LaurentPoly.from_json(obj.get("C")), LaurentPoly.from_json(obj.get("D")))
        except (AttributeError, TypeError, ValueError) as exc:
            raise InvalidGroupSpec(f"malformed K element {obj!r}") from exc

    def __str__(self):
        A = "1" if self.a == 0 else ("t" if self.a == 1 else f"t^{self.a}")
        return f"({A}, {self.B}, {self.C}, {self.D})"


IDENTITY = KElement()
K1 = KElement(1)
K2 = KElement(0, LaurentPoly.constant(1))
K3 = KElement(0, ZERO, LaurentPoly.constant(1))


def reduce(x: KElement, mode: str = MODE_K) -> KElement:
    if mode == MODE_K:
        return x
    if mode == MODE_G:
        D = x.D.filter(lambda d: d < 0)
    elif mode == MODE_H:
        D = LaurentPoly((d, c % 2 if d == 0 else c) for d, c in x.D.terms if d <= 0)
    else:
        raise ValueError(f"unknown quotient mode {mode!r}")
    if D == x.D:
        return x
    return KElement(x.a, x.B, x.C, D)


def k_mul(x: KElement, y: KElement, mode: str = MODE_K) -> KElement:
    # A = t^a, so multiplying by A is a degree shift
    return reduce(
        KElement(
            x.a + y.a,
            x.B.shift(y.a) + y.B,
            x.C + y.C.shift(x.a),
            x.D + x.B * y.C + y.D,
        ),
        mode,
    )


def k_inv(x: KElement, mode: str = MODE_K) -> KElement:
    b_ainv = x.B.shift(-x.a)
    ainv_c = x.C.shift(-x.a)
    return reduce(KElement(-x.a, -b_ainv, -ainv_c, -x.D + b_ainv * x.C), mode)


def k_pow(x: KElement, k: int, mode: str = MODE_K) -> KElement:
    if k < 0:
        x, k = k_inv(x, mode), -k
    out = IDENTITY
    for _ in range(k):
        out = k_mul(out, x, mode)
    return out


def commutator(x: KElement, y: KElement, mode: str = MODE_K) -> KElement:
    """``x y x^-1 y^-1``."""
    return k_mul(k_mul(k_mul(x, y, mode), k_inv(x, mode), mode), k_inv(y, mode), mode)


def phi(x: KElement, mode: str = MODE_K) -> KElement:
    """The automorphism ``(A,B,C,D) -> (A,B,tC,tD)`` of K."""
    if mode != MODE_K:
        raise UnsupportedOnQuotient("phi acts on K, not on a quotient")
    return KElement(x.a, x.B, x.C.shift(1), x.D.shift(1))


def phi_inv(x: KElement, mode: str = MODE_K) -> KElement:
    if mode != MODE_K:
        raise UnsupportedOnQuotient("phi acts on K, not on a quotient")
    return KElement(x.a, x.B, x.C.shift(-1), x.D.shift(-1))


def order_bounded(x: KElement, mode: str, bound: int) -> int | None:
    """Least k <= bound with x^k = e, or None if no such k exists."""
    if bound < 1:
        raise ValueError("bound must be >= 1")
    x = reduce(x, mode)
    if x.a != 0:
        # a is additive under products, so every power has a != 0
        return None
    y = x
    for k in range(1, bound + 1):
        if y == IDENTITY:
            return k
        y = k_mul(y, x, mode)
    return None


def center_membership(x: KElement) -> bool:
    return x.a == 0 and x.B.is_zero() and x.C.is_zero()


# ---------------------------------------------------------------------------
# independent oracle: literal 3x3 matrices over the Laurent ring


def as_matrix(x: KElement) -> tuple[tuple[LaurentPoly, ...], ...]:
    one, zero = LaurentPoly.constant(1), LaurentPoly()
    return (
        (one, x.B, x.D),
        (zero, LaurentPoly.monomial(x.a), x.C),
        (zero, zero, one),
    )


def matrix_mul(p, q):
    return tuple(
        tuple(sum((p[i][k] * q[k][j] for k in range(3)), LaurentPoly()) for j in range(3))
        for i in range(3)
    )


def from_matrix(mat) -> KElement:
    one, zero = LaurentPoly.constant(1), LaurentPoly()
    A = mat[1][1]
    if (mat[0][0], mat[1][0], mat[2][0], mat[2][1], mat[2][2]) != (one, zero, zero, zero, one) \
            or len(A.terms) != 1 or A.terms[0][1] != 1:
        raise ValueError("matrix is not of the form (A,B,C,D)")
    return KElement(A.terms[0][0], mat[0][1], mat[1][2], mat[0][2])


def matrix_product(x: KElement, y: KElement) -> KElement:
    return from_matrix(matrix_mul(as_matrix(x), as_matrix(y)))


# ---------------------------------------------------------------------------


class PaperGroup(GroupView):
    """K, G or H as a ball-enumerable view; default generators are the
    images of k1, k2, k3."""

    def __init__(self, kind: str = "paper-K"):
        if kind not in _KIND_TO_MODE:
            raise InvalidGroupSpec(f"unknown paper group {kind!r}")
        self.kind = kind
        self.mode = _KIND_TO_MODE[kind]
        self.identity = IDENTITY

    def mul(self, x, y):
        return k_mul(x, y, self.mode)

    def inv(self, x):
        return k_inv(x, self.mode)

    def reduce(self, x):
        return reduce(x, self.mode)

    def label(self, x) -> str:
        return str(x)

    def parse_element(self, token):
        if isinstance(token, KElement):
            return self.reduce(token)
        if isinstance(token, dict):
            return self.reduce(KElement.from_json(token))
        text = str(token).strip()
        named = {"e": IDENTITY, "k1": K1, "k2": K2, "k3": K3}
        if text in named:
            return self.reduce(named[text])
        if text.startswith("{"):
            return self.reduce(KElement.from_json(text))
        raise InvalidGroupSpec(f"unknown element {text!r} of {self.kind}")

    def default_generators(self) -> tuple:
        return tuple(self.reduce(k) for k in (K1, K2, K3))

    def spec(self) -> dict:
        return {"kind": self.kind}
