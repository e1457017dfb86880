"""Exact group arithmetic behind one small interface.

A :class:`GroupView` is immutable once built.  Elements are plain hashable
values whose equality is group equality:

* finite groups (table, permutation, named families, products): ``int`` indices
* free groups: reduced words, tuples of nonzero ints (``-k`` is the inverse of
  generator ``k``)
* the Laurent-matrix group and its quotients: :class:`~confequiv.paper_groups.KElement`
"""

from __future__ import annotations

import hashlib
import itertools
import json
import re
from collections import deque
from dataclasses import dataclass
from typing import Hashable, Iterable, Sequence

import numpy as np

from .errors import (
    BadRepresentativePair,
    InvalidGroupSpec,
    NotGenerating,
    UnsupportedOnInfinite,
)


class GroupView:
    kind: str = "abstract"
    is_finite: bool = False
    identity: Hashable = None

    def mul(self, x, y):
        raise NotImplementedError

    def inv(self, x):
        raise NotImplementedError

    @property
    def order(self) -> int | str:
        return "infinite"

    def elements(self) -> list:
        raise UnsupportedOnInfinite(f"{self.kind} group has no full enumeration")

    def label(self, x) -> str:
        return str(x)

    def parse_element(self, token: str):
        raise InvalidGroupSpec(f"cannot parse element {token!r} in {self.kind} group")

    def default_generators(self) -> tuple:
        raise NotImplementedError

    def spec(self) -> dict:
        """The group-definition record this view was built from."""
        return {"kind": self.kind}

    def fingerprint(self) -> str:
        blob = json.dumps(self.spec(), sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(blob.encode()).hexdigest()[:16]

    def power(self, x, k: int):
        if k < 0:
            x, k = self.inv(x), -k
        result = self.identity
        base = x
        while k:
            if k & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            k >>= 1
        return result

    def __repr__(self):
        return f"<{type(self).__name__} {self.kind} order={self.order}>"


# ---------------------------------------------------------------------------
# finite groups


class FiniteGroup(GroupView):
    """A finite group given by its Cayley table on indices ``0..N-1``."""

    is_finite = True

    def __init__(self, table, labels=None, kind="finite-table", spec=None):
        arr = np.asarray(table, dtype=np.int64)
        n = arr.shape[0] if arr.ndim == 2 else 0
        if arr.ndim != 2 or arr.shape != (n, n) or n == 0:
            raise InvalidGroupSpec("multiplication table must be a non-empty square")
        _check_table(arr)
        self.table = arr
        self._rows = [tuple(int(v) for v in row) for row in arr]
        ident = [i for i in range(n) if np.array_equal(arr[i], np.arange(n))]
        self.identity = ident[0]
        self._inv = [int(np.flatnonzero(arr[i] == self.identity)[0]) for i in range(n)]
        self.labels = list(labels) if labels is not None else [str(i) for i in range(n)]
        if len(self.labels) != n or len(set(self.labels)) != n:
            raise InvalidGroupSpec("labels must be distinct, one per element")
        self._by_label = {lab: i for i, lab in enumerate(self.labels)}
        self.kind = kind
        self._spec = spec

    @property
    def order(self) -> int:
        return len(self._rows)

    def mul(self, x, y):
        return self._rows[x][y]

    def inv(self, x):
        return self._inv[x]

    def elements(self) -> list[int]:
        return list(range(self.order))

    def label(self, x) -> str:
        return self.labels[x]

    def parse_element(self, token):
        if isinstance(token, (int, np.integer)):
            if 0 <= token < self.order:
                return int(token)
            raise InvalidGroupSpec(f"element index {token} out of range")
        token = str(token).strip()
        if token in self._by_label:
            return self._by_label[token]
        if re.fullmatch(r"\d+", token) and int(token) < self.order:
            return int(token)
        raise InvalidGroupSpec(f"unknown element {token!r}")

    def left_perm(self, g) -> np.ndarray:
        """Array mapping x to g*x."""
        return self.table[g, :]

    def right_perm(self, g) -> np.ndarray:
        """Array mapping x to x*g."""
        return self.table[:, g]

    def default_generators(self) -> tuple:
        # greedy: add the least element not yet generated
        chosen: list[int] = []
        reached = {self.identity}
        for x in range(self.order):
            if x not in reached:
                chosen.append(x)
                reached = closure(self, chosen)
        return tuple(chosen)

    def is_abelian(self) -> bool:
        return bool(np.array_equal(self.table, self.table.T))

    def spec(self) -> dict:
        if self._spec is not None:
            return self._spec
        return {"kind": "table", "table": self.table.tolist(), "labels": self.labels}


def _check_table(arr: np.ndarray) -> None:
    n = arr.shape[0]
    if arr.min() < 0 or arr.max() >= n:
        raise InvalidGroupSpec("table entries must be element indices")
    full = np.arange(n)
    for axis in (0, 1):
        if not (np.sort(arr, axis=axis) == (full[:, None] if axis == 0 else full[None, :])).all():
            raise InvalidGroupSpec("multiplication table is not a Latin square")
    if not any(np.array_equal(arr[i], full) and np.array_equal(arr[:, i], full) for i in range(n)):
        raise InvalidGroupSpec("multiplication table has no identity")
    # (ab)c == a(bc), one row of left factors at a time
    for a in range(n):
        if not np.array_equal(arr[arr[a]], arr[a][arr]):
            raise InvalidGroupSpec("multiplication table is not associative")


def _from_closure(gens, mul, identity, label, kind, spec, sort_key=None) -> FiniteGroup:
    """Enumerate the group generated by hashable ``gens`` and tabulate it."""
    seen = {identity}
    order = [identity]
    queue = deque([identity])
    while queue:
        x = queue.popleft()
        for g in gens:
            y = mul(x, g)
            if y not in seen:
                if len(seen) > 100_000:
                    raise InvalidGroupSpec("generated group too large to tabulate")
                seen.add(y)
                order.append(y)
                queue.append(y)
    if sort_key is not None:
        order.sort(key=sort_key)
        order.remove(identity)
        order.insert(0, identity)
    index = {x: i for i, x in enumerate(order)}
    table = [[index[mul(x, y)] for y in order] for x in order]
    group = FiniteGroup(table, [label(x) for x in order], kind=kind, spec=spec)
    group.objects = order
    return group


def cyclic(k: int) -> FiniteGroup:
    if k < 1:
        raise InvalidGroupSpec("cyclic order must be >= 1")
    labels = ["e"] + ["a" if i == 1 else f"a^{i}" for i in range(1, k)]
    table = [[(i + j) % k for j in range(k)] for i in range(k)]
    return FiniteGroup(table, labels, kind="cyclic", spec={"kind": "cyclic", "order": k})


def dihedral(k: int) -> FiniteGroup:
    """Symmetries of a k-gon, order 2k; element r^i s^j is index i + k*j."""
    if k < 1:
        raise InvalidGroupSpec("dihedral parameter must be >= 1")
    elems = [(i, j) for j in range(2) for i in range(k)]

    def mul(x, y):
        i1, j1 = x
        i2, j2 = y
        return ((i1 + (-i2 if j1 else i2)) % k, (j1 + j2) % 2)

    def label(x):
        i, j = x
        r = "" if i == 0 else ("r" if i == 1 else f"r^{i}")
        s = "s" if j else ""
        return " ".join(p for p in (r, s) if p) or "e"

    index = {x: n for n, x in enumerate(elems)}
    table = [[index[mul(x, y)] for y in elems] for x in elems]
    return FiniteGroup(table, [label(x) for x in elems], kind="dihedral",
                       spec={"kind": "dihedral", "n": k})


def quaternion() -> FiniteGroup:
    """Q8 as unit quaternions with integer components."""

    def mul(p, q):
        a1, b1, c1, d1 = p
        a2, b2, c2, d2 = q
        return (
            a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
            a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
            a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
            a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2,
        )

    names = {0: "1", 1: "i", 2: "j", 3: "k"}

    def label(q):
        pos = next(i for i, v in enumerate(q) if v)
        return ("-" if q[pos] < 0 else "") + names[pos]

    order = ["1", "-1", "i", "-i", "j", "-j", "k", "-k"]
    return _from_closure(
        [(0, 1, 0, 0), (0, 0, 1, 0)], mul, (1, 0, 0, 0), label, "quaternion",
        {"kind": "quaternion"}, sort_key=lambda q: order.index(label(q)),
    )


def _cycle_label(perm: tuple[int, ...]) -> str:
    seen, cycles = set(), []
    for start in range(len(perm)):
        if start in seen or perm[start] == start:
            continue
        cyc, x = [], start
        while x not in seen:
            seen.add(x)
            cyc.append(str(x + 1))
            x = perm[x]
        cycles.append("(" + " ".join(cyc) + ")")
    return "".join(cycles) or "e"


def permutation_group(degree: int, generators: Sequence[Sequence[int]], kind="permutation",
                      spec=None) -> FiniteGroup:
    """Group generated by permutations of ``0..degree-1`` given as image lists."""
    perms = []
    for g in generators:
        g = tuple(int(v) for v in g)
        if len(g) != degree or sorted(g) != list(range(degree)):
            raise InvalidGroupSpec(f"{list(g)} is not a permutation of {degree} points")
        perms.append(g)
    ident = tuple(range(degree))
    spec = spec or {"kind": "permutation", "degree": degree, "generators": [list(p) for p in perms]}
    return _from_closure(
        perms,
        lambda p, q: tuple(p[q[i]] for i in range(degree)),  # apply q first, then p
        ident, _cycle_label, kind, spec, sort_key=lambda p: p,
    )


def symmetric(k: int) -> FiniteGroup:
    if k < 1:
        raise InvalidGroupSpec("symmetric degree must be >= 1")
    gens = []
    if k > 1:
        gens.append(tuple([1, 0] + list(range(2, k))))
        gens.append(tuple(list(range(1, k)) + [0]))
    return permutation_group(k, gens, kind="symmetric", spec={"kind": "symmetric", "n": k})


def direct_product(*factors: FiniteGroup) -> FiniteGroup:
    if not factors:
        raise InvalidGroupSpec("direct product needs at least one factor")
    for f in factors:
        if not f.is_finite:
            raise InvalidGroupSpec("direct products of infinite groups are not supported")
    elems = list(itertools.product(*(range(f.order) for f in factors)))
    index = {x: i for i, x in enumerate(elems)}

    def mul(x, y):
        return tuple(f.mul(a, b) for f, a, b in zip(factors, x, y))

    def label(x):
        return "(" + ",".join(f.label(a) for f, a in zip(factors, x)) + ")"

    table = [[index[mul(x, y)] for y in elems] for x in elems]
    group = FiniteGroup(table, [label(x) for x in elems], kind="product",
                        spec={"kind": "product", "factors": [f.spec() for f in factors]})
    group.objects = elems
    return group


# ---------------------------------------------------------------------------
# free groups

_LETTERS = "abcdfghijklmnopqrstuvwxyz"  # 'e' is reserved for the identity


class FreeGroup(GroupView):
    """Free group on ``rank`` letters; elements are freely reduced int tuples.

    Letter ``k`` (1-based) is written with the k-th lowercase letter, its
    inverse with the uppercase letter, so ``(1, -2)`` prints as ``aB``.
    """

    kind = "free-group"
    identity = ()

    def __init__(self, rank: int):
        if not 1 <= rank <= len(_LETTERS):
            raise InvalidGroupSpec(f"free group rank must be in 1..{len(_LETTERS)}")
        self.rank = rank

    def mul(self, x, y):
        out = list(x)
        for s in y:
            if out and out[-1] == -s:
                out.pop()
            else:
                out.append(s)
        return tuple(out)

    def inv(self, x):
        return tuple(-s for s in reversed(x))

    def label(self, x) -> str:
        if not x:
            return "e"
        return "".join(_LETTERS[s - 1] if s > 0 else _LETTERS[-s - 1].upper() for s in x)

    def parse_element(self, token):
        if isinstance(token, tuple):
            return self.mul((), token)
        text = str(token).strip()
        if text in ("", "e", "1"):
            return ()
        word: list[int] = []
        for m in re.finditer(r"([A-Za-z])(?:\^(-?\d+))?|\s+", text):
            if not m.group(1):
                continue
            ch, exp = m.group(1), int(m.group(2) or 1)
            k = _LETTERS.find(ch.lower()) + 1
            if k == 0 or k > self.rank:
                raise InvalidGroupSpec(f"unknown letter {ch!r} in {text!r}")
            sign = 1 if ch.islower() else -1
            sign *= 1 if exp > 0 else -1
            word.extend([sign * k] * abs(exp))
        if "".join(m.group(0) for m in re.finditer(r"([A-Za-z])(?:\^(-?\d+))?|\s+", text)) != text:
            raise InvalidGroupSpec(f"cannot parse word {text!r}")
        return self.mul((), tuple(word))

    def default_generators(self) -> tuple:
        return tuple((k,) for k in range(1, self.rank + 1))

    def spec(self) -> dict:
        return {"kind": "free", "rank": self.rank}


# ---------------------------------------------------------------------------
# generating tuples, words, closure, balls


class GeneratingTuple(tuple):
    """Ordered tuple of distinct elements.

    ``verified`` records whether generation was checked by closure (finite
    views) or merely declared (infinite views).
    """

    verified: bool

    def __new__(cls, entries: Iterable, verified: bool = False):
        obj = super().__new__(cls, entries)
        obj.verified = verified
        return obj

    def __getnewargs__(self):
        return (tuple(self), self.verified)


def generating_tuple(view: GroupView, entries: Iterable, strict: bool = False,
                     check: bool = True) -> GeneratingTuple:
    """Validate ``entries`` as an ordered generating tuple of ``view``.

    Entries must be pairwise distinct.  With ``strict`` the identity is
    refused too.  Finite views are closure-checked unless ``check`` is false.
    """
    entries = tuple(entries)
    if not entries:
        raise NotGenerating("a generating tuple needs at least one entry")
    if len(set(entries)) != len(entries):
        raise NotGenerating("generating tuple entries must be distinct")
    if strict and view.identity in entries:
        raise NotGenerating("strict generating tuples may not contain the identity")
    if view.is_finite and check:
        if len(closure(view, entries)) != view.order:
            raise NotGenerating("entries do not generate the group")
        return GeneratingTuple(entries, verified=True)
    return GeneratingTuple(entries, verified=False)


@dataclass(frozen=True)
class RepresentativePair:
    """Word ``prod g_{J(i)}^{rho(i)}`` over a generating tuple (1-based J).

    The empty pair is allowed and denotes the identity.
    """

    J: tuple[int, ...]
    rho: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "J", tuple(int(j) for j in self.J))
        object.__setattr__(self, "rho", tuple(int(r) for r in self.rho))
        if len(self.J) != len(self.rho):
            raise BadRepresentativePair("J and rho must have the same length")
        if any(r not in (1, -1) for r in self.rho):
            raise BadRepresentativePair("rho entries must be +1 or -1")

    def __len__(self):
        return len(self.J)

    def __add__(self, other: RepresentativePair) -> RepresentativePair:
        return RepresentativePair(self.J + other.J, self.rho + other.rho)

    @classmethod
    def parse(cls, text: str, names: Sequence[str]) -> RepresentativePair:
        """Parse a word such as ``"a b^-1 a"`` over generator ``names``.

        Tokens are whitespace- or ``*``-separated; ``^k`` powers are expanded.
        """
        J: list[int] = []
        rho: list[int] = []
        text = text.strip()
        if text in ("", "e", "1"):
            return cls((), ())
        for tok in re.split(r"[\s*]+", text):
            if not tok:
                continue
            name, _, exp = tok.partition("^")
            if name not in names:
                raise BadRepresentativePair(f"unknown generator name {name!r}")
            k = int(exp) if exp else 1
            J.extend([names.index(name) + 1] * abs(k))
            rho.extend([1 if k > 0 else -1] * abs(k))
        return cls(tuple(J), tuple(rho))


def eval_word(view: GroupView, gens: Sequence, pair: RepresentativePair):
    n = len(gens)
    result = view.identity
    for j, r in zip(pair.J, pair.rho):
        if not 1 <= j <= n:
            raise BadRepresentativePair(f"index {j} outside 1..{n}")
        g = gens[j - 1]
        result = view.mul(result, g if r == 1 else view.inv(g))
    return result


def closure(view: GroupView, entries: Iterable) -> set:
    """Subgroup generated by ``entries`` (finite views only)."""
    if not view.is_finite:
        raise UnsupportedOnInfinite("closure needs a finite view")
    steps = set()
    for g in entries:
        steps.add(g)
        steps.add(view.inv(g))
    steps = sorted(steps)
    seen = {view.identity}
    queue = deque(seen)
    while queue:
        x = queue.popleft()
        for g in steps:
            y = view.mul(x, g)
            if y not in seen:
                seen.add(y)
                queue.append(y)
    return seen


def ball(view: GroupView, gens: Sequence, radius: int) -> list[tuple[object, RepresentativePair]]:
    """Elements of word length <= ``radius``, each with one shortest word.

    Breadth-first; each layer extends the previous one on the right, trying
    generators in index order and ``+1`` before ``-1``.
    """
    if radius < 0:
        raise ValueError("radius must be >= 0")
    steps = []
    for j, g in enumerate(gens, start=1):
        steps.append((g, j, 1))
        steps.append((view.inv(g), j, -1))
    empty = RepresentativePair((), ())
    out = [(view.identity, empty)]
    seen = {view.identity}
    frontier = out[:]
    for _ in range(radius):
        nxt = []
        for x, word in frontier:
            for g, j, r in steps:
                y = view.mul(x, g)
                if y not in seen:
                    seen.add(y)
                    nxt.append((y, RepresentativePair(word.J + (j,), word.rho + (r,))))
        if not nxt:
            break
        out.extend(nxt)
        frontier = nxt
    return out


# ---------------------------------------------------------------------------
# construction from definition records

_SHORT = re.compile(r"^(Z|C)(\d+)$|^S(\d+)$|^D(\d+)$|^Q8$|^V4$|^F(\d+)$|^(K|G|H)$")


def build_group(spec) -> GroupView:
    """Build a view from a definition record (dict) or a short name."""
    if isinstance(spec, str):
        return named_group(spec)
    if not isinstance(spec, dict) or "kind" not in spec:
        raise InvalidGroupSpec("group definition must be an object with a 'kind'")
    kind = spec["kind"]
    try:
        if kind in ("table", "finite-table"):
            return FiniteGroup(spec["table"], spec.get("labels"))
        if kind == "permutation":
            return permutation_group(int(spec["degree"]), spec["generators"])
        if kind == "cyclic":
            return cyclic(int(spec["order"]))
        if kind == "dihedral":
            return dihedral(int(spec["n"]))
        if kind == "quaternion":
            return quaternion()
        if kind == "symmetric":
            return symmetric(int(spec["n"]))
        if kind == "product":
            return direct_product(*(build_group(f) for f in spec["factors"]))
        if kind in ("free", "free-group"):
            return FreeGroup(int(spec["rank"]))
        if kind in ("paper-K", "paper-G", "paper-H"):
            from .paper_groups import PaperGroup

            return PaperGroup(kind)
        if kind == "named":
            return named_group(spec["name"])
    except (KeyError, TypeError, ValueError) as exc:
        raise InvalidGroupSpec(f"malformed {kind} definition: {exc}") from exc
    raise InvalidGroupSpec(f"unknown group kind {kind!r}")


def named_group(name: str) -> GroupView:
    """Short names: Z<k>, S<k>, D<k> (order 2k), Q8, V4, F<r>, K, G, H,
    products joined by ``x`` and powers such as ``Z2^3``."""
    name = name.strip()
    if "x" in name:
        return direct_product(*(named_group(p) for p in name.split("x")))
    if "^" in name:
        base, _, k = name.partition("^")
        return direct_product(*([named_group(base)] * int(k)))
    m = _SHORT.match(name)
    if not m:
        raise InvalidGroupSpec(f"unknown group name {name!r}")
    if m.group(2):
        return cyclic(int(m.group(2)))
    if m.group(3):
        return symmetric(int(m.group(3)))
    if m.group(4):
        return dihedral(int(m.group(4)))
    if name == "Q8":
        return quaternion()
    if name == "V4":
        return direct_product(cyclic(2), cyclic(2))
    if m.group(5):
        return FreeGroup(int(m.group(5)))
    from .paper_groups import PaperGroup

    return PaperGroup("paper-" + name)


def check_axioms(view: GroupView, samples: Iterable | None = None) -> bool:
    """Associativity, identity and inverse laws on ``samples`` (all elements
    of a finite view by default)."""
    elems = list(samples) if samples is not None else view.elements()
    e = view.identity
    for x in elems:
        if view.mul(x, e) != x or view.mul(e, x) != x:
            return False
        if view.mul(x, view.inv(x)) != e or view.mul(view.inv(x), x) != e:
            return False
    for x, y, z in itertools.product(elems, repeat=3):
        if view.mul(view.mul(x, y), z) != view.mul(x, view.mul(y, z)):
            return False
    return True


def element_order(view: GroupView, x, bound: int | None = None) -> int | None:
    """Least k >= 1 with x^k = e, or None when ``bound`` is exceeded."""
    y, k = x, 1
    while y != view.identity:
        y = view.mul(y, x)
        k += 1
        if bound is not None and k > bound:
            return None
    return k

