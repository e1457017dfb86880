"""Exact weighting system attached to a one-sided configuration set.

Unknowns are one weight ``x_C >= 0`` per configuration ``C``, subject to

* ``sum_C x_C = 1``
* for each generator index ``i`` and color ``j``:
  ``sum_{C: c_0 = j} x_C = sum_{C: c_i = j} x_C``

which is the normalized-solution criterion of Rosenblatt and Willis (a group
is amenable iff the system is solvable for every configuration pair).  The
system shape is taken from that criterion, not derived here.

Solving is exact: a phase-1 simplex over :class:`fractions.Fraction` with
Bland's rule.  An infeasible system comes back with a Farkas vector ``y``
satisfying ``y^T A >= 0`` and ``y^T b < 0``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .configurations import ONE_SIDED, ConfigurationSet
from .errors import UnsupportedKind


@dataclass(frozen=True)
class AmenabilitySystem:
    configs: tuple[tuple[int, ...], ...]
    A: tuple[tuple[int, ...], ...]
    b: tuple[int, ...]
    rows: tuple[str, ...]
    exactness: dict

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.A), len(self.configs)

    def to_json(self) -> dict:
        return {
            "variables": [list(c) for c in self.configs],
            "rows": list(self.rows),
            "A": [list(r) for r in self.A],
            "b": list(self.b),
            "exactness": self.exactness,
        }


@dataclass(frozen=True)
class FeasibilityVerdict:
    feasible: bool
    witness: tuple[Fraction, ...] | None = None
    certificate: tuple[Fraction, ...] | None = None

    @property
    def status(self) -> str:
        return "feasible" if self.feasible else "infeasible"

    def to_json(self, system: AmenabilitySystem | None = None) -> dict:
        out: dict = {"status": self.status}
        if self.witness is not None:
            out["witness"] = [_q(v) for v in self.witness]
            if system is not None:
                out["support"] = [
                    {"configuration": list(c), "weight": _q(v)}
                    for c, v in zip(system.configs, self.witness) if v
                ]
        if self.certificate is not None:
            out["certificate"] = [_q(v) for v in self.certificate]
        if system is not None:
            out["exactness"] = system.exactness
        return out


def _q(v: Fraction) -> str:
    return f"{v.numerator}/{v.denominator}"


def build_system(cs: ConfigurationSet) -> AmenabilitySystem:
    if cs.kind != ONE_SIDED:
        raise UnsupportedKind("the weighting criterion is stated for one-sided sets")
    configs = cs.tuples
    A = [tuple(1 for _ in configs)]
    rows = ["normalization"]
    for i in range(1, cs.n + 1):
        for j in range(1, cs.m + 1):
            A.append(tuple(int(c[0] == j) - int(c[i] == j) for c in configs))
            rows.append(f"balance g{i} color{j}")
    b = (1,) + (0,) * (len(A) - 1)
    return AmenabilitySystem(configs, tuple(A), b, tuple(rows), dict(cs.exactness))


def check_witness(A: Sequence[Sequence], b: Sequence, x: Sequence[Fraction]) -> bool:
    if any(v < 0 for v in x):
        return False
    return all(sum(a * v for a, v in zip(row, x)) == bi for row, bi in zip(A, b))


def check_certificate(A: Sequence[Sequence], b: Sequence, y: Sequence[Fraction]) -> bool:
    ncols = len(A[0]) if A else 0
    for j in range(ncols):
        if sum(yi * row[j] for yi, row in zip(y, A)) < 0:
            return False
    return sum(yi * bi for yi, bi in zip(y, b)) < 0


def solve_standard_form(A: Sequence[Sequence], b: Sequence) -> FeasibilityVerdict:
    """Decide ``{x >= 0 : A x = b}`` exactly by phase-1 simplex."""
    nrows = len(A)
    ncols = len(A[0]) if nrows else 0
    sign = [1 if bi >= 0 else -1 for bi in b]
    # tableau columns: originals, then one artificial per row, then rhs
    T = []
    for i in range(nrows):
        row = [Fraction(sign[i] * a) for a in A[i]]
        row += [Fraction(int(k == i)) for k in range(nrows)]
        row.append(Fraction(sign[i] * b[i]))
        T.append(row)
    basis = [ncols + i for i in range(nrows)]
    width = ncols + nrows
    # reduced costs for min sum(artificials)
    cost = [-sum(T[i][j] for i in range(nrows)) for j in range(ncols)] + [Fraction(0)] * nrows
    obj = -sum(T[i][-1] for i in range(nrows))

    while True:
        enter = next((j for j in range(width) if cost[j] < 0), None)
        if enter is None:
            break
        best = None
        for i in range(nrows):
            a = T[i][enter]
            if a > 0:
                ratio = T[i][-1] / a
                if best is None or ratio < best[0] or (ratio == best[0] and basis[i] < basis[best[1]]):
                    best = (ratio, i)
        if best is None:  # unbounded cannot happen in phase 1
            raise RuntimeError("phase-1 problem reported unbounded")
        r = best[1]
        piv = T[r][enter]
        T[r] = [v / piv for v in T[r]]
        for i in range(nrows):
            if i != r and T[i][enter]:
                f = T[i][enter]
                T[i] = [u - f * v for u, v in zip(T[i], T[r])]
        f = cost[enter]
        cost = [u - f * v for u, v in zip(cost, T[r][:width])]
        obj -= f * T[r][-1]
        basis[r] = enter

    value = -obj
    if value == 0:
        x = [Fraction(0)] * ncols
        for i, var in enumerate(basis):
            if var < ncols:
                x[var] = T[i][-1]
        if not check_witness(A, b, x):
            raise RuntimeError("simplex witness failed re-substitution")
        return FeasibilityVerdict(True, witness=tuple(x))
    # artificial reduced cost is 1 - y_i for the phase-1 duals y
    y = [-(1 - cost[ncols + i]) * sign[i] for i in range(nrows)]
    if not check_certificate(A, b, y):
        raise RuntimeError("simplex certificate failed verification")
    return FeasibilityVerdict(False, certificate=tuple(y))


def solve(system: AmenabilitySystem) -> FeasibilityVerdict:
    return solve_standard_form(system.A, system.b)


def verify_verdict(system: AmenabilitySystem, verdict: FeasibilityVerdict) -> bool:
    if verdict.feasible:
        return verdict.witness is not None and check_witness(system.A, system.b, verdict.witness)
    return verdict.certificate is not None and check_certificate(system.A, system.b, verdict.certificate)
