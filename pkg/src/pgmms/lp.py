"""Exact linear feasibility with checkable answers.

A system ``eq_rows . x == eq_rhs``, ``le_rows . x <= le_rhs`` over free
rational variables is decided by a phase-one simplex run on an integer
tableau with fraction-free (Edmonds) pivoting and Bland's rule.  The answer
is either a rational witness or Farkas multipliers: nonnegative on the
inequalities and combining the rows into ``0 <= negative constant``.

The tableau is held in int64 while entries stay below 2**30 and is promoted
to Python integers (object dtype) past that, so no answer ever depends on
floating point.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from numbers import Rational
from typing import Sequence

import numpy as np

from .errors import LinearSystemError

_SAFE = 2**30  # keeps piv*a - b*c inside int64


@dataclass(frozen=True)
class LinearSystem:
    n_vars: int
    eq_rows: tuple[tuple[Rational, ...], ...] = ()
    eq_rhs: tuple[Rational, ...] = ()
    le_rows: tuple[tuple[Rational, ...], ...] = ()
    le_rhs: tuple[Rational, ...] = ()

    def __post_init__(self):
        if self.n_vars < 0:
            raise LinearSystemError("negative variable count")
        if len(self.eq_rows) != len(self.eq_rhs) or len(self.le_rows) != len(self.le_rhs):
            raise LinearSystemError("row and right-hand-side counts differ")
        for row in (*self.eq_rows, *self.le_rows):
            if len(row) != self.n_vars:
                raise LinearSystemError(
                    f"row of length {len(row)} in a system with {self.n_vars} variables"
                )
            for x in row:
                if not isinstance(x, Rational):
                    raise LinearSystemError(f"non-rational coefficient {x!r}")
        for x in (*self.eq_rhs, *self.le_rhs):
            if not isinstance(x, Rational):
                raise LinearSystemError(f"non-rational right-hand side {x!r}")

    @classmethod
    def build(cls, n_vars, eq=(), le=()):
        """Build from iterables of ``(row, rhs)`` pairs."""
        eq, le = list(eq), list(le)
        return cls(
            n_vars,
            tuple(tuple(r) for r, _ in eq),
            tuple(b for _, b in eq),
            tuple(tuple(r) for r, _ in le),
            tuple(b for _, b in le),
        )

    def satisfied_by(self, x: Sequence[Rational]) -> bool:
        if len(x) != self.n_vars:
            return False
        for row, b in zip(self.eq_rows, self.eq_rhs):
            if sum(Fraction(a) * v for a, v in zip(row, x) if a) != b:
                return False
        for row, b in zip(self.le_rows, self.le_rhs):
            if sum(Fraction(a) * v for a, v in zip(row, x) if a) > b:
                return False
        return True

    def certifies_infeasible(self, eq_mult: Sequence[Rational], le_mult: Sequence[Rational]) -> bool:
        """Check a Farkas certificate exactly."""
        if len(eq_mult) != len(self.eq_rows) or len(le_mult) != len(self.le_rows):
            return False
        if any(y < 0 for y in le_mult):
            return False
        combo = [Fraction(0)] * self.n_vars
        const = Fraction(0)
        for mult, rows, rhs in ((eq_mult, self.eq_rows, self.eq_rhs), (le_mult, self.le_rows, self.le_rhs)):
            for y, row, b in zip(mult, rows, rhs):
                if not y:
                    continue
                for j, a in enumerate(row):
                    if a:
                        combo[j] += y * a
                const += y * b
        return not any(combo) and const < 0


@dataclass(frozen=True)
class FeasibilityResult:
    feasible: bool
    witness: tuple[Fraction, ...] | None = None
    eq_multipliers: tuple[Fraction, ...] | None = None
    le_multipliers: tuple[Fraction, ...] | None = None
    pivots: int = 0

    def verify(self, system: LinearSystem) -> bool:
        """Independent exact re-check of the witness or the certificate."""
        if self.feasible:
            return self.witness is not None and system.satisfied_by(self.witness)
        if self.eq_multipliers is None or self.le_multipliers is None:
            return False
        return system.certifies_infeasible(self.eq_multipliers, self.le_multipliers)

    def certificate_support(self) -> frozenset[int]:
        """Indices of inequality rows with a positive multiplier."""
        if self.le_multipliers is None:
            return frozenset()
        return frozenset(i for i, y in enumerate(self.le_multipliers) if y > 0)


def _integer_row(row, rhs):
    den = lcm(*(Fraction(a).denominator for a in row), Fraction(rhs).denominator)
    return [int(Fraction(a) * den) for a in row], int(Fraction(rhs) * den), den


def lp_feasible(system: LinearSystem, max_pivots: int | None = None) -> FeasibilityResult:
    """Decide feasibility exactly; deterministic under Bland's rule."""
    n = system.n_vars
    rows, rhs, signs, scales = [], [], [], []
    k_eq = len(system.eq_rows)
    for idx, (row, b) in enumerate(zip(system.eq_rows + system.le_rows, system.eq_rhs + system.le_rhs)):
        ir, ib, den = _integer_row(row, b)
        slack = idx >= k_eq
        sign = -1 if ib < 0 else 1
        rows.append((ir, slack, sign))
        rhs.append(ib * sign)
        signs.append(sign)
        scales.append(den)
    m = len(rows)
    n_slack = m - k_eq
    # columns: x+ (n), x- (n), slacks (n_slack), artificials (m), rhs
    width = 2 * n + n_slack + m
    T = np.zeros((m + 1, width + 1), dtype=np.int64)
    for i, (ir, slack, sign) in enumerate(rows):
        for j, a in enumerate(ir):
            if a:
                T[i, j] = sign * a
                T[i, n + j] = -sign * a
        if slack:
            T[i, 2 * n + (i - k_eq)] = sign
        T[i, 2 * n + n_slack + i] = 1
        T[i, width] = rhs[i]
    if m and np.abs(T).max() > _SAFE:
        T = T.astype(object)
    T[m, : 2 * n + n_slack] = -T[:m, : 2 * n + n_slack].sum(axis=0)
    T[m, width] = -T[:m, width].sum()
    basis = [2 * n + n_slack + i for i in range(m)]
    D = 1
    pivots = 0

    while T[m, width] != 0:
        obj = T[m, :width]
        neg = np.nonzero(obj < 0)[0]
        if len(neg) == 0:
            break
        q = int(neg[0])
        col = T[:m, q]
        cand = np.nonzero(col > 0)[0]
        if len(cand) == 0:  # pragma: no cover - phase one is bounded below by 0
            raise LinearSystemError("unbounded phase-one problem")
        best = None
        for i in cand:
            i = int(i)
            num, den = int(T[i, width]), int(col[i])
            if best is None:
                best = (i, num, den)
                continue
            _, bn, bd = best
            lhs, rhs_ = num * bd, bn * den
            if lhs < rhs_ or (lhs == rhs_ and basis[i] < basis[best[0]]):
                best = (i, num, den)
        p = best[0]
        piv = int(T[p, q])
        if T.dtype != object:
            if max(int(np.abs(T).max()), piv) > _SAFE:
                T = T.astype(object)
        prow = T[p].copy()
        colq = T[:, q].copy()
        T = (piv * T - np.outer(colq, prow)) // D
        T[p] = prow
        D = piv
        basis[p] = q
        pivots += 1
        if max_pivots is not None and pivots > max_pivots:
            raise LinearSystemError("pivot limit exceeded")

    objective = Fraction(-int(T[m, width]), D)
    if objective == 0:
        values = [Fraction(0)] * width
        for i, b in enumerate(basis):
            values[b] = Fraction(int(T[i, width]), D)
        x = tuple(values[j] - values[n + j] for j in range(n))
        return FeasibilityResult(True, witness=x, pivots=pivots)

    art0 = 2 * n + n_slack
    # duals of the phase-one problem: u_i = 1 - reduced cost of artificial i
    u = [1 - Fraction(int(T[m, art0 + i]), D) for i in range(m)]
    y = [-signs[i] * u[i] * scales[i] for i in range(m)]
    y = _primitive(y)
    return FeasibilityResult(
        False,
        eq_multipliers=tuple(y[:k_eq]),
        le_multipliers=tuple(y[k_eq:]),
        pivots=pivots,
    )


def _primitive(vals):
    """Scale a rational vector by a positive factor to coprime integers."""
    nz = [v for v in vals if v]
    if not nz:
        return [Fraction(0)] * len(vals)
    den = lcm(*(v.denominator for v in nz))
    ints = [int(v * den) for v in vals]
    g = 0
    for v in ints:
        g = gcd(g, v)
    return [Fraction(v // g) for v in ints]
