"""Exact rational linear programming: two-phase simplex with Bland's rule.

Solves   max c.x   subject to   A x = b,  x >= lower
entirely in fractions.Fraction.  The least-index pivot rule guarantees
termination, so optimality and uniqueness verdicts built on top of this
solver never depend on tolerances.

The constraint system is factored once (phase 1); successive objectives
re-run phase 2 from the current basic feasible solution, which makes the
per-edge maximization sweeps used by the uniqueness checks cheap.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .errors import ForcelabError

ZERO = Fraction(0)
ONE = Fraction(1)


@dataclass
class LPResult:
    status: str  # "optimal" | "infeasible" | "unbounded"
    value: Optional[Fraction]
    solution: Optional[list[Fraction]]


class EqualityLP:
    """Factored equality-form LP over which multiple objectives can be maximized."""

    def __init__(
        self,
        rows: Sequence[Sequence[Fraction]],
        rhs: Sequence[Fraction],
        lower: Optional[Sequence[Fraction]] = None,
    ):
        m = len(rows)
        n = len(rows[0]) if m else 0
        self.n = n
        self.lower = [Fraction(x) for x in lower] if lower is not None else [ZERO] * n
        if len(self.lower) != n:
            raise ForcelabError("lower bound vector length mismatch")
        # Substitute x = lower + y with y >= 0, then sign-normalize rows.
        tableau: list[list[Fraction]] = []
        basis: list[int] = []
        for i in range(m):
            row = [Fraction(a) for a in rows[i]]
            b = Fraction(rhs[i]) - sum(
                (row[j] * self.lower[j] for j in range(n) if self.lower[j]), ZERO
            )
            if b < 0:
                row = [-a for a in row]
                b = -b
            tableau.append(row + [b])
            basis.append(n + i)  # artificial variable
        self.tableau = tableau
        self.basis = basis
        self.feasible = self._phase1() if m else True

    # -- simplex core ------------------------------------------------------

    def _pivot(self, r: int, c: int) -> None:
        tab = self.tableau
        row = tab[r]
        piv = row[c]
        if piv != 1:
            inv = 1 / piv
            tab[r] = row = [a * inv for a in row]
        for i, other in enumerate(tab):
            if i == r:
                continue
            f = other[c]
            if f:
                tab[i] = [a - f * p for a, p in zip(other, row)]
        self.basis[r] = c

    def _run(self, obj: list[Fraction]) -> Optional[str]:
        """Pivot until the objective row has no positive structural entry.

        `obj` has n structural coefficients plus the current value in the last
        cell and is updated in place.  Returns "unbounded" if detected.
        """
        n = self.n
        tab = self.tableau
        while True:
            enter = -1
            for j in range(n):
                if obj[j] > 0:
                    enter = j
                    break
            if enter < 0:
                return None
            leave = -1
            best: Optional[Fraction] = None
            for i, row in enumerate(tab):
                a = row[enter]
                if a > 0:
                    ratio = row[-1] / a
                    if best is None or ratio < best or (ratio == best and self.basis[i] < self.basis[leave]):
                        best = ratio
                        leave = i
            if leave < 0:
                return "unbounded"
            self._pivot(leave, enter)
            f = obj[enter]
            if f:
                row = tab[leave]
                for j in range(n):
                    if row[j]:
                        obj[j] -= f * row[j]
                obj[-1] += f * row[-1]

    def _phase1(self) -> bool:
        n = self.n
        obj = [ZERO] * (n + 1)
        infeas = ZERO
        for row in self.tableau:
            for j in range(n):
                obj[j] += row[j]
            infeas += row[-1]
        obj[-1] = -infeas  # maximizing -(sum of artificials)
        status = self._run(obj)
        if status == "unbounded":  # cannot happen: phase-1 objective is bounded by 0
            raise ForcelabError("internal error: unbounded feasibility phase")
        if obj[-1] != 0:
            return False
        # Drive any zero-valued artificial out of the basis; a row with no
        # structural coefficient left is a redundant constraint and is dropped.
        drop = []
        for i in range(len(self.tableau)):
            if self.basis[i] < n:
                continue
            row = self.tableau[i]
            col = next((j for j in range(n) if row[j] != 0), None)
            if col is None:
                drop.append(i)
            else:
                self._pivot(i, col)
        for i in reversed(drop):
            del self.tableau[i]
            del self.basis[i]
        return True

    # -- objectives --------------------------------------------------------

    def maximize(self, objective: Sequence[Fraction]) -> LPResult:
        """Maximize c.x from the current basic feasible solution."""
        if not self.feasible:
            return LPResult("infeasible", None, None)
        n = self.n
        c = [Fraction(v) for v in objective]
        if len(c) != n:
            raise ForcelabError("objective length mismatch")
        obj = list(c) + [ZERO]
        for i, row in enumerate(self.tableau):
            cb = c[self.basis[i]]
            if cb:
                for j in range(n):
                    if row[j]:
                        obj[j] -= cb * row[j]
                obj[-1] += cb * row[-1]
        status = self._run(obj)
        if status == "unbounded":
            return LPResult("unbounded", None, None)
        y = [ZERO] * n
        for i, row in enumerate(self.tableau):
            y[self.basis[i]] = row[-1]
        x = [yi + lo for yi, lo in zip(y, self.lower)]
        shift = sum((ci * lo for ci, lo in zip(c, self.lower) if lo), ZERO)
        return LPResult("optimal", obj[-1] + shift, x)

    def maximize_variable(self, index: int) -> LPResult:
        unit = [ZERO] * self.n
        unit[index] = ONE
        return self.maximize(unit)


def incidence_rows(graph) -> list[list[Fraction]]:
    """Vertex-edge incidence matrix rows, one per vertex."""
    rows = [[ZERO] * graph.edge_count for _ in range(graph.vertex_count)]
    for e, (u, v) in enumerate(graph.edges):
        rows[u][e] = ONE
        rows[v][e] = ONE
    return rows
