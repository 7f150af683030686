"""Fractional matchings over a set-decomposed market and integral rounding.

Every firm here has a single acceptable set and hires its workers at a
common level x in [0, 1] (one scale per firm). A fractional matching is
therefore a level per firm plus an unmatched share per worker type, all
exact rationals. Rounding goes through a 0-1 constraint system whose
feasible 0/1 points are exactly the stability-preserving integral
re-assignments.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Optional

from .market import Matching
from .matrices import MatrixCertificate, ZeroOneMatrix, is_balanced, set_label
from .prefs import DecomposedMarket

ZERO = Fraction(0)
ONE = Fraction(1)


class FractionalError(ValueError):
    """Malformed fractional matching or pipeline precondition failure."""


@dataclass(frozen=True)
class FractionalMatching:
    """Per-firm hiring levels and per-worker unmatched shares, exact rationals."""

    levels: dict[str, Fraction]
    null_assignment: dict[str, Fraction]

    def level(self, f: str) -> Fraction:
        return self.levels[f]

    def is_integral(self) -> bool:
        vals = list(self.levels.values()) + list(self.null_assignment.values())
        return all(v in (ZERO, ONE) for v in vals)

    def with_level(self, f: str, value: Fraction) -> "FractionalMatching":
        if f not in self.levels:
            raise FractionalError(f"unknown firm: {f}")
        new = dict(self.levels)
        new[f] = Fraction(value)
        return replace(self, levels=new)

    def with_null(self, w: str, value: Fraction) -> "FractionalMatching":
        if w not in self.null_assignment:
            raise FractionalError(f"unknown worker: {w}")
        new = dict(self.null_assignment)
        new[w] = Fraction(value)
        return replace(self, null_assignment=new)


def _unique_set(d: DecomposedMarket, f: str) -> frozenset[str]:
    chain = d.market.firm_prefs[f].chain
    if len(chain) != 1:
        raise FractionalError(f"firm {f} does not have a unique acceptable set")
    return chain[0]


def _validate_shape(fm: FractionalMatching, d: DecomposedMarket):
    if set(fm.levels) != set(d.market.firms):
        raise FractionalError("levels must cover exactly the decomposed firms")
    if set(fm.null_assignment) != set(d.market.workers):
        raise FractionalError("null assignment must cover exactly the workers")
    for f, x in fm.levels.items():
        if not (ZERO <= x <= ONE):
            raise FractionalError(f"level of {f} outside [0, 1]: {x}")
    for w, x in fm.null_assignment.items():
        if not (ZERO <= x <= ONE):
            raise FractionalError(f"null share of {w} outside [0, 1]: {x}")


def worker_mass(fm: FractionalMatching, d: DecomposedMarket, w: str) -> Fraction:
    total = fm.null_assignment[w]
    for f in d.market.firms:
        if w in _unique_set(d, f):
            total += fm.levels[f]
    return total


@dataclass(frozen=True)
class StabilityReport:
    ok: bool
    firm: Optional[str] = None
    detail: str = ""
    # per worker type of the violating firm: the mass the firm could draw
    available: dict[str, Fraction] = None  # type: ignore[assignment]

    def render(self) -> str:
        if self.ok:
            return "PASS"
        lines = [f"FAIL: firm {self.firm} can draw every type it needs"]
        for w, x in sorted((self.available or {}).items()):
            lines.append(f"  type {w}: available mass {x}")
        return "\n".join(lines)


def verify_fractional_stability(
    fm: FractionalMatching, d: DecomposedMarket, pseudo: bool = False
) -> StabilityReport:
    """Check individual rationality and absence of fractional blocks.

    A firm below full scale blocks iff it could simultaneously draw a
    positive mass of every type in its set, counting the unmatched share
    and the levels of firms its target types like strictly less. With
    ``pseudo`` the per-worker mass-conservation check is skipped, so
    intermediate states of a rounding chain can be verified too.
    """
    _validate_shape(fm, d)
    m = d.market
    if not pseudo:
        for w in m.workers:
            if worker_mass(fm, d, w) != ONE:
                raise FractionalError(
                    f"worker {w} mass is {worker_mass(fm, d, w)}, expected 1"
                )
    rank = {w: {f: i for i, f in enumerate(m.worker_prefs[w])} for w in m.workers}
    # (a) individual rationality: positive level only at firms acceptable
    # to every type they hire.
    for f in m.firms:
        if fm.levels[f] > 0:
            for w in _unique_set(d, f):
                if f not in rank[w]:
                    return StabilityReport(
                        ok=False,
                        firm=f,
                        detail=f"type {w} is matched to a firm it finds unacceptable",
                        available={},
                    )
    # (b) no blocking firm.
    for f in m.firms:
        if fm.levels[f] >= ONE:
            continue
        target = _unique_set(d, f)
        avail: dict[str, Fraction] = {}
        for w in target:
            if f not in rank[w]:
                avail[w] = ZERO
                continue
            mass = fm.null_assignment[w]
            for g in m.firms:
                if g == f or w not in _unique_set(d, g):
                    continue
                if rank[w].get(g, len(rank[w]) + 1) > rank[w][f]:
                    mass += fm.levels[g]
            avail[w] = mass
        if target and min(avail.values()) > 0:
            return StabilityReport(
                ok=False,
                firm=f,
                detail="every needed type has positive mass at strictly worse matches",
                available=avail,
            )
    return StabilityReport(ok=True)


ColumnMeaning = tuple[str, str]  # ("take"|"empty", firm) or ("null", worker)


@dataclass(frozen=True)
class ConstraintSystem:
    """The 0-1 system whose 0/1 solutions are stability-preserving roundings."""

    matrix: ZeroOneMatrix
    column_meaning: tuple[ColumnMeaning, ...]
    row_meaning: tuple[tuple[str, str], ...]  # ("firm"|"worker", id)
    rhs: tuple[int, ...]

    @property
    def empty(self) -> bool:
        return not self.column_meaning

    def render(self) -> str:
        if self.empty:
            return "(empty system)"
        body = self.matrix.render().splitlines()
        lines = [body[0] + "  | rhs"]
        for line, r in zip(body[1:], self.rhs):
            lines.append(f"{line}  | {r}")
        return "\n".join(lines)


def build_constraint_system(
    fm: FractionalMatching, d: DecomposedMarket
) -> ConstraintSystem:
    """One (take, empty) column pair per strictly fractional firm, one null
    column per strictly fractional unmatched share; firm rows force the
    pair to sum to 1, worker rows restore unit mass net of the already
    integral contributions."""
    report = verify_fractional_stability(fm, d)
    if not report.ok:
        raise FractionalError(f"input is not a stable fractional matching: {report.detail}")
    m = d.market
    frac_firms = [f for f in m.firms if ZERO < fm.levels[f] < ONE]
    frac_null = [w for w in m.workers if ZERO < fm.null_assignment[w] < ONE]
    if not frac_firms and not frac_null:
        return ConstraintSystem(
            matrix=ZeroOneMatrix(rows=(), cols=(), entries=()),
            column_meaning=(),
            row_meaning=(),
            rhs=(),
        )
    meanings: list[ColumnMeaning] = []
    labels: list[str] = []
    for f in frac_firms:
        meanings.append(("take", f))
        labels.append(f + ":" + set_label(_unique_set(d, f)))
        meanings.append(("empty", f))
        labels.append(f + ":{}")
    for w in frac_null:
        meanings.append(("null", w))
        labels.append("null:" + w)
    row_meaning: list[tuple[str, str]] = [("firm", f) for f in frac_firms]
    row_meaning += [("worker", w) for w in m.workers]
    rows = []
    rhs = []
    for f in frac_firms:
        rows.append(
            tuple(1 if kind in ("take", "empty") and who == f else 0
                  for kind, who in meanings)
        )
        rhs.append(1)
    for w in m.workers:
        row = []
        for kind, who in meanings:
            if kind == "take":
                row.append(1 if w in _unique_set(d, who) else 0)
            elif kind == "null":
                row.append(1 if who == w else 0)
            else:
                row.append(0)
        rows.append(tuple(row))
        integral = sum(
            1 for f in m.firms
            if fm.levels[f] == ONE and w in _unique_set(d, f)
        )
        if fm.null_assignment[w] == ONE:
            integral += 1
        rhs.append(1 - integral)
    matrix = ZeroOneMatrix(
        rows=tuple(who for _, who in row_meaning),
        cols=tuple(labels),
        entries=tuple(rows),
    )
    return ConstraintSystem(
        matrix=matrix,
        column_meaning=tuple(meanings),
        row_meaning=tuple(row_meaning),
        rhs=tuple(rhs),
    )


class IntegralExtractionError(RuntimeError):
    """No 0/1 solution exists; carries the balancedness certificate."""

    def __init__(self, message: str, certificate: MatrixCertificate):
        super().__init__(message)
        self.certificate = certificate


def extract_integral_solution(cs: ConstraintSystem) -> tuple[int, ...]:
    """First 0/1 solution of B z = rhs in canonical order (try 1 before 0).

    Backtracking with row-slack propagation; complete, so failure means
    the system has no 0/1 point at all, which is reported together with
    the balancedness certificate of B.
    """
    if cs.empty:
        return ()
    n = len(cs.column_meaning)
    rows = cs.matrix.entries
    nrows = len(rows)
    need = list(cs.rhs)
    # columns that can still contribute to each row
    pending = [sum(rows[i][j] for j in range(n)) for i in range(nrows)]
    assign: list[Optional[int]] = [None] * n

    def rec(j: int) -> bool:
        if j == n:
            return all(v == 0 for v in need)
        for value in (1, 0):
            ok = True
            for i in range(nrows):
                if not rows[i][j]:
                    continue
                need[i] -= value
                pending[i] -= 1
                if need[i] < 0 or need[i] > pending[i]:
                    ok = False
            if ok:
                assign[j] = value
                if rec(j + 1):
                    return True
            for i in range(nrows):
                if rows[i][j]:
                    need[i] += value
                    pending[i] += 1
        assign[j] = None
        return False

    if not rec(0):
        cert = is_balanced(cs.matrix)
        raise IntegralExtractionError(
            "no 0/1 solution to the constraint system", cert
        )
    return tuple(assign)  # type: ignore[arg-type]


def apply_stable_transformations(
    fm: FractionalMatching, z: tuple[int, ...], cs: ConstraintSystem
) -> FractionalMatching:
    """Round fm per z: each fractional firm to its selected option, each
    fractional unmatched share to its selected quantity."""
    if len(z) != len(cs.column_meaning):
        raise FractionalError("solution length does not match the system")
    _check_solution(cs, z)
    out = fm
    for value, (kind, who) in zip(z, cs.column_meaning):
        if kind == "take":
            out = out.with_level(who, ONE if value else ZERO)
        elif kind == "null":
            out = out.with_null(who, ONE if value else ZERO)
    return out


def _check_solution(cs: ConstraintSystem, z: tuple[int, ...]):
    for row, target in zip(cs.matrix.entries, cs.rhs):
        if sum(a * b for a, b in zip(row, z)) != target:
            raise FractionalError("vector does not solve the constraint system")


def integral_to_matching(fm: FractionalMatching, d: DecomposedMarket) -> Matching:
    """Read an integral fractional matching as a discrete matching."""
    if not fm.is_integral():
        raise FractionalError("matching is not integral")
    assignment: dict[str, Optional[str]] = {w: None for w in d.market.workers}
    for f in d.market.firms:
        if fm.levels[f] == ONE:
            for w in _unique_set(d, f):
                if assignment[w] is not None:
                    raise FractionalError(f"worker {w} assigned twice")
                assignment[w] = f
    for w in d.market.workers:
        if assignment[w] is None and fm.null_assignment[w] != ONE:
            raise FractionalError(f"worker {w} unaccounted for")
    return Matching(assignment)


def reduced_balance_check(cs: ConstraintSystem, cap: int = 12) -> MatrixCertificate:
    """Balancedness of B restricted to the take-set columns.

    Null and empty columns have a single 1 and the firm rows then keep a
    single 1 as well, so the take-set columns over the worker rows decide
    balancedness of the whole system.
    """
    if cs.empty:
        return is_balanced(cs.matrix, cap)
    take_cols = [
        j for j, (kind, _) in enumerate(cs.column_meaning) if kind == "take"
    ]
    worker_rows = [
        i for i, (kind, _) in enumerate(cs.row_meaning) if kind == "worker"
    ]
    return is_balanced(cs.matrix.submatrix(worker_rows, take_cols), cap)
