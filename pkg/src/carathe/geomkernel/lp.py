"""Exact linear programming over the rationals.

The core is a two-phase primal simplex on an integer tableau.  Pivots use
the fraction-free (Bareiss / Edmonds) update, so every tableau entry stays
an integer and the true rational tableau is ``T / D`` where ``D`` is the
current basis determinant.  Bland's rule guarantees termination.

Public entry points:

* :func:`lp_feasible` -- feasibility of a system of ``>=``, ``>`` and ``=``
  constraints over free variables, returning either an exact feasible point
  or an exact infeasibility certificate.
* :func:`lp_optimize` -- maximize/minimize a linear objective over such a
  system (non-strict constraints only).
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Iterable, Sequence

GE = ">="
GT = ">"
EQ = "="

_REL_ALIASES = {
    ">=": GE, "≥": GE, "ge": GE,
    ">": GT, "gt": GT,
    "=": EQ, "==": EQ, "eq": EQ,
}


class LPInputError(ValueError):
    """Malformed LP input (dimension mismatch, unknown relation)."""


@dataclass(frozen=True)
class LPWitness:
    """Outcome of :func:`lp_feasible`.

    ``kind == "feasible"``: ``values`` is a point satisfying every constraint.
    ``kind == "infeasible-certificate"``: ``values`` holds one multiplier per
    constraint (Farkas / Motzkin transposition certificate).
    """

    kind: str
    values: tuple[Fraction, ...]

    @property
    def feasible(self) -> bool:
        return self.kind == "feasible"


Constraint = tuple[Sequence, str, object]


def _normalize(constraints: Iterable[Constraint]) -> tuple[list[tuple[tuple[Fraction, ...], str, Fraction]], int]:
    rows = []
    dim = None
    for coeffs, rel, rhs in constraints:
        rel_n = _REL_ALIASES.get(rel)
        if rel_n is None:
            raise LPInputError(f"unknown relation {rel!r}")
        vec = tuple(c if type(c) is Fraction else Fraction(c) for c in coeffs)
        if dim is None:
            dim = len(vec)
        elif len(vec) != dim:
            raise LPInputError(f"constraint of length {len(vec)} in a system of dimension {dim}")
        rows.append((vec, rel_n, rhs if type(rhs) is Fraction else Fraction(rhs)))
    return rows, (dim or 0)


@dataclass
class _SimplexResult:
    status: str  # "optimal", "infeasible", "unbounded"
    primal: list[Fraction]
    duals: list[Fraction]
    value: Fraction


def simplex(a_rows: Sequence[Sequence], b: Sequence, c: Sequence, duals: bool = True) -> _SimplexResult:
    """Minimize ``c.z`` subject to ``A z = b``, ``z >= 0`` exactly.

    Returns primal ``z``, dual ``y`` (``c - A^T y >= 0`` at optimality) and the
    optimal value.  When the status is ``"infeasible"``, ``duals`` is a Farkas
    vector: ``A^T y <= 0`` and ``b.y > 0``.
    """
    m = len(a_rows)
    n = len(c)
    # Scale each row (including rhs) to integers and make rhs nonnegative.
    rows_int: list[list[int]] = []
    signs = []
    row_scale = []
    for i in range(m):
        vals = list(a_rows[i]) + [b[i]]
        if len(vals) != n + 1:
            raise LPInputError("row length does not match objective length")
        if all(type(v) is int for v in vals):
            den = 1
            ints = vals
        else:
            vals = [Fraction(v) for v in vals]
            den = 1
            for v in vals:
                den = lcm(den, v.denominator)
            ints = [v.numerator * (den // v.denominator) for v in vals]
        s = -1 if ints[-1] < 0 else 1
        if s < 0:
            ints = [-x for x in ints]
        signs.append(s)
        row_scale.append(den)
        rows_int.append(ints)

    # Crash basis: a column that is +-1 in one row and zero elsewhere can
    # start basic there, so that row needs no artificial.
    colcount = [0] * n
    for ints in rows_int:
        for j in range(n):
            if ints[j]:
                colcount[j] += 1
    basis = []
    used = set()
    for i, ints in enumerate(rows_int):
        pick = n + i
        for j in range(n):
            if colcount[j] != 1 or j in used:
                continue
            if ints[j] == 1 or (ints[j] == -1 and ints[-1] == 0):
                if ints[j] == -1:
                    ints = [-x for x in ints]
                    rows_int[i] = ints
                    signs[i] = -signs[i]
                pick = j
                used.add(j)
                break
        basis.append(pick)

    tab: list[list[int]] = []
    for i, ints in enumerate(rows_int):
        # columns: n structural, m artificial, rhs
        art = [0] * m
        art[i] = 1
        tab.append(list(ints[:-1]) + art + [ints[-1]])
    width = n + m + 1
    rhs = n + m

    if all(type(x) is int for x in c):
        cost = list(c)
        cden = 1
        cint = cost
    else:
        cost = [Fraction(x) for x in c]
        cden = 1
        for v in cost:
            cden = lcm(cden, v.denominator)
        cint = [v.numerator * (cden // v.denominator) for v in cost]

    # Phase-1 objective row: reduced costs of sum(artificials) w.r.t. the
    # starting basis.  Phase-2 row: the true cost (artificials cost 0).
    obj1 = [0] * n + [1] * m + [0]
    obj2 = cint + [0] * m + [0]
    for i, row in enumerate(tab):
        bj = basis[i]
        if bj >= n:
            for j in range(width):
                if row[j]:
                    obj1[j] -= row[j]
        elif obj2[bj]:
            f = obj2[bj]
            for j in range(width):
                if row[j]:
                    obj2[j] -= f * row[j]
    tab.append(obj2)
    tab.append(obj1)
    det = 1

    def pivot(r: int, col: int) -> None:
        nonlocal det
        prow = tab[r]
        p = prow[col]
        nz = [j for j in range(width) if prow[j]]
        for i, row in enumerate(tab):
            if i == r:
                continue
            f = row[col]
            if f == 0:
                if p != det:
                    for j in range(width):
                        if row[j]:
                            row[j] = row[j] * p // det
                continue
            new = [x * p for x in row] if p != 1 else row[:]
            for j in nz:
                new[j] -= f * prow[j]
            if det != 1:
                new = [x // det for x in new]
            tab[i] = new
        det = p
        if det < 0:
            for row in tab:
                for j in range(width):
                    row[j] = -row[j]
            det = -det
        basis[r] = col

    def run(obj: int, allowed: int) -> str:
        while True:
            orow = tab[obj]
            # basic columns have zero reduced cost, so the first negative
            # entry is Bland's entering variable
            enter = next((j for j in range(allowed) if orow[j] < 0), -1)
            if enter < 0:
                return "optimal"
            best = -1
            for i in range(m):
                a = tab[i][enter]
                if a > 0:
                    if best < 0:
                        best = i
                        continue
                    lhs = tab[i][rhs] * tab[best][enter]
                    rhs_v = tab[best][rhs] * a
                    if lhs < rhs_v or (lhs == rhs_v and basis[i] < basis[best]):
                        best = i
            if best < 0:
                return "unbounded"
            pivot(best, enter)

    # Phase 1 over structural columns only.
    run(m + 1, n)
    phase1 = tab[m + 1]
    if phase1[rhs] != 0:
        # optimum of sum(artificials) is -phase1[rhs]/det > 0
        y = []
        for i in range(m if duals else 0):
            y.append(Fraction((det - phase1[n + i]) * signs[i] * row_scale[i], det))
        return _SimplexResult("infeasible", [], y, Fraction(-phase1[rhs], det))

    # Drive zero-level artificials out of the basis where possible.
    for r in range(m):
        if basis[r] >= n:
            for j in range(n):
                if tab[r][j] != 0 and j not in basis:
                    pivot(r, j)
                    break

    status = run(m, n)
    orow = tab[m]
    primal = [Fraction(0)] * n
    for i, bj in enumerate(basis):
        if bj < n:
            primal[bj] = Fraction(tab[i][rhs], det)
    ys = []
    if duals:
        for i in range(m):
            ys.append(Fraction(-orow[n + i] * signs[i] * row_scale[i], det * cden))
    num = sum(cint[j] * tab[i][rhs] for i, j in enumerate(basis) if j < n and cint[j])
    value = Fraction(num, det * cden)
    return _SimplexResult(status, primal, ys, value)


def _integer_row(vec, rhs) -> tuple[list[int], int, int]:
    """Scale a rational row to integers; returns (coeffs, rhs, scale)."""
    den = rhs.denominator
    for v in vec:
        den = lcm(den, v.denominator)
    if den == 1:
        return [v.numerator for v in vec], rhs.numerator, 1
    return [v.numerator * (den // v.denominator) for v in vec], rhs.numerator * (den // rhs.denominator), den


def _standard_form(rows, dim: int, strict: bool):
    """Translate free-variable constraints into ``A z = b, z >= 0``.

    Column layout: x+ (dim), x- (dim), one surplus per inequality, then
    ``t`` and its box slack ``w`` when strict rows are present.  Rows are
    scaled to integers; ``scales[i]`` maps a multiplier of the scaled row
    back to the original one.
    """
    n_ineq = sum(1 for _, rel, _ in rows if rel != EQ)
    ncols = 2 * dim + n_ineq + (2 if strict else 0)
    t_col = 2 * dim + n_ineq
    a_rows = []
    b = []
    scales = []
    s = 0
    for vec, rel, rhs in rows:
        ivec, irhs, den = _integer_row(vec, rhs)
        row = [0] * ncols
        for k, v in enumerate(ivec):
            row[k] = v
            row[dim + k] = -v
        if rel != EQ:
            row[2 * dim + s] = -1
            s += 1
        if rel == GT:
            row[t_col] = -1
        a_rows.append(row)
        b.append(irhs)
        scales.append(den)
    if strict:
        row = [0] * ncols
        row[t_col] = 1
        row[t_col + 1] = 1
        a_rows.append(row)
        b.append(1)
    return a_rows, b, ncols, t_col, scales


def _common_scale(vals) -> tuple[list[int], int]:
    """Integers ``X`` and ``D > 0`` with ``vals[k] = X[k] / D``."""
    D = 1
    for v in vals:
        if type(v) is not int:
            D = lcm(D, Fraction(v).denominator)
    out = []
    for v in vals:
        if type(v) is int:
            out.append(v * D)
        else:
            v = Fraction(v)
            out.append(v.numerator * (D // v.denominator))
    return out, D


def verify_witness(constraints: Iterable[Constraint], witness: LPWitness) -> bool:
    """Check a witness against the constraints with exact arithmetic."""
    rows, dim = _normalize(constraints)
    irows = [_integer_row(vec, rhs) + (rel,) for vec, rel, rhs in rows]
    vals = witness.values
    if witness.feasible:
        if len(vals) != dim:
            return False
        X, D = _common_scale(vals)
        for ivec, irhs, _, rel in irows:
            diff = sum(a * x for a, x in zip(ivec, X)) - irhs * D
            if rel == GE and diff < 0:
                return False
            if rel == GT and diff <= 0:
                return False
            if rel == EQ and diff != 0:
                return False
        return True
    if len(vals) != len(rows):
        return False
    if any(rel != EQ and y < 0 for (_, rel, _), y in zip(rows, vals)):
        return False
    # y_i * vec_i = (y_i / den_i) * ivec_i
    Z, _ = _common_scale([Fraction(y) / den for y, (_, _, den, _) in zip(vals, irows)])
    combo = [0] * dim
    bty = 0
    strict_mass = False
    for z, (ivec, irhs, _, rel) in zip(Z, irows):
        if z:
            for k in range(dim):
                combo[k] += z * ivec[k]
            bty += z * irhs
            if rel == GT and z > 0:
                strict_mass = True
    if any(combo):
        return False
    return bty > 0 or (bty == 0 and strict_mass)


def lp_feasible(constraints: Iterable[Constraint]) -> LPWitness:
    """Decide feasibility of a system over free rational variables.

    Each constraint is ``(coeffs, relation, rhs)`` with relation one of
    ``">="``, ``">"`` or ``"="``.  Strict rows are homogenized with a shared
    slack ``t`` in ``[0, 1]`` that is maximized; the system is strictly
    feasible iff the optimum is positive.
    """
    rows, dim = _normalize(constraints)
    if not rows:
        return LPWitness("feasible", tuple(Fraction(0) for _ in range(dim)))
    strict = any(rel == GT for _, rel, _ in rows)
    a_rows, b, ncols, t_col, scales = _standard_form(rows, dim, strict)
    c = [0] * ncols
    if strict:
        c[t_col] = -1
    res = simplex(a_rows, b, c)
    if res.status == "infeasible" or (strict and res.value >= 0):
        # phase-1 Farkas duals, or (t* = 0) the optimal duals as a Motzkin certificate
        y = tuple(res.duals[i] * scales[i] for i in range(len(rows)))
        return _checked(rows, LPWitness("infeasible-certificate", y))
    x = tuple(res.primal[k] - res.primal[dim + k] for k in range(dim))
    return _checked(rows, LPWitness("feasible", x))


def _checked(rows, witness: LPWitness) -> LPWitness:
    if not verify_witness(rows, witness):
        raise RuntimeError("internal error: LP witness failed exact re-verification")
    return witness


def lp_optimize(objective: Sequence, constraints: Iterable[Constraint], maximize: bool = True):
    """Optimize ``objective . x`` over non-strict constraints.

    Returns ``(status, value, x)`` where status is ``"optimal"``,
    ``"infeasible"`` or ``"unbounded"``.
    """
    rows, dim = _normalize(constraints)
    obj = [Fraction(v) for v in objective]
    if rows and len(obj) != dim:
        raise LPInputError("objective length does not match constraints")
    dim = len(obj)
    if any(rel == GT for _, rel, _ in rows):
        raise LPInputError("lp_optimize accepts only >= and = constraints")
    a_rows, b, ncols, _, _ = _standard_form(rows, dim, False)
    sign = -1 if maximize else 1
    iobj, D = _common_scale(obj)
    c = [0] * ncols
    for k, v in enumerate(iobj):
        c[k] = sign * v
        c[dim + k] = -sign * v
    res = simplex(a_rows, b, c, duals=False)
    if res.status != "optimal":
        return res.status, None, None
    x = tuple(res.primal[k] - res.primal[dim + k] for k in range(dim))
    return "optimal", sign * res.value / D, x
