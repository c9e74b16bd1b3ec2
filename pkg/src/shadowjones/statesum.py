"""State sums of shadows and the colored Jones invariant.

Each vertex's 6j-symbol is split as ``phase * Delta^4 * U``.  The Delta of a
triple sits on the singular edge carrying that triple, so an edge with two
vertex-ends collects ``Delta^2`` and everything stays rational in ``u``.
Edges ending on the boundary (one vertex-end) are paired by their coloured
triple; circle edges carry no vertex and contribute 1.
"""

from __future__ import annotations

import csv
import io
import math
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import mpmath
from mpmath import mp

from .qalg import (
    QProduct,
    delta_sq_product,
    qint,
    qproduct_sum,
    reduced_tet_sum_tw,
    region_weight_product,
    tet_germ,
    w_const,
)
from .qring import (
    DEFAULT_PRECISION,
    POLE,
    RATFN_ZERO,
    ZERO_VALUE,
    Germ,
    IndeterminateError,
    LaurentPoly,
    RationalFunc,
    RootTable,
    UnitEval,
    eval_at_root,
    germ_result,
    germ_sum,
    i_power,
)
from .shadow import (
    Coloring,
    InfiniteShadowError,
    ShadowError,
    ShadowPolyhedron,
    enumerate_colorings,
    finiteness_check,
    first_betti,
)

PARALLEL_MIN_COLORINGS = 64
PARALLEL_MIN_GROUPS = 8


@dataclass(frozen=True)
class StateSumResult:
    value: object  # RationalFunc, UnitEval, ZERO_VALUE or POLE
    coloring_count: int
    mode: tuple  # ("plain", d) or ("r_admissible", r, d)


def _term(p: ShadowPolyhedron, ends: Counter, col: Coloring):
    """``(QProduct, vertex keys)`` for one colouring."""
    qp = QProduct(1)
    for reg in p.regions:
        qp = qp * region_weight_product(col.twice(reg.id), reg.euler, reg.gleam.twice)
    loose = Counter()
    for e in p.edges:
        tri = tuple(col.twice(x) for x in e.regions)
        n = ends[e.id]
        if n == 2:
            qp = qp * delta_sq_product(*tri)
        elif n == 1:
            loose[tuple(sorted(tri))] += 1
    for tri, n in loose.items():
        if n % 2:
            raise ShadowError(f"boundary edges with coloured triple {tri} do not pair up; "
                              "the Delta factors would not be rational")
        sq = delta_sq_product(*tri)
        for _ in range(n // 2):
            qp = qp * sq
    keys = []
    total = 0
    for v in p.vertices:
        key = tuple(col.twice(x) for x in v.slots)
        total += sum(key)
        keys.append(key)
    qp = qp * QProduct(i_power(-total))
    return qp, tuple(sorted(keys))


def _symbolic_group(args):
    keys, qps = args
    part = qproduct_sum(qps)
    for key in keys:
        part = part * reduced_tet_sum_tw(*key)
    return part


def _numeric_chunk(args):
    p, chunk, r, precision = args
    ends = p.vertex_ends()
    out = []
    with mp.workprec(precision):
        table = RootTable(r, precision)
        tets: dict = {}
        for tw in chunk:
            qp, keys = _term(p, ends, Coloring(tw))
            g = qp.germ(table)
            for key in keys:
                if key not in tets:
                    tets[key] = tet_germ(table, *key)
                g = g * tets[key]
            out.append(g)
    return out


def _chunks(items, workers):
    if workers <= 1 or len(items) < PARALLEL_MIN_COLORINGS:
        return [items]
    n = min(len(items), 4 * workers)
    size = -(-len(items) // n)
    return [items[k:k + size] for k in range(0, len(items), size)]


def _map(fn, tasks, workers):
    if workers <= 1 or len(tasks) <= 1:
        return [fn(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, tasks))


def _colorings(p, d, r=None):
    if not finiteness_check(p) and r is None:
        raise InfiniteShadowError(f"shadow {p.label!r} is not finite")
    return [dict(c._tw) for c in enumerate_colorings(p, d, r)]


def state_sum_symbolic(p: ShadowPolyhedron, d: int, workers: int = 1,
                       scale: QProduct = None) -> StateSumResult:
    """``|(P, gl)|_d`` as an exact rational function of ``u = t**(1/8)``.

    ``scale`` multiplies every term before summation, which lets a factor
    such as ``[d]**-1`` cancel cyclotomic factor by cyclotomic factor.
    """
    cols = _colorings(p, d)
    scale = scale or QProduct(1)
    ends = p.vertex_ends()
    groups: dict = {}
    for tw in cols:
        qp, keys = _term(p, ends, Coloring(tw))
        groups.setdefault(keys, []).append(qp * scale)
    # one task per vertex-colour pattern; partial sums are added in a fixed order
    tasks = list(groups.items())
    parts = _map(_symbolic_group, tasks, workers if len(tasks) >= PARALLEL_MIN_GROUPS else 1)
    total = RATFN_ZERO
    for part in parts:
        total = total + part
    return StateSumResult(total, len(cols), ("plain", d))


def _sign_qint_power(d: int, power: int) -> QProduct:
    return QProduct(-1 if (d - 1) % 2 else 1, 0, {d: power})


def jones_symbolic(p: ShadowPolyhedron, d: int, workers: int = 1) -> RationalFunc:
    """``J_d = (-1)**(d-1) [d]**(b1-1) |(P, gl)|_d`` in canonical form."""
    out = state_sum_symbolic(p, d, workers, _sign_qint_power(d, first_betti(p) - 1)).value
    if not out.is_quarter_graded():
        raise ShadowError("result is not a function of t**(1/4); check the gleams")
    return out


def _state_sum_germ(p, d, r, precision, workers, admissible_r=None):
    cols = _colorings(p, d, admissible_r)
    tasks = [(p, c, r, precision) for c in _chunks(cols, workers)]
    germs = [g for part in _map(_numeric_chunk, tasks, workers) for g in part]
    with mp.workprec(precision):
        return germ_sum(germs, precision), len(cols)


def state_sum_numeric(p: ShadowPolyhedron, d: int, r: int, precision: int = DEFAULT_PRECISION,
                      workers: int = 1, r_admissible: bool = False) -> StateSumResult:
    g, n = _state_sum_germ(p, d, r, precision, workers, r if r_admissible else None)
    mode = ("r_admissible", r, d) if r_admissible else ("plain", d)
    return StateSumResult(germ_result(g), n, mode)


def jones_numeric(p: ShadowPolyhedron, d: int, r: int, precision: int = DEFAULT_PRECISION,
                  workers: int = 1):
    """``J_d`` at ``t = exp(2 pi i / r)``: a :class:`UnitEval`, ``ZERO_VALUE`` or ``POLE``.

    Vanishing quantum integers are tracked to first order, so ``r = d`` works
    even though ``[d]`` is zero there.
    """
    g, _ = _state_sum_germ(p, d, r, precision, workers)
    with mp.workprec(precision):
        table = RootTable(r, precision)
        norm = _sign_qint_power(d, first_betti(p) - 1).germ(table)
        return germ_result(g * norm)


def rt_invariant(p: ShadowPolyhedron, d: int, r: int, precision: int = DEFAULT_PRECISION,
                 workers: int = 1):
    """``W**b1 * |(P, gl)|^r_d`` at ``t = exp(2 pi i / r)`` for a graph-retracting shadow."""
    if not finiteness_check(p):
        raise ShadowError("rt_invariant supports graph-retracting shadows only")
    b1 = first_betti(p)
    g, _ = _state_sum_germ(p, d, r, precision, workers, admissible_r=r)
    with mp.workprec(precision):
        table = RootTable(r, precision)
        w = table.poly(w_const(r))
        for _ in range(b1):
            g = g * w
        return germ_result(g)


def rt_from_jones(p: ShadowPolyhedron, d: int, r: int, jones: RationalFunc = None,
                  precision: int = DEFAULT_PRECISION):
    """``(-1)**(d-1) W**b1 [d]**(1-b1) J_d`` evaluated at ``t = exp(2 pi i / r)``."""
    b1 = first_betti(p)
    if jones is None:
        jones = jones_symbolic(p, d)
    f = qproduct_sum([_sign_qint_power(d, 1 - b1)]) * jones
    f = f * RationalFunc(w_const(r) ** b1)
    return eval_at_root(f, r, precision)


def _close(a, b, tol):
    if a is ZERO_VALUE or b is ZERO_VALUE or a is POLE or b is POLE:
        return a is b
    za, zb = a.to_complex(), b.to_complex()
    return abs(za - zb) <= tol * max(abs(za), abs(zb), 1)


def stabilization_threshold(p: ShadowPolyhedron, d: int, r_max: int = 20, tol: float = 1e-10,
                            precision: int = DEFAULT_PRECISION):
    """Smallest ``r0`` with ``rt_invariant == rt_from_jones`` for every ``r0 <= r <= r_max``.

    Returns ``(r0, rows)``; ``rows`` lists ``(r, agree)``.  ``r0`` is None if
    even ``r_max`` disagrees.
    """
    jones = jones_symbolic(p, d)
    rows = []
    for r in range(3, r_max + 1):
        lhs = rt_invariant(p, d, r, precision)
        rhs = rt_from_jones(p, d, r, jones, precision)
        rows.append((r, _close(lhs, rhs, tol)))
    r0 = None
    for r, ok in reversed(rows):
        if not ok:
            break
        r0 = r
    return r0, rows


def max_color(p: ShadowPolyhedron, d: int) -> mpmath.mpf:
    """Largest colour (as a number) over all colourings in ``Col_d``."""
    best = 0
    for col in enumerate_colorings(p, d):
        best = max(best, max(col._tw.values(), default=0))
    return best / 2


def framing_factor(s: int, d: int) -> RationalFunc:
    """``(-1)**(s(d-1)) t**(-s(d^2-1)/4)``."""
    sign = -1 if (s * (d - 1)) % 2 else 1
    return RationalFunc(LaurentPoly.monomial(-2 * s * (d * d - 1), sign))


def framing_twist(p: ShadowPolyhedron, region: str, s: int) -> ShadowPolyhedron:
    """Add ``s`` to the gleam of the region touching the coloured graph."""
    reg = p.region(region)
    if reg.boundary != "T":
        raise ShadowError(f"region {region} does not carry the coloured component")
    if s == 0:
        return p
    return p.with_gleam(region, reg.gleam + s)


# ---------------------------------------------------------------------------
# Volume Conjecture records.


@dataclass(frozen=True)
class VCScanRecord:
    d: int
    status: str  # ok | zero | pole | indeterminate
    log_mag: object = None
    a_d: object = None

    def row(self, digits: int = 17) -> list:
        fmt = (lambda x: "" if x is None else mpmath.nstr(x, digits))
        return [self.d, self.status, fmt(self.log_mag), fmt(self.a_d)]


VC_HEADER = ["d", "status", "log_mag", "a_d"]


def vc_record(p: ShadowPolyhedron, d: int, precision: int = DEFAULT_PRECISION,
              workers: int = 1) -> VCScanRecord:
    """``(1/d) log |J_d(exp(2 pi i / d))|`` with the zero/pole status."""
    if d < 3 or d % 2 == 0:
        raise ValueError("vc_record needs an odd d >= 3")
    try:
        val = jones_numeric(p, d, d, precision, workers)
    except IndeterminateError:
        return VCScanRecord(d, "indeterminate")
    if val is ZERO_VALUE:
        return VCScanRecord(d, "zero")
    if val is POLE:
        return VCScanRecord(d, "pole")
    with mp.workprec(precision):
        return VCScanRecord(d, "ok", val.log_mag, val.log_mag / d)


def vc_csv(records, extra=None) -> str:
    """CSV text; ``extra`` maps a column name to a function of the record."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    extra = extra or {}
    w.writerow(VC_HEADER + list(extra))
    for rec in records:
        w.writerow(rec.row() + [f(rec) for f in extra.values()])
    return buf.getvalue()


def log_abs(x) -> float:
    return -math.inf if x is ZERO_VALUE else float(x.log_mag)
