"""Groebner bases for graded submodules of twisted free modules.

Buchberger's algorithm with a term-over-position order refined by
twist-adjusted degrees, full transformation tracking, Schreyer-style
syzygies and minimal free resolutions.  One engine serves membership,
kernels and resolutions.

Internal vectors are flat term lists ``(key, component, monomial,
coefficient)`` sorted descending, with the order key cached per term;
reductions are sorted-list merges, so a full normal form costs one merge
per reduction step.  Pair elimination is deliberately conservative: the
product criterion is applied only over rank-one ambients (it is not
valid for modules), and no criterion at all is used while collecting
syzygies, so the collected zero-reductions generate the whole syzygy
module.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass

from .freemod import GradedFreeModule, PolyMatrix
from .ring import (
    Polynomial,
    monomial_coprime,
    monomial_degree,
    monomial_div,
    monomial_lcm,
    monomial_mul,
)


class _Order:
    """Term-over-position order with twist-adjusted degree compared first."""

    __slots__ = ("ring", "twists")

    def __init__(self, ring, twists):
        self.ring = ring
        self.twists = twists

    def key(self, comp, mon):
        return (monomial_degree(mon) + self.twists[comp], self.ring.monomial_key(mon), -comp)


# -- flat vector helpers ------------------------------------------------------
# vec: list of (key, comp, mon, coeff), strictly descending by key, coeff != 0


def _vec_from_column(pm: PolyMatrix, j: int, order: _Order):
    terms = []
    for i in range(pm.nrows):
        for mon, c in pm.entries[i][j].terms:
            terms.append((order.key(i, mon), i, mon, c))
    terms.sort(reverse=True)
    return terms


def _vec_to_column(vec, ring, rank):
    polys = [{} for _ in range(rank)]
    for _, comp, mon, c in vec:
        polys[comp][mon] = c
    return [ring.poly(d) for d in polys]


def _unit_vec(i, order):
    ring = order.ring
    zero_mon = (0,) * ring.nvars
    return [(order.key(i, zero_mon), i, zero_mon, 1)]


def _scale_shift(vec, c, u, p, order):
    """c * x^u * vec; preserves descending order (the order is multiplicative)."""
    if not any(u):
        return [(k, comp, mon, (coeff * c) % p) for (k, comp, mon, coeff) in vec]
    out = []
    for _, comp, mon, coeff in vec:
        nm = monomial_mul(mon, u)
        out.append((order.key(comp, nm), comp, nm, (coeff * c) % p))
    return out


def _merge(a, b, p):
    """Sum of two descending term lists."""
    out = []
    i = j = 0
    la, lb = len(a), len(b)
    while i < la and j < lb:
        ka, kb = a[i][0], b[j][0]
        if ka > kb:
            out.append(a[i])
            i += 1
        elif ka < kb:
            out.append(b[j])
            j += 1
        else:
            c = (a[i][3] + b[j][3]) % p
            if c:
                out.append((ka, a[i][1], a[i][2], c))
            i += 1
            j += 1
    out.extend(a[i:])
    out.extend(b[j:])
    return out


def _vec_scale(vec, c, p):
    c %= p
    return [(k, comp, mon, (coeff * c) % p) for (k, comp, mon, coeff) in vec]


def _adjusted_degree(vec, order):
    k, _, _, _ = vec[0]
    return k[0]


class _Basis:
    """Mutable working basis with per-component lead index."""

    def __init__(self, order: _Order, p: int):
        self.order = order
        self.p = p
        self.vecs = []
        self.leads = {}  # comp -> list of (lead monomial, index)

    def add(self, vec):
        idx = len(self.vecs)
        self.vecs.append(vec)
        _, comp, mon, _ = vec[0]
        self.leads.setdefault(comp, []).append((mon, idx))
        return idx

    def rebuild_leads(self):
        self.leads = {}
        for idx, vec in enumerate(self.vecs):
            if vec is None:
                continue
            _, comp, mon, _ = vec[0]
            self.leads.setdefault(comp, []).append((mon, idx))

    def normal_form(self, vec, lift=False, skip=None):
        """Fully reduced form of vec; optionally collects quotients per index."""
        p, order = self.p, self.order
        rem = []
        work = list(vec)
        s = 0
        quot = {} if lift else None
        while s < len(work):
            _, comp, mon, coeff = work[s]
            hit = None
            for bmon, idx in self.leads.get(comp, ()):
                if idx == skip or self.vecs[idx] is None:
                    continue
                u = monomial_div(mon, bmon)
                if u is not None:
                    hit = (u, idx)
                    break
            if hit is None:
                rem.append(work[s])
                s += 1
                continue
            u, idx = hit
            # basis vectors are monic: the lead of coeff*x^u*basis[idx]
            # cancels work[s] exactly, so merge only the tails.
            tail = _scale_shift(self.vecs[idx][1:], (p - coeff) % p, u, p, order)
            work = _merge(work[s + 1 :], tail, p)
            s = 0
            if lift:
                quot.setdefault(idx, []).append((u, coeff))
        return rem, quot


def _quot_to_poly(ring, pairs):
    acc = {}
    p = ring.char
    for mon, c in pairs:
        acc[mon] = (acc.get(mon, 0) + c) % p
    return ring.poly(acc)


@dataclass
class GroebnerBasis:
    """Reduced Groebner basis of the column span of a homogeneous matrix.

    ``elements`` are the reduced monic basis vectors (as a matrix into the
    ambient), ``transformation`` expresses them in the original columns:
    ``elements == gens @ transformation``.
    """

    ambient: GradedFreeModule
    ring: object
    order_kind: str
    elements: PolyMatrix
    transformation: PolyMatrix
    _vecs: list
    _leads: dict
    _order: _Order

    def _engine(self) -> _Basis:
        b = _Basis(self._order, self.ring.char)
        b.vecs = self._vecs
        b.leads = self._leads
        return b

    def normal_form(self, column, lift=False):
        """Reduce an ambient column; returns (remainder column, quotients).

        quotients is a list of Polynomials q with
        ``column == elements @ q + remainder``.
        """
        vec = _column_from_polys(column, self._order)
        rem, quot = self._engine().normal_form(vec, lift=lift)
        rem_col = _vec_to_column(rem, self.ring, self.ambient.rank)
        if not lift:
            return rem_col, None
        qs = [
            _quot_to_poly(self.ring, quot.get(i, []))
            for i in range(len(self._vecs))
        ]
        return rem_col, qs

    def contains(self, column) -> bool:
        rem, _ = self.normal_form(column)
        return all(e.is_zero() for e in rem)

    def contains_matrix(self, pm: PolyMatrix):
        """Index of the first column outside the span, or None."""
        for j in range(pm.ncols):
            if not self.contains(pm.column(j)):
                return j
        return None


def _column_from_polys(column, order: _Order):
    terms = []
    for i, poly in enumerate(column):
        for mon, c in poly.terms:
            terms.append((order.key(i, mon), i, mon, c))
    terms.sort(reverse=True)
    return terms


def _run_buchberger(pm: PolyMatrix, want_syzygies: bool):
    ring = pm.ring
    p = ring.char
    order = _Order(ring, pm.target.twists)
    rep_order = _Order(ring, pm.source.twists)

    basis = _Basis(order, p)
    reps = []  # reps[i]: vec over source coordinates, columns @ rep == basis vec
    syz = []  # syzygy vectors over source coordinates
    pairs = []  # heap of (lcm key, i, j)

    def push_pairs(new_idx):
        _, ncomp, nmon, _ = basis.vecs[new_idx][0]
        for idx in range(new_idx):
            if basis.vecs[idx] is None:
                continue
            _, comp, mon, _ = basis.vecs[idx][0]
            if comp != ncomp:
                continue
            lcm = monomial_lcm(mon, nmon)
            heapq.heappush(pairs, (order.key(ncomp, lcm), idx, new_idx))

    def add_element(vec, rep):
        lc = vec[0][3]
        if lc != 1:
            inv = pow(lc, p - 2, p)
            vec = _vec_scale(vec, inv, p)
            rep = _vec_scale(rep, inv, p)
        idx = basis.add(vec)
        reps.append(rep)
        push_pairs(idx)

    def reduce_and_account(vec, rep):
        rem, quot = basis.normal_form(vec, lift=True)
        for idx, pairs_q in (quot or {}).items():
            for u, c in pairs_q:
                rep = _merge(rep, _scale_shift(reps[idx], (p - c) % p, u, p, rep_order), p)
        return rem, rep

    for j in range(pm.ncols):
        vec = _vec_from_column(pm, j, order)
        rep = _unit_vec(j, rep_order)
        rem, rep = reduce_and_account(vec, rep)
        if rem:
            add_element(rem, rep)
        elif rep:
            syz.append(rep)

    rank_one = pm.target.rank == 1
    while pairs:
        _, i, j = heapq.heappop(pairs)
        vi, vj = basis.vecs[i], basis.vecs[j]
        _, comp, mi, _ = vi[0]
        mj = vj[0][2]
        if rank_one and not want_syzygies and monomial_coprime(mi, mj):
            continue
        lcm = monomial_lcm(mi, mj)
        ui = monomial_div(lcm, mi)
        uj = monomial_div(lcm, mj)
        svec = _merge(
            _scale_shift(vi, 1, ui, p, order),
            _scale_shift(vj, p - 1, uj, p, order),
            p,
        )
        rep = _merge(
            _scale_shift(reps[i], 1, ui, p, rep_order),
            _scale_shift(reps[j], p - 1, uj, p, rep_order),
            p,
        )
        rem, rep = reduce_and_account(svec, rep)
        if rem:
            add_element(rem, rep)
        elif want_syzygies and rep:
            syz.append(rep)

    # minimalize: drop elements whose lead is divisible by another kept lead
    order_of = sorted(range(len(basis.vecs)), key=lambda i: basis.vecs[i][0][0])
    kept = []
    for i in order_of:
        _, comp, mon, _ = basis.vecs[i][0]
        redundant = False
        for k in kept:
            _, kcomp, kmon, _ = basis.vecs[k][0]
            if kcomp == comp and monomial_div(mon, kmon) is not None:
                redundant = True
                break
        if redundant:
            basis.vecs[i] = None
        else:
            kept.append(i)
    basis.rebuild_leads()

    # tail-reduce kept elements against each other (reduced basis)
    for i in kept:
        vec = basis.vecs[i]
        rem, quot = basis.normal_form(vec, lift=True, skip=i)
        rep = reps[i]
        for idx, pairs_q in (quot or {}).items():
            for u, c in pairs_q:
                rep = _merge(rep, _scale_shift(reps[idx], (p - c) % p, u, p, rep_order), p)
        basis.vecs[i] = rem
        reps[i] = rep
    basis.rebuild_leads()

    final_idx = sorted(
        (i for i in range(len(basis.vecs)) if basis.vecs[i] is not None),
        key=lambda i: basis.vecs[i][0][0],
    )
    final_vecs = [basis.vecs[i] for i in final_idx]
    final_reps = [reps[i] for i in final_idx]

    if want_syzygies:
        # per-column lifts against the final basis close the generating set
        fb = _Basis(order, p)
        for v in final_vecs:
            fb.add(v)
        for j in range(pm.ncols):
            vec = _vec_from_column(pm, j, order)
            rem, quot = fb.normal_form(vec, lift=True)
            if rem:
                raise AssertionError("input column fails to reduce against its own basis")
            u = _unit_vec(j, rep_order)
            for idx, pairs_q in (quot or {}).items():
                for um, c in pairs_q:
                    u = _merge(u, _scale_shift(final_reps[idx], (p - c) % p, um, p, rep_order), p)
            if u:
                syz.append(u)

    return final_vecs, final_reps, syz, order, rep_order


_GB_CACHE: dict = {}


def buchberger(pm: PolyMatrix) -> GroebnerBasis:
    """Reduced Groebner basis of the column span of a homogeneous matrix."""
    cached = _GB_CACHE.get(pm)
    if cached is not None:
        return cached
    ring = pm.ring
    vecs, reps, _, order, rep_order = _run_buchberger(pm, want_syzygies=False)
    elements = _columns_matrix(ring, vecs, pm.target, order)
    transform = _columns_matrix(ring, reps, pm.source, rep_order)
    leads = {}
    for idx, vec in enumerate(vecs):
        _, comp, mon, _ = vec[0]
        leads.setdefault(comp, []).append((mon, idx))
    gb = GroebnerBasis(
        ambient=pm.target,
        ring=ring,
        order_kind=ring.order,
        elements=elements,
        transformation=transform,
        _vecs=vecs,
        _leads=leads,
        _order=order,
    )
    _GB_CACHE[pm] = gb
    return gb


def _columns_matrix(ring, vecs, target: GradedFreeModule, order: _Order) -> PolyMatrix:
    columns = [_vec_to_column(v, ring, target.rank) for v in vecs]
    return PolyMatrix.from_columns(ring, columns, target)


def normal_form_with_lift(column, gb: GroebnerBasis):
    """Remainder and quotients of an ambient column against a basis.

    ``column == gb.elements @ quotients + remainder`` and no remainder term
    is divisible by a basis lead; the remainder vanishes exactly when the
    column lies in the submodule.
    """
    return gb.normal_form(column, lift=True)


def syzygy_matrix(pm: PolyMatrix) -> PolyMatrix:
    """Generators of ker(pm) as columns, interreduced.

    Soundness pm @ S == 0 is guaranteed by construction; completeness
    comes from collecting every zero-reduction of the criterion-free
    Buchberger run together with per-column lifts.
    """
    ring = pm.ring
    _, _, syz, _, rep_order = _run_buchberger(pm, want_syzygies=True)
    if not syz:
        return PolyMatrix.from_columns(ring, [], pm.source)
    raw = _columns_matrix(ring, syz, pm.source, rep_order)
    gb = buchberger(raw)
    return gb.elements


def interreduced_columns(pm: PolyMatrix) -> PolyMatrix:
    """Reduced Groebner basis of the column span, as a matrix."""
    return buchberger(pm).elements


def minimal_generator_columns(pm: PolyMatrix) -> PolyMatrix:
    """Minimal generating set of the column span (graded Nakayama).

    Columns are scanned in ascending degree and kept only when outside
    the span of the columns already kept.
    """
    ring = pm.ring
    cols = [(pm.source.twists[j], j) for j in range(pm.ncols)]
    cols.sort()
    kept: list[int] = []
    kept_matrix = None
    gb = None
    for _, j in cols:
        col = pm.column(j)
        if all(e.is_zero() for e in col):
            continue
        if gb is not None and gb.contains(col):
            continue
        kept.append(j)
        kept_matrix = pm.submatrix(range(pm.nrows), kept)
        gb = buchberger(kept_matrix)
    if not kept:
        return PolyMatrix.from_columns(ring, [], pm.target)
    return pm.submatrix(range(pm.nrows), kept)


def prune_unit_entries(pm: PolyMatrix) -> PolyMatrix:
    """Minimal presentation of coker(pm): pivot away nonzero constant entries.

    Each constant pivot (i, j) removes generator i and relation j after
    clearing its row and column by graded row/column operations.
    """
    ring = pm.ring
    p = ring.char
    grid = [list(row) for row in pm.entries]
    row_twists = list(pm.target.twists)
    col_twists = list(pm.source.twists)
    while True:
        pivot = None
        for i, row in enumerate(grid):
            for j, e in enumerate(row):
                if not e.is_zero() and e.homogeneous_degree() == 0:
                    pivot = (i, j, e.terms[0][1])
                    break
            if pivot:
                break
        if pivot is None:
            break
        i, j, c = pivot
        inv = pow(c, p - 2, p)
        # clear row i with column operations
        for k in range(len(col_twists)):
            if k == j or grid[i][k].is_zero():
                continue
            f = grid[i][k] * inv
            for r in range(len(row_twists)):
                grid[r][k] = grid[r][k] - f * grid[r][j]
        # clear column j with row operations
        for r in range(len(row_twists)):
            if r == i or grid[r][j].is_zero():
                continue
            f = grid[r][j] * inv
            for k in range(len(col_twists)):
                grid[r][k] = grid[r][k] - f * grid[i][k]
        del grid[i]
        del row_twists[i]
        for row in grid:
            del row[j]
        del col_twists[j]
    # drop zero columns
    keep = [j for j in range(len(col_twists)) if any(not row[j].is_zero() for row in grid)]
    grid = [[row[j] for j in keep] for row in grid]
    col_twists = [col_twists[j] for j in keep]
    return PolyMatrix(
        ring,
        GradedFreeModule(len(col_twists), tuple(col_twists)),
        GradedFreeModule(len(row_twists), tuple(row_twists)),
        tuple(tuple(row) for row in grid),
    )


@dataclass
class Resolution:
    """Minimal free resolution of coker(first input matrix)."""

    matrices: list
    truncated: bool

    @property
    def length(self) -> int:
        return len(self.matrices)

    def betti_ranks(self, target_rank=None):
        ranks = []
        if self.matrices:
            ranks.append(self.matrices[0].target.rank)
            for m in self.matrices:
                ranks.append(m.source.rank)
        elif target_rank is not None:
            ranks.append(target_rank)
        return ranks


def minimal_free_resolution(pm: PolyMatrix, max_length: int = 32) -> Resolution:
    """Resolve coker(pm) by iterated minimal syzygies.

    Each differential's columns minimally generate the previous kernel,
    so no output matrix contains a nonzero constant entry and the length
    equals the projective dimension when below max_length.
    """
    first = prune_unit_entries(pm)
    if first.ncols == 0:
        return Resolution([], truncated=False)
    mats = [first]
    while len(mats) < max_length:
        syz = syzygy_matrix(mats[-1])
        syz = minimal_generator_columns(syz)
        if syz.ncols == 0:
            return Resolution(mats, truncated=False)
        mats.append(syz)
    # check whether the resolution actually ended exactly at max_length
    tail = minimal_generator_columns(syzygy_matrix(mats[-1]))
    return Resolution(mats, truncated=tail.ncols > 0)
