"""Degreewise linear-algebra oracle: brute-force homology over the prime field.

Each graded piece of a free module is realized as an explicit vector
space with a monomial basis, every polynomial matrix becomes a scalar
matrix per degree, and dimensions come from exact rank computations
mod p.  Nothing here touches the Groebner engine, so agreement between
this oracle and the engine is a genuine two-route check: the only shared
code is polynomial arithmetic itself.

Rank uses blocked Gaussian elimination in float64: with p = 32003 the
panel products stay far below 2^53, so dgemm-backed updates are exact.
"""

from __future__ import annotations

import numpy as np

from .freemod import GradedFreeModule, PolyMatrix
from .ring import PolyRing, monomial_mul


def rank_mod_p(matrix, p: int, panel: int = 96) -> int:
    """Exact rank of an integer matrix over Z/p."""
    A = np.asarray(matrix, dtype=np.float64) % p
    n, m = A.shape
    if n == 0 or m == 0:
        return 0
    row = 0
    for j0 in range(0, m, panel):
        if row >= n:
            break
        j1 = min(j0 + panel, m)
        piv_rows = []
        r = row
        for c in range(j0, j1):
            col = A[r:n, c]
            nz = np.nonzero(col)[0]
            if nz.size == 0:
                continue
            pi = r + int(nz[0])
            if pi != r:
                A[[r, pi], :] = A[[pi, r], :]
            inv = pow(int(A[r, c]), p - 2, p)
            A[r, j0:] = (A[r, j0:] * inv) % p
            f = A[r + 1 : n, c]
            if f.size and np.any(f):
                A[r + 1 : n, j0:j1] = (A[r + 1 : n, j0:j1] - np.outer(f, A[r, j0:j1])) % p
                piv_rows.append((r, f.copy()))
            else:
                piv_rows.append((r, None))
            r += 1
            if r >= n:
                break
        k = r - row
        if k and j1 < m:
            # apply the recorded eliminations to the trailing columns:
            # pivot rows first (forward substitution), then one dgemm
            # for everything below.
            for r0, f in piv_rows:
                if f is None:
                    continue
                upto = min(r, r0 + 1 + f.size)
                head = f[: upto - (r0 + 1)]
                if head.size:
                    A[r0 + 1 : upto, j1:] = (
                        A[r0 + 1 : upto, j1:] - np.outer(head, A[r0, j1:])
                    ) % p
                tailf = f[upto - (r0 + 1) :]
                if tailf.size and np.any(tailf):
                    A[upto + 0 :, j1:] -= np.outer(tailf, A[r0, j1:])
            A[r:n, j1:] %= p
        row = r
    return row


class Oracle:
    """Degreewise realization machinery with caching per ring."""

    def __init__(self, ring: PolyRing):
        self.ring = ring
        self._basis_cache: dict = {}
        self._scalar_cache: dict = {}
        self._rank_cache: dict = {}

    # -- bases ---------------------------------------------------------------

    def free_basis(self, fm: GradedFreeModule, d: int):
        """Monomial basis of the degree-d piece: list of (component, monomial)."""
        key = (fm.twists, d)
        got = self._basis_cache.get(key)
        if got is None:
            basis = []
            for comp, t in enumerate(fm.twists):
                for mon in self.ring.monomials_of_degree(d - t):
                    basis.append((comp, mon))
            index = {bm: i for i, bm in enumerate(basis)}
            got = (basis, index)
            self._basis_cache[key] = got
        return got

    def free_dim(self, fm: GradedFreeModule, d: int) -> int:
        return sum(self.ring.dim_of_degree(d - t) for t in fm.twists)

    # -- scalar matrices -------------------------------------------------------

    def scalar_matrix(self, pm: PolyMatrix, d: int) -> np.ndarray:
        """Scalar matrix of pm on the degree-d pieces (rows: target basis)."""
        key = (pm, d)
        got = self._scalar_cache.get(key)
        if got is not None:
            return got
        src_basis, _ = self.free_basis(pm.source, d)
        _, tgt_index = self.free_basis(pm.target, d)
        rows_idx = []
        cols_idx = []
        vals = []
        for col, (j, mon) in enumerate(src_basis):
            for i in range(pm.nrows):
                e = pm.entries[i][j]
                for emon, c in e.terms:
                    rows_idx.append(tgt_index[(i, monomial_mul(emon, mon))])
                    cols_idx.append(col)
                    vals.append(c)
        mat = np.zeros((len(tgt_index), len(src_basis)), dtype=np.int64)
        if vals:
            np.add.at(mat, (rows_idx, cols_idx), np.asarray(vals, dtype=np.int64))
            mat %= self.ring.char
        self._scalar_cache[key] = mat
        return mat

    def rank(self, pm: PolyMatrix, d: int) -> int:
        """Rank of the degree-d scalar matrix; the columns of pm realize all
        monomial multiples of the matrix columns, so this is the dimension
        of the degree-d piece of the column span."""
        key = (pm, d)
        got = self._rank_cache.get(key)
        if got is None:
            got = rank_mod_p(self.scalar_matrix(pm, d), self.ring.char)
            self._rank_cache[key] = got
        return got

    # -- subquotients and maps ------------------------------------------------

    def module_dim(self, sq, d: int) -> int:
        """dim of the degree-d piece of a subquotient (gens span / rels span)."""
        return self.rank(sq.generators, d) - self.rank(sq.relations, d)

    def image_dim(self, mmap, d: int) -> int:
        """dim of the degree-d piece of the image of a module map."""
        pushed = mmap.ambient_matrix @ mmap.source.generators
        stacked = pushed.hstack(mmap.target.relations)
        return self.rank(stacked, d) - self.rank(mmap.target.relations, d)

    def homology_dim(self, incoming, outgoing, d: int) -> int:
        """dim ker(outgoing)_d - dim im(incoming)_d at one degree.

        Either map may be None (treated as zero); when both are given they
        must share the middle module.
        """
        if outgoing is not None:
            mid = outgoing.source
        elif incoming is not None:
            mid = incoming.target
        else:
            raise ValueError("homology of nothing")
        dim_mid = self.module_dim(mid, d)
        dim_out = self.image_dim(outgoing, d) if outgoing is not None else 0
        dim_in = self.image_dim(incoming, d) if incoming is not None else 0
        return dim_mid - dim_out - dim_in


def degreewise_oracle(complex_, position: int, degree_bound: int, lo=None, oracle=None):
    """Homology dimensions of a chain complex at one position, per degree.

    Realizes each module's graded piece as an explicit vector space and
    each map as a scalar matrix; returns a dict degree -> dimension for
    degrees lo .. lo + degree_bound, where lo defaults to the minimal
    ambient twist at the position.
    """
    mid = complex_.modules[position]
    if oracle is None:
        oracle = Oracle(mid.ring)
    incoming = complex_.maps[position - 1] if position > 0 else None
    outgoing = complex_.maps[position] if position < len(complex_.maps) else None
    if lo is None:
        lo = mid.ambient.min_twist()
        if lo is None:
            lo = 0
    return {
        d: oracle.homology_dim(incoming, outgoing, d)
        for d in range(lo, lo + degree_bound + 1)
    }
