"""Exact linear algebra over F_p: RREF, rank, kernels, quotients.

Two regimes: dense elimination for systems with few columns (the graded
derivation systems), and a split into column-connected components followed by
dense elimination per component for large sparse systems (the ungraded
oracle).  All arithmetic is integer arithmetic mod p; results are canonical,
so rank and kernel bases do not depend on row order.
"""
from __future__ import annotations

import numpy as np
import scipy.sparse as sp
from scipy.sparse.csgraph import connected_components


def rref(mat: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form mod p; returns (nonzero rows, pivot columns)."""
    R = np.array(mat, dtype=np.int64) % p
    rows, cols = R.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(R[r:, c])[0]
        if len(nz) == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            R[[r, i]] = R[[i, r]]
        R[r] = R[r] * pow(int(R[r, c]), p - 2, p) % p
        col = R[:, c].copy()
        col[r] = 0
        R = (R - np.outer(col, R[r])) % p
        pivots.append(c)
        r += 1
    return R[: len(pivots)], pivots


def kernel_of_dense(mat: np.ndarray, p: int) -> np.ndarray:
    """Canonical basis (as rows, in RREF) of the right kernel of mat."""
    mat = np.atleast_2d(np.asarray(mat, dtype=np.int64))
    cols = mat.shape[1]
    R, pivots = rref(mat, p)
    free = [c for c in range(cols) if c not in set(pivots)]
    basis = np.zeros((len(free), cols), dtype=np.int64)
    for k, f in enumerate(free):
        basis[k, f] = 1
        for i, c in enumerate(pivots):
            basis[k, c] = (-R[i, f]) % p
    R2, _ = rref(basis, p) if len(free) else (basis, [])
    return R2 if len(free) else basis


class Subspace:
    """A subspace of F_p^n held as a canonical RREF basis (rows)."""

    def __init__(self, basis: np.ndarray, ambient_dim: int, p: int):
        self.p = p
        self.ambient_dim = ambient_dim
        if basis.size:
            self.basis, _ = rref(basis, p)
        else:
            self.basis = np.zeros((0, ambient_dim), dtype=np.int64)

    @classmethod
    def from_vectors(cls, vectors, ambient_dim: int, p: int) -> "Subspace":
        if len(vectors) == 0:
            return cls(np.zeros((0, ambient_dim), dtype=np.int64), ambient_dim, p)
        return cls(np.array(vectors, dtype=np.int64), ambient_dim, p)

    @property
    def dim(self) -> int:
        return self.basis.shape[0]

    def reduce(self, vec: np.ndarray) -> np.ndarray:
        """Residue of vec modulo this subspace (zero iff vec is contained)."""
        p = self.p
        v = np.asarray(vec, dtype=np.int64) % p
        for row in self.basis:
            c = int(v[int(np.nonzero(row)[0][0])]) if row.any() else 0
            if c:
                v = (v - c * row) % p
        return v

    def contains(self, vec) -> bool:
        return not self.reduce(vec).any()

    def contains_subspace(self, other: "Subspace") -> bool:
        return all(self.contains(row) for row in other.basis)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Subspace)
            and self.p == other.p
            and self.ambient_dim == other.ambient_dim
            and self.basis.shape == other.basis.shape
            and (self.basis == other.basis).all()
        )


def quotient_dim(U: Subspace, W: Subspace) -> int:
    """dim U - dim W, requiring W to be a subspace of U."""
    if U.ambient_dim != W.ambient_dim or U.p != W.p:
        raise ValueError("quotient of subspaces of different ambient spaces")
    if not U.contains_subspace(W):
        raise ValueError("denominator is not contained in the numerator")
    return U.dim - W.dim


class SparseMatrix:
    """COO matrix over F_p with canonical entries (coalesced, no zeros)."""

    def __init__(self, rows: int, cols: int, entries, p: int):
        self.shape = (rows, cols)
        self.p = p
        if isinstance(entries, sp.spmatrix):
            m = entries.tocoo()
            r, c, v = m.row, m.col, m.data
        elif entries and isinstance(entries[0], tuple):
            r, c, v = (np.array(x, dtype=np.int64) for x in zip(*entries))
        elif entries:
            r, c, v = (np.asarray(x, dtype=np.int64) for x in entries)
        else:
            r = c = v = np.zeros(0, dtype=np.int64)
        m = sp.coo_matrix((v % p, (r, c)), shape=self.shape, dtype=np.int64).tocsr()
        m.sum_duplicates()
        m.data %= p
        m.eliminate_zeros()
        self.csr = m

    @classmethod
    def from_dense(cls, mat: np.ndarray, p: int) -> "SparseMatrix":
        mat = np.asarray(mat, dtype=np.int64) % p
        r, c = np.nonzero(mat)
        return cls(mat.shape[0], mat.shape[1], (r, c, mat[r, c]), p)

    @property
    def entries(self) -> list[tuple[int, int, int]]:
        m = self.csr.tocoo()
        return sorted(zip(m.row.tolist(), m.col.tolist(), m.data.tolist()))

    def to_dense(self) -> np.ndarray:
        return np.asarray(self.csr.todense(), dtype=np.int64)

    def column_components(self):
        """Groups (row_ids, col_ids) of the column-connectivity components.

        Two columns are connected when some row has nonzero entries in both.
        Columns with no entries form singleton components with no rows.
        """
        nr, nc = self.shape
        csr = self.csr
        indptr, indices = csr.indptr, csr.indices
        row_nnz = np.diff(indptr)
        nonempty = np.nonzero(row_nnz)[0]
        first_col = indices[indptr[nonempty]]
        # star graph per row: every column of the row points at its first one
        heads = np.repeat(first_col, row_nnz[nonempty])
        graph = sp.coo_matrix(
            (np.ones(len(indices), dtype=np.int8), (indices, heads)),
            shape=(nc, nc),
        )
        ncomp, labels = connected_components(graph, directed=False)
        row_label = np.full(nr, -1, dtype=np.int64)
        row_label[nonempty] = labels[first_col]
        comps = []
        for comp in range(ncomp):
            cols = np.nonzero(labels == comp)[0]
            rows = np.nonzero(row_label == comp)[0]
            comps.append((rows, cols))
        return comps


DENSE_COLUMN_LIMIT = 500


def _dense_dispatch(M) -> bool:
    rows, cols = M.shape
    return cols <= DENSE_COLUMN_LIMIT and rows * cols <= 10_000_000


def rank(M, p: int | None = None) -> int:
    """Exact rank over F_p."""
    if isinstance(M, np.ndarray):
        if p is None:
            raise ValueError("p is required for a dense array")
        return len(rref(M, p)[1])
    if _dense_dispatch(M):
        return len(rref(M.to_dense(), M.p)[1])
    total = 0
    for rows, cols in M.column_components():
        if len(rows) == 0:
            continue
        sub = np.asarray(M.csr[rows][:, cols].todense(), dtype=np.int64)
        total += len(rref(sub, M.p)[1])
    return total


def nullity(M, p: int | None = None, cols: int | None = None) -> int:
    if isinstance(M, np.ndarray):
        return M.shape[1] - rank(M, p)
    return M.shape[1] - rank(M)


def kernel_basis(M, p: int | None = None) -> Subspace:
    """Canonical basis of {x : Mx = 0}."""
    if isinstance(M, np.ndarray):
        if p is None:
            raise ValueError("p is required for a dense array")
        basis = kernel_of_dense(M, p)
        return Subspace(basis, M.shape[1], p)
    nr, nc = M.shape
    p = M.p
    if _dense_dispatch(M):
        return Subspace(kernel_of_dense(M.to_dense(), p), nc, p)
    pieces = []
    for rows, cols in M.column_components():
        if len(rows) == 0:
            local = np.eye(len(cols), dtype=np.int64)
        else:
            sub = np.asarray(M.csr[rows][:, cols].todense(), dtype=np.int64)
            local = kernel_of_dense(sub, p)
        lifted = np.zeros((local.shape[0], nc), dtype=np.int64)
        lifted[:, cols] = local
        pieces.append(lifted)
    stacked = np.vstack(pieces) if pieces else np.zeros((0, nc), dtype=np.int64)
    # components have disjoint supports, so rows are independent; sort by pivot
    order = [int(np.nonzero(row)[0][0]) if row.any() else nc for row in stacked]
    stacked = stacked[np.argsort(order, kind="stable")]
    keep = [i for i, row in enumerate(stacked) if row.any()]
    sub = Subspace.__new__(Subspace)
    sub.p = p
    sub.ambient_dim = nc
    sub.basis = stacked[keep]
    return sub
