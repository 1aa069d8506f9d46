"""Truncated Fock-space simulator for the Cuntz-Toeplitz relations.

The basis is all words over {1..n} of length <= d in length-then-lex order.
Creation operators prepend a letter and annihilate the top degree, so every
isometry-type identity is asserted only after restriction to degrees
<= d - 1; that restriction is part of each check's definition.  Operators
are scipy sparse matrices (dimension grows like n^d).
"""

from dataclasses import dataclass
from itertools import product as iproduct

import numpy as np
import scipy.sparse as sp

from .errors import DimensionMismatch, UnsupportedParameter, ValidationFailed


@dataclass(frozen=True)
class TruncatedFockSpace:
    n: int
    depth: int
    words: tuple  # all words (tuples over 1..n) of length <= depth
    index: dict  # word -> basis position

    @property
    def dim(self):
        return len(self.words)

    def degree_slice(self, m):
        """Basis index range of the degree-m subspace."""
        start = (self.n**m - 1) // (self.n - 1) if self.n > 1 else m
        return start, start + self.n**m

    def degree_projector(self, max_degree):
        """Diagonal projector onto degrees <= max_degree."""
        _, stop = self.degree_slice(max_degree)
        diag = np.zeros(self.dim)
        diag[:stop] = 1.0
        return sp.diags(diag).tocsr()


def truncated_fock_space(n, depth):
    if n < 1:
        raise UnsupportedParameter(f"alphabet size must be >= 1, got {n}")
    if depth < 1:
        raise UnsupportedParameter(f"depth must be >= 1, got {depth}")
    words = []
    for m in range(depth + 1):
        words.extend(iproduct(range(1, n + 1), repeat=m))
    expected = (n ** (depth + 1) - 1) // (n - 1) if n > 1 else depth + 1
    assert len(words) == expected
    return TruncatedFockSpace(n, depth, tuple(words), {w: i for i, w in enumerate(words)})


def creation_ops(space):
    """The n creation operators t_i: |w> -> |iw>, zero on top-degree words."""
    ops = []
    for letter in range(1, space.n + 1):
        rows, cols = [], []
        for j, w in enumerate(space.words):
            if len(w) < space.depth:
                rows.append(space.index[(letter,) + w])
                cols.append(j)
        data = np.ones(len(rows))
        ops.append(sp.csr_matrix((data, (rows, cols)), shape=(space.dim, space.dim)))
    return ops


def vacuum_projection(space, ops):
    """1 - sum t_i t_i*: exactly the rank-one projection onto the vacuum."""
    p = sp.identity(space.dim, format="csr")
    for t in ops:
        p = p - t @ t.conj().T
    return p.tocsr()


def fock_rep(space, unitaries, group):
    """Second quantization of a unitary representation on C^n.

    ``unitaries`` maps each group element to an n x n unitary; the output
    maps it to the direct sum of tensor powers acting on the word basis.
    """
    mats = [np.asarray(unitaries[g], dtype=complex) for g in range(group.order)]
    for g, M in enumerate(mats):
        if M.shape != (space.n, space.n):
            raise DimensionMismatch(
                f"representation dimension {M.shape} does not match alphabet size {space.n}"
            )
        if np.max(np.abs(M @ M.conj().T - np.eye(space.n))) > 1e-10:
            raise ValidationFailed(f"matrix for element {g} is not unitary")
    for g in range(group.order):
        for h in range(group.order):
            if np.max(np.abs(mats[g] @ mats[h] - mats[group.mul[g][h]])) > 1e-10:
                raise ValidationFailed(f"matrices fail the group law at ({g}, {h})")

    out = {}
    for g in range(group.order):
        blocks = [np.ones((1, 1), dtype=complex)]
        for _ in range(space.depth):
            blocks.append(np.kron(mats[g], blocks[-1]))
        out[g] = sp.block_diag(blocks, format="csr")
    return out


def _opnorm(A):
    dense = A.toarray() if sp.issparse(A) else np.asarray(A)
    if dense.size == 0:
        return 0.0
    return float(np.linalg.norm(dense, 2))


def covariance_check(space, ops, rep, unitaries, group):
    """Max deviation of pi_F(g) t_i pi_F(g)* = sum_j pi(g)_ji t_j on
    degrees <= d - 1; passes below 1e-10."""
    P = space.degree_projector(space.depth - 1)
    max_dev = 0.0
    for g in range(group.order):
        u = rep[g]
        ustar = rep[group.inv[g]]
        pi_g = np.asarray(unitaries[g], dtype=complex)
        for i, t in enumerate(ops):
            lhs = u @ t @ ustar
            rhs = sum(pi_g[j, i] * ops[j] for j in range(space.n))
            max_dev = max(max_dev, _opnorm((lhs - rhs) @ P))
    return {"max_deviation": max_dev, "passed": max_dev < 1e-10}


def degree1_matrix_unit_check(space, ops, rep, unitaries, group):
    """On the degree-1 subspace, sum_i (sum_j pi(g)_ji t_j) t_i* must equal
    the defining unitary pi(g) itself."""
    if space.depth < 2:
        raise UnsupportedParameter("needs depth >= 2")
    lo, hi = space.degree_slice(1)
    max_dev = 0.0
    for g in range(group.order):
        pi_g = np.asarray(unitaries[g], dtype=complex)
        acc = sp.csr_matrix((space.dim, space.dim), dtype=complex)
        for i in range(space.n):
            alpha_si = sum(pi_g[j, i] * ops[j] for j in range(space.n))
            acc = acc + alpha_si @ ops[i].conj().T
        block = acc.toarray()[lo:hi, lo:hi]
        max_dev = max(max_dev, float(np.max(np.abs(block - pi_g))))
    return {"max_deviation": max_dev, "passed": max_dev < 1e-12}


def toeplitz_relations_check(space, ops):
    """t_j* t_i = delta_ij on degrees <= d-1, and sum t_i t_i* + p = 1."""
    P = space.degree_projector(space.depth - 1)
    ident = sp.identity(space.dim, format="csr")
    max_dev = 0.0
    for i, ti in enumerate(ops):
        for j, tj in enumerate(ops):
            expected = P if i == j else sp.csr_matrix((space.dim, space.dim))
            diff = tj.conj().T @ ti - expected
            if diff.nnz:
                max_dev = max(max_dev, float(np.max(np.abs(diff.data))))
    p = vacuum_projection(space, ops)
    total = sum((t @ t.conj().T for t in ops), p) - ident
    if total.nnz:
        max_dev = max(max_dev, float(np.max(np.abs(total.data))))
    return {"max_deviation": max_dev, "passed": max_dev == 0.0}
