"""Character tables, irreducible representation matrices and group-algebra
matrix units.

The character table is computed by the Burnside class-sum method: the class
multiplication tensor gives commuting integer matrices whose simultaneous
eigenvectors are the central characters.  A random real combination is
diagonalized; on an eigenvalue collision we reseed and retry (bounded).
Everything downstream lives in complex double precision, with every quantity
the theory forces to be an integer rounded and asserted within tolerance.
"""

import json
from dataclasses import dataclass

import numpy as np

from .errors import (
    DegenerateEigenvectors,
    IntegralityViolation,
    MatricesUnavailable,
    UnknownIrrep,
    ValidationFailed,
)
from .groups import class_mult_coefficients, conjugacy_classes

INT_TOL = 1e-6
ORTHO_TOL = 1e-8
DEFAULT_SEED = 20260823
MAX_RETRIES = 8


def _round_int(x, context=""):
    if abs(x.imag if isinstance(x, complex) else 0.0) > INT_TOL:
        raise IntegralityViolation(x, context)
    r = x.real if isinstance(x, complex) else x
    n = round(r)
    if abs(r - n) > INT_TOL:
        raise IntegralityViolation(x, context)
    return int(n)


@dataclass(frozen=True)
class CharacterTable:
    """Irreducible characters of a finite group on its conjugacy classes.

    Irreps are in canonical order: trivial first, then ascending dimension,
    ties broken lexicographically on rounded character value tuples.
    """

    group: object
    classes: object  # ConjugacyData
    dims: tuple  # n_pi per irrep
    values: np.ndarray  # complex, shape (num_irreps, num_classes)
    conj_map: tuple  # irrep -> index of the conjugate character

    @property
    def num_irreps(self):
        return len(self.dims)

    def value_at_element(self, pi, g):
        return self.values[pi, self.classes.class_of[g]]

    def to_json_dict(self):
        return {
            "order": self.group.order,
            "class_sizes": list(self.classes.sizes),
            "class_reps": list(self.classes.reps),
            "dims": list(self.dims),
            "values": [[[v.real, v.imag] for v in row] for row in self.values],
            "conj_map": list(self.conj_map),
        }


def _canonical_sort(dims, values, sizes):
    """Order irreps: trivial first, dimension ascending, rounded-value tiebreak."""
    k = len(dims)

    def key(i):
        trivial = 0 if all(abs(v - 1) < 1e-6 for v in values[i]) else 1
        rounded = tuple((round(v.real, 6) + 0.0, round(v.imag, 6) + 0.0) for v in values[i])
        return (trivial, dims[i], rounded)

    order = sorted(range(k), key=key)
    return [dims[i] for i in order], values[order]


def character_table(G, seed=DEFAULT_SEED):
    """Compute the character table of G by the Burnside class-sum method."""
    C = conjugacy_classes(G)
    a = class_mult_coefficients(G, C)
    k = C.count
    sizes = np.array(C.sizes, dtype=float)
    order = float(G.order)

    # B[i][j, l] = a[i][j][l]: multiplication by class sum i acting on the
    # central-character vector (omega(0), ..., omega(k-1)).
    B = [np.array(a[i], dtype=float) for i in range(k)]

    rng = np.random.default_rng(seed)
    eigvecs = None
    for _ in range(MAX_RETRIES):
        coeffs = rng.standard_normal(k)
        T = sum(c * Bi for c, Bi in zip(coeffs, B))
        w, V = np.linalg.eig(T)
        gaps = np.abs(w[:, None] - w[None, :])
        np.fill_diagonal(gaps, np.inf)
        if gaps.min() > 1e-6:
            eigvecs = V
            break
    if eigvecs is None:
        raise DegenerateEigenvectors(MAX_RETRIES)

    dims = []
    values = np.zeros((k, k), dtype=complex)
    for idx in range(k):
        v = eigvecs[:, idx]
        v = v / v[0]  # omega at the identity class is 1
        # n_pi^2 = |G| / sum_j |omega_j|^2 / |C_j|
        npi2 = order / np.sum(np.abs(v) ** 2 / sizes)
        n = _round_int(complex(npi2**0.5), "irrep dimension")
        if n < 1:
            raise IntegralityViolation(npi2, "irrep dimension")
        dims.append(n)
        values[idx] = n * v / sizes

    if sum(d * d for d in dims) != G.order:
        raise IntegralityViolation(sum(d * d for d in dims), "sum of squared dims")

    dims, values = _canonical_sort(dims, values, C.sizes)

    # orthogonality validation
    w = sizes / order
    gram = (values * w) @ values.conj().T
    if np.max(np.abs(gram - np.eye(k))) > ORTHO_TOL:
        raise DegenerateEigenvectors(MAX_RETRIES)
    col = values.conj().T @ values
    col_expected = np.diag(order / sizes)
    if np.max(np.abs(col - col_expected)) > 1e-6:
        raise DegenerateEigenvectors(MAX_RETRIES)

    conj_map = []
    for i in range(k):
        target = values[i].conj()
        matches = [j for j in range(k) if np.max(np.abs(values[j] - target)) < 1e-6]
        assert len(matches) == 1, "conjugate character must match exactly one irrep"
        conj_map.append(matches[0])

    return CharacterTable(G, C, tuple(dims), values, tuple(conj_map))


def inner_product(table, a, b, allow_negative=False):
    """Inner product (1/|G|) sum_c |c| a(c) conj(b(c)), asserted integral.

    Genuine characters always give nonnegative multiplicities; pass
    ``allow_negative=True`` when ``a`` may be a virtual class function.
    """
    sizes = np.array(table.classes.sizes, dtype=float)
    val = np.sum(sizes * np.asarray(a, dtype=complex) * np.asarray(b, dtype=complex).conj())
    val /= table.group.order
    n = _round_int(complex(val), "character inner product")
    if n < 0 and not allow_negative:
        raise IntegralityViolation(val, "negative multiplicity")
    return n


@dataclass(frozen=True)
class IrrepMatrices:
    """Explicit unitary matrices of one irrep, one per group element."""

    table: object
    irrep: int
    matrices: tuple  # tuple of n_pi x n_pi complex ndarrays

    @property
    def dim(self):
        return self.table.dims[self.irrep]


def _validate_irrep_matrices(table, pi, mats, tol=1e-8):
    G = table.group
    n = table.dims[pi]
    for g, M in enumerate(mats):
        if M.shape != (n, n):
            raise ValidationFailed(f"matrix for element {g} has shape {M.shape}, expected {(n, n)}")
        if np.max(np.abs(M @ M.conj().T - np.eye(n))) > tol:
            raise ValidationFailed(f"matrix for element {g} is not unitary")
        chi = table.value_at_element(pi, g)
        if abs(np.trace(M) - chi) > tol:
            raise ValidationFailed(
                f"trace of matrix for element {g} is {np.trace(M)}, character says {chi}"
            )
    for g in range(G.order):
        for h in range(G.order):
            if np.max(np.abs(mats[g] @ mats[h] - mats[G.mul[g][h]])) > tol:
                raise ValidationFailed(f"homomorphism fails at ({g}, {h})")
    # irreducibility via <chi, chi> = 1
    chi = table.values[pi]
    if inner_product(table, chi, chi) != 1:
        raise ValidationFailed("character norm is not 1; representation not irreducible")


def _dihedral_2dim_candidates(n):
    """Rotation/reflection matrices for the 2-dim irreps of dihedral(n)."""
    out = []
    for freq in range(1, (n - 1) // 2 + 1):
        mats = []
        for i in range(2 * n):
            refl, r = divmod(i, n)
            th = 2 * np.pi * freq * r / n
            rot = np.array([[np.cos(th), -np.sin(th)], [np.sin(th), np.cos(th)]])
            if refl:
                # element is s r^b, so the reflection acts on the left
                rot = np.array([[1.0, 0.0], [0.0, -1.0]]) @ rot
            mats.append(rot.astype(complex))
        out.append(mats)
    return out


def irrep_matrices(table, pi, matrices=None):
    """Explicit matrices for irrep ``pi``.

    Built in: any 1-dimensional irrep, and the 2-dimensional irreps of the
    dihedral family.  Otherwise ``matrices`` (one per element) must be
    supplied; they are fully validated either way.
    """
    if not (0 <= pi < table.num_irreps):
        raise UnknownIrrep(f"irrep index {pi} out of range")
    G = table.group
    if matrices is not None:
        mats = tuple(np.asarray(M, dtype=complex) for M in matrices)
        _validate_irrep_matrices(table, pi, mats)
        return IrrepMatrices(table, pi, mats)

    n = table.dims[pi]
    if n == 1:
        mats = tuple(
            np.array([[table.value_at_element(pi, g)]], dtype=complex) for g in range(G.order)
        )
        _validate_irrep_matrices(table, pi, mats)
        return IrrepMatrices(table, pi, mats)

    if G.family is not None and G.family[0] == "dihedral" and n == 2:
        for cand in _dihedral_2dim_candidates(G.family[1]):
            traces = np.array([np.trace(M) for M in cand])
            expected = np.array([table.value_at_element(pi, g) for g in range(G.order)])
            if np.max(np.abs(traces - expected)) < 1e-8:
                mats = tuple(cand)
                _validate_irrep_matrices(table, pi, mats)
                return IrrepMatrices(table, pi, mats)
        raise MatricesUnavailable(
            f"no dihedral 2-dim construction matches the character of irrep {pi}"
        )

    raise MatricesUnavailable(
        f"no builtin matrices for irrep {pi} (dim {n}); supply them explicitly"
    )


class GroupAlgebraElement:
    """Element of the group algebra: one complex coefficient per lambda_g."""

    __slots__ = ("group", "coeffs")

    def __init__(self, group, coeffs):
        self.group = group
        self.coeffs = np.asarray(coeffs, dtype=complex)
        assert self.coeffs.shape == (group.order,)

    @classmethod
    def delta(cls, group, g, coeff=1.0):
        c = np.zeros(group.order, dtype=complex)
        c[g] = coeff
        return cls(group, c)

    def __add__(self, other):
        return GroupAlgebraElement(self.group, self.coeffs + other.coeffs)

    def __sub__(self, other):
        return GroupAlgebraElement(self.group, self.coeffs - other.coeffs)

    def __mul__(self, other):
        if np.isscalar(other):
            return GroupAlgebraElement(self.group, self.coeffs * other)
        out = np.zeros(self.group.order, dtype=complex)
        mul = self.group.mul
        for g, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for h, b in enumerate(other.coeffs):
                if b == 0:
                    continue
                out[mul[g][h]] += a * b
        return GroupAlgebraElement(self.group, out)

    __rmul__ = __mul__

    def adjoint(self):
        out = np.zeros(self.group.order, dtype=complex)
        for g, a in enumerate(self.coeffs):
            out[self.group.inv[g]] = np.conj(a)
        return GroupAlgebraElement(self.group, out)

    def norm_max(self):
        return float(np.max(np.abs(self.coeffs)))

    def __repr__(self):
        terms = [
            f"{c:.4g}*l[{self.group.labels[g]}]" for g, c in enumerate(self.coeffs) if abs(c) > 1e-12
        ]
        return " + ".join(terms) if terms else "0"


def matrix_units(m):
    """Group-algebra matrix units of one irrep.

    e_ij = (n/|G|) sum_g conj(M(g)_ij) lambda_g, returned as an n x n nested
    list; satisfies e_ij e_kl = delta_jk e_il and e_ij* = e_ji.
    """
    table = m.table
    G = table.group
    n = m.dim
    scale = n / G.order
    units = []
    for i in range(n):
        row = []
        for j in range(n):
            coeffs = np.array([scale * np.conj(m.matrices[g][i, j]) for g in range(G.order)])
            row.append(GroupAlgebraElement(G, coeffs))
        units.append(row)
    return units


def central_idempotent(table, pi):
    """z(pi) = (n/|G|) sum_g conj(chi(g)) lambda_g, the unit of the pi-block."""
    if not (0 <= pi < table.num_irreps):
        raise UnknownIrrep(f"irrep index {pi} out of range")
    G = table.group
    n = table.dims[pi]
    coeffs = np.array(
        [n / G.order * np.conj(table.value_at_element(pi, g)) for g in range(G.order)]
    )
    return GroupAlgebraElement(G, coeffs)


def lambda_expansion_check(table, all_matrices):
    """Verify lambda_g = sum_pi sum_ij M_pi(g)_ij e(pi)_ij for every g.

    Returns the maximum deviation over all g and a pass flag (tol 1e-9).
    """
    G = table.group
    if len(all_matrices) != table.num_irreps:
        raise MatricesUnavailable("matrices must be supplied for every irrep")
    units = [matrix_units(m) for m in all_matrices]
    max_dev = 0.0
    for g in range(G.order):
        acc = np.zeros(G.order, dtype=complex)
        for pi, m in enumerate(all_matrices):
            n = m.dim
            Mg = m.matrices[g]
            for i in range(n):
                for j in range(n):
                    acc += Mg[i, j] * units[pi][i][j].coeffs
        target = np.zeros(G.order, dtype=complex)
        target[g] = 1.0
        max_dev = max(max_dev, float(np.max(np.abs(acc - target))))
    return {"max_deviation": max_dev, "passed": max_dev < 1e-9}


def table_to_json(table):
    return json.dumps(table.to_json_dict(), sort_keys=True)


def table_from_json(G, text):
    """Rebuild a character table from JSON and re-run full validation."""
    data = json.loads(text)
    if data["order"] != G.order:
        raise ValidationFailed("group order mismatch in imported table")
    C = conjugacy_classes(G)
    if list(C.sizes) != data["class_sizes"] or list(C.reps) != data["class_reps"]:
        raise ValidationFailed("conjugacy data mismatch in imported table")
    values = np.array([[complex(re, im) for re, im in row] for row in data["values"]])
    table = CharacterTable(G, C, tuple(data["dims"]), values, tuple(data["conj_map"]))
    _validate_table(table)
    return table


def _validate_table(table):
    k = table.num_irreps
    sizes = np.array(table.classes.sizes, dtype=float)
    order = table.group.order
    if sum(d * d for d in table.dims) != order:
        raise ValidationFailed("squared dimensions do not sum to the group order")
    gram = (table.values * (sizes / order)) @ table.values.conj().T
    if np.max(np.abs(gram - np.eye(k))) > ORTHO_TOL:
        raise ValidationFailed("row orthogonality fails")
    col = table.values.conj().T @ table.values
    if np.max(np.abs(col - np.diag(order / sizes))) > 1e-6:
        raise ValidationFailed("column orthogonality fails")
    if not np.allclose(table.values[0], 1.0, atol=1e-9):
        raise ValidationFailed("irrep 0 is not the trivial character")
    for i, j in enumerate(table.conj_map):
        if np.max(np.abs(table.values[j] - table.values[i].conj())) > 1e-6:
            raise ValidationFailed(f"conj_map wrong at irrep {i}")
