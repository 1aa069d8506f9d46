"""The representation ring of a finite group as a based free abelian group.

Elements are integer coefficient vectors over the canonical irrep order;
multiplication comes from tensor-product decomposition via character inner
products.  All matrices are plain Python integers so downstream Smith normal
form arithmetic never overflows.
"""

import hashlib
import json

import numpy as np

from .characters import inner_product
from .errors import TableMismatch, UnknownIrrep


class RepRingElement:
    """Integer vector over the irrep basis (an element of Z[G-hat])."""

    __slots__ = ("table", "coeffs")

    def __init__(self, table, coeffs):
        coeffs = tuple(int(c) for c in coeffs)
        if len(coeffs) != table.num_irreps:
            raise UnknownIrrep(
                f"coefficient vector has length {len(coeffs)}, expected {table.num_irreps}"
            )
        self.table = table
        self.coeffs = coeffs

    def dim(self):
        """Virtual dimension (the augmentation)."""
        return sum(c * n for c, n in zip(self.coeffs, self.table.dims))

    def character(self):
        """Class function of the element (complex vector over classes)."""
        return np.asarray(self.coeffs, dtype=complex) @ self.table.values

    def conjugate(self):
        out = [0] * len(self.coeffs)
        for i, c in enumerate(self.coeffs):
            out[self.table.conj_map[i]] += c
        return RepRingElement(self.table, out)

    def __add__(self, other):
        self._check(other)
        return RepRingElement(self.table, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __sub__(self, other):
        self._check(other)
        return RepRingElement(self.table, [a - b for a, b in zip(self.coeffs, other.coeffs)])

    def _check(self, other):
        if other.table is not self.table:
            raise TableMismatch("elements belong to different character tables")

    def __eq__(self, other):
        return isinstance(other, RepRingElement) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"RepRingElement{self.coeffs}"


def class_of(table, multiset):
    """Element of the rep ring from an irrep -> multiplicity mapping."""
    coeffs = [0] * table.num_irreps
    for pi, mult in multiset.items():
        pi = int(pi)
        if not (0 <= pi < table.num_irreps):
            raise UnknownIrrep(f"irrep index {pi} out of range")
        coeffs[pi] += int(mult)
    return RepRingElement(table, coeffs)


def irrep_class(table, pi):
    return class_of(table, {pi: 1})


def regular_class(table):
    """Class of the regular representation: multiplicity n_pi per irrep."""
    return RepRingElement(table, table.dims)


def mult_matrix(table, a):
    """Integer matrix of multiplication by ``a`` on the irrep basis.

    Column sigma is the decomposition of a (x) sigma into irreps, so
    M[rho][sigma] = <chi_a * chi_sigma, chi_rho>.
    """
    k = table.num_irreps
    chi_a = a.character() if isinstance(a, RepRingElement) else np.asarray(a, dtype=complex)
    M = [[0] * k for _ in range(k)]
    for sigma in range(k):
        prod = chi_a * table.values[sigma]
        for rho in range(k):
            # virtual elements legitimately produce negative entries
            M[rho][sigma] = inner_product(table, prod, table.values[rho], allow_negative=True)
    return M


def product(a, b):
    """Tensor product in the rep ring (commutative)."""
    a._check(b)
    M = mult_matrix(a.table, a)
    coeffs = [sum(M[r][s] * b.coeffs[s] for s in range(len(b.coeffs))) for r in range(len(M))]
    return RepRingElement(a.table, coeffs)


def table_fingerprint(table):
    """Hash of the group table plus canonical irrep order; guards imports."""
    payload = {
        "mul": [list(row) for row in table.group.mul],
        "dims": list(table.dims),
        "values": [[[round(v.real, 6), round(v.imag, 6)] for v in row] for row in table.values],
    }
    blob = json.dumps(payload, sort_keys=True).encode()
    return hashlib.sha256(blob).hexdigest()[:16]


def element_to_json(a):
    return json.dumps({"fingerprint": table_fingerprint(a.table), "coeffs": list(a.coeffs)})


def element_from_json(table, text):
    data = json.loads(text)
    if data["fingerprint"] != table_fingerprint(table):
        raise TableMismatch("serialized element belongs to a different table")
    return RepRingElement(table, data["coeffs"])
