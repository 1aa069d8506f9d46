"""K-theory of Cuntz algebra crossed products by quasi-free actions.

Everything reduces to integer linear algebra: for an action determined by a
representation class of total dimension n >= 2, both K-groups of the crossed
product sit in an exact sequence whose middle map is 1 - (multiplication by
the conjugate class) on the representation ring.  K_1 is its kernel, K_0 its
cokernel, and the module structure from the dual coaction descends through
the same presentation.
"""

from dataclasses import dataclass

import numpy as np

from . import lattice
from .errors import (
    DimensionMismatch,
    DimensionTooSmall,
    NotFaithful,
    UnknownIrrep,
    ValidationError,
)
from .lattice import (
    FgAbelianGroup,
    cokernel,
    kernel_basis,
    restrict_endomorphism,
    smith_normal_form,
    solve,
)
from .repring import RepRingElement, class_of, mult_matrix


@dataclass(frozen=True)
class QuasiFreeActionSpec:
    """An action of a finite group on the Cuntz algebra with n generators,
    given by the class of the defining representation on their span."""

    table: object
    rep_class: RepRingElement
    n: int
    faithful: bool
    kernel_subgroup: tuple

    def conjugate_spec(self):
        return action_spec_from_element(self.table, self.rep_class.conjugate())


def action_spec(table, multiset):
    """Validated action spec from an irrep -> multiplicity mapping."""
    rep = class_of(table, multiset)
    if any(c < 0 for c in rep.coeffs):
        raise ValidationError("action specs need nonnegative multiplicities")
    if all(c == 0 for c in rep.coeffs):
        raise ValidationError("action spec must name at least one irrep")
    return action_spec_from_element(table, rep)


def action_spec_from_element(table, rep):
    if any(c < 0 for c in rep.coeffs):
        raise ValidationError("action specs need nonnegative multiplicities")
    n = rep.dim()
    if n < 2:
        raise DimensionTooSmall(f"total dimension must be >= 2, got {n}")
    chi = rep.character()
    G = table.group
    kernel = []
    for g in range(G.order):
        v = chi[table.classes.class_of[g]]
        if abs(v - n) < 1e-8:
            assert abs(v.imag) < 1e-8 and abs(v.real - round(v.real)) < 1e-8
            kernel.append(g)
    faithful = kernel == [G.identity]
    return QuasiFreeActionSpec(table, rep, n, faithful, tuple(kernel))


@dataclass(frozen=True)
class KGroupsResult:
    """K_0 as invariant factors plus free rank, K_1 as an explicit free
    subgroup of the representation ring, with the defining matrix and its
    SNF certificate."""

    k0: FgAbelianGroup
    k1_basis: tuple  # basis vectors inside the irrep lattice
    defining_matrix: tuple
    snf: object
    generator_labels: tuple
    flavor: str  # "crossed_product" | "fixed_point" | "o_infinity"

    @property
    def k1_rank(self):
        return len(self.k1_basis)

    def describe(self):
        k1 = f"Z^{self.k1_rank}" if self.k1_rank > 1 else ("Z" if self.k1_rank else "0")
        return f"K0 = {self.k0.describe()}, K1 = {k1}"


def _one_minus(M):
    k = len(M)
    return [[(1 if i == j else 0) - M[i][j] for j in range(k)] for i in range(k)]


def _generator_labels(table):
    # Basis slot pi of the left rep-ring copy maps to the class of the
    # matrix unit e(conj(pi))_11 in the crossed product; both labelings are
    # reported since only invariant factors are convention-free.
    labels = []
    for pi in range(table.num_irreps):
        labels.append(
            {
                "slot": pi,
                "image": f"[e(pi_{table.conj_map[pi]})_11]",
                "image_unbarred": f"[e(pi_{pi})_11]",
                "convention": "conjugate",
            }
        )
    return tuple(labels)


def k_groups_crossed_product(spec):
    """K-groups of the crossed product from the kernel/cokernel of
    1 - (multiplication by the conjugate representation class)."""
    table = spec.table
    A = _one_minus(mult_matrix(table, spec.rep_class.conjugate()))
    snf = smith_normal_form(A)
    k0 = cokernel(A, snf)
    k1 = kernel_basis(A, snf)
    return KGroupsResult(
        k0=k0,
        k1_basis=tuple(tuple(v) for v in k1),
        defining_matrix=tuple(tuple(row) for row in A),
        snf=snf,
        generator_labels=_generator_labels(table),
        flavor="crossed_product",
    )


def k_groups_fixed_point(spec):
    """K-groups of the fixed-point algebra, via the identification with the
    crossed product.  Refuses non-faithful actions: the identification is
    only applied inside its hypothesis."""
    if not spec.faithful:
        raise NotFaithful(
            f"action has kernel of order {len(spec.kernel_subgroup)}; "
            "quotient the group first (see quotient_spec)"
        )
    res = k_groups_crossed_product(spec)
    return KGroupsResult(
        k0=res.k0,
        k1_basis=res.k1_basis,
        defining_matrix=res.defining_matrix,
        snf=res.snf,
        generator_labels=res.generator_labels,
        flavor="fixed_point",
    )


def quotient_spec(spec, character_table_fn):
    """Spec of the induced action of G/ker on the same algebra.

    Provided so that a non-faithful action is reduced deliberately rather
    than silently; ``character_table_fn`` builds the quotient's table.
    """
    from .groups import group_from_table

    G = spec.table.group
    kernel = set(spec.kernel_subgroup)
    # cosets of the kernel
    seen = {}
    cosets = []
    for g in range(G.order):
        key = frozenset(G.mul[g][h] for h in kernel)
        if key not in seen:
            seen[key] = len(cosets)
            cosets.append(key)
    idx_of = {}
    for i, cs in enumerate(cosets):
        for g in cs:
            idx_of[g] = i
    reps = [min(cs) for cs in cosets]
    table = [[idx_of[G.mul[a][b]] for b in reps] for a in reps]
    Q = group_from_table(table)
    qtable = character_table_fn(Q)
    # match the character of the action on coset representatives
    chi = spec.rep_class.character()
    chi_on_q = np.array([chi[spec.table.classes.class_of[reps[g]]] for g in range(Q.order)])
    coeffs = []
    for pi in range(qtable.num_irreps):
        vals = np.array([qtable.value_at_element(pi, g) for g in range(Q.order)])
        m = np.sum(chi_on_q * vals.conj()) / Q.order
        coeffs.append(int(round(m.real)))
    return action_spec_from_element(qtable, RepRingElement(qtable, coeffs))


def dual_action_k_map(spec, pi_class, kresult=None):
    """Pair of integer matrices of the dual-coaction module action: one on
    the K_0 coordinates, one on the K_1 basis."""
    table = spec.table
    if isinstance(pi_class, int):
        pi_class = class_of(table, {pi_class: 1})
    kresult = kresult or k_groups_crossed_product(spec)
    N = mult_matrix(table, pi_class)
    M = [list(row) for row in kresult.defining_matrix]
    on_k0 = lattice.descend_endomorphism(N, M, kresult.k0, kresult.snf)
    on_k1 = restrict_endomorphism(N, [list(v) for v in kresult.k1_basis])
    return on_k0, on_k1


@dataclass(frozen=True)
class Decision:
    holds: bool
    witness: tuple = None  # integer combination when holds
    refutation: tuple = None  # nonzero cokernel coordinates when not


def gr_criterion(target_result, pi_alpha_source, k1_class):
    """Decide whether a K_1 class of the target lies in the image of
    1 - (restriction of multiplication by the source action's class).

    The class is given in the target's K_1 basis.  Positive answers carry a
    witness that verifies exactly; negative answers carry the nonzero
    cokernel projection of the class.
    """
    rank = target_result.k1_rank
    if len(k1_class) != rank:
        raise DimensionMismatch(f"class has length {len(k1_class)}, K1 rank is {rank}")
    if rank == 0:
        return Decision(holds=True, witness=())
    table = pi_alpha_source.table
    N = mult_matrix(table, pi_alpha_source)
    R = restrict_endomorphism(N, [list(v) for v in target_result.k1_basis])
    B = _one_minus(R)
    x = solve(B, list(k1_class))
    if x is not None:
        assert lattice.mat_vec(B, x) == list(k1_class)
        return Decision(holds=True, witness=tuple(x))
    proj = cokernel(B).project(list(k1_class))
    assert any(p != 0 for p in proj)
    return Decision(holds=False, refutation=tuple(proj))


def kte_check(k0, classes):
    """K-trivial-embedding test: all listed K_0 classes of the matrix-unit
    projections of nontrivial irreps must vanish.

    ``classes`` maps a nontrivial irrep index to ambient K_0 coordinates
    (already in the group's coordinate system).  When K_0 is torsion-free
    the central-idempotent variant (class of z(pi) = n_pi times the class of
    e(pi)_11) is reported as well.
    """
    if isinstance(k0, KGroupsResult):
        k0 = k0.k0
    report = {}
    ncoords = len(k0.torsion) + k0.free_rank
    for pi, coords in classes.items():
        if len(coords) != ncoords:
            raise UnknownIrrep(
                f"class for irrep {pi} has {len(coords)} coordinates, expected {ncoords}"
            )
        reduced = [c % d for c, d in zip(coords, k0.torsion)] + list(coords[len(k0.torsion):])
        report[pi] = all(x == 0 for x in reduced)
    result = {"passed": all(report.values()), "per_irrep": report}
    if not k0.torsion:
        result["z_variant"] = {
            pi: ok for pi, ok in report.items()
        }  # torsion-free: z(pi) class is an integer multiple, vanishes iff e-class does
    return result


def k_groups_o_infinity(table):
    """K-groups for the infinite-generator algebra: K_0 free of rank equal
    to the number of irreps, K_1 = 0 (the documented constant)."""
    k = table.num_irreps
    zero = [[0] * k for _ in range(k)]
    snf = smith_normal_form(zero)
    return KGroupsResult(
        k0=cokernel(zero, snf),
        k1_basis=(),
        defining_matrix=tuple(tuple(row) for row in zero),
        snf=snf,
        generator_labels=_generator_labels(table),
        flavor="o_infinity",
    )


def lambda_endomorphism_matrix(spec):
    """Matrix through which the canonical shift endomorphism acts on
    K-theory: multiplication by the action's defining class."""
    return mult_matrix(spec.table, spec.rep_class)
