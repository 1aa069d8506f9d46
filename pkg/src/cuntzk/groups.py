"""Finite groups given by full multiplication tables.

Elements are integer indices into a dense order x order table.  All groups
of interest here are tiny, so exhaustive validation (associativity,
identity, inverses) is the default; it can be skipped above a configurable
cap because the cost is O(order^3).

Canonical element orderings of the builtin families:

* ``cyclic(n)``: element i is the rotation by i, so ``i * j = (i + j) % n``.
* ``dihedral(n)``: order 2n; index i < n is the rotation r^i, index n + i
  is the reflected element s r^i, with the relation s r s = r^{-1}.
* ``symmetric(n)``: permutations of {0..n-1} in lexicographic order of their
  one-line notation; product is composition, (p * q)(x) = p(q(x)).
* ``direct_product(G, H)``: pair (g, h) has index g * |H| + h.
"""

from dataclasses import dataclass, field
from itertools import permutations

from .errors import (
    MissingInverse,
    NoIdentity,
    NotAssociative,
    UnsupportedParameter,
    ValidationError,
)

ASSOCIATIVITY_CAP = 256
MAX_ORDER = 720


@dataclass(frozen=True)
class FiniteGroup:
    """A finite group stored by its full multiplication table."""

    order: int
    mul: tuple  # tuple of tuples, mul[a][b] = index of a*b
    identity: int
    inv: tuple  # inv[a] = index of a^{-1}
    labels: tuple = None
    family: tuple = None  # e.g. ("cyclic", 4); None for user tables

    def __post_init__(self):
        if self.labels is None:
            object.__setattr__(self, "labels", tuple(str(i) for i in range(self.order)))

    def op(self, a, b):
        return self.mul[a][b]

    def conjugate(self, g, x):
        """g x g^{-1}."""
        return self.mul[self.mul[g][x]][self.inv[g]]

    def __len__(self):
        return self.order


@dataclass(frozen=True)
class ConjugacyData:
    """Partition of a group into conjugacy classes.

    Class 0 is always the identity's class.
    """

    class_of: tuple  # element -> class index
    reps: tuple  # one representative per class
    sizes: tuple
    count: int = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "count", len(self.reps))


def _find_identity(table):
    n = len(table)
    for e in range(n):
        if all(table[e][x] == x and table[x][e] == x for x in range(n)):
            return e
    return None


def group_from_table(table, labels=None, check_associativity=None):
    """Build and validate a FiniteGroup from a square multiplication table.

    ``check_associativity`` defaults to True for order <= ASSOCIATIVITY_CAP.
    """
    n = len(table)
    if n == 0 or n > MAX_ORDER:
        raise ValidationError(f"group order must be in 1..{MAX_ORDER}, got {n}")
    for row in table:
        if len(row) != n:
            raise ValidationError("multiplication table is not square")
        for x in row:
            if not (0 <= x < n):
                raise ValidationError(f"table entry {x} out of range 0..{n - 1}")

    e = _find_identity(table)
    if e is None:
        raise NoIdentity()

    inv = [None] * n
    for a in range(n):
        for b in range(n):
            if table[a][b] == e and table[b][a] == e:
                inv[a] = b
                break
        if inv[a] is None:
            raise MissingInverse(a)

    if check_associativity is None:
        check_associativity = n <= ASSOCIATIVITY_CAP
    if check_associativity:
        rng = range(n)
        for a in rng:
            ta = table[a]
            for b in rng:
                tab = table[ta[b]]
                tb = table[b]
                for c in rng:
                    if tab[c] != ta[tb[c]]:
                        raise NotAssociative(a, b, c)

    return FiniteGroup(
        order=n,
        mul=tuple(tuple(row) for row in table),
        identity=e,
        inv=tuple(inv),
        labels=tuple(labels) if labels is not None else None,
    )


def cyclic(n):
    if n < 1:
        raise UnsupportedParameter(f"cyclic order must be >= 1, got {n}")
    table = [[(i + j) % n for j in range(n)] for i in range(n)]
    labels = [f"r{i}" for i in range(n)]
    g = group_from_table(table, labels)
    return FiniteGroup(g.order, g.mul, g.identity, g.inv, g.labels, family=("cyclic", n))


def dihedral(n):
    """Dihedral group of order 2n (symmetries of the n-gon), n >= 1."""
    if n < 1:
        raise UnsupportedParameter(f"dihedral parameter must be >= 1, got {n}")
    order = 2 * n

    def mul(i, j):
        ai, ri = divmod(i, n)
        aj, rj = divmod(j, n)
        # (s^ai r^ri)(s^aj r^rj); r^a s = s r^{-a}
        if aj == 0:
            return ai * n + (ri + rj) % n
        if ai == 0:
            return n + (rj - ri) % n
        return (rj - ri) % n

    table = [[mul(i, j) for j in range(order)] for i in range(order)]
    labels = [f"r{i}" for i in range(n)] + [f"sr{i}" for i in range(n)]
    g = group_from_table(table, labels)
    return FiniteGroup(g.order, g.mul, g.identity, g.inv, g.labels, family=("dihedral", n))


def symmetric(n):
    if not (1 <= n <= 6):
        raise UnsupportedParameter(f"symmetric group supported for n in 1..6, got {n}")
    perms = sorted(permutations(range(n)))
    index = {p: i for i, p in enumerate(perms)}

    def compose(p, q):
        return tuple(p[q[x]] for x in range(n))

    table = [[index[compose(p, q)] for q in perms] for p in perms]
    labels = ["".join(map(str, p)) for p in perms]
    g = group_from_table(table, labels, check_associativity=(len(perms) <= ASSOCIATIVITY_CAP))
    return FiniteGroup(g.order, g.mul, g.identity, g.inv, g.labels, family=("symmetric", n))


def direct_product(G, H):
    nG, nH = G.order, H.order
    order = nG * nH
    if order > MAX_ORDER:
        raise UnsupportedParameter(f"product order {order} exceeds {MAX_ORDER}")
    table = [
        [G.mul[a][c] * nH + H.mul[b][d] for c in range(nG) for d in range(nH)]
        for a in range(nG)
        for b in range(nH)
    ]
    labels = [f"({G.labels[a]},{H.labels[b]})" for a in range(nG) for b in range(nH)]
    g = group_from_table(table, labels, check_associativity=(order <= ASSOCIATIVITY_CAP))
    fam = ("direct_product", G.family, H.family)
    return FiniteGroup(g.order, g.mul, g.identity, g.inv, g.labels, family=fam)


_FAMILIES = {
    "cyclic": lambda p: cyclic(p[0]),
    "dihedral": lambda p: dihedral(p[0]),
    "symmetric": lambda p: symmetric(p[0]),
}


def builtin_group(family, *params):
    """Construct a builtin family member; see module docstring for orderings.

    ``direct_product`` takes two (family, params...) tuples.
    """
    if family == "direct_product":
        if len(params) != 2:
            raise UnsupportedParameter("direct_product takes exactly two factor specs")
        factors = []
        for spec in params:
            if isinstance(spec, FiniteGroup):
                factors.append(spec)
            else:
                factors.append(builtin_group(spec[0], *spec[1:]))
        return direct_product(*factors)
    if family not in _FAMILIES:
        raise UnsupportedParameter(f"unknown family {family!r}")
    if len(params) != 1 or not isinstance(params[0], int):
        raise UnsupportedParameter(f"family {family!r} takes one integer parameter")
    return _FAMILIES[family](params)


def conjugacy_classes(G):
    """Partition G into conjugacy orbits; the identity's class comes first."""
    n = G.order
    class_of = [None] * n
    reps = []
    sizes = []
    for start in [G.identity] + [x for x in range(n) if x != G.identity]:
        if class_of[start] is not None:
            continue
        orbit = {G.conjugate(g, start) for g in range(n)}
        idx = len(reps)
        for x in orbit:
            class_of[x] = idx
        reps.append(min(orbit) if start != G.identity else start)
        sizes.append(len(orbit))
    return ConjugacyData(tuple(class_of), tuple(reps), tuple(sizes))


def class_mult_coefficients(G, C):
    """Class multiplication tensor a[i][j][k].

    a[i][j][k] counts pairs (x, y) with x in class i, y in class j and
    x*y = c for a fixed c in class k; the count is independent of the
    choice of c, which is asserted by recomputing with a second
    representative whenever the class has one.
    """
    k = C.count
    members = [[] for _ in range(k)]
    for x in range(G.order):
        members[C.class_of[x]].append(x)

    def count(i, j, c):
        inv = G.inv
        mul = G.mul
        cls_j = C.class_of
        total = 0
        for x in members[i]:
            # x*y = c  <=>  y = x^{-1} c
            y = mul[inv[x]][c]
            if cls_j[y] == j:
                total += 1
        return total

    a = [[[0] * k for _ in range(k)] for _ in range(k)]
    for kk in range(k):
        c0 = members[kk][0]
        c1 = members[kk][1] if len(members[kk]) > 1 else None
        for i in range(k):
            for j in range(k):
                v = count(i, j, c0)
                if c1 is not None:
                    assert count(i, j, c1) == v, (
                        f"class product count depends on the representative at "
                        f"({i},{j},{kk})"
                    )
                a[i][j][kk] = v
    return a
