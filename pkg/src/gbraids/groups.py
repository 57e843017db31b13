"""Finite groups as dense multiplication tables.

Conventions used throughout the package:

* elements are dense indices ``0..order-1`` into a multiplication table, with
  the identity always at index 0;
* permutation groups enumerate their elements in lexicographic one-line-
  notation order, so indexing is reproducible across runs and machines;
* permutations compose by "apply the right factor first":
  ``(s*t)(i) = s(t(i))``.  In S3 this makes (12)*(13) = (132).

Groups are validated eagerly on construction (associativity, identity,
inverses), which is O(order^3) and fine at the scale this package targets
(order <= 24 or so).
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from pathlib import Path


class GroupError(ValueError):
    """Malformed group data or a violated group axiom."""


class GroupMismatchError(GroupError):
    """Operands belong to different groups."""


@dataclass(frozen=True, eq=False)  # identity-based equality: one table, one group
class FiniteGroup:
    order: int
    mul: tuple[tuple[int, ...], ...]
    inv: tuple[int, ...]
    label: str = "G"
    identity_index: int = 0

    def __post_init__(self):
        _validate_table(self.order, self.mul, self.inv, self.identity_index)
        # one shared wrapper per element; every accessor and operation
        # below hands out these singletons
        object.__setattr__(self, "_wrappers",
                           tuple(GroupElement(i, self)
                                 for i in range(self.order)))

    # -- element access -------------------------------------------------

    def element(self, index: int) -> "GroupElement":
        if not 0 <= index < self.order:
            raise GroupError(f"element index {index} out of range for {self.label}")
        return self._wrappers[index]

    @property
    def identity(self) -> "GroupElement":
        return self._wrappers[self.identity_index]

    def elements(self) -> tuple["GroupElement", ...]:
        return self._wrappers

    def __iter__(self):
        return iter(self.elements())

    def __len__(self) -> int:
        return self.order

    def __repr__(self) -> str:
        return f"FiniteGroup({self.label}, order={self.order})"

    def is_abelian(self) -> bool:
        return all(
            self.mul[a][b] == self.mul[b][a]
            for a in range(self.order)
            for b in range(a)
        )

    def to_table_text(self) -> str:
        lines = [str(self.order)]
        lines += [" ".join(str(v) for v in row) for row in self.mul]
        return "\n".join(lines) + "\n"


@dataclass(frozen=True, eq=False)
class GroupElement:
    index: int
    group: FiniteGroup

    def __post_init__(self):
        # elements are per-group singletons, so identity comparison is the
        # common case and the hash never changes
        object.__setattr__(self, "_hash", hash((self.index, id(self.group))))

    def __eq__(self, other):
        if self is other:
            return True
        return (isinstance(other, GroupElement)
                and self.index == other.index
                and self.group is other.group)

    def __hash__(self):
        return self._hash

    def __mul__(self, other: "GroupElement") -> "GroupElement":
        return product(self, other)

    def inverse(self) -> "GroupElement":
        return self.group._wrappers[self.group.inv[self.index]]

    def __invert__(self) -> "GroupElement":
        return self.inverse()

    def is_identity(self) -> bool:
        return self.index == self.group.identity_index

    def __repr__(self) -> str:
        return f"<{self.group.label}:{self.index}>"

    # sort key used by orbit enumeration / canonical representatives
    def __lt__(self, other: "GroupElement") -> bool:
        return self.index < other.index


def _same_group(a: GroupElement, b: GroupElement) -> FiniteGroup:
    if a.group is not b.group:
        raise GroupMismatchError(
            f"elements of different groups: {a.group.label} vs {b.group.label}"
        )
    return a.group


def product(a: GroupElement, b: GroupElement) -> GroupElement:
    """a*b in their common group."""
    g = _same_group(a, b)
    return g._wrappers[g.mul[a.index][b.index]]


def conjugate(h: GroupElement, g: GroupElement) -> GroupElement:
    """h g h^-1."""
    grp = _same_group(h, g)
    m = grp.mul
    return GroupElement(m[m[h.index][g.index]][grp.inv[h.index]], grp)


def product_of(elements, group: FiniteGroup) -> GroupElement:
    """Ordered product of an iterable of elements (identity if empty)."""
    acc = group.identity_index
    m = group.mul
    for x in elements:
        if x.group is not group:
            raise GroupMismatchError("mixed groups in product_of")
        acc = m[acc][x.index]
    return GroupElement(acc, group)


# -- validation ----------------------------------------------------------


def _validate_table(order, mul, inv, identity_index):
    if order < 1:
        raise GroupError("order must be positive")
    if identity_index != 0:
        raise GroupError("identity must be element 0")
    if len(mul) != order or any(len(row) != order for row in mul):
        raise GroupError("multiplication table must be order x order")
    rng = range(order)
    for row in mul:
        if any(not (0 <= v < order) for v in row):
            raise GroupError("table entry out of range")
    e = identity_index
    for a in rng:
        if mul[e][a] != a or mul[a][e] != a:
            raise GroupError(f"identity axiom fails at element {a}")
    if len(inv) != order:
        raise GroupError("inverse table has wrong length")
    for a in rng:
        if mul[a][inv[a]] != e or mul[inv[a]][a] != e:
            raise GroupError(f"inverse axiom fails at element {a}")
    for a in rng:
        for b in rng:
            mab = mul[a][b]
            row_a = mul[a]
            for c in rng:
                if mul[mab][c] != row_a[mul[b][c]]:
                    raise GroupError(
                        f"associativity fails at triple ({a}, {b}, {c})"
                    )


def _inverses_from_table(order, mul):
    inv = [None] * order
    for a in range(order):
        for b in range(order):
            if mul[a][b] == 0 and mul[b][a] == 0:
                inv[a] = b
                break
        if inv[a] is None:
            raise GroupError(f"element {a} has no two-sided inverse")
    return tuple(inv)


def _from_mul(order, mul, label) -> FiniteGroup:
    mul = tuple(tuple(row) for row in mul)
    return FiniteGroup(order, mul, _inverses_from_table(order, mul), label)


# -- constructors --------------------------------------------------------


def _compose_perm(p, q):
    # (p*q)(i) = p(q(i)): apply q first
    return tuple(p[q[i]] for i in range(len(p)))


def _group_from_permutations(perms, label) -> FiniteGroup:
    """Index the given closed set of permutations in lexicographic order."""
    elems = sorted(set(perms))
    if elems[0] != tuple(range(len(elems[0]))):
        raise GroupError("permutation set lacks the identity as lex minimum")
    index = {p: i for i, p in enumerate(elems)}
    mul = []
    for p in elems:
        row = []
        for q in elems:
            pq = _compose_perm(p, q)
            if pq not in index:
                raise GroupError("permutation set not closed under composition")
            row.append(index[pq])
        mul.append(tuple(row))
    return _from_mul(len(elems), mul, label)


def cyclic_group(n: int) -> FiniteGroup:
    mul = [[(a + b) % n for b in range(n)] for a in range(n)]
    return _from_mul(n, mul, f"C{n}")


def symmetric_group(n: int) -> FiniteGroup:
    perms = itertools.permutations(range(n))
    return _group_from_permutations(perms, f"S{n}")


def dihedral_group(n: int) -> FiniteGroup:
    """Symmetries of the regular n-gon as permutations of its vertices (order 2n)."""
    if n < 3:
        # degenerate polygons: realize as abstract rotations/reflections
        if n == 1:
            return _from_mul(2, [[0, 1], [1, 0]], "D1")
        if n == 2:
            # Klein four-group
            mul = [[0, 1, 2, 3], [1, 0, 3, 2], [2, 3, 0, 1], [3, 2, 1, 0]]
            return _from_mul(4, mul, "D2")
        raise GroupError("dihedral index must be >= 1")
    rot = tuple((i + 1) % n for i in range(n))
    ref = tuple((-i) % n for i in range(n))
    perms = set()
    p = tuple(range(n))
    for _ in range(n):
        perms.add(p)
        perms.add(_compose_perm(ref, p))
        p = _compose_perm(rot, p)
    return _group_from_permutations(perms, f"D{n}")


def direct_product(a: FiniteGroup, b: FiniteGroup) -> FiniteGroup:
    """Pairs (x, y) indexed as x*|b| + y."""
    order = a.order * b.order
    nb = b.order
    mul = []
    for i in range(order):
        xa, ya = divmod(i, nb)
        row = []
        for j in range(order):
            xb, yb = divmod(j, nb)
            row.append(a.mul[xa][xb] * nb + b.mul[ya][yb])
        mul.append(tuple(row))
    return _from_mul(order, mul, f"{a.label}x{b.label}")


@lru_cache(maxsize=None)
def make_group(spec: str) -> FiniteGroup:
    """Build a group from a descriptor: C<n>, S<n>, D<n>, or products like C2xS3."""
    spec = spec.strip()
    if not spec:
        raise GroupError("empty group spec")
    parts = spec.split("x")
    if len(parts) > 1:
        grp = make_group(parts[0])
        for part in parts[1:]:
            grp = direct_product(grp, make_group(part))
        return grp
    family, num = spec[0], spec[1:]
    if family not in "CSD" or not num.isdigit() or int(num) < 1:
        raise GroupError(f"unrecognized group spec {spec!r}")
    n = int(num)
    if family == "C":
        return cyclic_group(n)
    if family == "S":
        return symmetric_group(n)
    return dihedral_group(n)


def read_group_table(path) -> FiniteGroup:
    """Parse a table file: line 1 the order, then the order x order table."""
    text = Path(path).read_text()
    tokens = text.split()
    if not tokens:
        raise GroupError(f"{path}: empty table file")
    try:
        values = [int(t) for t in tokens]
    except ValueError as exc:
        raise GroupError(f"{path}: non-integer entry: {exc}") from None
    order = values[0]
    body = values[1:]
    if order < 1 or len(body) != order * order:
        raise GroupError(
            f"{path}: expected {order}x{order} entries, got {len(body)}"
        )
    mul = [body[i * order : (i + 1) * order] for i in range(order)]
    return _from_mul(order, mul, Path(path).stem)
