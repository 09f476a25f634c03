"""Finite abelian groups in invariant-factor form.

A group is presented as a direct sum ``C_{n_1} + ... + C_{n_r}`` with
``2 <= n_1 | n_2 | ... | n_r``.  Elements are plain tuples of residues,
coordinate ``i`` reduced mod ``n_i``; the trivial group has rank 0 and the
single element ``()``.  Elements carry no reference to their group, so every
operation takes the group explicitly.

Arbitrary products of cyclic groups are normalized to the canonical chain
via an integer Smith normal form:

>>> make_group([2, 3])
Group(invariants=(6,))
>>> make_group([2, 4])
Group(invariants=(2, 4))
>>> make_group([1, 1]).order
1
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from math import gcd, lcm, prod


GroupElement = tuple[int, ...]


@dataclass(frozen=True)
class Group:
    """Canonical presentation: the tuple of invariant factors."""

    invariants: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "invariants", tuple(int(n) for n in self.invariants))
        prev = None
        for n in self.invariants:
            if n < 2:
                raise ValueError(
                    f"invariant factor {n} < 2; use make_group to normalize arbitrary specs"
                )
            if prev is not None and n % prev:
                raise ValueError(
                    f"invariant factors must form a divisibility chain, got {self.invariants}"
                )
            prev = n

    @property
    def order(self) -> int:
        return prod(self.invariants)

    @property
    def rank(self) -> int:
        return len(self.invariants)

    def zero(self) -> GroupElement:
        return (0,) * len(self.invariants)

    def spec(self) -> str:
        """Canonical text form, e.g. ``C2xC4``; the trivial group is ``C1``."""
        if not self.invariants:
            return "C1"
        return "x".join(f"C{n}" for n in self.invariants)

    def __str__(self) -> str:
        return self.spec()


@dataclass(frozen=True)
class Subgroup:
    """A subgroup given by generators together with its full element set."""

    generators: tuple[GroupElement, ...]
    elements: frozenset[GroupElement]

    @property
    def order(self) -> int:
        return len(self.elements)

    def is_trivial(self) -> bool:
        return len(self.elements) == 1


def make_group(orders) -> Group:
    """Canonicalize a direct sum of cyclic groups of the given orders.

    Factors of 1 are dropped; an empty list (or all ones) yields the trivial
    group.  Normalization runs the Smith normal form of the diagonal
    relation matrix, so non-chain specs are folded together:

    >>> make_group([6])
    Group(invariants=(6,))
    >>> make_group([4, 6]).invariants
    (2, 12)
    """
    entries = [int(n) for n in orders]
    if any(n < 1 for n in entries):
        raise ValueError(f"cyclic factors must be >= 1, got {entries}")
    entries = [n for n in entries if n > 1]
    if not entries:
        return Group(())
    diag = [[entries[i] if i == j else 0 for j in range(len(entries))] for i in range(len(entries))]
    return Group(tuple(d for d in smith_normal_form(diag) if d > 1))


_GROUP_SPEC_RE = re.compile(r"c\d+(?:xc\d+)*", re.ASCII)


def parse_group(text: str) -> Group:
    """Parse a group spec like ``C2xC4`` (case-insensitive, ``C1`` = trivial)."""
    compact = re.sub(r"\s+", "", text).lower()
    if not _GROUP_SPEC_RE.fullmatch(compact):
        raise ValueError(f"bad group spec {text!r}: expected e.g. C6 or C2xC4")
    return make_group(int(part[1:]) for part in compact.split("x"))


def _check_arity(G: Group, a: GroupElement) -> None:
    if len(a) != G.rank:
        raise ValueError(f"element {a!r} has arity {len(a)}, group {G} has rank {G.rank}")


def elem_reduce(G: Group, a) -> GroupElement:
    """Reduce each coordinate into its modulus (arity must match the rank)."""
    a = tuple(int(x) for x in a)
    _check_arity(G, a)
    return tuple(x % n for x, n in zip(a, G.invariants))


def elem_add(G: Group, a: GroupElement, b: GroupElement) -> GroupElement:
    _check_arity(G, a)
    _check_arity(G, b)
    return tuple((x + y) % n for x, y, n in zip(a, b, G.invariants))


def elem_neg(G: Group, a: GroupElement) -> GroupElement:
    _check_arity(G, a)
    return tuple((-x) % n for x, n in zip(a, G.invariants))


def elem_sub(G: Group, a: GroupElement, b: GroupElement) -> GroupElement:
    _check_arity(G, a)
    _check_arity(G, b)
    return tuple((x - y) % n for x, y, n in zip(a, b, G.invariants))


def elem_scale(G: Group, k: int, a: GroupElement) -> GroupElement:
    _check_arity(G, a)
    return tuple((k * x) % n for x, n in zip(a, G.invariants))


def elem_order(G: Group, a: GroupElement) -> int:
    """Least k >= 1 with k*a = 0."""
    _check_arity(G, a)
    return lcm(*(n // gcd(x, n) for x, n in zip(a, G.invariants))) if a else 1


@lru_cache(maxsize=None)
def all_elements(G: Group) -> tuple[GroupElement, ...]:
    """All |G| elements in lexicographic coordinate order, zero first."""
    return tuple(product(*(range(n) for n in G.invariants)))


@lru_cache(maxsize=None)
def element_index(G: Group):
    """Element -> position in all_elements(G).  Shared cache; do not mutate."""
    return {e: i for i, e in enumerate(all_elements(G))}


def subgroup_closure(G: Group, gens) -> Subgroup:
    """Smallest subgroup containing the generators (closure under addition).

    In a finite group the additive closure of a set containing 0 already
    contains negatives, since -a = (order(a)-1)*a.
    """
    gens = tuple(elem_reduce(G, g) for g in gens)
    elems = {G.zero()}
    frontier = [G.zero()]
    while frontier:
        x = frontier.pop()
        for g in gens:
            y = elem_add(G, x, g)
            if y not in elems:
                elems.add(y)
                frontier.append(y)
    return Subgroup(generators=gens, elements=frozenset(elems))


def order_two_subgroups(G: Group) -> list[Subgroup]:
    """One subgroup {0, h} per element h of order 2, in element order."""
    return [
        subgroup_closure(G, [h])
        for h in all_elements(G)
        if elem_order(G, h) == 2
    ]


def all_subgroups(G: Group, cap: int = 64) -> list[Subgroup]:
    """Every subgroup exactly once, by iterated joins of cyclic subgroups.

    Refuses groups of order above ``cap``; the lattice is only needed at
    desk scale.
    """
    if G.order > cap:
        raise ValueError(f"all_subgroups: |G| = {G.order} exceeds cap {cap}")
    return list(_all_subgroups_cached(G))


@lru_cache(maxsize=None)
def _all_subgroups_cached(G: Group) -> tuple[Subgroup, ...]:
    cyclic = {}
    for g in all_elements(G):
        H = subgroup_closure(G, [g])
        cyclic.setdefault(H.elements, H)
    trivial = subgroup_closure(G, [])
    seen = {trivial.elements: trivial}
    queue = [trivial]
    while queue:
        H = queue.pop()
        for C in cyclic.values():
            if C.elements <= H.elements:
                continue
            J = subgroup_closure(G, H.generators + C.generators)
            if J.elements not in seen:
                seen[J.elements] = J
                queue.append(J)
    return tuple(sorted(seen.values(), key=lambda H: (H.order, sorted(H.elements))))


def _validate_subgroup(G: Group, H: Subgroup) -> None:
    elems = H.elements
    if G.zero() not in elems:
        raise ValueError("subgroup does not contain zero")
    for x in elems:
        if elem_reduce(G, x) != x:
            raise ValueError(f"subgroup element {x!r} is not a reduced element of {G}")
    for x in elems:
        for y in elems:
            if elem_add(G, x, y) not in elems:
                raise ValueError("subgroup element set is not closed under addition")


def smith_normal_form(matrix, transforms: bool = False):
    """Smith normal form of an integer matrix.

    Returns the diagonal ``[d_1, ..., d_k]`` (k = min(rows, cols)) with
    ``d_i >= 0`` and ``d_i | d_{i+1}``; zeros come last.  With
    ``transforms=True`` returns ``(diag, U, V)`` where U, V are unimodular
    and ``U @ M @ V`` is the diagonal matrix.
    """
    A = [[int(x) for x in row] for row in matrix]
    m = len(A)
    n = len(A[0]) if m else 0
    if any(len(row) != n for row in A):
        raise ValueError("matrix rows have unequal lengths")
    U = [[int(i == j) for j in range(m)] for i in range(m)]
    V = [[int(i == j) for j in range(n)] for i in range(n)]

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in A:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(i, j, q):  # row_i += q * row_j
        A[i] = [a + q * b for a, b in zip(A[i], A[j])]
        U[i] = [a + q * b for a, b in zip(U[i], U[j])]

    def add_col(i, j, q):  # col_i += q * col_j
        for row in A:
            row[i] += q * row[j]
        for row in V:
            row[i] += q * row[j]

    def negate_row(i):
        A[i] = [-a for a in A[i]]
        U[i] = [-a for a in U[i]]

    t = 0
    while t < min(m, n):
        pivot = None
        for i in range(t, m):
            for j in range(t, n):
                if A[i][j] and (pivot is None or abs(A[i][j]) < abs(A[pivot[0]][pivot[1]])):
                    pivot = (i, j)
        if pivot is None:
            break
        swap_rows(t, pivot[0])
        swap_cols(t, pivot[1])
        while True:
            if A[t][t] < 0:
                negate_row(t)
            dirty = False
            for i in range(t + 1, m):
                if A[i][t]:
                    add_row(i, t, -(A[i][t] // A[t][t]))
                    if A[i][t]:  # nonzero remainder: strictly smaller pivot
                        swap_rows(t, i)
                        dirty = True
            for j in range(t + 1, n):
                if A[t][j]:
                    add_col(j, t, -(A[t][j] // A[t][t]))
                    if A[t][j]:
                        swap_cols(t, j)
                        dirty = True
            if dirty:
                continue
            offender = None
            for i in range(t + 1, m):
                if any(A[i][j] % A[t][t] for j in range(t + 1, n)):
                    offender = i
                    break
            if offender is None:
                break
            add_row(t, offender, 1)
        t += 1
    diag = [A[i][i] for i in range(min(m, n))]
    return (diag, U, V) if transforms else diag


def quotient_group(G: Group, H: Subgroup):
    """Quotient G/H in canonical form, with the projection homomorphism.

    The invariant factors come from the Smith normal form of the relation
    matrix whose columns are diag(n_1..n_r) followed by the elements of H;
    the returned projection maps a G-element to its class in the quotient.
    """
    _validate_subgroup(G, H)
    r = G.rank
    hs = sorted(H.elements)
    M = [[0] * (r + len(hs)) for _ in range(r)]
    for i, n in enumerate(G.invariants):
        M[i][i] = n
    for j, h in enumerate(hs):
        for i in range(r):
            M[i][r + j] = h[i]
    diag, U, _ = smith_normal_form(M, transforms=True)
    quotient = Group(tuple(d for d in diag if d > 1))
    keep = [(i, d) for i, d in enumerate(diag) if d > 1]

    def project(a: GroupElement) -> GroupElement:
        _check_arity(G, a)
        return tuple(sum(U[i][k] * a[k] for k in range(r)) % d for i, d in keep)

    return quotient, project


def subgroup_invariants(G: Group, H: Subgroup) -> Group:
    """Abstract isomorphism type of a subgroup.

    For each prime p, the number of elements killed by p^j determines how
    many cyclic p-power factors have exponent >= j; assembling those prime
    powers and re-normalizing gives the invariant factors.
    """
    _validate_subgroup(G, H)
    size = len(H.elements)
    parts: list[int] = []
    for p in _prime_factors(size):
        logs = [0]
        j = 1
        while True:
            killed = sum(1 for x in H.elements if all(c == 0 for c in elem_scale(G, p**j, x)))
            s = _exact_log(killed, p)
            logs.append(s)
            if p**s == _p_part(size, p):
                break
            j += 1
        at_least = [logs[j] - logs[j - 1] for j in range(1, len(logs))]
        at_least.append(0)
        for j in range(1, len(at_least)):
            parts.extend([p**j] * (at_least[j - 1] - at_least[j]))
    return make_group(parts)


def _prime_factors(n: int) -> list[int]:
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


def _p_part(n: int, p: int) -> int:
    out = 1
    while n % p == 0:
        out *= p
        n //= p
    return out


def _exact_log(n: int, p: int) -> int:
    e = 0
    while n > 1:
        if n % p:
            raise ArithmeticError(f"{n} is not a power of {p}")
        n //= p
        e += 1
    return e


def d_star(G: Group) -> int:
    """Sum of (n_i - 1) over the invariant factors."""
    return sum(n - 1 for n in G.invariants)
