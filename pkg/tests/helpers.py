"""Shared test fixtures: group pools and dead-simple reference oracles."""

from itertools import combinations
from math import gcd

from zerosum import Group, elem_add, make_group


def groups_up_to_order(n):
    """Every isomorphism class of order 2..n (n <= 16)."""
    shapes = [
        (2,), (3,), (4,), (2, 2), (5,), (6,), (7,), (8,), (2, 4), (2, 2, 2),
        (9,), (3, 3), (10,), (11,), (12,), (2, 6), (13,), (14,), (15,),
        (16,), (2, 8), (4, 4), (2, 2, 4), (2, 2, 2, 2),
    ]
    return [Group(s) for s in shapes if _order(s) <= n]


def _order(shape):
    out = 1
    for k in shape:
        out *= k
    return out


ODD_GROUPS_9 = [make_group(s) for s in [[3], [5], [7], [9], [3, 3]]]


def naive_count(S, g):
    """Count index subsets summing to g by explicit subset iteration.

    Kept deliberately primitive (itertools.combinations over index sets) to
    double-check the Gray-code enumerator on small inputs.
    """
    G = S.group
    occ = S.expanded()
    total = 0
    for size in range(len(occ) + 1):
        for picks in combinations(range(len(occ)), size):
            s = G.zero()
            for i in picks:
                s = elem_add(G, s, occ[i])
            if s == g:
                total += 1
    return total


def determinant(M):
    """Integer determinant by Laplace expansion (tiny matrices only)."""
    k = len(M)
    if k == 0:
        return 1
    if k == 1:
        return M[0][0]
    total = 0
    for j in range(k):
        if M[0][j] == 0:
            continue
        minor = [[row[c] for c in range(k) if c != j] for row in M[1:]]
        total += (-1) ** j * M[0][j] * determinant(minor)
    return total


def gcd_of_k_minors(M, k):
    """gcd of the absolute values of all k x k minors."""
    rows = range(len(M))
    cols = range(len(M[0]) if M else 0)
    g = 0
    for rsel in combinations(rows, k):
        for csel in combinations(cols, k):
            sub = [[M[r][c] for c in csel] for r in rsel]
            g = gcd(g, abs(determinant(sub)))
    return g


def matmul(A, B):
    return [
        [sum(A[i][k] * B[k][j] for k in range(len(B))) for j in range(len(B[0]))]
        for i in range(len(A))
    ]
