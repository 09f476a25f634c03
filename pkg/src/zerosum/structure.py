"""Minimal zero-sum machinery and structural checks on extremal sequences.

A minimal zero-sum sequence is a nonempty zero-sum sequence all of whose
proper nonempty subsequences are zero-sum free.  Minimality is tested by
single removals: a candidate is minimal iff deleting any one occurrence
leaves a zero-sum-free remainder (any proper zero-sum divisor survives the
removal of some occurrence it misses).

The checkers here replay structural statements about sequences attaining
the count bound 2^(|S|-D+1): the disjoint-decomposition property on
odd-order groups, the growth of the extremal set under term removal, the
shape of subgroups inside extremal sets, and the quotient condition that
separates groups with bounded extremal length from those carrying an
unbounded extremal family.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from math import comb, gcd

from .groups import (
    Group,
    GroupElement,
    Subgroup,
    all_subgroups,
    elem_order,
    elem_reduce,
    elem_sub,
    make_group,
    order_two_subgroups,
    quotient_group,
    _validate_subgroup,
)
from .reports import VerificationReport
from .sequences import (
    Sequence,
    _seq_from_sorted,
    format_sequence,
    iterate_multisets,
    seq_div,
    seq_gcd,
    seq_key,
    seq_mul,
    seq_sum,
    sequence,
)
from .counting import (
    ExtremalSet,
    count_all,
    extremal_set,
    subsums,
    sweep_counts,
)
from .davenport import davenport, is_zero_sum_free, t_bound

MINIMAL_CAP = 25


@dataclass(frozen=True)
class MinZeroSumReport:
    sequence: Sequence
    minimals: tuple[Sequence, ...]
    pairwise_disjoint: bool
    expected_count: int | None  # |S| - D + 1 when D was supplied


@dataclass(frozen=True)
class ConditionProfile:
    group: Group
    cond_iii: bool  # D(G) >= D(G/H) + 2 for every order-2 subgroup H
    t: int  # length ceiling D(G) + |G| - 1
    offending_H: Subgroup | None


def is_minimal_zero_sum(S: Sequence) -> bool:
    if S.is_empty() or seq_sum(S) != S.group.zero():
        return False
    return all(
        is_zero_sum_free(seq_div(S, sequence(S.group, {a: 1})))
        for a in S.support()
    )


def minimal_zero_sums(S: Sequence, D: int | None = None,
                      cap: int = MINIMAL_CAP) -> MinZeroSumReport:
    """All minimal zero-sum subsequences of S, each once as a multiset."""
    if len(S) > cap:
        raise ValueError(f"minimal_zero_sums capped at length {cap}, got {len(S)}")
    G = S.group
    support = S.support()
    mults = [S.multiplicity(g) for g in support]
    minimals = []
    for vector in product(*(range(m + 1) for m in mults)):
        if not any(vector):
            continue
        T = sequence(G, dict(zip(support, vector)))
        if seq_sum(T) == G.zero() and is_minimal_zero_sum(T):
            minimals.append(T)
    minimals.sort(key=seq_key)
    disjoint = all(
        seq_gcd([minimals[i], minimals[j]]).is_empty()
        for i in range(len(minimals))
        for j in range(i + 1, len(minimals))
    )
    expected = None if D is None else len(S) - D + 1
    return MinZeroSumReport(S, tuple(minimals), disjoint, expected)


def _attains_zero_bound(S: Sequence, D: int) -> bool:
    e = len(S) - D + 1
    return e >= 0 and count_all(S).zero_count == 1 << e


def check_odd_group_structure(S: Sequence, D: int) -> VerificationReport:
    """On an odd-order group, a zero-free sequence attaining the zero-count
    bound must split into exactly |S|-D+1 pairwise disjoint minimal
    zero-sum subsequences."""
    G = S.group
    unmet = []
    if G.order % 2 == 0:
        unmet.append("group order is even")
    if S.multiplicity(G.zero()):
        unmet.append("sequence contains zero")
    if not _attains_zero_bound(S, D):
        unmet.append("zero count does not attain the bound")
    details = {"sequence": format_sequence(S), "group": G.spec()}
    if unmet:
        details["unmet"] = unmet
        return VerificationReport("odd-group-structure", "skipped", details)
    expected = len(S) - D + 1
    rep = minimal_zero_sums(S, D)
    details.update(
        expected_minimal_count=expected,
        minimal_count=len(rep.minimals),
        pairwise_disjoint=rep.pairwise_disjoint,
        minimals=[format_sequence(T) for T in rep.minimals],
    )
    ok = len(rep.minimals) == expected and rep.pairwise_disjoint
    return VerificationReport(
        "odd-group-structure", "pass" if ok else "fail", details,
        () if ok else (S,),
    )


def check_corollary_decomposition(S: Sequence, D: int) -> VerificationReport:
    """When additionally only zero attains the bound, the minimal zero-sum
    subsequences use up S exactly: S = T_1 T_2 ... T_r."""
    G = S.group
    unmet = []
    if G.order % 2 == 0:
        unmet.append("group order is even")
    if S.multiplicity(G.zero()):
        unmet.append("sequence contains zero")
    if len(S) < D - 1:
        unmet.append("extremal set undefined below length D - 1")
    elif extremal_set(S, D).members != {G.zero()}:
        unmet.append("extremal set is not exactly {0}")
    details = {"sequence": format_sequence(S), "group": G.spec()}
    if unmet:
        details["unmet"] = unmet
        return VerificationReport("corollary-decomposition", "skipped", details)
    rep = minimal_zero_sums(S, D)
    recombined = sequence(G)
    for T in rep.minimals:
        recombined = seq_mul(recombined, T)
    details.update(
        minimal_count=len(rep.minimals),
        pairwise_disjoint=rep.pairwise_disjoint,
        product=format_sequence(recombined),
    )
    ok = rep.pairwise_disjoint and recombined == S
    return VerificationReport(
        "corollary-decomposition", "pass" if ok else "fail", details,
        () if ok else (S,),
    )


def check_es_chain(S: Sequence, a: GroupElement, D: int) -> VerificationReport:
    """Removing one term of a zero-sum subsequence can only grow the
    extremal set: E(S) together with its translate by -a lands in the
    extremal set of S with one copy of a removed."""
    G = S.group
    a = elem_reduce(G, a)
    if S.multiplicity(G.zero()):
        raise ValueError("sequence must not contain zero")
    if len(S) < D:
        raise ValueError(f"needs |S| >= D = {D}, got {len(S)}")
    if not _attains_zero_bound(S, D):
        raise ValueError("zero must attain the count bound")
    if not S.multiplicity(a):
        raise ValueError(f"{a!r} is not a term of the sequence")
    rest = seq_div(S, sequence(G, {a: 1}))
    if elem_sub(G, G.zero(), a) not in subsums(rest):
        raise ValueError(f"{a!r} lies in no nonempty zero-sum subsequence")
    before = extremal_set(S, D).members
    after = extremal_set(rest, D).members
    target = before | {elem_sub(G, h, a) for h in before}
    details = {
        "sequence": format_sequence(S),
        "removed": format_sequence(sequence(G, {a: 1})),
        "extremal_before": len(before),
        "extremal_after": len(after),
        "inclusion": target <= after,
    }
    ok = target <= after
    return VerificationReport(
        "extremal-set-chain", "pass" if ok else "fail", details, () if ok else (S,)
    )


def max_subgroups_in_extremal_set(E: ExtremalSet, cap: int = 64):
    """Subgroups contained in the extremal set, maximal ones flagged.

    Any nontrivial subgroup sitting inside an extremal set must be
    elementary abelian of exponent 2, with the Davenport constant dropping
    by exactly its rank on the quotient; the verdict asserts both.
    """
    G = E.group
    contained = [H for H in all_subgroups(G, cap) if H.elements <= E.members]
    maximal = [
        H for H in contained
        if not any(H.elements < K.elements for K in contained)
    ]
    DG = davenport(G).value
    records = []
    ok = True
    for H in contained:
        if H.is_trivial():
            continue
        exponent_two = all(
            elem_order(G, x) == 2 for x in H.elements if x != G.zero()
        )
        rank_h = H.order.bit_length() - 1 if H.order & (H.order - 1) == 0 else None
        quotient, _ = quotient_group(G, H)
        DQ = davenport(quotient).value
        drop_matches = rank_h is not None and DG == DQ + rank_h
        ok = ok and exponent_two and drop_matches
        records.append({
            "subgroup_order": H.order,
            "exponent_two": exponent_two,
            "davenport_drop_matches_rank": drop_matches,
        })
    details = {
        "group": G.spec(),
        "contained": len(contained),
        "maximal": len(maximal),
        "nontrivial_records": records,
    }
    report = VerificationReport(
        "subgroup-in-extremal-set", "pass" if ok else "fail", details
    )
    return contained, report


def condition_profile(G: Group) -> ConditionProfile:
    """Check D(G) >= D(G/H) + 2 over every order-2 subgroup H (vacuously
    true for odd order), and record the length ceiling t."""
    DG = davenport(G).value
    offending = None
    for H in order_two_subgroups(G):
        quotient, _ = quotient_group(G, H)
        if DG < davenport(quotient).value + 2:
            offending = H
            break
    return ConditionProfile(G, offending is None, t_bound(G), offending)


def construct_unbounded_family(G: Group, H: Subgroup, k: int) -> Sequence:
    """Base sequence projecting to a minimal zero-sum sequence on G/H and
    summing to the order-2 element h, padded with k extra copies of h.

    Exists exactly when D(G) = D(G/H) + 1; every member attains the
    zero-count bound, so these groups carry extremal sequences of
    unbounded length.  The result is re-verified by exact counting before
    being returned.
    """
    _validate_subgroup(G, H)
    if H.order != 2:
        raise ValueError("H must have order 2")
    if k < 0:
        raise ValueError("k must be >= 0")
    (h,) = [x for x in H.elements if x != G.zero()]
    DG = davenport(G).value
    base = _family_base(G, H)
    result = seq_mul(base, sequence(G, {h: k})) if k else base
    cv = count_all(result)
    e = len(result) - DG + 1
    if not (cv.zero_count == cv[h] == 1 << e):
        raise RuntimeError("constructed sequence failed count verification")
    return result


@lru_cache(maxsize=None)
def _family_base(G: Group, H: Subgroup) -> Sequence:
    (h,) = [x for x in H.elements if x != G.zero()]
    quotient, project = quotient_group(G, H)
    DG = davenport(G).value
    DQ = davenport(quotient).value
    if DG != DQ + 1:
        raise ValueError(
            f"needs D(G) = D(G/H) + 1; got D({G}) = {DG}, D({quotient}) = {DQ}"
        )
    for S in iterate_multisets(G, DQ, exclude_zero=True):
        if seq_sum(S) != h:
            continue
        counts: dict[GroupElement, int] = {}
        for g, m in S.terms:
            q = project(g)
            counts[q] = counts.get(q, 0) + m
        if is_minimal_zero_sum(sequence(quotient, counts)):
            return S
    raise RuntimeError(
        f"no qualifying base of length {DQ} over {G}; "
        "this contradicts the construction and indicates a defect"
    )


def check_cyclic_characterization(n: int, max_len: int) -> VerificationReport:
    """Over a cyclic group of order n >= 3, the zero-free sequences whose
    zero count meets the bound are exactly the generator powers a^(n-1)
    and a^n; nothing longer qualifies.

    Sweeps every zero-free multiset up to max_len, and checks that one
    more copy of a generator overshoots: the zero count of a^(n+1) is
    1 + C(n+1, n) > 4.
    """
    if n < 3:
        raise ValueError("characterization needs n >= 3 (order 2 is degenerate)")
    if max_len < n + 1:
        raise ValueError(f"max_len must be at least n + 1 = {n + 1}")
    G = make_group([n])
    found = []
    for occ, counts in sweep_counts(G, max_len, min_length=n - 1, exclude_zero=True):
        e = len(occ) - n + 1
        if counts[0] == 1 << e:
            found.append(_seq_from_sorted(G, occ))
    generators = [a for a in range(1, n) if gcd(a, n) == 1]
    expected = {
        seq_key(sequence(G, {(a,): reps}))
        for a in generators
        for reps in (n - 1, n)
    }
    got = {seq_key(S) for S in found}
    overshoot_ok = True
    for a in generators:
        zc = count_all(sequence(G, {(a,): n + 1})).zero_count
        if zc != 1 + comb(n + 1, n) or zc <= 4:
            overshoot_ok = False
    ok = got == expected and overshoot_ok
    details = {
        "n": n,
        "max_len": max_len,
        "extremal_count": len(found),
        "expected_count": 2 * len(generators),
        "extremals": [format_sequence(S) for S in found],
        "generator_overshoot_ok": overshoot_ok,
    }
    return VerificationReport(
        "cyclic-characterization", "pass" if ok else "fail", details,
        tuple(found) if not ok else (),
    )
