"""Extremal-sequence search and conjecture-falsification harnesses.

A zero-free sequence is extremal when its zero count equals the bound
2^(|S|-D+1) exactly.  The exhaustive search scans all zero-free multisets
up to a length cap; budgets are counted in sequences visited, never wall
time, so reports are machine-independent.  The randomized probe uses a
SplitMix64 stream (documented in the README) so catalogs reproduce
bit-for-bit across runs and implementations.

Harness passes always mean "no counterexample up to the stated cap".
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .groups import Group, GroupElement, all_elements, all_subgroups, d_star, elem_reduce
from .reports import VerificationReport
from .sequences import (
    Sequence,
    _seq_from_sorted,
    format_sequence,
    seq_key,
    seq_mul,
    seq_sum,
    sequence,
)
from .counting import (
    ExtremalSet,
    _extremal_members,
    count_all,
    sweep_counts,
    transform,
)
from .davenport import davenport, zero_sum_free_sequences
from .structure import condition_profile, minimal_zero_sums

DEFAULT_BUDGET = 2_000_000


@dataclass(frozen=True)
class ExtremalCatalog:
    group: Group
    D: int
    entries: tuple[tuple[Sequence, ExtremalSet], ...]
    max_length_found: int
    length_cap: int
    exhaustive: bool


def find_extremals(G: Group, length_cap: int,
                   budget: int = DEFAULT_BUDGET) -> ExtremalCatalog:
    """Scan every zero-free multiset up to the cap and record the extremal
    ones.  A blown budget yields a partial catalog flagged non-exhaustive."""
    D = davenport(G).value
    lo = max(D - 1, 0)
    entries = []
    visited = 0
    exhaustive = True
    for occ, counts in sweep_counts(G, length_cap, exclude_zero=True):
        visited += 1
        if visited > budget:
            exhaustive = False
            break
        length = len(occ)
        if length < lo:
            continue
        exponent = length - D + 1
        if counts[0] == 1 << exponent:
            S = _seq_from_sorted(G, occ)
            members = _extremal_members(G, counts, exponent)
            entries.append((S, ExtremalSet(G, members, exponent)))
    entries.sort(key=lambda pair: seq_key(pair[0]))
    max_length = max((len(S) for S, _ in entries), default=0)
    return ExtremalCatalog(G, D, tuple(entries), max_length, length_cap, exhaustive)


def _sub_multiset_with_sum(U: Sequence, g: GroupElement) -> Sequence | None:
    """Smallest (by length, then lexicographic) subsequence of U summing to g."""
    support = U.support()
    mults = [U.multiplicity(x) for x in support]
    best = None
    best_key = None
    for vector in product(*(range(m + 1) for m in mults)):
        T = sequence(U.group, dict(zip(support, vector)))
        if seq_sum(T) != g:
            continue
        key = seq_key(T)
        if best_key is None or key < best_key:
            best, best_key = T, key
    return best


def construct_extremal(G: Group, g: GroupElement, m: int,
                       budget: int = 200_000) -> Sequence:
    """A length-m sequence whose count at g is exactly 2^(m-D+1).

    Take a maximal zero-sum-free base U, a subsequence T of U summing to
    g, and pad T * (-(U T^{-1})) with zeros up to length m.  Bases are
    scanned in canonical order until one reaches g; if none does, that
    itself is reported, since a maximal base is expected to reach every
    element.
    """
    D = davenport(G).value
    g = elem_reduce(G, g)
    if m < D - 1:
        raise ValueError(f"length m = {m} is below D - 1 = {D - 1}")
    padding = sequence(G, {G.zero(): m - D + 1})
    scanned = 0
    for U in zero_sum_free_sequences(G, D - 1):
        scanned += 1
        if scanned > budget:
            raise ValueError(f"no (U, T) pair found within budget {budget}")
        T = _sub_multiset_with_sum(U, g)
        if T is None:
            continue
        S = seq_mul(transform(U, T), padding)
        if count_all(S)[g] != 1 << (m - D + 1):
            raise RuntimeError("constructed sequence failed count verification")
        return S
    raise ValueError(
        f"{g!r} is unreachable from every maximal zero-sum-free base over {G}; "
        "this contradicts expected subset-sum coverage"
    )


def conjecture1_harness(G: Group, length_cap: int,
                        budget: int = DEFAULT_BUDGET) -> VerificationReport:
    """On qualifying groups, every extremal sequence up to the cap must
    decompose into exactly |S|-D+1 pairwise disjoint minimal zero-sum
    subsequences.  Non-qualifying groups are flagged, not errored."""
    profile = condition_profile(G)
    details = {
        "group": G.spec(),
        "length_cap": length_cap,
        "qualifies": profile.cond_iii,
    }
    if not profile.cond_iii:
        details["reason"] = "an order-2 quotient drops the Davenport constant by only 1"
        return VerificationReport("conjecture-1", "skipped", details)
    D = davenport(G).value
    catalog = find_extremals(G, length_cap, budget)
    details["extremal_checked"] = len(catalog.entries)
    details["exhaustive"] = catalog.exhaustive
    for S, _ in catalog.entries:
        rep = minimal_zero_sums(S, D)
        expected = len(S) - D + 1
        if len(rep.minimals) != expected or not rep.pairwise_disjoint:
            details["counterexample"] = format_sequence(S)
            return VerificationReport("conjecture-1", "fail", details, (S,))
    details["result"] = "no counterexample up to cap"
    return VerificationReport("conjecture-1", "pass", details)


def conjecture2_harness(G: Group, length_cap: int,
                        budget: int = DEFAULT_BUDGET) -> VerificationReport:
    """Among zero-free sequences whose extremal set is nonempty and free of
    nontrivial subgroups, the length should never exceed d_star + rank.

    Reports the maximum qualifying length and verifies the designated
    tightness example prod e_i^(n_i): its length is exactly the bound and
    its zero count attains 2^(|S|-D+1).
    """
    D = davenport(G).value
    ds = d_star(G)
    rank = G.rank
    if D != ds + 1:
        raise ValueError(
            f"hypothesis requires D(G) = d_star + 1; got D = {D}, d_star = {ds}"
        )
    bound = ds + rank
    if length_cap < bound + 1:
        raise ValueError(f"length cap must be at least d_star + rank + 1 = {bound + 1}")
    nontrivial = [H for H in all_subgroups(G) if H.order > 1]
    lo = max(D - 1, 0)
    max_qualifying = None
    qualifying = 0
    violation = None
    visited = 0
    exhaustive = True
    for occ, counts in sweep_counts(G, length_cap, exclude_zero=True):
        visited += 1
        if visited > budget:
            exhaustive = False
            break
        length = len(occ)
        if length < lo:
            continue
        members = _extremal_members(G, counts, length - D + 1)
        if not members:
            continue
        if any(H.elements <= members for H in nontrivial):
            continue
        qualifying += 1
        if max_qualifying is None or length > max_qualifying:
            max_qualifying = length
        if length > bound and violation is None:
            violation = _seq_from_sorted(G, occ)
    witness = sequence(
        G,
        {
            tuple(1 if j == i else 0 for j in range(rank)): n
            for i, n in enumerate(G.invariants)
        },
    )
    witness_counts = count_all(witness)
    witness_exponent = len(witness) - D + 1
    witness_members = _extremal_members(G, witness_counts.counts, witness_exponent)
    details = {
        "group": G.spec(),
        "length_cap": length_cap,
        "bound": bound,
        "qualifying_sequences": qualifying,
        "max_qualifying_length": max_qualifying,
        "exhaustive": exhaustive,
        "witness": format_sequence(witness),
        "witness_length": len(witness),
        "witness_extremal": G.zero() in witness_members,
        "witness_qualifies": bool(witness_members)
        and not any(H.elements <= witness_members for H in nontrivial),
        "bound_attained": max_qualifying == bound,
    }
    if violation is not None:
        details["counterexample"] = format_sequence(violation)
        return VerificationReport("conjecture-2", "fail", details, (violation,))
    details["result"] = "no counterexample up to cap"
    return VerificationReport("conjecture-2", "pass", details)


_M64 = (1 << 64) - 1


def splitmix64(state: int) -> tuple[int, int]:
    """One SplitMix64 step: returns (next state, 64-bit output)."""
    state = (state + 0x9E3779B97F4A7C15) & _M64
    z = state
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _M64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _M64
    return state, z ^ (z >> 31)


def random_search(G: Group, length: int, trials: int, seed: int) -> ExtremalCatalog:
    """Sample zero-free multisets of a fixed length and keep the extremal
    hits.  Each trial draws `length` elements as splitmix64(seed) outputs
    reduced modulo the nonzero-element count; fixed seeds reproduce the
    catalog exactly."""
    if length < 0 or trials < 0:
        raise ValueError("length and trials must be >= 0")
    D = davenport(G).value
    allowed = all_elements(G)[1:]
    exponent = length - D + 1
    state = seed & _M64
    seen = set()
    hits = []
    for _ in range(trials):
        if not allowed:
            break
        occ = []
        for _ in range(length):
            state, value = splitmix64(state)
            occ.append(allowed[value % len(allowed)])
        occ.sort()
        key = tuple(occ)
        if key in seen:
            continue
        seen.add(key)
        if exponent < 0:
            continue
        S = _seq_from_sorted(G, key)
        counts = count_all(S)
        if counts.zero_count == 1 << exponent:
            members = _extremal_members(G, counts.counts, exponent)
            hits.append((S, ExtremalSet(G, members, exponent)))
    hits.sort(key=lambda pair: seq_key(pair[0]))
    max_length = max((len(S) for S, _ in hits), default=0)
    return ExtremalCatalog(G, D, tuple(hits), max_length, length, False)
