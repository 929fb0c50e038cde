"""Brute-force reference computations, written straight from the definitions.

None of these reuse the bitmask machinery of the package; they work on plain
Python relations so that agreement between the two is meaningful.
"""
from __future__ import annotations

from itertools import product


def monotone_function_count(n: int) -> int:
    """Count monotone maps {0,1}^n → {0,1} by scanning all 2^(2^n) truth tables."""
    points = list(product((0, 1), repeat=n))
    below = [(a, b) for a in range(len(points)) for b in range(len(points))
             if a != b and all(x <= y for x, y in zip(points[a], points[b]))]
    count = 0
    for table in range(1 << len(points)):
        if all(not (table >> a & 1) or (table >> b & 1) for a, b in below):
            count += 1
    return count


def leq_table(elements, leq):
    return {(a, b): bool(leq(a, b)) for a in elements for b in elements}


def glb(elements, le, a, b):
    lower = [c for c in elements if le[(c, a)] and le[(c, b)]]
    best = [c for c in lower if all(le[(d, c)] for d in lower)]
    return best[0] if len(best) == 1 else None


def lub(elements, le, a, b):
    upper = [c for c in elements if le[(a, c)] and le[(b, c)]]
    best = [c for c in upper if all(le[(c, d)] for d in upper)]
    return best[0] if len(best) == 1 else None


def distributivity_violation(elements, leq):
    """First triple (x, y, z) with x∧(y∨z) != (x∧y)∨(x∧z), scanning all triples."""
    le = leq_table(elements, leq)
    for x in elements:
        for y in elements:
            for z in elements:
                lhs = glb(elements, le, x, lub(elements, le, y, z))
                rhs = lub(elements, le, glb(elements, le, x, y), glb(elements, le, x, z))
                if lhs != rhs:
                    return (x, y, z)
    return None


def meet_prime_by_pairs(L, p) -> bool:
    if p == L.top:
        return False
    return all(L.leq(x, p) or L.leq(y, p)
               for x in L for y in L if L.leq(L.meet(x, y), p))


def prime_filter_minima(L) -> list:
    """Elements a whose up-set is a proper filter with x∨y ∈ ↑a ⇒ x or y ∈ ↑a."""
    out = []
    for a in L:
        if a == L.bottom:
            continue
        if all(L.leq(a, x) or L.leq(a, y) for x in L for y in L if L.leq(a, L.join(x, y))):
            out.append(a)
    return out


def fiber_product(A, B, f, g):
    """{(a, b) | f(a) = g(b)} by enumerating the full product."""
    return {(a, b) for a in A for b in B if f[a] == g[b]}


def is_local_by_pairs(L) -> bool:
    if len(L) == 1:
        return False
    return all(L.meet(x, y) != L.bottom for x in L for y in L
               if x != L.bottom and y != L.bottom)


def ring_ideals_by_subsets(R):
    """Every ideal of a tiny ring, by testing all subsets containing 0."""
    n = len(R)
    out = []
    for mask in range(1 << n):
        if not mask & 1:
            continue
        members = [i for i in range(n) if mask >> i & 1]
        ok = all(mask >> int(R.add[a, b]) & 1 for a in members for b in members)
        ok = ok and all(mask >> int(R.neg[a]) & 1 for a in members)
        ok = ok and all(mask >> int(R.mul[r, a]) & 1 for a in members for r in range(n))
        if ok:
            out.append(frozenset(members))
    return out
