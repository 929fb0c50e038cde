"""Reproducible corpora of posets, lattices, presentations, spaces and rings.

These feed the property suites and the command line; every random family is
driven by an explicit ``random.Random`` so runs are repeatable.
"""
from __future__ import annotations

import random
from itertools import permutations, product

from .dlattice import (
    DistLattice,
    LatticeMap,
    Poset,
    boolean_lattice,
    build_lattice,
    chain,
    free_dlattice,
    order_isomorphism,
    set_label,
)
from .duality import SpectralSpace, downset_lattice, prime_filters, spectral_space_of
from .formats import parse_presentation
from .ring_oracle import poly_quotient, product as ring_product, zmod
from .ttlattice import ONE, ZERO, Gen, Rel, Shift, Sum, Tensor, TTPresentation, realize

# --------------------------------------------------------------------- posets


def labelled_posets(n: int):
    """Naturally labelled posets on 0..n-1 as tuples of strict down-set masks.

    Element k may only lie above elements with smaller labels, so each poset
    is built by giving the newest element a down-closed set of predecessors.
    """
    if n == 0:
        yield ()
        return
    for smaller in labelled_posets(n - 1):
        closed = [m | (1 << i) for i, m in enumerate(smaller)]
        for mask in range(1 << (n - 1)):
            if all(closed[i] & ~mask == 0 for i in range(n - 1) if mask >> i & 1):
                yield smaller + (mask,)


def _canonical(strict, n):
    best = None
    for perm in permutations(range(n)):
        pos = [0] * n
        for new, old in enumerate(perm):
            pos[old] = new
        rel = sorted((pos[i], pos[j]) for j in range(n) for i in range(n) if strict[j] >> i & 1)
        key = tuple(rel)
        if best is None or key < best:
            best = key
    return best


def _poset_from_strict(strict, names=None):
    n = len(strict)
    names = names or [f"p{i}" for i in range(n)]
    pairs = [(names[i], names[j]) for j in range(n) for i in range(n) if strict[j] >> i & 1]
    pairs += [(a, a) for a in names]
    return Poset(names, pairs)


def posets_up_to_iso(n: int) -> list[Poset]:
    """One representative per isomorphism class of n-element posets."""
    seen = {}
    for strict in labelled_posets(n):
        key = _canonical(strict, n)
        seen.setdefault(key, strict)
    return [_poset_from_strict(s) for s in seen.values()]


def random_poset(rng: random.Random, n: int) -> Poset:
    strict = []
    for k in range(n):
        mask = 0
        for i in range(k):
            if rng.random() < 0.35:
                mask |= (1 << i) | strict[i]
        strict.append(mask)
    return _poset_from_strict(tuple(strict))


def _downset_count(strict, limit):
    n = len(strict)
    count = 0
    for mask in range(1 << n):
        if all(strict[i] & ~mask == 0 for i in range(n) if mask >> i & 1):
            count += 1
            if count > limit:
                break
    return count


def posets_with_few_downsets(limit: int) -> list[Poset]:
    """One poset per isomorphism class among those with at most ``limit`` down-sets.

    Adding an element never lowers the down-set count, so naturally labelled
    posets are grown one element at a time and pruned as soon as they exceed it.
    """
    found: dict[tuple, list] = {}
    layer = [()]
    while layer:
        nxt = []
        for strict in layer:
            if _downset_count(strict, limit) > limit:
                continue
            P = _poset_from_strict(strict)
            key = (len(strict), tuple(sorted(bin(m).count("1") for m in strict)))
            bucket = found.setdefault(key, [])
            if not any(order_isomorphism(P, Q) is not None for Q in bucket):
                bucket.append(P)
            n = len(strict)
            closed = [m | (1 << i) for i, m in enumerate(strict)]
            for mask in range(1 << n):
                if all(closed[i] & ~mask == 0 for i in range(n) if mask >> i & 1):
                    nxt.append(strict + (mask,))
        layer = nxt
    return [P for bucket in found.values() for P in bucket]


def small_distributive_lattices(max_size: int) -> list[DistLattice]:
    """Every distributive lattice with at most ``max_size`` elements, up to isomorphism."""
    return sorted((downset_lattice(P) for P in posets_with_few_downsets(max_size)), key=len)


# ------------------------------------------------------------------- lattices

EXHAUSTIVE_LATTICE_SIZE = 10


def corpus_lattices(max_size: int = 20) -> list[DistLattice]:
    """Distributive lattices up to ``max_size`` elements from several families.

    Includes every distributive lattice with at most 10 elements (up to
    isomorphism), the down-set lattice of every poset with at most 5 elements,
    chains, Boolean lattices, free lattices and the realized sample
    presentations.  Families overlap up to isomorphism but label elements
    differently.
    """
    out = small_distributive_lattices(min(max_size, EXHAUSTIVE_LATTICE_SIZE))
    for n in range(6):
        for P in posets_up_to_iso(n):
            L = downset_lattice(P)
            if len(L) <= max_size:
                out.append(L)
    out += [chain(k) for k in range(1, max_size + 1)]
    out += [boolean_lattice([f"a{i}" for i in range(k)]) for k in range(5) if 2 ** k <= max_size]
    out += [F for F, _ in (free_dlattice(n) for n in range(4)) if len(F) <= max_size]
    out += [R.lattice for R in (realize(P) for P in sample_presentations())
            if len(R.lattice) <= max_size]
    return out


def corpus_spaces(max_points: int = 6, seed: int = 0) -> list[SpectralSpace]:
    """Finite spectral spaces: every poset with at most 5 points, random 6-point
    ones, and the Stone spaces of small corpus lattices."""
    rng = random.Random(seed)
    spaces = []
    posets = [P for n in range(min(max_points, 5) + 1) for P in posets_up_to_iso(n)]
    if max_points >= 6:
        posets += [random_poset(rng, 6) for _ in range(40)]
    for P in posets:
        basis = frozenset(P.downsets())
        spaces.append(SpectralSpace(P, "down", basis))
    for L in corpus_lattices(20):
        X = spectral_space_of(L)
        if len(X) <= max_points:
            spaces.append(X)
    return spaces


# -------------------------------------------------------------- presentations

SAMPLE_PRESENTATIONS = [
    "gens ;",
    "gens x;",
    "gens x; rel x = 0;",
    "gens x; rel x = 1;",
    "gens x; rel S(x) = x;",
    "gens x, y;",
    "gens x, y; rel x * y = 0;",
    "gens x, y; rel x <= y;",
    "gens x, y; rel x + y = 1;",
    "gens x, y; rel x * y = 0; rel x + y = 1;",
    "gens x, y, z;",
    "gens x, y, z; rel x * y = 0; rel y * z = 0;",
    "gens x, y, z; rel x <= y; rel y <= z;",
    "gens x, y, z; rel x + y = z;",
    "gens x, y, z, w; rel x * y = 0; rel z * w = 0;",
    "gens x, y, z, w; rel x <= y; rel z <= w; rel x + z = 1;",
    "gens x, y; rel 1 = 0;",
]


def sample_presentations() -> list[TTPresentation]:
    return [parse_presentation(t) for t in SAMPLE_PRESENTATIONS]


def random_expression(rng: random.Random, gens, depth: int = 2):
    if depth == 0 or rng.random() < 0.35:
        leaves = [Gen(g) for g in gens]
        if not leaves or rng.random() < 0.15:
            leaves += [ZERO, ONE]
        return rng.choice(leaves)
    r = rng.random()
    if r < 0.1:
        return Shift(random_expression(rng, gens, depth - 1))
    op = Tensor if r < 0.55 else Sum
    return op(random_expression(rng, gens, depth - 1), random_expression(rng, gens, depth - 1))


def random_presentation(rng: random.Random, max_gens: int = 4, max_rels: int = 4) -> TTPresentation:
    k = rng.randint(1, max_gens)
    gens = tuple("xyzw"[:k]) if k <= 4 else tuple(f"g{i}" for i in range(k))
    rels = []
    for _ in range(rng.randint(0, max_rels)):
        kind = rng.choice(["=", "<="])
        rels.append(Rel(random_expression(rng, gens), random_expression(rng, gens), kind))
    return TTPresentation(gens, tuple(rels))


def random_frame_map(rng: random.Random, L: DistLattice) -> LatticeMap:
    """A random lattice map out of L, composed from simple building blocks.

    Blocks: a ↦ a ∨ I onto L_{I/}, a ↦ a ∧ J onto ↓J, and the character map
    into the Boolean lattice of subsets of some prime filters.
    """
    source = L
    current = {a: a for a in L}
    target = L
    for _ in range(rng.randint(0, 2)):
        if len(target) <= 1:
            break
        I = rng.choice(target.elements)
        if rng.random() < 0.5:
            nxt = target.interval_up(I)
            step = {a: target.join(a, I) for a in target}
        else:
            below = [a for a in target if target.leq(a, I)]
            nxt = build_lattice(below, lambda a, b: target.leq(a, b))
            step = {a: target.meet(a, I) for a in target}
        current = {a: step[current[a]] for a in source}
        target = nxt
    if rng.random() < 0.5 and len(target) > 1:
        pts = prime_filters(target)
        chosen = [p for p in pts if rng.random() < 0.7] or pts[:1]
        B = boolean_lattice(chosen)
        step = {a: set_label({p for p in chosen if target.leq(p, a)}, chosen) for a in target}
        current = {a: step[current[a]] for a in source}
        target = B
    return LatticeMap(source, target, current)


# ---------------------------------------------------------------------- rings

PRODUCT_RING_CAP = 900


def ring_corpus():
    """(ring, cap) pairs: Z/n for n <= 200, Z/m x Z/n for m <= n <= 30 and
    F_p[x]/(f) for monic f of degree 1 to 3 over p in {2, 3, 5}."""
    for n in range(1, 201):
        yield zmod(n), 256
    small = {n: zmod(n) for n in range(1, 31)}
    for m in range(1, 31):
        for n in range(m, 31):
            yield ring_product(small[m], small[n]), PRODUCT_RING_CAP
    for p in (2, 3, 5):
        for d in (1, 2, 3):
            for low in product(range(p), repeat=d):
                yield poly_quotient(p, list(low) + [1]), 256
