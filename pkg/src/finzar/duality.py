"""Birkhoff/Stone duality for finite distributive lattices and Hochster duality.

A finite spectral space is a finite T0 Alexandrov space, so it is stored as a
poset of points plus an orientation flag saying whether the open sets are the
down-sets (``"down"``) or the up-sets (``"up"``) of the stored order.  Spaces
built here use ``"down"``; the Balmer spectrum in :mod:`finzar.ttlattice`
uses ``"up"``.  :meth:`SpectralSpace.reoriented` switches between the two
descriptions of the same topology by reversing the stored order.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from .dlattice import (
    DistLattice,
    Poset,
    _heights,
    _up_from_down,
    bits,
    order_isomorphism,
    set_label,
)


@dataclass(frozen=True)
class SpectralSpace:
    points: Poset
    orientation: str
    basis: frozenset

    def __post_init__(self):
        if self.orientation not in ("down", "up"):
            raise ValueError(f"orientation must be 'down' or 'up', not {self.orientation!r}")
        for U in self.basis:
            if not self.is_open(U):
                raise ValueError(f"basis set {sorted(U)} is not open")

    def __len__(self):
        return len(self.points)

    def is_open(self, subset) -> bool:
        subset = frozenset(subset)
        if self.orientation == "down":
            return self.points.is_downset(subset)
        return self.points.is_upset(subset)

    def label(self, subset) -> str:
        return set_label(subset, self.points.elements)

    @cached_property
    def opens(self) -> DistLattice:
        """All open sets under inclusion, labelled ``{p,q}``."""
        P = self.points if self.orientation == "down" else self.points.reversed()
        return downset_lattice(P, order=self.points.elements)

    def open_sets(self):
        P = self.points if self.orientation == "down" else self.points.reversed()
        return P.downsets()

    def reoriented(self) -> "SpectralSpace":
        """Same topology, stored with the reversed order and the other flag."""
        flip = "up" if self.orientation == "down" else "down"
        return SpectralSpace(self.points.reversed(), flip, self.basis)

    def normalized(self) -> "SpectralSpace":
        return self if self.orientation == "down" else self.reoriented()

    def specialization_covers(self):
        """Cover pairs of the order in which opens are down-sets."""
        return self.normalized().points.covers()


# ------------------------------------------------------------- Birkhoff side

def join_irreducibles(L: DistLattice) -> Poset:
    """Elements with exactly one lower cover, with the induced order."""
    return L.poset().subposet(L.elements[i] for i in bits(L._join_irreducible_mask()))


def meet_irreducibles(L: DistLattice) -> Poset:
    return L.poset().subposet(L.elements[i] for i in bits(L._meet_irreducible_mask()))


def downset_lattice(P: Poset, order=None) -> DistLattice:
    """Down-closed subsets of ``P`` under inclusion; bottom ∅, top P.

    Labels list members in ``order`` (default: P's element order).
    """
    order = order if order is not None else P.elements
    sets = P.downsets()
    labels = [set_label(s, order) for s in sets]
    index = {s: k for k, s in enumerate(sets)}
    down = [0] * len(sets)
    for k, s in enumerate(sets):
        for t, m in index.items():
            if t <= s:
                down[k] |= 1 << m
    up = _up_from_down(down)
    return DistLattice._assemble(labels, down, up, [len(s) for s in sets],
                                 check=len(sets) <= 400)


def birkhoff_unit(P: Poset) -> dict[str, str]:
    """p ↦ ↓p, the isomorphism P ≅ J(downset_lattice(P))."""
    return {p: set_label(P.down(p), P.elements) for p in P}


def birkhoff_counit(L: DistLattice) -> dict[str, str]:
    """x ↦ {j ∈ J(L) | j <= x}, the isomorphism L ≅ downset_lattice(J(L))."""
    J = join_irreducibles(L)
    return {x: set_label({j for j in J if L.leq(j, x)}, J.elements) for x in L}


# ---------------------------------------------------------------- Stone side

def prime_filters(L: DistLattice) -> list[str]:
    """Minimum elements a of the prime filters ↑a, in canonical order.

    Every filter of a finite lattice is principal, so the scan runs over the
    principal up-sets.  ↑a is prime iff it is proper and its complement is
    closed under joins; the complement is a down-set, so that holds iff the
    join of the whole complement stays outside ↑a.
    """
    out = []
    for i in range(1, len(L)):
        up = L._up[i]
        outside = 0
        for k in range(len(L)):
            if not up >> k & 1:
                outside = L._join(outside, k)
        if not up >> outside & 1:
            out.append(L.elements[i])
    return out


def spectral_space_of(L: DistLattice) -> SpectralSpace:
    """Points are the prime filters of L; the open of a is {F | a ∈ F}.

    A point is labelled by the minimum of its filter.  Stored order: F_p <= F_q
    iff F_p ⊇ F_q, which is p <= q in L; opens are down-sets (``"down"``).
    """
    pts = prime_filters(L)
    P = L.poset().subposet(pts)
    basis = frozenset(frozenset(p for p in pts if L.leq(p, a)) for a in L)
    return SpectralSpace(P, "down", basis)


def basic_open_of(L: DistLattice, X: SpectralSpace, a: str) -> frozenset:
    return frozenset(p for p in X.points if L.leq(p, a))


def hochster_dual(X: SpectralSpace) -> SpectralSpace:
    """Same points, reversed specialization; opens are complements of opens of X."""
    pts = frozenset(X.points.elements)
    return SpectralSpace(X.points.reversed(), X.orientation,
                         frozenset(pts - U for U in X.basis))


def homeomorphism(X: SpectralSpace, Y: SpectralSpace, *, match_basis=True):
    """A point bijection X → Y carrying opens onto opens, or None.

    With ``match_basis`` the bijection must also carry the basis of X onto the
    basis of Y.  The identity on labels is tried before a search.
    """
    A, B = X.normalized(), Y.normalized()
    if len(A) != len(B):
        return None

    def good(phi):
        for a in A.points:
            for b in A.points:
                if A.points.leq(a, b) != B.points.leq(phi[a], phi[b]):
                    return False
        if match_basis:
            image = frozenset(frozenset(phi[p] for p in U) for U in A.basis)
            if image != B.basis:
                return False
        return True

    if set(A.points.elements) == set(B.points.elements):
        ident = {p: p for p in A.points}
        if good(ident):
            return ident
    phi = order_isomorphism(A.points, B.points)
    if phi is None:
        return None
    if good(phi):
        return phi
    if not match_basis:
        return None
    # different order isomorphisms may disagree on the basis; fall back to search
    from itertools import permutations
    if len(A) > 8:
        return None
    for perm in permutations(B.points.elements):
        phi = dict(zip(A.points.elements, perm))
        if good(phi):
            return phi
    return None
