"""Presheaves on finite frames: sheaf condition, sheafification, stalks.

A presheaf assigns to every frame element a finite set (kind ``"set"``) or a
finite distributive lattice (kind ``"lattice"``), and to every pair a <= b a
restriction map sections(b) → sections(a), stored under the key ``(a, b)``.

Every element of a finite frame is compact and every directed family has a
largest member, so the sheaf condition reduces to two clauses: the value at
bottom is terminal, and every binary Mayer-Vietoris square is a pullback.
"""
from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass
from itertools import combinations
from typing import Mapping, Union

from .dlattice import DistLattice, LatticeMap, check_map, opposite
from .duality import join_irreducibles
from .errors import NotACover, NotAPoint, NotFunctorial, UnsupportedValueKind
from .report import Check, Report
from .ttlattice import RadLattice, _as_lattice, localize

Section = Union[frozenset, DistLattice]


def carrier(value: Section):
    return value.elements if isinstance(value, DistLattice) else sorted(value)


@dataclass(frozen=True, eq=False)
class FinitePresheaf:
    frame: DistLattice
    kind: str
    sections: Mapping[str, Section]
    restrictions: Mapping[tuple[str, str], Mapping[str, str]]

    def __post_init__(self):
        if self.kind not in ("set", "lattice"):
            raise UnsupportedValueKind(f"value kind must be 'set' or 'lattice', not {self.kind!r}")

    def restrict(self, a, b) -> Mapping[str, str]:
        """The restriction map sections(b) → sections(a) for a <= b."""
        try:
            return self.restrictions[(a, b)]
        except KeyError:
            raise NotFunctorial(f"no restriction map for {a!r} <= {b!r}") from None

    def with_entry(self, a, b, s, value) -> "FinitePresheaf":
        """Copy with a single restriction entry r_{a,b}(s) replaced."""
        table = dict(self.restrictions)
        changed = dict(table[(a, b)])
        changed[s] = value
        table[(a, b)] = changed
        return FinitePresheaf(self.frame, self.kind, self.sections, table)

    def cover_tables(self):
        """Restriction tables along cover pairs only (enough to rebuild F)."""
        return {(a, b): self.restrictions[(a, b)] for a, b in self.frame.covers()}

    def __eq__(self, other):
        if not isinstance(other, FinitePresheaf):
            return NotImplemented
        return (self.frame == other.frame and self.kind == other.kind
                and dict(self.sections) == dict(other.sections)
                and {k: dict(v) for k, v in self.restrictions.items()}
                == {k: dict(v) for k, v in other.restrictions.items()})


def from_cover_tables(frame: DistLattice, kind: str, sections, cover_maps) -> FinitePresheaf:
    """Build all restrictions by composing cover tables along canonical chains.

    For a < b the chain steps from a to its first upper cover below b.  Path
    independence is not assumed; :func:`check_functorial` tests it.
    """
    table = {(a, a): {s: s for s in carrier(sections[a])} for a in frame}
    for (a, b), m in cover_maps.items():
        table[(a, b)] = dict(m)
    pairs = [(a, b) for a in frame for b in frame.up(a) if a != b]
    pairs.sort(key=lambda ab: frame.height(ab[1]) - frame.height(ab[0]))
    for a, b in pairs:
        if (a, b) in table:
            continue
        c = next(c for c in frame.upper_covers(a) if frame.leq(c, b))
        first, second = table[(a, c)], table[(c, b)]
        # a partial cover table leaves gaps that check_functorial reports
        table[(a, b)] = {s: first[t] for s, t in second.items() if t in first}
    return FinitePresheaf(frame, kind, dict(sections), table)


def check_functorial(F: FinitePresheaf) -> None:
    """Raise NotFunctorial unless F is a functor on the frame's opposite.

    Checks totality of every restriction, identities, composition (through
    every upper cover, which implies all composites) and, for lattice values,
    that restrictions along covers are lattice maps.
    """
    L = F.frame
    for a in L:
        if a not in F.sections:
            raise NotFunctorial(f"no sections over {a!r}")
    for a in L:
        A = F.sections[a]
        covers_of_a = set(L.upper_covers(a))
        for b in L.up(a):
            r = F.restrict(a, b)
            src = carrier(F.sections[b])
            if set(r) != set(src):
                raise NotFunctorial(f"restriction ({a}, {b}) is not total on sections({b})")
            tgt = set(carrier(A))
            for s, t in r.items():
                if t not in tgt:
                    raise NotFunctorial(f"restriction ({a}, {b}) sends {s!r} outside sections({a})")
            if a == b and any(s != t for s, t in r.items()):
                raise NotFunctorial(f"restriction along {a} <= {a} is not the identity")
            # composites of lattice maps are lattice maps, so covers suffice
            if F.kind == "lattice" and b in covers_of_a:
                rep = check_map(LatticeMap(F.sections[b], A, r))
                if not rep.ok:
                    bad = rep.findings[0]
                    raise NotFunctorial(f"restriction ({a}, {b}) is not a lattice map: "
                                        f"{bad.message}")
    for a in L:
        for c in L.up(a):
            if c == a:
                continue
            rac = F.restrict(a, c)
            for b in L.upper_covers(a):
                if b == c or not L.leq(b, c):
                    continue
                rab, rbc = F.restrict(a, b), F.restrict(b, c)
                for s, t in rac.items():
                    if rab[rbc[s]] != t:
                        raise NotFunctorial(
                            f"restrictions do not compose: {a} <= {b} <= {c} at {s!r}")


def _square(F: FinitePresheaf, u, v, top, bottom):
    """Test sections(top) → sections(u) ×_{sections(bottom)} sections(v).

    Returns None when it is a bijection onto the fiber product, else a
    description of the failure.
    """
    ru, rv = F.restrict(u, top), F.restrict(v, top)
    bu, bv = F.restrict(bottom, u), F.restrict(bottom, v)
    image = {}
    for s in carrier(F.sections[top]):
        pair = (ru[s], rv[s])
        if bu[pair[0]] != bv[pair[1]]:
            return f"section {s!r} over {top} restricts to an incompatible pair {pair}"
        if pair in image:
            return f"sections {image[pair]!r} and {s!r} over {top} have the same restrictions {pair}"
        image[pair] = s
    left = Counter(bu[x] for x in carrier(F.sections[u]))
    right = Counter(bv[y] for y in carrier(F.sections[v]))
    size = sum(left[k] * right[k] for k in left)
    if size != len(image):
        for x in carrier(F.sections[u]):
            for y in carrier(F.sections[v]):
                if bu[x] == bv[y] and (x, y) not in image:
                    return (f"compatible pair {(x, y)} over {u}, {v} does not glue: "
                            f"{len(image)} sections vs fiber product of {size}")
    return None


def check_sheaf(F: FinitePresheaf) -> Report:
    """Report every failure of the sheaf condition on a finite frame.

    (a) the value at bottom is terminal; (b) every Mayer-Vietoris square for
    incomparable u, v is a pullback (comparable pairs hold by functoriality);
    (c) directed joins are vacuous on a finite frame.
    """
    check_functorial(F)
    L = F.frame
    rep = Report()
    if len(carrier(F.sections[L.bottom])) != 1:
        rep.add("a", f"sections over bottom has {len(carrier(F.sections[L.bottom]))} "
                     f"elements, expected 1", L.bottom)
    for u, v in combinations(L.elements, 2):
        if L.leq(u, v) or L.leq(v, u):
            continue
        problem = _square(F, u, v, L.join(u, v), L.meet(u, v))
        if problem:
            rep.add("b", problem, (u, v))
    # (c): every directed subset of a finite frame contains its join
    return rep


def structure_presheaf(R) -> FinitePresheaf:
    """I ↦ L_{I/} with restriction a ↦ a ∨ J for I <= J.

    The frame is the opposite lattice: a larger ideal is a smaller open.
    """
    L = _as_lattice(R)
    frame = opposite(L)
    sections = {I: L.interval_up(I) for I in L}
    table = {}
    for I in L:
        for J in L.up(I):
            table[(J, I)] = {a: L.join(a, J) for a in sections[I]}
    return FinitePresheaf(frame, "lattice", sections, table)


def mv_pullback_check(L, x, y) -> Check:
    """Test z ↦ (z∨x, z∨y) : L_{x∧y/} ≅ L_{x/} ×_{L_{x∨y/}} L_{y/}, inverse (u, v) ↦ u∧v."""
    L = _as_lattice(L)
    xi, yi = L.index(x), L.index(y)
    b = L._meet(xi, yi)
    above_b = [k for k in range(len(L)) if L._leq(b, k)]
    above_x = [k for k in range(len(L)) if L._leq(xi, k)]
    above_y = [k for k in range(len(L)) if L._leq(yi, k)]
    fiber = {(u, v) for u in above_x for v in above_y
             if L._join(u, yi) == L._join(v, xi)}
    E = L.elements
    for z in above_b:
        pair = (L._join(z, xi), L._join(z, yi))
        if pair not in fiber:
            return Check(False, ("outside fiber product", E[z]))
        if L._meet(*pair) != z:
            return Check(False, ("not a retraction", E[z]))
    for u, v in fiber:
        z = L._meet(u, v)
        if not L._leq(b, z) or (L._join(z, xi), L._join(z, yi)) != (u, v):
            return Check(False, ("not a section", (E[u], E[v])))
    return Check(True, len(fiber))


def _families(F, points, a, frame):
    """Compatible families over the points below a, in point order."""
    below = [j for j in points if frame.leq(j, a)]
    out = [()]
    for k, j in enumerate(below):
        nxt = []
        for fam in out:
            for s in carrier(F.sections[j]):
                ok = True
                for jj, t in zip(below[:k], fam):
                    if frame.leq(jj, j) and F.restrict(jj, j)[s] != t:
                        ok = False
                        break
                    if frame.leq(j, jj) and F.restrict(j, jj)[t] != s:
                        ok = False
                        break
                if ok:
                    nxt.append(fam + (s,))
        out = nxt
    return below, out


def _labeller(below, families, a):
    """Readable, collision-free labels for the compatible families over a.

    When a is itself a point the family is determined by its value at a and
    keeps that label; otherwise families print as tuples.
    """
    if below and below[-1] == a:
        return lambda fam: fam[-1]
    labels = {fam: "(" + ", ".join(fam) + ")" for fam in families}
    if len(set(labels.values())) == len(labels):
        return labels.__getitem__
    return lambda fam: json.dumps(list(fam), ensure_ascii=False)


def sheafify(F: FinitePresheaf) -> FinitePresheaf:
    """Sections over a become compatible families of stalks at points below a.

    Points of the frame are its join-irreducibles j (the prime filters ↑j);
    the stalk at j is the value at j, the least element whose open contains
    the point.
    """
    if F.kind != "set":
        raise UnsupportedValueKind("sheafification is implemented for set-valued presheaves only")
    check_functorial(F)
    frame = F.frame
    points = list(join_irreducibles(frame).elements)
    fams = {a: _families(F, points, a, frame) for a in frame}
    names = {a: _labeller(*fams[a], a) for a in frame}
    sections = {a: frozenset(names[a](f) for f in fams[a][1]) for a in frame}
    table = {}
    for a in frame:
        below_a = fams[a][0]
        for b in frame.up(a):
            below_b, fam_b = fams[b]
            keep = [below_b.index(j) for j in below_a]
            table[(a, b)] = {names[b](f): names[a](tuple(f[k] for k in keep)) for f in fam_b}
    return FinitePresheaf(frame, "set", sections, table)


def sheafification_unit(F: FinitePresheaf) -> dict[str, dict[str, str]]:
    """The canonical map F → sheafify(F), as one dict per frame element."""
    frame = F.frame
    points = list(join_irreducibles(frame).elements)
    unit = {}
    for a in frame:
        below, families = _families(F, points, a, frame)
        name = _labeller(below, families, a)
        unit[a] = {s: name(tuple(F.restrict(j, a)[s] for j in below))
                   for s in carrier(F.sections[a])}
    return unit


def stalk_at(F: FinitePresheaf, p: str):
    """Sections over the least frame element whose open contains the point p."""
    if p not in F.frame or p not in join_irreducibles(F.frame):
        raise NotAPoint(f"{p!r} is not a point (join-irreducible) of the frame")
    return F.sections[p]


def binary_descent_check(L, I, J, F: FinitePresheaf, base=None) -> Check:
    """Is F(K) → F(I) ×_{F(I∨J)} F(J) a bijection for the cover {I, J} of L_{K/}?

    I, J and K are ideals (elements of L); F is indexed by ideals, with the
    restriction from K to a larger ideal I stored under ``(I, K)``, as
    produced by :func:`structure_presheaf`.  K defaults to I ∧ J.
    """
    L = _as_lattice(L)
    K = L.meet(I, J) if base is None else base
    if not (L.leq(K, I) and L.leq(K, J)) or L.meet(I, J) != K:
        raise NotACover(f"{{{I}, {J}}} is not a cover of L_{{{K}/}}")
    overlap = L.join(I, J)
    problem = _square(F, I, J, K, overlap)
    return Check(problem is None, problem)
