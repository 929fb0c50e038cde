"""Presented tensor lattices: the radical-ideal lattice of a rigid 2-ring.

Objects are written as expressions over generators with ``*`` (tensor),
``+`` (sum), ``S(...)`` (suspension) and the constants ``0`` and ``1``.
Taking radicals sends tensor to meet, sum to join, suspension to the identity,
0 to bottom and 1 to top, so a presentation realizes as a quotient of the free
distributive lattice on its generators.

The Balmer spectrum ``spc`` has the proper meet-prime elements as points,
ordered by the lattice order, with opens the up-sets; the basic open of an
object a is ``U(a) = {p | [a] <= p}``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Union

from .dlattice import (
    DEFAULT_GENERATOR_CAP,
    DistLattice,
    LatticeMap,
    bits,
    free_dlattice,
    opposite,
    quotient,
)
from .duality import SpectralSpace, spectral_space_of
from .errors import ElementNotFound, NotAPoint, UnknownSymbol
from .report import Check

# -------------------------------------------------------------- expressions


@dataclass(frozen=True)
class Gen:
    name: str

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class Const:
    value: int

    def __str__(self):
        return str(self.value)


ZERO = Const(0)
ONE = Const(1)


@dataclass(frozen=True)
class Tensor:
    left: "ObjExpr"
    right: "ObjExpr"

    def __str__(self):
        return f"{_wrap(self.left, 2)} * {_wrap(self.right, 3)}"


@dataclass(frozen=True)
class Sum:
    left: "ObjExpr"
    right: "ObjExpr"

    def __str__(self):
        return f"{_wrap(self.left, 1)} + {_wrap(self.right, 2)}"


@dataclass(frozen=True)
class Shift:
    arg: "ObjExpr"

    def __str__(self):
        return f"S({self.arg})"


ObjExpr = Union[Gen, Const, Tensor, Sum, Shift]


def _prec(e):
    return 1 if isinstance(e, Sum) else 2 if isinstance(e, Tensor) else 3


def _wrap(e, prec):
    # operators associate to the left, so a right operand of equal precedence
    # keeps its parentheses
    s = str(e)
    return f"({s})" if _prec(e) < prec else s


def subexpressions(e: ObjExpr):
    """All subexpressions of ``e`` (including e), children first."""
    if isinstance(e, (Tensor, Sum)):
        yield from subexpressions(e.left)
        yield from subexpressions(e.right)
    elif isinstance(e, Shift):
        yield from subexpressions(e.arg)
    yield e


def symbols(e: ObjExpr):
    return {s.name for s in subexpressions(e) if isinstance(s, Gen)}


def tensor_all(parts):
    parts = list(parts)
    if not parts:
        return ONE
    acc = parts[0]
    for p in parts[1:]:
        acc = Tensor(acc, p)
    return acc


def sum_all(parts):
    parts = list(parts)
    if not parts:
        return ZERO
    acc = parts[0]
    for p in parts[1:]:
        acc = Sum(acc, p)
    return acc


# ------------------------------------------------------------- presentations


@dataclass(frozen=True)
class Rel:
    """``lhs = rhs`` (kind ``"="``) or ``lhs <= rhs`` (kind ``"<="``)."""

    lhs: ObjExpr
    rhs: ObjExpr
    kind: str = "="
    loc: tuple | None = field(default=None, compare=False)

    def __str__(self):
        return f"{self.lhs} {self.kind} {self.rhs}"


@dataclass(frozen=True)
class TTPresentation:
    generators: tuple[str, ...]
    relations: tuple[Rel, ...] = ()

    def __post_init__(self):
        known = set(self.generators)
        for r in self.relations:
            for side in (r.lhs, r.rhs):
                for s in symbols(side):
                    if s not in known:
                        line, col = r.loc if r.loc else (None, None)
                        raise UnknownSymbol(s, line, col)

    def __str__(self):
        lines = [f"gens {', '.join(self.generators)};"]
        lines += [f"rel {r};" for r in self.relations]
        return "\n".join(lines)


@dataclass(frozen=True)
class RadLattice:
    """A realized lattice with the image of each generator."""

    lattice: DistLattice
    gen_image: dict

    def radical(self, e: ObjExpr) -> str:
        """The lattice element of an object expression."""
        L = self.lattice
        if isinstance(e, Gen):
            try:
                return self.gen_image[e.name]
            except KeyError:
                raise UnknownSymbol(e.name) from None
        if isinstance(e, Const):
            return L.top if e.value else L.bottom
        if isinstance(e, Tensor):
            return L.meet(self.radical(e.left), self.radical(e.right))
        if isinstance(e, Sum):
            return L.join(self.radical(e.left), self.radical(e.right))
        if isinstance(e, Shift):
            return self.radical(e.arg)
        raise TypeError(f"not an object expression: {e!r}")

    def representative(self, x: str) -> ObjExpr:
        """An object expression whose radical is ``x``.

        Builds a join of meets over the generators below x; only valid because
        the generator images generate the lattice.
        """
        L = self.lattice
        if x == L.bottom:
            return ZERO
        gens = list(self.gen_image)
        if len(gens) > 8:
            raise ValueError("representatives are only built for small presentations")
        terms = []
        # every element is a join of meets of generators (plus bounds)
        from itertools import combinations
        for r in range(0, len(gens) + 1):
            for combo in combinations(gens, r):
                m = L.meet_all(self.gen_image[g] for g in combo)
                if L.leq(m, x):
                    if not any(set(t) <= set(combo) for t in terms):
                        terms.append(combo)
        expr = sum_all(tensor_all(Gen(g) for g in t) for t in terms)
        assert self.radical(expr) == x, "generator images do not generate the lattice"
        return expr

    def generates(self) -> bool:
        """True iff the generator images generate the lattice under ∧, ∨, ⊥, ⊤."""
        L = self.lattice
        have = {L.bottom, L.top} | set(self.gen_image.values())
        frontier = list(have)
        while frontier:
            new = set()
            for a in frontier:
                for b in list(have):
                    for c in (L.meet(a, b), L.join(a, b)):
                        if c not in have:
                            new.add(c)
            have |= new
            frontier = list(new)
        return len(have) == len(L)


def _as_lattice(L):
    return L.lattice if isinstance(L, RadLattice) else L


# ----------------------------------------------------------------- operations

def realize(P: TTPresentation, cap: int = DEFAULT_GENERATOR_CAP) -> RadLattice:
    """Free distributive lattice on the generators modulo the relations."""
    F, emb = free_dlattice(len(P.generators), names=P.generators, cap=cap)
    free = RadLattice(F, emb)
    relations = []
    for r in P.relations:
        a, b = free.radical(r.lhs), free.radical(r.rhs)
        relations.append((a, b))
        if r.kind == "=":
            relations.append((b, a))
        elif r.kind != "<=":
            raise ValueError(f"unknown relation kind {r.kind!r}")
    # pairwise closure is quadratic in |F|; large free lattices use the point method
    method = "closure" if len(F) <= 200 else "birkhoff"
    Q, proj = quotient(F, relations, method=method)
    return RadLattice(Q, {g: proj(emb[g]) for g in P.generators})


def meet_primes(L) -> list[str]:
    """Proper meet-prime elements in canonical order.

    In a distributive lattice these are exactly the elements with a single
    upper cover.
    """
    L = _as_lattice(L)
    return [L.elements[i] for i in bits(L._meet_irreducible_mask())]


def is_meet_prime(L, p) -> bool:
    """Direct test: p != top and x∧y <= p implies x <= p or y <= p."""
    L = _as_lattice(L)
    i = L.index(p)
    if i == len(L) - 1:
        return False
    below = L._down[i]
    # the complement of ↓p is an up-set; it is meet-closed iff its meet stays outside
    m = len(L) - 1
    for k in range(len(L)):
        if not below >> k & 1:
            m = L._meet(m, k)
    return not below >> m & 1


def _realized(P, cap):
    return P if isinstance(P, RadLattice) else realize(P, cap)


def spc(P, cap: int = DEFAULT_GENERATOR_CAP) -> SpectralSpace:
    """Balmer spectrum: proper meet-primes, lattice order, opens are up-sets."""
    R = _realized(P, cap)
    L = R.lattice
    pts = meet_primes(L)
    points = L.poset().subposet(pts)
    basis = frozenset(frozenset(p for p in pts if L.leq(a, p)) for a in L)
    return SpectralSpace(points, "up", basis)


def basic_open(R: RadLattice, a: ObjExpr) -> frozenset:
    """U(a) = {p | [a] <= p}."""
    L = R.lattice
    x = R.radical(a)
    return frozenset(p for p in meet_primes(L) if L.leq(x, p))


def spc_via_stone(P, cap: int = DEFAULT_GENERATOR_CAP) -> SpectralSpace:
    """Spectrum computed as the prime-filter space of the opposite lattice.

    The prime filter of the opposite lattice with minimum p is the prime ideal
    ↓p, so the points carry the same labels as in :func:`spc`.  The Stone
    space stores them with the reversed order and down-set opens; one
    reorientation brings it to the convention of :func:`spc`.
    """
    R = _realized(P, cap)
    return spectral_space_of(opposite(R.lattice)).reoriented()


def localize(L, I: str) -> tuple[DistLattice, LatticeMap]:
    """The up-set lattice L_{I/} and the map a ↦ a ∨ I onto it."""
    L = _as_lattice(L)
    L.index(I)
    sub = L.interval_up(I)
    return sub, LatticeMap(L, sub, {a: L.join(a, I) for a in L})


def is_zariski_cover(L, ideals) -> Check:
    """True iff the listed elements meet to bottom; witness is the meet."""
    L = _as_lattice(L)
    for x in ideals:
        L.index(x)
    m = L.meet_all(ideals)
    return Check(m == L.bottom, m)


def is_local(L) -> Check:
    """Bottom is proper and meet-prime; the witness of failure is a pair."""
    L = _as_lattice(L)
    if L.is_trivial:
        return Check(False, None)
    n = len(L)
    for i in range(1, n):
        for j in range(i, n):
            if L._meet(i, j) == 0:
                return Check(False, (L.elements[i], L.elements[j]))
    return Check(True, None)


def stalk(L, p: str) -> DistLattice:
    """L_{p/} at a point p of the spectrum; always local."""
    L = _as_lattice(L)
    try:
        ok = is_meet_prime(L, p)
    except ElementNotFound:
        ok = False
    if not ok:
        raise NotAPoint(f"{p!r} is not a proper meet-prime element")
    S = L.interval_up(p)
    assert is_local(S), f"stalk at {p} is not local"
    return S
