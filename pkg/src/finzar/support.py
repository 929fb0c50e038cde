"""Support data valued in finite frames and their factorization through radicals.

A datum assigns to object expressions elements of a carrier lattice F, read in
the opposite order F^op: sums go to joins of F^op, tensors to meets of F^op,
0 to the bottom of F^op and 1 to its top.  The radical datum of a presentation
is the universal one; every datum factors uniquely through it.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping

from .dlattice import DEFAULT_GENERATOR_CAP, DistLattice, LatticeMap, check_map, opposite
from .errors import (
    ElementNotFound,
    InvalidMap,
    MissingAssignment,
    NotASupportDatum,
    SourceTargetMismatch,
    UnknownSymbol,
)
from .report import Report
from .ttlattice import (
    ONE,
    ZERO,
    Const,
    Gen,
    ObjExpr,
    RadLattice,
    Shift,
    Sum,
    Tensor,
    TTPresentation,
    realize,
    subexpressions,
    symbols,
)

AXIOMS = ("a", "b", "c", "d", "e", "presentation")


@dataclass(frozen=True, eq=False)
class SupportDatum:
    presentation: TTPresentation
    carrier: DistLattice
    d: Mapping[ObjExpr, str]
    triangles: tuple = ()
    _op: DistLattice | None = field(default=None, repr=False, compare=False)

    @property
    def op(self) -> DistLattice:
        """The carrier with its order reversed; all values are read here."""
        if self._op is None:
            object.__setattr__(self, "_op", opposite(self.carrier))
        return self._op

    def value(self, e: ObjExpr) -> str:
        """d(e), extended to unassigned composite expressions by the axioms."""
        if e in self.d:
            return self.d[e]
        Fop = self.op
        if isinstance(e, (Gen, Const)):
            raise MissingAssignment(f"d is not defined on {e}")
        if isinstance(e, Tensor):
            return Fop.meet(self.value(e.left), self.value(e.right))
        if isinstance(e, Sum):
            return Fop.join(self.value(e.left), self.value(e.right))
        if isinstance(e, Shift):
            return self.value(e.arg)
        raise TypeError(f"not an object expression: {e!r}")

    def with_value(self, e: ObjExpr, v: str) -> "SupportDatum":
        d = dict(self.d)
        d[e] = v
        return SupportDatum(self.presentation, self.carrier, d, self.triangles)

    def with_triangle(self, a, b, c) -> "SupportDatum":
        return SupportDatum(self.presentation, self.carrier, dict(self.d),
                            self.triangles + ((a, b, c),))


def _check_well_formed(s: SupportDatum):
    gens = set(s.presentation.generators)
    for e in [ZERO, ONE] + [Gen(g) for g in s.presentation.generators]:
        if e not in s.d:
            raise MissingAssignment(f"d is not defined on {e}")
    for e, v in s.d.items():
        for sym in symbols(e):
            if sym not in gens:
                raise UnknownSymbol(sym)
        if v not in s.carrier:
            raise ElementNotFound(f"d({e}) = {v!r} is not an element of the carrier")
    for tri in s.triangles:
        for e in tri:
            for sym in symbols(e):
                if sym not in gens:
                    raise UnknownSymbol(sym)
            # triangle members are never filled in from the axioms
            if e not in s.d:
                raise MissingAssignment(f"triangle member {e} has no assigned value")


def expression_universe(s: SupportDatum, depth: int = 1) -> list[ObjExpr]:
    """Subexpressions of the relations, triangles and d's domain, plus 0, 1 and
    the generators, closed ``depth`` times under pairwise tensor and sum."""
    seen: dict[ObjExpr, None] = {}
    roots = [ZERO, ONE] + [Gen(g) for g in s.presentation.generators]
    roots += [side for r in s.presentation.relations for side in (r.lhs, r.rhs)]
    roots += [e for tri in s.triangles for e in tri]
    roots += list(s.d)
    for r in roots:
        for e in subexpressions(r):
            seen.setdefault(e, None)
    for _ in range(depth):
        base = list(seen)
        for a in base:
            for b in base:
                seen.setdefault(Tensor(a, b), None)
                seen.setdefault(Sum(a, b), None)
    return list(seen)


def verify_support(s: SupportDatum, depth: int = 1) -> Report:
    """Check the support axioms (a)-(e) and the presentation's relations.

    Findings are labelled ``"a"`` to ``"e"`` after the axiom they break, or
    ``"presentation"`` when a relation of the presentation is not respected.
    """
    _check_well_formed(s)
    Fop = s.op
    rep = Report()
    v = s.value
    if v(ZERO) != Fop.bottom:
        rep.add("a", f"d(0) = {v(ZERO)}, expected {Fop.bottom}", (ZERO,))
    if v(ONE) != Fop.top:
        rep.add("a", f"d(1) = {v(ONE)}, expected {Fop.top}", (ONE,))
    for e in expression_universe(s, depth):
        if isinstance(e, Shift):
            if v(e) != v(e.arg):
                rep.add("b", f"d({e}) = {v(e)} but d({e.arg}) = {v(e.arg)}", (e, e.arg))
        elif isinstance(e, Sum):
            want = Fop.join(v(e.left), v(e.right))
            if v(e) != want:
                rep.add("c", f"d({e}) = {v(e)} but d({e.left}) ∨ d({e.right}) = {want}",
                        (e.left, e.right))
        elif isinstance(e, Tensor):
            want = Fop.meet(v(e.left), v(e.right))
            if v(e) != want:
                rep.add("d", f"d({e}) = {v(e)} but d({e.left}) ∧ d({e.right}) = {want}",
                        (e.left, e.right))
    for a, b, c in s.triangles:
        bound = Fop.join(v(a), v(c))
        if not Fop.leq(v(b), bound):
            rep.add("e", f"triangle {a} -> {b} -> {c}: d({b}) = {v(b)} is not below "
                         f"d({a}) ∨ d({c}) = {bound}", (a, b, c))
    for r in s.presentation.relations:
        lv, rv = v(r.lhs), v(r.rhs)
        ok = lv == rv if r.kind == "=" else Fop.leq(lv, rv)
        if not ok:
            rep.add("presentation", f"relation {r} not respected: d gives {lv} and {rv}",
                    (r.lhs, r.rhs))
    return rep


def factor_support(s: SupportDatum, cap: int = DEFAULT_GENERATOR_CAP,
                   R: RadLattice | None = None) -> LatticeMap:
    """The unique lattice map supp: realize(P) → F^op with supp ∘ √ = d."""
    rep = verify_support(s)
    if not rep.ok:
        raise NotASupportDatum(rep)
    R = R if R is not None else realize(s.presentation, cap)
    # supp is pinned down by the generators because they generate the lattice
    assert R.generates()
    supp = {x: s.value(R.representative(x)) for x in R.lattice}
    f = LatticeMap(R.lattice, s.op, supp)
    problems = check_map(f)
    for e in s.d:
        if supp[R.radical(e)] != s.value(e):
            problems.add("factor", f"supp(√{e}) = {supp[R.radical(e)]} != d({e})", e)
    if not problems.ok:
        raise NotASupportDatum(problems)
    return f


def support_from_frame_map(P: TTPresentation, f: LatticeMap,
                           cap: int = DEFAULT_GENERATOR_CAP,
                           R: RadLattice | None = None) -> SupportDatum:
    """The datum f ∘ √ valued in the frame whose opposite is f's target."""
    rep = check_map(f)
    if not rep.ok:
        raise InvalidMap(rep)
    R = R if R is not None else realize(P, cap)
    if f.source != R.lattice:
        raise SourceTargetMismatch("map source is not the realized lattice of the presentation")
    d = {ZERO: f(R.lattice.bottom), ONE: f(R.lattice.top)}
    for g in P.generators:
        d[Gen(g)] = f(R.gen_image[g])
    return SupportDatum(P, opposite(f.target), d, (), f.target)


def radical_datum(P: TTPresentation, cap: int = DEFAULT_GENERATOR_CAP) -> SupportDatum:
    """√ itself, valued in the opposite of the realized lattice."""
    R = realize(P, cap)
    return support_from_frame_map(P, LatticeMap.identity(R.lattice), R=R)


def kernel_element(f: LatticeMap) -> str:
    """The largest source element sent to the target's bottom."""
    S = f.source
    return S.join_all(x for x in S if f(x) == f.target.bottom)
