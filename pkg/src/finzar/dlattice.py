"""Finite posets and bounded distributive lattices.

Elements are string labels.  Internally every element is an index into the
canonical element tuple and the order is stored as two lists of int bitmasks:
``_down[i]`` (principal down-set of i) and ``_up[i]`` (principal up-set).  In a
lattice the intersection of two principal down-sets is again principal, so a
meet is a single dict lookup of ``_down[i] & _down[j]``; joins use up-sets.

The canonical order sorts elements by (height, label), which is a linear
extension of the lattice order and makes every output reproducible.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Callable, Iterable, Mapping, Sequence, Union

import numpy as np

from .errors import (
    CapExceeded,
    ElementNotFound,
    NotALattice,
    NotAPartialOrder,
    NotDistributive,
    SourceTargetMismatch,
    UnknownSymbol,
)
from .report import Report

Relation = Union[Callable[[str, str], bool], Iterable[tuple[str, str]]]
# ∧/∨ terms over element labels: a label, or ("meet"|"join", term, term, ...)
Term = Union[str, tuple]

DEFAULT_GENERATOR_CAP = 5


def bits(mask: int):
    """Yield the indices of the set bits of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _masks_from_relation(elements, leq):
    index = {e: i for i, e in enumerate(elements)}
    down = [0] * len(elements)
    if callable(leq):
        for j, b in enumerate(elements):
            m = 0
            for i, a in enumerate(elements):
                if leq(a, b):
                    m |= 1 << i
            down[j] = m
    else:
        for a, b in leq:
            if a not in index or b not in index:
                raise NotAPartialOrder(f"pair ({a!r}, {b!r}) mentions an unknown element")
            down[index[b]] |= 1 << index[a]
    return down


def _up_from_down(down):
    up = [0] * len(down)
    for j, m in enumerate(down):
        bit = 1 << j
        for i in bits(m):
            up[i] |= bit
    return up


def _validate_order(elements, down, closure=False):
    n = len(elements)
    if len(set(elements)) != n:
        raise NotAPartialOrder("element labels are not unique")
    if closure:
        down = [m | (1 << i) for i, m in enumerate(down)]
        changed = True
        while changed:
            changed = False
            for i in range(n):
                m = down[i]
                acc = m
                for k in bits(m):
                    acc |= down[k]
                if acc != m:
                    down[i] = acc
                    changed = True
    for i in range(n):
        if not down[i] >> i & 1:
            raise NotAPartialOrder(f"not reflexive at {elements[i]!r}")
    for i in range(n):
        for k in bits(down[i]):
            if k != i and down[k] >> i & 1:
                raise NotAPartialOrder(
                    f"not antisymmetric: {elements[k]!r} and {elements[i]!r}")
            if down[k] & ~down[i]:
                j = next(bits(down[k] & ~down[i]))
                raise NotAPartialOrder(
                    f"not transitive: {elements[j]!r} <= {elements[k]!r} <= "
                    f"{elements[i]!r}")
    return down


def _lower_covers(down, up, i):
    strict = down[i] & ~(1 << i)
    return [k for k in bits(strict) if up[k] & strict == 1 << k]


def _heights(down, up):
    n = len(down)
    order = sorted(range(n), key=lambda i: bin(down[i]).count("1"))
    height = [0] * n
    for i in order:
        covers = _lower_covers(down, up, i)
        height[i] = max((height[k] + 1 for k in covers), default=0)
    return height


def _permute_mask(mask, pos):
    out = 0
    for i in bits(mask):
        out |= 1 << pos[i]
    return out


class Poset:
    """A finite partial order on string labels."""

    __slots__ = ("elements", "_index", "_down", "_up")

    def __init__(self, elements: Sequence[str], leq: Relation, *, closure=False):
        elements = tuple(elements)
        down = _validate_order(elements, _masks_from_relation(elements, leq), closure)
        self._set(elements, down, _up_from_down(down))

    def _set(self, elements, down, up):
        self.elements = elements
        self._index = {e: i for i, e in enumerate(elements)}
        self._down = down
        self._up = up

    @classmethod
    def _trusted(cls, elements, down, up=None):
        obj = cls.__new__(cls)
        obj._set(tuple(elements), list(down), up if up is not None else _up_from_down(down))
        return obj

    @classmethod
    def from_covers(cls, elements, covers):
        return cls(elements, covers, closure=True)

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, x):
        return x in self._index

    def __repr__(self):
        return f"Poset({list(self.elements)!r}, covers={self.covers()!r})"

    def index(self, x):
        try:
            return self._index[x]
        except KeyError:
            raise ElementNotFound(f"{x!r} is not an element") from None

    def leq(self, a, b):
        return bool(self._down[self.index(b)] >> self.index(a) & 1)

    def down(self, x):
        return frozenset(self.elements[i] for i in bits(self._down[self.index(x)]))

    def up(self, x):
        return frozenset(self.elements[i] for i in bits(self._up[self.index(x)]))

    def relation(self):
        return frozenset((self.elements[i], self.elements[j])
                         for j in range(len(self)) for i in bits(self._down[j]))

    def covers(self):
        out = []
        for j in range(len(self)):
            for i in _lower_covers(self._down, self._up, j):
                out.append((self.elements[i], self.elements[j]))
        return out

    def reversed(self):
        return Poset._trusted(self.elements, self._up, self._down)

    def minimal(self):
        return [e for i, e in enumerate(self.elements) if self._down[i] == 1 << i]

    def maximal(self):
        return [e for i, e in enumerate(self.elements) if self._up[i] == 1 << i]

    def is_downset(self, subset):
        idx = [self.index(x) for x in subset]
        mask = sum(1 << i for i in set(idx))
        return all(self._down[i] & ~mask == 0 for i in idx)

    def is_upset(self, subset):
        idx = [self.index(x) for x in subset]
        mask = sum(1 << i for i in set(idx))
        return all(self._up[i] & ~mask == 0 for i in idx)

    def downsets(self):
        """All down-closed subsets, as frozensets, in a deterministic order."""
        n = len(self)
        seen = {0}
        frontier = [0]
        while frontier:
            nxt = []
            for d in frontier:
                for i in range(n):
                    if not d >> i & 1 and self._down[i] & ~(1 << i) & ~d == 0:
                        e = d | (1 << i)
                        if e not in seen:
                            seen.add(e)
                            nxt.append(e)
            frontier = nxt
        masks = sorted(seen, key=lambda m: (bin(m).count("1"), m))
        return [frozenset(self.elements[i] for i in bits(m)) for m in masks]

    def subposet(self, labels):
        wanted = set(labels)
        labels = [e for e in self.elements if e in wanted]
        pos = {self.index(e): k for k, e in enumerate(labels)}
        keep = sum(1 << i for i in pos)
        down = [_permute_mask(self._down[self.index(e)] & keep, pos) for e in labels]
        return Poset._trusted(labels, down)

    def __eq__(self, other):
        if not isinstance(other, Poset):
            return NotImplemented
        return set(self.elements) == set(other.elements) and self.relation() == other.relation()

    def __hash__(self):
        return hash(frozenset(self.elements))


class DistLattice:
    """A finite bounded distributive lattice with string labels.

    Build one with :func:`build_lattice`, :func:`free_dlattice`, :func:`quotient`
    or the small constructors :func:`chain` and :func:`boolean_lattice`.
    """

    __slots__ = ("elements", "_index", "_down", "_up", "_by_down", "_by_up",
                 "_height", "_cache")

    @classmethod
    def _assemble(cls, labels, down, up, heights, *, check):
        n = len(labels)
        if n == 0:
            raise NotALattice("the empty poset has no bottom element")
        order = sorted(range(n), key=lambda i: (heights[i], labels[i]))
        if order != list(range(n)):
            pos = [0] * n
            for k, i in enumerate(order):
                pos[i] = k
            down = [_permute_mask(down[i], pos) for i in order]
            up = [_permute_mask(up[i], pos) for i in order]
            heights = [heights[i] for i in order]
            labels = [labels[i] for i in order]
        obj = cls.__new__(cls)
        obj.elements = tuple(labels)
        obj._index = {e: i for i, e in enumerate(obj.elements)}
        obj._down = list(down)
        obj._up = list(up)
        obj._by_down = {m: i for i, m in enumerate(obj._down)}
        obj._by_up = {m: i for i, m in enumerate(obj._up)}
        obj._height = list(heights)
        obj._cache = {}
        if check:
            obj._check_lattice()
            obj._check_distributive()
        return obj

    def _check_lattice(self):
        n = len(self)
        full = (1 << n) - 1
        if self._up[0] != full:
            raise NotALattice("no bottom element")
        if self._down[n - 1] != full:
            raise NotALattice("no top element")
        for i in range(n):
            for j in range(i + 1, n):
                if self._down[i] & self._down[j] not in self._by_down:
                    raise NotALattice(
                        f"{self.elements[i]!r} and {self.elements[j]!r} have no meet",
                        (self.elements[i], self.elements[j]))
                if self._up[i] & self._up[j] not in self._by_up:
                    raise NotALattice(
                        f"{self.elements[i]!r} and {self.elements[j]!r} have no join",
                        (self.elements[i], self.elements[j]))

    def _check_distributive(self):
        # finite lattice is distributive iff every join-irreducible is join-prime
        jmask = self._join_irreducible_mask()
        n = len(self)
        for x in range(n):
            for y in range(x + 1, n):
                below = self._down[self._join(x, y)] & jmask
                split = (self._down[x] | self._down[y]) & jmask
                if below != split:
                    j = next(bits(below & ~split))
                    lhs = self._meet(j, self._join(x, y))
                    rhs = self._join(self._meet(j, x), self._meet(j, y))
                    assert lhs != rhs
                    w = (self.elements[j], self.elements[x], self.elements[y])
                    raise NotDistributive(
                        f"{w[0]} ∧ ({w[1]} ∨ {w[2]}) = {self.elements[lhs]} but "
                        f"({w[0]} ∧ {w[1]}) ∨ ({w[0]} ∧ {w[2]}) = {self.elements[rhs]}", w)

    def _join_irreducible_mask(self):
        if "jmask" not in self._cache:
            m = 0
            for i in range(1, len(self)):
                if len(self._lower(i)) == 1:
                    m |= 1 << i
            self._cache["jmask"] = m
        return self._cache["jmask"]

    def _meet_irreducible_mask(self):
        if "mmask" not in self._cache:
            m = 0
            for i in range(len(self) - 1):
                if len(self._upper(i)) == 1:
                    m |= 1 << i
            self._cache["mmask"] = m
        return self._cache["mmask"]

    def _lower(self, i):
        return _lower_covers(self._down, self._up, i)

    def _upper(self, i):
        return _lower_covers(self._up, self._down, i)

    # index-level operations
    def _meet(self, i, j):
        return self._by_down[self._down[i] & self._down[j]]

    def _join(self, i, j):
        return self._by_up[self._up[i] & self._up[j]]

    def _leq(self, i, j):
        return bool(self._down[j] >> i & 1)

    # label-level API
    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, x):
        return x in self._index

    def __repr__(self):
        return f"DistLattice({list(self.elements)!r})"

    def __eq__(self, other):
        if not isinstance(other, DistLattice):
            return NotImplemented
        return self.elements == other.elements and self._down == other._down

    def __hash__(self):
        return hash(self.elements)

    def index(self, x):
        try:
            return self._index[x]
        except (KeyError, TypeError):
            raise ElementNotFound(f"{x!r} is not an element of the lattice") from None

    @property
    def bottom(self):
        return self.elements[0]

    @property
    def top(self):
        return self.elements[-1]

    @property
    def is_trivial(self):
        return len(self) == 1

    def height(self, x):
        return self._height[self.index(x)]

    def leq(self, a, b):
        return self._leq(self.index(a), self.index(b))

    def meet(self, a, b):
        return self.elements[self._meet(self.index(a), self.index(b))]

    def join(self, a, b):
        return self.elements[self._join(self.index(a), self.index(b))]

    def meet_all(self, xs):
        acc = len(self) - 1
        for x in xs:
            acc = self._meet(acc, self.index(x))
        return self.elements[acc]

    def join_all(self, xs):
        acc = 0
        for x in xs:
            acc = self._join(acc, self.index(x))
        return self.elements[acc]

    def down(self, x):
        return frozenset(self.elements[i] for i in bits(self._down[self.index(x)]))

    def up(self, x):
        return frozenset(self.elements[i] for i in bits(self._up[self.index(x)]))

    def upper_covers(self, x):
        return [self.elements[i] for i in self._upper(self.index(x))]

    def lower_covers(self, x):
        return [self.elements[i] for i in self._lower(self.index(x))]

    def covers(self):
        """Cover pairs ``(a, b)`` with a ⋖ b, in canonical order."""
        if "covers" not in self._cache:
            self._cache["covers"] = [
                (self.elements[i], self.elements[j])
                for j in range(len(self)) for i in self._lower(j)]
        return list(self._cache["covers"])

    def poset(self):
        return Poset._trusted(self.elements, self._down, self._up)

    def evaluate(self, term: Term):
        """Evaluate a ∧/∨ term whose leaves are element labels."""
        if isinstance(term, str):
            if term not in self._index:
                raise UnknownSymbol(term)
            return term
        op, *args = term
        vals = [self.evaluate(a) for a in args]
        if op == "meet":
            return self.meet_all(vals)
        if op == "join":
            return self.join_all(vals)
        raise ValueError(f"unknown term operator {op!r}")

    def interval_up(self, x):
        """The sublattice ``{a | a >= x}`` with bottom x (labels preserved)."""
        i = self.index(x)
        keep = [k for k in bits(self._up[i])]
        pos = {k: p for p, k in enumerate(keep)}
        mask = self._up[i]
        down = [_permute_mask(self._down[k] & mask, pos) for k in keep]
        up = [_permute_mask(self._up[k], pos) for k in keep]
        base = self._height[i]
        return DistLattice._assemble([self.elements[k] for k in keep], down, up,
                                     [self._height[k] - base for k in keep], check=False)

    def relabel(self, mapping: Mapping[str, str]):
        labels = [mapping[e] for e in self.elements]
        if len(set(labels)) != len(labels):
            raise ValueError("relabeling is not injective")
        return DistLattice._assemble(labels, self._down, self._up, self._height, check=False)


@dataclass(frozen=True)
class LatticeMap:
    """An element-wise assignment between two lattices (validity not implied)."""

    source: DistLattice
    target: DistLattice
    mapping: Mapping[str, str]

    def __call__(self, x):
        return self.mapping[x]

    def compose(self, first: "LatticeMap") -> "LatticeMap":
        """Return ``self ∘ first``."""
        return LatticeMap(first.source, self.target,
                          {x: self.mapping[first.mapping[x]] for x in first.source})

    @classmethod
    def identity(cls, L):
        return cls(L, L, {x: x for x in L})

    def __eq__(self, other):
        if not isinstance(other, LatticeMap):
            return NotImplemented
        return (self.source == other.source and self.target == other.target
                and dict(self.mapping) == dict(other.mapping))

    def __hash__(self):
        return hash((self.source, self.target))


# ----------------------------------------------------------------- constructors

def build_lattice(elements: Sequence[str], leq: Relation, *, closure=False) -> DistLattice:
    """Validate a partial order and return it as a distributive lattice.

    ``leq`` is either a predicate ``leq(a, b)`` or an iterable of pairs
    ``(a, b)`` meaning a <= b.  With ``closure=True`` the pairs are closed
    reflexively and transitively first (handy for cover lists).

    Raises NotAPartialOrder, NotALattice or NotDistributive (with a violating
    triple).
    """
    elements = list(elements)
    if any(not isinstance(e, str) for e in elements):
        raise TypeError("lattice element labels must be strings")
    down = _validate_order(elements, _masks_from_relation(elements, leq), closure)
    up = _up_from_down(down)
    return DistLattice._assemble(elements, down, up, _heights(down, up), check=True)


def chain(n: int, labels=None) -> DistLattice:
    """The n-element chain ``0 < 1 < ... < n-1``."""
    labels = list(labels) if labels is not None else [str(i) for i in range(n)]
    return build_lattice(labels, lambda a, b: labels.index(a) <= labels.index(b))


def boolean_lattice(atoms: Sequence[str]) -> DistLattice:
    """Subsets of ``atoms`` under inclusion, labelled ``{a,b}``."""
    atoms = list(atoms)
    subsets = [frozenset(a for k, a in enumerate(atoms) if m >> k & 1)
               for m in range(1 << len(atoms))]
    labels = [set_label(s, atoms) for s in subsets]
    lookup = dict(zip(labels, subsets))
    return build_lattice(labels, lambda a, b: lookup[a] <= lookup[b])


def set_label(subset, order) -> str:
    """Render a subset as ``{a,b}`` listing members in the given order."""
    return "{" + ",".join(x for x in order if x in subset) + "}"


def _default_names(n):
    if n <= 5:
        return list("xyzwv"[:n])
    return [f"x{i + 1}" for i in range(n)]


def _monotone_tables(n):
    """Truth tables (ints over 2**n assignments) of all monotone functions."""
    tables = [0, 1]
    for k in range(n):
        shift = 1 << k
        tables = [f0 | (f1 << shift) for f0 in tables for f1 in tables if f0 & ~f1 == 0]
    return tables


def _dnf_label(table, n, names):
    if table == 0:
        return "0"
    if table & 1:
        return "1"
    terms = []
    for a in range(1 << n):
        if table >> a & 1 and all(not table >> (a ^ (1 << k)) & 1
                                  for k in range(n) if a >> k & 1):
            terms.append(a)
    terms.sort(key=lambda a: (bin(a).count("1"), [k for k in range(n) if a >> k & 1]))
    return " + ".join("*".join(names[k] for k in range(n) if a >> k & 1) for a in terms)


def free_dlattice(n: int, names: Sequence[str] | None = None,
                  cap: int = DEFAULT_GENERATOR_CAP) -> tuple[DistLattice, dict[str, str]]:
    """The free bounded distributive lattice on ``n`` generators.

    Elements are monotone two-valued functions of the generators, labelled by
    their irredundant join-of-meets form (``"x*y + z"``, ``"0"``, ``"1"``).
    Returns the lattice and the generator embedding ``name -> label``.
    """
    if n < 0:
        raise ValueError("generator count must be non-negative")
    if n > cap:
        raise CapExceeded(f"{n} generators exceeds the cap of {cap}")
    if n > 6:
        raise CapExceeded("free lattices on more than 6 generators are not representable")
    names = list(names) if names is not None else _default_names(n)
    if len(names) != n or len(set(names)) != n:
        raise ValueError("need exactly n distinct generator names")
    tables = _monotone_tables(n)
    labels = [_dnf_label(t, n, names) for t in tables]
    heights = [bin(t).count("1") for t in tables]
    order = sorted(range(len(tables)), key=lambda i: (heights[i], labels[i]))
    tables = [tables[i] for i in order]
    labels = [labels[i] for i in order]
    heights = [heights[i] for i in order]
    T = np.array(tables, dtype=np.uint64)
    down, up = [], []
    for i in range(len(T)):
        # a <= b iff a & ~b == 0
        row_up = (T[i] & ~T) == 0
        row_down = (T & ~T[i]) == 0
        up.append(int.from_bytes(np.packbits(row_up, bitorder="little").tobytes(), "little"))
        down.append(int.from_bytes(np.packbits(row_down, bitorder="little").tobytes(), "little"))
    # monotone functions are closed under pointwise and/or, so this is a sublattice
    # of a Boolean algebra; the full pairwise scan is only affordable up to n = 4
    L = DistLattice._assemble(labels, down, up, heights, check=n <= 4)
    embedding = {}
    for k, name in enumerate(names):
        t = sum(1 << a for a in range(1 << n) if a >> k & 1)
        embedding[name] = labels[tables.index(t)]
    return L, embedding


def opposite(L: DistLattice) -> DistLattice:
    """Reverse the order: meets and joins, bottom and top trade places."""
    top = L._height[-1]
    return DistLattice._assemble(list(L.elements), L._up, L._down,
                                 [top - h for h in L._height], check=False)


# ------------------------------------------------------------------- quotients

def _join_irreducibles_idx(L):
    return list(bits(L._join_irreducible_mask()))


def congruence_closure(L: DistLattice, pairs) -> list[int]:
    """Class index per element of the smallest congruence identifying ``pairs``.

    Pairs are merged with union-find; every merge of (x, y) schedules the
    translates (x∧z, y∧z) and (x∨z, y∨z) for all z until nothing changes.
    """
    n = len(L)
    parent = list(range(n))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    work = deque(pairs)
    while work:
        x, y = work.popleft()
        rx, ry = find(x), find(y)
        if rx == ry:
            continue
        parent[max(rx, ry)] = min(rx, ry)
        for z in range(n):
            work.append((L._meet(x, z), L._meet(y, z)))
            work.append((L._join(x, z), L._join(y, z)))
    return [find(i) for i in range(n)]


def birkhoff_congruence(L: DistLattice, pairs) -> list[int]:
    """Same congruence as :func:`congruence_closure`, computed on points.

    Keeps the join-irreducibles j whose prime filter ↑j respects every
    relation a <= b (not j <= a while j !<= b); two elements are identified
    iff they lie above the same kept join-irreducibles.
    """
    keep = 0
    for j in _join_irreducibles_idx(L):
        if all(not (L._leq(j, a) and not L._leq(j, b)) and
               not (L._leq(j, b) and not L._leq(j, a)) for a, b in pairs):
            keep |= 1 << j
    reps = {}
    out = []
    for i in range(len(L)):
        key = L._down[i] & keep
        out.append(reps.setdefault(key, i))
    return out


def quotient(L: DistLattice, relations: Iterable[tuple[Term, Term]], *,
             method: str = "closure") -> tuple[DistLattice, LatticeMap]:
    """Quotient by the smallest congruence forcing each ``lhs <= rhs``.

    Returns the quotient lattice and the surjective projection.  A class is
    labelled by its shortest member label (ties broken alphabetically).
    ``method`` is ``"closure"`` (pairwise merging to a fixpoint) or
    ``"birkhoff"`` (selection of join-irreducibles); both give the same result.
    """
    pairs = []
    for lhs, rhs in relations:
        a = L.index(L.evaluate(lhs))
        b = L.index(L.evaluate(rhs))
        # a <= b  <=>  a == a∧b
        pairs.append((a, L._meet(a, b)))
    if method == "closure":
        cls = congruence_closure(L, pairs)
    elif method == "birkhoff":
        cls = birkhoff_congruence(L, [(a, m) for a, m in pairs])
    else:
        raise ValueError(f"unknown quotient method {method!r}")
    members: dict[int, list[int]] = {}
    for i, c in enumerate(cls):
        members.setdefault(c, []).append(i)
    classes = list(members.values())
    reps = [min((L.elements[i] for i in c), key=lambda s: (len(s), s)) for c in classes]
    of_class = {}
    for k, c in enumerate(classes):
        for i in c:
            of_class[i] = k
    m = len(classes)
    # [x] <= [y] iff x∧y ≡ x
    down = [0] * m
    for a in range(m):
        x = classes[a][0]
        for b in range(m):
            y = classes[b][0]
            if of_class[L._meet(x, y)] == a:
                down[b] |= 1 << a
    up = _up_from_down(down)
    Q = DistLattice._assemble(reps, down, up, _heights(down, up), check=m <= 400)
    proj = {L.elements[i]: reps[of_class[i]] for i in range(len(L))}
    return Q, LatticeMap(L, Q, proj)


# ---------------------------------------------------------------- map checking

def check_map(f: LatticeMap) -> Report:
    """List every violated preservation clause (bottom, top, meet, join)."""
    S, T = f.source, f.target
    if set(f.mapping) != set(S.elements):
        raise SourceTargetMismatch("assignment is not total on the source, or has extra keys")
    bad = sorted({v for v in f.mapping.values() if v not in T._index})
    if bad:
        raise SourceTargetMismatch(f"values outside the target: {bad}")
    rep = Report()
    img = [T.index(f.mapping[x]) for x in S.elements]
    if img[0] != 0:
        rep.add("bottom", f"f({S.bottom}) = {T.elements[img[0]]}, expected {T.bottom}", S.bottom)
    if img[-1] != len(T) - 1:
        rep.add("top", f"f({S.top}) = {T.elements[img[-1]]}, expected {T.top}", S.top)
    n = len(S)
    for i in range(n):
        for j in range(i + 1, n):
            m = img[S._meet(i, j)]
            if m != T._meet(img[i], img[j]):
                rep.add("meet", f"f({S.elements[i]} ∧ {S.elements[j]}) = {T.elements[m]}",
                        (S.elements[i], S.elements[j]))
            k = img[S._join(i, j)]
            if k != T._join(img[i], img[j]):
                rep.add("join", f"f({S.elements[i]} ∨ {S.elements[j]}) = {T.elements[k]}",
                        (S.elements[i], S.elements[j]))
    return rep


def is_lattice_isomorphism(f: LatticeMap) -> bool:
    """A bijective lattice map whose inverse is monotone."""
    if set(f.mapping) != set(f.source.elements):
        return False
    if sorted(f.mapping.values()) != sorted(f.target.elements):
        return False
    S, T = f.source, f.target
    for a in S.elements:
        for b in S.elements:
            if S.leq(a, b) != T.leq(f.mapping[a], f.mapping[b]):
                return False
    return True


def order_isomorphism(P, Q) -> dict | None:
    """Find an order isomorphism between two posets (or lattices), else None."""
    P = P.poset() if isinstance(P, DistLattice) else P
    Q = Q.poset() if isinstance(Q, DistLattice) else Q
    n = len(P)
    if n != len(Q):
        return None

    def sig(R, i):
        return (bin(R._down[i]).count("1"), bin(R._up[i]).count("1"))

    ps = [sig(P, i) for i in range(n)]
    qs = [sig(Q, i) for i in range(n)]
    if sorted(ps) != sorted(qs):
        return None
    order = sorted(range(n), key=lambda i: (ps.count(ps[i]), i))
    assign = [-1] * n
    used = [False] * n

    def extend(k):
        if k == n:
            return True
        i = order[k]
        for j in range(n):
            if used[j] or qs[j] != ps[i]:
                continue
            ok = True
            for kk in range(k):
                i2 = order[kk]
                j2 = assign[i2]
                if (P._down[i] >> i2 & 1) != (Q._down[j] >> j2 & 1) or \
                   (P._down[i2] >> i & 1) != (Q._down[j2] >> j & 1):
                    ok = False
                    break
            if ok:
                assign[i] = j
                used[j] = True
                if extend(k + 1):
                    return True
                used[j] = False
                assign[i] = -1
        return False

    if not extend(0):
        return None
    return {P.elements[i]: Q.elements[assign[i]] for i in range(n)}
