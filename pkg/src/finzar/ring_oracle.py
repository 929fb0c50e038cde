"""Brute-force finite commutative rings: ideals, primes, radicals, localization.

Rings are stored as full addition and multiplication tables over element
indices ``0..n-1``, with index 0 the zero.  Ideals are boolean membership
masks.  Everything here works by exhaustive search, which keeps it independent
of the lattice-theoretic code it is used to cross-check.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .dlattice import LatticeMap, Poset, build_lattice, is_lattice_isomorphism, opposite
from .duality import SpectralSpace
from .errors import CapExceeded, DSLSyntaxError, MismatchFound
from .report import Report
from .sheaf import structure_presheaf
from .ttlattice import RadLattice, spc

DEFAULT_RING_CAP = 256


@dataclass(eq=False)
class FiniteCommRing:
    description: str
    labels: tuple[str, ...]
    add: np.ndarray
    mul: np.ndarray
    one: int
    components: tuple["FiniteCommRing", ...] = ()

    def __len__(self):
        return len(self.labels)

    def __repr__(self):
        return f"FiniteCommRing({self.description!r}, {len(self)} elements)"

    @cached_property
    def index(self) -> dict[str, int]:
        return {s: i for i, s in enumerate(self.labels)}

    @cached_property
    def neg(self) -> np.ndarray:
        return np.argmax(self.add == 0, axis=1)

    @cached_property
    def additive_generators(self) -> list[int]:
        """A small set of elements generating (R, +)."""
        gens, mask = [], self.zero_mask()
        mask[0] = True
        for a in range(len(self)):
            if not mask[a]:
                gens.append(a)
                mask = self._with_cyclic(mask, a)
        return gens

    @cached_property
    def high_power(self) -> np.ndarray:
        """a ↦ a^N with N a power of two at least |R|."""
        cur = np.arange(len(self))
        k = 1
        while k < len(self):
            cur = self.mul[cur, cur]
            k *= 2
        return cur

    def zero_mask(self):
        return np.zeros(len(self), dtype=bool)

    def _with_cyclic(self, mask, h):
        """Additive subgroup generated by a subgroup mask and one element."""
        base = np.flatnonzero(mask)
        out = mask.copy()
        cur = h
        while not out[cur]:
            out[self.add[cur, base]] = True
            cur = self.add[cur, h]
        return out

    @cached_property
    def principal_masks(self) -> np.ndarray:
        """Row g is the membership mask of the principal ideal (g)."""
        n = len(self)
        out = np.zeros((n, n), dtype=bool)
        out[np.arange(n)[:, None], self.mul] = True
        return out

    def principal(self, g: int) -> np.ndarray:
        return self.principal_masks[g].copy()

    def add_principal(self, I: np.ndarray, g: int) -> np.ndarray:
        """I + (g): generated additively by I and the products e·g."""
        out = I
        for e in self.additive_generators:
            out = self._with_cyclic(out, self.mul[e, g])
        return out

    def ideal_sum(self, I: np.ndarray, J: np.ndarray) -> np.ndarray:
        out = I.copy()
        for g in np.flatnonzero(J & ~I):
            if not out[g]:
                out = self.add_principal(out, g)
        return out

    def label_of(self, mask: np.ndarray) -> str:
        """(g) for the first single generator g, else a minimal-ish generator list."""
        if self.components:
            parts = []
            sizes = [len(c) for c in self.components]
            members = np.flatnonzero(mask)
            for t, C in enumerate(self.components):
                stride = int(np.prod(sizes[t + 1:], dtype=int))
                sub = C.zero_mask()
                sub[(members // stride) % sizes[t]] = True
                parts.append(C.label_of(sub))
            return " x ".join(parts)
        members = np.flatnonzero(mask)
        single = np.flatnonzero((self.principal_masks == mask).all(axis=1))
        if single.size:
            return f"({self.labels[single[0]]})"
        gens, have = [], self.zero_mask()
        have[0] = True
        for g in members:
            if not have[g]:
                gens.append(g)
                have = self.add_principal(have, g)
        return "(" + ", ".join(self.labels[g] for g in gens) + ")"


@dataclass(frozen=True, eq=False)
class RingIdeal:
    ring: FiniteCommRing
    mask: np.ndarray = field(repr=False)

    def __contains__(self, a):
        if isinstance(a, str):
            a = self.ring.index[a]
        return bool(self.mask[a])

    def __len__(self):
        return int(self.mask.sum())

    def __le__(self, other):
        return bool(np.all(other.mask[self.mask]))

    def __eq__(self, other):
        return isinstance(other, RingIdeal) and np.array_equal(self.mask, other.mask)

    def __hash__(self):
        return hash(self.mask.tobytes())

    @property
    def members(self) -> list[str]:
        return [self.ring.labels[i] for i in np.flatnonzero(self.mask)]

    @cached_property
    def label(self) -> str:
        return self.ring.label_of(self.mask)

    def __repr__(self):
        return f"RingIdeal({self.label})"


# ---------------------------------------------------------------- constructors

def zmod(n: int) -> FiniteCommRing:
    if n < 1:
        raise ValueError("Z/n needs n >= 1")
    a = np.arange(n)
    return FiniteCommRing(f"Z/{n}", tuple(str(i) for i in range(n)),
                          (a[:, None] + a[None, :]) % n, (a[:, None] * a[None, :]) % n,
                          1 % n)


def _poly_label(coeffs) -> str:
    terms = []
    for k in range(len(coeffs) - 1, -1, -1):
        c = coeffs[k]
        if c == 0:
            continue
        mono = "" if k == 0 else "x" if k == 1 else f"x^{k}"
        coef = str(c) if (c != 1 or k == 0) else ""
        terms.append(coef + mono)
    return "+".join(terms) if terms else "0"


def poly_quotient(p: int, f: list[int]) -> FiniteCommRing:
    """F_p[x]/(f) with f given by coefficients, constant term first."""
    if p < 2 or any(p % q == 0 for q in range(2, int(p ** 0.5) + 1)):
        raise ValueError(f"F_{p} needs a prime p")
    f = [c % p for c in f]
    while f and f[-1] == 0:
        f.pop()
    if not f:
        raise ValueError("cannot quotient by the zero polynomial")
    inv = pow(f[-1], -1, p)
    f = [c * inv % p for c in f]
    d = len(f) - 1
    n = p ** d
    desc = f"F{p}[x]/({_poly_label(f)})"
    if d == 0:
        zero = np.zeros((1, 1), dtype=np.int64)
        return FiniteCommRing(desc, ("0",), zero, zero.copy(), 0)
    # row i holds the coefficients of element i, constant term first
    coeffs = (np.arange(n)[:, None] // p ** np.arange(d)[None, :]) % p
    weights = p ** np.arange(d)

    def reduce(poly):
        poly = list(poly) + [0] * max(0, d - len(poly))
        for k in range(len(poly) - 1, d - 1, -1):
            c = poly[k]
            if c:
                for t in range(d + 1):
                    poly[k - d + t] = (poly[k - d + t] - c * f[t]) % p
        return poly[:d]

    # x^k modulo f for every k that a product of two residues can reach
    powers = np.array([reduce([0] * k + [1]) for k in range(max(2 * d - 1, 1))],
                      dtype=np.int64).reshape(-1, d)
    add = ((coeffs[:, None, :] + coeffs[None, :, :]) % p) @ weights
    full = np.zeros((n, n, max(2 * d - 1, 1)), dtype=np.int64)
    for s_ in range(d):
        for t in range(d):
            full[:, :, s_ + t] += coeffs[:, None, s_] * coeffs[None, :, t]
    mul = ((full @ powers) % p) @ weights
    one = int(np.array(reduce([1]), dtype=np.int64) @ weights) if d else 0
    elems = [tuple(int(c) for c in row) for row in coeffs]
    return FiniteCommRing(desc, tuple(_poly_label(e) for e in elems), add, mul, one)


def product(*rings: FiniteCommRing) -> FiniteCommRing:
    """Direct product; elements are tuples in mixed radix, last factor fastest."""
    flat = []
    for R in rings:
        flat.extend(R.components or (R,))
    sizes = [len(R) for R in flat]
    idx = np.indices(sizes).reshape(len(flat), -1).T
    labels = tuple("(" + ",".join(R.labels[k] for R, k in zip(flat, row)) + ")" for row in idx)
    n = len(labels)
    strides = [int(np.prod(sizes[t + 1:], dtype=int)) for t in range(len(flat))]
    add = np.zeros((n, n), dtype=np.int64)
    mul = np.zeros((n, n), dtype=np.int64)
    for t, R in enumerate(flat):
        col = idx[:, t]
        add += R.add[np.ix_(col, col)] * strides[t]
        mul += R.mul[np.ix_(col, col)] * strides[t]
    one = sum(R.one * s for R, s in zip(flat, strides))
    desc = " x ".join(R.description for R in flat)
    return FiniteCommRing(desc, labels, add, mul, one, tuple(flat))


_Z = re.compile(r"^Z\s*/\s*\(?\s*(\d+)\s*\)?$")
_POLY = re.compile(r"^F_?(\d+)\s*\[\s*x\s*\]\s*/\s*\((.*)\)$")
_TERM = re.compile(r"^(\d*)\s*\*?\s*(x(?:\s*\^\s*(\d+))?)?$")


def parse_polynomial(text: str, p: int) -> list[int]:
    """Coefficients (constant first) of a polynomial like ``x^2 + 2x - 1``."""
    src = text.replace(" ", "")
    if not src:
        raise DSLSyntaxError("empty polynomial", 1, 1)
    pieces = re.findall(r"[+-]?[^+-]+", src)
    if "".join(pieces) != src:
        raise DSLSyntaxError(f"cannot read polynomial {text!r}", 1, 1)
    coeffs: dict[int, int] = {}
    for piece in pieces:
        sign = -1 if piece.startswith("-") else 1
        body = piece.lstrip("+-")
        m = _TERM.match(body)
        if not m or not body:
            raise DSLSyntaxError(f"bad term {piece!r} in polynomial {text!r}", 1,
                                 text.find(body) + 1)
        c = int(m.group(1)) if m.group(1) else 1
        k = (int(m.group(3)) if m.group(3) else 1) if m.group(2) else 0
        coeffs[k] = (coeffs.get(k, 0) + sign * c) % p
    deg = max(coeffs)
    return [coeffs.get(k, 0) for k in range(deg + 1)]


def _split_product(text):
    parts, depth, start = [], 0, 0
    for m in re.finditer(r"[()\[\]]|\s+x\s+", text):
        tok = m.group()
        if tok in "([":
            depth += 1
        elif tok in ")]":
            depth -= 1
        elif depth == 0:
            parts.append(text[start:m.start()])
            start = m.end()
    parts.append(text[start:])
    return [p.strip() for p in parts]


def parse_ring(text: str) -> FiniteCommRing:
    """Read ``Z/12``, ``F2[x]/(x^2+x+1)`` or a product joined by `` x ``."""
    parts = _split_product(text.strip())
    rings = []
    for part in parts:
        m = _Z.match(part)
        if m:
            rings.append(zmod(int(m.group(1))))
            continue
        m = _POLY.match(part)
        if m:
            p = int(m.group(1))
            try:
                rings.append(poly_quotient(p, parse_polynomial(m.group(2), p)))
            except ValueError as exc:
                raise DSLSyntaxError(str(exc), 1, text.find(part) + 1) from None
            continue
        raise DSLSyntaxError(f"cannot read ring {part!r}", 1, text.find(part) + 1)
    return rings[0] if len(rings) == 1 else product(*rings)


# ------------------------------------------------------------------ validation

def check_ring_axioms(R: FiniteCommRing, samples: int = 20000, seed: int = 0) -> Report:
    """Commutative ring axioms, exhaustively for |R| <= 64, sampled above."""
    rep = Report()
    n = len(R)
    A, M = R.add, R.mul
    for name, T in (("add", A), ("mul", M)):
        if not np.array_equal(T, T.T):
            i, j = np.argwhere(T != T.T)[0]
            rep.add("commutative", f"{name} not commutative", (R.labels[i], R.labels[j]))
    if not np.array_equal(A[0], np.arange(n)):
        rep.add("zero", "0 is not an additive identity")
    if not np.array_equal(M[R.one], np.arange(n)):
        rep.add("one", "1 is not a multiplicative identity")
    if not (A == 0).any(axis=1).all():
        rep.add("negation", "some element has no additive inverse")
    if n <= 64:
        a, b, c = (x.ravel() for x in np.indices((n, n, n)))
    else:
        rng = np.random.default_rng(seed)
        a, b, c = rng.integers(0, n, size=(3, samples))
    checks = {
        "add-assoc": (A[A[a, b], c], A[a, A[b, c]]),
        "mul-assoc": (M[M[a, b], c], M[a, M[b, c]]),
        "distributive": (M[a, A[b, c]], A[M[a, b], M[a, c]]),
    }
    for name, (lhs, rhs) in checks.items():
        bad = np.flatnonzero(lhs != rhs)
        if bad.size:
            k = bad[0]
            rep.add(name, f"{name} fails", (R.labels[a[k]], R.labels[b[k]], R.labels[c[k]]))
    return rep


def _cap(R, cap):
    if len(R) > cap:
        raise CapExceeded(f"ring {R.description} has {len(R)} elements, cap is {cap}")


# ------------------------------------------------------------------ operations

def all_ideals(R: FiniteCommRing, cap: int = DEFAULT_RING_CAP) -> list[RingIdeal]:
    """Every ideal, by closing the principal ideals under sums; ordered by size, label."""
    _cap(R, cap)
    cached = R.__dict__.get("_ideals")
    if cached is not None:
        return list(cached)
    found: dict[bytes, np.ndarray] = {}
    principals = []
    for g in range(len(R)):
        P = R.principal_masks[g]
        if P.tobytes() not in found:
            found[P.tobytes()] = P
            principals.append(g)
    queue = list(found.values())
    while queue:
        I = queue.pop()
        for g in principals:
            if I[g]:
                continue
            S = R.add_principal(I, g)
            key = S.tobytes()
            if key not in found:
                found[key] = S
                queue.append(S)
    ideals = [RingIdeal(R, m) for m in found.values()]
    ideals.sort(key=lambda I: (len(I), I.label))
    R.__dict__["_ideals"] = tuple(ideals)
    return ideals


def is_prime_ideal(I: RingIdeal) -> bool:
    """Proper, and ab ∈ I implies a ∈ I or b ∈ I, over all pairs."""
    inside = I.mask
    if inside.all():
        return False
    prod_in = inside[I.ring.mul]
    return bool(np.all(~prod_in | inside[:, None] | inside[None, :]))


def prime_ideals(R: FiniteCommRing, cap: int = DEFAULT_RING_CAP) -> list[RingIdeal]:
    return [I for I in all_ideals(R, cap) if is_prime_ideal(I)]


def radical(I: RingIdeal) -> RingIdeal:
    """{a | a^k ∈ I for some k}."""
    return RingIdeal(I.ring, I.mask[I.ring.high_power])


def prime_spectrum(R: FiniteCommRing, cap: int = DEFAULT_RING_CAP) -> SpectralSpace:
    """Primes ordered by inclusion, opens the down-sets, basis D(f) = {p | f ∉ p}."""
    primes = prime_ideals(R, cap)
    labels = [p.label for p in primes]
    rel = {(a.label, b.label) for a in primes for b in primes if a <= b}
    points = Poset(labels, rel)
    basis = frozenset(frozenset(p.label for p in primes if not p.mask[f]) for f in range(len(R)))
    return SpectralSpace(points, "down", basis)


def basic_open_D(R: FiniteCommRing, f, cap: int = DEFAULT_RING_CAP) -> frozenset:
    f = R.index[f] if isinstance(f, str) else f
    return frozenset(p.label for p in prime_ideals(R, cap) if not p.mask[f])


def radical_ideals(R: FiniteCommRing, cap: int = DEFAULT_RING_CAP) -> list[RingIdeal]:
    return [I for I in all_ideals(R, cap) if radical(I) == I]


def radical_ideal_lattice(R: FiniteCommRing, cap: int = DEFAULT_RING_CAP) -> RadLattice:
    """Radical ideals under inclusion; each element f generates √(f)."""
    rads = radical_ideals(R, cap)
    by_label = {I.label: I for I in rads}
    L = build_lattice([I.label for I in rads], lambda a, b: by_label[a] <= by_label[b])
    gen_image = {R.labels[f]: radical(RingIdeal(R, R.principal(f))).label for f in range(len(R))}
    return RadLattice(L, gen_image)


def ideal_by_label(R: FiniteCommRing, label: str, cap: int = DEFAULT_RING_CAP) -> RingIdeal:
    for I in all_ideals(R, cap):
        if I.label == label:
            return I
    raise KeyError(label)


def torsion_kernel(R: FiniteCommRing, f: int) -> np.ndarray:
    """ann(f^∞) = {a | a·f^k = 0 for some k} as a mask."""
    return R.mul[:, R.high_power[f]] == 0


def quotient_ring(R: FiniteCommRing, K: np.ndarray, description: str):
    """R/K for an ideal mask K; returns the ring and the projection as an index array."""
    members = np.flatnonzero(K)
    rep = R.add[:, members].min(axis=1)
    reps = np.unique(rep)
    pos = np.full(len(R), -1)
    pos[reps] = np.arange(len(reps))
    proj = pos[rep]
    add = proj[R.add[np.ix_(reps, reps)]]
    mul = proj[R.mul[np.ix_(reps, reps)]]
    Q = FiniteCommRing(description, tuple(R.labels[r] for r in reps), add, mul,
                       int(proj[R.one]))
    return Q, proj


def localization(R: FiniteCommRing, f) -> tuple[FiniteCommRing, np.ndarray]:
    """R[f⁻¹] = R/ann(f^∞) and the canonical map, as an index array."""
    f = R.index[f] if isinstance(f, str) else f
    return quotient_ring(R, torsion_kernel(R, f), f"{R.description}[1/{R.labels[f]}]")


# ------------------------------------------------------------------------ HNB

@dataclass
class HomeoWitness:
    """Point bijection prime ↦ spectrum point, and per-element section isomorphisms."""

    ring: str
    bijection: dict[str, str]
    opens: dict[str, tuple[frozenset, frozenset]]
    sections: dict[str, dict[str, str]]


def _image_radical(R, Rf, proj, J: RingIdeal) -> RingIdeal:
    mask = Rf.zero_mask()
    mask[proj[J.mask]] = True
    return radical(RingIdeal(Rf, mask))


def hnb_check(R: FiniteCommRing, cap: int = DEFAULT_RING_CAP) -> HomeoWitness:
    """Match the spectrum of the radical-ideal lattice with the prime spectrum.

    The tensor lattice of R orders radical ideals by reverse inclusion (a
    larger ideal is a smaller open), so its spectrum is spc of the opposite
    lattice.  The prime p corresponds to the point j_p, the intersection of
    all radical ideals not contained in p; under it U(√f) is exactly D(f).
    For each f the sections over U(√f) are compared with the radical-ideal
    lattice of R[f⁻¹] through J ↦ √(image of J).
    """
    rads = radical_ideals(R, cap)
    by_label = {I.label: I for I in rads}
    RL = radical_ideal_lattice(R, cap)
    T = RadLattice(opposite(RL.lattice), RL.gen_image)
    X1 = spc(T)
    primes = prime_ideals(R, cap)
    X2 = prime_spectrum(R, cap)

    bijection = {}
    for p in primes:
        mask = np.ones(len(R), dtype=bool)
        for I in rads:
            if not I <= p:
                mask &= I.mask
        bijection[p.label] = R.label_of(mask)
    points = set(X1.points.elements)
    if sorted(bijection.values()) != sorted(points):
        raise MismatchFound(f"{R.description}: primes {sorted(bijection)} map to "
                            f"{sorted(bijection.values())}, spectrum points are {sorted(points)}")
    Y = X1.normalized().points
    for p in primes:
        for q in primes:
            if (p <= q) != Y.leq(bijection[p.label], bijection[q.label]):
                raise MismatchFound(f"{R.description}: order differs at {p.label}, {q.label}")

    F = structure_presheaf(T)
    opens, sections, cache = {}, {}, {}
    for f in range(len(R)):
        name = R.labels[f]
        D = frozenset(p.label for p in primes if not p.mask[f])
        rf = T.gen_image[name]
        U = frozenset(x for x in X1.points if T.lattice.leq(rf, x))
        if frozenset(bijection[p] for p in D) != U:
            raise MismatchFound(f"{R.description}: D({name}) = {sorted(D)} but "
                                f"U(√{name}) = {sorted(U)}")
        opens[name] = (D, U)
        # R[f⁻¹] depends only on ann(f^∞), and the sections only on √f
        key = (rf, torsion_kernel(R, f).tobytes())
        if key not in cache:
            Rf, proj = localization(R, f)
            target = opposite(radical_ideal_lattice(Rf, cap).lattice)
            S = F.sections[rf]
            phi = {J: _image_radical(R, Rf, proj, by_label[J]).label for J in S}
            if not all(v in target for v in phi.values()) or not is_lattice_isomorphism(
                    LatticeMap(S, target, phi)):
                raise MismatchFound(f"{R.description}: sections over U(√{name}) are not "
                                    f"isomorphic to the radical ideals of the localization")
            cache[key] = phi
        sections[name] = cache[key]
    return HomeoWitness(R.description, bijection, opens, sections)
