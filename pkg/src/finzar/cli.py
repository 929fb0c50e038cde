"""Command-line front end.

Every verb reads one input, given either as a path to a file or inline as the
text itself, and prints a report in plain text or as JSON.  Exit status is 0
for a clean result, 1 when the tool ran and found a violation or mismatch,
and 2 for bad input.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass, field

from . import formats
from .dlattice import DEFAULT_GENERATOR_CAP, DistLattice, free_dlattice, opposite
from .duality import hochster_dual, homeomorphism, spectral_space_of
from .errors import FinzarError, MismatchFound, NotFunctorial
from .ring_oracle import (
    DEFAULT_RING_CAP,
    all_ideals,
    check_ring_axioms,
    hnb_check,
    parse_ring,
    prime_ideals,
    radical_ideal_lattice,
)
from .sheaf import FinitePresheaf, carrier, check_sheaf, sheafify, structure_presheaf
from .support import factor_support, verify_support
from .ttlattice import RadLattice, is_local, is_zariski_cover, localize, realize, spc, stalk

VERBS = ("lattice-free", "lattice-quotient", "spc", "dual", "localize", "stalk",
         "cover-check", "sheaf-check", "sheafify", "support-verify", "support-factor",
         "ring-spec", "hnb")
FORMAT_ENV = "FINZAR_FORMAT"


@dataclass
class Command:
    verb: str
    input: str
    args: list[str] = field(default_factory=list)
    format: str = "plain"
    gen_cap: int = DEFAULT_GENERATOR_CAP
    ring_cap: int = DEFAULT_RING_CAP
    depth: int = 1
    seed: int = 0


@dataclass
class Outcome:
    status: int
    output: str
    error: str = ""


class InputError(FinzarError):
    pass


# ------------------------------------------------------------------ reading

def read_source(arg: str) -> str:
    """File contents when ``arg`` names an existing file, else ``arg`` itself."""
    if os.path.isfile(arg):
        with open(arg, encoding="utf-8") as fh:
            return fh.read()
    return arg


def _first_word(text):
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if line:
            return line.split()[0].rstrip(";")
    return ""


def load_lattice(text: str, cap: int) -> RadLattice | DistLattice:
    head = _first_word(text)
    if head == "lattice":
        return formats.parse_lattice(text)
    if head == "gens":
        return realize(formats.parse_presentation(text), cap)
    raise InputError(f"expected a presentation or a lattice block, got {head!r}")


def _element(R, text: str) -> str:
    """An element given by label, or by an expression over the generators."""
    L = R.lattice if isinstance(R, RadLattice) else R
    if text in L:
        return text
    if isinstance(R, RadLattice):
        return R.radical(formats.parse_expression(text, R.gen_image))
    raise InputError(f"{text!r} is not an element of the lattice")


# ---------------------------------------------------------------- rendering

def _lattice_tree(L: DistLattice):
    return {"elements": list(L.elements), "covers": [f"{a} < {b}" for a, b in L.covers()]}


def render_plain(tree, indent=0) -> list[str]:
    pad = "  " * indent
    out = []
    for key, value in tree.items():
        if isinstance(value, dict):
            out.append(f"{pad}{key}:")
            out += render_plain(value, indent + 1)
        elif isinstance(value, list):
            if all(not isinstance(v, (dict, list)) for v in value):
                out.append(f"{pad}{key}: " + (", ".join(map(str, value)) if value else "(none)"))
            else:
                out.append(f"{pad}{key}:")
                for v in value:
                    if isinstance(v, dict):
                        sub = render_plain(v, indent + 2)
                        out.append(f"{pad}  - " + sub[0].strip())
                        out += sub[1:]
                    else:
                        out.append(f"{pad}  - {v}")
        elif isinstance(value, str) and "\n" in value:
            out.append(f"{pad}{key}:")
            out += [f"{pad}  {line}" for line in value.rstrip("\n").splitlines()]
        else:
            out.append(f"{pad}{key}: {value}")
    return out


def render(tree, fmt: str) -> str:
    if fmt == "structured":
        return json.dumps(tree, indent=2, ensure_ascii=False) + "\n"
    return "\n".join(render_plain(tree)) + "\n"


def _report_tree(rep):
    return [{"kind": f.kind, "message": f.message, "witness": _jsonable(f.witness)} for f in rep]


def _jsonable(x):
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if x is None or isinstance(x, (int, float, bool)):
        return x
    return str(x)


# -------------------------------------------------------------------- verbs

def _lattice_free(cmd):
    try:
        n = int(cmd.input)
    except ValueError:
        raise InputError(f"lattice-free expects a generator count, got {cmd.input!r}") from None
    L, emb = free_dlattice(n, cap=cmd.gen_cap)
    return 0, {"generators": n, "size": len(L), "embedding": emb, **_lattice_tree(L)}


def _lattice_quotient(cmd):
    R = load_lattice(read_source(cmd.input), cmd.gen_cap)
    if not isinstance(R, RadLattice):
        raise InputError("lattice-quotient expects a presentation")
    return 0, {"size": len(R.lattice), "generator images": R.gen_image,
               **_lattice_tree(R.lattice)}


def _spc(cmd):
    R = load_lattice(read_source(cmd.input), cmd.gen_cap)
    X = spc(R)
    tree = {"points": list(X.points.elements),
            "order": [f"{a} < {b}" for a, b in X.points.covers()],
            "specialization": [f"{a} ~> {b}" for a, b in X.specialization_covers()]}
    if isinstance(R, RadLattice):
        L = R.lattice
        tree["basic opens"] = {g: "{" + ", ".join(p for p in X.points if L.leq(x, p)) + "}"
                               for g, x in R.gen_image.items()}
    return 0, tree


def _dual(cmd):
    R = load_lattice(read_source(cmd.input), cmd.gen_cap)
    L = R.lattice if isinstance(R, RadLattice) else R
    X = spectral_space_of(L)
    D = hochster_dual(X)
    involution = hochster_dual(D) == X
    flipped = homeomorphism(spectral_space_of(D.opens), spectral_space_of(opposite(X.opens)),
                            match_basis=False) is not None
    ok = involution and flipped
    return (0 if ok else 1), {
        "points": list(X.points.elements),
        "specialization": [f"{a} ~> {b}" for a, b in X.specialization_covers()],
        "dual specialization": [f"{a} ~> {b}" for a, b in D.specialization_covers()],
        "dual of dual is identity": involution,
        "opens of dual match opposite opens": flipped,
    }


def _localize(cmd):
    R = load_lattice(read_source(cmd.input), cmd.gen_cap)
    if len(cmd.args) != 1:
        raise InputError("localize expects one element")
    I = _element(R, cmd.args[0])
    sub, f = localize(R, I)
    return 0, {"at": I, **_lattice_tree(sub), "map": dict(f.mapping)}


def _stalk(cmd):
    R = load_lattice(read_source(cmd.input), cmd.gen_cap)
    if len(cmd.args) != 1:
        raise InputError("stalk expects one point")
    p = _element(R, cmd.args[0])
    S = stalk(R, p)
    return (0 if is_local(S) else 1), {"point": p, **_lattice_tree(S), "local": bool(is_local(S))}


def _cover_check(cmd):
    R = load_lattice(read_source(cmd.input), cmd.gen_cap)
    if not cmd.args:
        raise InputError("cover-check expects at least one element")
    ideals = [_element(R, a) for a in cmd.args]
    c = is_zariski_cover(R, ideals)
    return (0 if c else 1), {"elements": ideals, "meet": c.witness, "cover": c.ok}


def _load_presheaf(cmd) -> FinitePresheaf:
    text = read_source(cmd.input)
    if _first_word(text) == "presheaf":
        return formats.parse_presheaf(text)
    R = load_lattice(text, cmd.gen_cap)
    return structure_presheaf(R)


def _sheaf_check(cmd):
    F = _load_presheaf(cmd)
    try:
        rep = check_sheaf(F)
    except NotFunctorial as exc:
        return 1, {"functorial": False, "problem": str(exc)}
    tree = {"functorial": True, "sheaf": rep.ok,
            "failures": [{"condition": f.kind, "pair": _jsonable(f.witness),
                          "message": f.message} for f in rep]}
    return (0 if rep.ok else 1), tree


def _sheafify(cmd):
    F = _load_presheaf(cmd)
    G = sheafify(F)
    return 0, {"presheaf": formats.serialize_presheaf(G),
               "sections": {x: len(carrier(G.sections[x])) for x in G.frame}}


def _support_verify(cmd):
    s = formats.parse_support(read_source(cmd.input))
    rep = verify_support(s, cmd.depth)
    return (0 if rep.ok else 1), {"valid": rep.ok, "findings": _report_tree(rep)}


def _support_factor(cmd):
    s = formats.parse_support(read_source(cmd.input))
    rep = verify_support(s, cmd.depth)
    if not rep.ok:
        return 1, {"valid": False, "findings": _report_tree(rep)}
    f = factor_support(s, cmd.gen_cap)
    return 0, {"valid": True, "supp": dict(f.mapping)}


def _ring_spec(cmd):
    R = parse_ring(read_source(cmd.input))
    axioms = check_ring_axioms(R, seed=cmd.seed)
    RL = radical_ideal_lattice(R, cmd.ring_cap)
    tree = {"ring": R.description, "size": len(R),
            "ideals": [I.label for I in all_ideals(R, cmd.ring_cap)],
            "primes": [p.label for p in prime_ideals(R, cmd.ring_cap)],
            "radical ideals": _lattice_tree(RL.lattice),
            "ring axioms": axioms.ok}
    if not axioms.ok:
        tree["findings"] = _report_tree(axioms)
    return (0 if axioms.ok else 1), tree


def _hnb(cmd):
    R = parse_ring(read_source(cmd.input))
    try:
        w = hnb_check(R, cmd.ring_cap)
    except MismatchFound as exc:
        return 1, {"ring": R.description, "match": False, "mismatch": str(exc)}
    return 0, {"ring": R.description, "match": True,
               "bijection": dict(w.bijection),
               "localizations checked": len({tuple(sorted(m.items())) for m in w.sections.values()})}


HANDLERS = {
    "lattice-free": _lattice_free, "lattice-quotient": _lattice_quotient, "spc": _spc,
    "dual": _dual, "localize": _localize, "stalk": _stalk, "cover-check": _cover_check,
    "sheaf-check": _sheaf_check, "sheafify": _sheafify, "support-verify": _support_verify,
    "support-factor": _support_factor, "ring-spec": _ring_spec, "hnb": _hnb,
}


def run(cmd: Command) -> Outcome:
    if cmd.verb not in HANDLERS:
        return Outcome(2, "", f"unknown verb {cmd.verb!r}")
    if cmd.format not in ("plain", "structured"):
        return Outcome(2, "", f"unknown format {cmd.format!r}")
    try:
        status, tree = HANDLERS[cmd.verb](cmd)
    except (FinzarError, OSError, ValueError) as exc:
        return Outcome(2, "", f"error: {type(exc).__name__}: {exc}")
    return Outcome(status, render(tree, cmd.format))


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="finzar", description=__doc__.splitlines()[0])
    p.add_argument("verb", choices=VERBS)
    p.add_argument("input", help="file path or inline text")
    p.add_argument("args", nargs="*", help="extra operands (elements, points)")
    p.add_argument("--format", choices=("plain", "structured"),
                   default=os.environ.get(FORMAT_ENV, "plain"),
                   help=f"output format (default from ${FORMAT_ENV}, else plain)")
    p.add_argument("--gen-cap", type=int, default=DEFAULT_GENERATOR_CAP)
    p.add_argument("--ring-cap", type=int, default=DEFAULT_RING_CAP)
    p.add_argument("--depth", type=int, default=1, help="expression depth for support checks")
    p.add_argument("--seed", type=int, default=0, help="seed for sampled checks")
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    cmd = Command(ns.verb, ns.input, ns.args, ns.format, ns.gen_cap, ns.ring_cap,
                  ns.depth, ns.seed)
    out = run(cmd)
    if out.output:
        sys.stdout.write(out.output)
    if out.error:
        sys.stderr.write(out.error + "\n")
    return out.status


if __name__ == "__main__":
    sys.exit(main())
