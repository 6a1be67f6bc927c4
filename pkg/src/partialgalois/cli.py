"""Command-line front end.

Exit codes: 0 pass, 1 a mathematical check failed, 2 the input did not
parse, 3 an enumeration cap was exceeded.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from typing import Any

from . import crossed, documents, pics, sequence
from .action import (NotGaloisError, check_galois_coordinates, find_galois_coordinates, galois_extension,
                     invariant_subring, trace, validate_partial_action, validate_twisting)
from .cohomology import cochain_complex, cochain_to_json, cohomology_group
from .config import CAP_ENV, CapExceeded, enumeration_cap
from .report import ValidationReport

EXIT_PASS, EXIT_FAIL, EXIT_PARSE, EXIT_CAP = 0, 1, 2, 3


class Outcome:
    """Collects findings and reports for one run."""

    def __init__(self):
        self.result: dict[str, Any] = {}
        self.reports: list[dict] = []
        self.passed = True

    def report(self, r) -> None:
        self.reports.append(r.to_dict())
        self.passed = self.passed and r.ok

    def fail(self, check: str, witness: Any = None) -> None:
        r = ValidationReport(check)
        r.add(check, False, witness)
        self.report(r)


# helpers

def _ext(args) -> documents.Extension:
    if not args.input:
        raise documents.DocumentError("--input", "an extension document is required")
    return documents.load_extension(args.input)


def _galois(ext: documents.Extension, out: Outcome):
    try:
        return galois_extension(ext.pa)
    except NotGaloisError as exc:
        out.fail("extension is Galois", str(exc))
        return None


def _crossed_element(cp: crossed.CrossedProduct, raw: Any) -> tuple:
    ring = cp.ring
    out = list(cp.zero)
    if not isinstance(raw, list):
        raise documents.DocumentError("element", "expected a list of [g, coefficient] pairs")
    for k, pair in enumerate(raw):
        if not (isinstance(pair, list) and len(pair) == 2 and isinstance(pair[0], int)
                and 0 <= pair[0] < cp.group.order):
            raise documents.DocumentError(f"element[{k}]", "expected [g, coefficient]")
        g = pair[0]
        x = documents._element(ring, pair[1], f"element[{k}][1]")
        out[g] = ring.add(out[g], x)
    try:
        cp.validate(tuple(out))
    except crossed.CoefficientError as exc:
        raise documents.DocumentError("element", str(exc)) from None
    return tuple(out)


def _crossed_to_json(cp: crossed.CrossedProduct, a: tuple) -> list:
    return [[g, cp.ring.to_json(x)] for g, x in enumerate(a) if x != cp.ring.zero]


# subcommands

def cmd_fixture(args, out: Outcome) -> None:
    out.result["document"] = documents.fixture_document(args.name)


def cmd_validate(args, out: Outcome) -> None:
    ext = _ext(args)
    out.result["extension_sha256"] = ext.sha256
    out.report(validate_partial_action(ext.pa))
    if ext.twisting is not None:
        try:
            out.report(validate_twisting(ext.pa, ext.twisting))
        except ValueError as exc:
            out.fail("twisting values lie in their ideals", str(exc))


def cmd_invariants(args, out: Outcome) -> None:
    ext = _ext(args)
    inv = invariant_subring(ext.pa)
    out.result["invariants"] = [ext.pa.ring.to_json(x) for x in inv.elements]
    out.result["size"] = len(inv)


def cmd_trace(args, out: Outcome) -> None:
    ext = _ext(args)
    ring = ext.pa.ring
    xs = [documents._element(ring, json.loads(args.element), "--element")] if args.element else list(ring.elements())
    out.result["trace"] = [[ring.to_json(x), ring.to_json(trace(ext.pa, x))] for x in xs]


def cmd_coords(args, out: Outcome) -> None:
    ext = _ext(args)
    ring = ext.pa.ring
    coords = find_galois_coordinates(ext.pa, args.m_max)
    if coords is None:
        out.fail(f"Galois coordinates with m <= {args.m_max}")
        return
    out.result["coordinates"] = [[ring.to_json(x), ring.to_json(y)] for x, y in coords.pairs()]
    out.report(check_galois_coordinates(ext.pa, coords))


def cmd_cohomology(args, out: Outcome) -> None:
    ext = _ext(args)
    h = cohomology_group(ext.pa, args.degree, oracle=args.oracle, cap=args.cap)
    out.result.update({
        "degree": h.degree, "Z": h.z_order, "B": h.b_order, "H": h.h_order,
        "elementary_divisors": h.elementary_divisors, "method": h.method, "notes": h.notes,
    })
    if h.representatives is not None:
        out.result["representatives"] = [cochain_to_json(ext.pa, f) for f in h.representatives]


def cmd_crossed(args, out: Outcome) -> None:
    ext = _ext(args)
    pa = ext.pa
    cp = crossed.CrossedProduct(pa, ext.twisting)
    if args.multiply:
        a = _crossed_element(cp, json.loads(args.multiply[0]))
        b = _crossed_element(cp, json.loads(args.multiply[1]))
        out.result["product"] = _crossed_to_json(cp, cp.multiply(a, b))
    if args.table:
        monos = cp.monomials()
        out.result["table"] = [[[g, pa.ring.to_json(r)], [h, pa.ring.to_json(s)],
                                _crossed_to_json(cp, cp._mul(cp.monomial(g, r), cp.monomial(h, s)))]
                               for g, r in monos for h, s in monos]
    out.report(crossed.check_associativity(cp))
    if args.jmap:
        out.report(crossed.j_map(pa, args.cap).report)
    if args.detect:
        u = crossed.detect_trivial_class(pa, cp.omega, args.cap)
        out.result["coboundary_witness"] = None if u is None else cochain_to_json(pa, u)
        out.result["class"] = "trivial" if u is not None else "not detected"


def cmd_pics(args, out: Outcome) -> None:
    ext = _ext(args)
    pa = ext.pa
    if args.symbolic:
        monoid, raw = documents.parse_symbolic_pics(documents.load_json(args.symbolic), pa.ring)
        action = documents.symbolic_action(monoid, raw, pa.group) if raw["action"] else None
    else:
        monoid, action = pics.pics(pa.ring), pics.alpha_star(pa)
    out.result["layer"] = monoid.description
    out.result["components"] = [monoid.to_json(monoid.element(e)) for e in monoid.components]
    out.result["size"] = len(monoid.elements())
    out.report(monoid.verify_axioms())
    if action is not None:
        out.report(action.verify())
        inv = pics.pics_invariants(action)
        out.result["invariants"] = [monoid.to_json(x) for x in inv]
        out.report(pics.check_invariant_submonoid(action, inv))
        out.result["z1"] = [[monoid.to_json(x) for x in f] for f in pics.z1_pics(action)]
        for f in pics.z1_pics(action):
            rep = pics.phi_f(f, pa, action)
            out.report(pics.validate_partial_rep(rep))
            out.report(pics.check_domain_identities(rep))
    if not args.symbolic:
        tm = pics.TwistedIdempotentMonoid(pa)
        out.report(pics.check_against_tensor_oracle(tm))
        rep = pics.phi0(pa)
        out.result["phi0"] = [tm.to_json(x) for x in rep.values]
        out.report(pics.validate_partial_rep(rep))
        out.report(pics.check_domain_identities(rep))


def _cocycles(args, ext, degree: int) -> list:
    cx = cochain_complex(ext.pa)
    if args.cochain:
        return [documents.parse_cochain(ext, documents.load_json(args.cochain), degree)]
    return [f for f in cx.enumerate(degree, args.cap) if cx.is_cocycle(f)]


def cmd_phi1(args, out: Outcome) -> None:
    ext = _ext(args)
    gext = _galois(ext, out)
    if gext is None:
        return
    ring = ext.pa.ring
    rows = []
    cocycles = _cocycles(args, ext, 1)
    for f in cocycles:
        r = sequence.phi1(gext, f)
        rows.append({"f": cochain_to_json(ext.pa, f), "module": [ring.to_json(x) for x in r.elements],
                     "generator": None if r.generator is None else ring.to_json(r.generator),
                     "class": r.pic_class})
        out.report(r.report)
    out.result["results"] = rows
    if not args.cochain:
        out.report(sequence.phi1_multiplicativity(gext, cocycles))


def cmd_phi2(args, out: Outcome) -> None:
    ext = _ext(args)
    gext = _galois(ext, out)
    if gext is None:
        return
    r = sequence.phi2(gext)
    out.result["image"] = pics.pics(ext.pa.ring).to_json(r.image)
    out.report(r.report)


def cmd_phi3(args, out: Outcome) -> None:
    ext = _ext(args)
    gext = _galois(ext, out)
    if gext is None:
        return
    if args.psi:
        units = documents.parse_psi_units(ext, documents.load_json(args.psi))
        psi = sequence.PsiFamily(ext.pa, units)
        r = sequence.phi3(gext, psi)
        out.result["omega"] = cochain_to_json(ext.pa, r.omega)
        out.report(r.report)
    else:
        families = sequence.psi_families(ext.pa)
        out.result["families"] = len(families)
        out.report(sequence.phi3_choice_independence(gext, families))


def cmd_phi4(args, out: Outcome) -> None:
    ext = _ext(args)
    gext = _galois(ext, out)
    if gext is None:
        return
    cx = cochain_complex(ext.pa)
    if args.cochain:
        omega = documents.parse_cochain(ext, documents.load_json(args.cochain), 2)
    elif ext.twisting is not None:
        n = ext.pa.group.order
        omega = cx.make(2, [ext.twisting(g, h) for g in range(n) for h in range(n)])
    else:
        omega = cx.identity(2)
    rec = sequence.phi4(gext, omega, cap=args.cap)
    out.result["class"] = rec.label
    out.result["witness"] = None if rec.witness is None else cochain_to_json(ext.pa, rec.witness)
    out.report(rec.report)


def cmd_phi6(args, out: Outcome) -> None:
    ext = _ext(args)
    cx = cochain_complex(ext.pa)
    rho = documents.parse_cochain(ext, documents.load_json(args.rho), 2) if args.rho else None
    action = pics.alpha_star(ext.pa)
    f = pics.z1_pics(action)[0]
    r = sequence.phi6(ext.pa, f, rho, action, sigmas=[cx.identity(2)])
    out.result["omega"] = cochain_to_json(ext.pa, r.omega)
    out.report(r.report)


def cmd_verify(args, out: Outcome) -> None:
    ext = _ext(args)
    gext = _galois(ext, out)
    if gext is None:
        return
    r = sequence.verify_composites(gext, cap=args.cap)
    out.result["notes"] = r.notes
    for p in r.probes:
        out.report(p)


def cmd_template(args, out: Outcome) -> None:
    ext = _ext(args)
    cx = cochain_complex(ext.pa)
    out.result["document"] = documents.cochain_document(ext, cx.identity(args.degree))


COMMANDS = {
    "fixture": (cmd_fixture, "print a built-in extension document"),
    "validate": (cmd_validate, "check the partial action (and twisting) axioms"),
    "invariants": (cmd_invariants, "list the invariant subring"),
    "trace": (cmd_trace, "trace of one or all elements"),
    "coords": (cmd_coords, "search for Galois coordinates"),
    "cohomology": (cmd_cohomology, "compute Z^n, B^n, H^n"),
    "crossed": (cmd_crossed, "crossed-product arithmetic and checks"),
    "pics": (cmd_pics, "the PicS monoid, alpha*, invariants and partial representations"),
    "phi1": (cmd_phi1, "invariant modules of 1-cocycles"),
    "phi2": (cmd_phi2, "scalar extension of Picard classes"),
    "phi3": (cmd_phi3, "2-cocycles from psi families"),
    "phi4": (cmd_phi4, "class record of a crossed product"),
    "phi6": (cmd_phi6, "3-cocycle from rho data"),
    "verify": (cmd_verify, "empirical composite probes"),
    "template": (cmd_template, "identity cochain document for this extension"),
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", "-i", help="extension document (JSON)")
    common.add_argument("--format", choices=["human", "json"], default="human")
    common.add_argument("--cap", type=int, default=None,
                        help=f"enumeration cap (default: ${CAP_ENV} or 10^6)")
    parser = argparse.ArgumentParser(prog="partialgalois", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name, (_, help_) in COMMANDS.items():
        p = sub.add_parser(name, parents=[common], help=help_)
        if name == "fixture":
            p.add_argument("name", choices=["ex-a", "ex-b", "klein"])
        elif name == "trace":
            p.add_argument("--element", help="element as JSON")
        elif name == "coords":
            p.add_argument("--m-max", type=int, default=2)
        elif name == "cohomology":
            p.add_argument("--degree", type=int, required=True)
            p.add_argument("--oracle", action=argparse.BooleanOptionalAction, default=True)
        elif name == "crossed":
            p.add_argument("--multiply", nargs=2, metavar=("A", "B"), help="two elements as JSON [[g, r], ...]")
            p.add_argument("--table", action="store_true", help="full monomial multiplication table")
            p.add_argument("--jmap", action="store_true", help="check the j-map against End(R)")
            p.add_argument("--detect", action="store_true", help="search for a coboundary witness")
        elif name == "pics":
            p.add_argument("--symbolic", help="symbolic PicS document")
        elif name in ("phi1", "phi4"):
            p.add_argument("--cochain", help="cocycle document")
        elif name == "phi3":
            p.add_argument("--psi", help="psi-family document")
        elif name == "phi6":
            p.add_argument("--rho", help="rho document (default: identity)")
        elif name == "template":
            p.add_argument("--degree", type=int, required=True)
    return parser


def _config(args) -> dict:
    cfg = {k: v for k, v in sorted(vars(args).items()) if k not in ("format",)}
    cfg["cap"] = args.cap if args.cap is not None else enumeration_cap()
    return cfg


def _emit(doc: dict, fmt: str, elapsed: float) -> None:
    if fmt == "json":
        print(json.dumps(doc, sort_keys=True, indent=2))
        return
    print(f"{doc['command']}: {doc['status']}")
    for k, v in doc.get("result", {}).items():
        print(f"  {k}: {json.dumps(v)}")
    for r in doc.get("reports", []):
        print(f"  [{r['status']}] {r['subject']}")
        for c in r["checks"]:
            mark = "ok " if c["passed"] else "FAIL"
            extra = f"  witness={json.dumps(c['witness'])}" if "witness" in c and not c["passed"] else ""
            print(f"      {mark} {c['name']}{extra}")
        for n in r.get("notes", []):
            print(f"      note: {n}")
    if "error" in doc:
        print(f"  error ({doc['error']['kind']}): {doc['error']['message']}")
    print(f"  time: {elapsed:.3f}s")


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.cap is not None and args.cap <= 0:
        parser.error("--cap must be positive")
    saved = os.environ.get(CAP_ENV)
    if args.cap is not None:
        os.environ[CAP_ENV] = str(args.cap)
    try:
        return _run(args)
    finally:
        if saved is None:
            os.environ.pop(CAP_ENV, None)
        else:
            os.environ[CAP_ENV] = saved


def _run(args) -> int:
    out = Outcome()
    doc: dict[str, Any] = {"command": args.command}
    start = time.perf_counter()
    try:
        doc["config"] = _config(args)
        COMMANDS[args.command][0](args, out)
        code = EXIT_PASS if out.passed else EXIT_FAIL
        doc["status"] = "pass" if out.passed else "fail"
    except documents.DocumentError as exc:
        code = EXIT_PARSE
        doc["status"] = "error"
        doc["error"] = {"kind": "parse", "location": exc.location, "message": str(exc)}
    except CapExceeded as exc:
        code = EXIT_CAP
        doc["status"] = "error"
        doc["error"] = {"kind": "cap", "message": str(exc)}
    except (ValueError, ArithmeticError) as exc:
        code = EXIT_FAIL
        doc["status"] = "fail"
        doc["error"] = {"kind": "validation", "message": str(exc)}
    doc["result"] = out.result
    doc["reports"] = out.reports
    _emit(doc, args.format, time.perf_counter() - start)
    return code


if __name__ == "__main__":
    sys.exit(main())
