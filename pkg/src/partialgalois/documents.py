"""JSON documents: extensions, cochains, psi families and symbolic PicS data.

An extension document carries ring, group, action and an optional twisting.
Cochain-like documents name the extension they belong to by the SHA-256 of
its canonical serialization, and are refused when it does not match.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from pathlib import Path
from typing import Any

from . import pics
from .abelian import Hom
from .action import ActionSpecError, PartialAction, Twisting, validate_partial_action
from .cohomology import Cochain, CochainError, cochain_complex, cochain_to_json
from .group import FiniteGroup, GroupSpecError
from .ring import Ring, RingSpecError, build_ring


class DocumentError(ValueError):
    """A document does not parse; `location` is a JSON path."""

    def __init__(self, location: str, message: str):
        super().__init__(f"{location}: {message}")
        self.location = location


@dataclass
class Extension:
    pa: PartialAction
    twisting: Twisting | None
    document: dict

    @property
    def sha256(self) -> str:
        return document_hash(self.document)


def canonical_json(doc: Any) -> str:
    return json.dumps(doc, sort_keys=True, separators=(",", ":"))


def document_hash(doc: Any) -> str:
    return hashlib.sha256(canonical_json(doc).encode()).hexdigest()


def load_json(path: str | Path) -> Any:
    try:
        with open(path) as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"{path}:{exc.lineno}:{exc.colno}", exc.msg) from None
    except OSError as exc:
        raise DocumentError(str(path), exc.strerror or "cannot read") from None


def _field(doc: Any, key: str, where: str):
    if not isinstance(doc, dict):
        raise DocumentError(where, "expected an object")
    if key not in doc:
        raise DocumentError(where, f"missing field {key!r}")
    return doc[key]


def _element(ring: Ring, label: Any, where: str) -> int:
    try:
        return ring.element(label)
    except (RingSpecError, TypeError, KeyError, ValueError):
        raise DocumentError(where, f"not an element of the ring: {label!r}") from None


# extensions

def extension_to_json(pa: PartialAction, twisting: Twisting | None = None) -> dict:
    ring, grp = pa.ring, pa.group
    doc = {
        "ring": ring.description,
        "group": grp.to_json(),
        "action": [{"g": g, "one_g": ring.to_json(pa.ones[g]),
                    "alpha": [[ring.to_json(x), ring.to_json(y)] for x, y in sorted(pa.alpha[g].items())]}
                   for g in grp.elements()],
    }
    if twisting is not None:
        doc["twisting"] = [{"g": g, "h": h, "value": ring.to_json(twisting(g, h))}
                           for g in grp.elements() for h in grp.elements()]
    return doc


def parse_extension(doc: Any) -> Extension:
    try:
        ring = build_ring(_field(doc, "ring", "$"))
    except RingSpecError as exc:
        raise DocumentError("$.ring", str(exc)) from None
    gdoc = _field(doc, "group", "$")
    table = _field(gdoc, "table", "$.group")
    try:
        grp = FiniteGroup(table, gdoc.get("names"))
    except (GroupSpecError, TypeError, IndexError) as exc:
        raise DocumentError("$.group", str(exc)) from None
    if gdoc.get("order", grp.order) != grp.order:
        raise DocumentError("$.group.order", "does not match the table")
    entries = _field(doc, "action", "$")
    if not isinstance(entries, list) or len(entries) != grp.order:
        raise DocumentError("$.action", f"expected {grp.order} entries")
    ones, alpha = [None] * grp.order, [None] * grp.order
    for i, entry in enumerate(entries):
        where = f"$.action[{i}]"
        g = _field(entry, "g", where)
        if not isinstance(g, int) or not 0 <= g < grp.order or ones[g] is not None:
            raise DocumentError(f"{where}.g", "bad or repeated group index")
        ones[g] = _element(ring, _field(entry, "one_g", where), f"{where}.one_g")
        pairs = _field(entry, "alpha", where)
        table_g = {}
        for k, pair in enumerate(pairs):
            if not isinstance(pair, list) or len(pair) != 2:
                raise DocumentError(f"{where}.alpha[{k}]", "expected [src, dst]")
            table_g[_element(ring, pair[0], f"{where}.alpha[{k}][0]")] = _element(ring, pair[1], f"{where}.alpha[{k}][1]")
        alpha[g] = table_g
    try:
        pa = PartialAction(ring, grp, ones, alpha)
    except ActionSpecError as exc:
        raise DocumentError("$.action", str(exc)) from None
    twisting = None
    if "twisting" in doc:
        values = [[None] * grp.order for _ in grp.elements()]
        for i, entry in enumerate(doc["twisting"]):
            where = f"$.twisting[{i}]"
            g, h = _field(entry, "g", where), _field(entry, "h", where)
            if not (isinstance(g, int) and isinstance(h, int) and 0 <= g < grp.order and 0 <= h < grp.order):
                raise DocumentError(where, "bad group index")
            values[g][h] = _element(ring, _field(entry, "value", where), f"{where}.value")
        if any(v is None for row in values for v in row):
            raise DocumentError("$.twisting", "every pair (g, h) needs a value")
        twisting = Twisting(values)
    normalized = extension_to_json(pa, twisting)
    return Extension(pa, twisting, normalized)


def load_extension(path: str | Path) -> Extension:
    return parse_extension(load_json(path))


# cochains and psi families

def cochain_document(ext: Extension, f: Cochain, kind: str = "cochain") -> dict:
    return {"kind": kind, "extension_sha256": ext.sha256, "degree": f.degree,
            "values": cochain_to_json(ext.pa, f)}


def _check_hash(ext: Extension, doc: Any) -> None:
    digest = _field(doc, "extension_sha256", "$")
    if digest != ext.sha256:
        raise DocumentError("$.extension_sha256", "document belongs to a different extension")


def parse_cochain(ext: Extension, doc: Any, degree: int | None = None) -> Cochain:
    _check_hash(ext, doc)
    n = _field(doc, "degree", "$")
    if degree is not None and n != degree:
        raise DocumentError("$.degree", f"expected a degree-{degree} cochain")
    cx = cochain_complex(ext.pa)
    tuples = cx.degree(n).tuples
    index = {tuple(t): i for i, t in enumerate(tuples)}
    values = [None] * len(tuples)
    for i, entry in enumerate(_field(doc, "values", "$")):
        where = f"$.values[{i}]"
        args = tuple(_field(entry, "args", where))
        if args not in index:
            raise DocumentError(f"{where}.args", "not a tuple of group indices of the right length")
        values[index[args]] = _element(ext.pa.ring, _field(entry, "value", where), f"{where}.value")
    if any(v is None for v in values):
        raise DocumentError("$.values", "cochain must give a value on every tuple")
    try:
        return cx.make(n, values)
    except CochainError as exc:
        raise DocumentError("$.values", str(exc)) from None


def parse_psi_units(ext: Extension, doc: Any) -> list[int]:
    _check_hash(ext, doc)
    units = _field(doc, "units", "$")
    if not isinstance(units, list) or len(units) != ext.pa.group.order:
        raise DocumentError("$.units", "one unit per group element")
    return [_element(ext.pa.ring, u, f"$.units[{i}]") for i, u in enumerate(units)]


# symbolic PicS

def parse_symbolic_pics(doc: Any, ring: Ring | None = None) -> tuple[pics.PicSMonoid, dict]:
    """Returns the monoid and the raw action block (or an empty dict).

    {"components": [...], "meet": [[i, ...]], "groups": [[d, ...], ...],
     "eps": [{"from": i, "to": j, "matrix": [[...]]}],
     "action": {"domains": [i per g], "maps": [{"g", "component", "image", "matrix"}]}}
    """
    raw = _field(doc, "components", "$")
    comps = [_element(ring, c, f"$.components[{i}]") if ring is not None else i for i, c in enumerate(raw)]
    meet = _field(doc, "meet", "$")
    groups = _field(doc, "groups", "$")
    if len(meet) != len(comps) or len(groups) != len(comps):
        raise DocumentError("$", "meet table and groups need one row per component")
    table = {(comps[i], comps[j]): comps[meet[i][j]] for i in range(len(comps)) for j in range(len(comps))}
    eps = {}
    for k, e in enumerate(doc.get("eps", [])):
        eps[(comps[_field(e, "from", f"$.eps[{k}]")], comps[_field(e, "to", f"$.eps[{k}]")])] = \
            [list(r) for r in _field(e, "matrix", f"$.eps[{k}]")]
    try:
        monoid = pics.build_symbolic_pics(comps, table, {c: tuple(groups[i]) for i, c in enumerate(comps)}, eps, ring)
    except (pics.PicSError, ValueError) as exc:
        raise DocumentError("$", str(exc)) from None
    return monoid, {"components": comps, "action": doc.get("action", {})}


def symbolic_action(monoid: pics.PicSMonoid, raw: dict, group: FiniteGroup) -> pics.PartialActionOnPicS:
    comps = raw["components"]
    block = raw["action"]
    domains = [comps[i] for i in _field(block, "domains", "$.action")]
    maps = [dict() for _ in group.elements()]
    homs = [dict() for _ in group.elements()]
    for k, entry in enumerate(_field(block, "maps", "$.action")):
        where = f"$.action.maps[{k}]"
        g = _field(entry, "g", where)
        src, dst = comps[_field(entry, "component", where)], comps[_field(entry, "image", where)]
        maps[g][src] = dst
        matrix = entry.get("matrix")
        if matrix is not None:
            try:
                homs[g][src] = Hom(monoid.groups[src], monoid.groups[dst], tuple(tuple(r) for r in matrix))
            except ValueError as exc:
                raise DocumentError(where, str(exc)) from None
    return pics.PartialActionOnPicS(monoid, group, domains, maps, homs)


def fixture_document(name: str) -> dict:
    from . import fixtures
    builders = {"ex-a": fixtures.ex_a, "ex-b": fixtures.ex_b, "klein": fixtures.klein_partial}
    if name not in builders:
        raise DocumentError("fixture", f"unknown fixture {name!r}; choose from {sorted(builders)}")
    pa = builders[name]()
    report = validate_partial_action(pa)
    assert report.ok
    return extension_to_json(pa)
