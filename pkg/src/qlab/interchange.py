"""Instance files and machine-readable reports.

The file format is canonical JSON (sorted keys, two-space indent, trailing
newline), so serialize -> parse -> serialize is byte-identical. Witnesses in
reports are rendered through the instance's element labels.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field

from . import order
from .errors import InputError
from .groupoid import FiniteGroupoid
from .lattice import FiniteLattice
from .quantale import InvolutiveQuantale, RelationQuantale, TableQuantale
from .semigroup import FiniteInverseSemigroup

FORMAT_VERSION = 1


def canonical_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=True) + "\n"


def parse_document(text: str) -> dict:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"not valid JSON: line {exc.lineno}: {exc.msg}")
    if not isinstance(doc, dict):
        raise InputError("top level must be an object")
    if doc.get("format") != FORMAT_VERSION:
        raise InputError(f"unsupported or missing format version (want {FORMAT_VERSION})")
    return doc


def _labels(block: dict, n: int, what: str) -> tuple[str, ...]:
    labels = block.get("elements")
    if labels is None:
        return tuple(f"e{i}" for i in range(n))
    if (not isinstance(labels, list) or len(labels) != n
            or any(not isinstance(x, str) for x in labels)):
        raise InputError(f"{what}: elements must be {n} strings")
    if len(set(labels)) != n:
        raise InputError(f"{what}: duplicate element labels")
    return tuple(labels)


def _int_matrix(block: dict, key: str, n: int, what: str):
    rows = block.get(key)
    if (not isinstance(rows, list) or len(rows) != n
            or any(not isinstance(r, list) or len(r) != n for r in rows)):
        raise InputError(f"{what}: {key} must be an {n}x{n} table")
    for r in rows:
        for v in r:
            if not isinstance(v, int) or not 0 <= v < n:
                raise InputError(f"{what}: {key} entry {v!r} names no element")
    return tuple(tuple(r) for r in rows)


def _int_row(block: dict, key: str, n: int, what: str):
    row = block.get(key)
    if not isinstance(row, list) or len(row) != n:
        raise InputError(f"{what}: {key} must list {n} entries")
    for v in row:
        if not isinstance(v, int) or not 0 <= v < n:
            raise InputError(f"{what}: {key} entry {v!r} names no element")
    return tuple(row)


def lattice_from_block(block: dict, what: str = "lattice") -> tuple[FiniteLattice, tuple[str, ...]]:
    n = block.get("size")
    if not isinstance(n, int) or n <= 0:
        raise InputError(f"{what}: size must be a positive integer")
    pairs = block.get("order")
    if not isinstance(pairs, list):
        raise InputError(f"{what}: order must be a list of [i, j] pairs")
    for p in pairs:
        if (not isinstance(p, list) or len(p) != 2
                or any(not isinstance(v, int) or not 0 <= v < n for v in p)):
            raise InputError(f"{what}: bad order pair {p!r}")
    labels = _labels(block, n, what)
    lat = FiniteLattice.from_pairs(n, [tuple(p) for p in pairs])
    return lat, labels


def quantale_from_block(block: dict) -> tuple[InvolutiveQuantale, tuple[str, ...]]:
    if not isinstance(block, dict):
        raise InputError("quantale block must be an object")
    sym = block.get("symbolic")
    if sym is not None:
        if not isinstance(sym, str) or not sym.startswith("rel:"):
            raise InputError(f"unknown symbolic tag {sym!r}")
        try:
            n = int(sym[4:])
        except ValueError:
            raise InputError(f"symbolic tag {sym!r} carries no size")
        if n < 0:
            raise InputError("symbolic relation carrier needs a nonnegative size")
        q = RelationQuantale(n)
        return q, tuple(relation_label(q, a) for a in range(q.n))
    lat, labels = lattice_from_block(block, "quantale")
    mult = _int_matrix(block, "mult", lat.n, "quantale")
    inv = _int_row(block, "inv", lat.n, "quantale")
    unit = block.get("unit")
    if unit is not None and (not isinstance(unit, int) or not 0 <= unit < lat.n):
        raise InputError("quantale: unit names no element")
    return TableQuantale(lat, mult, inv, unit), labels


def quantale_to_block(q: InvolutiveQuantale, labels=None) -> dict:
    if isinstance(q, RelationQuantale):
        return {"symbolic": f"rel:{q.nset}"}
    n = q.n
    pairs = sorted((i, j) for i in range(n) for j in range(n)
                   if i != j and q.leq(i, j))
    block = {
        "size": n,
        "order": [[i, j] for i, j in pairs],
        "mult": [[q.mult(a, b) for b in range(n)] for a in range(n)],
        "inv": [q.inv(a) for a in range(n)],
        "unit": q.unit,
    }
    if labels is not None:
        block["elements"] = list(labels)
    return block


def semigroup_from_block(block: dict) -> tuple[FiniteInverseSemigroup, tuple[str, ...]]:
    n = block.get("size")
    if not isinstance(n, int) or n <= 0:
        raise InputError("inverse_semigroup: size must be a positive integer")
    mult = _int_matrix(block, "mult", n, "inverse_semigroup")
    inv = _int_row(block, "inv", n, "inverse_semigroup")
    labels = _labels(block, n, "inverse_semigroup")
    return FiniteInverseSemigroup(mult, inv), labels


def semigroup_to_block(s: FiniteInverseSemigroup, labels=None) -> dict:
    block = {
        "size": s.n,
        "mult": [[s.mult(a, b) for b in range(s.n)] for a in range(s.n)],
        "inv": [s.inv(a) for a in range(s.n)],
    }
    if labels is not None:
        block["elements"] = list(labels)
    return block


def groupoid_from_block(block: dict) -> FiniteGroupoid:
    n_obj = block.get("objects")
    if not isinstance(n_obj, int) or n_obj < 0:
        raise InputError("groupoid: objects must be a nonnegative integer")
    arrows = block.get("arrows")
    if not isinstance(arrows, list):
        raise InputError("groupoid: arrows must be a list")
    n = len(arrows)
    dom, cod = [], []
    for a in arrows:
        if (not isinstance(a, dict) or not isinstance(a.get("dom"), int)
                or not isinstance(a.get("cod"), int)):
            raise InputError(f"groupoid: bad arrow {a!r}")
        if not (0 <= a["dom"] < n_obj and 0 <= a["cod"] < n_obj):
            raise InputError(f"groupoid: arrow endpoints out of range in {a!r}")
        dom.append(a["dom"])
        cod.append(a["cod"])
    comp_rows = block.get("comp")
    if (not isinstance(comp_rows, list) or len(comp_rows) != n
            or any(not isinstance(r, list) or len(r) != n for r in comp_rows)):
        raise InputError(f"groupoid: comp must be an {n}x{n} table (null = undefined)")
    comp = []
    for r in comp_rows:
        row = []
        for v in r:
            if v is not None and (not isinstance(v, int) or not 0 <= v < n):
                raise InputError(f"groupoid: comp entry {v!r} names no arrow")
            row.append(v)
        comp.append(row)
    inv = _int_row(block, "inv", n, "groupoid")
    units = block.get("units")
    if (not isinstance(units, list) or len(units) != n_obj
            or any(not isinstance(u, int) or not 0 <= u < n for u in units)):
        raise InputError("groupoid: units must name one arrow per object")
    return FiniteGroupoid(n_obj, dom, cod, comp, inv, units)


def groupoid_to_block(g: FiniteGroupoid) -> dict:
    return {
        "objects": g.n_objects,
        "arrows": [{"dom": g.dom[u], "cod": g.cod[u]} for u in range(g.n_arrows)],
        "comp": [list(row) for row in g.comp],
        "inv": list(g.inv),
        "units": list(g.unit),
    }


def relation_label(q: RelationQuantale, a: int) -> str:
    pairs = q.pairs_of(a)
    if not pairs:
        return "{}"
    return "{" + ",".join(f"({z},{y})" for z, y in sorted(pairs)) + "}"


@dataclass
class Instance:
    doc: dict
    name: str
    quantale: InvolutiveQuantale | None = None
    labels: tuple[str, ...] | None = None
    lattice: FiniteLattice | None = None
    semigroup: FiniteInverseSemigroup | None = None
    semigroup_labels: tuple[str, ...] | None = None
    groupoid: FiniteGroupoid | None = None
    quantales: dict[str, tuple[InvolutiveQuantale, tuple[str, ...]]] = field(default_factory=dict)
    map_block: dict | None = None

    def label(self, element: int) -> str:
        if self.labels is not None and 0 <= element < len(self.labels):
            return self.labels[element]
        return f"e{element}"


def load_instance(text: str) -> Instance:
    doc = parse_document(text)
    name = doc.get("name")
    if name is None:
        name = hashlib.sha256(canonical_json(doc).encode()).hexdigest()[:12]
    elif not isinstance(name, str):
        raise InputError("name must be a string")
    inst = Instance(doc=doc, name=name)
    if "lattice" in doc:
        inst.lattice, _ = lattice_from_block(doc["lattice"])
    if "quantale" in doc:
        inst.quantale, inst.labels = quantale_from_block(doc["quantale"])
    if "inverse_semigroup" in doc:
        inst.semigroup, inst.semigroup_labels = semigroup_from_block(doc["inverse_semigroup"])
    if "groupoid" in doc:
        inst.groupoid = groupoid_from_block(doc["groupoid"])
    if "quantales" in doc:
        if not isinstance(doc["quantales"], dict):
            raise InputError("quantales must map names to blocks")
        for qname, block in doc["quantales"].items():
            inst.quantales[qname] = quantale_from_block(block)
    if "map" in doc:
        mb = doc["map"]
        if not isinstance(mb, dict):
            raise InputError("map block must be an object")
        for side in ("source", "target"):
            ref = mb.get(side)
            if not isinstance(ref, str) or ref not in inst.quantales:
                raise InputError(f"map: {side} must name a declared quantale")
        src = inst.quantales[mb["source"]][0]
        tgt = inst.quantales[mb["target"]][0]
        star = mb.get("star")
        if (not isinstance(star, list) or len(star) != tgt.n
                or any(not isinstance(v, int) or not 0 <= v < src.n for v in star)):
            raise InputError("map: star must list one source element per target element")
        inst.map_block = mb
    return inst


def rel_instance(n: int) -> Instance:
    doc = {"format": FORMAT_VERSION, "name": f"rel:{n}",
           "quantale": {"symbolic": f"rel:{n}"}}
    q = RelationQuantale(n)
    labels = tuple(relation_label(q, a) for a in range(q.n))
    return Instance(doc=doc, name=f"rel:{n}", quantale=q, labels=labels)


# ---------------------------------------------------------------------------
# reports


@dataclass
class CheckRow:
    name: str
    verdict: str                    # PASS / FAIL / SKIP
    witness: list[str] | None = None
    reason: str | None = None
    data: dict | None = None


@dataclass
class Report:
    command: str
    instance: str
    config: dict
    checks: list[CheckRow] = field(default_factory=list)

    def add(self, name: str, verdict: str, witness=None, reason=None, data=None):
        self.checks.append(CheckRow(name, verdict, witness, reason, data))

    def exit_code(self) -> int:
        verdicts = {row.verdict for row in self.checks}
        if "FAIL" in verdicts:
            return 1
        if "SKIP" in verdicts:
            return 2
        return 0

    def to_json(self) -> str:
        rows = []
        for row in self.checks:
            d = {"name": row.name, "verdict": row.verdict}
            if row.witness is not None:
                d["witness"] = row.witness
            if row.reason is not None:
                d["reason"] = row.reason
            if row.data is not None:
                d["data"] = row.data
            rows.append(d)
        return canonical_json({
            "command": self.command,
            "instance": self.instance,
            "config": self.config,
            "checks": rows,
        })

    def render_text(self) -> str:
        lines = [f"instance {self.instance} ({self.command})"]
        for row in self.checks:
            extra = ""
            if row.witness:
                extra = "  witness: " + ", ".join(row.witness)
            if row.reason:
                extra += f"  [{row.reason}]"
            if row.data:
                extra += "  " + " ".join(f"{k}={v}" for k, v in sorted(row.data.items()))
            lines.append(f"  {row.verdict:4} {row.name}{extra}")
        return "\n".join(lines) + "\n"
