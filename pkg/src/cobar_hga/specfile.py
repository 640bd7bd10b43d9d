"""Reading and writing bialgebra description files.

A description is a YAML document::

    name: acyclic34            # optional
    kind: bialgebra            # or coalgebra (no product table)
    unit: "1"                  # optional, default "1"
    generators:
      - {name: x, degree: 3}
      - {name: y, degree: 4}
      - {name: xy, degree: 7}
    differential:
      y: [x]
    product:
      x * y: [xy]
    coproduct:
      xy: [xy|1, x|y, y|x, 1|xy]

Targets are lists of basis names (``[]`` is zero, coefficients are 1 over
GF(2)).  Omitted entries take the defaults of DgBialgebra.from_tables.
Every error carries the line and column (1-based) of the offending node.
"""

from __future__ import annotations

import hashlib
import re

import yaml

from .dg import UNIT, DgBialgebra
from .errors import SpecParseError

NAME = re.compile(r"[^\s|*#\[\]{},:]+")
SECTIONS = ("name", "kind", "unit", "generators", "differential", "product", "coproduct")


def _error(node, message: str) -> SpecParseError:
    mark = node.start_mark
    return SpecParseError(message, mark.line + 1, mark.column + 1)


def _expect(node, kind, what: str):
    if not isinstance(node, kind):
        raise _error(node, f"expected {what}")
    return node


def _scalar(node, what: str) -> str:
    return _expect(node, yaml.ScalarNode, what).value


class _Parser:
    def __init__(self, text: str):
        try:
            self.root = yaml.compose(text, Loader=yaml.SafeLoader)
        except yaml.MarkedYAMLError as exc:
            mark = exc.problem_mark or exc.context_mark
            line, col = (mark.line + 1, mark.column + 1) if mark else (0, 0)
            raise SpecParseError(f"malformed document: {exc.problem or exc}", line, col) from None
        if self.root is None:
            raise SpecParseError("empty description", 1, 1)
        _expect(self.root, yaml.MappingNode, "a mapping of sections at top level")
        self.declared: dict[str, int] = {}

    def name_ref(self, node) -> str:
        name = _scalar(node, "a basis name").strip()
        if name not in self.declared:
            raise _error(node, f"undeclared basis element {name!r}")
        return name

    def parse(self) -> DgBialgebra:
        sections = {}
        for key, value in self.root.value:
            k = _scalar(key, "a section name")
            if k not in SECTIONS:
                raise _error(key, f"unknown section {k!r}; expected one of {', '.join(SECTIONS)}")
            if k in sections:
                raise _error(key, f"duplicate section {k!r}")
            sections[k] = value
        title = _scalar(sections["name"], "a name") if "name" in sections else ""
        kind = _scalar(sections["kind"], "bialgebra or coalgebra") if "kind" in sections else "bialgebra"
        if kind not in ("bialgebra", "coalgebra"):
            raise _error(sections["kind"], f"kind must be bialgebra or coalgebra, not {kind!r}")
        unit = "1"
        if "unit" in sections:
            unit = self.new_name(sections["unit"])
        self.declared[unit] = 0
        if "generators" not in sections:
            raise SpecParseError("missing section 'generators'", self.root.start_mark.line + 1, 1)
        generators = self.generators(sections["generators"])
        differential = self.table(sections.get("differential"), self.single, self.name_ref)
        coproduct = self.table(sections.get("coproduct"), self.single, self.pair)
        product = None
        if "product" in sections:
            if kind == "coalgebra":
                raise _error(sections["product"], "a coalgebra has no product table")
            product = self.table(sections["product"], self.pair_key, self.name_ref)
        return DgBialgebra.from_tables(generators, unit, differential=differential, product=product,
                                       coproduct=coproduct, has_product=kind == "bialgebra", name=title)

    def new_name(self, node) -> str:
        name = _scalar(node, "a basis name").strip()
        if not NAME.fullmatch(name):
            raise _error(node, f"invalid basis name {name!r}")
        if name in self.declared:
            raise _error(node, f"basis element {name!r} declared twice")
        return name

    def generators(self, node) -> list[tuple[str, int]]:
        out = []
        for item in _expect(node, yaml.SequenceNode, "a list of generators").value:
            fields = {_scalar(k, "a field name"): (k, v)
                      for k, v in _expect(item, yaml.MappingNode, "{name: ..., degree: ...}").value}
            extra = set(fields) - {"name", "degree"}
            if extra:
                raise _error(fields[sorted(extra)[0]][0], f"unknown generator field {sorted(extra)[0]!r}")
            if "name" not in fields or "degree" not in fields:
                raise _error(item, "a generator needs both name and degree")
            name = self.new_name(fields["name"][1])
            deg_node = fields["degree"][1]
            try:
                degree = int(_scalar(deg_node, "an integer degree"))
            except ValueError:
                raise _error(deg_node, "degree must be an integer") from None
            if degree <= 0:
                raise _error(deg_node, f"generator {name!r} must have positive degree (only the unit has degree 0)")
            self.declared[name] = degree
            out.append((name, degree))
        return out

    def table(self, node, parse_key, parse_term) -> dict:
        if node is None:
            return {}
        if isinstance(node, yaml.ScalarNode) and node.value in ("", "null", "~"):
            return {}
        out: dict = {}
        for key, value in _expect(node, yaml.MappingNode, "a mapping of entries").value:
            src = parse_key(key)
            if src in out:
                raise _error(key, f"duplicate entry for {key.value!r}")
            terms = _expect(value, yaml.SequenceNode, "a list of target terms")
            out[src] = [parse_term(t) for t in terms.value]
        return out

    def single(self, node) -> str:
        return self.name_ref(node)

    def _split(self, node, sep: str) -> tuple[str, str]:
        text = _scalar(node, f"a term of the form a{sep}b")
        parts = [p.strip() for p in text.split(sep)]
        if len(parts) != 2 or not all(parts):
            raise _error(node, f"expected a term of the form a{sep}b, got {text!r}")
        for p in parts:
            if p not in self.declared:
                raise _error(node, f"undeclared basis element {p!r}")
        return parts[0], parts[1]

    def pair(self, node) -> tuple[str, str]:
        return self._split(node, "|")

    def pair_key(self, node) -> tuple[str, str]:
        return self._split(node, "*")


def parse(text: str) -> DgBialgebra:
    """Parse a description; raises SpecParseError with line and column."""
    return _Parser(text).parse()


def load(path) -> DgBialgebra:
    with open(path, encoding="utf-8") as fh:
        return parse(fh.read())


def digest(text: str) -> str:
    return "sha256:" + hashlib.sha256(text.encode("utf-8")).hexdigest()


def serialize(b: DgBialgebra) -> str:
    """Write ``b`` so that parse(serialize(b)) has the same structure constants.

    Entries equal to the parser defaults are omitted.
    """
    nm = b.name_of
    doc: dict = {}
    if b.name:
        doc["name"] = b.name
    doc["kind"] = "bialgebra" if b.has_product else "coalgebra"
    doc["unit"] = nm(UNIT)
    doc["generators"] = [{"name": nm(k), "degree": b.degree(k)} for k in b.positive_basis]
    diff = {nm(k): sorted(nm(t) for t in b.d_basis(k)) for k in b.basis if b.d_basis(k)}
    if diff:
        doc["differential"] = diff
    if b.has_product:
        prod = {}
        for x in b.basis:
            for y in b.basis:
                got = b.mul_basis(x, y)
                default = {x} if y == UNIT else {y} if x == UNIT else set()
                if set(got) != default:
                    prod[f"{nm(x)} * {nm(y)}"] = sorted(nm(t) for t in got)
        if prod:
            doc["product"] = prod
    cop = {}
    for k in b.basis:
        got = set(b.coproduct_basis(k))
        default = {(UNIT, UNIT)} if k == UNIT else {(k, UNIT), (UNIT, k)}
        if got != default:
            cop[nm(k)] = sorted(f"{nm(l)}|{nm(r)}" for l, r in got)
    if cop:
        doc["coproduct"] = cop
    return yaml.safe_dump(doc, sort_keys=False, allow_unicode=True, default_flow_style=None, width=100)
