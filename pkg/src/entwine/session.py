"""Structure-constant files: a JSON document naming spaces, matrices and structures.

Layout::

    {
      "field": "F2",
      "braiding": "trivial",
      "objects": {"H": [2, 0]},
      "morphisms": {
        "m": {"dom": ["H", "H"], "cod": "H", "rows": [["1", "0", "0", "1"], ["0", "1", "1", "0"]]}
      },
      "structures": {
        "alg": {"kind": "algebra", "unit": "e", "mult": "m"}
      }
    }

``objects`` map a name to ``[even_dim, odd_dim]`` (even basis vectors first)
or to ``{"degrees": [0, 1, ...]}`` for an arbitrary degree sequence.  A ``dom``/``cod`` is an
object name, ``"I"`` for the unit, or a list of names for their tensor product
(``[]`` is the unit as well).  Matrix entries are strings holding integers or
``a/b`` fractions; over ``F<p>`` they are reduced mod ``p``.  Structure fields
are listed in :data:`KINDS`.  Every problem is reported as a
:class:`SessionError` carrying the path of the offending value.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

from .linalg import FieldSpec, Matrix, ShapeError
from .monoidal import UNIT, BraidingKind, LinMap, MonoidalCtx, Obj, tensor_obj
from .structures import Algebra, Coalgebra, RightComodule, RightModule
from .entwining import EntwinedModule, Entwining
from .galois import GroupLike
from .hopf import Bialgebra, ComoduleAlgebra, HopfAlgebra

# field name -> role; roles are "morphism" or the structure role it must resolve to
KINDS: dict[str, dict[str, str]] = {
    "algebra": {"unit": "morphism", "mult": "morphism"},
    "coalgebra": {"counit": "morphism", "comult": "morphism"},
    "module": {"action": "morphism", "over": "algebra"},
    "comodule": {"coaction": "morphism", "over": "coalgebra"},
    "entwining": {"algebra": "algebra", "coalgebra": "coalgebra", "lambda": "morphism"},
    "bialgebra": {"algebra": "algebra", "coalgebra": "coalgebra"},
    "hopf": {"algebra": "algebra", "coalgebra": "coalgebra", "antipode": "morphism"},
    "comodule_algebra": {"algebra": "algebra", "coaction": "morphism", "over": "bialgebra"},
    "entwined_module": {"action": "morphism", "coaction": "morphism", "over": "entwining"},
    "grouplike": {"coalgebra": "coalgebra", "vector": "morphism"},
}

# which kinds can stand in for a role
ROLES = {
    "algebra": ("algebra", "bialgebra", "hopf"),
    "coalgebra": ("coalgebra", "bialgebra", "hopf"),
    "bialgebra": ("bialgebra", "hopf"),
    "entwining": ("entwining",),
}


class SessionError(ValueError):
    """A parse or resolution problem at ``path`` (and ``line``/``column`` for syntax errors)."""

    def __init__(self, path: str, message: str, line: int | None = None, column: int | None = None):
        self.path = path
        self.message = message
        self.line = line
        self.column = column
        where = path or "<document>"
        if line is not None:
            where += f" (line {line}, column {column})"
        super().__init__(f"{where}: {message}")


@dataclass(frozen=True)
class Morphism:
    dom: tuple[str, ...]
    cod: tuple[str, ...]
    map: LinMap


@dataclass
class Structure:
    kind: str
    refs: dict[str, str]
    value: Any = None


@dataclass
class SessionFile:
    field: FieldSpec
    braiding: BraidingKind
    objects: dict[str, Obj] = field(default_factory=dict)
    morphisms: dict[str, Morphism] = field(default_factory=dict)
    structures: dict[str, Structure] = field(default_factory=dict)

    @property
    def ctx(self) -> MonoidalCtx:
        return MonoidalCtx(self.field, self.braiding)

    def structure(self, name: str, *kinds: str) -> Structure:
        s = self.structures.get(name)
        if s is None:
            raise SessionError(f"structures.{name}", "no such structure")
        if kinds and s.kind not in kinds:
            raise SessionError(f"structures.{name}", f"is a {s.kind}, expected {' or '.join(kinds)}")
        return s


def _as_role(value, role: str):
    if role == "algebra" and isinstance(value, (Bialgebra, HopfAlgebra)):
        return value.alg
    if role == "coalgebra" and isinstance(value, (Bialgebra, HopfAlgebra)):
        return value.coalg
    if role == "bialgebra" and isinstance(value, HopfAlgebra):
        return value.bialg
    return value


class _Parser:
    def __init__(self, doc):
        self.doc = doc

    def fail(self, path, msg):
        raise SessionError(path, msg)

    def expect(self, v, typ, path, what):
        if not isinstance(v, typ):
            self.fail(path, f"expected {what}")
        return v

    def run(self) -> SessionFile:
        doc = self.expect(self.doc, dict, "", "a JSON object at top level")
        unknown = set(doc) - {"field", "braiding", "objects", "morphisms", "structures"}
        if unknown:
            self.fail(sorted(unknown)[0], "unknown top-level key")
        try:
            k = FieldSpec.parse(self.expect(doc.get("field"), str, "field", 'a field string such as "Q" or "F2"'))
        except ValueError as exc:
            self.fail("field", str(exc))
        b = doc.get("braiding", "trivial")
        try:
            braid = BraidingKind(b)
        except ValueError:
            self.fail("braiding", 'expected "trivial" or "super"')
        s = SessionFile(k, braid)
        self.objects(s, doc.get("objects", {}))
        self.morphisms(s, doc.get("morphisms", {}))
        raw = self.expect(doc.get("structures", {}), dict, "structures", "an object")
        self.raw_structures = raw
        self.resolving: list[str] = []
        for name in raw:
            self.resolve(s, name, f"structures.{name}")
        return s

    def objects(self, s: SessionFile, raw):
        raw = self.expect(raw, dict, "objects", "an object")
        for name, dims in raw.items():
            p = f"objects.{name}"
            if name == "I":
                self.fail(p, '"I" is reserved for the unit object')
            if isinstance(dims, dict) and set(dims) == {"degrees"}:
                degs = dims["degrees"]
                if not isinstance(degs, list) or any(d not in (0, 1) or isinstance(d, bool) for d in degs):
                    self.fail(f"{p}.degrees", "expected a list of 0/1 degrees")
                s.objects[name] = Obj(tuple(degs))
                continue
            ok = isinstance(dims, list) and len(dims) == 2 and all(isinstance(d, int) and not isinstance(d, bool) and d >= 0 for d in dims)
            if not ok:
                self.fail(p, 'expected [even_dim, odd_dim] or {"degrees": [...]}')
            s.objects[name] = Obj.of(*dims)

    def obj_ref(self, s: SessionFile, raw, path) -> tuple[tuple[str, ...], Obj]:
        names = [raw] if isinstance(raw, str) else raw
        if not isinstance(names, list) or not all(isinstance(n, str) for n in names):
            self.fail(path, "expected an object name or a list of names")
        names = [n for n in names if n != "I"]
        for n in names:
            if n not in s.objects:
                self.fail(path, f"unknown object {n!r}")
        return tuple(names), (tensor_obj(*(s.objects[n] for n in names)) if names else UNIT)

    def morphisms(self, s: SessionFile, raw):
        raw = self.expect(raw, dict, "morphisms", "an object")
        k = s.field
        for name, decl in raw.items():
            p = f"morphisms.{name}"
            decl = self.expect(decl, dict, p, "an object with dom, cod and rows")
            for key in decl:
                if key not in ("dom", "cod", "rows"):
                    self.fail(f"{p}.{key}", "unknown key")
            if "dom" not in decl or "cod" not in decl or "rows" not in decl:
                self.fail(p, "needs dom, cod and rows")
            dn, dom = self.obj_ref(s, decl["dom"], f"{p}.dom")
            cn, cod = self.obj_ref(s, decl["cod"], f"{p}.cod")
            rows = self.expect(decl["rows"], list, f"{p}.rows", "a list of rows")
            if len(rows) != cod.total_dim:
                self.fail(f"{p}.rows", f"has {len(rows)} rows, codomain has dimension {cod.total_dim}")
            entries = []
            for i, row in enumerate(rows):
                rp = f"{p}.rows[{i}]"
                row = self.expect(row, list, rp, "a list of entries")
                if len(row) != dom.total_dim:
                    self.fail(rp, f"has {len(row)} entries, domain has dimension {dom.total_dim}")
                for j, x in enumerate(row):
                    ep = f"{rp}[{j}]"
                    if isinstance(x, bool) or not isinstance(x, (str, int)):
                        self.fail(ep, "entries must be strings (integers or a/b fractions)")
                    try:
                        entries.append(k(x))
                    except (ValueError, ZeroDivisionError) as exc:
                        self.fail(ep, f"bad entry {x!r}: {exc}")
            try:
                f = LinMap(dom, cod, Matrix(k, cod.total_dim, dom.total_dim, entries))
            except (ValueError, ShapeError) as exc:
                self.fail(p, str(exc))
            s.morphisms[name] = Morphism(dn, cn, f)

    def resolve(self, s: SessionFile, name: str, path: str):
        if name in s.structures:
            return s.structures[name].value
        if name not in self.raw_structures:
            self.fail(path, f"unknown structure {name!r}")
        if name in self.resolving:
            self.fail(f"structures.{name}", "circular reference")
        self.resolving.append(name)
        sp = f"structures.{name}"
        decl = self.expect(self.raw_structures[name], dict, sp, "an object")
        kind = decl.get("kind")
        if kind not in KINDS:
            self.fail(f"{sp}.kind", f"expected one of {', '.join(KINDS)}")
        fields = KINDS[kind]
        for key in decl:
            if key != "kind" and key not in fields:
                self.fail(f"{sp}.{key}", f"unknown field for {kind}")
        refs, vals = {}, {}
        for key, role in fields.items():
            fp = f"{sp}.{key}"
            if key not in decl:
                self.fail(sp, f"missing field {key!r}")
            ref = self.expect(decl[key], str, fp, "a name")
            refs[key] = ref
            if role == "morphism":
                if ref not in s.morphisms:
                    self.fail(fp, f"unknown morphism {ref!r}")
                vals[key] = s.morphisms[ref].map
            else:
                if ref not in self.raw_structures:
                    self.fail(fp, f"unknown structure {ref!r}")
                v = self.resolve(s, ref, fp)
                sk = s.structures[ref].kind
                if sk not in ROLES[role]:
                    self.fail(fp, f"{ref!r} is a {sk}, expected {' or '.join(ROLES[role])}")
                vals[key] = _as_role(v, role)
        value = self.build(kind, vals)
        s.structures[name] = Structure(kind, refs, value)
        self.resolving.pop()
        return value

    def build(self, kind, v):
        def carrier(key, side="cod"):
            return getattr(v[key], side)

        if kind == "algebra":
            return Algebra(carrier("mult"), v["unit"], v["mult"])
        if kind == "coalgebra":
            return Coalgebra(carrier("comult", "dom"), v["counit"], v["comult"])
        if kind == "module":
            return RightModule(carrier("action"), v["action"], v["over"])
        if kind == "comodule":
            return RightComodule(carrier("coaction", "dom"), v["coaction"], v["over"])
        if kind == "entwining":
            return Entwining(v["algebra"], v["coalgebra"], v["lambda"])
        if kind == "bialgebra":
            return Bialgebra(v["algebra"], v["coalgebra"])
        if kind == "hopf":
            return HopfAlgebra(Bialgebra(v["algebra"], v["coalgebra"]), v["antipode"])
        if kind == "comodule_algebra":
            return ComoduleAlgebra(v["algebra"], v["coaction"], v["over"])
        if kind == "entwined_module":
            return EntwinedModule(carrier("action"), v["action"], v["coaction"], v["over"])
        return GroupLike(v["coalgebra"], v["vector"])


def parse_session_text(text: str) -> SessionFile:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SessionError("", exc.msg, exc.lineno, exc.colno) from None
    return _Parser(doc).run()


def parse_session(path: str | Path) -> SessionFile:
    p = Path(path)
    try:
        text = p.read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as exc:
        raise SessionError("", f"cannot read {p}: {exc}") from None
    return parse_session_text(text)


def _obj_ref(names: tuple[str, ...]):
    if not names:
        return "I"
    return names[0] if len(names) == 1 else list(names)


def _obj_doc(o: Obj):
    # [even, odd] when the even basis vectors come first, else the explicit degree list
    return list(o.dims) if o == Obj.of(*o.dims) else {"degrees": list(o.degrees)}


def to_document(s: SessionFile) -> dict:
    fmt = s.field.format
    return {
        "field": str(s.field),
        "braiding": s.braiding.value,
        "objects": {n: _obj_doc(o) for n, o in s.objects.items()},
        "morphisms": {
            n: {
                "dom": _obj_ref(m.dom),
                "cod": _obj_ref(m.cod),
                "rows": [[fmt(x) for x in row] for row in m.map.mat.to_rows()],
            }
            for n, m in s.morphisms.items()
        },
        "structures": {n: {"kind": st.kind, **st.refs} for n, st in s.structures.items()},
    }


def dumps_document(doc: dict) -> str:
    """Canonical text: two-space indentation with each matrix row on one line."""
    d = lambda x: json.dumps(x, ensure_ascii=False)  # noqa: E731
    out = ["{"]
    out.append(f'  "field": {d(doc["field"])},')
    out.append(f'  "braiding": {d(doc["braiding"])},')

    def block(key, items, last=False):
        if not items:
            out.append(f'  {d(key)}: {{}}' + ("" if last else ","))
            return
        out.append(f"  {d(key)}: {{")
        for i, line in enumerate(items):
            out.append(line + ("," if i < len(items) - 1 else ""))
        out.append("  }" + ("" if last else ","))

    block("objects", [f"    {d(n)}: {d(v)}" for n, v in doc["objects"].items()])
    mlines = []
    for n, m in doc["morphisms"].items():
        rows = m["rows"]
        body = ",\n".join(f"        {d(r)}" for r in rows)
        rows_txt = "[]" if not rows else "[\n" + body + "\n      ]"
        mlines.append(
            f"    {d(n)}: {{\n      \"dom\": {d(m['dom'])},\n      \"cod\": {d(m['cod'])},\n      \"rows\": {rows_txt}\n    }}"
        )
    block("morphisms", mlines)
    block("structures", [f"    {d(n)}: {d(v)}" for n, v in doc["structures"].items()], last=True)
    out.append("}")
    return "\n".join(out) + "\n"


def serialize(s: SessionFile) -> str:
    return dumps_document(to_document(s))
