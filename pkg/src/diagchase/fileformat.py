"""Diagram files: a strict JSON subset with positions on every value.

Grammar (whitespace is space, tab, CR, LF; no comments)::

    value   := object | array | string | integer | "true" | "false"
    object  := "{" [ string ":" value { "," string ":" value } ] "}"
    array   := "[" [ value { "," value } ] "]"
    integer := [ "-" ] digit { digit }
    string  := '"' { char | escape } '"'      escape in \\" \\\\ \\/ \\n \\t

Duplicate keys, trailing commas, floats and ``null`` are rejected.  Every
error carries the 1-based line and column where it was detected.

Document layout::

    {
      "category": "fgab" | "vecfp",
      "prime": 2,                                  (vecfp only)
      "objects": {"A": [2, 4], ...},               (vecfp: {"V": 3})
      "morphisms": {"f": {"src": "A", "dst": "B", "matrix": [[...], ...]}},
      "assertions": [{"kind": "short_exact", "f": "f", "g": "g"}, ...]
    }
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field
from typing import Any

from .errors import InputError
from .vecfp import is_prime

LADDER_KEYS = ("f", "g", "f_prime", "g_prime", "alpha", "beta", "gamma")
GRID_KEYS = ("f1", "g1", "f2", "g2", "f3", "g3",
             "alpha1", "alpha2", "beta1", "beta2", "gamma1", "gamma2")

# kind -> (required morphism-name keys, optional keys with defaults)
ASSERTION_KINDS: dict[str, tuple[tuple[str, ...], dict[str, Any]]] = {
    "commutes": ((), {"morphisms": None}),
    "exact_at": (("f", "g"), {}),
    "short_exact": (("f", "g"), {}),
    "short_five": (LADDER_KEYS, {"mode": "iso"}),
    "short_five_trace": (LADDER_KEYS, {}),
    "nine_lemma": (GRID_KEYS, {"direction": "bottom_from_top"}),
}
_DIGITS = frozenset("0123456789")
_WHITESPACE = frozenset(" \t\r\n")
_CHOICES = {"mode": ("monic", "epic", "iso"),
            "direction": ("top_from_bottom", "bottom_from_top")}


class FileFormatError(InputError):
    """Input error with a source position."""

    def __init__(self, message: str, line: int, col: int):
        super().__init__(f"{line}:{col}: {message}")
        self.message = message
        self.line = line
        self.col = col

    def __reduce__(self):
        return type(self), (self.message, self.line, self.col)


@dataclass(frozen=True)
class Node:
    kind: str  # object | array | string | integer | boolean
    value: Any
    line: int
    col: int

    def plain(self) -> Any:
        if self.kind == "object":
            return {k: v.plain() for k, v in self.value.items()}
        if self.kind == "array":
            return [v.plain() for v in self.value]
        return self.value


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.i = 0
        self.line = 1
        self.col = 1

    def error(self, msg, line=None, col=None):
        raise FileFormatError(msg, line or self.line, col or self.col)

    def peek(self) -> str:
        return self.text[self.i] if self.i < len(self.text) else ""

    def advance(self, n: int = 1):
        for _ in range(n):
            if self.text[self.i] == "\n":
                self.line += 1
                self.col = 1
            else:
                self.col += 1
            self.i += 1

    def skip_ws(self):
        while self.peek() in _WHITESPACE:
            self.advance()

    def expect(self, ch: str):
        self.skip_ws()
        if self.peek() != ch:
            found = repr(self.peek()) if self.peek() else "end of input"
            self.error(f"expected {ch!r}, found {found}")
        self.advance()

    def document(self) -> Node:
        node = self.value()
        self.skip_ws()
        if self.peek():
            self.error("unexpected trailing content")
        return node

    def value(self) -> Node:
        self.skip_ws()
        ch, line, col = self.peek(), self.line, self.col
        if ch == "{":
            return self.obj()
        if ch == "[":
            return self.arr()
        if ch == '"':
            return Node("string", self.string(), line, col)
        if ch == "-" or ch in _DIGITS:
            return self.integer()
        for word, val in (("true", True), ("false", False)):
            if self.text.startswith(word, self.i):
                self.advance(len(word))
                return Node("boolean", val, line, col)
        if self.text.startswith("null", self.i):
            self.error("null is not allowed")
        if not ch:
            self.error("unexpected end of input")
        self.error(f"unexpected character {ch!r}")

    def obj(self) -> Node:
        line, col = self.line, self.col
        self.advance()
        out: dict[str, Node] = {}
        self.skip_ws()
        if self.peek() == "}":
            self.advance()
            return Node("object", out, line, col)
        while True:
            self.skip_ws()
            kl, kc = self.line, self.col
            if self.peek() != '"':
                self.error("expected a string key")
            key = self.string()
            if key in out:
                self.error(f"duplicate key {key!r}", kl, kc)
            self.expect(":")
            out[key] = self.value()
            self.skip_ws()
            if self.peek() == ",":
                self.advance()
                self.skip_ws()
                if self.peek() == "}":
                    self.error("trailing comma")
                continue
            self.expect("}")
            return Node("object", out, line, col)

    def arr(self) -> Node:
        line, col = self.line, self.col
        self.advance()
        out: list[Node] = []
        self.skip_ws()
        if self.peek() == "]":
            self.advance()
            return Node("array", out, line, col)
        while True:
            out.append(self.value())
            self.skip_ws()
            if self.peek() == ",":
                self.advance()
                self.skip_ws()
                if self.peek() == "]":
                    self.error("trailing comma")
                continue
            self.expect("]")
            return Node("array", out, line, col)

    _ESCAPES = {'"': '"', "\\": "\\", "/": "/", "n": "\n", "t": "\t"}

    def string(self) -> str:
        self.advance()
        buf = []
        while True:
            ch = self.peek()
            if not ch or ch == "\n":
                self.error("unterminated string")
            if ch == '"':
                self.advance()
                return "".join(buf)
            if ch == "\\":
                self.advance()
                esc = self.peek()
                if esc not in self._ESCAPES:
                    self.error(f"unsupported escape \\{esc}")
                buf.append(self._ESCAPES[esc])
                self.advance()
                continue
            buf.append(ch)
            self.advance()

    def integer(self) -> Node:
        line, col = self.line, self.col
        start = self.i
        if self.peek() == "-":
            self.advance()
        if self.peek() not in _DIGITS:
            self.error("expected digits")
        while self.peek() in _DIGITS:
            self.advance()
        if self.peek() in (".", "e", "E"):
            self.error("only integers are allowed")
        return Node("integer", int(self.text[start:self.i]), line, col)


def parse_json_subset(text: str) -> Node:
    return _Parser(text).document()


# ---------------------------------------------------------------- document model


@dataclass(frozen=True)
class ObjectDecl:
    name: str
    value: Any  # tuple of invariant factors, or a dimension
    line: int
    col: int


@dataclass(frozen=True)
class MorphismDecl:
    name: str
    src: str
    dst: str
    rows: tuple[tuple[int, ...], ...]
    line: int
    col: int


@dataclass(frozen=True)
class AssertionDecl:
    index: int
    kind: str
    args: tuple[tuple[str, Any], ...]
    label: str | None
    line: int
    col: int

    def arg(self, key: str) -> Any:
        return dict(self.args)[key]


@dataclass(frozen=True)
class DiagramFile:
    category: str
    prime: int | None
    objects: dict[str, ObjectDecl] = field(default_factory=dict)
    morphisms: dict[str, MorphismDecl] = field(default_factory=dict)
    assertions: tuple[AssertionDecl, ...] = ()
    digest: str = ""


def _want(node: Node, kind: str, what: str) -> Any:
    if node.kind != kind:
        article = "an" if kind[0] in "aeiou" else "a"
        raise FileFormatError(f"{what} must be {article} {kind}, got {node.kind}",
                              node.line, node.col)
    return node.value


def _strict(node: Node, allowed, required, what: str) -> dict[str, Node]:
    d = _want(node, "object", what)
    for k, v in d.items():
        if k not in allowed:
            raise FileFormatError(f"unknown key {k!r} in {what}", v.line, v.col)
    for k in required:
        if k not in d:
            raise FileFormatError(f"{what} is missing required key {k!r}", node.line, node.col)
    return d


def _name(node: Node, pool: dict, what: str) -> str:
    n = _want(node, "string", what)
    if n not in pool:
        raise FileFormatError(f"{what} refers to undeclared name {n!r}", node.line, node.col)
    return n


def parse_diagram_file(text: str) -> DiagramFile:
    """Parse and resolve a diagram file; raises :class:`FileFormatError`."""
    digest = hashlib.sha256(text.encode("utf-8")).hexdigest()
    root = parse_json_subset(text)
    top = _strict(root, ("category", "prime", "objects", "morphisms", "assertions"),
                  ("category", "objects"), "document")
    cat_node = top["category"]
    category = _want(cat_node, "string", "category")
    if category not in ("fgab", "vecfp"):
        raise FileFormatError(f"category must be 'fgab' or 'vecfp', got {category!r}",
                              cat_node.line, cat_node.col)
    prime = None
    if category == "vecfp":
        if "prime" not in top:
            raise FileFormatError("vecfp documents need a 'prime'", root.line, root.col)
        pnode = top["prime"]
        prime = _want(pnode, "integer", "prime")
        if not is_prime(prime):
            raise FileFormatError(f"{prime} is not prime", pnode.line, pnode.col)
    elif "prime" in top:
        p = top["prime"]
        raise FileFormatError("'prime' is only meaningful for vecfp", p.line, p.col)

    objects: dict[str, ObjectDecl] = {}
    for name, node in _want(top["objects"], "object", "objects").items():
        if category == "fgab":
            facs = _want(node, "array", f"object {name!r}")
            vals = tuple(_want(x, "integer", f"factor of {name!r}") for x in facs)
            objects[name] = ObjectDecl(name, vals, node.line, node.col)
        else:
            dim = _want(node, "integer", f"object {name!r}")
            if dim < 0:
                raise FileFormatError(f"dimension of {name!r} is negative", node.line, node.col)
            objects[name] = ObjectDecl(name, dim, node.line, node.col)

    def rank(o: ObjectDecl) -> int:
        return len(o.value) if category == "fgab" else o.value

    morphisms: dict[str, MorphismDecl] = {}
    mnode = top.get("morphisms")
    for name, node in (_want(mnode, "object", "morphisms").items() if mnode else ()):
        if name in objects:
            raise FileFormatError(f"name {name!r} is used for an object and a morphism",
                                  node.line, node.col)
        what = f"morphism {name!r}"
        d = _strict(node, ("src", "dst", "matrix"), ("src", "dst", "matrix"), what)
        src = _name(d["src"], objects, f"{what} src")
        dst = _name(d["dst"], objects, f"{what} dst")
        mat = d["matrix"]
        rows = tuple(tuple(_want(x, "integer", f"{what} entry")
                           for x in _want(r, "array", f"{what} row"))
                     for r in _want(mat, "array", f"{what} matrix"))
        m, n = rank(objects[dst]), rank(objects[src])
        if len(rows) != m or any(len(r) != n for r in rows):
            shape = f"{len(rows)}x{len(rows[0]) if rows else 0}"
            raise FileFormatError(f"{what}: matrix is {shape} but {src} -> {dst} needs {m}x{n}",
                                  mat.line, mat.col)
        morphisms[name] = MorphismDecl(name, src, dst, rows, node.line, node.col)

    assertions = []
    anode = top.get("assertions")
    for idx, node in enumerate(_want(anode, "array", "assertions") if anode else ()):
        what = f"assertion {idx + 1}"
        d = _want(node, "object", what)
        if "kind" not in d:
            raise FileFormatError(f"{what} is missing required key 'kind'", node.line, node.col)
        kind = _want(d["kind"], "string", f"{what} kind")
        if kind not in ASSERTION_KINDS:
            raise FileFormatError(f"unknown assertion kind {kind!r}", d["kind"].line, d["kind"].col)
        required, optional = ASSERTION_KINDS[kind]
        d = _strict(node, ("kind", "label", *required, *optional), ("kind", *required), what)
        args: list[tuple[str, Any]] = []
        for k in required:
            args.append((k, _name(d[k], morphisms, f"{what} {k}")))
        for k, default in optional.items():
            if k not in d:
                args.append((k, default))
            elif k == "morphisms":
                names = tuple(_name(x, morphisms, f"{what} morphisms")
                              for x in _want(d[k], "array", f"{what} morphisms"))
                args.append((k, names))
            else:
                v = _want(d[k], "string", f"{what} {k}")
                if v not in _CHOICES[k]:
                    raise FileFormatError(f"{k} must be one of {', '.join(_CHOICES[k])}",
                                          d[k].line, d[k].col)
                args.append((k, v))
        label = _want(d["label"], "string", f"{what} label") if "label" in d else None
        assertions.append(AssertionDecl(idx, kind, tuple(args), label, node.line, node.col))

    return DiagramFile(category, prime, objects, morphisms, tuple(assertions), digest)


# ---------------------------------------------------------------- export


def instance_document(cat, category: str, objects: dict[str, Any],
                      morphisms: dict[str, tuple[str, str, Any]],
                      assertions: list[dict[str, Any]], prime: int | None = None) -> dict:
    """Plain-data document for the given named objects and morphisms."""
    doc: dict[str, Any] = {"category": category}
    if prime is not None:
        doc["prime"] = prime
    doc["objects"] = {n: cat.describe_object(o) for n, o in objects.items()}
    doc["morphisms"] = {n: {"src": s, "dst": t, "matrix": cat.describe_morphism(m)}
                        for n, (s, t, m) in morphisms.items()}
    doc["assertions"] = assertions
    return doc


def ladder_document(ladder, mode: str) -> dict:
    c = ladder.cat
    objs = {"A": c.domain(ladder.f), "B": c.domain(ladder.g), "C": c.codomain(ladder.g),
            "A2": c.domain(ladder.f_prime), "B2": c.domain(ladder.g_prime),
            "C2": c.codomain(ladder.g_prime)}
    ends = {"f": ("A", "B"), "g": ("B", "C"), "f_prime": ("A2", "B2"),
            "g_prime": ("B2", "C2"), "alpha": ("A", "A2"), "beta": ("B", "B2"),
            "gamma": ("C", "C2")}
    mors = {k: (*ends[k], getattr(ladder, k)) for k in LADDER_KEYS}
    assertion = {"kind": "short_five", **{k: k for k in LADDER_KEYS}, "mode": mode}
    return instance_document(c, "fgab", objs, mors, [assertion])


def grid_document(grid, direction: str) -> dict:
    c = grid.cat
    objs, mors = {}, {}
    for i in (1, 2, 3):
        f, g = getattr(grid, f"f{i}"), getattr(grid, f"g{i}")
        objs[f"A{i}"], objs[f"B{i}"], objs[f"C{i}"] = c.domain(f), c.codomain(f), c.codomain(g)
        mors[f"f{i}"] = (f"A{i}", f"B{i}", f)
        mors[f"g{i}"] = (f"B{i}", f"C{i}", g)
    for x, label in (("alpha", "A"), ("beta", "B"), ("gamma", "C")):
        for i in (1, 2):
            mors[f"{x}{i}"] = (f"{label}{i}", f"{label}{i + 1}", getattr(grid, f"{x}{i}"))
    assertion = {"kind": "nine_lemma", **{k: k for k in GRID_KEYS}, "direction": direction}
    return instance_document(c, "fgab", objs, mors, [assertion])
