"""A small expression language for building complexes.

Grammar (whitespace-insensitive)::

    expr  := term ("*" term)*
    term  := atom | name "(" args ")" | name "^" INT "(" args ")" | "(" expr ")"
    args  := arg ("," arg)*
    arg   := expr | INT | "{" [INT ("," INT)*] "}"

Atoms are ``S0``, ``C<k>``, ``simplex<k>``, ``oct<d>``, ``empty``, ``point``
and ``input`` (a complex supplied by the caller). Functions are ``susp``,
``susp^m``, ``subdivide(e, u, v)``, ``contract(e, u, v)``, ``link(e, face)``,
``split(e, v, {vertices})``, ``upsilon1(m, ell)``, ``upsilon2(m, ell)`` and
the spelled-out constructors ``C(k)``, ``cycle(k)``, ``oct(d)``, ``simplex(k)``.

Vertex numbers inside transformations refer to the labelling produced by
the inner expression: ``C<k>`` is ``0..k-1`` around the cycle, ``oct<d>``
pairs ``2i`` with ``2i+1``, a join shifts the right operand past the left
one, and a suspension appends its two apexes as the two highest indices.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Union

from . import complex as cx
from .complex import SimplicialComplex
from .structure import FamilyKind, construct_family


class DSLError(Exception):
    """Base class for expression errors; ``offset`` is a byte offset into the source."""

    def __init__(self, message: str, offset: int = 0):
        super().__init__(f"{message} (at byte {offset})")
        self.message = message
        self.offset = offset


class DSLSyntaxError(DSLError):
    pass


class DSLArityError(DSLError):
    pass


class DSLTypeError(DSLError):
    pass


# --- AST ----------------------------------------------------------------------------


@dataclass(frozen=True)
class Atom:
    name: str  # S0, C, simplex, oct, empty, point, input
    k: int | None = None


@dataclass(frozen=True)
class Family:
    kind: str  # upsilon1, upsilon2
    m: int
    ell: int


@dataclass(frozen=True)
class Join:
    parts: tuple["Expr", ...]


@dataclass(frozen=True)
class Susp:
    body: "Expr"
    m: int = 1


@dataclass(frozen=True)
class Subdivide:
    body: "Expr"
    u: int
    v: int


@dataclass(frozen=True)
class Contract:
    body: "Expr"
    u: int
    v: int


@dataclass(frozen=True)
class Link:
    body: "Expr"
    face: tuple[int, ...]


@dataclass(frozen=True)
class Split:
    body: "Expr"
    v: int
    vertices: tuple[int, ...]


Expr = Union[Atom, Family, Join, Susp, Subdivide, Contract, Link, Split]


# --- printing -----------------------------------------------------------------------


def _set(xs: tuple[int, ...]) -> str:
    return "{" + ",".join(str(x) for x in xs) + "}"


def to_text(e: Expr) -> str:
    """Canonical text; ``parse_expr(to_text(e)) == e`` for parsed expressions."""
    if isinstance(e, Atom):
        return e.name if e.k is None else f"{e.name}{e.k}"
    if isinstance(e, Family):
        return f"{e.kind}({e.m},{e.ell})"
    if isinstance(e, Join):
        return " * ".join(to_text(p) for p in e.parts)
    if isinstance(e, Susp):
        head = "susp" if e.m == 1 else f"susp^{e.m}"
        return f"{head}({to_text(e.body)})"
    if isinstance(e, Subdivide):
        return f"subdivide({to_text(e.body)},{e.u},{e.v})"
    if isinstance(e, Contract):
        return f"contract({to_text(e.body)},{e.u},{e.v})"
    if isinstance(e, Link):
        return f"link({to_text(e.body)},{_set(e.face)})"
    if isinstance(e, Split):
        return f"split({to_text(e.body)},{e.v},{_set(e.vertices)})"
    raise TypeError(f"not an expression node: {e!r}")


# --- parsing ------------------------------------------------------------------------

_TOKEN = re.compile(rb"\s*(?:(?P<int>\d+)|(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<sym>[()*,^{}]))")
_ATOM_PARAM = re.compile(r"^(C|simplex|oct)(\d+)$")
_PLAIN_ATOMS = {"S0", "empty", "point", "input"}


@dataclass
class _Tok:
    kind: str
    text: str
    offset: int


def _tokenize(src: bytes) -> list[_Tok]:
    toks = []
    pos = 0
    while True:
        while pos < len(src) and src[pos:pos + 1].isspace():
            pos += 1
        if pos >= len(src):
            break
        m = _TOKEN.match(src, pos)
        if m is None or m.end() == pos:
            raise DSLSyntaxError(f"unexpected character {src[pos:pos + 1].decode(errors='replace')!r}", pos)
        kind = m.lastgroup
        toks.append(_Tok(kind, m.group(kind).decode(), m.start(kind)))
        pos = m.end()
    toks.append(_Tok("eof", "", len(src)))
    return toks


class _Parser:
    def __init__(self, text: str):
        self.src = text.encode()
        self.toks = _tokenize(self.src)
        self.i = 0

    def peek(self) -> _Tok:
        return self.toks[self.i]

    def take(self, kind: str, text: str | None = None) -> _Tok:
        t = self.peek()
        if t.kind != kind or (text is not None and t.text != text):
            want = text if text is not None else kind
            got = t.text or "end of input"
            raise DSLSyntaxError(f"expected {want!r}, found {got!r}", t.offset)
        self.i += 1
        return t

    def at(self, kind: str, text: str | None = None) -> bool:
        t = self.peek()
        return t.kind == kind and (text is None or t.text == text)

    def parse(self) -> Expr:
        e = self.expr()
        self.take("eof")
        return e

    def expr(self) -> Expr:
        parts = [self.term()]
        while self.at("sym", "*"):
            self.take("sym")
            parts.append(self.term())
        flat: list[Expr] = []
        for p in parts:
            flat.extend(p.parts if isinstance(p, Join) else (p,))
        return flat[0] if len(flat) == 1 else Join(tuple(flat))

    def term(self) -> Expr:
        t = self.peek()
        if self.at("sym", "("):
            self.take("sym")
            e = self.expr()
            self.take("sym", ")")
            return e
        if t.kind != "name":
            raise DSLSyntaxError(f"expected an atom or function, found {t.text or 'end of input'!r}", t.offset)
        self.take("name")
        power = None
        if self.at("sym", "^"):
            self.take("sym")
            power = int(self.take("int").text)
        if self.at("sym", "("):
            return self.call(t, power)
        if power is not None:
            raise DSLSyntaxError("'^' must be followed by an argument list", self.peek().offset)
        if t.text in _PLAIN_ATOMS:
            return Atom(t.text)
        m = _ATOM_PARAM.match(t.text)
        if m:
            return Atom(m.group(1), int(m.group(2)))
        raise DSLSyntaxError(f"unknown atom {t.text!r}", t.offset)

    def args(self) -> list[tuple[object, int]]:
        self.take("sym", "(")
        out = []
        if not self.at("sym", ")"):
            out.append(self.arg())
            while self.at("sym", ","):
                self.take("sym")
                out.append(self.arg())
        self.take("sym", ")")
        return out

    def arg(self) -> tuple[object, int]:
        t = self.peek()
        if t.kind == "int":
            self.take("int")
            return int(t.text), t.offset
        if self.at("sym", "{"):
            self.take("sym")
            xs = []
            if not self.at("sym", "}"):
                xs.append(int(self.take("int").text))
                while self.at("sym", ","):
                    self.take("sym")
                    xs.append(int(self.take("int").text))
            self.take("sym", "}")
            return tuple(sorted(set(xs))), t.offset
        return self.expr(), t.offset

    def call(self, name: _Tok, power: int | None) -> Expr:
        args = self.args()
        fn = name.text
        if power is not None and fn != "susp":
            raise DSLSyntaxError(f"only susp takes a '^' power, not {fn!r}", name.offset)

        def want(*types: str) -> list:
            if len(args) != len(types):
                raise DSLArityError(f"{fn} takes {len(types)} argument(s), got {len(args)}", name.offset)
            vals = []
            for (val, off), ty in zip(args, types):
                ok = {
                    "expr": not isinstance(val, (int, tuple)),
                    "int": isinstance(val, int),
                    "set": isinstance(val, tuple) or isinstance(val, int),
                }[ty]
                if not ok:
                    raise DSLTypeError(f"{fn} expects {ty} here", off)
                vals.append((val,) if ty == "set" and isinstance(val, int) else val)
            return vals

        if fn == "susp":
            (body,) = want("expr")
            m = 1 if power is None else power
            return body if m == 0 else Susp(body, m)
        if fn in ("C", "cycle"):
            return Atom("C", want("int")[0])
        if fn in ("oct", "simplex"):
            return Atom(fn, want("int")[0])
        if fn in ("upsilon1", "upsilon2"):
            m, ell = want("int", "int")
            return Family(fn, m, ell)
        if fn == "subdivide":
            return Subdivide(*want("expr", "int", "int"))
        if fn == "contract":
            return Contract(*want("expr", "int", "int"))
        if fn == "link":
            return Link(*want("expr", "set"))
        if fn == "split":
            return Split(*want("expr", "int", "set"))
        raise DSLSyntaxError(f"unknown function {fn!r}", name.offset)


def parse_expr(text: str) -> Expr:
    return _Parser(text).parse()


# --- evaluation ---------------------------------------------------------------------


def evaluate(e: Expr, input: SimplicialComplex | None = None) -> SimplicialComplex:
    """Build the complex an expression denotes; library errors propagate unchanged."""
    if isinstance(e, Atom):
        if e.name == "S0":
            return cx.sphere0()
        if e.name == "empty":
            return cx.empty_complex()
        if e.name == "point":
            return cx.point()
        if e.name == "input":
            if input is None:
                raise DSLTypeError("'input' used but no input complex was supplied", 0)
            return input
        if e.name == "C":
            return cx.cycle(e.k)
        if e.name == "oct":
            return cx.octahedral(e.k)
        if e.name == "simplex":
            return cx.simplex(e.k)
        raise TypeError(f"unknown atom {e.name}")
    if isinstance(e, Family):
        kind = FamilyKind.UPSILON1 if e.kind == "upsilon1" else FamilyKind.UPSILON2
        return construct_family(kind, e.m, e.ell)
    if isinstance(e, Join):
        return cx.join_all([evaluate(p, input) for p in e.parts])
    if isinstance(e, Susp):
        return cx.suspend_k(evaluate(e.body, input), e.m)
    if isinstance(e, Subdivide):
        return cx.edge_subdivision(evaluate(e.body, input), (e.u, e.v))
    if isinstance(e, Contract):
        return cx.contract_edge(evaluate(e.body, input), (e.u, e.v))
    if isinstance(e, Link):
        return cx.link(evaluate(e.body, input), e.face)
    if isinstance(e, Split):
        return cx.vertex_split(evaluate(e.body, input), e.v, e.vertices)
    raise TypeError(f"not an expression node: {e!r}")


def build(text: str, input: SimplicialComplex | None = None) -> SimplicialComplex:
    return evaluate(parse_expr(text), input)
