"""Parser and printer for the declaration language of both systems.

Grammar (comments run from // to end of line):

    file := mode? decl*
    mode := "#MODE" ("pcert" | "lf")
    decl := "symbol" ID ":" term ";"
          | "definition" ID (":" term)? ":=" term ";"
          | "assert" term ":" term ";"
          | "convertible" term "," term ";"
    term := "Type" | "Kind" | "Prop" | ID | term term
          | "\\" ID ":" term "." term | "!" ID ":" term "." term
          | term "->" term | "{" ID ":" term "|" term "}"
          | SYM "(" term ("," term)* ")" | "(" term ")"

Application is left-associative, "->" right-associative, binders extend
maximally to the right. The mode selects which signature's symbols are in
scope; signature symbols accept both the parenthesized call form and plain
juxtaposition, and must be fully applied either way. In pcert mode the
keywords Type/Kind/Prop are sort literals; in lf mode they name the nullary
encodings of those sorts, while TYPE and KIND denote the framework sorts.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Union

from .diagnostics import ARITY_MISMATCH, PARSE_ERROR, SourceSpan, SurfaceError
from .lf import LF_SIGNATURE
from .pcert import PCERT_SIGNATURE
from .terms import (
    Abs,
    App,
    Bound,
    Prod,
    Signature,
    Sort,
    SymApp,
    Term,
    Var,
    free_vars,
    instantiate,
    is_nondependent,
    lam,
    pi,
)

KEYWORDS = frozenset({"symbol", "definition", "assert", "convertible", "Type", "Kind", "Prop"})

_SIGNATURES = {"pcert": PCERT_SIGNATURE, "lf": LF_SIGNATURE}

_RESERVED_DECL_NAMES = (
    frozenset(PCERT_SIGNATURE.names()) | frozenset(LF_SIGNATURE.names()) | {"TYPE", "KIND"}
)


@dataclass(frozen=True)
class SymbolDecl:
    name: str
    type: Term
    span: SourceSpan | None = field(default=None, compare=False)


@dataclass(frozen=True)
class Definition:
    name: str
    body: Term
    type: Term | None = None
    span: SourceSpan | None = field(default=None, compare=False)


@dataclass(frozen=True)
class AssertJudgment:
    subject: Term
    type: Term
    span: SourceSpan | None = field(default=None, compare=False)


@dataclass(frozen=True)
class AssertConv:
    a: Term
    b: Term
    span: SourceSpan | None = field(default=None, compare=False)


Declaration = Union[SymbolDecl, Definition, AssertJudgment, AssertConv]


@dataclass(frozen=True)
class ParsedFile:
    mode: str
    decls: tuple[Declaration, ...]
    path: str = "<input>"


# --- lexer -------------------------------------------------------------------

_TOKEN_RE = re.compile(
    r"""(?P<ws>[ \t\r]+)
      | (?P<comment>//[^\n]*)
      | (?P<nl>\n)
      | (?P<mode>\#MODE)
      | (?P<assign>:=)
      | (?P<arrow>->)
      | (?P<punct>[(){}|,;:.!\\])
      | (?P<id>[A-Za-z_][A-Za-z0-9_'?]*)
    """,
    re.VERBOSE,
)


@dataclass(frozen=True)
class _Token:
    kind: str  # id | kw | punct | mode | assign | arrow | eof
    value: str
    line: int
    column: int

    def span(self, file: str) -> SourceSpan:
        return SourceSpan(file, self.line, self.column, max(1, len(self.value)))


def _tokenize(text: str, file: str) -> list[_Token]:
    tokens: list[_Token] = []
    line, col, pos = 1, 1, 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise SurfaceError(f"unexpected character {text[pos]!r}", SourceSpan(file, line, col))
        kind = m.lastgroup
        value = m.group()
        if kind == "nl":
            line += 1
            col = 1
        elif kind in ("ws", "comment"):
            col += len(value)
        else:
            if kind == "id" and value in KEYWORDS:
                kind = "kw"
            tokens.append(_Token(kind, value, line, col))
            col += len(value)
        pos = m.end()
    tokens.append(_Token("eof", "", line, col))
    return tokens


# --- parser ------------------------------------------------------------------


@dataclass
class _SymRef:
    """A signature symbol awaiting its arguments."""

    name: str
    token: _Token


_ATOM_START = {("punct", "("), ("punct", "{")}


class _Parser:
    def __init__(self, tokens: list[_Token], file: str):
        self.tokens = tokens
        self.pos = 0
        self.file = file
        self.mode = "pcert"
        self.sig: Signature = _SIGNATURES[self.mode]

    def peek(self, ahead: int = 0) -> _Token:
        return self.tokens[min(self.pos + ahead, len(self.tokens) - 1)]

    def next(self) -> _Token:
        tok = self.tokens[self.pos]
        if tok.kind != "eof":
            self.pos += 1
        return tok

    def error(self, message: str, tok: _Token | None = None, kind: str = PARSE_ERROR) -> SurfaceError:
        tok = tok or self.peek()
        return SurfaceError(message, tok.span(self.file), kind)

    def expect(self, kind: str, value: str | None = None) -> _Token:
        tok = self.peek()
        if tok.kind != kind or (value is not None and tok.value != value):
            want = value or kind
            raise self.error(f"expected {want!r}, found {tok.value or 'end of input'!r}")
        return self.next()

    # - file and declarations -

    def parse_file(self) -> ParsedFile:
        if self.peek().kind == "mode":
            self.next()
            tok = self.expect("id")
            if tok.value not in _SIGNATURES:
                raise self.error(f"unknown mode {tok.value!r} (expected pcert or lf)", tok)
            self.mode = tok.value
            self.sig = _SIGNATURES[self.mode]
        decls: list[Declaration] = []
        while self.peek().kind != "eof":
            decls.append(self.parse_decl())
        return ParsedFile(self.mode, tuple(decls), self.file)

    def parse_decl(self) -> Declaration:
        tok = self.peek()
        if tok.kind != "kw" or tok.value not in ("symbol", "definition", "assert", "convertible"):
            raise self.error("expected a declaration (symbol/definition/assert/convertible)", tok)
        self.next()
        span = tok.span(self.file)
        if tok.value == "symbol":
            name = self.parse_decl_name()
            self.expect("punct", ":")
            ty = self.parse_term()
            self.expect("punct", ";")
            return SymbolDecl(name, ty, span)
        if tok.value == "definition":
            name = self.parse_decl_name()
            ty = None
            if self.peek().kind == "punct" and self.peek().value == ":":
                self.next()
                ty = self.parse_term()
            self.expect("assign")
            body = self.parse_term()
            self.expect("punct", ";")
            return Definition(name, body, ty, span)
        if tok.value == "assert":
            subject = self.parse_term()
            self.expect("punct", ":")
            ty = self.parse_term()
            self.expect("punct", ";")
            return AssertJudgment(subject, ty, span)
        a = self.parse_term()
        self.expect("punct", ",")
        b = self.parse_term()
        self.expect("punct", ";")
        return AssertConv(a, b, span)

    def parse_decl_name(self) -> str:
        # Names from either signature are reserved in both modes so that a
        # checked development can always be translated and reprinted.
        tok = self.expect("id")
        if tok.value in _RESERVED_DECL_NAMES:
            raise self.error(f"{tok.value!r} is a reserved symbol name", tok)
        return tok.value

    # - terms -

    def parse_term(self) -> Term:
        tok = self.peek()
        if tok.kind == "punct" and tok.value in ("\\", "!"):
            self.next()
            name = self.expect("id").value
            self.expect("punct", ":")
            annot = self.parse_term()
            self.expect("punct", ".")
            body = self.parse_term()
            return lam(name, annot, body) if tok.value == "\\" else pi(name, annot, body)
        return self.parse_arrow()

    def parse_arrow(self) -> Term:
        lhs = self.parse_app()
        if self.peek().kind == "arrow":
            self.next()
            rhs = self.parse_term()
            return Prod("_", lhs, rhs)  # rhs never mentions the binder
        return lhs

    def starts_atom(self, tok: _Token) -> bool:
        if tok.kind == "id":
            return True
        if tok.kind == "kw" and tok.value in ("Type", "Kind", "Prop"):
            return True
        return (tok.kind, tok.value) in _ATOM_START

    def parse_app(self) -> Term:
        atoms: list[Term | _SymRef] = [self.parse_atom()]
        while self.starts_atom(self.peek()):
            atoms.append(self.parse_atom())
        for extra in atoms[1:]:
            if isinstance(extra, _SymRef):
                raise self.error(
                    f"symbol {extra.name!r} expects {self.sig.arity(extra.name)} arguments, got 0",
                    extra.token,
                    ARITY_MISMATCH,
                )
        head = atoms[0]
        if isinstance(head, _SymRef):
            arity = self.sig.arity(head.name)
            given = len(atoms) - 1
            if given < arity:
                raise self.error(
                    f"symbol {head.name!r} expects {arity} arguments, got {given}",
                    head.token,
                    ARITY_MISMATCH,
                )
            term: Term = SymApp(head.name, tuple(atoms[1 : 1 + arity]))  # type: ignore[arg-type]
            rest = atoms[1 + arity :]
        else:
            term = head
            rest = atoms[1:]
        for arg in rest:
            term = App(term, arg)  # type: ignore[arg-type]
        return term

    def parse_atom(self) -> Term | _SymRef:
        tok = self.peek()
        if tok.kind == "kw" and tok.value in ("Type", "Kind", "Prop"):
            self.next()
            if self.mode == "pcert":
                return Sort(tok.value)
            return SymApp(tok.value)
        if tok.kind == "id":
            self.next()
            name = tok.value
            if name in ("TYPE", "KIND"):
                return Sort(name)
            if name in self.sig:
                if self.peek().kind == "punct" and self.peek().value == "(":
                    return self.parse_call(name, tok)
                if self.sig.arity(name) == 0:
                    return SymApp(name)
                return _SymRef(name, tok)
            return Var(name)
        if tok.kind == "punct" and tok.value == "(":
            self.next()
            inner = self.parse_term()
            self.expect("punct", ")")
            return inner
        if tok.kind == "punct" and tok.value == "{":
            self.next()
            name = self.expect("id").value
            self.expect("punct", ":")
            ty = self.parse_term()
            self.expect("punct", "|")
            pred = self.parse_term()
            self.expect("punct", "}")
            return SymApp("psub", (ty, lam(name, ty, pred)))
        raise self.error(f"expected a term, found {tok.value or 'end of input'!r}", tok)

    def parse_call(self, name: str, tok: _Token) -> Term:
        self.expect("punct", "(")
        args = [self.parse_term()]
        while self.peek().kind == "punct" and self.peek().value == ",":
            self.next()
            args.append(self.parse_term())
        self.expect("punct", ")")
        arity = self.sig.arity(name)
        if len(args) != arity:
            raise self.error(
                f"symbol {name!r} expects {arity} arguments, got {len(args)}",
                tok,
                ARITY_MISMATCH,
            )
        return SymApp(name, tuple(args))


def parse_file(text: str, file: str = "<input>") -> ParsedFile:
    return _Parser(_tokenize(text, file), file).parse_file()


def parse_term(text: str, mode: str = "pcert") -> Term:
    """Parse a single term, for tests and tooling."""
    parser = _Parser(_tokenize(text, "<term>"), "<term>")
    parser.mode = mode
    parser.sig = _SIGNATURES[mode]
    term = parser.parse_term()
    if parser.peek().kind != "eof":
        raise parser.error("trailing input after term")
    return term


# --- printer -----------------------------------------------------------------

_TERM, _ARROW, _APP, _ATOM = 0, 1, 2, 3

_RESERVED_DISPLAY = (
    KEYWORDS
    | {"TYPE", "KIND"}
    | set(PCERT_SIGNATURE.names())
    | set(LF_SIGNATURE.names())
)

_ID_OK = re.compile(r"[A-Za-z_][A-Za-z0-9_'?]*\Z")


def _display_name(hint: str, taken: set[str]) -> str:
    base = hint.split("#", 1)[0]
    if not _ID_OK.match(base):
        base = "x"
    name = base
    while name in taken or name in _RESERVED_DISPLAY:
        name += "'"
    return name


class _Printer:
    def __init__(self, term: Term):
        self.avoid = free_vars(term)

    def show(self, t: Term, prec: int, binders: tuple[str, ...]) -> str:
        match t:
            case Sort(tag):
                return tag
            case Var(name):
                return name
            case Bound(k):
                return binders[-1 - k] if k < len(binders) else f"^{k}"
            case App(f, a):
                body = f"{self.show(f, _APP, binders)} {self.show(a, _ATOM, binders)}"
                return self.wrap(body, _APP, prec)
            case Abs(hint, annot, inner):
                name = _display_name(hint, self.avoid | set(binders))
                body = (
                    f"\\{name}: {self.show(annot, _TERM, binders)}. "
                    f"{self.show(inner, _TERM, binders + (name,))}"
                )
                return self.wrap(body, _TERM, prec)
            case Prod(hint, dom, cod):
                if is_nondependent(cod):
                    dropped = instantiate(cod, Var("_"))
                    body = f"{self.show(dom, _APP, binders)} -> {self.show(dropped, _TERM, binders)}"
                    return self.wrap(body, _ARROW, prec)
                name = _display_name(hint, self.avoid | set(binders))
                body = (
                    f"!{name}: {self.show(dom, _TERM, binders)}. "
                    f"{self.show(cod, _TERM, binders + (name,))}"
                )
                return self.wrap(body, _TERM, prec)
            case SymApp("psub", (ty, Abs(hint, annot, pred))) if annot == ty:
                # the sugar drops the binder annotation, so it must equal the
                # carrier or reparsing would change the term
                name = _display_name(hint, self.avoid | set(binders))
                return (
                    f"{{{name}: {self.show(ty, _TERM, binders)} | "
                    f"{self.show(pred, _TERM, binders + (name,))}}}"
                )
            case SymApp(sym, args):
                if not args:
                    return sym
                inner = ", ".join(self.show(a, _TERM, binders) for a in args)
                return f"{sym}({inner})"
        raise TypeError(f"not a term: {t!r}")

    @staticmethod
    def wrap(body: str, level: int, prec: int) -> str:
        return f"({body})" if level < prec else body


def print_term(t: Term) -> str:
    """Concrete syntax; parse_file(print(t)) yields a term alpha-equal to t."""
    return _Printer(t).show(t, _TERM, ())


def print_decl(decl: Declaration) -> str:
    match decl:
        case SymbolDecl(name, ty, _):
            return f"symbol {name} : {print_term(ty)};"
        case Definition(name, body, ty, _):
            if ty is None:
                return f"definition {name} := {print_term(body)};"
            return f"definition {name} : {print_term(ty)} := {print_term(body)};"
        case AssertJudgment(subject, ty, _):
            return f"assert {print_term(subject)} : {print_term(ty)};"
        case AssertConv(a, b, _):
            return f"convertible {print_term(a)}, {print_term(b)};"
    raise TypeError(f"not a declaration: {decl!r}")


def print_file(parsed: ParsedFile) -> str:
    lines = [f"#MODE {parsed.mode}"]
    lines.extend(print_decl(d) for d in parsed.decls)
    return "\n".join(lines) + "\n"
