"""Shared term language for both systems.

Terms are immutable. Binders are represented locally nameless: occurrences of
a bound variable are `Bound` indices counting enclosing binders, while the
binder itself keeps a display hint that is excluded from comparison. As a
consequence structural equality (`==`) *is* alpha-equivalence, and the
auto-generated hashes respect it.

Free variables (`Var`) are named and refer to context entries or to rewrite
pattern variables. Public API terms are expected to be locally closed: every
`Bound` index points at an enclosing binder of the same term.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterator, Union

from .diagnostics import DUPLICATE_NAME, fail

Term = Union["Sort", "Var", "Bound", "App", "Abs", "Prod", "SymApp"]

PCERT_SORTS = frozenset({"Prop", "Type", "Kind"})
LF_SORTS = frozenset({"TYPE", "KIND"})


@dataclass(frozen=True)
class Sort:
    tag: str  # "Prop" | "Type" | "Kind" | "TYPE" | "KIND"

    def __repr__(self) -> str:
        return self.tag


@dataclass(frozen=True)
class Var:
    name: str

    def __repr__(self) -> str:
        return self.name


@dataclass(frozen=True)
class Bound:
    index: int

    def __repr__(self) -> str:
        return f"^{self.index}"


@dataclass(frozen=True)
class App:
    fun: Term
    arg: Term

    def __repr__(self) -> str:
        return f"({self.fun!r} {self.arg!r})"


@dataclass(frozen=True)
class Abs:
    hint: str = field(compare=False)
    annot: Term
    body: Term

    def __repr__(self) -> str:
        return f"(\\{self.hint}: {self.annot!r}. {self.body!r})"


@dataclass(frozen=True)
class Prod:
    hint: str = field(compare=False)
    dom: Term
    cod: Term

    def __repr__(self) -> str:
        return f"(!{self.hint}: {self.dom!r}. {self.cod!r})"


@dataclass(frozen=True)
class SymApp:
    sym: str
    args: tuple[Term, ...] = ()

    def __repr__(self) -> str:
        if not self.args:
            return self.sym
        return f"{self.sym}({', '.join(map(repr, self.args))})"


PROP = Sort("Prop")
TYPE_ = Sort("Type")
KIND = Sort("Kind")
LF_TYPE = Sort("TYPE")
LF_KIND = Sort("KIND")

_fresh_counter = itertools.count(1)


def fresh_name(hint: str = "x") -> str:
    """A name no surface identifier can collide with ('#' is unlexable)."""
    base = hint.split("#", 1)[0] or "x"
    return f"{base}#{next(_fresh_counter)}"


def subterms(t: Term) -> Iterator[Term]:
    """Every subterm of t, the term itself first, binders not opened."""
    yield t
    match t:
        case App(fun, arg):
            yield from subterms(fun)
            yield from subterms(arg)
        case Abs(_, annot, body) | Prod(_, annot, body):
            yield from subterms(annot)
            yield from subterms(body)
        case SymApp(_, args):
            for a in args:
                yield from subterms(a)
        case _:
            pass


def free_vars(t: Term) -> set[str]:
    match t:
        case Var(name):
            return {name}
        case App(fun, arg):
            return free_vars(fun) | free_vars(arg)
        case Abs(_, annot, body) | Prod(_, annot, body):
            return free_vars(annot) | free_vars(body)
        case SymApp(_, args):
            out: set[str] = set()
            for a in args:
                out |= free_vars(a)
            return out
        case _:
            return set()


def symbols_used(t: Term) -> set[str]:
    return {s.sym for s in subterms(t) if isinstance(s, SymApp)}


def substitute_parallel(t: Term, mapping: dict[str, Term]) -> Term:
    """Simultaneously replace free variables; values must be locally closed."""
    if not mapping:
        return t
    match t:
        case Var(name):
            return mapping.get(name, t)
        case App(fun, arg):
            return App(substitute_parallel(fun, mapping), substitute_parallel(arg, mapping))
        case Abs(hint, annot, body):
            return Abs(hint, substitute_parallel(annot, mapping), substitute_parallel(body, mapping))
        case Prod(hint, dom, cod):
            return Prod(hint, substitute_parallel(dom, mapping), substitute_parallel(cod, mapping))
        case SymApp(sym, args):
            return SymApp(sym, tuple(substitute_parallel(a, mapping) for a in args))
        case _:
            return t


def substitute(body: Term, binding: tuple[str, Term]) -> Term:
    """Capture-avoiding single substitution of a named free variable."""
    name, value = binding
    return substitute_parallel(body, {name: value})


def alpha_eq(a: Term, b: Term) -> bool:
    """True iff a and b differ only in bound-variable names."""
    return a == b


def instantiate(body: Term, value: Term, depth: int = 0) -> Term:
    """Replace Bound(depth) by a locally closed value, closing the binder."""
    match body:
        case Bound(k):
            if k == depth:
                return value
            if k > depth:
                return Bound(k - 1)
            return body
        case Var() | Sort():
            return body
        case App(fun, arg):
            return App(instantiate(fun, value, depth), instantiate(arg, value, depth))
        case Abs(hint, annot, inner):
            return Abs(hint, instantiate(annot, value, depth), instantiate(inner, value, depth + 1))
        case Prod(hint, dom, cod):
            return Prod(hint, instantiate(dom, value, depth), instantiate(cod, value, depth + 1))
        case SymApp(sym, args):
            return SymApp(sym, tuple(instantiate(a, value, depth) for a in args))
    raise TypeError(f"not a term: {body!r}")


def abstract_var(t: Term, name: str, depth: int = 0) -> Term:
    """Turn free occurrences of a named variable into Bound(depth)."""
    match t:
        case Var(n):
            return Bound(depth) if n == name else t
        case Bound(k):
            return Bound(k + 1) if k >= depth else t
        case Sort():
            return t
        case App(fun, arg):
            return App(abstract_var(fun, name, depth), abstract_var(arg, name, depth))
        case Abs(hint, annot, body):
            return Abs(hint, abstract_var(annot, name, depth), abstract_var(body, name, depth + 1))
        case Prod(hint, dom, cod):
            return Prod(hint, abstract_var(dom, name, depth), abstract_var(cod, name, depth + 1))
        case SymApp(sym, args):
            return SymApp(sym, tuple(abstract_var(a, name, depth) for a in args))
    raise TypeError(f"not a term: {t!r}")


def lam(name: str, annot: Term, body: Term) -> Abs:
    """Abstraction from named syntax: closes `name` in `body`."""
    return Abs(name, annot, abstract_var(body, name))


def pi(name: str, dom: Term, cod: Term) -> Prod:
    return Prod(name, dom, abstract_var(cod, name))


def arrow(dom: Term, cod: Term) -> Prod:
    """Non-dependent product; the binder is unused in the codomain."""
    return Prod("_", dom, abstract_var(cod, fresh_name("_unused")))


def open_term(hint: str, body: Term) -> tuple[Var, Term]:
    """Open a binder body with a fresh variable; inverse of lam/pi closing."""
    v = Var(fresh_name(hint))
    return v, instantiate(body, v)


def is_nondependent(cod: Term) -> bool:
    """True when a product codomain never uses its binder."""

    def uses(t: Term, depth: int) -> bool:
        match t:
            case Bound(k):
                return k == depth
            case App(fun, arg):
                return uses(fun, depth) or uses(arg, depth)
            case Abs(_, annot, body) | Prod(_, annot, body):
                return uses(annot, depth) or uses(body, depth + 1)
            case SymApp(_, args):
                return any(uses(a, depth) for a in args)
            case _:
                return False

    return not uses(cod, 0)


@dataclass(frozen=True)
class Context:
    """Ordered variable declarations; names are pairwise distinct."""

    entries: tuple[tuple[str, Term], ...] = ()

    def extend(self, name: str, ty: Term) -> Context:
        if self.lookup(name) is not None:
            raise fail(DUPLICATE_NAME, f"variable {name!r} already declared")
        return Context(self.entries + ((name, ty),))

    def lookup(self, name: str) -> Term | None:
        for n, ty in reversed(self.entries):
            if n == name:
                return ty
        return None

    def names(self) -> tuple[str, ...]:
        return tuple(n for n, _ in self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    def __repr__(self) -> str:
        return ", ".join(f"{n}: {ty!r}" for n, ty in self.entries) or "<empty>"


EMPTY_CONTEXT = Context()


@dataclass(frozen=True)
class SigEntry:
    """Typing of one fixed-arity symbol: telescope, result type, result sort.

    Telescope types may mention earlier telescope variables only; the result
    sort is the sort of the result type under the telescope.
    """

    telescope: tuple[tuple[str, Term], ...]
    result: Term
    sort: Sort
    protected: bool = False

    @property
    def arity(self) -> int:
        return len(self.telescope)


class Signature:
    """Finite mapping from symbol names to their typing entries."""

    def __init__(self, entries: dict[str, SigEntry]):
        self._entries = dict(entries)

    def __contains__(self, sym: str) -> bool:
        return sym in self._entries

    def __getitem__(self, sym: str) -> SigEntry:
        return self._entries[sym]

    def get(self, sym: str) -> SigEntry | None:
        return self._entries.get(sym)

    def names(self) -> tuple[str, ...]:
        return tuple(self._entries)

    def items(self):
        return self._entries.items()

    def arity(self, sym: str) -> int:
        return self._entries[sym].arity

    def protected_names(self) -> frozenset[str]:
        return frozenset(n for n, e in self._entries.items() if e.protected)
