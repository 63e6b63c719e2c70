"""Export to Lambdapi concrete syntax.

Two modes: `signature` emits the encoding theory itself (the constant
symbols, the protected certificate-free pair, and the rewrite rules) as a
standalone module; `development` emits a checked development against that
module, one declaration per line group. The emitted text targets the
Lambdapi checker; beta is native there, so it appears as a comment line
rather than a rule statement.
"""

from __future__ import annotations

import re

from .diagnostics import UNCHECKED_INPUT, fail
from .lf import LF_SIGNATURE, RULES_R
from .rewrite import RuleSet
from .syntax import AssertConv, AssertJudgment, Declaration, Definition, SymbolDecl
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
    abstract_var,
    free_vars,
    instantiate,
    is_nondependent,
)

ENCODING_MODULE = "pcert.encoding"

_LP_ID = re.compile(r"[a-zA-Z_][a-zA-Z0-9_']*\Z")

_TERM, _ARROW, _APP, _ATOM = 0, 1, 2, 3


def _ident(name: str) -> str:
    return name if _LP_ID.match(name) else f"{{|{name}|}}"


def _show(t: Term, prec: int, binders: tuple[str, ...], pattern_vars: frozenset[str] = frozenset()) -> str:
    def wrap(body: str, level: int) -> str:
        return f"({body})" if level < prec else body

    match t:
        case Sort("TYPE"):
            return "TYPE"
        case Sort(tag):
            raise fail(UNCHECKED_INPUT, f"sort {tag} has no Lambdapi syntax")
        case Var(name):
            return f"${_ident(name)}" if name in pattern_vars else _ident(name)
        case Bound(k):
            return binders[-1 - k] if k < len(binders) else f"?{k}"
        case App(f, a):
            return wrap(f"{_show(f, _APP, binders, pattern_vars)} {_show(a, _ATOM, binders, pattern_vars)}", _APP)
        case Abs(hint, annot, body):
            name = _fresh_display(hint, binders, body)
            inner = _show(instantiate(body, Var(name)), _TERM, binders, pattern_vars)
            return wrap(f"λ {name}: {_show(annot, _TERM, binders, pattern_vars)}, {inner}", _TERM)
        case Prod(hint, dom, cod):
            if is_nondependent(cod):
                dropped = instantiate(cod, Var("_"))
                return wrap(
                    f"{_show(dom, _APP, binders, pattern_vars)} → {_show(dropped, _ARROW, binders, pattern_vars)}",
                    _ARROW,
                )
            name = _fresh_display(hint, binders, cod)
            inner = _show(instantiate(cod, Var(name)), _TERM, binders, pattern_vars)
            return wrap(f"Π {name}: {_show(dom, _TERM, binders, pattern_vars)}, {inner}", _TERM)
        case SymApp(sym, args):
            if not args:
                return _ident(sym)
            shown = " ".join(_show(a, _ATOM, binders, pattern_vars) for a in args)
            return wrap(f"{_ident(sym)} {shown}", _APP)
    raise TypeError(f"not a term: {t!r}")


def _fresh_display(hint: str, binders: tuple[str, ...], body: Term) -> str:
    base = hint.split("#", 1)[0]
    if not _LP_ID.match(base):
        base = "x"
    name = base
    taken = set(binders) | free_vars(body)
    while name in taken:
        name += "'"
    return name


def _lp_term(t: Term, pattern_vars: frozenset[str] = frozenset()) -> str:
    return _show(t, _TERM, (), pattern_vars)


def _telescope_type(entry) -> Term:
    ty = entry.result
    for name, dom in reversed(entry.telescope):
        ty = Prod(name, dom, abstract_var(ty, name))
    return ty


def signature_lines(sig: Signature = LF_SIGNATURE, rules: RuleSet = RULES_R) -> list[str]:
    lines = [
        "// Encoding of simple type theory with predicate subtyping and",
        "// proof irrelevance, as a rewrite theory.",
        "",
    ]
    rewritten_heads = {r.lhs.sym for r in rules.rules}
    for name, entry in sig.items():
        mods = []
        if entry.protected:
            mods.append("protected")
        if name not in rewritten_heads:
            mods.append("constant")
        mods.append("symbol")
        lines.append(f"{' '.join(mods)} {_ident(name)} : {_lp_term(_telescope_type(entry))};")
    lines.append("")
    lines.append("// rule (beta): (λ x: T, t) u ↪ t with u for x. Beta is native to")
    lines.append("// Lambdapi; it belongs to the rewrite system alongside the six below.")
    for rule in rules.rules:
        pvars = frozenset(free_vars(rule.lhs))
        lines.append(f"rule {_lp_term(rule.lhs, pvars)} ↪ {_lp_term(rule.rhs, pvars)};")
    return lines


def development_lines(decls: tuple[Declaration, ...] | list[Declaration]) -> list[str]:
    lines = [
        "// Development checked against the encoding module.",
        f"require open {ENCODING_MODULE};",
        "",
    ]
    for decl in decls:
        match decl:
            case SymbolDecl(name, ty, _):
                lines.append(f"symbol {_ident(name)} : {_lp_term(ty)};")
            case Definition(name, body, ty, _):
                annot = f" : {_lp_term(ty)}" if ty is not None else ""
                lines.append(f"symbol {_ident(name)}{annot} ≔ {_lp_term(body)};")
            case AssertJudgment(subject, ty, _):
                lines.append(f"assert ⊢ {_lp_term(subject)} : {_lp_term(ty)};")
            case AssertConv(a, b, _):
                lines.append(f"assert ⊢ {_lp_term(a)} ≡ {_lp_term(b)};")
            case _:
                raise TypeError(f"not a declaration: {decl!r}")
    return lines


def export_lambdapi(decls, mode: str = "development") -> str:
    """Declarations must already have passed the lf kernel (UncheckedInput
    is the caller's contract, not re-verified here)."""
    if mode == "signature":
        return "\n".join(signature_lines()) + "\n"
    if mode == "development":
        return "\n".join(development_lines(decls)) + "\n"
    raise fail(UNCHECKED_INPUT, f"unknown export mode {mode!r}")
