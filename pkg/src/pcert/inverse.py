"""Partial inverse of the encoding, for round-trip checking.

Clause by clause: variables, applications and abstractions come back
homomorphically (binder annotations through the type inverse); the prop
object returns the Prop sort; fa/impd/arrd applied to an abstraction rebuild
the product, ignoring the abstraction's annotation; the four subtype symbols
come back with inverted arguments. Anything else is out of the image, and
the failure reports the leftmost-outermost subterm that matched no clause.

This is a left inverse of the translation up to beta only; nothing is
claimed in the other direction. In particular the certificate-free pair'
has no clause: its normal forms are deliberately not invertible.
"""

from __future__ import annotations

from dataclasses import dataclass

from .terms import Abs, App, Bound, Prod, Sort, SymApp, Term, Var


@dataclass(frozen=True)
class NotInImage:
    """Path (child labels from the root) to the offending subterm."""

    path: tuple[str, ...]
    subterm: Term

    def __str__(self) -> str:
        where = "/".join(self.path) if self.path else "root"
        return f"not in the image of the translation at {where}: {self.subterm!r}"


def inverse_term(m: Term, _path: tuple[str, ...] = ()) -> Term | NotInImage:
    match m:
        case Var(_) | Bound(_):
            return m
        case Abs(hint, annot, body):
            a = inverse_type(annot, _path + ("annot",))
            if isinstance(a, NotInImage):
                return a
            b = inverse_term(body, _path + ("body",))
            if isinstance(b, NotInImage):
                return b
            return Abs(hint, a, b)
        case App(f, x):
            fi = inverse_term(f, _path + ("fun",))
            if isinstance(fi, NotInImage):
                return fi
            xi = inverse_term(x, _path + ("arg",))
            if isinstance(xi, NotInImage):
                return xi
            return App(fi, xi)
        case SymApp("prop", ()):
            return Sort("Prop")
        case SymApp(("fa" | "impd" | "arrd") as head, (left, Abs(hint, _, body))):
            li = inverse_term(left, _path + (f"{head}.0",))
            if isinstance(li, NotInImage):
                return li
            bi = inverse_term(body, _path + (f"{head}.1", "body"))
            if isinstance(bi, NotInImage):
                return bi
            return Prod(hint, li, bi)
        case SymApp(("psub" | "pair" | "fst" | "snd") as head, args):
            out: list[Term] = []
            for i, a in enumerate(args):
                ai = inverse_term(a, _path + (f"{head}.{i}",))
                if isinstance(ai, NotInImage):
                    return ai
                out.append(ai)
            return SymApp(head, tuple(out))
        case _:
            return NotInImage(_path, m)


def inverse_type(t: Term, _path: tuple[str, ...] = ()) -> Term | NotInImage:
    match t:
        case SymApp("Type", ()):
            return Sort("Type")
        case SymApp("Prop", ()):
            return Sort("Prop")
        case SymApp("El", (m,)):
            return inverse_term(m, _path + ("El.0",))
        case SymApp("Prf", (p,)):
            return inverse_term(p, _path + ("Prf.0",))
        case Prod(hint, dom, cod):
            d = inverse_type(dom, _path + ("dom",))
            if isinstance(d, NotInImage):
                return d
            c = inverse_type(cod, _path + ("cod",))
            if isinstance(c, NotInImage):
                return c
            return Prod(hint, d, c)
        case _:
            return NotInImage(_path, t)
