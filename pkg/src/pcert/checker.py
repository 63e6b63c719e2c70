"""Declaration-by-declaration checking of parsed files.

A file is one context: symbol declarations extend it in order, definitions
are checked and then expanded transparently into every later declaration
(the kernels have no delta reduction), assertions run against the mode's
kernel. In lf mode every declaration passes the protected-symbol gate
before any checking happens; this is the only place that gate runs.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import diagnostics as dk
from .diagnostics import CheckError, fail
from .kernel import Kernel
from .lf import KERNEL as LF_KERNEL, assert_public
from .pcert import KERNEL as PCERT_KERNEL
from .rewrite import Fuel, _as_fuel
from .syntax import (
    AssertConv,
    AssertJudgment,
    Declaration,
    Definition,
    ParsedFile,
    SymbolDecl,
)
from .terms import Context, Term, substitute_parallel

KERNELS: dict[str, Kernel] = {"pcert": PCERT_KERNEL, "lf": LF_KERNEL}


@dataclass
class CheckedFile:
    mode: str
    context: Context
    # definition name -> (expanded body, its checked type), in file order
    definitions: dict[str, tuple[Term, Term]] = field(default_factory=dict)
    decls: tuple[Declaration, ...] = ()

    @property
    def kernel(self) -> Kernel:
        return KERNELS[self.mode]


def check_file(parsed: ParsedFile, fuel: Fuel | int | None = None) -> CheckedFile:
    kernel = KERNELS[parsed.mode]
    gate = parsed.mode == "lf"
    result = CheckedFile(parsed.mode, Context(), decls=parsed.decls)
    names: set[str] = set()
    expansions: dict[str, Term] = {}

    def prepare(t: Term) -> Term:
        # definition bodies are already fully expanded, so one parallel pass
        # replaces every defined name
        out = substitute_parallel(t, expansions)
        if gate:
            assert_public(out)
        return out

    for decl in parsed.decls:
        budget = _as_fuel(fuel)  # fresh per declaration unless a Fuel is shared
        try:
            match decl:
                case SymbolDecl(name, ty, _):
                    if name in names:
                        raise fail(dk.DUPLICATE_NAME, f"{name!r} declared twice")
                    ty = prepare(ty)
                    kernel.sort_of(result.context, ty, budget)
                    result.context = result.context.extend(name, ty)
                    names.add(name)
                case Definition(name, body, ty, _):
                    if name in names:
                        raise fail(dk.DUPLICATE_NAME, f"{name!r} declared twice")
                    body = prepare(body)
                    inferred = kernel.infer(result.context, body, budget)
                    if ty is not None:
                        ty = prepare(ty)
                        kernel.sort_of(result.context, ty, budget)
                        kernel.check(result.context, body, ty, budget)
                    result.definitions[name] = (body, ty if ty is not None else inferred)
                    expansions[name] = body
                    names.add(name)
                case AssertJudgment(subject, ty, _):
                    subject, ty = prepare(subject), prepare(ty)
                    kernel.sort_of(result.context, ty, budget)
                    kernel.check(result.context, subject, ty, budget)
                case AssertConv(a, b, _):
                    a, b = prepare(a), prepare(b)
                    kernel.infer(result.context, a, budget)
                    kernel.infer(result.context, b, budget)
                    if not kernel.convert(result.context, a, b, budget):
                        raise fail(
                            dk.NOT_CONVERTIBLE,
                            "terms are not convertible",
                            context=result.context,
                            subject=a,
                        )
        except CheckError as err:
            raise err.with_span(decl.span) if decl.span is not None else err
    return result
