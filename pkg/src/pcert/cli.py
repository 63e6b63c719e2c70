"""Command-line front door.

    pcert check FILE [--fuel N]
    pcert translate FILE -o OUT [--fuel N]
    pcert roundtrip FILE [--fuel N]
    pcert export FILE -o OUT [--signature] [--fuel N]

Exit codes: 0 ok, 1 type error, 2 parse error (including wrong mode),
3 fuel exhausted, 4 protected-symbol violation, 5 round-trip failure.
Diagnostics go to stderr, artifacts to stdout or the -o path. PCERT_FUEL
overrides the default fuel; --fuel overrides both; 0 means unlimited, which
is dangerous because termination of the rewrite systems is not established.
"""

from __future__ import annotations

import argparse
import os
import sys

from . import diagnostics as dk
from .checker import check_file
from .diagnostics import CheckError
from .export import export_lambdapi
from .inverse import NotInImage, inverse_term
from .pcert import KERNEL as PCERT_KERNEL
from .rewrite import DEFAULT_FUEL, RuleSet, normalize
from .syntax import (
    AssertConv,
    AssertJudgment,
    Declaration,
    Definition,
    ParsedFile,
    SymbolDecl,
    parse_file,
    print_file,
)
from .terms import Context, Term, substitute_parallel
from .translate import translate_term, translate_type

EXIT_OK = 0
EXIT_TYPE_ERROR = 1
EXIT_PARSE_ERROR = 2
EXIT_FUEL = 3
EXIT_PROTECTED = 4
EXIT_ROUNDTRIP = 5

_PARSE_KINDS = {dk.PARSE_ERROR, dk.ARITY_MISMATCH, dk.WRONG_MODE}

BETA_ONLY = RuleSet((), beta_enabled=True)


def _exit_code(err: CheckError) -> int:
    if err.kind == dk.FUEL_EXHAUSTED:
        return EXIT_FUEL
    if err.kind == dk.PROTECTED_SYMBOL:
        return EXIT_PROTECTED
    if err.kind in _PARSE_KINDS:
        return EXIT_PARSE_ERROR
    return EXIT_TYPE_ERROR


def _read(path: str) -> str:
    with open(path, encoding="utf-8") as handle:
        return handle.read()


def _emit(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8") as handle:
            handle.write(text)


def _load(path: str) -> ParsedFile:
    return parse_file(_read(path), path)


def _translate_decls(parsed: ParsedFile, fuel: int | None) -> list[Declaration]:
    """Translate a checked pcert development declaration by declaration,
    expanding definitions exactly as the checker did."""
    out: list[Declaration] = []
    ctx = Context()
    expansions: dict[str, Term] = {}
    for decl in parsed.decls:
        match decl:
            case SymbolDecl(name, ty, span):
                ty = substitute_parallel(ty, expansions)
                out.append(SymbolDecl(name, translate_type(ctx, ty, fuel), span))
                ctx = ctx.extend(name, ty)
            case Definition(name, body, _, span):
                body = substitute_parallel(body, expansions)
                ty = PCERT_KERNEL.infer(ctx, body, fuel)
                out.append(
                    Definition(name, translate_term(ctx, body, fuel), translate_type(ctx, ty, fuel), span)
                )
                expansions[name] = body
            case AssertJudgment(subject, ty, span):
                subject = substitute_parallel(subject, expansions)
                ty = substitute_parallel(ty, expansions)
                out.append(AssertJudgment(translate_term(ctx, subject, fuel), translate_type(ctx, ty, fuel), span))
            case AssertConv(a, b, span):
                a = substitute_parallel(a, expansions)
                b = substitute_parallel(b, expansions)
                out.append(AssertConv(translate_term(ctx, a, fuel), translate_term(ctx, b, fuel), span))
    return out


def cmd_check(path: str, fuel: int | None) -> int:
    check_file(_load(path), fuel)
    return EXIT_OK


def cmd_translate(path: str, out: str | None, fuel: int | None) -> int:
    parsed = _load(path)
    if parsed.mode != "pcert":
        raise CheckError(dk.Diagnostic(dk.WRONG_MODE, f"translate expects a pcert file, got mode {parsed.mode!r}"))
    check_file(parsed, fuel)
    translated = ParsedFile("lf", tuple(_translate_decls(parsed, fuel)), parsed.path)
    text = print_file(translated)
    # machine-checked correctness: the printed output must reparse and pass
    # the lf kernel before anything is written
    check_file(parse_file(text, f"{path}:translated"), fuel)
    _emit(text, out)
    return EXIT_OK


def cmd_roundtrip(path: str, fuel: int | None) -> int:
    parsed = _load(path)
    if parsed.mode != "pcert":
        raise CheckError(dk.Diagnostic(dk.WRONG_MODE, f"roundtrip expects a pcert file, got mode {parsed.mode!r}"))
    checked = check_file(parsed, fuel)
    failures: list[str] = []
    ctx_prefixes: dict[str, Context] = {}
    # reconstruct the context under which each definition was checked
    ctx = Context()
    expansions: dict[str, Term] = {}
    for decl in parsed.decls:
        match decl:
            case SymbolDecl(name, ty, _):
                ctx = ctx.extend(name, substitute_parallel(ty, expansions))
            case Definition(name, body, _, _):
                ctx_prefixes[name] = ctx
                expansions[name] = substitute_parallel(body, expansions)

    for name, (body, _) in checked.definitions.items():
        ctx = ctx_prefixes[name]
        encoded = translate_term(ctx, body, fuel)
        back = inverse_term(encoded)
        if isinstance(back, NotInImage):
            failures.append(f"{name}: {back}")
            continue
        if normalize(BETA_ONLY, back, fuel) != normalize(BETA_ONLY, body, fuel):
            failures.append(f"{name}: beta-normal forms differ after the round trip")
    if failures:
        for line in failures:
            print(f"roundtrip failure: {line}", file=sys.stderr)
        return EXIT_ROUNDTRIP
    return EXIT_OK


def cmd_export(path: str | None, out: str | None, signature: bool, fuel: int | None) -> int:
    if signature:
        _emit(export_lambdapi((), mode="signature"), out)
        return EXIT_OK
    if path is None:
        raise CheckError(dk.Diagnostic(dk.PARSE_ERROR, "export needs an input file unless --signature is given"))
    parsed = _load(path)
    check_file(parsed, fuel)
    if parsed.mode == "pcert":
        decls = _translate_decls(parsed, fuel)
    else:
        decls = list(parsed.decls)
    _emit(export_lambdapi(decls, mode="development"), out)
    return EXIT_OK


def _fuel_value(args: argparse.Namespace) -> int | None:
    if args.fuel is not None:
        return args.fuel
    env = os.environ.get("PCERT_FUEL")
    if env is not None:
        try:
            return int(env)
        except ValueError:
            raise CheckError(dk.Diagnostic(dk.PARSE_ERROR, f"PCERT_FUEL must be an integer, got {env!r}"))
    return DEFAULT_FUEL


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="pcert", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name: str, help_: str, output: bool = False, file_optional: bool = False) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help_)
        if file_optional:
            p.add_argument("file", nargs="?", default=None, help="input file (#MODE pcert or #MODE lf)")
        else:
            p.add_argument("file", help="input file (#MODE pcert or #MODE lf)")
        p.add_argument("--fuel", type=int, default=None, help="rewrite budget; 0 means unlimited")
        if output:
            p.add_argument("-o", "--output", default=None, help="output path (default stdout)")
        return p

    add("check", "parse and type check every declaration")
    add("translate", "translate a pcert file into a checked lf file", output=True)
    add("roundtrip", "translate, invert and compare each definition body", output=False)
    export = add("export", "write Lambdapi output", output=True, file_optional=True)
    export.add_argument("--signature", action="store_true", help="emit the encoding signature instead")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        fuel = _fuel_value(args)
        if args.command == "check":
            return cmd_check(args.file, fuel)
        if args.command == "translate":
            return cmd_translate(args.file, args.output, fuel)
        if args.command == "roundtrip":
            return cmd_roundtrip(args.file, fuel)
        return cmd_export(args.file, args.output, args.signature, fuel)
    except CheckError as err:
        print(err.diagnostic, file=sys.stderr)
        return _exit_code(err)
    except OSError as err:
        print(err, file=sys.stderr)
        return EXIT_PARSE_ERROR


if __name__ == "__main__":
    sys.exit(main())
