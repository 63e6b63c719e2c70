"""Substitution, alpha-equivalence and free variables."""

from __future__ import annotations

import random

from genutil import BASE_CTX, TermGen
from pcert.terms import (
    Abs,
    App,
    Context,
    Sort,
    SymApp,
    Var,
    alpha_eq,
    free_vars,
    lam,
    pi,
    substitute,
)

PROP = Sort("Prop")
T = Var("T")


def test_substitute_variable_hit():
    assert substitute(Var("x"), ("x", PROP)) == PROP


def test_substitute_renames_on_capture():
    # \y: T. x  with  x := y  must not capture the free y
    body = lam("y", T, Var("x"))
    out = substitute(body, ("x", Var("y")))
    assert alpha_eq(out, Abs("fresh", T, Var("y")))
    # the binder no longer binds the substituted occurrence
    assert out != lam("y", T, Var("y"))


def test_substitute_leaves_bound_occurrences():
    redex = App(lam("x", T, Var("x")), Var("x"))
    out = substitute(redex, ("x", Var("m")))
    assert out == App(lam("x", T, Var("x")), Var("m"))


def test_substitute_fresh_variable_is_identity():
    gen = TermGen(11)
    for _ in range(60):
        t, _ = gen.some_term(4)
        assert alpha_eq(substitute(t, ("nowhere", PROP)), t)


def test_substitution_composition_law():
    # t{x:=u}{y:=v} == t{y:=v}{x:=u{y:=v}} when x not free in v and x != y
    gen = TermGen(12)
    rng = random.Random(3)
    for _ in range(60):
        ctx = BASE_CTX.extend("x", Var("iota")).extend("y", Var("iota"))
        t = gen.term_of(Var("iota"), 4, ctx)
        u = gen.term_of(Var("iota"), 3, BASE_CTX.extend("y", Var("iota")))
        v = gen.term_of(Var("iota"), 3, BASE_CTX)
        assert "x" not in free_vars(v)
        left = substitute(substitute(t, ("x", u)), ("y", v))
        right = substitute(substitute(t, ("y", v)), ("x", substitute(u, ("y", v))))
        assert alpha_eq(left, right)


def test_alpha_eq_ignores_binder_names():
    assert alpha_eq(lam("x", PROP, Var("x")), lam("y", PROP, Var("y")))


def test_alpha_eq_compares_annotations():
    assert not alpha_eq(lam("x", PROP, Var("x")), lam("x", Sort("Type"), Var("x")))


def test_alpha_eq_is_syntactic_on_pair_proofs():
    base = (Var("t"), Var("p"), Var("m"))
    one = SymApp("pair", base + (Var("h"),))
    other = SymApp("pair", base + (Var("h2"),))
    assert not alpha_eq(one, other)
    assert alpha_eq(one, SymApp("pair", base + (Var("h"),)))


def test_alpha_eq_equivalence_and_congruence():
    gen = TermGen(13)
    for _ in range(40):
        t, _ = gen.some_term(4)
        s, _ = gen.some_term(4)
        assert alpha_eq(t, t)
        assert alpha_eq(t, s) == alpha_eq(s, t)
        # congruence: equal parts build equal wholes
        assert alpha_eq(App(t, s), App(t, s))
        assert alpha_eq(lam("w", t, s), lam("v", t, s))


def test_free_vars():
    assert free_vars(lam("x", T, Var("x"))) == {"T"}
    assert free_vars(Var("x")) == {"x"}
    assert free_vars(PROP) == set()
    assert free_vars(pi("x", Var("A"), App(Var("x"), Var("y")))) == {"A", "y"}


def test_context_rejects_duplicates():
    ctx = Context().extend("x", PROP)
    try:
        ctx.extend("x", PROP)
    except Exception as err:
        assert "x" in str(err)
    else:
        raise AssertionError("duplicate declaration accepted")
