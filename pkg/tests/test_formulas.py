import pytest

from lkt.formulas import (
    bot,
    conj,
    disj,
    eq,
    allq,
    exq,
    imp,
    instantiate_block,
    is_atom,
    neg,
    num,
    num_of,
    quantifier_free,
    split,
    strip_sucs,
    suc,
    sucs,
    top,
    weak_block_len,
    zero,
)
from lkt.terms import app, arrow, beta_normalize, const, nat, o, var

x = var("x", nat)
y = var("y", nat)
P = const("P", arrow(nat, o))
px = app(P, x)


def test_split_inverts_builders():
    a, b = app(P, zero), app(P, num(1))
    assert split(conj(a, b)) == ("and", a, b)
    assert split(disj(a, b)) == ("or", a, b)
    assert split(imp(a, b)) == ("imp", a, b)
    assert split(neg(a)) == ("not", a)
    assert split(eq(zero, num(1))) == ("eq", zero, num(1))
    assert split(top) == ("top",)
    assert split(bot) == ("bot",)
    assert split(a) == ("atom", a)


def test_split_quantifiers_carry_the_lambda():
    f = allq(x, px)
    tag = split(f)
    assert tag[0] == "all"
    assert beta_normalize(app(tag[1], zero)) is app(P, zero)
    assert split(exq(x, px))[0] == "ex"


def test_is_atom_and_quantifier_free():
    assert is_atom(px)
    assert is_atom(eq(x, zero))
    assert not is_atom(conj(px, px))
    assert not is_atom(top)
    assert quantifier_free(imp(px, neg(px)))
    assert not quantifier_free(allq(x, px))
    assert not quantifier_free(conj(px, exq(y, app(P, y))))


def test_numerals():
    assert num(0) is zero
    assert num(3) is suc(suc(suc(zero)))
    assert num_of(num(7)) == 7
    assert num_of(suc(x)) is None
    assert sucs(x, 2) is suc(suc(x))
    assert strip_sucs(sucs(x, 4)) == (4, x)
    assert strip_sucs(num(2)) == (2, zero)


def test_weak_block_len_counts_by_side():
    f = allq(x, allq(y, imp(px, app(P, y))))
    assert weak_block_len(f, positive=False) == 2
    assert weak_block_len(f, positive=True) == 0
    g = exq(x, px)
    assert weak_block_len(g, positive=True) == 1
    assert weak_block_len(g, positive=False) == 0
    assert weak_block_len(px, positive=False) == 0
    # The block stops at the first connective.
    h = allq(x, exq(y, px))
    assert weak_block_len(h, positive=False) == 1


def test_instantiate_block():
    f = allq(x, allq(y, imp(px, app(P, y))))
    inst = instantiate_block(f, [num(1), num(2)])
    assert inst is imp(app(P, num(1)), app(P, num(2)))
    g = exq(x, px)
    assert instantiate_block(g, [num(5)]) is app(P, num(5))
    with pytest.raises(ValueError):
        instantiate_block(px, [zero])
