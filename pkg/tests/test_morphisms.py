import random
from fractions import Fraction as F

import pytest

from superskel import randgen
from superskel.continuation import eval_subst
from superskel.errors import ParityError, SpaceMismatchError, SuperskelError
from superskel.grassmann import GrassmannElement as G
from superskel.morphisms import (check_algebra_morphism, compose_formula, compose_subst,
                                 decode_point, encode_point, pullback)
from superskel.poly import Polynomial, RationalFunction
from superskel.spaces import DeWittDomain, SuperSpace
from superskel.superfn import Skeleton, SuperFunction

S10 = SuperSpace(1, 0)
S12 = SuperSpace(1, 2)


def full(space):
    return DeWittDomain.full(space)


def test_compose_example():
    f = Skeleton(S12, full(S12), S10, full(S10),
                 [SuperFunction.even_coordinate(S12, 1)
                  + SuperFunction.odd_coordinate(S12, 1)
                  * SuperFunction.odd_coordinate(S12, 2)])
    g = Skeleton(S10, full(S10), S10, full(S10),
                 [SuperFunction.even_coordinate(S10, 1) ** 2])
    x = SuperFunction.even_coordinate(S12, 1)
    expected = x ** 2 + 2 * x * SuperFunction.odd_coordinate(S12, 1) \
        * SuperFunction.odd_coordinate(S12, 2)
    for compose in (compose_subst, compose_formula):
        out = compose(g, f)
        assert out.components[0] == expected
    # the witness: both routes agree at random points
    rng = random.Random(0)
    composed = compose_subst(g, f)
    for _ in range(10):
        pt = randgen.random_point(rng, S12, 4)
        assert eval_subst(composed, pt) == eval_subst(g, eval_subst(f, pt))


def test_double_reciprocal():
    punctured = full(S10).with_excluded([Polynomial.variable(1, 0)])
    inv = Skeleton(S10, punctured, S10, punctured,
                   [SuperFunction(S10, punctured,
                                  {(): RationalFunction(Polynomial.one(1),
                                                        Polynomial.variable(1, 0))})])
    out = compose_subst(inv, inv)
    assert out.components[0] == SuperFunction.even_coordinate(S10, 1)
    assert any(not poly.is_constant() for poly in out.source_domain.excluded)


def test_identity_laws():
    rng = random.Random(1)
    for _ in range(10):
        src = randgen.random_spaces(rng, 2, 2)
        tgt = randgen.random_spaces(rng, 2, 2)
        f = randgen.random_skeleton(rng, src, tgt, degree=2)
        left = compose_subst(Skeleton.identity(tgt), f)
        right = compose_subst(f, Skeleton.identity(src))
        assert all(a == b for a, b in zip(left.components, f.components))
        assert all(a == b for a, b in zip(right.components, f.components))


def test_space_mismatch():
    f = Skeleton.identity(S10)
    g = Skeleton.identity(S12)
    with pytest.raises(SpaceMismatchError):
        compose_subst(g, f)


def test_associativity_random():
    rng = random.Random(2)
    for _ in range(15):
        spaces = [randgen.random_spaces(rng, 2, 2) for _ in range(4)]
        f = randgen.random_skeleton(rng, spaces[0], spaces[1], degree=2, terms=2)
        g = randgen.random_skeleton(rng, spaces[1], spaces[2], degree=2, terms=2)
        h = randgen.random_skeleton(rng, spaces[2], spaces[3], degree=2, terms=2)
        left = compose_subst(h, compose_subst(g, f))
        right = compose_subst(compose_subst(h, g), f)
        assert all(a == b for a, b in zip(left.components, right.components))


def test_formula_equals_subst_random():
    rng = random.Random(3)
    for case in range(40):
        src = randgen.random_spaces(rng, 2, 2)
        mid = randgen.random_spaces(rng, 2, 2)
        tgt = randgen.random_spaces(rng, 2, 2)
        f = randgen.random_skeleton(rng, src, mid, degree=3, terms=2,
                                    rational=case % 5 == 0)
        g = randgen.random_skeleton(rng, mid, tgt, degree=3, terms=2)
        a = compose_subst(g, f)
        b = compose_formula(g, f)
        assert all(u == v for u, v in zip(a.components, b.components))
        for body in f.source_domain.sample_bodies(rng, 5):
            for u, v in zip(a.components, b.components):
                for labels in set(u.terms) | set(v.terms):
                    assert u.coefficient(labels).eval(body) == \
                        v.coefficient(labels).eval(body)


def test_formula_with_rational_body_maps():
    # the superline transitions have genuinely rational body maps; composing
    # them by the combinatorial route must still return the identity
    from superskel.atlas import projective_superline

    line = projective_superline()
    forward = line.transition("A", "B")
    backward = line.transition("B", "A")
    out = compose_formula(backward, forward)
    space = SuperSpace(1, 1)
    assert out.components[0] == SuperFunction.even_coordinate(space, 1)
    assert out.components[1] == SuperFunction.odd_coordinate(space, 1)


def test_compose_on_punctured_domains():
    rng = random.Random(77)
    for case in range(10):
        src = randgen.random_spaces(rng, 2, 2, min_even=1)
        mid = randgen.random_spaces(rng, 2, 2)
        tgt = randgen.random_spaces(rng, 2, 2)
        p = src.even_dim
        xpoly = Polynomial.variable(p, 0)
        dom = DeWittDomain.full(src).with_excluded([xpoly])
        comps = []
        for _ in range(mid.even_dim):
            base = randgen.random_superfunction(rng, src, degree=2, terms=2,
                                                parity=0, domain=dom)
            comps.append(base + SuperFunction(
                src, dom, {(): RationalFunction(Polynomial.one(p), xpoly)}))
        for _ in range(mid.odd_dim):
            comps.append(randgen.random_superfunction(rng, src, degree=2, terms=2,
                                                      parity=1, domain=dom))
        f = Skeleton(src, dom, mid, full(mid), comps)
        g = randgen.random_skeleton(rng, mid, tgt, degree=2, terms=2)
        a = compose_subst(g, f)
        b = compose_formula(g, f)
        assert all(u == v for u, v in zip(a.components, b.components))
        for _ in range(3):
            x = randgen.random_point(rng, src, 4, dom)
            assert eval_subst(a, x, check_domain=False) == \
                eval_subst(g, eval_subst(f, x, check_domain=False), check_domain=False)


def test_formula_odd_linear():
    # outer odd-linear map h -> c*h picks up the inner odd component
    S01 = SuperSpace(0, 1)
    c = F(5, 3)
    outer = Skeleton(S01, full(S01), S01, full(S01),
                     [c * SuperFunction.odd_coordinate(S01, 1)])
    inner = Skeleton(S12, full(S12), S01, full(S01),
                     [SuperFunction.odd_coordinate(S12, 1)])
    out = compose_formula(outer, inner)
    assert out.components[0] == c * SuperFunction.odd_coordinate(S12, 1)


def test_pullback():
    rng = random.Random(4)
    for _ in range(20):
        src = randgen.random_spaces(rng, 2, 2)
        tgt = randgen.random_spaces(rng, 2, 2, min_even=1)
        f = randgen.random_skeleton(rng, src, tgt, degree=2, terms=2)
        h1 = randgen.random_superfunction(rng, tgt, degree=2, terms=2)
        h2 = randgen.random_superfunction(rng, tgt, degree=2, terms=2)
        assert pullback(f, h1 * h2) == pullback(f, h1) * pullback(f, h2)
        coord = SuperFunction.even_coordinate(tgt, 1)
        assert pullback(f, coord) == f.components[0]
        assert pullback(f, SuperFunction.constant(tgt, 1)) == \
            SuperFunction.constant(src, 1)


def test_decode_point_examples():
    space = SuperSpace(1, 1)
    point = decode_point(space, 2, [G.scalar(2, 3) + G.monomial(2, (1, 2))],
                         [G.generator(2, 1)])
    assert point.even_values[0] == G.scalar(2, 3) + G.monomial(2, (1, 2))
    square = SuperFunction.even_coordinate(space, 1) ** 2
    assert square.eval(point) == G.scalar(2, 9) + 6 * G.monomial(2, (1, 2))

    body = decode_point(space, 2, [G.scalar(2, 3)], [G.zero(2)])
    assert body.split()[1] == (G.zero(2),)

    with pytest.raises(ParityError):
        decode_point(space, 2, [G.generator(2, 1)], [G.zero(2)])


def test_decode_point_domain():
    space = SuperSpace(1, 0)
    punctured = DeWittDomain.full(space).with_excluded([Polynomial.variable(1, 0)])
    from superskel.errors import DomainError

    with pytest.raises(DomainError):
        decode_point(space, 2, [G.monomial(2, (1, 2))], [], domain=punctured)


def test_encode_decode_bijection():
    rng = random.Random(5)
    for _ in range(40):
        space = randgen.random_spaces(rng, 2, 2)
        rank = rng.randint(0, 5)
        x = randgen.random_point(rng, space, rank)
        ev = encode_point(x)
        evens = [ev(SuperFunction.even_coordinate(space, i + 1))
                 for i in range(space.even_dim)]
        odds = [ev(SuperFunction.odd_coordinate(space, j + 1))
                for j in range(space.odd_dim)]
        assert decode_point(space, rank, evens, odds) == x


def test_encode_multiplicative():
    rng = random.Random(6)
    for _ in range(25):
        space = randgen.random_spaces(rng, 2, 2)
        x = randgen.random_point(rng, space, rng.randint(1, 5))
        ev = encode_point(x)
        h1 = randgen.random_superfunction(rng, space, degree=3)
        h2 = randgen.random_superfunction(rng, space, degree=3)
        assert ev(h1 * h2) == ev(h1) * ev(h2)
        assert ev(SuperFunction.constant(space, 1)) == G.unit(x.rank)


def test_check_algebra_morphism():
    space = SuperSpace(1, 1)
    rng = random.Random(7)
    x = randgen.random_point(rng, space, 3)
    coord_x = SuperFunction.even_coordinate(space, 1)
    coord_t = SuperFunction.odd_coordinate(space, 1)
    square = coord_x * coord_x

    table = [(coord_x, x.even_values[0]), (coord_t, x.odd_values[0])]
    assert check_algebra_morphism(space, 3, table).ok

    table.append((square, square.eval(x)))
    assert check_algebra_morphism(space, 3, table).ok

    broken = table[:-1] + [(square, square.eval(x) + 1)]
    report = check_algebra_morphism(space, 3, broken)
    assert not report.ok

    with pytest.raises(SuperskelError):
        check_algebra_morphism(space, 3, [(coord_x, x.even_values[0])])


def test_skeleton_reconstructs_from_coordinate_pullbacks():
    rng = random.Random(8)
    for _ in range(10):
        src = randgen.random_spaces(rng, 2, 2)
        tgt = randgen.random_spaces(rng, 2, 2)
        f = randgen.random_skeleton(rng, src, tgt, degree=2)
        comps = [pullback(f, SuperFunction.even_coordinate(tgt, i + 1))
                 for i in range(tgt.even_dim)]
        comps += [pullback(f, SuperFunction.odd_coordinate(tgt, j + 1))
                  for j in range(tgt.odd_dim)]
        assert all(a == b for a, b in zip(comps, f.components))
