"""Composition of skeletons, pullbacks, and the point/evaluation dictionary.

``compose_subst`` substitutes the inner skeleton's component superfunctions
into the outer one's, inverting coefficient denominators in the superfunction
algebra.  It is the semantic definition of composition.

``compose_formula`` recomputes the same composition through the combinatorial
route: write the inner map as body map + even souls + odd parts, then expand

    sum_{m,k} 1/(m! k!) (d^m of the outer degree-k alternating coefficient
    map)(body map) * soul^m * odd^k

entirely in symbols, composing coefficient derivatives through the body map
only.  The displayed one-line version of this expansion (a sum over block
compositions with permutation weights 1/(m! k! alpha! beta!) and a sign on
the odd block permutation) is recovered from this form by expanding the
products; the internal block orderings cancel the alpha! beta! weights
because the alternating maps are only ever evaluated on ascending tuples.
Equality with ``compose_subst`` is a first-class test.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product as iproduct
from math import factorial

from .errors import DomainError, NotInvertibleError, ParityError, SpaceMismatchError, SuperskelError
from .grassmann import GrassmannElement, sort_sign
from .poly import RationalFunction
from .report import CheckReport
from .spaces import DeWittDomain, LambdaPoint, SuperSpace
from .superfn import Skeleton, SuperFunction

_ONE = Fraction(1)


def substitute_superfunction(h: SuperFunction, skeleton: Skeleton) -> SuperFunction:
    """h composed with a skeleton whose target is h's space."""
    if h.space != skeleton.target_space:
        raise SpaceMismatchError("superfunction does not live on the skeleton's target")
    one = SuperFunction.constant(skeleton.source_space, 1, skeleton.source_domain)
    return h.substitute(skeleton.even_components, skeleton.odd_components, one=one)


def compose_subst(outer: Skeleton, inner: Skeleton) -> Skeleton:
    """Composition by substitution; denominators met along the way join the
    result's excluded zero sets automatically."""
    if inner.target_space != outer.source_space:
        raise SpaceMismatchError("skeletons do not compose: target/source spaces differ")
    comps = [substitute_superfunction(c, inner) for c in outer.components]
    return Skeleton(inner.source_space, inner.source_domain,
                    outer.target_space, outer.target_domain, comps)


def compose_formula(outer: Skeleton, inner: Skeleton) -> Skeleton:
    """Composition by the combinatorial expansion through the body map."""
    if inner.target_space != outer.source_space:
        raise SpaceMismatchError("skeletons do not compose: target/source spaces differ")
    src = inner.source_space
    mid = outer.source_space
    q_src = src.odd_dim

    body_maps = list(inner.body_maps())
    souls = [c.soul_part() for c in inner.even_components]
    odds = list(inner.odd_components)
    one_rf = RationalFunction.constant(src.even_dim, 1)

    soul_min = [s.min_odd_degree() for s in souls]
    odd_min = [o.min_odd_degree() for o in odds]

    compose_cache: dict = {}

    def composed_derivative(ci, sorted_odd, even_dirs):
        """(d^m along even_dirs of the ascending degree-k coefficient of the
        outer component ci) composed through the body map; None when zero."""
        key = (ci, sorted_odd, even_dirs)
        if key not in compose_cache:
            rf = outer.components[ci].coefficient(sorted_odd)
            for d in even_dirs:
                rf = rf.derivative(d)
            if rf.is_zero():
                compose_cache[key] = None
            else:
                try:
                    compose_cache[key] = rf.eval_in(body_maps, one_rf)
                except NotInvertibleError:
                    raise DomainError(
                        "a denominator vanishes identically after composing "
                        "through the body map; the declared domains are dishonest")
        return compose_cache[key]

    zero = SuperFunction.zero(src, inner.source_domain)
    results = []
    for ci in range(len(outer.components)):
        acc = zero
        for m in range(0, q_src // 2 + 1):
            for evens in iproduct(range(len(souls)), repeat=m):
                soul_product = None
                degree = sum(soul_min[i] for i in evens)
                if degree > q_src:
                    continue
                for k in range(0, q_src + 1):
                    weight = Fraction(1, factorial(m) * factorial(k))
                    for odd_dirs in iproduct(range(len(odds)), repeat=k):
                        if degree + sum(odd_min[j] for j in odd_dirs) > q_src:
                            continue
                        sgn, sorted_odd = sort_sign(tuple(j + 1 for j in odd_dirs))
                        if sgn == 0:
                            continue
                        scalar = composed_derivative(ci, sorted_odd, tuple(sorted(evens)))
                        if scalar is None:
                            continue
                        if soul_product is None:
                            soul_product = SuperFunction.constant(
                                src, 1, inner.source_domain)
                            for i in evens:
                                soul_product = soul_product * souls[i]
                        if soul_product.is_zero():
                            break
                        term = soul_product
                        for j in odd_dirs:
                            term = term * odds[j]
                        if term.is_zero():
                            continue
                        coeff = SuperFunction(src, inner.source_domain,
                                              {(): scalar * weight * sgn})
                        acc = acc + coeff * term
                    if soul_product is not None and soul_product.is_zero():
                        break
        # denominators of the final coefficients are declared excluded
        dens = [c.den for c in acc.terms.values() if not c.is_polynomial()]
        results.append(SuperFunction(src, acc.domain.with_excluded(dens), acc.terms))
    return Skeleton(inner.source_space, inner.source_domain,
                    outer.target_space, outer.target_domain, results)


def pullback(skeleton: Skeleton, h: SuperFunction) -> SuperFunction:
    """Pull a scalar superfunction on the target back along the skeleton.

    Substitution directly; a parity-mixed h is handled term by term (its even
    and odd parts pull back independently)."""
    return substitute_superfunction(h, skeleton)


class PointEvaluation:
    """The evaluation morphism of a lambda-point: superfunctions to algebra values.

    Unital, even and multiplicative: the point is exactly this morphism's
    restriction to the coordinate functions.
    """

    def __init__(self, point: LambdaPoint, domain: DeWittDomain | None = None):
        if domain is not None and not domain.contains(point):
            raise DomainError("point lies outside the declared domain")
        self.point = point

    def __call__(self, h: SuperFunction) -> GrassmannElement:
        return h.eval(self.point)

    def __repr__(self):
        return f"PointEvaluation({self.point!r})"


def encode_point(point: LambdaPoint, domain: DeWittDomain | None = None) -> PointEvaluation:
    return PointEvaluation(point, domain)


def decode_point(space: SuperSpace, rank: int, even_images, odd_images,
                 domain: DeWittDomain | None = None) -> LambdaPoint:
    """Rebuild the lambda-point from the coordinate images of an evaluation
    morphism; parity violations and out-of-domain bodies are rejected."""
    try:
        point = LambdaPoint(space, rank, even_images, odd_images)
    except ParityError:
        raise
    if domain is not None and not domain.contains(point):
        raise DomainError("decoded point lies outside the domain")
    return point


def check_algebra_morphism(space: SuperSpace, rank: int, table,
                           domain: DeWittDomain | None = None) -> CheckReport:
    """Consistency of a finite value table with evaluation at its decoded point.

    ``table`` is a list of (superfunction, claimed value) pairs and must
    contain every coordinate function; the point is decoded from those rows
    and every row is re-checked against honest evaluation there.
    """
    report = CheckReport("algebra-morphism consistency")
    dom = domain or DeWittDomain.full(space)
    even_images = [None] * space.even_dim
    odd_images = [None] * space.odd_dim
    for h, value in table:
        for i in range(space.even_dim):
            if h == SuperFunction.even_coordinate(space, i + 1, dom):
                even_images[i] = value
        for j in range(space.odd_dim):
            if h == SuperFunction.odd_coordinate(space, j + 1, dom):
                odd_images[j] = value
    if any(v is None for v in even_images + odd_images):
        raise SuperskelError("the table must contain every coordinate function")
    point = decode_point(space, rank, even_images, odd_images, domain)
    for idx, (h, value) in enumerate(table):
        actual = h.eval(point)
        report.add(f"row {idx}", actual == value,
                   "" if actual == value else f"evaluates to {actual.format()}, table says {value.format()}")
    return report
