"""Extending a skeleton to a map on lambda-points, two independent ways.

``eval_subst`` is the semantic ground truth: plug the Grassmann coordinate
values straight into the component superfunctions and compute in the algebra,
inverting denominators by their terminating geometric series.

``eval_taylor`` is the finite Taylor route: split the point into body, even
souls and odd values, and sum

    sum_{m,k} 1/(m! k!) d^m(degree-k alternating coefficient map)(body)
              applied to m soul insertions and k odd insertions,

where a Grassmann monomial argument v*gI contributes its label monomial as a
factor pulled out to the right in argument order.  Nilpotency truncates the
sum: no term with m + k > rank survives.  The two routes must agree exactly
on every input; their equality is a first-class test.
"""

from __future__ import annotations

from fractions import Fraction
from math import factorial

from .errors import DomainError, RankMismatchError, SuperskelError
from .grassmann import GrassmannElement, GrassmannMorphism, merge_sign, sort_sign
from .report import CheckReport
from .spaces import LambdaPoint
from .superfn import Skeleton

_ZERO = Fraction(0)


def eval_subst(skeleton: Skeleton, point: LambdaPoint,
               check_domain: bool = True) -> LambdaPoint:
    """Evaluate by direct substitution into the component superfunctions."""
    if point.space != skeleton.source_space:
        raise SuperskelError("point lives in a different space than the skeleton source")
    if check_domain and not skeleton.source_domain.contains(point):
        raise DomainError("point lies outside the skeleton's source domain")
    values = [comp.eval(point, check_domain=False) for comp in skeleton.components]
    p = skeleton.target_space.even_dim
    result = LambdaPoint(skeleton.target_space, point.rank, values[:p], values[p:])
    if check_domain and not skeleton.target_domain.contains(result):
        raise DomainError("image body falls outside the declared target domain")
    return result


def _soul_monomials(point: LambdaPoint):
    """Monomial decompositions of the even souls and the odd values.

    Returns (A, B): lists of (0-based coordinate, label tuple, Fraction).
    """
    evens = []
    for i, v in enumerate(point.even_values):
        for labels, coeff in v.terms.items():
            if labels:
                evens.append((i, labels, coeff))
    odds = []
    for j, v in enumerate(point.odd_values):
        for labels, coeff in v.terms.items():
            odds.append((j, labels, coeff))
    return evens, odds


def _ordered_tuples(pool, length, sign, labels, coeff, chosen):
    """Ordered tuples (with repetition) from pool whose label product survives.

    Yields (chosen coordinate list, sign, merged labels, coefficient product);
    the running Grassmann monomial product prunes dead branches early.
    """
    if length == 0:
        yield chosen, sign, labels, coeff
        return
    for coord, mono, c in pool:
        s, merged = merge_sign(labels, mono)
        if s == 0:
            continue
        yield from _ordered_tuples(pool, length - 1, sign * s, merged,
                                   coeff * c, chosen + [coord])


def taylor_shells(skeleton: Skeleton, point: LambdaPoint, max_total: int | None = None):
    """Per-(m, k) contributions of the Taylor route, for each component.

    Returns a dict (m, k) -> tuple of GrassmannElements (one per target
    coordinate).  Shells whose contributions all vanish are omitted.  By
    exactness there is no surviving shell with m + k > rank.
    """
    rank = point.rank
    if max_total is None:
        max_total = rank
    body = point.body()
    evens, odds = _soul_monomials(point)
    derivative_cache: dict = {}

    def derived_at_body(comp_index, sorted_odd, even_dirs):
        key = (comp_index, sorted_odd, even_dirs)
        if key not in derivative_cache:
            rf = skeleton.components[comp_index].coefficient(sorted_odd)
            for i in even_dirs:
                rf = rf.derivative(i)
            derivative_cache[key] = None if rf.is_zero() else rf.eval(body)
        return derivative_cache[key]

    shells = {}
    n_components = len(skeleton.components)
    for m in range(0, rank // 2 + 1):
        even_tuples = list(_ordered_tuples(evens, m, 1, (), Fraction(1), []))
        if not even_tuples:
            break
        for k in range(0, max_total - m + 1):
            weight = Fraction(1, factorial(m) * factorial(k))
            values = [GrassmannElement.zero(rank) for _ in range(n_components)]
            hit = False
            for e_chosen, e_sign, e_labels, e_coeff in even_tuples:
                odd_tuples = _ordered_tuples(odds, k, e_sign, e_labels, e_coeff, [])
                for o_chosen, sign, labels, coeff in odd_tuples:
                    sort_s, sorted_odd = sort_sign(tuple(j + 1 for j in o_chosen))
                    if sort_s == 0:
                        continue
                    even_dirs = tuple(sorted(e_chosen))
                    scalar = coeff * sign * sort_s * weight
                    for ci in range(n_components):
                        val = derived_at_body(ci, sorted_odd, even_dirs)
                        if val is None or val == 0:
                            continue
                        hit = True
                        values[ci] = values[ci] + GrassmannElement(
                            rank, {labels: scalar * val})
            if hit and any(not v.is_zero() for v in values):
                shells[(m, k)] = tuple(values)
    return shells


def eval_taylor(skeleton: Skeleton, point: LambdaPoint,
                check_domain: bool = True) -> LambdaPoint:
    """Evaluate by the exact Taylor double sum at the body point."""
    if point.space != skeleton.source_space:
        raise SuperskelError("point lives in a different space than the skeleton source")
    if check_domain and not skeleton.source_domain.contains(point):
        raise DomainError("point lies outside the skeleton's source domain")
    rank = point.rank
    totals = [GrassmannElement.zero(rank) for _ in skeleton.components]
    for contributions in taylor_shells(skeleton, point).values():
        totals = [a + b for a, b in zip(totals, contributions)]
    p = skeleton.target_space.even_dim
    result = LambdaPoint(skeleton.target_space, rank, totals[:p], totals[p:])
    if check_domain and not skeleton.target_domain.contains(result):
        raise DomainError("image body falls outside the declared target domain")
    return result


def default_morphism_battery(rank: int, scale=Fraction(3, 2)):
    """The standard battery: body projection, permutations, scalings,
    generator kills, and an odd cubic substitution (when the rank allows)."""
    battery = [("to_body", GrassmannMorphism.to_body(rank))]
    if rank >= 2:
        rotation = list(range(2, rank + 1)) + [1]
        battery.append(("rotate", GrassmannMorphism.permutation(rank, rotation)))
        swap = list(range(1, rank + 1))
        swap[0], swap[1] = swap[1], swap[0]
        battery.append(("swap12", GrassmannMorphism.permutation(rank, swap)))
    if rank >= 1:
        battery.append(("scale1", GrassmannMorphism.scale_generator(rank, 1, scale)))
        battery.append(("kill1", GrassmannMorphism.kill_generator(rank, 1)))
    if rank >= 3:
        cubic = GrassmannElement.monomial(rank, (rank - 2, rank - 1, rank))
        images = [GrassmannElement.generator(rank, i + 1) for i in range(rank)]
        images[0] = cubic
        battery.append(("odd_cubic", GrassmannMorphism(rank, rank, images)))
    return battery


def check_naturality(skeleton: Skeleton, rank: int, morphisms=None,
                     samples=None, rng=None, sample_count: int = 4) -> CheckReport:
    """Verify eval(f, m(x)) == m(eval(f, x)) over a morphism battery.

    Samples whose image leaves the domain are skipped and reported (this
    cannot happen for body-fixing morphisms, but the guard keeps the check
    honest for arbitrary batteries).
    """
    from . import randgen

    report = CheckReport(f"naturality at rank {rank}")
    if morphisms is None:
        morphisms = default_morphism_battery(rank)
    if samples is None:
        if rng is None:
            raise SuperskelError("check_naturality needs samples or an rng")
        samples = [randgen.random_point(rng, skeleton.source_space, rank,
                                        skeleton.source_domain)
                   for _ in range(sample_count)]
    for s_idx, x in enumerate(samples):
        if not skeleton.source_domain.contains(x):
            report.add_skip(f"sample {s_idx}", "outside the source domain")
            continue
        through_f = eval_subst(skeleton, x)
        for label, morphism in morphisms:
            mapped = x.map(morphism)
            if not skeleton.source_domain.contains(mapped):
                report.add_skip(f"{label} on sample {s_idx}", "image leaves the domain")
                continue
            lhs = eval_subst(skeleton, mapped)
            rhs = through_f.map(morphism)
            report.add(f"{label} on sample {s_idx}", lhs == rhs)
    return report


def theta_support(point_like) -> set[int]:
    """Generators contained in every stored monomial of every coordinate."""
    entries = (point_like.entries() if isinstance(point_like, LambdaPoint)
               else point_like.values)
    common = None
    for v in entries:
        for labels in v.terms:
            s = set(labels)
            common = s if common is None else (common & s)
    return common or set()


def taylor_increment(skeleton: Skeleton, point: LambdaPoint, increments) -> LambdaPoint:
    """Exact multi-increment Taylor expansion assembled from derivative data.

    Each increment must be supported on a single generator (every monomial of
    every coordinate contains it); the result equals
    eval_subst(f, x + sum y) - eval_subst(f, x) exactly.
    """
    from .calculus import derivative

    increments = list(increments)
    for idx, y in enumerate(increments):
        if y.space != skeleton.source_space or y.rank != point.rank:
            raise RankMismatchError("increment incompatible with the base point")
        nonzero = [v for v in y.entries()] if isinstance(y, LambdaPoint) else list(y.values)
        if all(v.is_zero() for v in nonzero):
            continue
        if not theta_support(y):
            raise SuperskelError(
                f"increment {idx} is not supported on a single generator")
    k = len(increments)
    total = None
    vectors = [y.to_vector() if isinstance(y, LambdaPoint) else y for y in increments]
    for j in range(1, k + 1):
        data = derivative(skeleton, j)
        from itertools import combinations

        for subset in combinations(range(k), j):
            value = data.apply(point, [vectors[i] for i in subset])
            total = value if total is None else total + value
    if total is None:
        return LambdaPoint.zero(skeleton.target_space, point.rank)
    return total.to_point()


def truncation_consistent(skeleton: Skeleton, point: LambdaPoint) -> bool:
    """Evaluate-then-embed equals embed-then-evaluate, one rank up."""
    higher = point.embed(point.rank + 1)
    return eval_subst(skeleton, point).embed(point.rank + 1) == eval_subst(skeleton, higher)
