"""Scalar superfunctions and skeletons of superdomain morphisms.

A superfunction on R^{p|q} is a finite sum of terms c_J(x) * t_J where J runs
over strictly increasing subsets of {1..q}, t_J is the ordered product of the
odd coordinates in J, and each coefficient c_J is a rational function of the
even coordinates.  Because |J| <= q, nilpotency of the odd part is built into
the representation.

Equivalently, a superfunction is the family of its alternating coefficient
maps: the degree-k map sends a k-tuple of odd basis directions to the
coefficient of the corresponding ordered monomial, extended alternately
(``alt_coeff``).  The product can be computed either directly on monomials
with the exterior sign law, or through the shuffle-sum formula on the
alternating maps; both are implemented and must agree everywhere.

A skeleton packages one parity-correct superfunction per target coordinate
and is the finite description of a morphism between superdomains.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations

from .errors import NotInvertibleError, ParityError, SpaceMismatchError, SuperskelError
from .grassmann import GrassmannElement, merge_sign, sort_sign
from .poly import Polynomial, RationalFunction
from .spaces import DeWittDomain, LambdaPoint, SuperSpace

_ZERO = Fraction(0)
_ONE = Fraction(1)


def _as_rf(value, nvars):
    if isinstance(value, RationalFunction):
        return value
    if isinstance(value, Polynomial):
        return RationalFunction(value)
    if isinstance(value, (int, Fraction)):
        return RationalFunction.constant(nvars, value)
    raise TypeError(f"cannot use {type(value).__name__} as a coefficient function")


def shuffles(k: int, total: int):
    """All (k, total-k) shuffles of positions 0..total-1.

    Yields (first, second, sign): the two ascending position blocks and the
    sign of the permutation that lists ``first`` then ``second``.
    """
    positions = range(total)
    for first in combinations(positions, k):
        second = tuple(i for i in positions if i not in first)
        inversions = sum(1 for a in first for b in second if a > b)
        yield first, second, -1 if inversions & 1 else 1


class SuperFunction:
    """Sum of rational-coefficient odd monomials on a superspace."""

    __slots__ = ("space", "domain", "terms")
    __hash__ = None  # equality is value equality of coefficient functions

    def __init__(self, space: SuperSpace, domain: DeWittDomain, terms=None):
        if domain.space != space:
            raise SpaceMismatchError("domain belongs to a different space")
        p, q = space.even_dim, space.odd_dim
        clean = {}
        for labels, coeff in (terms or {}).items():
            coeff = _as_rf(coeff, p)
            if coeff.is_zero():
                continue
            labels = tuple(int(l) for l in labels)
            if any(l < 1 or l > q for l in labels):
                raise SuperskelError(f"odd label out of range in {labels} (q={q})")
            if any(labels[i] >= labels[i + 1] for i in range(len(labels) - 1)):
                raise SuperskelError(f"odd labels must be strictly increasing, got {labels}")
            if coeff.nvars != p:
                raise SuperskelError("coefficient arity does not match the even dimension")
            if labels in clean:
                coeff = clean[labels] + coeff
            if coeff.is_zero():
                clean.pop(labels, None)
            else:
                clean[labels] = coeff
        self.space = space
        self.domain = domain
        self.terms = clean

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, space: SuperSpace, domain: DeWittDomain | None = None) -> "SuperFunction":
        return cls(space, domain or DeWittDomain.full(space), {})

    @classmethod
    def constant(cls, space: SuperSpace, value, domain: DeWittDomain | None = None) -> "SuperFunction":
        return cls(space, domain or DeWittDomain.full(space), {(): value})

    @classmethod
    def even_coordinate(cls, space: SuperSpace, index: int,
                        domain: DeWittDomain | None = None) -> "SuperFunction":
        """x_index as a superfunction (1-based)."""
        if not 1 <= index <= space.even_dim:
            raise SuperskelError(f"no even coordinate x{index}")
        poly = Polynomial.variable(space.even_dim, index - 1)
        return cls(space, domain or DeWittDomain.full(space), {(): poly})

    @classmethod
    def odd_coordinate(cls, space: SuperSpace, index: int,
                       domain: DeWittDomain | None = None) -> "SuperFunction":
        """t_index as a superfunction (1-based)."""
        if not 1 <= index <= space.odd_dim:
            raise SuperskelError(f"no odd coordinate t{index}")
        return cls(space, domain or DeWittDomain.full(space), {(index,): 1})

    # -- structure ---------------------------------------------------------

    def coefficient(self, labels) -> RationalFunction:
        return self.terms.get(tuple(labels),
                              RationalFunction.constant(self.space.even_dim, 0))

    def is_zero(self) -> bool:
        return not self.terms

    def is_even(self) -> bool:
        return all(len(l) % 2 == 0 for l in self.terms)

    def is_odd(self) -> bool:
        return all(len(l) % 2 == 1 for l in self.terms)

    def parity(self):
        if self.is_even():
            return 0
        if self.is_odd():
            return 1
        return None

    def min_odd_degree(self) -> int:
        """Smallest |J| with a nonzero term; q+1 for the zero function."""
        if not self.terms:
            return self.space.odd_dim + 1
        return min(len(l) for l in self.terms)

    def body_coefficient(self) -> RationalFunction:
        return self.coefficient(())

    def soul_part(self) -> "SuperFunction":
        return SuperFunction(self.space, self.domain,
                             {l: c for l, c in self.terms.items() if l})

    def alt_coeff(self, labels) -> RationalFunction:
        """Alternating coefficient map on odd basis directions.

        Zero on repeated labels; otherwise the ascending coefficient times the
        sign of the sorting permutation.
        """
        labels = tuple(labels)
        if any(l < 1 or l > self.space.odd_dim for l in labels):
            raise SuperskelError(f"odd label out of range in {labels}")
        sign, sorted_labels = sort_sign(labels)
        if sign == 0:
            return RationalFunction.constant(self.space.even_dim, 0)
        return self.coefficient(sorted_labels) * Fraction(sign)

    # -- arithmetic --------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, (int, Fraction, Polynomial, RationalFunction)):
            return SuperFunction(self.space, self.domain, {(): other})
        if isinstance(other, SuperFunction):
            if other.space != self.space:
                raise SpaceMismatchError("superfunctions live on different spaces")
            return other
        return None

    def _merged_domain(self, other: "SuperFunction") -> DeWittDomain:
        if other.domain == self.domain:
            return self.domain
        return self.domain.intersect(other.domain)

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        terms = dict(self.terms)
        for labels, coeff in other.terms.items():
            new = terms.get(labels)
            new = coeff if new is None else new + coeff
            if new.is_zero():
                terms.pop(labels, None)
            else:
                terms[labels] = new
        return SuperFunction(self.space, self._merged_domain(other), terms)

    __radd__ = __add__

    def __neg__(self):
        return SuperFunction(self.space, self.domain,
                             {l: -c for l, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        """Monomial-route product: exterior sign law on the odd labels."""
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        terms = {}
        for l1, c1 in self.terms.items():
            for l2, c2 in other.terms.items():
                sign, merged = merge_sign(l1, l2)
                if sign == 0:
                    continue
                add = c1 * c2 * Fraction(sign)
                new = terms.get(merged)
                new = add if new is None else new + add
                if new.is_zero():
                    terms.pop(merged, None)
                else:
                    terms[merged] = new
        return SuperFunction(self.space, self._merged_domain(other), terms)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise SuperskelError("powers must be non-negative integers")
        result = SuperFunction.constant(self.space, 1, self.domain)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self * other.invert()

    def __eq__(self, other):
        if isinstance(other, SuperFunction) and other.space != self.space:
            return False
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        keys = set(self.terms) | set(other.terms)
        zero = RationalFunction.constant(self.space.even_dim, 0)
        return all(self.terms.get(k, zero) == other.terms.get(k, zero) for k in keys)

    def invert(self) -> "SuperFunction":
        """Inverse of an even superfunction with nonzero body coefficient.

        Computed by the terminating geometric series in the nilpotent part;
        the body coefficient's zero set joins the result's excluded zeros.
        """
        if not self.is_even():
            raise ParityError("only even superfunctions are invertible")
        c0 = self.body_coefficient()
        if c0.is_zero():
            raise NotInvertibleError("body coefficient is identically zero")
        domain = self.domain.with_excluded([c0.num])
        inv0 = c0.invert()
        nil = SuperFunction(self.space, domain,
                            {l: c for l, c in self.terms.items() if l})
        result = SuperFunction(self.space, domain, {(): inv0})
        power = SuperFunction.constant(self.space, 1, domain)
        scale = inv0
        for _ in range(self.space.odd_dim // 2):
            power = power * nil
            if power.is_zero():
                break
            scale = scale * inv0 * Fraction(-1)
            result = result + SuperFunction(self.space, domain, {(): scale}) * power
        return result

    # -- calculus ----------------------------------------------------------

    def partial(self, index: int) -> "SuperFunction":
        """d/dx_index (1-based), termwise on the coefficient functions."""
        if not 1 <= index <= self.space.even_dim:
            raise SuperskelError(f"no even coordinate x{index}")
        return SuperFunction(self.space, self.domain,
                             {l: c.derivative(index - 1) for l, c in self.terms.items()})

    def odd_partial(self, index: int) -> "SuperFunction":
        """Right-acting d/dt_index: t_J -> (-1)^(#labels above index) t_{J-index}.

        This is the convention under which iterated odd partials reproduce the
        alternating coefficient maps in argument order.
        """
        if not 1 <= index <= self.space.odd_dim:
            raise SuperskelError(f"no odd coordinate t{index}")
        terms = {}
        for labels, coeff in self.terms.items():
            if index not in labels:
                continue
            above = sum(1 for l in labels if l > index)
            reduced = tuple(l for l in labels if l != index)
            sign = -1 if above & 1 else 1
            new = coeff * Fraction(sign)
            if reduced in terms:
                new = terms[reduced] + new
            terms[reduced] = new
        return SuperFunction(self.space, self.domain, terms)

    # -- evaluation / substitution ------------------------------------------

    def _expand(self, even_values, odd_values, one):
        """Shared engine: substitute values for the coordinates.

        Works for Grassmann values (evaluation at a point) and superfunction
        values (composition), since both rings support +, *, Fraction scaling
        and ``invert`` for denominators.
        """
        acc = None
        for labels, coeff in self.terms.items():
            value = coeff.eval_in(even_values, one)
            for l in labels:
                value = value * odd_values[l - 1]
            acc = value if acc is None else acc + value
        if acc is None:
            return 0 * one
        return acc

    def eval(self, point: LambdaPoint, check_domain: bool = True) -> GrassmannElement:
        """Value at a lambda-point, computed in the Grassmann algebra."""
        from .errors import DomainError

        if point.space != self.space:
            raise SpaceMismatchError("point lives in a different space")
        if check_domain and not self.domain.contains(point):
            raise DomainError("point lies outside the declared domain")
        one = GrassmannElement.unit(point.rank)
        try:
            return self._expand(point.even_values, point.odd_values, one)
        except NotInvertibleError:
            # a declared-nonvanishing denominator hit a zero body here
            raise DomainError("a denominator has zero body at this point; "
                              "the declared domain is dishonest")

    def substitute(self, even_values, odd_values, one=None) -> "SuperFunction":
        """Plug superfunctions in for the coordinates (coordinatewise composition)."""
        values = list(even_values) + list(odd_values)
        if one is None:
            if not values:
                raise SuperskelError("substitution into a function of no coordinates "
                                     "requires an explicit unit")
            target = values[0]
            one = SuperFunction.constant(target.space, 1, target.domain)
        return self._expand(list(even_values), list(odd_values), one)

    # -- rendering -----------------------------------------------------------

    def format(self) -> str:
        """Canonical text per the expression grammar; round-trips exactly."""
        from .poly import monomial_text

        if not self.terms:
            return "0"
        name = lambda i: f"x{i + 1}"
        parts = []
        for labels in sorted(self.terms, key=lambda l: (len(l), l)):
            coeff = self.terms[labels]
            gens = [f"t{j}" for j in labels]
            if coeff.is_polynomial():
                for exps in sorted(coeff.num.terms,
                                   key=lambda e: (-sum(e), tuple(-x for x in e))):
                    c = coeff.num.terms[exps]
                    # negative unit coefficients stay explicit: -1*t1*t2
                    parts.append((c < 0, monomial_text(abs(c), exps, name, list(gens),
                                                       force_coeff=c < 0)))
            else:
                text = f"({coeff.num.format(name)})/({coeff.den.format(name)})"
                if gens:
                    text += "*" + "*".join(gens)
                parts.append((False, text))
        out = ("-" if parts[0][0] else "") + parts[0][1]
        for negative, text in parts[1:]:
            out += (" - " if negative else " + ") + text
        return out

    def __repr__(self):
        return f"SuperFunction({self.space}, {self.format()!r})"


def mul_monomial(f: SuperFunction, g: SuperFunction) -> SuperFunction:
    """Product via the exterior sign law on stored monomials."""
    return f * g


def mul_shuffle(f: SuperFunction, g: SuperFunction) -> SuperFunction:
    """Product via the shuffle sum over the alternating coefficient maps.

    The degree-m coefficient of the product at an ascending tuple M is the sum
    over (k, m-k) shuffles of M of the signed product of the factors'
    alternating maps on the two blocks.  Independent of ``mul_monomial`` by
    construction; the two must agree on all inputs.
    """
    other = f._coerce(g)
    if other is None:
        raise TypeError("mul_shuffle expects superfunctions on one space")
    g = other
    space = f.space
    q = space.odd_dim
    terms = {}
    for m in range(q + 1):
        for monomial in combinations(range(1, q + 1), m):
            acc = None
            for k in range(m + 1):
                for first, second, sign in shuffles(k, m):
                    left = f.coefficient(tuple(monomial[i] for i in first))
                    if left.is_zero():
                        continue
                    right = g.coefficient(tuple(monomial[i] for i in second))
                    if right.is_zero():
                        continue
                    piece = left * right * Fraction(sign)
                    acc = piece if acc is None else acc + piece
            if acc is not None and not acc.is_zero():
                terms[monomial] = acc
    return SuperFunction(space, f._merged_domain(g), terms)


class Skeleton:
    """Finite description of a superdomain morphism.

    One superfunction per target coordinate; components seated in even target
    slots must be parity-even, those in odd slots parity-odd.  The body map
    (the odd-free coefficients of the even components) is declared to send the
    source domain into the target domain; this is spot-checked by sampling and
    enforced exactly at every evaluation.
    """

    __slots__ = ("source_space", "source_domain", "target_space", "target_domain",
                 "components")

    def __init__(self, source_space: SuperSpace, source_domain: DeWittDomain,
                 target_space: SuperSpace, target_domain: DeWittDomain, components):
        components = tuple(components)
        if len(components) != target_space.even_dim + target_space.odd_dim:
            raise SpaceMismatchError("need one component per target coordinate")
        if source_domain.space != source_space or target_domain.space != target_space:
            raise SpaceMismatchError("domain/space mismatch")
        domain = source_domain
        for i, comp in enumerate(components):
            if comp.space != source_space:
                raise SpaceMismatchError("components must live on the source space")
            if i < target_space.even_dim:
                if not comp.is_even():
                    raise ParityError(f"component for even coordinate y{i + 1} must be even")
            else:
                if not comp.is_odd():
                    raise ParityError(
                        f"component for odd coordinate h{i - target_space.even_dim + 1} must be odd")
            if comp.domain != domain:
                domain = domain.intersect(comp.domain)
        self.source_space = source_space
        self.source_domain = domain
        self.target_space = target_space
        self.target_domain = target_domain
        self.components = components

    @classmethod
    def identity(cls, space: SuperSpace, domain: DeWittDomain | None = None) -> "Skeleton":
        domain = domain or DeWittDomain.full(space)
        comps = [SuperFunction.even_coordinate(space, i + 1, domain)
                 for i in range(space.even_dim)]
        comps += [SuperFunction.odd_coordinate(space, j + 1, domain)
                  for j in range(space.odd_dim)]
        return cls(space, domain, space, domain, comps)

    @property
    def even_components(self) -> tuple[SuperFunction, ...]:
        return self.components[:self.target_space.even_dim]

    @property
    def odd_components(self) -> tuple[SuperFunction, ...]:
        return self.components[self.target_space.even_dim:]

    def body_maps(self) -> tuple[RationalFunction, ...]:
        return tuple(c.body_coefficient() for c in self.even_components)

    def check_body_image(self, rng, samples: int = 25) -> bool:
        """Spot-check that sampled source bodies land in the target domain."""
        for body in self.source_domain.sample_bodies(rng, samples):
            image = tuple(rf.eval(body) for rf in self.body_maps())
            if not self.target_domain.contains_body(image):
                return False
        return True

    def __eq__(self, other):
        if not isinstance(other, Skeleton):
            return NotImplemented
        return (self.source_space == other.source_space
                and self.target_space == other.target_space
                and all(a == b for a, b in zip(self.components, other.components)))

    def __repr__(self):
        lines = []
        p = self.target_space.even_dim
        for i, comp in enumerate(self.components):
            name = f"y{i + 1}" if i < p else f"h{i - p + 1}"
            lines.append(f"{name} = {comp.format()}")
        return ("Skeleton(" + f"{self.source_space} -> {self.target_space}: "
                + "; ".join(lines) + ")")


def identity_skeleton(space: SuperSpace, domain: DeWittDomain | None = None) -> Skeleton:
    return Skeleton.identity(space, domain)
