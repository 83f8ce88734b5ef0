"""Exact arithmetic in finite-rank Grassmann algebras over the rationals.

Elements are sparse sums of monomials in anticommuting generators g1..gN,
indexed by strictly increasing label tuples; the empty tuple is the body
(scalar) component.  The product follows the usual exterior-algebra sign law:
two monomials sharing a generator multiply to zero, otherwise the result is
the merged monomial times (-1)^(number of label inversions).

Morphisms between these algebras are determined by the generator images,
which must be purely odd; this makes the induced map even and unital.
"""

from __future__ import annotations

import os
from fractions import Fraction

from .errors import NotInvertibleError, ParityError, RankCapError, RankMismatchError, SuperskelError

_ZERO = Fraction(0)
_ONE = Fraction(1)

DEFAULT_MAX_RANK = 8
MAX_RANK_ENV = "SUPERSKEL_MAX_RANK"


def max_rank() -> int:
    raw = os.environ.get(MAX_RANK_ENV)
    if raw is None:
        return DEFAULT_MAX_RANK
    try:
        return int(raw)
    except ValueError:
        raise RankCapError(f"{MAX_RANK_ENV} must be an integer, got {raw!r}")


def _check_rank_cap(rank: int) -> None:
    cap = max_rank()
    if rank > cap:
        raise RankCapError(
            f"rank {rank} exceeds the cap {cap}; raise {MAX_RANK_ENV} to allow it")


def merge_sign(a: tuple[int, ...], b: tuple[int, ...]):
    """Merge two strictly increasing label tuples.

    Returns (sign, merged); sign is 0 when the tuples share a label (the
    monomial product vanishes), otherwise (-1)^inversions.
    """
    i = j = 0
    inversions = 0
    out = []
    while i < len(a) and j < len(b):
        if a[i] == b[j]:
            return 0, None
        if a[i] < b[j]:
            out.append(a[i])
            i += 1
        else:
            out.append(b[j])
            j += 1
            inversions += len(a) - i
    out.extend(a[i:])
    out.extend(b[j:])
    return (-1 if inversions & 1 else 1), tuple(out)


def sort_sign(labels) -> tuple[int, tuple[int, ...]]:
    """Sign of the permutation sorting ``labels`` ascending; 0 on repeats."""
    labels = list(labels)
    sign = 1
    for i in range(len(labels)):
        for j in range(i + 1, len(labels)):
            if labels[i] == labels[j]:
                return 0, ()
            if labels[i] > labels[j]:
                labels[i], labels[j] = labels[j], labels[i]
                sign = -sign
    return sign, tuple(labels)


def _as_fraction(value):
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    raise TypeError(f"expected an exact rational, got {type(value).__name__}")


class GrassmannElement:
    """Element of the rank-N Grassmann algebra over the rationals."""

    __slots__ = ("rank", "terms")

    def __init__(self, rank: int, terms=None):
        if rank < 0:
            raise SuperskelError("rank must be non-negative")
        _check_rank_cap(rank)
        clean = {}
        for labels, coeff in (terms or {}).items():
            coeff = _as_fraction(coeff)
            if coeff == 0:
                continue
            labels = tuple(int(l) for l in labels)
            if any(l < 1 or l > rank for l in labels):
                raise SuperskelError(f"generator label out of range in {labels} (rank {rank})")
            if any(labels[i] >= labels[i + 1] for i in range(len(labels) - 1)):
                raise SuperskelError(f"labels must be strictly increasing, got {labels}")
            clean[labels] = clean.get(labels, _ZERO) + coeff
            if clean[labels] == 0:
                del clean[labels]
        self.rank = rank
        self.terms = clean

    @classmethod
    def _make(cls, rank, terms):
        # trusted constructor for internal use: terms already canonical
        el = object.__new__(cls)
        el.rank = rank
        el.terms = terms
        return el

    @classmethod
    def zero(cls, rank: int) -> "GrassmannElement":
        return cls(rank, {})

    @classmethod
    def unit(cls, rank: int) -> "GrassmannElement":
        return cls(rank, {(): _ONE})

    @classmethod
    def scalar(cls, rank: int, value) -> "GrassmannElement":
        return cls(rank, {(): _as_fraction(value)})

    @classmethod
    def generator(cls, rank: int, index: int) -> "GrassmannElement":
        return cls(rank, {(index,): _ONE})

    @classmethod
    def monomial(cls, rank: int, labels, coeff=1) -> "GrassmannElement":
        return cls(rank, {tuple(labels): coeff})

    def is_zero(self) -> bool:
        return not self.terms

    def body(self) -> Fraction:
        """Coefficient of the empty monomial (the unique algebra map to Q)."""
        return self.terms.get((), _ZERO)

    def soul(self) -> "GrassmannElement":
        """The nilpotent part: everything except the body."""
        return GrassmannElement._make(
            self.rank, {l: c for l, c in self.terms.items() if l})

    def is_even(self) -> bool:
        return all(len(l) % 2 == 0 for l in self.terms)

    def is_odd(self) -> bool:
        return all(len(l) % 2 == 1 for l in self.terms)

    def parity(self):
        """0 for even, 1 for odd, None for mixed; zero counts as even."""
        if self.is_even():
            return 0
        if self.is_odd():
            return 1
        return None

    def coefficient(self, labels) -> Fraction:
        return self.terms.get(tuple(labels), _ZERO)

    def _check_rank(self, other):
        if self.rank != other.rank:
            raise RankMismatchError(
                f"elements of rank {self.rank} and {other.rank} are incompatible")

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = GrassmannElement.scalar(self.rank, other)
        if not isinstance(other, GrassmannElement):
            return NotImplemented
        self._check_rank(other)
        terms = dict(self.terms)
        for labels, coeff in other.terms.items():
            new = terms.get(labels, _ZERO) + coeff
            if new == 0:
                terms.pop(labels, None)
            else:
                terms[labels] = new
        return GrassmannElement._make(self.rank, terms)

    __radd__ = __add__

    def __neg__(self):
        return GrassmannElement._make(self.rank, {l: -c for l, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = GrassmannElement.scalar(self.rank, other)
        if not isinstance(other, GrassmannElement):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            other = _as_fraction(other)
            if other == 0:
                return GrassmannElement.zero(self.rank)
            return GrassmannElement._make(
                self.rank, {l: c * other for l, c in self.terms.items()})
        if not isinstance(other, GrassmannElement):
            return NotImplemented
        self._check_rank(other)
        terms = {}
        for l1, c1 in self.terms.items():
            for l2, c2 in other.terms.items():
                sign, merged = merge_sign(l1, l2)
                if sign == 0:
                    continue
                new = terms.get(merged, _ZERO) + sign * c1 * c2
                if new == 0:
                    terms.pop(merged, None)
                else:
                    terms[merged] = new
        return GrassmannElement._make(self.rank, terms)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            other = _as_fraction(other)
            if other == 0:
                raise NotInvertibleError("division by zero")
            return self * (_ONE / other)
        if not isinstance(other, GrassmannElement):
            return NotImplemented
        return self * other.invert()

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise SuperskelError("powers must be non-negative integers")
        result = GrassmannElement.unit(self.rank)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = GrassmannElement.scalar(self.rank, other)
        if not isinstance(other, GrassmannElement):
            return NotImplemented
        return self.rank == other.rank and self.terms == other.terms

    def __hash__(self):
        return hash((self.rank, frozenset(self.terms.items())))

    def invert(self) -> "GrassmannElement":
        """Inverse via the terminating geometric series in the soul.

        Requires an invertible body: 1/(b + n) = sum_k (-1)^k n^k / b^(k+1),
        which stops because every soul term carries at least one generator.
        """
        b = self.body()
        if b == 0:
            raise NotInvertibleError("element has zero body, hence no inverse")
        n = self.soul()
        inv_b = _ONE / b
        result = GrassmannElement.scalar(self.rank, inv_b)
        power = GrassmannElement.unit(self.rank)
        scale = inv_b
        for _ in range(self.rank):
            power = power * n
            if power.is_zero():
                break
            scale = -scale * inv_b
            result = result + power * scale
        return result

    def embed(self, new_rank: int) -> "GrassmannElement":
        """Reinterpret inside a larger algebra (generator labels unchanged)."""
        if new_rank < self.rank:
            raise RankMismatchError("cannot embed into a smaller algebra")
        return GrassmannElement(new_rank, dict(self.terms))

    def format(self) -> str:
        """Canonical text: terms sorted by (length, labels), ``c*g1g2``-style,
        with ``1`` standing for the empty monomial."""
        if not self.terms:
            return "0"
        parts = []
        for labels in sorted(self.terms, key=lambda l: (len(l), l)):
            coeff = self.terms[labels]
            gens = "".join(f"g{i}" for i in labels) or "1"
            parts.append((coeff < 0, f"{abs(coeff)}*{gens}"))
        out = ("-" if parts[0][0] else "") + parts[0][1]
        for negative, text in parts[1:]:
            out += (" - " if negative else " + ") + text
        return out

    def __repr__(self):
        return f"GrassmannElement({self.rank}, {self.format()!r})"


class GrassmannMorphism:
    """Even unital algebra morphism between Grassmann algebras.

    Determined by the images of the source generators, which must be purely
    odd elements of the target algebra.
    """

    __slots__ = ("source_rank", "target_rank", "images")

    def __init__(self, source_rank: int, target_rank: int, images):
        _check_rank_cap(max(source_rank, target_rank))
        images = tuple(images)
        if len(images) != source_rank:
            raise SuperskelError("need one image per source generator")
        for img in images:
            if not isinstance(img, GrassmannElement) or img.rank != target_rank:
                raise RankMismatchError("generator images must live in the target algebra")
            if not img.is_odd():
                raise ParityError("generator images must be purely odd")
        self.source_rank = source_rank
        self.target_rank = target_rank
        self.images = images

    @classmethod
    def identity(cls, rank: int) -> "GrassmannMorphism":
        return cls(rank, rank, [GrassmannElement.generator(rank, i + 1) for i in range(rank)])

    @classmethod
    def to_body(cls, rank: int) -> "GrassmannMorphism":
        """The unique morphism onto the rank-0 algebra (kills every generator)."""
        return cls(rank, 0, [GrassmannElement.zero(0)] * rank)

    @classmethod
    def inclusion(cls, source_rank: int, target_rank: int) -> "GrassmannMorphism":
        if target_rank < source_rank:
            raise RankMismatchError("inclusion needs target rank >= source rank")
        return cls(source_rank, target_rank,
                   [GrassmannElement.generator(target_rank, i + 1) for i in range(source_rank)])

    @classmethod
    def projection(cls, source_rank: int, target_rank: int) -> "GrassmannMorphism":
        """Keep the first ``target_rank`` generators, send the rest to zero."""
        if target_rank > source_rank:
            raise RankMismatchError("projection needs target rank <= source rank")
        images = []
        for i in range(source_rank):
            if i < target_rank:
                images.append(GrassmannElement.generator(target_rank, i + 1))
            else:
                images.append(GrassmannElement.zero(target_rank))
        return cls(source_rank, target_rank, images)

    @classmethod
    def permutation(cls, rank: int, perm) -> "GrassmannMorphism":
        """g_i -> g_perm[i] for a permutation given as a 1-based image list."""
        perm = tuple(perm)
        if sorted(perm) != list(range(1, rank + 1)):
            raise SuperskelError(f"{perm} is not a permutation of 1..{rank}")
        return cls(rank, rank, [GrassmannElement.generator(rank, p) for p in perm])

    @classmethod
    def scale_generator(cls, rank: int, index: int, factor) -> "GrassmannMorphism":
        images = [GrassmannElement.generator(rank, i + 1) for i in range(rank)]
        images[index - 1] = images[index - 1] * _as_fraction(factor)
        return cls(rank, rank, images)

    @classmethod
    def kill_generator(cls, rank: int, index: int) -> "GrassmannMorphism":
        images = [GrassmannElement.generator(rank, i + 1) for i in range(rank)]
        images[index - 1] = GrassmannElement.zero(rank)
        return cls(rank, rank, images)

    def __call__(self, element: GrassmannElement) -> GrassmannElement:
        if element.rank != self.source_rank:
            raise RankMismatchError(
                f"morphism expects rank {self.source_rank}, got {element.rank}")
        acc = GrassmannElement.zero(self.target_rank)
        for labels, coeff in element.terms.items():
            value = GrassmannElement.unit(self.target_rank)
            for label in labels:
                value = value * self.images[label - 1]
                if value.is_zero():
                    break
            acc = acc + value * coeff
        return acc

    def after(self, other: "GrassmannMorphism") -> "GrassmannMorphism":
        """Composite self(other(.))."""
        if other.target_rank != self.source_rank:
            raise RankMismatchError("morphisms do not compose")
        return GrassmannMorphism(other.source_rank, self.target_rank,
                                 [self(img) for img in other.images])

    def __eq__(self, other):
        if not isinstance(other, GrassmannMorphism):
            return NotImplemented
        return (self.source_rank == other.source_rank
                and self.target_rank == other.target_rank
                and self.images == other.images)

    def __repr__(self):
        imgs = ", ".join(img.format() for img in self.images)
        return f"GrassmannMorphism({self.source_rank}->{self.target_rank}: [{imgs}])"
