"""Exact univariate polynomials and piecewise polynomial functions over Q.

Everything here is built on ``fractions.Fraction``; no float ever enters a
computation.  A :class:`PiecewisePolynomial` is a function that is polynomial
on each half-open interval ``[b_i, b_{i+1})`` between consecutive breakpoints,
with two tail polynomials outside the breakpoint range.  Representations are
canonicalized on construction (adjacent equal pieces merged, redundant
breakpoints dropped), so two constructions of the same function compare equal.

The half-open convention makes evaluation at breakpoints deterministic.  For
continuous functions the convention is invisible; discontinuous functions are
stored as their right-continuous representative.
"""

from __future__ import annotations

import bisect
from fractions import Fraction
from typing import Iterable, Iterator, Optional, Sequence, Union

QLike = Union[Fraction, int, str]


def as_fraction(value: QLike) -> Fraction:
    """Coerce an int, Fraction, or ``"num/den"`` string to an exact Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value)
    raise TypeError(f"cannot interpret {value!r} as an exact rational")


def fraction_str(value: Fraction) -> str:
    """Render a Fraction as ``"num/den"`` (or ``"num"`` for integers)."""
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


class Polynomial:
    """Univariate polynomial with exact rational coefficients.

    Coefficients are indexed by power; trailing zeros are stripped so the
    zero polynomial has an empty coefficient tuple.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[QLike] = ()):
        cs = [as_fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):  # pragma: no cover - immutability guard
        raise AttributeError("Polynomial is immutable")

    @classmethod
    def zero(cls) -> "Polynomial":
        return _ZERO_POLY

    @classmethod
    def constant(cls, c: QLike) -> "Polynomial":
        return cls([c])

    @classmethod
    def monomial(cls, power: int, coeff: QLike = 1) -> "Polynomial":
        return cls([0] * power + [coeff])

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def __call__(self, x: QLike) -> Fraction:
        x = as_fraction(x)
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __add__(self, other: "Polynomial") -> "Polynomial":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return Polynomial(out)

    def __neg__(self) -> "Polynomial":
        return Polynomial([-c for c in self.coeffs])

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self + (-other)

    def __mul__(self, other: Union["Polynomial", QLike]) -> "Polynomial":
        if isinstance(other, Polynomial):
            if self.is_zero or other.is_zero:
                return _ZERO_POLY
            out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
            for i, a in enumerate(self.coeffs):
                if a:
                    for j, b in enumerate(other.coeffs):
                        out[i + j] += a * b
            return Polynomial(out)
        c = as_fraction(other)
        return Polynomial([c * a for a in self.coeffs])

    __rmul__ = __mul__

    def derivative(self) -> "Polynomial":
        return Polynomial([i * c for i, c in enumerate(self.coeffs)][1:])

    def antiderivative(self) -> "Polynomial":
        """Antiderivative with zero constant term."""
        return Polynomial([Fraction(0)] + [c / (i + 1) for i, c in enumerate(self.coeffs)])

    def compose_affine(self, a: QLike, b: QLike) -> "Polynomial":
        """Return the polynomial x -> P(a*x + b)."""
        a, b = as_fraction(a), as_fraction(b)
        inner = Polynomial([b, a])
        acc = _ZERO_POLY
        for c in reversed(self.coeffs):
            acc = acc * inner + Polynomial.constant(c)
        return acc

    def __eq__(self, other) -> bool:
        return isinstance(other, Polynomial) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        if self.is_zero:
            return "Polynomial(0)"
        terms = " + ".join(f"{fraction_str(c)}*x^{i}" for i, c in enumerate(self.coeffs) if c)
        return f"Polynomial({terms})"


_ZERO_POLY = Polynomial()


# ---------------------------------------------------------------------------
# exact sign analysis (Sturm sequences)
# ---------------------------------------------------------------------------

def _poly_divmod(a: Sequence[Fraction], b: Sequence[Fraction]):
    a = list(a)
    q = [Fraction(0)] * max(0, len(a) - len(b) + 1)
    while len(a) >= len(b) and any(a):
        while a and a[-1] == 0:
            a.pop()
        if len(a) < len(b):
            break
        f = a[-1] / b[-1]
        k = len(a) - len(b)
        q[k] = f
        for i, c in enumerate(b):
            a[i + k] -= f * c
        a.pop()
    while a and a[-1] == 0:
        a.pop()
    return q, a


def _poly_gcd(a: Sequence[Fraction], b: Sequence[Fraction]):
    a, b = list(a), list(b)
    while b:
        _, r = _poly_divmod(a, b)
        a, b = b, r
    return a


def squarefree_part(p: Polynomial) -> Polynomial:
    """p divided by gcd(p, p'); same real roots, all simple."""
    if p.degree <= 1:
        return p
    g = _poly_gcd(list(p.coeffs), list(p.derivative().coeffs))
    if len(g) <= 1:
        return p
    q, r = _poly_divmod(list(p.coeffs), g)
    assert not r
    return Polynomial(q)


def _sturm_chain(p: Polynomial):
    chain = [list(p.coeffs), list(p.derivative().coeffs)]
    while chain[-1]:
        _, r = _poly_divmod(chain[-2], chain[-1])
        if not r:
            break
        chain.append([-c for c in r])
    return [c for c in chain if c]


def _sign_variations(chain, x: Fraction) -> int:
    signs = []
    for cs in chain:
        acc = Fraction(0)
        for c in reversed(cs):
            acc = acc * x + c
        if acc:
            signs.append(1 if acc > 0 else -1)
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def count_roots_open(p: Polynomial, a: QLike, b: QLike) -> int:
    """Number of distinct real roots of p in the open interval (a, b)."""
    a, b = as_fraction(a), as_fraction(b)
    if p.is_zero:
        raise ValueError("zero polynomial has no isolated roots")
    if a >= b:
        return 0
    sf = squarefree_part(p)
    if sf.degree < 1:
        return 0
    chain = _sturm_chain(sf)
    n = _sign_variations(chain, a) - _sign_variations(chain, b)
    if sf(b) == 0:
        n -= 1
    return n


def is_positive_on_open(p: Polynomial, a: QLike, b: QLike) -> bool:
    """Exact test: p(x) > 0 for all x in the open interval (a, b)."""
    a, b = as_fraction(a), as_fraction(b)
    if a >= b:
        return True
    if p.is_zero:
        return False
    if count_roots_open(p, a, b) > 0:
        return False
    return p((a + b) / 2) > 0


def _separate_roots(sf: Polynomial, a: Fraction, b: Fraction):
    """Cover [a, b] by intervals (u, v, k) with k <= 1 interior roots of sf,
    where every one-root interval has non-root endpoints.  Sign analysis of
    any polynomial with the same distinct roots is then pointwise: its sign
    is constant on each root-free stretch between the returned endpoints."""
    def classify(u, v):
        k = count_roots_open(sf, u, v)
        if k > 1:
            return None
        if k == 1 and (sf(u) == 0 or sf(v) == 0):
            return None
        return k

    def split(u, v):
        k = classify(u, v)
        if k is not None:
            return [(u, v, k)]
        mid = (u + v) / 2
        if sf(mid) == 0:
            eps = (v - u) / 8
            while (sf(mid - eps) == 0 or sf(mid + eps) == 0
                   or count_roots_open(sf, mid - eps, mid + eps) > 1):
                eps /= 2
            return (split(u, mid - eps) + [(mid - eps, mid + eps, 1)]
                    + split(mid + eps, v))
        return split(u, mid) + split(mid, v)

    return split(a, b)


def is_nonneg_on_closed(p: Polynomial, a: QLike, b: QLike) -> bool:
    """Exact test: p(x) >= 0 for all x in the closed interval [a, b]."""
    a, b = as_fraction(a), as_fraction(b)
    if a > b:
        return True
    if p.is_zero:
        return True
    if p(a) < 0 or p(b) < 0:
        return False
    sf = squarefree_part(p)
    if sf.degree < 1:
        return p((a + b) / 2) >= 0
    if a == b:
        return True
    for u, v, k in _separate_roots(sf, a, b):
        if p(u) < 0 or p(v) < 0:
            return False
        # a one-root interval has nonzero (hence positive) values at both
        # ends, so the sign cannot dip; root-free intervals need one sample
        if k == 0 and p((u + v) / 2) < 0:
            return False
    return True


# ---------------------------------------------------------------------------
# piecewise polynomials
# ---------------------------------------------------------------------------

class PiecewisePolynomial:
    """Piecewise polynomial on the real line with exact rational breakpoints.

    ``pieces[i]`` is the polynomial on ``[breakpoints[i], breakpoints[i+1])``;
    ``left_tail`` applies on ``(-inf, breakpoints[0])`` and ``right_tail`` on
    ``[breakpoints[-1], +inf)``.  With no breakpoints the function is a single
    global polynomial (stored in both tails).
    """

    __slots__ = ("breakpoints", "pieces", "left_tail", "right_tail")

    def __init__(
        self,
        breakpoints: Iterable[QLike] = (),
        pieces: Iterable[Polynomial] = (),
        left_tail: Polynomial = _ZERO_POLY,
        right_tail: Polynomial = _ZERO_POLY,
    ):
        bps = [as_fraction(b) for b in breakpoints]
        segs = [left_tail, *pieces, right_tail]
        if bps:
            # k breakpoints cut the line into k+1 regions
            if len(segs) != len(bps) + 1:
                raise ValueError("need exactly one piece per bounded interval")
        else:
            if len(segs) != 2:
                raise ValueError("pieces without breakpoints")
            if left_tail != right_tail:
                raise ValueError("tails must agree when there are no breakpoints")
        if any(x >= y for x, y in zip(bps, bps[1:])):
            raise ValueError("breakpoints must be strictly increasing")
        # canonical form: drop any breakpoint whose neighbours carry the same
        # polynomial
        out_b: list[Fraction] = []
        out_s: list[Polynomial] = [segs[0]]
        for b, seg in zip(bps, segs[1:]):
            if seg == out_s[-1]:
                continue
            out_b.append(b)
            out_s.append(seg)
        object.__setattr__(self, "breakpoints", tuple(out_b))
        object.__setattr__(self, "pieces", tuple(out_s[1:-1]) if len(out_s) > 2 else ())
        object.__setattr__(self, "left_tail", out_s[0])
        object.__setattr__(self, "right_tail", out_s[-1] if len(out_s) > 1 else out_s[0])

    def __setattr__(self, name, value):  # pragma: no cover - immutability guard
        raise AttributeError("PiecewisePolynomial is immutable")

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls) -> "PiecewisePolynomial":
        return cls()

    @classmethod
    def from_global(cls, poly: Polynomial) -> "PiecewisePolynomial":
        return cls((), (), poly, poly)

    @classmethod
    def on_interval(cls, lo: QLike, hi: QLike, poly: Polynomial) -> "PiecewisePolynomial":
        """poly on [lo, hi), zero elsewhere."""
        return cls([lo, hi], [poly])

    @classmethod
    def from_segments(cls, breakpoints: Sequence[QLike], pieces: Sequence[Polynomial],
                      left_tail: Polynomial = _ZERO_POLY,
                      right_tail: Polynomial = _ZERO_POLY) -> "PiecewisePolynomial":
        return cls(breakpoints, pieces, left_tail, right_tail)

    # -- structure ----------------------------------------------------------

    def _segments(self) -> list[Polynomial]:
        return [self.left_tail, *self.pieces, self.right_tail]

    def segment_at(self, x: QLike) -> Polynomial:
        x = as_fraction(x)
        i = bisect.bisect_right(self.breakpoints, x)
        return self._segments()[i]

    def iter_pieces(self) -> Iterator[tuple[Optional[Fraction], Optional[Fraction], Polynomial]]:
        """Yield (lo, hi, poly) over all segments; None marks an infinite end."""
        bounds: list[Optional[Fraction]] = [None, *self.breakpoints, None]
        for lo, hi, seg in zip(bounds, bounds[1:], self._segments()):
            yield lo, hi, seg

    def __call__(self, x: QLike) -> Fraction:
        return self.segment_at(x)(x)

    @property
    def is_continuous(self) -> bool:
        """True when the left and right limits agree at every breakpoint."""
        segs = self._segments()
        return all(segs[i](b) == segs[i + 1](b) for i, b in enumerate(self.breakpoints))

    @property
    def is_zero(self) -> bool:
        return not self.breakpoints and self.left_tail.is_zero

    # -- pointwise algebra ---------------------------------------------------

    def _combine(self, other: "PiecewisePolynomial", op) -> "PiecewisePolynomial":
        merged = sorted(set(self.breakpoints) | set(other.breakpoints))
        left = op(self.left_tail, other.left_tail)
        right = op(self.right_tail, other.right_tail)
        pieces = [op(self.segment_at(b), other.segment_at(b)) for b in merged[:-1]]
        return PiecewisePolynomial(merged, pieces, left, right)

    def __add__(self, other: "PiecewisePolynomial") -> "PiecewisePolynomial":
        return self._combine(other, lambda a, b: a + b)

    def __sub__(self, other: "PiecewisePolynomial") -> "PiecewisePolynomial":
        return self._combine(other, lambda a, b: a - b)

    def __mul__(self, other: "PiecewisePolynomial") -> "PiecewisePolynomial":
        return self._combine(other, lambda a, b: a * b)

    def __neg__(self) -> "PiecewisePolynomial":
        return self.scale(-1)

    def scale(self, c: QLike) -> "PiecewisePolynomial":
        c = as_fraction(c)
        return PiecewisePolynomial(self.breakpoints, [p * c for p in self.pieces],
                                   self.left_tail * c, self.right_tail * c)

    # -- calculus ------------------------------------------------------------

    def integrate(self, a: QLike, b: QLike) -> Fraction:
        """Exact integral over [a, b]; reversed bounds are rejected."""
        a, b = as_fraction(a), as_fraction(b)
        if a > b:
            raise ValueError("reversed integration bounds")
        total = Fraction(0)
        for lo, hi, seg in self.iter_pieces():
            left = a if lo is None else max(a, lo)
            right = b if hi is None else min(b, hi)
            if left < right and not seg.is_zero:
                anti = seg.antiderivative()
                total += anti(right) - anti(left)
        return total

    def support_sup(self) -> Optional[Fraction]:
        """Supremum of the support when finite; None for an unbounded tail.

        The zero function returns 0 (neutral value for functions on [0, oo)).
        """
        if not self.right_tail.is_zero:
            return None
        segs = self._segments()
        for i in range(len(self.pieces), 0, -1):
            if not segs[i].is_zero:
                return self.breakpoints[i]
        if not self.left_tail.is_zero:
            return self.breakpoints[0] if self.breakpoints else None
        return Fraction(0)

    # -- transforms ----------------------------------------------------------

    def compose_affine(self, a: QLike, b: QLike) -> "PiecewisePolynomial":
        """Return g with g(x) = f(a*x + b), a != 0.

        For a < 0 the half-open orientation flips; the result is the
        right-continuous representative of the transformed function (exact
        whenever f is continuous).
        """
        a, b = as_fraction(a), as_fraction(b)
        if a == 0:
            raise ValueError("affine substitution must be invertible")
        if not self.breakpoints:
            g = self.left_tail.compose_affine(a, b)
            return PiecewisePolynomial.from_global(g)
        new_bps = [(bp - b) / a for bp in self.breakpoints]
        segs = [seg.compose_affine(a, b) for seg in self._segments()]
        if a > 0:
            return PiecewisePolynomial(new_bps, segs[1:-1], segs[0], segs[-1])
        return PiecewisePolynomial(list(reversed(new_bps)), list(reversed(segs[1:-1])),
                                   segs[-1], segs[0])

    def reflect(self, c: QLike) -> "PiecewisePolynomial":
        """Return x -> f(c - x); f == f.reflect(c) is the symmetry test."""
        return self.compose_affine(-1, c)

    def truncate_before(self, c: QLike) -> "PiecewisePolynomial":
        """Zero the function on (-inf, c), keeping it unchanged on [c, inf)."""
        c = as_fraction(c)
        bps = [c] + [b for b in self.breakpoints if b > c]
        pieces = [self.segment_at(b) for b in bps[:-1]]
        right = self.segment_at(bps[-1])
        return PiecewisePolynomial(bps, pieces, _ZERO_POLY, right)

    # -- comparisons / hashing ------------------------------------------------

    def __eq__(self, other) -> bool:
        return (isinstance(other, PiecewisePolynomial)
                and self.breakpoints == other.breakpoints
                and self.pieces == other.pieces
                and self.left_tail == other.left_tail
                and self.right_tail == other.right_tail)

    def __hash__(self) -> int:
        return hash((self.breakpoints, self.pieces, self.left_tail, self.right_tail))

    def __repr__(self) -> str:
        parts = [f"[{fraction_str(lo) if lo is not None else '-inf'}, "
                 f"{fraction_str(hi) if hi is not None else 'inf'}): {seg!r}"
                 for lo, hi, seg in self.iter_pieces() if not seg.is_zero]
        return "PiecewisePolynomial(" + ("0" if not parts else "; ".join(parts)) + ")"

    # -- exact sign checks -----------------------------------------------------

    def is_nonnegative(self) -> bool:
        """Exact check that f >= 0 everywhere (tails included)."""
        for lo, hi, seg in self.iter_pieces():
            if seg.is_zero:
                continue
            if seg.degree == 0:
                if seg.coeffs[0] < 0:
                    return False
                continue
            # unbounded ends: widen to a window past every real root, where
            # the sign is the limit sign
            bound = _cauchy_root_bound(seg)
            left = lo if lo is not None else min(hi if hi is not None else 0, -bound) - 1
            right = hi if hi is not None else max(lo if lo is not None else 0, bound) + 1
            if not is_nonneg_on_closed(seg, left, right):
                return False
        return True

    # -- serialization ----------------------------------------------------------

    def to_dict(self) -> dict:
        return {
            "breakpoints": [fraction_str(b) for b in self.breakpoints],
            "pieces": [[fraction_str(c) for c in p.coeffs] for p in self.pieces],
            "left_tail": [fraction_str(c) for c in self.left_tail.coeffs],
            "right_tail": [fraction_str(c) for c in self.right_tail.coeffs],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "PiecewisePolynomial":
        return cls(
            [as_fraction(b) for b in data["breakpoints"]],
            [Polynomial(p) for p in data["pieces"]],
            Polynomial(data["left_tail"]),
            Polynomial(data["right_tail"]),
        )


def _cauchy_root_bound(p: Polynomial) -> Fraction:
    """All real roots of p lie in [-M, M]."""
    lead = abs(p.coeffs[-1])
    return 1 + max(abs(c) for c in p.coeffs) / lead


def tent_function() -> PiecewisePolynomial:
    """x on [0,1], 2-x on [1,2], zero elsewhere."""
    return PiecewisePolynomial([0, 1, 2], [Polynomial([0, 1]), Polynomial([2, -1])])
