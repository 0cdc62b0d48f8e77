"""Plane trinomial curves: classification, residue invariants, and exact
F-thresholds of the ideals (x^n, y^n, z^n).

A trinomial is *irregular* when its projective curve carries a point of
multiplicity r >= d/2 (such a point can only sit at one of the three
coordinate points, where the threshold is a closed form in r, d, n).  The
regular case reduces to a finite residue computation: the threshold depends
on the prime p only through the class of p modulo 2*lambda_h, and each class
is decided by a taxicab-distance search over a bounded set of integer
corners.

Residue-search normalization
----------------------------
The corner scan below works at denominator ``lambda_h = lambda / a`` (``a``
is the gcd of the four curve invariants) and produces a raw distance
``T_raw``.  The reported distance is renormalized to denominator ``lambda``:

    T = 1 - (1 - T_raw) / a,

which makes ``lambda * (1 - T) = lambda_h * (1 - T_raw)`` an integer, the
quantity the threshold formula consumes.  With this normalization the
closed-form thresholds agree with brute-force characteristic-p computations
on every curve in the test suite; the scan without the renormalization does
not.  ``lambda * (1 - T)`` is asserted integral at use sites as a guard
against drift.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import gcd
from typing import Optional, Union


class TrinomialShapeError(ValueError):
    """Exponent data does not match either supported trinomial shape."""


class TrinomialHypothesisError(ValueError):
    """The curve is outside the supported regular-trinomial class (a derived
    invariant failed to be positive)."""


@dataclass(frozen=True)
class TypeI:
    """h = x^a1 y^a2 + y^b1 z^b2 + z^c1 x^c2 with a1+a2 = b1+b2 = c1+c2 = d."""

    a1: int
    a2: int
    b1: int
    b2: int
    c1: int
    c2: int

    def __post_init__(self):
        exps = (self.a1, self.a2, self.b1, self.b2, self.c1, self.c2)
        if any(e < 0 for e in exps):
            raise TrinomialShapeError("exponents must be nonnegative")
        d = self.a1 + self.a2
        if not (d == self.b1 + self.b2 == self.c1 + self.c2):
            raise TrinomialShapeError("the three monomials must share one degree")
        if d < 3:
            raise TrinomialShapeError("degree must be >= 3")
        if len(self.monomials()) < 3:
            raise TrinomialShapeError("the three monomials must be distinct")

    @property
    def degree(self) -> int:
        return self.a1 + self.a2

    def monomials(self) -> tuple[tuple[int, int, int], ...]:
        mons = ((self.a1, self.a2, 0), (0, self.b1, self.b2), (self.c2, 0, self.c1))
        return tuple(dict.fromkeys(mons))


@dataclass(frozen=True)
class TypeII:
    """h = x^d + x^a1 y^a2 z^a3 + y^b z^c with a1+a2+a3 = d = b+c."""

    d: int
    a1: int
    a2: int
    a3: int
    b: int
    c: int

    def __post_init__(self):
        exps = (self.d, self.a1, self.a2, self.a3, self.b, self.c)
        if any(e < 0 for e in exps):
            raise TrinomialShapeError("exponents must be nonnegative")
        if self.a1 + self.a2 + self.a3 != self.d or self.b + self.c != self.d:
            raise TrinomialShapeError("the three monomials must share one degree")
        if self.d < 3:
            raise TrinomialShapeError("degree must be >= 3")
        if len(self.monomials()) < 3:
            raise TrinomialShapeError("the three monomials must be distinct")

    @property
    def degree(self) -> int:
        return self.d

    def monomials(self) -> tuple[tuple[int, int, int], ...]:
        mons = ((self.d, 0, 0), (self.a1, self.a2, self.a3), (0, self.b, self.c))
        return tuple(dict.fromkeys(mons))


TrinomialCurve = Union[TypeI, TypeII]


def fermat(d: int) -> TypeII:
    """x^d + y^d + z^d."""
    return TypeII(d=d, a1=0, a2=d, a3=0, b=0, c=d)


def cyclic(d: int) -> TypeI:
    """x^(d-1) y + y^(d-1) z + z^(d-1) x."""
    return TypeI(a1=d - 1, a2=1, b1=d - 1, b2=1, c1=d - 1, c2=1)


def coordinate_multiplicities(curve: TrinomialCurve) -> tuple[int, int, int]:
    """Multiplicity of the curve at [1:0:0], [0:1:0], [0:0:1].

    Each is the minimal total degree after dehomogenizing at the point; a
    point off the curve (constant term present) has multiplicity 0.  Unit
    coefficients cannot cancel, so merging coincident monomials is safe.
    """
    mons = curve.monomials()
    out = []
    for i in range(3):
        degs = {sum(e) - e[i] for e in mons}
        out.append(min(degs))
    return tuple(out)


@dataclass(frozen=True)
class TrinomialInvariants:
    """The four positive integers attached to a regular trinomial, with their
    derived quantities."""

    alpha: int
    beta: int
    nu: int
    lam: int

    def __post_init__(self):
        if min(self.alpha, self.beta, self.nu, self.lam) <= 0:
            raise TrinomialHypothesisError(
                "invariants must all be positive; this curve is outside the "
                "supported regular-trinomial class")

    @property
    def common_factor(self) -> int:
        return gcd(gcd(self.alpha, self.beta), gcd(self.nu, self.lam))

    @property
    def lambda_h(self) -> int:
        return self.lam // self.common_factor

    @property
    def t_h(self) -> tuple[Fraction, Fraction, Fraction]:
        return (Fraction(self.alpha, self.lam), Fraction(self.beta, self.lam),
                Fraction(self.nu, self.lam))


@dataclass(frozen=True)
class Regular:
    invariants: TrinomialInvariants


@dataclass(frozen=True)
class Irregular:
    multiplicity: int


def classify(curve: TrinomialCurve) -> Union[Regular, Irregular]:
    """Classify a trinomial: irregular when some coordinate point has
    multiplicity r >= d/2 (the largest such r is reported), regular otherwise
    (with the four derived invariants).

    Irreducibility of the curve is the caller's contract and is not checked.
    """
    d = curve.degree
    r = max(coordinate_multiplicities(curve))
    if 2 * r >= d:
        return Irregular(multiplicity=r)
    if isinstance(curve, TypeI):
        inv = TrinomialInvariants(
            alpha=curve.a1 + curve.b1 - d,
            beta=curve.a1 + curve.c1 - d,
            nu=curve.b1 + curve.c1 - d,
            lam=curve.a1 * curve.b1 + curve.a2 * curve.c2 - curve.b1 * curve.c2,
        )
    else:
        inv = TrinomialInvariants(
            alpha=curve.a2,
            beta=curve.c,
            nu=curve.a2 + curve.c - d,
            lam=curve.a2 * curve.c - curve.a3 * curve.b,
        )
    return Regular(invariants=inv)


def taxicab_distance(v: tuple, u: tuple) -> Fraction:
    """Exact l1 distance between a rational triple and an integer triple."""
    return sum((abs(Fraction(a) - b) for a, b in zip(v, u)), Fraction(0))


@dataclass(frozen=True)
class TaxicabResult:
    """First sub-1 corner distance T and the scan step D where it occurred.

    D is None when no step admits a distance below 1; then T = 1.
    """

    T: Fraction
    D: Optional[int]


def multiplicative_order(l: int, modulus: int) -> int:
    l %= modulus
    if gcd(l, modulus) != 1:
        raise ValueError("element is not a unit")
    order, x = 1, l
    while x != 1:
        x = (x * l) % modulus
        order += 1
    return order


def _min_odd_corner_distance(v: tuple[Fraction, ...]) -> Optional[Fraction]:
    """Minimum taxicab distance below 1 from v to an integer point with odd
    coordinate sum, or None.

    Any distance below 1 forces each coordinate of the witness to be the
    floor or ceiling of the corresponding entry, so scanning the corner set
    is exhaustive.
    """
    candidate_sets = []
    for x in v:
        floor = x.numerator // x.denominator
        candidate_sets.append((floor,) if floor == x else (floor, floor + 1))
    best: Optional[Fraction] = None
    for u in product(*candidate_sets):
        if sum(u) % 2 == 1:
            dist = taxicab_distance(v, u)
            if dist < 1 and (best is None or dist < best):
                best = dist
    return best


def taxicab_search(inv: TrinomialInvariants, n: int, l: int) -> TaxicabResult:
    """Scan s = 0, 1, ..., ord(l) - 1 for the first step where some odd-sum
    corner comes within taxicab distance 1 of l^s * t_h * n.

    The vector is reduced modulo 2 componentwise (the corner distance only
    depends on that residue), which keeps the arithmetic small for elements
    of large order.  The returned T carries the lambda-denominator
    normalization described in the module docstring.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    lam_h = inv.lambda_h
    modulus = 2 * lam_h
    if gcd(l, modulus) != 1:
        raise ValueError(f"l must be coprime to {modulus}")
    a = inv.common_factor
    components = [(t.numerator, t.denominator) for t in inv.t_h]
    for s in range(multiplicative_order(l, modulus)):
        ls = pow(l, s, modulus)
        v = tuple(Fraction((ls * num * n) % (2 * den), den) for num, den in components)
        best = _min_odd_corner_distance(v)
        if best is not None:
            return TaxicabResult(T=1 - (1 - best) / a, D=s)
    return TaxicabResult(T=Fraction(1), D=None)


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    f = 3
    while f * f <= p:
        if p % f == 0:
            return False
        f += 2
    return True


def residue_representative(p: int, lambda_h: int) -> int:
    """The representative in {1, ..., lambda_h} of the class {+-p} modulo
    2*lambda_h."""
    r = p % (2 * lambda_h)
    return min(r, 2 * lambda_h - r)


def f_threshold(curve: TrinomialCurve, n: int, p: int) -> Fraction:
    """Exact F-threshold of (x,y,z) with respect to (x^n, y^n, z^n) on the
    trinomial curve, in characteristic p.

    Irregular curve of multiplicity r:  (n+2)/2 + (2r-d)*n/(2d).
    Regular curve:  (n+2)/2 + lambda*(1-T)/(2*p^D*d) from the residue search
    at the class of p modulo 2*lambda_h.

    The closed forms are backed by theory for p >= max(n, d^2) in the regular
    case; smaller primes are accepted and evaluate the same formula.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if not _is_prime(p):
        raise ValueError(f"{p} is not prime")
    d = curve.degree
    base = Fraction(n + 2, 2)
    kind = classify(curve)
    if isinstance(kind, Irregular):
        r = kind.multiplicity
        return base + Fraction((2 * r - d) * n, 2 * d)
    inv = kind.invariants
    l = residue_representative(p, inv.lambda_h)
    if gcd(l, 2 * inv.lambda_h) != 1:
        raise ValueError(f"prime {p} divides 2*lambda_h = {2 * inv.lambda_h}")
    result = taxicab_search(inv, n, l)
    if result.D is None:
        return base
    weight = inv.lam * (1 - result.T)
    if weight.denominator != 1:
        raise ArithmeticError(
            f"lambda*(1-T) = {weight} is not an integer; the residue search "
            "normalization drifted")
    return base + Fraction(weight.numerator, 2 * p ** result.D * d)


@dataclass(frozen=True)
class ResidueRow:
    """One residue class of the threshold table."""

    representative: int
    T: Fraction
    D: Optional[int]
    base: Fraction
    weight: int  # lambda * (1 - T)
    poldeg: int

    def threshold_at(self, p: int) -> Fraction:
        if self.D is None:
            return self.base
        return self.base + Fraction(self.weight, 2 * p ** self.D * self.poldeg)

    @property
    def formula(self) -> str:
        if self.D is None or self.weight == 0:
            return str(self.base)
        return f"{self.base} + {self.weight}/(2*{self.poldeg}*p^{self.D})"


def residue_table(curve: TrinomialCurve, n: int) -> list[ResidueRow]:
    """One row per residue class of (Z/2*lambda_h)*/{+-1}, ordered by
    representative.  Rejects irregular curves (their threshold does not
    depend on p)."""
    kind = classify(curve)
    if isinstance(kind, Irregular):
        raise ValueError("irregular curves have a single p-independent threshold")
    inv = kind.invariants
    d = curve.degree
    base = Fraction(n + 2, 2)
    rows = []
    for l in range(1, inv.lambda_h + 1):
        if gcd(l, 2 * inv.lambda_h) != 1:
            continue
        res = taxicab_search(inv, n, l)
        weight = inv.lam * (1 - res.T)
        if weight.denominator != 1:
            raise ArithmeticError(f"lambda*(1-T) = {weight} is not an integer")
        rows.append(ResidueRow(representative=l, T=res.T, D=res.D, base=base,
                               weight=weight.numerator, poldeg=d))
    return rows
