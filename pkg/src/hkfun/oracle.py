"""Characteristic-p ground truth: graded colengths of Frobenius-power
quotients, computed as corank of an explicit multiplication matrix over F_p.

Polynomials are dicts mapping exponent tuples to coefficients mod p.  For a
degree-m piece the matrix columns are all monomial multiples (of the right
degree) of the hypersurface and of the q-th powers of the generators,
expressed in the monomial basis; the graded length is dim - rank.

Two rank paths exist.  When every generator is a monomial, the quotient by
the generator columns is a box of standard monomials and the hypersurface
columns are eliminated structurally: a column whose lex-largest entry stays
inside the box is already a pivot, and the few columns whose lead falls
outside reduce by walking down the lattice (each step strictly decreases the
lex-largest entry, so the walk terminates).  Only the small residual system
ever reaches dense elimination.  Everything else goes through the dense
path, which is capped in size.
"""

from __future__ import annotations

import heapq
import re
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Iterator, Mapping, Optional, Sequence

import numpy as np

Poly = Mapping[tuple[int, ...], int]

_DENSE_CELL_LIMIT = 6_000_000


class OracleError(RuntimeError):
    pass


class OracleScaleError(OracleError):
    """The dense rank path would exceed its size cap."""


# ---------------------------------------------------------------------------
# polynomial plumbing
# ---------------------------------------------------------------------------

def poly_degree(poly: Poly) -> int:
    degs = {sum(e) for e in poly}
    if len(degs) != 1:
        raise ValueError("polynomials must be homogeneous")
    return degs.pop()


def poly_num_vars(poly: Poly) -> int:
    lens = {len(e) for e in poly}
    if len(lens) != 1:
        raise ValueError("mixed exponent lengths")
    return lens.pop()


def normalize_poly(poly: Poly, p: int) -> dict[tuple[int, ...], int]:
    out = {}
    for e, c in poly.items():
        c %= p
        if c:
            out[tuple(int(x) for x in e)] = c
    if not out:
        raise ValueError("polynomial vanishes mod p")
    return out


def frobenius_power(poly: Poly, q: int, p: int) -> dict[tuple[int, ...], int]:
    """q-th power of a polynomial in characteristic p, q a power of p.

    Freshman's dream: exponents multiply by q and coefficients are fixed by
    c -> c^q = c on the prime field.
    """
    return {tuple(x * q for x in e): c for e, c in normalize_poly(poly, p).items()}


def variable_powers(num_vars: int, n: int) -> list[dict[tuple[int, ...], int]]:
    """Generators x_i^n of the n-th power-coordinate ideal."""
    gens = []
    for i in range(num_vars):
        e = [0] * num_vars
        e[i] = n
        gens.append({tuple(e): 1})
    return gens


def trinomial_poly(curve) -> dict[tuple[int, int, int], int]:
    """Unit-coefficient polynomial of a trinomial curve object."""
    return {e: 1 for e in curve.monomials()}


_VAR_NAMES = "xyzw"


def parse_polynomial(text: str, num_vars: int) -> dict[tuple[int, ...], int]:
    """Parse expressions like ``x^2*y - 3*z^3`` into an exponent-dict."""
    if num_vars > len(_VAR_NAMES):
        raise ValueError("at most four variables are supported")
    cleaned = text.replace(" ", "").replace("**", "^")
    if not cleaned:
        raise ValueError("empty polynomial")
    terms = re.findall(r"[+-]?[^+-]+", cleaned)
    out: dict[tuple[int, ...], int] = {}
    for term in terms:
        sign = -1 if term.startswith("-") else 1
        body = term.lstrip("+-")
        coeff = 1
        exps = [0] * num_vars
        for factor in body.split("*"):
            if not factor:
                raise ValueError(f"malformed term {term!r}")
            if factor.isdigit():
                coeff *= int(factor)
                continue
            m = re.fullmatch(r"([a-z])(?:\^(\d+))?", factor)
            if not m or m.group(1) not in _VAR_NAMES[:num_vars]:
                raise ValueError(f"malformed factor {factor!r} in {text!r}")
            exps[_VAR_NAMES.index(m.group(1))] += int(m.group(2) or 1)
        key = tuple(exps)
        out[key] = out.get(key, 0) + sign * coeff
    return {e: c for e, c in out.items() if c}


def monomials_of_degree(num_vars: int, m: int) -> Iterator[tuple[int, ...]]:
    if m < 0:
        return
    if num_vars == 1:
        yield (m,)
        return
    for e in range(m + 1):
        for rest in monomials_of_degree(num_vars - 1, m - e):
            yield (e,) + rest


# ---------------------------------------------------------------------------
# dense rank over F_p
# ---------------------------------------------------------------------------

def dense_rank_modp(matrix: np.ndarray, p: int) -> int:
    """Rank by straightforward row elimination, vectorized per pivot."""
    a = np.array(matrix, dtype=np.int64) % p
    rows, cols = a.shape
    rank = 0
    for c in range(cols):
        if rank == rows:
            break
        pivots = np.nonzero(a[rank:, c])[0]
        if pivots.size == 0:
            continue
        piv = rank + int(pivots[0])
        if piv != rank:
            a[[rank, piv]] = a[[piv, rank]]
        inv = pow(int(a[rank, c]), -1, p)
        a[rank] = (a[rank] * inv) % p
        below = np.nonzero(a[rank + 1:, c])[0]
        if below.size:
            idx = below + rank + 1
            a[idx] = (a[idx] - np.outer(a[idx, c], a[rank])) % p
        rank += 1
    return rank


# ---------------------------------------------------------------------------
# graded piece lengths
# ---------------------------------------------------------------------------

def _monomial_ideal_test(gens_q: Sequence[Poly]):
    """Membership test for the monomial ideal spanned by single-term gens."""
    exps = [next(iter(g)) for g in gens_q]
    nv = len(exps[0])
    pure = [None] * nv
    extras = []
    for e in exps:
        support = [i for i, x in enumerate(e) if x]
        if len(support) == 1:
            i = support[0]
            if pure[i] is None or e[i] < pure[i]:
                pure[i] = e[i]
        else:
            extras.append(e)
    caps = pure

    def in_ideal(e: tuple[int, ...]) -> bool:
        for i, cap in enumerate(caps):
            if cap is not None and e[i] >= cap:
                return True
        for g in extras:
            if all(e[i] >= g[i] for i in range(nv)):
                return True
        return False

    return in_ideal


def _length_monomial_box(p: int, hyp: Optional[Poly], gens_q: Sequence[Poly],
                         num_vars: int, m: int) -> int:
    in_j = _monomial_ideal_test(gens_q)
    nrows = sum(1 for e in monomials_of_degree(num_vars, m) if not in_j(e))
    if hyp is None or nrows == 0:
        return nrows
    dh = poly_degree(hyp)
    if m < dh:
        return nrows
    terms = sorted(hyp.items(), key=lambda t: t[0], reverse=True)
    (e_max, c_max), tail = terms[0], terms[1:]
    inv_cmax = pow(c_max, -1, p)

    n_cols = 0
    n_residual = 0
    residual_vecs: list[dict[tuple[int, ...], int]] = []
    for mu in monomials_of_degree(num_vars, m - dh):
        if in_j(mu):
            continue
        n_cols += 1
        lead = tuple(mu[i] + e_max[i] for i in range(num_vars))
        if not in_j(lead):
            continue  # structural pivot: lead is unique to this column
        n_residual += 1
        vec: dict[tuple[int, ...], int] = {}
        heap: list[tuple[int, ...]] = []
        for e, c in hyp.items():
            pos = tuple(mu[i] + e[i] for i in range(num_vars))
            if not in_j(pos):
                vec[pos] = c % p
                heapq.heappush(heap, tuple(-x for x in pos))
        settled: dict[tuple[int, ...], int] = {}
        while heap:
            r = tuple(-x for x in heapq.heappop(heap))
            c = vec.get(r, 0)
            if not c:
                continue  # stale heap entry
            delta = tuple(r[i] - e_max[i] for i in range(num_vars))
            if min(delta) >= 0 and not in_j(delta):
                # eliminate against the structural pivot with lead r; the
                # replacement entries are strictly lex-smaller than r
                del vec[r]
                f = (c * inv_cmax) % p
                for e, ce in tail:
                    pos = tuple(delta[i] + e[i] for i in range(num_vars))
                    if in_j(pos):
                        continue
                    val = (vec.get(pos, 0) - f * ce) % p
                    if val:
                        if pos not in vec:
                            heapq.heappush(heap, tuple(-x for x in pos))
                        vec[pos] = val
                    elif pos in vec:
                        del vec[pos]
            else:
                settled[r] = c
                del vec[r]
        if settled:
            residual_vecs.append(settled)

    n_structural = n_cols - n_residual
    if not residual_vecs:
        return nrows - n_structural
    rows = sorted(set().union(*residual_vecs))
    index = {r: i for i, r in enumerate(rows)}
    a = np.zeros((len(rows), len(residual_vecs)), dtype=np.int64)
    for j, vec in enumerate(residual_vecs):
        for r, c in vec.items():
            a[index[r], j] = c
    return nrows - n_structural - dense_rank_modp(a, p)


def _length_dense(p: int, hyp: Optional[Poly], gens_q: Sequence[Poly],
                  num_vars: int, m: int) -> int:
    rows = list(monomials_of_degree(num_vars, m))
    index = {e: i for i, e in enumerate(rows)}
    columns = []
    polys = ([hyp] if hyp is not None else []) + list(gens_q)
    for poly in polys:
        dg = poly_degree(poly)
        if m < dg:
            continue
        for mu in monomials_of_degree(num_vars, m - dg):
            col = np.zeros(len(rows), dtype=np.int64)
            for e, c in poly.items():
                pos = tuple(mu[i] + e[i] for i in range(num_vars))
                col[index[pos]] = (col[index[pos]] + c) % p
            columns.append(col)
    if not columns:
        return len(rows)
    if len(rows) * len(columns) > _DENSE_CELL_LIMIT:
        raise OracleScaleError(
            f"dense rank of a {len(rows)} x {len(columns)} matrix exceeds the "
            "size cap; use monomial generators for the structured path")
    return len(rows) - dense_rank_modp(np.array(columns).T, p)


def graded_piece_length_raw(p: int, hypersurface: Optional[Poly],
                            generators: Sequence[Poly], q: int, m: int,
                            num_vars: Optional[int] = None) -> int:
    """Length of the degree-m piece of S/(h, g_1^q, ..., g_t^q)."""
    if num_vars is None:
        sample = hypersurface if hypersurface is not None else generators[0]
        num_vars = poly_num_vars(sample)
    hyp = normalize_poly(hypersurface, p) if hypersurface is not None else None
    gens_q = [frobenius_power(g, q, p) for g in generators]
    if all(len(g) == 1 for g in gens_q):
        return _length_monomial_box(p, hyp, gens_q, num_vars, m)
    return _length_dense(p, hyp, gens_q, num_vars, m)


@dataclass(frozen=True)
class GradedQuotientQuery:
    """A single graded colength question."""

    p: int
    num_vars: int
    hypersurface: Optional[Poly]
    generators: tuple[Poly, ...]
    frobenius_power: int
    degree: int

    def __post_init__(self):
        if self.num_vars not in (2, 3, 4):
            raise ValueError("2, 3 or 4 variables supported")
        q = self.frobenius_power
        while q % self.p == 0:
            q //= self.p
        if q != 1:
            raise ValueError("frobenius_power must be a power of p")
        if any(poly_degree(g) < 1 for g in self.generators):
            raise ValueError("generator degrees must be >= 1")
        if self.degree < 0:
            raise ValueError("degree must be nonnegative")


def graded_piece_length(query: GradedQuotientQuery) -> int:
    return graded_piece_length_raw(query.p, query.hypersurface,
                                   list(query.generators), query.frobenius_power,
                                   query.degree, query.num_vars)


# ---------------------------------------------------------------------------
# profiles and estimates
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ColengthProfile:
    """All graded lengths of R/I^[q] down to the zero tail."""

    p: int
    q: int
    lengths: dict[int, int] = field(compare=False)
    top_nonzero: int

    def total(self) -> int:
        return sum(self.lengths.values())


def _sweep_bound(hypersurface: Optional[Poly], generators: Sequence[Poly],
                 q: int, num_vars: int) -> int:
    gen_total = sum(poly_degree(g) for g in generators)
    base = poly_degree(hypersurface) if hypersurface is not None else num_vars
    return q * gen_total + base + 1


def colength_profile(p: int, hypersurface: Optional[Poly],
                     generators: Sequence[Poly], q: int,
                     threads: Optional[int] = None) -> ColengthProfile:
    """Sweep degrees upward until the first zero length.

    In a standard graded quotient a zero piece forces all higher pieces to be
    zero, so the sweep may stop at the first zero; if the safety bound is
    passed without one the ideal did not have finite colength.
    """
    sample = hypersurface if hypersurface is not None else generators[0]
    num_vars = poly_num_vars(sample)
    bound = _sweep_bound(hypersurface, generators, q, num_vars)
    lengths: dict[int, int] = {}

    def length_at(m: int) -> int:
        return graded_piece_length_raw(p, hypersurface, generators, q, m, num_vars)

    m = 0
    workers = max(1, threads or 1)
    while m <= bound:
        block = list(range(m, min(m + workers, bound + 1)))
        if workers == 1:
            values = [length_at(k) for k in block]
        else:
            with ThreadPoolExecutor(max_workers=workers) as pool:
                values = list(pool.map(length_at, block))
        for k, v in zip(block, values):
            if v == 0:
                return ColengthProfile(p=p, q=q, lengths=lengths, top_nonzero=k - 1)
            lengths[k] = v
        m = block[-1] + 1
    raise OracleError("no zero tail before the sweep bound; the ideal does "
                      "not have finite colength")


def top_nonzero_degree(p: int, hypersurface: Optional[Poly],
                       generators: Sequence[Poly], q: int) -> int:
    """Largest degree with a nonzero piece, located by bisection.

    Zero pieces are upward-closed in a standard graded quotient, which makes
    bisection valid and avoids computing the full profile at large q.
    """
    sample = hypersurface if hypersurface is not None else generators[0]
    num_vars = poly_num_vars(sample)
    hi = _sweep_bound(hypersurface, generators, q, num_vars)

    def is_zero(m: int) -> bool:
        return graded_piece_length_raw(p, hypersurface, generators, q, m, num_vars) == 0

    if not is_zero(hi):
        raise OracleError("no zero tail at the sweep bound; the ideal does "
                          "not have finite colength")
    lo = 0  # degree zero is never zero: the quotient contains the constants
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if is_zero(mid):
            hi = mid
        else:
            lo = mid
    return lo


def _pair_dimension(hypersurface: Optional[Poly], generators: Sequence[Poly]) -> int:
    sample = hypersurface if hypersurface is not None else generators[0]
    return poly_num_vars(sample) - (1 if hypersurface is not None else 0)


def fn_sample(p: int, hypersurface: Optional[Poly], generators: Sequence[Poly],
              q: int, x: Fraction) -> Fraction:
    """Normalized graded length at degree floor(x*q) for a two-dimensional
    pair: the finite-q sample of the density function."""
    if _pair_dimension(hypersurface, generators) != 2:
        raise ValueError("density samples are defined for two-dimensional pairs")
    m = int(Fraction(x) * q)  # floor for nonnegative x
    value = graded_piece_length_raw(p, hypersurface, generators, q, m)
    return Fraction(value, q)


def ehk_estimate(p: int, hypersurface: Optional[Poly], generators: Sequence[Poly],
                 q: int, threads: Optional[int] = None) -> Fraction:
    """sum_m length / q^dim: the finite-q multiplicity estimate."""
    dim = _pair_dimension(hypersurface, generators)
    profile = colength_profile(p, hypersurface, generators, q, threads=threads)
    return Fraction(profile.total(), q ** dim)


def fthreshold_estimate(p: int, hypersurface: Poly, n: int, q: int) -> Fraction:
    """top_nonzero/q for the pair (curve, (x^n, y^n, z^n)): the finite-q
    F-threshold estimate."""
    num_vars = poly_num_vars(hypersurface)
    gens = variable_powers(num_vars, n)
    return Fraction(top_nonzero_degree(p, hypersurface, gens, q), q)


def monomial_alpha(num_vars: int, generators: Sequence[Poly]) -> int:
    """max{s : some degree-s monomial lies outside the ideal} + num_vars, for
    a finite-colength monomial ideal in a polynomial ring of dimension >= 2."""
    if num_vars < 2:
        raise ValueError("the support formula needs dimension >= 2")
    exps = []
    for g in generators:
        if len(g) != 1:
            raise ValueError("generators must be monomials")
        exps.append(next(iter(g)))
    caps = [None] * num_vars
    for e in exps:
        support = [i for i, x in enumerate(e) if x]
        if len(support) == 1 and (caps[support[0]] is None or e[support[0]] < caps[support[0]]):
            caps[support[0]] = e[support[0]]
    if any(c is None for c in caps):
        raise ValueError("not finite colength: some variable has no pure power "
                         "among the generators")

    def divides(a, b):
        return all(x <= y for x, y in zip(a, b))

    best = 0
    for e in product(*(range(c) for c in caps)):
        if not any(divides(g, e) for g in exps):
            best = max(best, sum(e))
    return best + num_vars


def scaling_check(p: int, hypersurface: Optional[Poly], generators: Sequence[Poly],
                  q0: int, q: int, num_points: int = 10) -> bool:
    """Exact Frobenius-bracket consistency: the colengths of (I^[q0])^[q] and
    I^[q0*q] agree degree by degree on a sample grid."""
    bracketed = [frobenius_power(g, q0, p) for g in generators]
    sample = hypersurface if hypersurface is not None else generators[0]
    num_vars = poly_num_vars(sample)
    top = _sweep_bound(hypersurface, generators, q0 * q, num_vars)
    for i in range(num_points):
        m = (top * i) // num_points
        lhs = graded_piece_length_raw(p, hypersurface, bracketed, q, m, num_vars)
        rhs = graded_piece_length_raw(p, hypersurface, generators, q0 * q, m, num_vars)
        if lhs != rhs:
            return False
    return True
