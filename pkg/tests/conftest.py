from __future__ import annotations

import random
from fractions import Fraction

import pytest

from hkfun.bundle import HNData, Polarization, SyzygySpec


def random_parameter_tuple(rng: random.Random, max_dim: int = 5, max_deg: int = 4):
    d = rng.randint(1, max_dim)
    return tuple(rng.randint(1, max_deg) for _ in range(d))


def random_syzygy_spec(rng: random.Random) -> SyzygySpec:
    """Slope data of a syzygy bundle of the irrelevant maximal ideal: mu
    degree-1 generators, total degree -d, all slopes <= 0."""
    mu = rng.randint(3, 6)
    d = rng.randint(1, 3)
    parts = rng.randint(1, min(3, mu - 1))
    ranks = [1] * parts
    for _ in range(mu - 1 - parts):
        ranks[rng.randrange(parts)] += 1
    # strictly increasing positive weights, scaled so the degree comes out
    weights = sorted(rng.sample(range(1, 40), parts))
    if parts > 1 and rng.random() < 0.3:
        weights[0] = 0  # allow a trivial summand at slope zero
    total = sum(w * r for w, r in zip(weights, ranks))
    scale = Fraction(d, total)
    slopes = tuple(-w * scale for w in weights)
    return SyzygySpec(mu=mu, gen_degree=1, pol=Polarization(degree=d),
                      hn_v=HNData(slopes, tuple(ranks)))


def brute_graded_length(p, hypersurface, generators, q, m, num_vars):
    """Definition-level graded length: dense elimination over F_p on the full
    multiplication matrix, written independently of the library paths."""
    def monomials(nv, deg):
        if nv == 1:
            return [(deg,)]
        out = []
        for e in range(deg + 1):
            out.extend((e,) + r for r in monomials(nv - 1, deg - e))
        return out

    rows = monomials(num_vars, m)
    index = {e: i for i, e in enumerate(rows)}
    polys = []
    if hypersurface is not None:
        polys.append(dict(hypersurface))
    for g in generators:
        polys.append({tuple(x * q for x in e): pow(c, q, p) for e, c in g.items()})
    matrix = []
    for poly in polys:
        dg = sum(next(iter(poly)))
        if m < dg:
            continue
        for mu in monomials(num_vars, m - dg):
            col = [0] * len(rows)
            for e, c in poly.items():
                pos = tuple(mu[i] + e[i] for i in range(num_vars))
                col[index[pos]] = (col[index[pos]] + c) % p
            matrix.append(col)
    if not matrix:
        return len(rows)
    # plain gaussian elimination on the column list
    rank = 0
    cols = [list(c) for c in matrix]
    pivot_rows = []
    for col in cols:
        for r_idx, lead in pivot_rows:
            f = col[r_idx]
            if f:
                inv = pow(lead[r_idx], -1, p)
                factor = (f * inv) % p
                for i in range(len(col)):
                    col[i] = (col[i] - factor * lead[i]) % p
        nz = next((i for i, v in enumerate(col) if v), None)
        if nz is not None:
            pivot_rows.append((nz, col))
            rank += 1
    return len(rows) - rank


@pytest.fixture
def rng():
    return random.Random(1729)
