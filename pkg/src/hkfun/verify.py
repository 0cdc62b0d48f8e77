"""Named cross-checks pairing each closed form with the brute-force oracle.

The registry is what both the CLI ``verify`` subcommand and the acceptance
test suite run, so users and CI exercise identical checks.  Every case
returns the measured value, the target, the tolerance and the gap, all exact
where the computation permits.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from . import oracle
from .bundle import HNData, Polarization, SyzygySpec, syzygy_pair_density
from .density import segre
from .piecewise import fraction_str, tent_function
from .trinomial import Irregular, TypeI, classify, f_threshold, fermat
from .volume import BoxSliceSpec, lattice_slice_count, parameter_density, slice_volume

QUADRIC_CONE = {(1, 1, 0): 1, (0, 0, 2): -1}
SEGRE_QUADRIC = {(1, 1, 0, 0): 1, (0, 0, 1, 1): -1}


@dataclass(frozen=True)
class VerifyResult:
    name: str
    passed: bool
    measured: str
    target: str
    tolerance: str
    gap: str
    detail: str = ""

    def to_dict(self) -> dict:
        return {"case": self.name, "passed": self.passed, "measured": self.measured,
                "target": self.target, "tolerance": self.tolerance,
                "gap": self.gap, "detail": self.detail}


def quadric_cone_pair():
    """The dimension-2 pair with density 2x on [0,1], 6-4x on [1,3/2]."""
    spec = SyzygySpec(mu=3, gen_degree=1, pol=Polarization(degree=2),
                      hn_v=HNData((Fraction(-1),), (2,)))
    return syzygy_pair_density(spec)


def tent_pair():
    return parameter_density(1, (1, 1))


def irregular_quintic_witness() -> TypeI:
    """First degree-5 shape (in lexicographic exponent order) whose largest
    coordinate-point multiplicity is exactly 3."""
    for a1 in range(6):
        for b1 in range(6):
            for c1 in range(6):
                try:
                    curve = TypeI(a1=a1, a2=5 - a1, b1=b1, b2=5 - b1,
                                  c1=c1, c2=5 - c1)
                    kind = classify(curve)
                except ValueError:
                    continue
                if isinstance(kind, Irregular) and kind.multiplicity == 3:
                    return curve
    raise RuntimeError("no irregular quintic witness found")


def _result(name: str, measured: Fraction, target: Fraction, tol: Fraction,
            detail: str = "") -> VerifyResult:
    gap = abs(measured - target)
    return VerifyResult(name=name, passed=gap <= tol,
                        measured=fraction_str(measured), target=fraction_str(target),
                        tolerance=fraction_str(tol), gap=fraction_str(gap),
                        detail=detail)


def _case_tent_exact() -> VerifyResult:
    ok = tent_pair().f == tent_function()
    return VerifyResult(name="tent-exact", passed=ok, measured="tent" if ok else "other",
                        target="tent", tolerance="0", gap="0" if ok else "1",
                        detail="unit parameter density equals the tent function exactly")


def _fermat4_case(name: str, p: int) -> Callable[[], VerifyResult]:
    def run() -> VerifyResult:
        target = f_threshold(fermat(4), 1, p)
        measured = oracle.fthreshold_estimate(p, {e: 1 for e in fermat(4).monomials()}, 1, p)
        return _result(name, measured, target, Fraction(3, p),
                       detail=f"threshold estimate at q={p} against the residue formula")
    return run


def _case_quadric_thresholds() -> VerifyResult:
    target = quadric_cone_pair().alpha
    worst_gap = Fraction(0)
    details = []
    passed = True
    for q in (3, 9, 27):
        measured = oracle.fthreshold_estimate(3, QUADRIC_CONE, 1, q)
        gap = abs(measured - target)
        worst_gap = max(worst_gap, gap)
        ok = gap <= Fraction(3, q)
        passed = passed and ok
        details.append(f"q={q}: {fraction_str(measured)} (gap {fraction_str(gap)}, "
                       f"tol {fraction_str(Fraction(3, q))})")
    return VerifyResult(name="quadric-cone-f3", passed=passed,
                        measured=details[-1].split()[1], target=fraction_str(target),
                        tolerance="3/q", gap=fraction_str(worst_gap),
                        detail="; ".join(details))


def _case_quadric_ehk() -> VerifyResult:
    target = quadric_cone_pair().f.integrate(0, 2)
    measured = oracle.ehk_estimate(3, QUADRIC_CONE, oracle.variable_powers(3, 1), 27)
    return _result("quadric-cone-ehk", measured, target, Fraction(1, 20),
                   detail="multiplicity estimate at q=27 against the exact integral")


def _case_segre_quadric() -> VerifyResult:
    pair = segre(tent_pair(), tent_pair())
    target = pair.f.integrate(0, pair.alpha)
    measured = oracle.ehk_estimate(2, SEGRE_QUADRIC, oracle.variable_powers(4, 1), 8)
    return _result("segre-quadric-f2-q8", measured, target, Fraction(3, 20),
                   detail="four-variable multiplicity estimate at q=8 against the "
                          "exact Segre integral")


def _case_irregular_quintic() -> VerifyResult:
    curve = irregular_quintic_witness()
    p, q = 13, 169
    target = f_threshold(curve, 1, p)
    measured = oracle.fthreshold_estimate(p, {e: 1 for e in curve.monomials()}, 1, q)
    return _result("irregular-d5-oracle", measured, target, Fraction(3, q),
                   detail=f"witness {curve}; threshold estimate at q=p^2={q}")


def _case_scaling() -> VerifyResult:
    ok = oracle.scaling_check(3, QUADRIC_CONE, oracle.variable_powers(3, 1), 3, 3)
    return VerifyResult(name="scaling-quadric-cone", passed=ok,
                        measured="equal" if ok else "unequal", target="equal",
                        tolerance="0", gap="0" if ok else "1",
                        detail="colengths of (I^[3])^[3] and I^[9] agree degree by degree")


def _case_volume_convergence() -> VerifyResult:
    """Lattice-count convergence at tolerance 2/q over random small boxes.

    The worst scaled error over the family is reported; see the project notes
    for why the 2/q tolerance is not attainable for the larger boxes.
    """
    rng = random.Random(20260808)
    worst = Fraction(0)
    worst_at = ""
    passed = True
    for _ in range(10):
        m = rng.randint(1, 4)
        ns = tuple(rng.randint(1, 3) for _ in range(m))
        spec = BoxSliceSpec(ns)
        volume = slice_volume(spec)
        span = sum(ns) + 1
        for q in (16, 32, 64):
            for j in range(1, 21):
                x = Fraction(span * j, 21)
                count = lattice_slice_count(spec, q, int(x * q))
                err = abs(Fraction(count, q ** (m - 1)) - volume(x))
                if err > Fraction(2, q):
                    passed = False
                if err * q > worst:
                    worst = err * q
                    worst_at = f"spec={ns} q={q} x={fraction_str(x)}"
        del volume
    return VerifyResult(name="volume-convergence", passed=passed,
                        measured=f"worst q*error = {fraction_str(worst)}",
                        target="q*error <= 2", tolerance="2/q",
                        gap=fraction_str(max(Fraction(0), worst - 2)),
                        detail=worst_at)


CASES: dict[str, Callable[[], VerifyResult]] = {
    "tent-exact": _case_tent_exact,
    "fermat4-p17-q17": _fermat4_case("fermat4-p17-q17", 17),
    "fermat4-p29-q29": _fermat4_case("fermat4-p29-q29", 29),
    "quadric-cone-f3": _case_quadric_thresholds,
    "quadric-cone-ehk": _case_quadric_ehk,
    "segre-quadric-f2-q8": _case_segre_quadric,
    "irregular-d5-oracle": _case_irregular_quintic,
    "scaling-quadric-cone": _case_scaling,
    "volume-convergence": _case_volume_convergence,
}


def run_case(name: str) -> VerifyResult:
    if name not in CASES:
        raise KeyError(f"unknown verify case {name!r}; known: {', '.join(sorted(CASES))}")
    return CASES[name]()
