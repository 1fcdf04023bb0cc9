"""Deviation, analytic deviation, the classification flags, and runnable
cross-checks between them.

``e`` denotes the rank of ``E``; for ideal modules it equals the ambient rank.
The complete-intersection and equimultiple flags are only assigned to
non-free ideal modules.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field
from typing import Sequence

from .groebner import Ideal, height
from .invariants import (
    ModuleSpec,
    dim_quotient,
    fitting_ideal,
    grade_quotient,
    is_free_on_punctured_spectrum,
    is_ideal_module,
    mu_at_prime,
    mu_local,
    rank,
)
from .monomial import is_monomial, minimal_primes_monomial
from .rees import analytic_spread, is_linear_type, rees_kernel, rees_power
from .reductions import DEFAULT_RMAX, ReductionFailure, generic_minimal_reduction
from .resolution import cokernel_resolution, depth_graded


class FreeModuleError(ValueError):
    """Raised for invariants that only make sense for non-free modules."""


def _num(x):
    """JSON-friendly integers; infinities become strings."""
    if isinstance(x, float) and math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return x


def fe_height(E: ModuleSpec) -> float:
    return height(fitting_ideal(E, rank(E)))


def _require_nonfree(E: ModuleSpec) -> tuple[int, int]:
    e = rank(E)
    h = height(fitting_ideal(E, e))
    if h == math.inf:
        raise FreeModuleError("deviation and analytic deviation are defined only for non-free modules")
    return e, h


def deviation(E: ModuleSpec) -> int:
    """``de(E) = mu(E) - e + 1 - ht F_e(E)``."""
    e, h = _require_nonfree(E)
    return mu_local(E) - e + 1 - h


def analytic_deviation(E: ModuleSpec) -> int:
    """``ad(E) = l(E) - e + 1 - ht F_e(E)``."""
    e, h = _require_nonfree(E)
    return analytic_spread(E) - e + 1 - h


# --------------------------------------------------------------------------
# generic complete intersection


@dataclass
class GciResult:
    value: bool | None
    basis: str
    primes: list[list[str]] = field(default_factory=list)
    mu_at_primes: list[int] = field(default_factory=list)


def generically_ci(E: ModuleSpec, primes: Sequence[Ideal] | None = None) -> GciResult:
    """``mu(E_p) = ht F_e(E) + e - 1`` at every minimal prime of ``F_e(E)``.

    Decided over monomial minimal primes, or over user-supplied primes which
    are taken on trust.  Otherwise the value is ``None`` (undetermined).
    """
    e = rank(E)
    F = fitting_ideal(E, e)
    if F.is_unit():
        return GciResult(None, "free module")
    if primes is not None:
        basis = "relative to supplied primes"
        plist = list(primes)
    elif is_monomial(F):
        basis = "monomial minimal primes"
        plist = minimal_primes_monomial(F)
    else:
        return GciResult(None, "undetermined: F_e(E) is not monomial and no primes were supplied")
    target = height(F) + e - 1
    mus = [mu_at_prime(E, p) for p in plist]
    names = [[str(g) for g in p.generators] for p in plist]
    return GciResult(all(m == target for m in mus), basis, names, mus)


# --------------------------------------------------------------------------
# the report


@dataclass
class InvariantReport:
    variables: list[str]
    field: object
    ambient_rank: int
    rank: int
    graded: bool
    mu: int | None
    fitting_e: list[str]
    ht_fitting_e: object
    grade_quotient: object
    dim_quotient: int
    ideal_module: bool
    free_on_punctured_spectrum: bool
    trivially_free: bool
    analytic_spread: int | None
    rees_kernel_size: int | None
    linear_type: bool | None
    deviation: int | None
    analytic_deviation: int | None
    ci: bool | None
    equimultiple: bool | None
    generically_ci: str
    generically_ci_basis: str
    reduction: dict | None
    provenance: dict

    def to_dict(self) -> dict:
        d = asdict(self)
        for k in ("ht_fitting_e", "grade_quotient"):
            d[k] = _num(d[k])
        return d


def _tristate(v: bool | None) -> str:
    return "undetermined" if v is None else ("true" if v else "false")


def classify(
    E: ModuleSpec,
    primes: Sequence[Ideal] | None = None,
    seed: int = 0,
    trials: int = 5,
    rmax: int = DEFAULT_RMAX,
    with_reduction: bool = True,
) -> InvariantReport:
    ring = E.ring
    e = rank(E)
    F = fitting_ideal(E, e)
    h = height(F)
    free = F.is_unit()
    graded = E.is_graded
    ideal_mod = is_ideal_module(E)
    prov = {
        "rank": "largest nonvanishing minor of the generator matrix",
        "ideal_module": "grade G/E = ht I_e(generator matrix) >= 2",
        "free_on_punctured_spectrum": "F_e(E) is primary to the maximal graded ideal or the unit ideal",
    }
    mu = mu_local(E) if graded else None
    ell = kernel_size = lin = de = ad = ci = eq = None
    reduction = None
    gci = GciResult(None, "free module") if free else GciResult(None, "ungraded input")
    if graded:
        data = rees_kernel(E)
        ell = data.analytic_spread
        kernel_size = len(data.kernel.generators)
        lin = is_linear_type(E)
        prov["analytic_spread"] = "dim k[y]/J0, J0 the fiber ideal of the Rees kernel"
        prov["linear_type"] = "Rees kernel equals the ideal of linear syzygy forms"
        if not free:
            de = mu - e + 1 - h
            ad = ell - e + 1 - h
            if ideal_mod:
                ci, eq = de == 0, ad == 0
                prov["ci"] = "de(E) = 0"
                prov["equimultiple"] = "ad(E) = 0"
            else:
                prov["ci"] = prov["equimultiple"] = "not assigned: E is not an ideal module"
            gci = generically_ci(E, primes)
        if with_reduction:
            try:
                cert = generic_minimal_reduction(E, None, seed, trials, rmax)
                reduction = {
                    "r": cert.r,
                    "mu": len(cert.U.columns),
                    "seed": seed,
                    "verified": cert.verified,
                    "search_bound": rmax,
                    "reason": cert.reason,
                }
            except ReductionFailure as exc:
                reduction = {"r": None, "seed": seed, "verified": False, "search_bound": rmax, "reason": str(exc)}
            prov["reduction"] = "generic minimal reduction, exact power comparison"
    else:
        prov["analytic_spread"] = "not computed: generator matrix is not homogeneous"
    prov["generically_ci"] = gci.basis
    return InvariantReport(
        variables=list(ring.variables),
        field=ring.field.to_json(),
        ambient_rank=E.ambient_rank,
        rank=e,
        graded=graded,
        mu=mu,
        fitting_e=[str(g) for g in F.groebner()],
        ht_fitting_e=h,
        grade_quotient=grade_quotient(E),
        dim_quotient=dim_quotient(E),
        ideal_module=ideal_mod,
        free_on_punctured_spectrum=is_free_on_punctured_spectrum(E),
        trivially_free=free,
        analytic_spread=ell,
        rees_kernel_size=kernel_size,
        linear_type=lin,
        deviation=de,
        analytic_deviation=ad,
        ci=ci,
        equimultiple=eq,
        generically_ci=_tristate(gci.value),
        generically_ci_basis=gci.basis,
        reduction=reduction,
        provenance=prov,
    )


# --------------------------------------------------------------------------
# conditions and cross-checks


def gs_tilde(E: ModuleSpec, s: int) -> bool:
    """``ht F_i(E) >= i - e + 2`` for ``e <= i <= e + s - 2``."""
    if s < 1:
        raise ValueError("s must be at least 1")
    e = rank(E)
    return all(height(fitting_ideal(E, i)) >= i - e + 2 for i in range(e, e + s - 1))


def burch_check(E: ModuleSpec, nmax: int = 3) -> dict:
    """``l(E) <= d + e - 1 - min_n depth G^n/E^n`` over ``1 <= n <= nmax``."""
    if nmax < 1:
        raise ValueError("nmax must be at least 1")
    E.require_graded()
    e = rank(E)
    if fitting_ideal(E, e).is_unit():
        return {"status": "skipped", "reason": "free module"}
    d = E.nvars
    ell = analytic_spread(E)
    ad = analytic_deviation(E)
    depths = []
    for n in range(1, nmax + 1):
        P = rees_power(E, n)
        depths.append(depth_graded(cokernel_resolution(E.ring, P.ambient_rank, P.columns)))
    bound = d + e - 1 - min(depths)
    holds = ell <= bound
    equimultiple = ad == 0 and is_ideal_module(E)
    if equimultiple:
        status = "PASS" if holds else "FAIL"
    else:
        status = "informational"
    return {
        "status": status,
        "analytic_spread": ell,
        "depths": [_num(x) for x in depths],
        "bound": _num(bound),
        "holds": holds,
        "equality": ell == bound,
    }


def ci_criteria_crosscheck(E: ModuleSpec, primes: Sequence[Ideal] | None = None) -> dict:
    """Evaluate the implications linking ci, equimultiple, linear type and gci.

    Each check is ``True``/``False`` or ``None`` when vacuous or undetermined.
    """
    rep = classify(E, primes, with_reduction=False)
    ci, eq, lin = rep.ci, rep.equimultiple, rep.linear_type
    gci = {"true": True, "false": False}.get(rep.generically_ci)
    checks: dict[str, bool | None] = {}
    if ci is None or eq is None:
        checks = {"linear_type_criterion": None, "gci_criterion": None, "ci_implies": None}
    else:
        checks["linear_type_criterion"] = ci == (eq and lin)
        checks["gci_criterion"] = (ci == eq) if gci else None
        checks["ci_implies"] = (eq and gci is not False) if ci else None
    consistent = all(v is not False for v in checks.values())
    return {
        "ci": ci,
        "equimultiple": eq,
        "linear_type": lin,
        "generically_ci": rep.generically_ci,
        "checks": checks,
        "consistent": consistent,
    }
