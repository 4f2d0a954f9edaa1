"""Cutoff-modified gravitational-instanton families.

The modification multiplies the 1/r^4 (Eguchi-Hanson) or 1/r^2 (Burns)
profile term by a bump phi(r/eps), so the metric is exactly the unmodified
instanton for r < eps and exactly Euclidean for r > 2*eps.  The epsilon
schedules eps^8 and eps^6 make the curvature of the transition region decay
like eps^2, which the sweep here measures.
"""

from __future__ import annotations

import enum
import io
import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .jets import Jet2, constant
from .radial import (
    BOLT_OFFSET,
    FULL_SPHERE,
    Z2_QUOTIENT,
    RadialMetric,
    RadialProfile,
    sup_norms,
    volume,
)


def _mollifier_bump(x: Jet2) -> Jet2:
    """C-infinity step: 1 on [0,1], 0 on [2,inf), built from exp(-1/x)."""
    v = x.value
    if v <= 1.0:
        return constant(1.0)
    if v >= 2.0:
        return constant(0.0)
    left = (-(x - 1.0).reciprocal()).exp()   # exp(-1/(x-1)), vanishes at 1+
    right = ((x - 2.0).reciprocal()).exp()   # exp(-1/(2-x)) = exp(1/(x-2))
    return right / (left + right)


def _quintic_bump(x: Jet2) -> Jet2:
    """C^2 polynomial step (comparison variant): 1 - smoothstep5(x-1)."""
    v = x.value
    if v <= 1.0:
        return constant(1.0)
    if v >= 2.0:
        return constant(0.0)
    t = x - 1.0
    return 1.0 - t * t * t * (10.0 + t * (-15.0 + 6.0 * t))


@dataclass(frozen=True)
class BumpFunction:
    """Monotone non-increasing cutoff, identically 1 on [0,1], 0 on [2,inf)."""

    evaluate: Callable[[Jet2], Jet2]
    support: tuple[float, float] = (0.0, 2.0)

    def __call__(self, x: Jet2 | float) -> Jet2:
        if not isinstance(x, Jet2):
            if x < 0.0:
                raise ValueError("bump argument must be non-negative")
            x = Jet2(float(x), 1.0, 0.0)
        elif x.value < 0.0:
            raise ValueError("bump argument must be non-negative")
        return self.evaluate(x)


SMOOTH_BUMP = BumpFunction(_mollifier_bump)
QUINTIC_BUMP = BumpFunction(_quintic_bump)


def bump(x: float) -> Jet2:
    """Default smooth cutoff phi with exact jets."""
    return SMOOTH_BUMP(x)


class BaseInstanton(enum.Enum):
    EGUCHI_HANSON = "eguchi-hanson"
    BURNS = "burns"


#: (power of eps in the profile term, power of r it divides by, bolt radius
#: exponent: r_min = eps**k) per family
_FAMILY_EXPONENTS = {
    BaseInstanton.EGUCHI_HANSON: (8, 4, 2),
    BaseInstanton.BURNS: (6, 2, 3),
}


@dataclass(frozen=True)
class CutoffFamily:
    base: BaseInstanton
    epsilon: float
    bump: BumpFunction = SMOOTH_BUMP

    def __post_init__(self):
        # above 1 the bolt radius eps^k would leave the cutoff region
        if not 0.0 < self.epsilon < 1.0:
            raise ValueError("epsilon must lie in (0, 1)")

    @property
    def r_bolt(self) -> float:
        return self.epsilon ** _FAMILY_EXPONENTS[self.base][2]

    @property
    def link(self):
        return Z2_QUOTIENT if self.base is BaseInstanton.EGUCHI_HANSON else FULL_SPHERE

    @property
    def deficit_exponent(self) -> int:
        """Power of epsilon in the gluing volume deficit (8 for EH, 12 for Burns)."""
        return 4 * _FAMILY_EXPONENTS[self.base][2]


def modified_metric(family: CutoffFamily, delta: float = BOLT_OFFSET) -> RadialMetric:
    """The cutoff metric with W(r) = 1 - phi(r/eps) eps^p / r^q.

    Exactly flat for r > 2*eps, exactly the (rescaled) instanton for r < eps.
    """
    p, q, _ = _FAMILY_EXPONENTS[family.base]
    eps = family.epsilon
    phi = family.bump

    def w(x: Jet2) -> Jet2:
        return 1.0 - phi(x / eps) * (eps**p) / x**q

    prof = RadialProfile(
        f=lambda x: w(x).sqrt().reciprocal(),
        a=lambda x: x,
        b=lambda x: x,
        c=lambda x: x * w(x).sqrt(),
        r_min=family.r_bolt * (1.0 + delta),
    )
    metric = RadialMetric(prof, family.link)
    # positivity guard: the bump may push W through zero if eps is too large
    for r in np.geomspace(prof.r_min * (1 + 1e-9), 2.5 * eps, 160):
        if w(Jet2(float(r), 1.0, 0.0)).value <= 0.0:
            raise ValueError(
                f"profile non-positive at r={r:.4g}: epsilon={eps} too large for this bump"
            )
    return metric


@dataclass
class SweepTable:
    """Log-log decay data for the curvature sup-norms of a cutoff family."""

    rows: list[tuple[float, float]]
    fitted_slope: float
    base: BaseInstanton
    warnings: list[str] = field(default_factory=list)

    def to_csv(self) -> str:
        buf = io.StringIO()
        buf.write("epsilon,sup_norm,log_eps,log_sup\n")
        for eps, s in self.rows:
            buf.write(f"{eps!r},{s!r},{math.log(eps)!r},{math.log(s)!r}\n")
        return buf.getvalue()


def decay_sweep(
    base: BaseInstanton,
    eps_list: Sequence[float],
    bump_fn: BumpFunction = SMOOTH_BUMP,
    samples: int = 160,
) -> SweepTable:
    """Sup-norm decay of the family as eps -> 0, with least-squares slope.

    The tracked norm is sup |Ric| for Eguchi-Hanson (Ricci-flat core) and
    sup |s| for Burns (scalar-flat core).
    """
    eps_values = sorted(set(float(e) for e in eps_list), reverse=True)
    if len(eps_values) < 3:
        raise ValueError("decay sweep needs at least 3 distinct epsilon values")
    rows: list[tuple[float, float]] = []
    warnings: list[str] = []
    for eps in eps_values:
        fam = CutoffFamily(base, eps, bump_fn)
        metric = modified_metric(fam)
        sn = sup_norms(metric, samples, r_hi=3.0 * eps)
        value = sn.sup_ricci if base is BaseInstanton.EGUCHI_HANSON else sn.sup_scalar
        if not math.isfinite(value) or value <= 0.0:
            warnings.append(f"epsilon={eps}: non-finite or vanishing sup norm, row excluded")
            continue
        rows.append((eps, value))
    if len(rows) < 2:
        raise ValueError("too few valid sweep rows to fit a slope")
    logs = np.log(np.asarray(rows))
    slope = float(np.polyfit(logs[:, 0], logs[:, 1], 1)[0])
    return SweepTable(rows=rows, fitted_slope=slope, base=base, warnings=warnings)


def volume_deficit(family: CutoffFamily, R: float, tol: float = 1e-12) -> float:
    """Volume lost by replacing the flat ball of radius R with the cutoff cap.

    Both volume forms are Euclidean (f a b c = r^3 exactly), so the deficit
    is link_volume * r_bolt^4 / 4 in closed form; computed here by adaptive
    quadrature and independent of R.
    """
    if R <= 2.0 * family.epsilon:
        raise ValueError("R must lie beyond the modified region (R > 2 eps)")
    metric = modified_metric(family)
    flat_part = family.link.link_volume * R**4 / 4.0
    modified_part = volume(
        RadialMetric(
            RadialProfile(
                f=metric.profile.f,
                a=metric.profile.a,
                b=metric.profile.b,
                c=metric.profile.c,
                r_min=family.r_bolt,
            ),
            family.link,
        ),
        family.r_bolt,
        R,
        tol=tol,
    )
    return flat_part - modified_part
