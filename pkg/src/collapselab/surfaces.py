"""Integer / closed-form arithmetic for the Kodaira-dimension classifier of
the Yamabe invariant of complex surfaces, blow-up bookkeeping, the
general-type Yamabe value -4*pi*sqrt(2 c1^2(X)), and the matching
scalar-curvature L^2 lower bound 32*pi^2*c1^2(X).
"""

from __future__ import annotations

import enum
import json
import math
from dataclasses import dataclass, replace


class KodairaDimension(enum.Enum):
    MINUS_INFINITY = "-inf"
    ZERO = "0"
    ONE = "1"
    TWO = "2"


class Parity(enum.Enum):
    EVEN = "even"
    ODD = "odd"


class YamabeSign(enum.Enum):
    POSITIVE = "positive"
    ZERO = "zero"
    NEGATIVE = "negative"


class OddFirstBettiError(ValueError):
    """The sign classification assumes b1 even (Kaehler type); for odd b1 the
    kod 0/1 statement is only conjectural and type VII is open, so we refuse
    to guess."""


@dataclass(frozen=True)
class SurfaceData:
    """Diffeomorphism-level invariants of a compact complex surface."""

    kod: KodairaDimension
    b1_parity: Parity
    c1sq_min: int       # c1^2 of the minimal model X
    chi: int            # Euler characteristic
    tau: int            # signature
    blowups: int = 0
    name: str = ""

    def __post_init__(self):
        if self.blowups < 0:
            raise ValueError("blow-up count must be non-negative")
        if self.c1sq != 2 * self.chi + 3 * self.tau:
            raise ValueError(
                f"inconsistent invariants: c1^2 = {self.c1sq} but 2chi+3tau = "
                f"{2 * self.chi + 3 * self.tau}"
            )
        if self.kod is KodairaDimension.TWO and self.c1sq_min <= 0:
            raise ValueError("general type requires c1^2 of the minimal model > 0")
        if self.kod in (KodairaDimension.ZERO, KodairaDimension.ONE) and self.c1sq_min != 0:
            raise ValueError("Kodaira dimension 0 or 1 forces c1^2(X) = 0")

    @property
    def c1sq(self) -> int:
        """c1^2 of the surface itself; drops by one per blow-up."""
        return self.c1sq_min - self.blowups

    @property
    def is_minimal(self) -> bool:
        return self.blowups == 0

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "kod": self.kod.value,
            "b1_parity": self.b1_parity.value,
            "c1sq_min": self.c1sq_min,
            "chi": self.chi,
            "tau": self.tau,
            "blowups": self.blowups,
        }

    @staticmethod
    def from_json(rec: dict) -> "SurfaceData":
        return SurfaceData(
            kod=KodairaDimension(str(rec["kod"])),
            b1_parity=Parity(rec.get("b1_parity", "even")),
            c1sq_min=int(rec["c1sq_min"]),
            chi=int(rec["chi"]),
            tau=int(rec["tau"]),
            blowups=int(rec.get("blowups", 0)),
            name=str(rec.get("name", "")),
        )


@dataclass(frozen=True)
class YamabeAnswer:
    sign: YamabeSign
    value: float | None = None
    value_known: bool = False
    note: str = ""

    def __post_init__(self):
        if self.value is not None:
            expected = (
                YamabeSign.ZERO
                if self.value == 0.0
                else (YamabeSign.POSITIVE if self.value > 0 else YamabeSign.NEGATIVE)
            )
            if expected is not self.sign:
                raise ValueError("stored value contradicts the stored sign")

    def to_json(self) -> dict:
        return {
            "sign": self.sign.value,
            "value": self.value,
            "value_known": self.value_known,
            "note": self.note,
        }


def classify_sign(surface: SurfaceData) -> YamabeSign:
    """Sign of the Yamabe invariant from the Kodaira dimension (b1 even only)."""
    if surface.b1_parity is Parity.ODD:
        raise OddFirstBettiError(
            "sign classification requires b1 even; the odd-b1 cases are open"
        )
    if surface.kod is KodairaDimension.MINUS_INFINITY:
        return YamabeSign.POSITIVE
    if surface.kod in (KodairaDimension.ZERO, KodairaDimension.ONE):
        return YamabeSign.ZERO
    return YamabeSign.NEGATIVE


def yamabe_value(surface: SurfaceData) -> YamabeAnswer:
    """Yamabe invariant: sign always, numeric value where known.

    General type: -4*pi*sqrt(2 c1^2(X)), independent of blow-ups.  Kodaira
    dimension 0 or 1: exactly 0.  Kodaira dimension -infinity: unknown in
    general; the value is achieved by the Fubini-Study metric on CP^2 but no
    number is asserted here.
    """
    sign = classify_sign(surface)
    if surface.kod is KodairaDimension.TWO:
        val = -4.0 * math.pi * math.sqrt(2.0 * surface.c1sq_min)
        return YamabeAnswer(sign, value=val, value_known=True)
    if surface.kod in (KodairaDimension.ZERO, KodairaDimension.ONE):
        return YamabeAnswer(sign, value=0.0, value_known=True)
    note = (
        "achieved by the Fubini-Study metric on CP^2; no numeric value asserted"
        if surface.name.upper() == "CP2"
        else ""
    )
    return YamabeAnswer(sign, value=None, value_known=False, note=note)


def blow_up_surface(surface: SurfaceData, k: int) -> SurfaceData:
    """Connect-sum with k reversed projective planes: chi += k, tau -= k."""
    if k < 0:
        raise ValueError("blow-up count must be non-negative")
    return replace(
        surface,
        blowups=surface.blowups + k,
        chi=surface.chi + k,
        tau=surface.tau - k,
    )


def sw_bound(surface: SurfaceData) -> float:
    """Sharp Seiberg-Witten scalar-curvature bound inf int s^2 dmu = 32 pi^2 c1^2(X).

    Coherent with the general-type Yamabe value: |Y|^2 equals this bound.
    """
    if surface.kod is not KodairaDimension.TWO:
        raise ValueError("the scalar-curvature bound applies to general type only")
    return 32.0 * math.pi**2 * surface.c1sq_min


CANONICAL_SURFACES = [
    SurfaceData(KodairaDimension.MINUS_INFINITY, Parity.EVEN, 9, 3, 1, name="CP2"),
    SurfaceData(KodairaDimension.MINUS_INFINITY, Parity.EVEN, 9, 12, -8, blowups=9,
                name="rational elliptic"),
    SurfaceData(KodairaDimension.ZERO, Parity.EVEN, 0, 24, -16, name="K3"),
    SurfaceData(KodairaDimension.ZERO, Parity.EVEN, 0, 0, 0, name="4-torus"),
    SurfaceData(KodairaDimension.ONE, Parity.EVEN, 0, 12, -8, name="minimal elliptic (Dolgachev-like)"),
    SurfaceData(KodairaDimension.TWO, Parity.EVEN, 5, 565, -375, name="general type c1^2=5"),
]


def classify_records(records: list[dict]) -> list[dict]:
    """JSON-in / JSON-out classifier used by the command-line runner."""
    out = []
    for rec in records:
        surf = SurfaceData.from_json(rec)
        ans = yamabe_value(surf)
        row = surf.to_json()
        row["answer"] = ans.to_json()
        out.append(row)
    return out
