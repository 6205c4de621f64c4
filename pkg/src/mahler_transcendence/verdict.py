from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .arith import Poly

EIGENVALUE_TEST = "eigenvalue-test"
UNIVERSAL_TEST = "universal-test"


class Tag(str, Enum):
    TRANSCENDENTAL = "transcendental"
    RATIONAL = "rational"
    INCONCLUSIVE = "inconclusive"


class Reason(str, Enum):
    """Why the eigenvalue test could not decide."""

    LEADING_ZERO = "a_0(1) = 0"
    TRAILING_ZERO = "a_d(1) = 0"
    REPEATED_ROOTS = "characteristic polynomial has repeated roots"
    K_POWER_EIGENVALUE = "lambda_F = k^n, test inconclusive"
    AMBIGUOUS_MATCH = "ambiguous root match"
    ESTIMATOR_FAILED = "eigenvalue estimator failed"


class Evidence(str, Enum):
    EXACT = "exact"
    NUMERIC = "numeric"


@dataclass(frozen=True)
class Verdict:
    tag: Tag
    method: str
    evidence: Evidence | None = None
    rank: int | None = None
    shape: tuple[int, int] | None = None
    numerator: Poly | None = None
    denominator: Poly | None = None
    reason: Reason | None = None
    detail: str | None = None

    @property
    def conclusive(self) -> bool:
        return self.tag is not Tag.INCONCLUSIVE

    def to_dict(self) -> dict:
        out: dict = {"tag": self.tag.value, "method": self.method}
        if self.evidence is not None:
            out["evidence"] = self.evidence.value
        if self.rank is not None:
            out["rank"] = self.rank
            out["shape"] = list(self.shape)
        if self.numerator is not None:
            out["P"] = self.numerator.to_literals()
            out["Q"] = self.denominator.to_literals()
        if self.reason is not None:
            out["reason"] = self.reason.value
        if self.detail:
            out["detail"] = self.detail
        return out

    def describe(self) -> str:
        if self.tag is Tag.RATIONAL:
            return f"Rational: F(z) = ({self.numerator}) / ({self.denominator})"
        if self.tag is Tag.TRANSCENDENTAL:
            extra = f" ({self.evidence.value} evidence)" if self.evidence else ""
            return f"Transcendental{extra}"
        text = f"Inconclusive: {self.reason.value}"
        return text + (f" ({self.detail})" if self.detail else "")
