"""Check outcomes shared by every verifier."""

from dataclasses import dataclass, field
from fractions import Fraction

from .errors import CheckFailed

PASS = "pass"
FAIL = "fail"
SKIPPED_POLE = "skipped-pole"
BUDGET_EXCEEDED = "budget-exceeded"
DEGENERATE = "degenerate"

STATUSES = (PASS, FAIL, SKIPPED_POLE, BUDGET_EXCEEDED, DEGENERATE)


@dataclass
class CheckResult:
    """Outcome of one verification.

    ``code`` names the failure kind (e.g. ``"SHIFT_MISMATCH"``) when
    ``status`` is not ``"pass"``; ``witness`` locates it.
    """

    status: str
    details: dict = field(default_factory=dict)
    witness: dict | None = None
    code: str | None = None

    @property
    def passed(self):
        return self.status == PASS

    def __bool__(self):
        return self.passed

    def raise_for_status(self):
        if self.status == FAIL:
            raise CheckFailed(self.code or "FAIL", str(self.witness), witness=self.witness)
        return self

    def to_json(self):
        out = {"status": self.status, "details": to_jsonable(self.details)}
        if self.code:
            out["code"] = self.code
        if self.witness is not None:
            out["witness"] = to_jsonable(self.witness)
        return out


def combine(results, details=None):
    """Aggregate sub-results: first failure wins, else pass (poles are noted)."""
    results = list(results)
    details = dict(details or {})
    details["counts"] = {s: sum(r.status == s for r in results) for s in STATUSES
                         if any(r.status == s for r in results)}
    for r in results:
        if r.status == FAIL:
            return CheckResult(FAIL, details, r.witness, r.code)
    for status in (BUDGET_EXCEEDED, DEGENERATE):
        for r in results:
            if r.status == status:
                return CheckResult(status, details, r.witness, r.code)
    if results and all(r.status == SKIPPED_POLE for r in results):
        return CheckResult(SKIPPED_POLE, details)
    return CheckResult(PASS, details)


def to_jsonable(obj):
    """Exact values become strings (``"p/q"``), polynomials their canonical text."""
    from .algebra import MultiPoly

    if isinstance(obj, bool) or obj is None or isinstance(obj, str):
        return obj
    if isinstance(obj, int):
        # big integers stay exact through JSON readers that use doubles
        return obj if abs(obj) < 2 ** 53 else str(obj)
    if isinstance(obj, Fraction):
        return str(obj) if obj.denominator != 1 else to_jsonable(obj.numerator)
    if isinstance(obj, MultiPoly):
        return obj.to_str()
    if isinstance(obj, CheckResult):
        return obj.to_json()
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    if isinstance(obj, float):
        return obj
    return str(obj)
