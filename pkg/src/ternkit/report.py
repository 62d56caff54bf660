"""Check records and aggregated reports.

Every verification routine returns a `Check`; collections of checks are
gathered in a `Report`, which the CLI serializes deterministically.
"""
from dataclasses import dataclass, field

PASS = "pass"
FAIL = "fail"
SKIPPED = "skipped"


@dataclass
class Check:
    check_id: str
    anchor: str
    status: str
    max_residual: float = 0.0
    witnesses: list = field(default_factory=list)
    details: dict = field(default_factory=dict)

    @property
    def passed(self):
        return self.status != FAIL

    def to_dict(self):
        return {
            "check_id": self.check_id,
            "anchor": self.anchor,
            "status": self.status,
            "max_residual": "%.6e" % float(self.max_residual),
            "witnesses": [_plain(w) for w in self.witnesses],
            "details": _plain(self.details),
        }


def check(check_id, anchor, residual, threshold, witnesses=(), **details):
    """Build a Check that passes iff residual <= threshold."""
    residual = float(residual)
    status = PASS if residual <= threshold else FAIL
    details.setdefault("threshold", float(threshold))
    return Check(check_id, anchor, status, residual, list(witnesses), details)


def skipped(check_id, anchor, reason):
    return Check(check_id, anchor, SKIPPED, 0.0, [], {"reason": reason})


@dataclass
class Report:
    checks: list = field(default_factory=list)
    environment: dict = field(default_factory=dict)

    def add(self, item):
        if isinstance(item, Report):
            self.checks.extend(item.checks)
        else:
            self.checks.append(item)
        return item

    @property
    def passed(self):
        return all(c.passed for c in self.checks)

    @property
    def max_residual(self):
        return max((c.max_residual for c in self.checks), default=0.0)

    def failed(self):
        return [c for c in self.checks if not c.passed]

    def __getitem__(self, check_id):
        for c in self.checks:
            if c.check_id == check_id:
                return c
        raise KeyError(check_id)

    def to_dict(self):
        ordered = sorted(self.checks, key=lambda c: c.check_id)
        return {
            "status": PASS if self.passed else FAIL,
            "failed": [c.check_id for c in ordered if not c.passed],
            "checks": [c.to_dict() for c in ordered],
            "environment": _plain(self.environment),
        }


def _plain(value):
    """Convert numpy scalars/arrays and tuples into JSON-friendly values."""
    import numpy as np

    if isinstance(value, dict):
        return {str(k): _plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    if isinstance(value, np.ndarray):
        return _plain(value.tolist())
    if isinstance(value, (complex, np.complexfloating)):
        return ["%.6e" % value.real, "%.6e" % value.imag]
    if isinstance(value, (float, np.floating)):
        return "%.6e" % float(value)
    if isinstance(value, (np.integer,)):
        return int(value)
    if isinstance(value, np.bool_):
        return bool(value)
    return value
