"""
Case configurations and verification reports.

Reports serialize to a fixed JSON schema and to a one-row-per-case CSV
summary. Wall time is left out unless timings are requested, so reruns with
the same configuration produce identical files.
"""

import csv
import io
import json
import logging
import math
import os
from typing import Any, Dict, List, Optional

from pydantic import BaseModel, ConfigDict, Field

from functionals.estimates import MCEstimate, z_score

logger = logging.getLogger(__name__)

OUTPUT_FORMATS = ("json", "csv")


class CaseConfig(BaseModel):
    """Parameters of one verification case."""

    model_config = ConfigDict(extra="forbid", frozen=True)

    case: str
    body: Optional[str] = None
    dim: Optional[int] = Field(default=None, ge=1)
    l: Optional[int] = Field(default=None, ge=0)
    k: Optional[int] = Field(default=None, ge=0)
    moment: Optional[int] = Field(default=None, ge=0)
    h_power: Optional[int] = Field(default=None, ge=1)
    point_function: Optional[str] = None
    point_power: Optional[float] = None
    plane_weight: Optional[str] = None
    n_samples: int = Field(default=100_000, ge=1)
    seed: int = 7
    shards: int = Field(default=1, ge=1)
    stream_id: int = Field(default=0, ge=0)
    z_threshold: float = Field(default=4.0, gt=0)
    rejection_cap: float = Field(default=1e-3, ge=0)
    # Read by thm1 only; other cases reject values other than 1
    prefactor_scale: float = 1.0


class EstimateModel(BaseModel):
    """Serialized form of an MCEstimate."""

    mean: float
    se: float
    n: int
    rejections: int = 0

    @classmethod
    def from_estimate(cls, estimate: MCEstimate) -> "EstimateModel":
        return cls(
            mean=estimate.mean,
            se=estimate.standard_error,
            n=estimate.sample_count,
            rejections=estimate.degenerate_rejections,
        )

    def to_estimate(self) -> MCEstimate:
        return MCEstimate(
            mean=self.mean,
            standard_error=self.se,
            sample_count=self.n,
            degenerate_rejections=self.rejections,
        )


class TermModel(EstimateModel):
    """A named term of a right (or left) side."""

    name: str


class VerificationReport(BaseModel):
    """Outcome of one case: both sides, their z-score and the pass flag."""

    model_config = ConfigDict(populate_by_name=True)

    case: str
    config: CaseConfig
    lhs: EstimateModel
    rhs: EstimateModel
    terms: List[TermModel] = Field(default_factory=list)
    z: float
    passed: bool = Field(alias="pass")
    rejections: float = 0.0
    low_power: bool = False
    extras: Dict[str, float] = Field(default_factory=dict)
    error: Optional[str] = None
    seconds: Optional[float] = None

    @classmethod
    def compare(
        cls,
        config: CaseConfig,
        lhs: MCEstimate,
        rhs: MCEstimate,
        terms: Optional[Dict[str, MCEstimate]] = None,
        extras: Optional[Dict[str, float]] = None,
        low_power_samples: int = 0,
        exact_tolerance: float = 1e-12,
    ) -> "VerificationReport":
        """Build a report from the two sides of an identity.

        The case passes when |z| <= z_threshold and every side's rejection
        fraction is below the rejection cap. Exact sides agree when their
        relative difference is within `exact_tolerance`.
        """
        z = z_score(lhs, rhs, exact_tolerance)
        estimates = [lhs, rhs] + list((terms or {}).values())
        rejection = max(estimate.rejection_fraction for estimate in estimates)
        passed = abs(z) <= config.z_threshold and rejection < config.rejection_cap
        return cls(
            case=config.case,
            config=config,
            lhs=EstimateModel.from_estimate(lhs),
            rhs=EstimateModel.from_estimate(rhs),
            terms=[
                TermModel(name=name, **EstimateModel.from_estimate(estimate).model_dump())
                for name, estimate in (terms or {}).items()
            ],
            z=z,
            passed=passed,
            rejections=rejection,
            low_power=config.n_samples < low_power_samples,
            extras=dict(extras or {}),
        )

    @classmethod
    def failure(cls, config: CaseConfig, error: str) -> "VerificationReport":
        """A failing report for a case that could not be evaluated."""
        empty = EstimateModel(mean=math.nan, se=math.nan, n=0)
        return cls(
            case=config.case,
            config=config,
            lhs=empty,
            rhs=empty,
            z=math.nan,
            passed=False,
            error=error,
        )

    def to_record(self, timings: bool = False) -> Dict[str, Any]:
        exclude = None if timings else {"seconds"}
        return self.model_dump(by_alias=True, exclude=exclude)

    def summary_line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        if self.error:
            return f"{status} {self.case}: {self.error}"
        return (
            f"{status} {self.case}: lhs={self.lhs.mean:.6g} ± {self.lhs.se:.2g}, "
            f"rhs={self.rhs.mean:.6g} ± {self.rhs.se:.2g}, z={self.z:+.2f}"
        )


CSV_COLUMNS = [
    "case",
    "body",
    "dim",
    "n_samples",
    "seed",
    "lhs",
    "lhs_se",
    "rhs",
    "rhs_se",
    "z",
    "pass",
    "rejections",
    "low_power",
    "error",
]


def _csv_row(report: VerificationReport, timings: bool) -> Dict[str, Any]:
    row = {
        "case": report.case,
        "body": report.config.body or "",
        "dim": "" if report.config.dim is None else report.config.dim,
        "n_samples": report.config.n_samples,
        "seed": report.config.seed,
        "lhs": repr(report.lhs.mean),
        "lhs_se": repr(report.lhs.se),
        "rhs": repr(report.rhs.mean),
        "rhs_se": repr(report.rhs.se),
        "z": repr(report.z),
        "pass": report.passed,
        "rejections": repr(report.rejections),
        "low_power": report.low_power,
        "error": report.error or "",
    }
    if timings:
        row["seconds"] = "" if report.seconds is None else f"{report.seconds:.3f}"
    return row


def render_reports(
    reports: List[VerificationReport], fmt: str = "json", timings: bool = False
) -> str:
    """Render reports as a JSON array or a CSV summary."""
    if fmt == "json":
        records = [report.to_record(timings) for report in reports]
        return json.dumps(records, indent=2, sort_keys=True, allow_nan=True) + "\n"
    if fmt == "csv":
        columns = CSV_COLUMNS + (["seconds"] if timings else [])
        buffer = io.StringIO()
        writer = csv.DictWriter(buffer, fieldnames=columns, lineterminator="\n")
        writer.writeheader()
        for report in reports:
            writer.writerow(_csv_row(report, timings))
        return buffer.getvalue()
    raise ValueError(f"Unknown output format '{fmt}', expected one of {OUTPUT_FORMATS}")


def write_reports(
    reports: List[VerificationReport], path: str, fmt: str = "json", timings: bool = False
) -> str:
    """Write reports to `path`, creating parent directories. Returns the path."""
    directory = os.path.dirname(path)
    if directory:
        os.makedirs(directory, exist_ok=True)
    with open(path, "w", encoding="utf-8") as handle:
        handle.write(render_reports(reports, fmt, timings))
    logger.info(f"Wrote {len(reports)} report(s) to {path}")
    return path


def load_reports(path: str) -> List[VerificationReport]:
    """Read reports written in JSON format."""
    with open(path, encoding="utf-8") as handle:
        records = json.load(handle)
    return [VerificationReport.model_validate(record) for record in records]
