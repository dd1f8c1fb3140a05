"""Row builders behind the command-line interface.

Each command produces a list of flat rows plus a :class:`RunManifest`; the
writers embed the manifest in every output file.  Exact quantities are
always emitted as fraction strings.
"""

from __future__ import annotations

import csv
import io
import json
import math
import os
import re
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from datetime import datetime, timezone
from fractions import Fraction
from typing import Any, Callable, Iterable, Sequence

from . import __version__
from .euler_family import (
    ApproximantPair,
    diophantine_scaler_check,
    euler_mixed,
    euler_p_family,
    euler_p_family_rodrigues,
    laguerre1_typeI,
    pilehrood_pair,
)
from .exact_core import ConsistencyError, binomial, harmonic, lcm_upto
from .gompertz_family import gompertz_integrality_check, gompertz_pair
from .laguerre import four_term_check
from .oracles import ConstantId, linear_form_quality
from .recurrences import (
    AsymptoticModel,
    euler_error_model,
    gompertz_error_model,
    load_recurrence,
    p_family_error_model,
    pilehrood_error_model,
    recurrence_residual,
)


class UsageError(ValueError):
    """Bad command-line input; maps to exit code 2."""


# -- families -----------------------------------------------------------------

_FAMILY_RE = re.compile(r"^(euler|gompertz|laguerre1|euler-p|pilehrood)(?::(\d+))?$")


@dataclass(frozen=True)
class FamilySpec:
    name: str
    parameter: int | None = None

    def __str__(self) -> str:
        return self.name if self.parameter is None else f"{self.name}:{self.parameter}"

    @property
    def targets_gamma(self) -> bool:
        return self.name != "gompertz"

    def pair(self, n: int) -> ApproximantPair:
        if self.name == "euler":
            return euler_mixed(n)
        if self.name == "gompertz":
            return gompertz_pair(n)
        if self.name == "laguerre1":
            return laguerre1_typeI(n)
        if self.name == "euler-p":
            return euler_p_family(n, self.parameter)
        return pilehrood_pair(n, self.parameter)

    def constant(self, x: Fraction) -> ConstantId:
        return ConstantId.gamma_plus_ln(x) if self.targets_gamma else ConstantId.exp_e1(x)

    def error_model(self, x: Fraction) -> AsymptoticModel:
        if self.name == "euler" or (self.name == "euler-p" and self.parameter == 1):
            return euler_error_model(x)
        if self.name == "gompertz":
            return gompertz_error_model(x)
        if self.name == "laguerre1":
            return p_family_error_model(0, x)
        if self.name == "euler-p":
            return p_family_error_model(self.parameter, x)
        return pilehrood_error_model(self.parameter)

    def integer_scaler(self, n: int, x: Fraction) -> int:
        """An integer M with ``M F1(x)`` and ``M F2(x)`` both integral.

        ``n! lcm(1..n) b^n`` for the gamma families and ``n! b^n`` for the
        Gompertz family when ``x = a/b``; ``lcm(1..n)`` for the baseline.
        """
        if self.name == "pilehrood":
            return lcm_upto(n)
        base = math.factorial(n) * x.denominator**n
        return base if self.name == "gompertz" else base * lcm_upto(n)


def parse_family(text: str) -> FamilySpec:
    m = _FAMILY_RE.match(text.strip())
    if not m:
        raise UsageError(f"unknown family {text!r}; expected euler|gompertz|laguerre1|euler-p:<p>|pilehrood:<a>")
    name, param = m.group(1), m.group(2)
    if name in ("euler-p", "pilehrood"):
        if param is None:
            raise UsageError(f"family {name} needs a parameter, e.g. {name}:2")
        value = int(param)
        if name == "pilehrood" and value < 1:
            raise UsageError("pilehrood parameter a must be >= 1")
        return FamilySpec(name, value)
    if param is not None:
        raise UsageError(f"family {name} takes no parameter")
    return FamilySpec(name)


def parse_rational(text: str) -> Fraction:
    try:
        value = Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"not a rational number: {text!r}") from None
    if value <= 0:
        raise UsageError("x must be positive")
    return value


def parse_int_list(text: str) -> list[int]:
    """``"1,2,8"`` or ranges ``"0..10"``; the empty string is the empty list."""
    out: list[int] = []
    for part in (p.strip() for p in text.split(",")):
        if not part:
            continue
        try:
            if ".." in part:
                lo, hi = part.split("..", 1)
                out.extend(range(int(lo), int(hi) + 1))
            else:
                out.append(int(part))
        except ValueError:
            raise UsageError(f"bad integer list entry {part!r}") from None
    if any(v < 0 for v in out):
        raise UsageError("indices must be nonnegative")
    return out


# -- manifest and writers -------------------------------------------------------


def default_timestamp() -> str:
    """``SOURCE_DATE_EPOCH`` when set (reproducible builds), else the current UTC time."""
    epoch = os.environ.get("SOURCE_DATE_EPOCH")
    moment = datetime.fromtimestamp(int(epoch), timezone.utc) if epoch else datetime.now(timezone.utc)
    return moment.replace(microsecond=0).isoformat()


@dataclass(frozen=True)
class RunManifest:
    command: str
    family: str
    parameter: int | None
    x: str
    n_range: str
    precision_bits: int
    output_format: str
    tool_version: str = __version__
    timestamp: str = ""


def format_n_range(ns: Sequence[int]) -> str:
    if not ns:
        return ""
    if list(ns) == list(range(ns[0], ns[-1] + 1)) and len(ns) > 2:
        return f"{ns[0]}..{ns[-1]}"
    return ",".join(str(n) for n in ns)


@dataclass
class Table:
    manifest: RunManifest
    columns: tuple[str, ...]
    rows: list[dict[str, Any]]
    extra: dict[str, Any] = field(default_factory=dict)


def _csv_cell(value: Any) -> str:
    if value is None:
        return ""
    if isinstance(value, (list, tuple)):
        return ";".join(str(v) for v in value)
    return str(value) if not isinstance(value, float) else repr(value)


def render_csv(table: Table) -> str:
    buf = io.StringIO()
    for key, value in asdict(table.manifest).items():
        buf.write(f"# {key}: {'' if value is None else value}\n")
    for key, value in table.extra.items():
        buf.write(f"# {key}: {json.dumps(value, sort_keys=True)}\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(table.columns)
    for row in table.rows:
        writer.writerow([_csv_cell(row[c]) for c in table.columns])
    return buf.getvalue()


def render_json(table: Table) -> str:
    doc = {
        "manifest": asdict(table.manifest),
        "columns": list(table.columns),
        "rows": [{c: row[c] for c in table.columns} for row in table.rows],
    }
    doc.update(table.extra)
    return json.dumps(doc, indent=1) + "\n"


def render(table: Table) -> str:
    return render_json(table) if table.manifest.output_format == "json" else render_csv(table)


def read_csv_table(text: str) -> tuple[dict[str, str], list[dict[str, str]]]:
    """Inverse of :func:`render_csv` (values stay strings)."""
    meta: dict[str, str] = {}
    body = []
    for line in text.splitlines():
        if line.startswith("# "):
            key, _, value = line[2:].partition(": ")
            meta[key] = value
        else:
            body.append(line)
    return meta, list(csv.DictReader(body))


def _parallel_map(fn: Callable, items: Sequence, jobs: int) -> list:
    if jobs <= 1 or len(items) <= 1:
        return [fn(i) for i in items]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, items))


# -- build --------------------------------------------------------------------

BUILD_COLUMNS = ("n", "F1_coeffs", "F2_coeffs")


def build_row(family: FamilySpec, n: int) -> dict[str, Any]:
    pair = family.pair(n)
    f1 = [str(c) for c in pair.numerator.coeffs] or ["0"]
    f2 = [str(c) for c in pair.denominator.coeffs] or ["0"]
    return {"n": n, "F1_coeffs": f1, "F2_coeffs": f2}


# -- converge -----------------------------------------------------------------

CONVERGE_COLUMNS = ("n", "log_denom", "log_abs_error", "slope_predicted", "slope_gap", "r_measured")


@dataclass(frozen=True)
class SweepRow:
    """One convergence measurement.

    ``log_denom = ln F2(x)``; ``log_abs_error = ln|c(x) + F1(x)/F2(x)|``;
    ``slope_predicted`` is the modelled value of ``-log_abs_error`` and
    ``slope_gap`` the measured minus the modelled value.  ``r_measured`` is
    ``-ln|Q c - P| / ln Q`` for the integer-scaled form, None when Q = 1.
    """

    n: int
    x: str
    denom_at_x: str
    log_denom: float
    log_abs_error: float
    slope_predicted: float | None
    slope_gap: float | None
    r_measured: float | None
    precision_used: int

    def as_row(self) -> dict[str, Any]:
        return {c: getattr(self, c) for c in CONVERGE_COLUMNS}


def _ln_positive(q: Fraction) -> float:
    return math.log(q.numerator) - math.log(q.denominator)


def converge_row(family: FamilySpec, n: int, x: Fraction, precision_bits: int) -> SweepRow:
    f1, f2 = family.pair(n).evaluate(x)
    return row_from_values(family, n, x, f1, f2, precision_bits)


def row_from_values(family: FamilySpec, n: int, x: Fraction, f1: Fraction, f2: Fraction, precision_bits: int) -> SweepRow:
    """Measurement from exact values ``F1(x), F2(x)`` however they were obtained."""
    scale = family.integer_scaler(n, x)
    P, Q = -f1 * scale, f2 * scale
    if P.denominator != 1 or Q.denominator != 1:
        raise ConsistencyError(f"scaler failed to clear denominators for {family} at n={n}")
    quality = linear_form_quality(P, Q, family.constant(x), precision_bits)
    log_abs_error = quality.log_error - quality.log_q
    predicted = gap = None
    if n > 0:
        predicted = -family.error_model(x).predicted_log(n)
        gap = -log_abs_error - predicted
    return SweepRow(
        n=n,
        x=str(x),
        denom_at_x=str(f2),
        log_denom=_ln_positive(f2),
        log_abs_error=log_abs_error,
        slope_predicted=predicted,
        slope_gap=gap,
        r_measured=quality.r_measured,
        precision_used=quality.precision_bits,
    )


def _converge_job(args: tuple) -> SweepRow:
    family, n, x, bits = args
    return converge_row(family, n, x, bits)


def converge_rows(
    family: FamilySpec,
    ns: Sequence[int],
    x: Fraction,
    precision_bits: int,
    x_scale_n: bool = False,
    jobs: int = 1,
) -> list[SweepRow]:
    """Rows in n-order; with ``x_scale_n`` the argument at index n is ``x * n`` (n >= 1)."""
    jobs_args = [(family, n, x * n if x_scale_n and n > 0 else x, precision_bits) for n in ns]
    return _parallel_map(_converge_job, jobs_args, jobs)


# -- baseline -----------------------------------------------------------------

BASELINE_COLUMNS = ("n", "family", "log_abs_error", "error_slope", "r_measured")


def baseline_families(a_list: Iterable[int], p_list: Iterable[int]) -> list[FamilySpec]:
    fams = [FamilySpec("pilehrood", a) for a in a_list]
    fams += [FamilySpec("euler-p", p) for p in p_list]
    return fams + [FamilySpec("euler"), FamilySpec("gompertz")]


def _baseline_job(args: tuple) -> dict[str, Any]:
    family, n, bits = args
    row = converge_row(family, n, Fraction(1), bits)
    return {
        "n": n,
        "family": str(family),
        "log_abs_error": row.log_abs_error,
        "error_slope": -row.log_abs_error,
        "r_measured": row.r_measured,
    }


def baseline_rows(
    ns: Sequence[int], a_list: Sequence[int], p_list: Sequence[int], precision_bits: int, jobs: int = 1
) -> list[dict[str, Any]]:
    fams = baseline_families(a_list, p_list)
    return _parallel_map(_baseline_job, [(f, n, precision_bits) for n in ns for f in fams], jobs)


# -- verify -------------------------------------------------------------------

VERIFY_SUITES = ("recurrence", "integrality", "crosscheck", "laguerre")
VERIFY_COLUMNS = ("suite", "checks", "passed", "first_counterexample", "anomalies")


@dataclass
class VerifyReport:
    suite: str
    checks: int = 0
    first_counterexample: str | None = None
    anomalies: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.first_counterexample is None

    def check(self, ok: bool, label: str) -> None:
        self.checks += 1
        if not ok and self.first_counterexample is None:
            self.first_counterexample = label

    def as_row(self) -> dict[str, Any]:
        return {
            "suite": self.suite,
            "checks": self.checks,
            "passed": self.passed,
            "first_counterexample": self.first_counterexample,
            "anomalies": list(self.anomalies),
        }


def _values_at_one(family: FamilySpec, ns: Sequence[int]) -> dict[int, tuple[Fraction, Fraction]]:
    need = sorted({n + j for n in ns for j in range(5)})
    return {m: family.pair(m).evaluate(1) for m in need}


def verify_recurrence(ns: Sequence[int], families: Sequence[FamilySpec] | None = None) -> VerifyReport:
    report = VerifyReport("recurrence")
    for fam in families or (FamilySpec("euler"), FamilySpec("gompertz")):
        if fam.name not in ("euler", "gompertz"):
            raise UsageError("recurrence tables exist for the euler and gompertz families only")
        spec = load_recurrence(fam.name)
        values = _values_at_one(fam, ns)
        for n in ns:
            for idx, label in ((1, "F2"), (0, "F1")):
                terms = [values[n + j][idx] for j in range(5)]
                res = recurrence_residual(spec, terms, n)
                report.check(res == 0, f"{fam} {label} n={n} residual={res}")
    return report


def verify_integrality(ns: Sequence[int], families: Sequence[FamilySpec] | None = None) -> VerifyReport:
    """Scaler checks.  For p >= 2 the numerator claim is conjectural, so a
    failure there is listed as an anomaly instead of failing the suite."""
    report = VerifyReport("integrality")
    for fam in families or (FamilySpec("euler"), FamilySpec("gompertz")):
        for n in ns:
            if fam.name == "gompertz":
                g = gompertz_integrality_check(n)
                report.check(g.ok, f"gompertz n={n} numerator_ok={g.numerator_ok} denominator_ok={g.denominator_ok}")
                continue
            if fam.name == "pilehrood":
                raise UsageError("integrality suite covers euler, laguerre1, euler-p and gompertz")
            r = diophantine_scaler_check(fam.pair(n))
            report.check(r.denominator_scaler_ok, f"{fam} n={n} n!*F2 not integral")
            conjectural = fam.name == "euler-p" and fam.parameter >= 2
            if conjectural and not r.numerator_scaler_ok:
                report.anomalies.append(f"{fam} n={n} minimal multiplier {r.minimal_numerator_multiplier}")
                report.checks += 1
            else:
                report.check(r.numerator_scaler_ok, f"{fam} n={n} n!*lcm(1..n)*F1 not integral")
    return report


def harmonic_binomial_identity(n: int, k: int) -> bool:
    lhs = binomial(n + k, k) * (harmonic(n + k) - harmonic(k))
    rhs = -sum(Fraction(binomial(n + k, n - l) * (-1) ** l, l) for l in range(1, n + 1))
    return lhs == rhs


def _same(a: ApproximantPair, b: ApproximantPair) -> bool:
    return (a.numerator, a.denominator) == (b.numerator, b.denominator)


def verify_crosscheck(ns: Sequence[int]) -> VerifyReport:
    report = VerifyReport("crosscheck")
    for n in ns:
        mixed = euler_mixed(n)
        report.check(_same(mixed, euler_p_family_rodrigues(n, 1)), f"n={n} closed form != Rodrigues of L_I")
        report.check(_same(euler_p_family(n, 1), mixed), f"n={n} p-family(p=1) != mixed")
        report.check(_same(euler_p_family(n, 0), laguerre1_typeI(n)), f"n={n} p-family(p=0) != L_I")
        report.check(_same(euler_p_family(n, 2), euler_p_family_rodrigues(n, 2)), f"n={n} p=2 residue form != Rodrigues")
        try:
            gompertz_pair(n)
            ok = True
        except ConsistencyError:
            ok = False
        report.check(ok, f"n={n} Gompertz pipeline denominator mismatch")
        for k in range(n + 1):
            report.check(harmonic_binomial_identity(n, k), f"n={n} k={k} harmonic/binomial identity")
    return report


def verify_laguerre(ns: Sequence[int]) -> VerifyReport:
    report = VerifyReport("laguerre")
    for n in ns:
        res = four_term_check(n)
        report.check(res.is_zero(), f"n={n} residual {res}")
    return report


def run_verify(suite: str, ns: Sequence[int], family: FamilySpec | None = None) -> VerifyReport:
    fams = None if family is None else (family,)
    if suite == "recurrence":
        return verify_recurrence(ns, fams)
    if suite == "integrality":
        return verify_integrality(ns, fams)
    if suite == "crosscheck":
        return verify_crosscheck(ns)
    if suite == "laguerre":
        return verify_laguerre(ns)
    raise UsageError(f"unknown suite {suite!r}")
