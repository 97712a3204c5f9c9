"""End-to-end curve analysis: oracle runs, formula cross-checks, and
the report structure consumed by the command line front end.

An analysis runs the linear-algebra oracle (Milnor series, syzygy
resolution, Hilbert vector of N(f)), classifies the curve, evaluates
every closed-form prediction that applies, and records each comparison
as pass / fail / n-a.  Over a random prime field the whole pipeline is
executed under two independent primes and the integer outputs must
agree, which makes an unlucky prime detectable.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, replace

from .curves import (
    BundleInvariants,
    CurveClass,
    MetadataError,
    PENCIL,
    bundle_invariants,
    central_value,
    central_window,
    classify,
    defect_stable_degree,
    hartshorne_bound,
    max_tjurina_tau,
    maximal_tjurina_vector,
    nodal_values,
    plateau_window,
    plus_one_vector,
    three_syzygy_vector,
)
from .fields import Field, prime_field, prime_pair, rational_field, validate_prime_for_degree
from .jacobian import (
    CoincidenceThreshold,
    CurveJacobian,
    InternalConsistencyError,
    MilnorProfile,
    ModuleVector,
    smooth_reference,
)
from .poly import TernaryForm, parse_form
from .resolution import PencilOfLinesError, ResolutionProfile, resolve

PASS = "pass"
FAIL = "fail"
NA = "n/a"

SCHEMA = "jacmod-report/1"


class AnalysisError(ValueError):
    """The requested analysis cannot be carried out as specified."""


@dataclass(frozen=True)
class NodalData:
    """User-declared nodal metadata: every singularity is an ordinary
    double point, with the given node and irreducible component counts."""

    nodes: int
    components: int
    all_rational: bool


@dataclass(frozen=True)
class CheckResult:
    name: str
    status: str  # pass | fail | n/a
    detail: str = ""


@dataclass(frozen=True)
class CurveReport:
    curve: str
    field_labels: tuple[str, ...]
    degree: int
    top: int | None  # T = 3(d-2); None when the vector is undefined (d = 1)
    tjurina: int | None
    milnor: tuple[int, ...] | None
    mdr: int | None
    exponents: tuple[int, ...]
    second_degrees: tuple[int, ...]
    epsilons: tuple[int, ...]
    sigma: int | None
    nu: int | None
    vector: tuple[int, ...] | None
    vector_source: str  # oracle | formula | none
    classification: CurveClass
    bundle: BundleInvariants | None
    hartshorne: int | None
    coincidence: CoincidenceThreshold | None
    checks: tuple[CheckResult, ...]
    timings: tuple[tuple[str, float], ...]

    @property
    def passed(self) -> bool:
        return all(c.status != FAIL for c in self.checks)

    def to_json_dict(self) -> dict:
        return {
            "schema": SCHEMA,
            "curve": self.curve,
            "fields": list(self.field_labels),
            "degree": self.degree,
            "top": self.top,
            "tjurina": self.tjurina,
            "milnor": list(self.milnor) if self.milnor is not None else None,
            "mdr": self.mdr,
            "exponents": list(self.exponents),
            "second_degrees": list(self.second_degrees),
            "epsilons": list(self.epsilons),
            "sigma": self.sigma,
            "nu": self.nu,
            "vector": list(self.vector) if self.vector is not None else None,
            "vector_source": self.vector_source,
            "classification": {
                "tag": self.classification.tag,
                "m": self.classification.m,
                "level": self.classification.level,
                "maximal_tjurina": self.classification.maximal_tjurina,
                "stable": self.classification.stable,
                "semistable": self.classification.semistable,
            },
            "bundle": None
            if self.bundle is None
            else {"c1": self.bundle.c1, "c2": self.bundle.c2},
            "hartshorne_bound": self.hartshorne,
            "coincidence_threshold": None
            if self.coincidence is None
            else {"value": self.coincidence.value, "censored": self.coincidence.censored},
            "checks": [
                {"name": c.name, "status": c.status, "detail": c.detail} for c in self.checks
            ],
            "passed": self.passed,
            # fixed-point strings: decimal everywhere, no scientific notation
            "timings": {name: f"{seconds:.6f}" for name, seconds in self.timings},
        }

    def plot_rows(self) -> list[tuple[int, int, str]]:
        if self.vector is None:
            raise AnalysisError("no Hilbert vector available for this input")
        return [(k, n, self.vector_source) for k, n in enumerate(self.vector)]


@dataclass(frozen=True)
class AnalysisOptions:
    field: str = "gfp"  # gfp | gfp:<prime> | rational
    seed: int = 0
    max_degree_cap: int = 20
    skip_oracle: bool = False
    exponents: tuple[int, ...] | None = None
    tau: int | None = None
    nodal: NodalData | None = None


# ---------------------------------------------------------------------------
# cross-check matrix
# ---------------------------------------------------------------------------


def _vector_mismatch(oracle: tuple[int, ...], predicted: list[int]) -> str:
    bad = [k for k in range(len(oracle)) if oracle[k] != predicted[k]]
    k = bad[0]
    return f"first mismatch at degree {k}: oracle {oracle[k]}, formula {predicted[k]}"


def cross_check(
    jac: CurveJacobian,
    milnor: MilnorProfile,
    prof: ResolutionProfile,
    vec: ModuleVector,
    cls: CurveClass,
    ct: CoincidenceThreshold,
    nodal: NodalData | None,
) -> list[CheckResult]:
    """Every applicable closed-form statement versus the oracle."""
    d = jac.degree
    T = vec.top
    half = T // 2
    tau = milnor.tjurina
    r = prof.mdr
    n = vec.values
    checks: list[CheckResult] = []

    def add(name: str, status: str, detail: str = "") -> None:
        checks.append(CheckResult(name, status, detail))

    # duality of N(f)
    bad = [k for k in range(T + 1) if n[k] != n[T - k]]
    add(
        "symmetry",
        PASS if not bad else FAIL,
        "" if not bad else f"n_{bad[0]} != n_{T - bad[0]}",
    )

    rising = n[: half + 1]
    ok = all(a <= b for a, b in zip(rising, rising[1:]))
    add("unimodality", PASS if ok else FAIL)

    # support is exactly [sigma, T - sigma]
    if vec.sigma is None:
        ok = all(v == 0 for v in n)
        add("support-window", PASS if ok else FAIL, "free curve must have N(f) = 0")
    else:
        s = vec.sigma
        ok = (
            all(n[k] == 0 for k in range(s))
            and all(n[k] == 0 for k in range(T - s + 1, T + 1))
            and n[s] > 0
            and n[T - s] > 0
        )
        add("support-window", PASS if ok else FAIL)

    # sigma from the resolution equals sigma read off the vector
    if vec.sigma == prof.sigma:
        add("sigma-resolution", PASS)
    else:
        add("sigma-resolution", FAIL, f"vector says {vec.sigma}, resolution says {prof.sigma}")

    # resolution balance: ranks and twists reproduce the Milnor series
    def dim_s(k: int) -> int:
        return (k + 2) * (k + 1) // 2 if k >= 0 else 0

    balanced = True
    for k in range(len(milnor.values)):
        total = dim_s(k) - 3 * dim_s(k - d + 1)
        total += sum(dim_s(k - d + 1 - di) for di in prof.exponents)
        total -= sum(dim_s(k - ej) for ej in prof.second_degrees)
        if total != milnor.values[k]:
            balanced = False
            break
    add("resolution-balance", PASS if balanced else FAIL)

    free = cls.tag == "free"

    # central parabola (2r >= d) or central plateau (2r < d)
    if free:
        add("central-window", NA, "free curve")
        add("central-plateau", NA, "free curve")
    elif 2 * r >= d:
        lo, hi = central_window(d, r)
        bad = [
            j
            for j in range(max(lo, 0), min(hi, T) + 1)
            if n[j] != central_value(d, tau, j)
        ]
        add(
            "central-window",
            PASS if not bad else FAIL,
            "" if not bad else f"first mismatch at degree {bad[0]}",
        )
        add("central-plateau", NA, "2 mdr >= d")
    else:
        lo, hi = plateau_window(d, r)
        ok = all(n[j] == vec.nu for j in range(lo, hi + 1))
        for edge in (lo - 1, hi + 1):
            if 0 <= edge <= T:
                ok = ok and n[edge] == vec.nu - 1
        add("central-plateau", PASS if ok else FAIL)
        add("central-window", NA, "2 mdr < d")

    # class-specific full vectors
    if cls.tag == "smooth":
        ref = smooth_reference(d)[: T + 1]
        ok = tuple(ref) == n and tau == 0
        add("smooth-vector", PASS if ok else FAIL)
    else:
        add("smooth-vector", NA)

    if free:
        d1, d2 = prof.exponents
        ok = d1 + d2 == d - 1 and tau == (d - 1) ** 2 - d1 * d2 and all(v == 0 for v in n)
        add("free-relations", PASS if ok else FAIL)
    else:
        add("free-relations", NA)

    if cls.tag in ("nearly-free", "plus-one-generated"):
        predicted = plus_one_vector(d, prof.exponents)  # type: ignore[arg-type]
        ok = tuple(predicted) == n
        add("plus-one-vector", PASS if ok else FAIL, "" if ok else _vector_mismatch(n, predicted))
    else:
        add("plus-one-vector", NA)

    if cls.tag == "three-syzygy":
        predicted = three_syzygy_vector(d, prof.exponents, tau)  # type: ignore[arg-type]
        ok = tuple(predicted) == n
        add(
            "three-syzygy-vector",
            PASS if ok else FAIL,
            "" if ok else _vector_mismatch(n, predicted),
        )
    else:
        add("three-syzygy-vector", NA)

    if cls.maximal_tjurina and 2 * r >= d:
        predicted = maximal_tjurina_vector(d, r, tau)
        ok = tuple(predicted) == n
        add(
            "maximal-tjurina-vector",
            PASS if ok else FAIL,
            "" if ok else _vector_mismatch(n, predicted),
        )
    else:
        add("maximal-tjurina-vector", NA, "" if cls.maximal_tjurina else "not maximal")

    # semistability-range lower bound for sigma, with equality at maximal tau
    if free:
        add("hartshorne-bound", NA, "free curve")
    elif 2 * r >= d - 1:
        bound = hartshorne_bound(d, r, tau)
        ok = vec.sigma is not None and vec.sigma >= bound
        if ok and cls.maximal_tjurina and 2 * r >= d:
            ok = vec.sigma == bound
        add(
            "hartshorne-bound",
            PASS if ok else FAIL,
            f"sigma {vec.sigma} vs bound {bound}",
        )
    else:
        add("hartshorne-bound", NA, "2 mdr < d - 1")

    if 2 * r >= d:
        b = bundle_invariants(d, r, tau)
        ok = b.c2 == vec.nu
        add("second-chern-is-nu", PASS if ok else FAIL, f"c2 {b.c2}, nu {vec.nu}")
    else:
        add("second-chern-is-nu", NA, "bundle not stable")

    # coincidence threshold never ends before d - 2 + r
    ok = ct.value >= d - 2 + r
    add("coincidence-threshold", PASS if ok else FAIL, f"ct {ct.value}, floor {d - 2 + r}")

    # saturation defect stabilizes to tau from degree 2d-4-r on
    start = max(defect_stable_degree(d, r), 0)
    ok = all(
        dim_s(k) - jac.saturation_dimension(k) == tau for k in range(start, T + 1)
    )
    add("saturation-defect", PASS if ok else FAIL)

    if nodal is None:
        add("nodal-mdr", NA)
        add("nodal-vector", NA)
    else:
        if nodal.nodes != tau:
            raise MetadataError(
                f"declared {nodal.nodes} nodes but the Tjurina number is {tau}; "
                "the curve cannot be nodal as described"
            )
        add("nodal-mdr", PASS if r >= d - 2 else FAIL, f"mdr {r}, floor {d - 2}")
        vals = nodal_values(
            d, smooth_reference(d), nodal.nodes, nodal.components, nodal.all_rational
        )
        bad = [k for k, v in sorted(vals.items()) if n[k] != v]
        add(
            "nodal-vector",
            PASS if not bad else FAIL,
            ""
            if not bad
            else f"first mismatch at degree {bad[0]}: oracle {n[bad[0]]}, formula {vals[bad[0]]}",
        )

    return checks


# ---------------------------------------------------------------------------
# oracle pipeline (one field)
# ---------------------------------------------------------------------------


def _field_label(field: Field) -> str:
    if field.config.kind == "gfp":
        return f"gfp:{field.config.modulus}"
    return "rational"


def _analyze_over_field(
    text: str, field: Field, nodal: NodalData | None
) -> CurveReport:
    timings: list[tuple[str, float]] = []
    t0 = time.perf_counter()
    f = parse_form(text, field)
    jac = CurveJacobian(f)
    d = jac.degree

    if d == 1:
        return CurveReport(
            curve=text,
            field_labels=(_field_label(field),),
            degree=1,
            top=None,
            tjurina=0,
            milnor=None,
            mdr=0,
            exponents=(),
            second_degrees=(),
            epsilons=(),
            sigma=None,
            nu=None,
            vector=None,
            vector_source="none",
            classification=PENCIL,
            bundle=None,
            hartshorne=None,
            coincidence=None,
            checks=(),
            timings=(("total", time.perf_counter() - t0),),
        )

    t = time.perf_counter()
    milnor = jac.milnor_hilbert()
    timings.append(("milnor", time.perf_counter() - t))

    t = time.perf_counter()
    try:
        prof = resolve(jac, milnor)
    except PencilOfLinesError:
        return CurveReport(
            curve=text,
            field_labels=(_field_label(field),),
            degree=d,
            top=milnor.top,
            tjurina=milnor.tjurina,
            milnor=milnor.values,
            mdr=0,
            exponents=(),
            second_degrees=(),
            epsilons=(),
            sigma=None,
            nu=None,
            vector=None,
            vector_source="none",
            classification=PENCIL,
            bundle=None,
            hartshorne=None,
            coincidence=None,
            checks=(),
            timings=tuple(timings) + (("total", time.perf_counter() - t0),),
        )
    timings.append(("resolution", time.perf_counter() - t))

    t = time.perf_counter()
    vec = jac.module_vector()
    timings.append(("saturation", time.perf_counter() - t))

    cls = classify(d, prof, milnor.tjurina)
    ct = jac.coincidence_threshold()

    t = time.perf_counter()
    checks = cross_check(jac, milnor, prof, vec, cls, ct, nodal)
    timings.append(("cross-check", time.perf_counter() - t))
    timings.append(("total", time.perf_counter() - t0))

    r = prof.mdr
    bundle = bundle_invariants(d, r, milnor.tjurina)
    bound = (
        hartshorne_bound(d, r, milnor.tjurina)
        if 2 * r >= d - 1 and cls.tag != "free"
        else None
    )

    return CurveReport(
        curve=text,
        field_labels=(_field_label(field),),
        degree=d,
        top=vec.top,
        tjurina=milnor.tjurina,
        milnor=milnor.values,
        mdr=r,
        exponents=prof.exponents,
        second_degrees=prof.second_degrees,
        epsilons=prof.epsilons,
        sigma=vec.sigma,
        nu=vec.nu,
        vector=vec.values,
        vector_source="oracle",
        classification=cls,
        bundle=bundle,
        hartshorne=bound,
        coincidence=ct,
        checks=tuple(checks),
        timings=tuple(timings),
    )


def _comparable(report: CurveReport) -> tuple:
    """Every integer output that must be identical across primes."""
    return (
        report.degree,
        report.tjurina,
        report.milnor,
        report.mdr,
        report.exponents,
        report.second_degrees,
        report.epsilons,
        report.sigma,
        report.nu,
        report.vector,
        report.classification,
        None if report.coincidence is None else (report.coincidence.value, report.coincidence.censored),
        tuple((c.name, c.status) for c in report.checks),
    )


# ---------------------------------------------------------------------------
# formula-only pipeline (no linear algebra; for very large degree)
# ---------------------------------------------------------------------------


def _formula_report(
    text: str, d: int, exponents: tuple[int, ...], tau: int | None
) -> CurveReport:
    t0 = time.perf_counter()
    exps = tuple(sorted(exponents))
    if len(exps) < 2 or exps[0] < 1:
        raise AnalysisError("exponents must be at least two positive integers")
    m = len(exps)
    r = exps[0]
    T = 3 * (d - 2)

    if m == 2:
        d1, d2 = exps
        if d1 + d2 != d - 1:
            raise AnalysisError("a free curve needs d1 + d2 = d - 1")
        derived_tau = (d - 1) ** 2 - d1 * d2
        if tau is not None and tau != derived_tau:
            raise MetadataError(f"free exponents force tau = {derived_tau}, got {tau}")
        tau = derived_tau
        second: tuple[int, ...] = ()
        vector = [0] * (T + 1)
        sigma = None
    elif m == 3:
        d1, d2, d3 = exps
        second = (d1 + d2 + d3,)
        sigma = 3 * (d - 1) - second[0]
        if d1 + d2 == d and d3 >= d2:
            vector = plus_one_vector(d, exps)
        elif d1 + d2 > d:
            if 2 * d1 >= d and tau is None:
                raise AnalysisError(
                    "this exponent pattern needs the Tjurina number (pass --tau)"
                )
            vector = three_syzygy_vector(d, exps, tau)
        else:
            raise AnalysisError("exponents with d1 + d2 < d are not realizable")
    elif tau is not None and all(di == r for di in exps) and m == 2 * r - d + 3:
        if tau != max_tjurina_tau(d, r):
            raise AnalysisError(
                "many-syzygy formula evaluation is only available at maximal tau"
            )
        second = (d + r,) * (m - 2)
        sigma = 2 * d - r - 3
        vector = maximal_tjurina_vector(d, r, tau)
    else:
        raise AnalysisError(
            "formula-only mode handles 2 or 3 exponents, or the maximal "
            "Tjurina pattern; run the oracle for this curve"
        )

    epsilons = tuple(e - (d + exps[j + 2] - 1) for j, e in enumerate(second))
    if any(eps < 1 for eps in epsilons):
        raise AnalysisError("second-level degrees violate the minimality offsets")

    prof = ResolutionProfile(
        degree=d,
        mdr=r,
        exponents=exps,
        second_degrees=second,
        epsilons=epsilons,
        sigma=sigma if m > 2 else None,
        extended_window=False,
    )
    if tau is not None:
        try:
            cls = classify(d, prof, tau)
        except InternalConsistencyError as exc:
            # here the inputs are user-declared, not computed
            raise MetadataError(f"tau and exponents are inconsistent: {exc}") from exc
    else:
        # without tau only the exponent pattern is known
        d1, d2, d3 = exps
        if d1 + d2 == d and d2 == d3:
            tag = "nearly-free"
            level = None
        elif d1 + d2 == d:
            tag, level = "plus-one-generated", d3
        else:
            tag, level = "three-syzygy", None
        cls = CurveClass(tag, m, exps, level, False, 2 * r >= d, 2 * r >= d - 1)

    half = T // 2
    checks: list[CheckResult] = []
    ok = all(vector[k] == vector[T - k] for k in range(T + 1))
    checks.append(CheckResult("symmetry", PASS if ok else FAIL))
    rising = vector[: half + 1]
    ok = all(a <= b for a, b in zip(rising, rising[1:]))
    checks.append(CheckResult("unimodality", PASS if ok else FAIL))
    vec_sigma = next((k for k, v in enumerate(vector) if v), None)
    checks.append(
        CheckResult(
            "sigma-resolution",
            PASS if vec_sigma == prof.sigma else FAIL,
            f"vector says {vec_sigma}, resolution says {prof.sigma}",
        )
    )

    bundle = bundle_invariants(d, r, tau) if tau is not None else None
    bound = (
        hartshorne_bound(d, r, tau) if tau is not None and 2 * r >= d - 1 else None
    )
    return CurveReport(
        curve=text,
        field_labels=(),
        degree=d,
        top=T,
        tjurina=tau,
        milnor=None,
        mdr=r,
        exponents=exps,
        second_degrees=second,
        epsilons=epsilons,
        sigma=vec_sigma,
        nu=vector[half],
        vector=tuple(vector),
        vector_source="formula",
        classification=cls,
        bundle=bundle,
        hartshorne=bound,
        coincidence=None,
        checks=tuple(checks),
        timings=(("total", time.perf_counter() - t0),),
    )


# ---------------------------------------------------------------------------
# entry point
# ---------------------------------------------------------------------------


def _parse_degree(text: str) -> int:
    """Degree of the input over the rationals (cheap, exact, and
    independent of any prime choice)."""
    return parse_form(text, rational_field()).degree


def analyze_text(text: str, options: AnalysisOptions = AnalysisOptions()) -> CurveReport:
    """Full analysis honoring the field/seed/oracle options.

    Over `gfp` (no explicit prime) the run happens twice under
    independently chosen primes and all integer outputs must agree;
    disagreement triggers a deterministic re-draw, so a structurally
    unlucky prime cannot silently corrupt a report.
    """
    d = _parse_degree(text)

    oracle = not options.skip_oracle and d <= options.max_degree_cap
    if not oracle:
        if d == 1:
            raise AnalysisError("degree-1 input is a single line; nothing to skip")
        if options.exponents is None:
            raise AnalysisError(
                f"oracle disabled (degree {d}, cap {options.max_degree_cap}, "
                f"skip={options.skip_oracle}); formula-only mode needs --exponents"
            )
        if options.nodal is not None:
            raise AnalysisError("nodal cross-checks need the oracle vector")
        return _formula_report(text, d, options.exponents, options.tau)

    if options.exponents is not None or options.tau is not None:
        raise AnalysisError(
            "--exponents/--tau only apply when the oracle is skipped; "
            "the oracle computes them"
        )

    if options.field == "rational":
        return _analyze_over_field(text, rational_field(), options.nodal)
    if options.field.startswith("gfp:"):
        p = int(options.field.split(":", 1)[1])
        validate_prime_for_degree(p, d)
        return _analyze_over_field(text, prime_field(p), options.nodal)
    if options.field != "gfp":
        raise AnalysisError(f"unknown field {options.field!r}")

    last_pair = None
    for attempt in range(3):
        p1, p2 = prime_pair(options.seed + attempt * 7919, max_degree=d)
        last_pair = (p1, p2)
        first = _analyze_over_field(text, prime_field(p1), options.nodal)
        second = _analyze_over_field(text, prime_field(p2), options.nodal)
        if _comparable(first) == _comparable(second):
            return replace(
                first, field_labels=(f"gfp:{p1}", f"gfp:{p2}")
            )
    raise AnalysisError(
        f"outputs differ between primes {last_pair} after 3 prime pairs; "
        "the input may be numerically degenerate"
    )
