"""Build the JSON report documents behind each CLI command."""

import logging
import random

from ctgroups import __version__
from ctgroups.core.config import settings
from ctgroups.core.field import FieldCtx, serialize_elem
from ctgroups.models.coords import Pointing
from ctgroups.models.diagram import Diagram, SpanningData
from ctgroups.models.reports import (
    CheckReport,
    ClassEntry,
    ClassificationReport,
    ClassTotals,
    CompletionReport,
    OracleMismatch,
    OracleReport,
    OrientationSummary,
    PhiValue,
    ReportHeader,
    SpanningSummary,
    TorusSummary,
    VerifyReport,
)
from ctgroups.services.amalgam_service import build_amalgam, compute_Di, orientation_search, verify_ct_axioms
from ctgroups.services.classifier_service import (
    enumerate_classes,
    oracle_matrix_iso,
    oracle_pointing_iso,
    phi_key,
    sample_oracle_pairs,
    verify_iso_witness,
)
from ctgroups.services.completion_service import completion_for, evaluate_witness, verify_completion
from ctgroups.services.diagram_service import describe_spanning, diagram_hash, is_cycle_diagram, is_path_diagram
from ctgroups.services.path_service import phi_of_pointing, serialize_pointing

logger = logging.getLogger(__name__)


def make_header(command: str, field: FieldCtx, d: Diagram, sd: SpanningData, seed: int | None) -> ReportHeader:
    spanning = describe_spanning(sd)
    return ReportHeader(
        tool=settings.PROJECT_NAME,
        version=__version__,
        command=command,
        field=field.spec,
        diagram_hash=diagram_hash(d),
        spanning=SpanningSummary(**spanning),
        seed=seed,
    )


def _pointing_lines(delta: Pointing) -> list[str]:
    return serialize_pointing(delta).splitlines()


# ---------------------------------------------------------------------------
# classify
# ---------------------------------------------------------------------------

def classification_report(d: Diagram, field: FieldCtx, sd: SpanningData) -> ClassificationReport:
    classes = enumerate_classes(d, field, sd.base)
    entries = [
        ClassEntry(
            key=c.key,
            phi=[PhiValue(edge=str(e), eps=a.eps, r=a.r) for e, a in c.phi],
            orientable=c.orientable,
            canonical_pointing=_pointing_lines(c.canonical),
        )
        for c in classes
    ]
    totals = ClassTotals(classes=len(classes), orientable=sum(c.orientable for c in classes))
    return ClassificationReport(header=make_header("classify", field, d, sd, None), classes=entries, totals=totals)


# ---------------------------------------------------------------------------
# verify
# ---------------------------------------------------------------------------

def verify_report(
    d: Diagram, field: FieldCtx, sd: SpanningData, delta: Pointing, seed: int, convention: str = "forward"
) -> VerifyReport:
    A = build_amalgam(d, delta, field, convention)
    ct = verify_ct_axioms(A, seed)

    tori = []
    if field.order <= settings.MAX_SCAN_FIELD_ORDER:
        for v in d.vertices:
            if not d.neighbors(v):
                continue
            result = compute_Di(A, v)
            tori.append(
                TorusSummary(
                    vertex=v,
                    order=len(result.torus),
                    consistent=result.consistent,
                    diagonal=result.diagonal,
                    per_edge={f"{i} {j}": len(t) for (i, j), t in result.per_edge.items()},
                )
            )
    else:
        logger.warning(f"Skipping torus scans over {field.name}: order above {settings.MAX_SCAN_FIELD_ORDER}")

    phi = phi_of_pointing(delta, sd)
    witness = orientation_search(A)
    orientation = OrientationSummary(
        orientable_phi=all(a.eps == 0 for a in phi.values()),
        found=witness is not None,
        convention=convention,
        signs=witness.signs if witness else {},
        certificate_orders={f"{a} {b}": len(c) for (a, b), c in witness.certificates.items()} if witness else {},
    )
    if witness is None:
        logger.warning("Orientation search exhausted without a witness")
    return VerifyReport(
        header=make_header("verify", field, d, sd, seed),
        pointing=_pointing_lines(delta),
        phi_key=phi_key(delta, sd),
        ct_axioms=ct,
        tori=tori,
        orientation=orientation,
    )


# ---------------------------------------------------------------------------
# oracle
# ---------------------------------------------------------------------------

def oracle_report(d: Diagram, field: FieldCtx, sd: SpanningData, seed: int) -> OracleReport:
    rng = random.Random(seed)
    pairs = sample_oracle_pairs(d, field.m, sd, rng)
    mismatches = []
    for delta1, delta2, same in pairs:
        found = oracle_pointing_iso(delta1, delta2, d) is not None
        if found != same:
            mismatches.append(
                OracleMismatch(
                    kind="pointing",
                    delta1=_pointing_lines(delta1),
                    delta2=_pointing_lines(delta2),
                    expected_same=same,
                    found_witness=found,
                )
            )

    matrix_checked = 0
    if len(d.vertices) <= settings.MATRIX_ORACLE_MAX_VERTICES:
        half = settings.MATRIX_ORACLE_PAIRS // 2
        chosen = [p for p in pairs if p[2]][:half] + [p for p in pairs if not p[2]][:half]
        for delta1, delta2, same in chosen:
            w = oracle_matrix_iso(build_amalgam(d, delta1, field), build_amalgam(d, delta2, field))
            found = w is not None
            projected = w is None or verify_iso_witness(delta1, delta2, w.project(), d)
            matrix_checked += 1
            if found != same or not projected:
                mismatches.append(
                    OracleMismatch(
                        kind="matrix",
                        delta1=_pointing_lines(delta1),
                        delta2=_pointing_lines(delta2),
                        expected_same=same,
                        found_witness=found,
                    )
                )
    logger.info(f"Oracle run: {len(pairs)} pointing pairs, {matrix_checked} matrix pairs, {len(mismatches)} mismatches")
    return OracleReport(
        header=make_header("oracle", field, d, sd, seed),
        pairs_checked=len(pairs),
        same_pairs=sum(1 for p in pairs if p[2]),
        cross_pairs=sum(1 for p in pairs if not p[2]),
        matrix_pairs_checked=matrix_checked,
        mismatches=mismatches,
    )


# ---------------------------------------------------------------------------
# complete
# ---------------------------------------------------------------------------

def completion_report(d: Diagram, field: FieldCtx, sd: SpanningData, delta: Pointing, seed: int) -> CompletionReport:
    header = make_header("complete", field, d, sd, seed)
    if len(d.vertices) > 1 and not (is_path_diagram(d) or is_cycle_diagram(d)):
        logger.warning("No completion witness available for this diagram")
        return CompletionReport(
            header=header,
            kind="none",
            available=False,
            message="no witness available: witnesses cover paths and cycles",
        )
    A = build_amalgam(d, delta, field)
    w = completion_for(A)
    squares = verify_completion(A, w, seed)
    evaluation = None
    if w.kind == "affine":
        evaluation = CheckReport()
        for c in field.nonzero():
            for check in verify_completion(A, evaluate_witness(w, c), seed).checks:
                evaluation.add(check.name, f"t={serialize_elem(c)} {check.subject}", check.passed, check.detail)
    return CompletionReport(
        header=header,
        kind=w.kind,
        available=True,
        target=w.target,
        squares=squares,
        evaluation=evaluation,
    )
