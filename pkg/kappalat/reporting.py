"""
KappaLat - 분석 리포트
격자 하나에 대한 구조 플래그, 개수, 판정, 인증서(certificate), 반례를 담는 버전 관리 스키마
"""

import logging
from typing import List, Optional

import orjson
from pydantic import BaseModel, ConfigDict, Field

from .algebra_generators import TorsLattice, is_brick_directed
from .config import KappaLatSettings, get_settings
from .exceptions import BudgetExceeded, SearchBudgetExceeded
from .irreducibles_kappa import (
    Verdict,
    compute_kappa_data,
    is_distributive,
    is_kappa_lattice,
    is_semidistributive,
    is_well_separated,
)
from .labelling_quiver import build_labelling_quiver, successor_closed_sets
from .lattice_core import FiniteLattice, LatticeDocument, is_maximal_chain, length
from .modularity_extremality import (
    is_extremal_chain,
    is_extremal_classical,
    is_extremal_generalized,
    is_left_modular_def,
    is_trim,
    lambda_extremal_chain,
    left_modular_set,
)

# 로깅 설정
logger = logging.getLogger(__name__)

REPORT_VERSION = 1


class StructuralFlags(BaseModel):
    lattice_valid: bool = True
    complete: bool = True
    weakly_atomic: bool = True
    bi_spatial: bool = True
    semidistributive: bool
    distributive: bool
    kappa_lattice: bool
    well_separated: Optional[bool] = None


class Counts(BaseModel):
    n: int
    length: int
    join_irreducibles: int
    meet_irreducibles: int
    left_modular: int
    successor_closed_sets: Optional[int] = None


class Verdicts(BaseModel):
    left_modular_lattice: bool
    extremal_classical: bool
    extremal_generalized: Optional[bool] = None
    trim: bool


class KappaEntry(BaseModel):
    j: int
    j_star: int
    kappa: Optional[int] = None


class Certificates(BaseModel):
    lm_set: List[int]
    lm_chain: Optional[List[int]] = None
    extremal_chain: Optional[List[int]] = None
    lambda_used: str = "classical"
    kappa_table: List[KappaEntry] = Field(default_factory=list)
    quiver_arrows: List[List[int]] = Field(default_factory=list)
    spine: Optional[List[int]] = None


class Witness(BaseModel):
    check: str
    elements: List[int] = Field(default_factory=list)
    detail: str = ""


class BrickSummary(BaseModel):
    algebra: str
    brick_count: int
    brick_directed: bool
    brick_splitting: List[int]


class AnalysisReport(BaseModel):
    """격자 분석 리포트 (JSON 키 순서는 필드 순서)"""

    model_config = ConfigDict(populate_by_name=True)

    report_v: int = Field(default=REPORT_VERSION, alias="report-v")
    source: str
    names: List[str]
    flags: StructuralFlags
    counts: Counts
    verdicts: Verdicts
    certificates: Certificates
    witnesses: List[Witness] = Field(default_factory=list)
    bricks: Optional[BrickSummary] = None


def _witness(check: str, verdict: Verdict) -> Witness:
    return Witness(check=check, elements=[int(v) for v in verdict.witness or ()], detail=verdict.detail)


def build_report(
    doc: LatticeDocument,
    source: str = "-",
    settings: Optional[KappaLatSettings] = None,
) -> AnalysisReport:
    """문서 하나를 전부 분석하여 리포트를 구성"""
    settings = settings or get_settings()
    L = doc.lattice
    witnesses: List[Witness] = []

    sd = is_semidistributive(L)
    if not sd:
        witnesses.append(_witness("semidistributive", sd))
    distributive = is_distributive(L)
    if not distributive:
        witnesses.append(_witness("distributive", distributive))

    kd = compute_kappa_data(L)
    kappa_lattice = is_kappa_lattice(L)
    well_separated: Optional[bool] = None
    if kappa_lattice:
        separation = is_well_separated(L, kd)
        well_separated = separation.holds
        if not separation:
            witnesses.append(_witness("well_separated", separation))
    else:
        undefined = kd.first_undefined()
        witnesses.append(
            Witness(
                check="kappa_lattice",
                elements=[undefined.element, *undefined.candidates] if undefined else [],
                detail=str(undefined) if undefined else "kappa is not a bijection",
            )
        )

    lm = left_modular_set(L, jobs=settings.jobs)
    if not lm.is_lm_lattice:
        offender = next(t for t in L.elements if t not in lm.lm_set) if len(lm.lm_set) < L.n else None
        if offender is not None:
            verdict = is_left_modular_def(L, offender)
            witnesses.append(
                Witness(
                    check="left_modular_lattice",
                    elements=[offender, *verdict.witness],
                    detail="least element that is not left modular, with its (y, z) pair",
                )
            )

    extremality = is_extremal_classical(L)
    if not extremality.is_extremal_classical:
        witnesses.append(
            Witness(
                check="extremal_classical",
                detail=f"length={extremality.length} ji={extremality.ji_count} mi={extremality.mi_count}",
            )
        )
    generalized: Optional[bool] = None
    extremal_chain = None
    lambda_used = "none"
    try:
        general = is_extremal_generalized(L, max_ji=settings.lambda_search_max_ji)
        generalized = general.is_extremal_generalized
        extremal_chain = general.extremal_chain
        lambda_used = general.lambda_used
        if not generalized:
            witnesses.append(Witness(check="extremal_generalized", detail=f"no chain for lambda={lambda_used}"))
    except SearchBudgetExceeded as e:
        witnesses.append(Witness(check="extremal_generalized", detail=str(e)))

    trim = is_trim(L, lm)
    kappa_table: List[KappaEntry] = [
        KappaEntry(j=j, j_star=kd.j_star[j], kappa=kd.kappa[j]) for j in kd.join_irreducibles
    ]
    arrows: List[List[int]] = []
    succ_count: Optional[int] = None
    if kappa_lattice:
        quiver = build_labelling_quiver(L, kd)
        arrows = [list(arrow) for arrow in quiver.arrows]
        try:
            succ_count = len(successor_closed_sets(quiver, max_sets=settings.set_cap))
        except BudgetExceeded as e:
            witnesses.append(Witness(check="successor_closed_sets", detail=str(e)))

    bricks = None
    if "algebra" in doc.meta:
        tors = TorsLattice.from_document(doc)
        bricks = BrickSummary(
            algebra=tors.algebra.describe(),
            brick_count=len(tors.algebra.bricks),
            brick_directed=is_brick_directed(tors.algebra),
            brick_splitting=list(tors.brick_splitting_elements()),
        )

    report = AnalysisReport(
        source=source,
        names=[L.name(x) for x in L.elements],
        flags=StructuralFlags(
            semidistributive=sd.holds,
            distributive=distributive.holds,
            kappa_lattice=kappa_lattice,
            well_separated=well_separated,
        ),
        counts=Counts(
            n=L.n,
            length=length(L),
            join_irreducibles=extremality.ji_count,
            meet_irreducibles=extremality.mi_count,
            left_modular=len(lm.lm_set),
            successor_closed_sets=succ_count,
        ),
        verdicts=Verdicts(
            left_modular_lattice=lm.is_lm_lattice,
            extremal_classical=extremality.is_extremal_classical,
            extremal_generalized=generalized,
            trim=trim,
        ),
        certificates=Certificates(
            lm_set=list(lm.lm_set),
            lm_chain=list(lm.lm_chain) if lm.lm_chain else None,
            extremal_chain=list(extremal_chain) if extremal_chain else None,
            lambda_used=lambda_used,
            kappa_table=kappa_table,
            quiver_arrows=arrows,
            spine=list(lm.lm_set) if trim else None,
        ),
        witnesses=witnesses,
        bricks=bricks,
    )
    logger.info(f"Report built for {source}: trim={trim}, witnesses={len(witnesses)}")
    return report


def render_json(report: AnalysisReport) -> bytes:
    return orjson.dumps(report.model_dump(by_alias=True), option=orjson.OPT_INDENT_2) + b"\n"


def render_text(report: AnalysisReport) -> str:
    """'key: value' 형식의 사람이 읽는 리포트"""
    names = report.names

    def show(elements: Optional[List[int]]) -> str:
        return "-" if elements is None else "[" + ",".join(names[x] for x in elements) + "]"

    def flag(value: Optional[bool]) -> str:
        return "n/a" if value is None else str(value).lower()

    lines = [
        f"report-v: {report.report_v}",
        f"source: {report.source}",
        f"elements: {report.counts.n}",
        f"length: {report.counts.length}",
        f"join-irreducibles: {report.counts.join_irreducibles}",
        f"meet-irreducibles: {report.counts.meet_irreducibles}",
        f"semidistributive: {flag(report.flags.semidistributive)}",
        f"distributive: {flag(report.flags.distributive)}",
        f"kappa-lattice: {flag(report.flags.kappa_lattice)}",
        f"well-separated: {flag(report.flags.well_separated)}",
        f"left-modular elements: {report.counts.left_modular} {show(report.certificates.lm_set)}",
        f"successor-closed sets: {report.counts.successor_closed_sets if report.counts.successor_closed_sets is not None else 'n/a'}",
        f"left modular lattice: {flag(report.verdicts.left_modular_lattice)}",
        f"extremal (classical): {flag(report.verdicts.extremal_classical)}",
        f"extremal (generalized): {flag(report.verdicts.extremal_generalized)}",
        f"trim: {flag(report.verdicts.trim)}",
        f"lm chain: {show(report.certificates.lm_chain)}",
        f"extremal chain: {show(report.certificates.extremal_chain)}",
        f"lambda: {report.certificates.lambda_used}",
        f"spine: {show(report.certificates.spine)}",
    ]
    for entry in report.certificates.kappa_table:
        kappa = names[entry.kappa] if entry.kappa is not None else "undefined"
        lines.append(f"kappa({names[entry.j]}): {kappa}")
    for i, j in report.certificates.quiver_arrows:
        lines.append(f"arrow: {names[i]} -> {names[j]}")
    if report.bricks is not None:
        lines.append(f"algebra: {report.bricks.algebra}")
        lines.append(f"bricks: {report.bricks.brick_count}")
        lines.append(f"brick-directed: {flag(report.bricks.brick_directed)}")
        lines.append(f"brick-splitting: {show(report.bricks.brick_splitting)}")
    for witness in report.witnesses:
        lines.append(f"witness {witness.check}: {show(witness.elements)} {witness.detail}".rstrip())
    return "\n".join(lines) + "\n"


def reverify_report(L: FiniteLattice, report: AnalysisReport) -> Verdict:
    """리포트의 인증서를 원본 격자에 대해 다시 검증"""
    cert = report.certificates
    if report.counts.n != L.n:
        return Verdict(False, (), "element count differs")
    if report.verdicts.left_modular_lattice != (cert.lm_chain is not None):
        return Verdict(False, (), "lm chain presence disagrees with verdict")
    if cert.lm_chain is not None:
        if not is_maximal_chain(L, cert.lm_chain):
            return Verdict(False, tuple(cert.lm_chain), "lm chain is not maximal")
        bad = [t for t in cert.lm_chain if not is_left_modular_def(L, t)]
        if bad:
            return Verdict(False, (bad[0],), "lm chain element is not left modular")
    if cert.extremal_chain is not None:
        if report.flags.kappa_lattice:
            if not is_extremal_chain(L, cert.extremal_chain):
                return Verdict(False, tuple(cert.extremal_chain), "extremal chain fails re-verification")
        elif not is_maximal_chain(L, cert.extremal_chain):
            return Verdict(False, tuple(cert.extremal_chain), "extremal chain is not maximal")
    kd = compute_kappa_data(L)
    for entry in cert.kappa_table:
        if kd.j_star.get(entry.j) != entry.j_star or kd.kappa.get(entry.j) != entry.kappa:
            return Verdict(False, (entry.j,), "kappa table entry differs")
    if report.flags.kappa_lattice:
        kd.require_total()
        expected = [
            [i, j] for i in kd.join_irreducibles for j in kd.join_irreducibles
            if i != j and not L.leq[i, kd.kappa_of(j)]
        ]
        if expected != cert.quiver_arrows:
            return Verdict(False, (), "quiver arrows differ")
        if report.counts.successor_closed_sets is not None and report.counts.successor_closed_sets != len(cert.lm_set):
            return Verdict(False, (), "|LM| differs from |succ(Q_L)|")
        if cert.extremal_chain is not None and cert.lambda_used == "kappa":
            lam = {j: kd.kappa_of(j) for j in kd.join_irreducibles}
            if lambda_extremal_chain(L, lam) is None:
                return Verdict(False, (), "no kappa-extremal chain exists")
    return Verdict(True)
