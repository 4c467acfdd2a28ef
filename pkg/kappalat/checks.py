"""
KappaLat - 교차 검증 배터리
격자 하나(및 선택적 꼬임류 데이터)에 대해 좌모듈러성/극값성/κ/라벨링 퀴버 등가성을 단언으로 실행
"""

import logging
from enum import Enum
from functools import cached_property
from typing import Callable, List, Optional

import networkx as nx
import numpy as np
from pydantic import BaseModel

from .algebra_generators import TorsLattice, brick_quiver, is_brick_directed
from .config import KappaLatSettings, get_settings
from .exceptions import BudgetExceeded, KappaLatError, KappaUndefined
from .irreducibles_kappa import (
    check_kappa_identities,
    compute_kappa_data,
    is_kappa_lattice,
    is_semidistributive,
    is_well_separated,
    join_irreducibles,
    meet_irreducibles,
)
from .labelling_quiver import (
    build_labelling_quiver,
    count_linear_extensions,
    extremal_chain_from_linext,
    extremal_chains,
    linear_extensions,
    linext_from_extremal_chain,
    phi,
    psi,
    succ_lattice_matches_lm,
    successor_closed_sets,
)
from .lattice_core import (
    FiniteLattice,
    LatticeDocument,
    dual,
    is_maximal_chain,
    iter_maximal_chains,
    join_set,
    length,
    meet_set,
    transitive_reduction,
)
from .modularity_extremality import (
    LMReport,
    classical_lambda,
    collect_lm_verdicts,
    converse_cover_lemma,
    cover_criterion_one_directional,
    cover_labels,
    is_extremal_chain,
    is_extremal_classical,
    is_extremal_generalized,
    is_trim,
    lambda_extremal_chain,
    left_modular_set,
    minimal_joining_element,
)
from .reporting import build_report, reverify_report

# 로깅 설정
logger = logging.getLogger(__name__)


class CheckStatus(Enum):
    """검사 결과 상태"""
    PASS = "pass"
    FAIL = "fail"
    SKIPPED = "skipped"


class CheckResult(BaseModel):
    name: str
    status: CheckStatus
    detail: str = ""
    budget_limited: bool = False

    def line(self) -> str:
        text = f"{self.status.value.upper():7} {self.name}"
        return f"{text}: {self.detail}" if self.detail else text


class _Skip(Exception):
    pass


class CheckBattery:
    """검사 함수 등록 및 실행기"""

    def __init__(self, L: FiniteLattice, tors: Optional[TorsLattice] = None,
                 doc: Optional[LatticeDocument] = None, settings: Optional[KappaLatSettings] = None):
        self.L = L
        self.tors = tors
        self.doc = doc or (tors.to_document() if tors is not None else LatticeDocument(L))
        self.settings = settings or get_settings()
        self.sd = bool(is_semidistributive(L))
        self.kd = compute_kappa_data(L)
        self.results: List[CheckResult] = []

    @cached_property
    def lm(self) -> LMReport:
        return left_modular_set(self.L, jobs=self.settings.jobs)

    # 공통 가드
    def require_kappa(self) -> None:
        if not self.sd or not self.kd.is_total:
            raise _Skip("not a kappa-lattice")

    def run_check(self, name: str, check: Callable[[], Optional[str]]) -> None:
        """check는 실패 메시지(문자열) 또는 None을 반환"""
        try:
            failure = check()
            result = CheckResult(
                name=name,
                status=CheckStatus.FAIL if failure else CheckStatus.PASS,
                detail=failure or "",
            )
        except _Skip as e:
            result = CheckResult(name=name, status=CheckStatus.SKIPPED, detail=f"skipped: {e}")
        except BudgetExceeded as e:
            result = CheckResult(name=name, status=CheckStatus.SKIPPED, detail=f"skipped: {e}", budget_limited=True)
        except KappaUndefined as e:
            result = CheckResult(name=name, status=CheckStatus.SKIPPED, detail=f"skipped: {e}")
        except KappaLatError as e:
            result = CheckResult(name=name, status=CheckStatus.FAIL, detail=f"{type(e).__name__}: {e}")
        if result.status is CheckStatus.FAIL:
            logger.warning(f"Check {name} failed: {result.detail}")
        self.results.append(result)

    def run(self) -> List[CheckResult]:
        checks = [
            ("lattice-axioms", self.check_lattice_axioms),
            ("cover-reduction", self.check_cover_reduction),
            ("maximal-chains", self.check_maximal_chains),
            ("dual-irreducibles", self.check_dual_irreducibles),
            ("irreducible-bounds", self.check_irreducible_bounds),
            ("sd-kappa-agreement", self.check_sd_kappa_agreement),
            ("kappa-identities", self.check_kappa_identities),
            ("lm-criteria-agreement", self.check_lm_criteria),
            ("cover-criterion-parts", self.check_cover_criterion_parts),
            ("lm-sublattice", self.check_lm_sublattice),
            ("cover-labels", self.check_cover_labels),
            ("extremality-classical-vs-generalized", self.check_extremality_agreement),
            ("classical-lambda", self.check_classical_lambda),
            ("lm-iff-extremal", self.check_lm_iff_extremal),
            ("succ-bijection", self.check_succ_bijection),
            ("quiver-acyclic-when-extremal", self.check_quiver_acyclic),
            ("linear-extension-roundtrip", self.check_linext_roundtrip),
            ("report-certificates", self.check_report),
        ]
        if self.tors is not None:
            checks.extend([
                ("brick-counts", self.check_brick_counts),
                ("brick-splitting-iff-lm", self.check_brick_splitting),
                ("hasse-interval-labels", self.check_hasse_interval_labels),
                ("hasse-hom-vanishing", self.check_hom_vanishing),
                ("brick-directed-equivalence", self.check_brick_directed),
                ("labelling-vs-brick-quiver", self.check_quiver_isomorphism),
            ])
        for name, check in checks:
            self.run_check(name, check)
        return self.results

    # 격자 공리

    def check_lattice_axioms(self) -> Optional[str]:
        L = self.L
        leq = L.leq
        elements = np.arange(L.n)
        for a in L.elements:
            m, j = L.meet_table[a], L.join_table[a]
            if not (leq[m, a].all() and leq[m, elements].all()):
                return f"meet row {L.name(a)} is not a lower bound"
            if not (leq[a, j].all() and leq[elements, j].all()):
                return f"join row {L.name(a)} is not an upper bound"
            # [c, b]: c ≤ a 이고 c ≤ b 이면 c ≤ a∧b
            lower = leq[:, a][:, None] & leq
            if (lower & ~leq[:, m]).any():
                return f"meet row {L.name(a)} is not greatest"
            # [c, b]: a ≤ c 이고 b ≤ c 이면 a∨b ≤ c
            upper = leq[a][:, None] & leq.T
            if (upper & ~leq[j, :].T).any():
                return f"join row {L.name(a)} is not least"
        if meet_set(L, []) != L.top or join_set(L, []) != L.bottom:
            return "empty meet/join convention violated"
        return None

    def check_cover_reduction(self) -> Optional[str]:
        recomputed = sorted((int(a), int(b)) for a, b in np.argwhere(transitive_reduction(self.L.leq)))
        if recomputed != list(self.L.covers):
            return "covers differ from the transitive reduction of leq"
        return None

    def check_maximal_chains(self) -> Optional[str]:
        count = 0
        previous = None
        for chain in iter_maximal_chains(self.L, self.settings.chain_cap):
            if not is_maximal_chain(self.L, chain.elements):
                return f"{list(chain)} is not maximal"
            if previous is not None and previous >= chain.elements:
                return "chains are not in lexicographic order"
            previous = chain.elements
            count += 1
        return None if count else "no maximal chain found"

    def check_dual_irreducibles(self) -> Optional[str]:
        D = dual(self.L)
        if join_irreducibles(D) != meet_irreducibles(self.L) or meet_irreducibles(D) != join_irreducibles(self.L):
            return "JI(dual L) differs from MI(L)"
        return None

    def check_irreducible_bounds(self) -> Optional[str]:
        m = length(self.L)
        if len(join_irreducibles(self.L)) < m or len(meet_irreducibles(self.L)) < m:
            return f"|JI| or |MI| is smaller than the length {m}"
        return None

    def check_sd_kappa_agreement(self) -> Optional[str]:
        kappa_lattice = is_kappa_lattice(self.L)
        separated = kappa_lattice and is_well_separated(self.L, self.kd).holds
        if not (self.sd == kappa_lattice == separated):
            return f"semidistributive={self.sd} kappa-lattice={kappa_lattice} well-separated={separated}"
        return None

    def check_kappa_identities(self) -> Optional[str]:
        self.require_kappa()
        verdict = check_kappa_identities(self.L, self.kd)
        return None if verdict else f"{verdict.detail} at {verdict.witness}"

    # 좌모듈러성

    def check_lm_criteria(self) -> Optional[str]:
        self.require_kappa()
        for t, by_def, by_kappa, by_cover in collect_lm_verdicts(self.L, self.kd):
            if not by_def == by_kappa == by_cover:
                return f"element {self.L.name(t)}: definition={by_def} kappa={by_kappa} cover={by_cover}"
        return None

    def check_cover_criterion_parts(self) -> Optional[str]:
        self.require_kappa()
        for t in self.L.elements:
            verdict = cover_criterion_one_directional(self.L, t, self.kd)
            if not verdict:
                return f"t={self.L.name(t)} cover {verdict.witness}: {verdict.detail}"
        return None

    def check_lm_sublattice(self) -> Optional[str]:
        if not self.sd:
            raise _Skip("not semidistributive")
        report = self.lm
        if not report.lm_closed_under_meet_join:
            return f"LM(L) is not closed: {report.closure_witness}"
        if not report.lm_distributive:
            return "LM(L) is not distributive"
        return None

    def check_cover_labels(self) -> Optional[str]:
        self.require_kappa()
        for (x, y), j in cover_labels(self.L, self.kd).items():
            if minimal_joining_element(self.L, x, y) != j:
                return f"label of {x}<{y} is not min{{a : a v x = y}}"
        verdict = converse_cover_lemma(self.L, self.kd)
        return None if verdict else f"label predicate holds on non-cover {verdict.witness}"

    # 극값성

    def check_extremality_agreement(self) -> Optional[str]:
        report = is_extremal_generalized(self.L, max_ji=self.settings.lambda_search_max_ji)
        if report.is_extremal_generalized != report.is_extremal_classical:
            return f"generalized={report.is_extremal_generalized} classical={report.is_extremal_classical}"
        return None

    def check_classical_lambda(self) -> Optional[str]:
        if not is_extremal_classical(self.L).is_extremal_classical:
            raise _Skip("not extremal")
        longest = next(
            c for c in iter_maximal_chains(self.L, self.settings.chain_cap) if c.length == length(self.L)
        )
        lam = classical_lambda(self.L, longest.elements)
        if lam is None:
            return f"longest chain {list(longest)} does not determine a bijection"
        if lambda_extremal_chain(self.L, lam) is None:
            return "constructed lambda admits no extremal chain"
        return None

    def check_lm_iff_extremal(self) -> Optional[str]:
        if not self.sd:
            raise _Skip("not semidistributive")
        lm = self.lm
        extremal = is_extremal_classical(self.L).is_extremal_classical
        trim = is_trim(self.L, lm)
        if not lm.is_lm_lattice == extremal == trim:
            return f"left modular={lm.is_lm_lattice} extremal={extremal} trim={trim}"
        return None

    # 라벨링 퀴버

    def check_succ_bijection(self) -> Optional[str]:
        self.require_kappa()
        L = self.L
        quiver = build_labelling_quiver(L, self.kd)
        sets = successor_closed_sets(quiver, max_sets=self.settings.set_cap)
        lm = self.lm.lm_set
        if len(sets) != len(lm):
            return f"|LM|={len(lm)} but |succ|={len(sets)}"
        for s in sets:
            if phi(L, psi(L, s, quiver), self.kd) != s:
                return f"phi(psi(S)) differs from S={s.sorted_members}"
        for t in lm:
            if psi(L, phi(L, t, self.kd), quiver) != t:
                return f"psi(phi(t)) differs from t={L.name(t)}"
        verdict = succ_lattice_matches_lm(L, quiver)
        return None if verdict else verdict.detail

    def check_quiver_acyclic(self) -> Optional[str]:
        self.require_kappa()
        if not is_extremal_classical(self.L).is_extremal_classical:
            raise _Skip("not extremal")
        quiver = build_labelling_quiver(self.L, self.kd)
        return None if quiver.acyclic else "extremal lattice has a cyclic labelling quiver"

    def check_linext_roundtrip(self) -> Optional[str]:
        self.require_kappa()
        L = self.L
        if not is_extremal_classical(L).is_extremal_classical:
            raise _Skip("not extremal")
        quiver = build_labelling_quiver(L, self.kd)
        total = count_linear_extensions(quiver)
        chains = extremal_chains(L, self.kd, self.settings.chain_cap)
        if total != len(chains):
            return f"{total} linear extensions but {len(chains)} extremal chains"
        orders = linear_extensions(quiver, self.settings.linext_cap)
        built = set()
        for order in orders:
            chain = extremal_chain_from_linext(L, order, quiver)
            if not is_extremal_chain(L, chain.elements, self.kd):
                return f"chain from {list(order)} is not extremal"
            if linext_from_extremal_chain(L, chain.elements, self.kd) != order:
                return f"round trip fails for {list(order)}"
            built.add(chain.elements)
        if built != {c.elements for c in chains}:
            return "linear extensions do not reach every extremal chain"
        return None

    def check_report(self) -> Optional[str]:
        report = build_report(self.doc, settings=self.settings)
        verdict = reverify_report(self.L, report)
        return None if verdict else verdict.detail

    # 꼬임류

    def check_brick_counts(self) -> Optional[str]:
        bricks = len(self.tors.algebra.bricks)
        ji, mi = len(join_irreducibles(self.L)), len(meet_irreducibles(self.L))
        if not ji == mi == bricks:
            return f"|JI|={ji} |MI|={mi} |brick|={bricks}"
        return None

    def check_brick_splitting(self) -> Optional[str]:
        lm = set(self.lm.lm_set)
        splitting = set(self.tors.brick_splitting_elements())
        if lm != splitting:
            return f"LM and brick-splitting differ at {sorted(lm ^ splitting)}"
        return None

    def check_hasse_interval_labels(self) -> Optional[str]:
        for t in self.L.elements:
            if self.tors.labels_in_hasse_intervals(t) != self.tors.is_brick_splitting(t):
                return f"interval labels disagree with brick-splitting at {self.L.name(t)}"
        return None

    def check_hom_vanishing(self) -> Optional[str]:
        violations = self.tors.hom_vanishing_violations()
        return f"Hom from lower to upper label is non-zero for {violations[0]}" if violations else None

    def check_brick_directed(self) -> Optional[str]:
        directed = is_brick_directed(self.tors.algebra)
        lm = self.lm.is_lm_lattice
        extremal = is_extremal_classical(self.L).is_extremal_classical
        acyclic = build_labelling_quiver(self.L, self.kd).acyclic
        if not directed == lm == extremal == acyclic:
            return f"brick-directed={directed} left modular={lm} extremal={extremal} quiver acyclic={acyclic}"
        return None

    def check_quiver_isomorphism(self) -> Optional[str]:
        labelling = build_labelling_quiver(self.L, self.kd)
        mapping = {j: self.tors.brick_of(j) for j in labelling.vertices}
        relabelled = nx.relabel_nodes(labelling.graph, mapping)
        bricks = brick_quiver(self.tors.algebra).graph
        if set(relabelled.nodes) != set(bricks.nodes) or set(relabelled.edges) != set(bricks.edges):
            return "labelling quiver differs from the brick quiver under j -> brick(j)"
        for t in self.lm.lm_set:
            images = {mapping[j] for j in phi(self.L, t, self.kd).members}
            if images != set(self.tors.element_bricks[t]):
                return f"phi({self.L.name(t)}) differs from its brick set"
        return None


def run_battery(
    L: FiniteLattice,
    tors: Optional[TorsLattice] = None,
    settings: Optional[KappaLatSettings] = None,
    doc: Optional[LatticeDocument] = None,
) -> List[CheckResult]:
    battery = CheckBattery(L, tors=tors, doc=doc, settings=settings)
    results = battery.run()
    failed = sum(r.status is CheckStatus.FAIL for r in results)
    logger.info(f"Battery finished: {len(results)} checks, {failed} failed")
    return results
