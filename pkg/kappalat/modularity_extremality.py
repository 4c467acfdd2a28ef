"""
KappaLat - 좌모듈러성과 극값성 분석
좌모듈러 원소 판정(정의/κ/cover 기준), LM(L), cover 라벨, 고전/일반 극값성, trim 판정
"""

import itertools
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .config import get_settings
from .exceptions import AmbiguousCoverLabel, NotACover, NotALattice, SearchBudgetExceeded
from .irreducibles_kappa import (
    PASS,
    KappaData,
    Verdict,
    compute_kappa_data,
    is_distributive,
    is_semidistributive,
    join_irreducibles,
    meet_irreducibles,
)
from .lattice_core import Cover, FiniteLattice, MaximalChain, as_maximal_chain, length

# 로깅 설정
logger = logging.getLogger(__name__)


@dataclass
class LMReport:
    """좌모듈러 원소 집합 분석 결과"""
    lm_set: Tuple[int, ...]
    is_lm_lattice: bool
    lm_chain: Optional[MaximalChain]
    lm_closed_under_meet_join: bool
    lm_distributive: bool
    closure_witness: Optional[Tuple[int, int]] = None  # 닫혀 있지 않을 때의 쌍

    def to_dict(self) -> Dict:
        return {
            "lm_set": list(self.lm_set),
            "is_lm_lattice": self.is_lm_lattice,
            "lm_chain": list(self.lm_chain) if self.lm_chain else None,
            "lm_closed_under_meet_join": self.lm_closed_under_meet_join,
            "lm_distributive": self.lm_distributive,
        }


@dataclass
class ExtremalityReport:
    """극값성 분석 결과"""
    length: int
    ji_count: int
    mi_count: int
    is_extremal_classical: bool
    is_extremal_generalized: Optional[bool] = None
    extremal_chain: Optional[MaximalChain] = None
    lambda_used: str = "classical"  # classical, kappa, bijection, none
    lambda_map: Dict[int, int] = field(default_factory=dict)


# 좌모듈러 원소 판정

def is_left_modular_def(L: FiniteLattice, t: int) -> Verdict:
    """y ≤ z 인 모든 쌍에서 (y∨t)∧z ≤ y∨(t∧z) 인지 검사"""
    J, M = L.join_table, L.meet_table
    elements = np.arange(L.n)
    lhs = M[J[:, t][:, None], elements[None, :]]
    rhs = J[elements[:, None], M[t][None, :]]
    bad = L.leq & ~L.leq[lhs, rhs]
    if bad.any():
        y, z = (int(v) for v in np.argwhere(bad)[0])
        return Verdict(False, (y, z))
    return PASS


def is_left_modular_kappa(L: FiniteLattice, t: int, kd: Optional[KappaData] = None) -> Verdict:
    """모든 j ∈ JI에 대해 j ≤ t 와 t ≤ κ(j) 중 정확히 하나"""
    kd = (kd or compute_kappa_data(L)).require_total()
    for j in kd.join_irreducibles:
        if L.leq[j, t] == L.leq[t, kd.kappa_of(j)]:
            return Verdict(False, (j,))
    return PASS


def is_left_modular_cover(L: FiniteLattice, t: int) -> Verdict:
    """모든 cover y ⋖ z 에서 t∨y = t∨z 와 t∧y = t∧z 중 정확히 하나"""
    J, M = L.join_table, L.meet_table
    for y, z in L.covers:
        if (J[t, y] == J[t, z]) == (M[t, y] == M[t, z]):
            return Verdict(False, (y, z))
    return PASS


def _lexicographic_path(L: FiniteLattice, allowed: np.ndarray, step_ok=None) -> Optional[MaximalChain]:
    """allowed 원소만 지나는 0̂→1̂ cover 경로 중 사전순 최소"""
    if not (allowed[L.bottom] and allowed[L.top]):
        return None
    dead = set()
    path = [L.bottom]

    def walk(x: int) -> bool:
        if x == L.top:
            return True
        for y in L.upper_covers(x):
            if y in dead or not allowed[y]:
                continue
            if step_ok is not None and not step_ok(x, y):
                continue
            path.append(y)
            if walk(y):
                return True
            path.pop()
        dead.add(x)
        return False

    return MaximalChain(tuple(path)) if walk(L.bottom) else None


def left_modular_set(L: FiniteLattice, jobs: Optional[int] = None) -> LMReport:
    """LM(L) 계산과 부분격자/분배성/좌모듈러 격자 판정"""
    jobs = jobs or get_settings().jobs
    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            flags = list(pool.map(lambda t: is_left_modular_def(L, t).holds, L.elements))
    else:
        flags = [is_left_modular_def(L, t).holds for t in L.elements]
    mask = np.array(flags, dtype=bool)
    lm = np.flatnonzero(mask)

    # 유한 격자에서 임의 부분집합의 meet/join은 이항 연산과 공집합(0̂, 1̂)으로 환원된다
    closure_witness = None
    closed = bool(mask[L.bottom] and mask[L.top])
    if closed:
        grid = np.ix_(lm, lm)
        bad = ~mask[L.meet_table[grid]] | ~mask[L.join_table[grid]]
        if bad.any():
            a, b = np.argwhere(bad)[0]
            closure_witness = (int(lm[a]), int(lm[b]))
            closed = False

    if closed:
        distributive = _distributive_on(L, lm)
    else:
        try:
            distributive = is_distributive(FiniteLattice.from_leq(L.leq[np.ix_(lm, lm)].copy())).holds
        except NotALattice:
            distributive = False

    chain = _lexicographic_path(L, mask)
    logger.info(f"LM set has {lm.size} of {L.n} elements; left modular lattice: {chain is not None}")
    return LMReport(
        lm_set=tuple(int(x) for x in lm),
        is_lm_lattice=chain is not None,
        lm_chain=chain,
        lm_closed_under_meet_join=closed,
        lm_distributive=distributive,
        closure_witness=closure_witness,
    )


def _distributive_on(L: FiniteLattice, members: np.ndarray) -> bool:
    J, M = L.join_table, L.meet_table
    grid = np.ix_(members, members)
    for a in members:
        lhs = M[a][J[grid]]
        rhs = J[M[a, members][:, None], M[a, members][None, :]]
        if (lhs != rhs).any():
            return False
    return True


# cover 라벨

def label_predicate(L: FiniteLattice, kd: KappaData, x: int, y: int, j: int) -> bool:
    """x ∨ j = y 이고 y ∧ κ(j) = x 인지"""
    return L.join_table[x, j] == y and L.meet_table[y, kd.kappa_of(j)] == x


def minimal_joining_element(L: FiniteLattice, x: int, y: int) -> Optional[int]:
    """min{a : a ∨ x = y} (최솟값이 없으면 None)"""
    members = np.flatnonzero(L.join_table[:, x] == y)
    if members.size == 0:
        return None
    sub = L.leq[np.ix_(members, members)]
    minimal = np.flatnonzero(sub.sum(axis=0) == 1)
    return int(members[minimal[0]]) if minimal.size == 1 else None


def cover_label(L: FiniteLattice, x: int, y: int, kd: Optional[KappaData] = None) -> int:
    """cover x ⋖ y 의 유일한 라벨 j ∈ JI"""
    if not L.is_cover(x, y):
        raise NotACover(f"{L.name(x)} is not covered by {L.name(y)}")
    kd = (kd or compute_kappa_data(L)).require_total()
    labels = [j for j in kd.join_irreducibles if label_predicate(L, kd, x, y, j)]
    if len(labels) != 1:
        raise AmbiguousCoverLabel((x, y), labels)
    minimal = minimal_joining_element(L, x, y)
    if minimal != labels[0]:
        raise AmbiguousCoverLabel((x, y), [labels[0], minimal])
    return labels[0]


def cover_labels(L: FiniteLattice, kd: Optional[KappaData] = None) -> Dict[Cover, int]:
    if "cover_labels" not in L._memo:
        kd = kd or compute_kappa_data(L)
        L._memo["cover_labels"] = {(x, y): cover_label(L, x, y, kd) for x, y in L.covers}
    return dict(L._memo["cover_labels"])  # type: ignore[arg-type]


# 극값성

def is_extremal_classical(L: FiniteLattice) -> ExtremalityReport:
    """length = |JI| = |MI| 판정"""
    m = length(L)
    ji = len(join_irreducibles(L))
    mi = len(meet_irreducibles(L))
    return ExtremalityReport(length=m, ji_count=ji, mi_count=mi, is_extremal_classical=(m == ji == mi))


def is_extremal_chain(L: FiniteLattice, chain: Sequence[int], kd: Optional[KappaData] = None) -> Verdict:
    """모든 j ∈ JI가 사슬의 어떤 x < y 에서 x∨j = y, y∧κ(j) = x 를 만족하는지"""
    chain = as_maximal_chain(L, chain)
    kd = (kd or compute_kappa_data(L)).require_total()
    elements = chain.elements
    for j in kd.join_irreducibles:
        if not any(
            label_predicate(L, kd, x, y, j) for x, y in itertools.combinations(elements, 2)
        ):
            return Verdict(False, (j,))
    return PASS


def _cover_irreducible_pairs(L: FiniteLattice) -> Dict[Cover, Optional[Tuple[int, int]]]:
    """cover x ⋖ y 마다 j ≤ y, j ≰ x 인 유일한 j 와 x ≤ m, y ≰ m 인 유일한 m"""
    ji = np.array(join_irreducibles(L), dtype=np.intp)
    mi = np.array(meet_irreducibles(L), dtype=np.intp)
    pairs: Dict[Cover, Optional[Tuple[int, int]]] = {}
    for x, y in L.covers:
        js = ji[L.leq[ji, y] & ~L.leq[ji, x]] if ji.size else ji
        ms = mi[L.leq[x, mi] & ~L.leq[y, mi]] if mi.size else mi
        pairs[(x, y)] = (int(js[0]), int(ms[0])) if js.size == 1 and ms.size == 1 else None
    return pairs


def lambda_extremal_chain(L: FiniteLattice, lam: Dict[int, int]) -> Optional[MaximalChain]:
    """주어진 전단사 λ: JI → MI 에 대해 극값 사슬 조건을 만족하는 극대 사슬 탐색

    사슬 원소 x는 j ≰ x ⇒ x ≤ λ(j) 를 만족해야 하고, 각 cover에서 유일한 (j, m)이 λ(j) = m 이어야 한다.
    유일성은 후보 사슬 위의 cover에서만 확인한다.
    """
    allowed = np.ones(L.n, dtype=bool)
    for j, m in lam.items():
        allowed &= L.leq[j, :] | L.leq[:, m]
    pairs = _cover_irreducible_pairs(L)

    def step_ok(x: int, y: int) -> bool:
        pair = pairs[(x, y)]
        return pair is not None and lam.get(pair[0]) == pair[1]

    return _lexicographic_path(L, allowed, step_ok)


def classical_lambda(L: FiniteLattice, chain: Sequence[int]) -> Optional[Dict[int, int]]:
    """최장 사슬의 cover들로부터 λ를 구성 (각 cover의 유일한 (j, m) 쌍)"""
    pairs = _cover_irreducible_pairs(L)
    lam: Dict[int, int] = {}
    for step in zip(chain, chain[1:]):
        pair = pairs.get(step)
        if pair is None or pair[0] in lam:
            return None
        lam[pair[0]] = pair[1]
    if len(lam) != len(join_irreducibles(L)) or len(set(lam.values())) != len(meet_irreducibles(L)):
        return None
    return lam


def is_extremal_generalized(
    L: FiniteLattice, kd: Optional[KappaData] = None, max_ji: Optional[int] = None
) -> ExtremalityReport:
    """일반화된 극값성: 반분배이면 λ = κ, 아니면 |JI| ≤ max_ji 범위에서 전단사 탐색"""
    report = is_extremal_classical(L)
    ji = join_irreducibles(L)
    mi = meet_irreducibles(L)

    if is_semidistributive(L):
        kd = (kd or compute_kappa_data(L)).require_total()
        lam = {j: kd.kappa_of(j) for j in ji}
        report.lambda_used = "kappa"
        report.lambda_map = lam
        report.extremal_chain = lambda_extremal_chain(L, lam)
    elif len(ji) != len(mi):
        report.lambda_used = "none"
    else:
        limit = max_ji if max_ji is not None else get_settings().lambda_search_max_ji
        if len(ji) > limit:
            raise SearchBudgetExceeded("lambda bijection search", limit)
        report.lambda_used = "bijection"
        for image in itertools.permutations(mi):
            lam = dict(zip(ji, image))
            chain = lambda_extremal_chain(L, lam)
            if chain is not None:
                report.lambda_map = lam
                report.extremal_chain = chain
                break

    report.is_extremal_generalized = report.extremal_chain is not None
    return report


def find_extremal_chain(L: FiniteLattice, kd: Optional[KappaData] = None) -> Optional[MaximalChain]:
    return is_extremal_generalized(L, kd).extremal_chain


def is_trim(L: FiniteLattice, lm: Optional[LMReport] = None) -> bool:
    """극값적이면서 좌모듈러인 격자"""
    lm = lm or left_modular_set(L)
    return is_extremal_classical(L).is_extremal_classical and lm.is_lm_lattice


def spine(L: FiniteLattice, lm: Optional[LMReport] = None) -> Optional[Tuple[int, ...]]:
    """trim 격자의 spine(= LM(L)); trim이 아니면 None"""
    lm = lm or left_modular_set(L)
    return lm.lm_set if is_trim(L, lm) else None


def cover_criterion_one_directional(L: FiniteLattice, t: int, kd: Optional[KappaData] = None) -> Verdict:
    """라벨 j, m = κ(j) 인 cover y ⋖ z 에서 j ≤ t ⇒ t∨y = t∨z, t ≤ m ⇒ t∧y = t∧z, 둘이 동시에 성립하지 않음"""
    kd = (kd or compute_kappa_data(L)).require_total()
    J, M = L.join_table, L.meet_table
    for (y, z), j in cover_labels(L, kd).items():
        m = kd.kappa_of(j)
        below, above = L.leq[j, t], L.leq[t, m]
        if below and above:
            return Verdict(False, (y, z), "j <= t and t <= kappa(j)")
        if below and J[t, y] != J[t, z]:
            return Verdict(False, (y, z), "j <= t but joins differ")
        if above and M[t, y] != M[t, z]:
            return Verdict(False, (y, z), "t <= kappa(j) but meets differ")
    return PASS


def converse_cover_lemma(L: FiniteLattice, kd: Optional[KappaData] = None) -> Verdict:
    """x∨j = y, y∧κ(j) = x 인 j가 있으면 x ⋖ y"""
    kd = (kd or compute_kappa_data(L)).require_total()
    J, M = L.join_table, L.meet_table
    for j in kd.join_irreducibles:
        m = kd.kappa_of(j)
        for x in L.elements:
            y = int(J[x, j])
            if y != x and M[y, m] == x and not L.is_cover(x, y):
                return Verdict(False, (x, y, j))
    return PASS


def collect_lm_verdicts(L: FiniteLattice, kd: Optional[KappaData] = None) -> List[Tuple[int, bool, bool, bool]]:
    """원소별 (t, 정의, κ 기준, cover 기준) 판정 목록"""
    kd = (kd or compute_kappa_data(L)).require_total()
    return [
        (t, is_left_modular_def(L, t).holds, is_left_modular_kappa(L, t, kd).holds, is_left_modular_cover(L, t).holds)
        for t in L.elements
    ]
