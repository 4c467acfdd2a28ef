"""
KappaLat - 기약 원소와 κ 사상
JI/MI, κ/κ⁻¹ 전단사, 반분배성/분배성/κ-격자/well-separated 판정
"""

import logging
from dataclasses import dataclass, field
from typing import Any, Dict, Optional, Tuple

import numpy as np

from .exceptions import InputError, KappaUndefined
from .lattice_core import FiniteLattice

# 로깅 설정
logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Verdict:
    """판정 결과와 (사전순 최소) 반례"""
    holds: bool
    witness: Optional[Tuple[Any, ...]] = None
    detail: str = ""

    def __bool__(self) -> bool:
        return self.holds


PASS = Verdict(True)


def join_irreducibles(L: FiniteLattice) -> Tuple[int, ...]:
    """아래 cover가 정확히 하나인 원소 (0̂ 제외)"""
    return tuple(x for x in L.elements if len(L.lower_covers(x)) == 1)


def meet_irreducibles(L: FiniteLattice) -> Tuple[int, ...]:
    return tuple(x for x in L.elements if len(L.upper_covers(x)) == 1)


def _check_ji(L: FiniteLattice, j: int) -> int:
    lower = L.lower_covers(j)
    if len(lower) != 1:
        raise InputError(f"{L.name(j)} is not join-irreducible")
    return lower[0]


def _check_mi(L: FiniteLattice, m: int) -> int:
    upper = L.upper_covers(m)
    if len(upper) != 1:
        raise InputError(f"{L.name(m)} is not meet-irreducible")
    return upper[0]


def _unique_extremum(L: FiniteLattice, candidates: np.ndarray, maximum: bool) -> Tuple[Optional[int], Tuple[int, ...]]:
    """후보 집합의 최댓값(최솟값)과 극대(극소) 원소들"""
    members = np.flatnonzero(candidates)
    sub = L.leq[np.ix_(members, members)]
    # 극대: 자신보다 큰 후보가 자신뿐
    dominated = sub.sum(axis=1 if maximum else 0)
    extremal = tuple(int(members[i]) for i in np.flatnonzero(dominated == 1))
    if len(extremal) == 1:
        return extremal[0], extremal
    return None, extremal


def kappa(L: FiniteLattice, j: int) -> int:
    """κ(j) = max{x : x ∧ j = j_*}"""
    j_star = _check_ji(L, j)
    value, extremal = _unique_extremum(L, L.meet_table[:, j] == j_star, maximum=True)
    if value is None:
        raise KappaUndefined(j, extremal)
    return value


def kappa_inv(L: FiniteLattice, m: int) -> int:
    """κ⁻¹(m) = min{y : y ∨ m = m^*}"""
    m_star = _check_mi(L, m)
    value, extremal = _unique_extremum(L, L.join_table[:, m] == m_star, maximum=False)
    if value is None:
        raise KappaUndefined(m, extremal, inverse=True)
    return value


@dataclass
class KappaData:
    """JI/MI별 κ 테이블"""
    j_star: Dict[int, int] = field(default_factory=dict)
    kappa: Dict[int, Optional[int]] = field(default_factory=dict)
    kappa_candidates: Dict[int, Tuple[int, ...]] = field(default_factory=dict)
    m_star_up: Dict[int, int] = field(default_factory=dict)
    kappa_inv: Dict[int, Optional[int]] = field(default_factory=dict)
    kappa_inv_candidates: Dict[int, Tuple[int, ...]] = field(default_factory=dict)

    @property
    def join_irreducibles(self) -> Tuple[int, ...]:
        return tuple(sorted(self.j_star))

    @property
    def meet_irreducibles(self) -> Tuple[int, ...]:
        return tuple(sorted(self.m_star_up))

    @property
    def is_total(self) -> bool:
        return all(v is not None for v in self.kappa.values()) and all(
            v is not None for v in self.kappa_inv.values()
        )

    def kappa_of(self, j: int) -> int:
        value = self.kappa[j]
        if value is None:
            raise KappaUndefined(j, self.kappa_candidates[j])
        return value

    def kappa_inv_of(self, m: int) -> int:
        value = self.kappa_inv[m]
        if value is None:
            raise KappaUndefined(m, self.kappa_inv_candidates[m], inverse=True)
        return value

    def first_undefined(self) -> Optional[KappaUndefined]:
        for j in self.join_irreducibles:
            if self.kappa[j] is None:
                return KappaUndefined(j, self.kappa_candidates[j])
        for m in self.meet_irreducibles:
            if self.kappa_inv[m] is None:
                return KappaUndefined(m, self.kappa_inv_candidates[m], inverse=True)
        return None

    def require_total(self) -> "KappaData":
        error = self.first_undefined()
        if error is not None:
            raise error
        return self


def compute_kappa_data(L: FiniteLattice) -> KappaData:
    """κ, κ⁻¹ 테이블 계산 (격자별 메모)"""
    cached = L._memo.get("kappa")
    if cached is not None:
        return cached  # type: ignore[return-value]

    data = KappaData()
    for j in join_irreducibles(L):
        j_star = L.lower_covers(j)[0]
        value, extremal = _unique_extremum(L, L.meet_table[:, j] == j_star, maximum=True)
        data.j_star[j] = j_star
        data.kappa[j] = value
        data.kappa_candidates[j] = extremal
    for m in meet_irreducibles(L):
        m_star = L.upper_covers(m)[0]
        value, extremal = _unique_extremum(L, L.join_table[:, m] == m_star, maximum=False)
        data.m_star_up[m] = m_star
        data.kappa_inv[m] = value
        data.kappa_inv_candidates[m] = extremal

    if not data.is_total:
        logger.warning(f"kappa is not total: {data.first_undefined()}")
    L._memo["kappa"] = data
    return data


def check_kappa_identities(L: FiniteLattice, kd: Optional[KappaData] = None) -> Verdict:
    """κ(j) ∧ j = j_*, j ∨ κ(j) = κ(j)^*, 그리고 κ⁻¹∘κ = id 확인"""
    kd = (kd or compute_kappa_data(L)).require_total()
    for j in kd.join_irreducibles:
        m = kd.kappa_of(j)
        if m not in kd.m_star_up:
            return Verdict(False, (j,), "kappa(j) is not meet-irreducible")
        if L.meet_table[m, j] != kd.j_star[j]:
            return Verdict(False, (j,), "kappa(j) meet j differs from j_*")
        if L.join_table[j, m] != kd.m_star_up[m]:
            return Verdict(False, (j,), "j join kappa(j) differs from kappa(j)^*")
        if kd.kappa_inv_of(m) != j:
            return Verdict(False, (j,), "kappa_inv(kappa(j)) differs from j")
    for m in kd.meet_irreducibles:
        if kd.kappa_of(kd.kappa_inv_of(m)) != m:
            return Verdict(False, (m,), "kappa(kappa_inv(m)) differs from m")
    return PASS


def is_semidistributive(L: FiniteLattice) -> Verdict:
    """SD∨, SD∧ 전수 검사; 반례는 사전순 최소 (x, y, z)

    같은 삼중항에서는 join 법칙 위반을 먼저 보고한다.
    """
    J, M = L.join_table, L.meet_table
    for x in L.elements:
        jx, mx = J[x], M[x]
        # SD∨: x∨y = x∨z ⇒ x∨(y∧z) = x∨y
        join_violation = (jx[:, None] == jx[None, :]) & (jx[M] != jx[:, None])
        # SD∧: x∧y = x∧z ⇒ x∧(y∨z) = x∧y
        meet_violation = (mx[:, None] == mx[None, :]) & (mx[J] != mx[:, None])
        if join_violation.any() or meet_violation.any():
            candidates = []
            if join_violation.any():
                candidates.append((tuple(int(v) for v in np.argwhere(join_violation)[0]), 0, "join"))
            if meet_violation.any():
                candidates.append((tuple(int(v) for v in np.argwhere(meet_violation)[0]), 1, "meet"))
            (y, z), _, law = min(candidates)
            return Verdict(False, (x, y, z), law)
    return PASS


def is_distributive(L: FiniteLattice) -> Verdict:
    """x∧(y∨z) = (x∧y)∨(x∧z) 전수 검사"""
    J, M = L.join_table, L.meet_table
    for x in L.elements:
        lhs = M[x][J]
        rhs = J[M[x][:, None], M[x][None, :]]
        bad = lhs != rhs
        if bad.any():
            y, z = (int(v) for v in np.argwhere(bad)[0])
            return Verdict(False, (x, y, z))
    return PASS


def is_kappa_lattice(L: FiniteLattice) -> bool:
    """κ, κ⁻¹이 전역 정의되고 서로 역사상인지"""
    kd = compute_kappa_data(L)
    if not kd.is_total:
        return False
    if len(kd.join_irreducibles) != len(kd.meet_irreducibles):
        return False
    for j in kd.join_irreducibles:
        m = kd.kappa_of(j)
        if m not in kd.kappa_inv or kd.kappa_inv_of(m) != j:
            return False
    return all(kd.kappa_inv_of(m) in kd.kappa for m in kd.meet_irreducibles)


def is_well_separated(L: FiniteLattice, kd: Optional[KappaData] = None) -> Verdict:
    """x ≰ y 인 모든 쌍에 j ≤ x, y ≤ κ(j) 인 j ∈ JI가 존재하는지"""
    kd = (kd or compute_kappa_data(L)).require_total()
    ji = np.array(kd.join_irreducibles, dtype=np.intp)
    if ji.size == 0:
        return PASS
    kappas = np.array([kd.kappa_of(int(j)) for j in ji], dtype=np.intp)
    # below[j_idx, x] = j ≤ x ; under_kappa[j_idx, y] = y ≤ κ(j)
    below = L.leq[ji, :]
    under_kappa = L.leq[:, kappas].T
    separated = (below.T.astype(np.float32) @ under_kappa.astype(np.float32)) > 0
    bad = ~L.leq & ~separated
    if bad.any():
        x, y = (int(v) for v in np.argwhere(bad)[0])
        return Verdict(False, (x, y))
    return PASS
