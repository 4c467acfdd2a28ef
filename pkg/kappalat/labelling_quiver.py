"""
KappaLat - 라벨링 퀴버
Q_L 구성, 후속 닫힌 집합 열거, φ/ψ 전단사, 선형 확장과 극값 사슬의 상호 변환
"""

import logging
from dataclasses import dataclass, field
from functools import cached_property
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple, Union

import networkx as nx

from .config import get_settings
from .exceptions import (
    BudgetExceeded,
    NotAcyclic,
    NotExtremalChain,
    NotLeftModular,
    NotLinearExtension,
    NotSuccessorClosed,
)
from .irreducibles_kappa import PASS, KappaData, Verdict, compute_kappa_data
from .lattice_core import FiniteLattice, MaximalChain, as_maximal_chain, join_set, length, rank_from_bottom
from .modularity_extremality import cover_label, is_extremal_chain, is_left_modular_def, left_modular_set

# 로깅 설정
logger = logging.getLogger(__name__)

Arrow = Tuple[int, int]


@dataclass
class LabellingQuiver:
    """JI(L) 위의 퀴버: i ≠ j 이고 i ≰ κ(j) 이면 i → j"""
    vertices: Tuple[int, ...]
    arrows: Tuple[Arrow, ...]
    acyclic: bool
    poset_order: Optional[FrozenSet[Tuple[int, int]]] = None  # (x, y): x ⪯ y
    names: Dict[int, str] = field(default_factory=dict)

    @cached_property
    def graph(self) -> nx.DiGraph:
        graph = nx.DiGraph()
        graph.add_nodes_from(self.vertices)
        graph.add_edges_from(self.arrows)
        return graph

    def name(self, v: int) -> str:
        return self.names.get(v, str(v))


@dataclass(frozen=True)
class SuccClosedSet:
    """후속 닫힌 정점 집합"""
    members: FrozenSet[int]

    @property
    def sorted_members(self) -> Tuple[int, ...]:
        return tuple(sorted(self.members))

    def __len__(self) -> int:
        return len(self.members)

    def __contains__(self, v: object) -> bool:
        return v in self.members


def build_labelling_quiver(L: FiniteLattice, kd: Optional[KappaData] = None) -> LabellingQuiver:
    kd = (kd or compute_kappa_data(L)).require_total()
    vertices = kd.join_irreducibles
    arrows = tuple(
        (i, j) for i in vertices for j in vertices if i != j and not L.leq[i, kd.kappa_of(j)]
    )
    quiver = LabellingQuiver(
        vertices=vertices,
        arrows=arrows,
        acyclic=False,
        names={v: L.name(v) for v in vertices},
    )
    quiver.acyclic = nx.is_directed_acyclic_graph(quiver.graph)
    if quiver.acyclic:
        quiver.poset_order = quiver_poset(quiver)
    logger.info(f"Labelling quiver: {len(vertices)} vertices, {len(arrows)} arrows, acyclic={quiver.acyclic}")
    return quiver


def is_successor_closed(Q: LabellingQuiver, members: Iterable[int]) -> bool:
    members = set(members)
    if not members <= set(Q.vertices):
        return False
    return all(j in members for i, j in Q.arrows if i in members)


def successor_closed_sets(Q: LabellingQuiver, max_sets: Optional[int] = None) -> List[SuccClosedSet]:
    """모든 후속 닫힌 집합을 (크기, 사전순)으로 정렬하여 반환

    강연결 성분을 축약한 DAG에서 싱크부터 포함 여부를 결정하는 백트래킹.
    """
    cap = max_sets if max_sets is not None else get_settings().set_cap
    condensed = nx.condensation(Q.graph)
    order = list(reversed(list(nx.topological_sort(condensed))))
    successors = {c: set(condensed.successors(c)) for c in condensed.nodes}
    members = {c: frozenset(condensed.nodes[c]["members"]) for c in condensed.nodes}

    results: List[FrozenSet[int]] = []
    chosen: set = set()

    def walk(i: int) -> None:
        if i == len(order):
            if len(results) >= cap:
                raise BudgetExceeded("successor-closed sets", cap)
            results.append(frozenset().union(*(members[c] for c in chosen)))
            return
        component = order[i]
        walk(i + 1)
        if successors[component] <= chosen:
            chosen.add(component)
            walk(i + 1)
            chosen.remove(component)

    walk(0)
    results.sort(key=lambda s: (len(s), sorted(s)))
    return [SuccClosedSet(s) for s in results]


def phi(L: FiniteLattice, t: int, kd: Optional[KappaData] = None) -> SuccClosedSet:
    """φ(t) = {j ∈ JI : j ≤ t}"""
    if not is_left_modular_def(L, t):
        raise NotLeftModular(f"{L.name(t)} is not left modular")
    kd = (kd or compute_kappa_data(L)).require_total()
    return SuccClosedSet(frozenset(j for j in kd.join_irreducibles if L.leq[j, t]))


def psi(L: FiniteLattice, S: Union[SuccClosedSet, Iterable[int]], Q: Optional[LabellingQuiver] = None) -> int:
    """ψ(S) = ⋁S"""
    members = S.members if isinstance(S, SuccClosedSet) else frozenset(S)
    Q = Q or build_labelling_quiver(L)
    if not is_successor_closed(Q, members):
        raise NotSuccessorClosed(f"{sorted(members)} is not successor-closed")
    return join_set(L, sorted(members))


def quiver_poset(Q: LabellingQuiver) -> FrozenSet[Tuple[int, int]]:
    """x ⪯ y 는 y 에서 x 로 가는 경로가 있을 때"""
    graph = Q.graph
    if not nx.is_directed_acyclic_graph(graph):
        raise NotAcyclic("labelling quiver has an oriented cycle")
    pairs = set()
    for y in Q.vertices:
        pairs.add((y, y))
        pairs.update((x, y) for x in nx.descendants(graph, y))
    return frozenset(pairs)


def _placement_state(Q: LabellingQuiver) -> Tuple[Dict[int, int], Dict[int, List[int]]]:
    if not nx.is_directed_acyclic_graph(Q.graph):
        raise NotAcyclic("labelling quiver has an oriented cycle")
    # 정점은 모든 후속 정점이 놓인 뒤에야 놓일 수 있다
    pending = {v: Q.graph.out_degree(v) for v in Q.vertices}
    predecessors = {v: sorted(Q.graph.predecessors(v)) for v in Q.vertices}
    return pending, predecessors


def linear_extensions(Q: LabellingQuiver, max_count: Optional[int] = None) -> List[Tuple[int, ...]]:
    """⪯ 의 모든 선형 확장 (⪯-최소부터 나열, 사전순 최소 정점 우선)"""
    cap = max_count if max_count is not None else get_settings().linext_cap
    pending, predecessors = _placement_state(Q)
    vertices = sorted(Q.vertices)
    placed: List[int] = []
    used = set()
    results: List[Tuple[int, ...]] = []

    def walk() -> None:
        if len(placed) == len(vertices):
            if len(results) >= cap:
                raise BudgetExceeded("linear extensions", cap)
            results.append(tuple(placed))
            return
        for v in vertices:
            if v in used or pending[v]:
                continue
            used.add(v)
            placed.append(v)
            for p in predecessors[v]:
                pending[p] -= 1
            walk()
            for p in predecessors[v]:
                pending[p] += 1
            placed.pop()
            used.remove(v)

    walk()
    return results


def count_linear_extensions(Q: LabellingQuiver) -> int:
    """놓인 정점 집합(하집합)별 메모이제이션으로 선형 확장 수를 계산"""
    _placement_state(Q)
    index = {v: i for i, v in enumerate(sorted(Q.vertices))}
    successor_masks = [0] * len(index)
    for i, j in Q.arrows:
        successor_masks[index[i]] |= 1 << index[j]
    full = (1 << len(index)) - 1
    memo: Dict[int, int] = {full: 1}

    def count(mask: int) -> int:
        if mask in memo:
            return memo[mask]
        total = 0
        for i, succ in enumerate(successor_masks):
            if not mask >> i & 1 and succ & mask == succ:
                total += count(mask | 1 << i)
        memo[mask] = total
        return total

    return count(0)


def _validate_linear_extension(Q: LabellingQuiver, order: Sequence[int]) -> None:
    if sorted(order) != sorted(Q.vertices):
        raise NotLinearExtension(f"{list(order)} is not a permutation of the quiver vertices")
    position = {v: k for k, v in enumerate(order)}
    for i, j in Q.arrows:
        # i → j 이면 j ⪯ i
        if position[j] > position[i]:
            raise NotLinearExtension(f"{Q.name(j)} must precede {Q.name(i)}")


def extremal_chain_from_linext(
    L: FiniteLattice, order: Sequence[int], Q: Optional[LabellingQuiver] = None
) -> MaximalChain:
    """선형 확장의 접두 하집합들의 join으로 극값 사슬을 구성"""
    Q = Q or build_labelling_quiver(L)
    _validate_linear_extension(Q, order)
    elements = [join_set(L, order[:k]) for k in range(len(order) + 1)]
    return as_maximal_chain(L, elements)


def linext_from_extremal_chain(
    L: FiniteLattice, chain: Sequence[int], kd: Optional[KappaData] = None
) -> Tuple[int, ...]:
    """극값 사슬의 cover 라벨을 아래에서부터 읽음"""
    kd = kd or compute_kappa_data(L)
    if not is_extremal_chain(L, chain, kd):
        raise NotExtremalChain(f"{list(chain)} is not an extremal chain")
    return tuple(cover_label(L, x, y, kd) for x, y in zip(chain, chain[1:]))


def extremal_chains(
    L: FiniteLattice, kd: Optional[KappaData] = None, max_chains: Optional[int] = None
) -> List[MaximalChain]:
    """극값 사슬 열거: 길이 |JI|의 최장 사슬 중 극값 사슬 조건을 만족하는 것"""
    cap = max_chains if max_chains is not None else get_settings().chain_cap
    kd = (kd or compute_kappa_data(L)).require_total()
    if length(L) != len(kd.join_irreducibles):
        return []
    rank = rank_from_bottom(L)
    found: List[MaximalChain] = []
    path = [L.bottom]

    def walk(x: int) -> None:
        if x == L.top:
            chain = MaximalChain(tuple(path))
            if is_extremal_chain(L, chain.elements, kd):
                if len(found) >= cap:
                    raise BudgetExceeded("extremal chains", cap)
                found.append(chain)
            return
        for y in L.upper_covers(x):
            if rank[y] == rank[x] + 1:
                path.append(y)
                walk(y)
                path.pop()

    walk(L.bottom)
    return found


def succ_lattice_matches_lm(L: FiniteLattice, Q: Optional[LabellingQuiver] = None) -> Verdict:
    """ψ 가 (succ(Q_L), ⊆) 에서 LM(L) 로의 순서 동형인지 확인"""
    Q = Q or build_labelling_quiver(L)
    sets = successor_closed_sets(Q)
    images = [psi(L, s, Q) for s in sets]
    lm = left_modular_set(L).lm_set
    if sorted(images) != list(lm):
        return Verdict(False, tuple(sorted(set(images) ^ set(lm))), "psi image differs from LM(L)")
    for a, sa in zip(images, sets):
        for b, sb in zip(images, sets):
            if (sa.members <= sb.members) != bool(L.leq[a, b]):
                return Verdict(False, (a, b), "psi does not preserve order")
    return PASS
