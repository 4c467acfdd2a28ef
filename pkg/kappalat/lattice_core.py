"""
KappaLat - 유한 격자 핵심 구조
순서/meet/join 테이블, 극대 사슬, 구간, 쌍대 격자 및 lattice-v1 입출력
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Tuple

import networkx as nx
import numpy as np

from .config import get_settings
from .exceptions import (
    BudgetExceeded,
    CoverNotReduced,
    CycleDetected,
    InputError,
    NotALattice,
    NotComparable,
    NotMaximalChain,
    ParseError,
)

# 로깅 설정
logger = logging.getLogger(__name__)

FORMAT_HEADER = "lattice-v1"
META_PREFIX = "# meta "

Cover = Tuple[int, int]


def _freeze(array: np.ndarray) -> np.ndarray:
    array.setflags(write=False)
    return array


def transitive_reduction(leq: np.ndarray) -> np.ndarray:
    """반사적 순서 행렬에서 cover 행렬(Hasse 간선)을 계산"""
    n = leq.shape[0]
    strict = leq & ~np.eye(n, dtype=bool)
    weights = strict.astype(np.float32)
    two_step = (weights @ weights) > 0
    return strict & ~two_step


def _bound_table(above: np.ndarray, operation: str) -> np.ndarray:
    """above[i, k]가 'k는 i 이상'일 때 최소 상계 테이블을 계산

    공통 상계 집합 U에서 자신의 상집합 크기가 |U|와 같은 원소가 유일한 최소 상계다.
    """
    n = above.shape[0]
    up_sizes = above.sum(axis=1)
    table = np.empty((n, n), dtype=np.intp)
    for i in range(n):
        common = above[i][None, :] & above
        counts = common.sum(axis=1)
        scores = np.where(common, up_sizes[None, :], -1)
        candidates = scores.argmax(axis=1)
        valid = (counts > 0) & (up_sizes[candidates] == counts)
        if not valid.all():
            j = int(np.flatnonzero(~valid)[0])
            raise NotALattice((i, j), operation)
        table[i] = candidates
    return table


class FiniteLattice:
    """순서, cover, meet, join 테이블을 가진 불변 유한 격자

    원소는 0..n-1 정수 인덱스이며 이름은 표시용이다.
    """

    def __init__(
        self,
        leq: np.ndarray,
        covers: Sequence[Cover],
        meet_table: np.ndarray,
        join_table: np.ndarray,
        names: Optional[Sequence[str]] = None,
    ):
        self.n = int(leq.shape[0])
        self.leq = _freeze(leq)
        self.covers: Tuple[Cover, ...] = tuple(sorted((int(a), int(b)) for a, b in covers))
        self.meet_table = _freeze(meet_table)
        self.join_table = _freeze(join_table)
        self.names: Optional[Tuple[str, ...]] = tuple(names) if names is not None else None
        self.bottom = int(np.flatnonzero(leq.all(axis=1))[0])
        self.top = int(np.flatnonzero(leq.all(axis=0))[0])

        upper: List[List[int]] = [[] for _ in range(self.n)]
        lower: List[List[int]] = [[] for _ in range(self.n)]
        for a, b in self.covers:
            upper[a].append(b)
            lower[b].append(a)
        self._upper = tuple(tuple(u) for u in upper)
        self._lower = tuple(tuple(l) for l in lower)
        self._cover_set = frozenset(self.covers)
        # 파생 데이터(κ 테이블 등) 메모
        self._memo: Dict[str, object] = {}

    @classmethod
    def from_leq(cls, leq: np.ndarray, names: Optional[Sequence[str]] = None) -> "FiniteLattice":
        """반사적 부분순서 행렬로부터 격자를 구성"""
        leq = np.array(leq, dtype=bool)
        n = leq.shape[0]
        if n == 0 or leq.shape != (n, n):
            raise InputError("order matrix must be square and non-empty")
        if not leq.diagonal().all():
            raise InputError("order matrix is not reflexive")
        both = leq & leq.T
        np.fill_diagonal(both, False)
        if both.any():
            a, b = (int(v) for v in np.argwhere(both)[0])
            raise CycleDetected([a, b])
        weights = leq.astype(np.float32)
        if ((weights @ weights) > 0).astype(bool)[~leq].any():
            raise InputError("order matrix is not transitive")
        reduction = transitive_reduction(leq)
        covers = [(int(a), int(b)) for a, b in np.argwhere(reduction)]
        return cls._assemble(leq, covers, names)

    @classmethod
    def _assemble(
        cls, leq: np.ndarray, covers: Sequence[Cover], names: Optional[Sequence[str]]
    ) -> "FiniteLattice":
        join_table = _bound_table(leq, "join")
        meet_table = _bound_table(leq.T, "meet")
        return cls(leq, covers, meet_table, join_table, names)

    # 기본 질의
    def name(self, x: int) -> str:
        return self.names[x] if self.names is not None else str(x)

    def le(self, a: int, b: int) -> bool:
        return bool(self.leq[a, b])

    def is_cover(self, a: int, b: int) -> bool:
        return (a, b) in self._cover_set

    def upper_covers(self, x: int) -> Tuple[int, ...]:
        return self._upper[x]

    def lower_covers(self, x: int) -> Tuple[int, ...]:
        return self._lower[x]

    @property
    def elements(self) -> range:
        return range(self.n)

    def __len__(self) -> int:
        return self.n

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FiniteLattice):
            return NotImplemented
        return (
            self.n == other.n
            and self.covers == other.covers
            and np.array_equal(self.leq, other.leq)
            and np.array_equal(self.meet_table, other.meet_table)
            and np.array_equal(self.join_table, other.join_table)
            and self.names == other.names
        )

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        return f"FiniteLattice(n={self.n}, covers={len(self.covers)})"


@dataclass(frozen=True)
class Chain:
    """순증가 원소 열"""
    elements: Tuple[int, ...]

    def __iter__(self) -> Iterator[int]:
        return iter(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __getitem__(self, index: int) -> int:
        return self.elements[index]

    @property
    def length(self) -> int:
        return len(self.elements) - 1

    def steps(self) -> List[Cover]:
        return list(zip(self.elements, self.elements[1:]))

    def names(self, L: FiniteLattice) -> List[str]:
        return [L.name(x) for x in self.elements]


@dataclass(frozen=True)
class MaximalChain(Chain):
    """0̂에서 1̂까지 cover만으로 이어진 사슬"""


def _check_index(L: FiniteLattice, *indices: int) -> None:
    for x in indices:
        if not 0 <= x < L.n:
            raise IndexError(f"element {x} out of range for lattice of size {L.n}")


def build_lattice(n: int, covers: Iterable[Cover], names: Optional[Sequence[str]] = None) -> FiniteLattice:
    """cover 목록으로 격자를 구성하고 공리를 검증"""
    if n < 1:
        raise InputError(f"element count must be positive, got {n}")
    if names is not None and len(names) != n:
        raise InputError(f"expected {n} names, got {len(names)}")
    pairs = sorted({(int(a), int(b)) for a, b in covers})
    for a, b in pairs:
        if not (0 <= a < n and 0 <= b < n):
            raise InputError(f"cover {a} {b} out of range for n={n}")
        if a == b:
            raise CycleDetected([a])

    graph = nx.DiGraph()
    graph.add_nodes_from(range(n))
    graph.add_edges_from(pairs)
    if not nx.is_directed_acyclic_graph(graph):
        cycle = [u for u, _ in nx.find_cycle(graph)]
        raise CycleDetected(cycle)

    # 역위상 순서로 상집합 행을 누적
    leq = np.eye(n, dtype=bool)
    for x in reversed(list(nx.topological_sort(graph))):
        for y in graph.successors(x):
            leq[x] |= leq[y]

    for a, b in pairs:
        between = leq[a] & leq[:, b]
        between[a] = between[b] = False
        if between.any():
            raise CoverNotReduced((a, b), int(np.flatnonzero(between)[0]))

    lattice = FiniteLattice._assemble(leq, pairs, names)
    logger.info(f"Lattice built: n={n}, covers={len(pairs)}")
    return lattice


def meet(L: FiniteLattice, a: int, b: int) -> int:
    _check_index(L, a, b)
    return int(L.meet_table[a, b])


def join(L: FiniteLattice, a: int, b: int) -> int:
    _check_index(L, a, b)
    return int(L.join_table[a, b])


def meet_set(L: FiniteLattice, elements: Iterable[int]) -> int:
    """부분집합의 meet (공집합이면 1̂)"""
    result = L.top
    for x in elements:
        result = meet(L, result, x)
    return result


def join_set(L: FiniteLattice, elements: Iterable[int]) -> int:
    """부분집합의 join (공집합이면 0̂)"""
    result = L.bottom
    for x in elements:
        result = join(L, result, x)
    return result


def rank_from_bottom(L: FiniteLattice) -> np.ndarray:
    """각 원소까지의 최장 cover 경로 길이"""
    if "rank" not in L._memo:
        # 하집합 크기 순서는 선형 확장이다
        order = np.argsort(L.leq.sum(axis=0), kind="stable")
        rank = np.zeros(L.n, dtype=np.intp)
        for y in order:
            lower = L.lower_covers(int(y))
            if lower:
                rank[y] = max(rank[x] for x in lower) + 1
        L._memo["rank"] = _freeze(rank)
    return L._memo["rank"]  # type: ignore[return-value]


def length(L: FiniteLattice) -> int:
    """최장 사슬의 길이"""
    return int(rank_from_bottom(L)[L.top])


def iter_maximal_chains(L: FiniteLattice, max_chains: Optional[int] = None) -> Iterator[MaximalChain]:
    """극대 사슬을 원소 인덱스 사전순으로 생성"""
    cap = max_chains if max_chains is not None else get_settings().chain_cap
    path = [L.bottom]
    count = 0

    def walk(x: int) -> Iterator[MaximalChain]:
        nonlocal count
        if x == L.top:
            count += 1
            if count > cap:
                raise BudgetExceeded("maximal chains", cap)
            yield MaximalChain(tuple(path))
            return
        for y in L.upper_covers(x):
            path.append(y)
            yield from walk(y)
            path.pop()

    yield from walk(L.bottom)


def maximal_chains(L: FiniteLattice, max_chains: Optional[int] = None) -> List[MaximalChain]:
    chains = list(iter_maximal_chains(L, max_chains))
    logger.info(f"Enumerated {len(chains)} maximal chains")
    return chains


def is_maximal_chain(L: FiniteLattice, elements: Sequence[int]) -> bool:
    if not elements or elements[0] != L.bottom or elements[-1] != L.top:
        return False
    return all(L.is_cover(a, b) for a, b in zip(elements, elements[1:]))


def as_maximal_chain(L: FiniteLattice, elements: Sequence[int]) -> MaximalChain:
    """원소 열을 검증하여 MaximalChain으로 변환"""
    elements = tuple(int(x) for x in elements)
    _check_index(L, *elements)
    if not is_maximal_chain(L, elements):
        raise NotMaximalChain(f"{list(elements)} is not a bottom-to-top cover path")
    return MaximalChain(elements)


def interval_members(L: FiniteLattice, x: int, y: int) -> List[int]:
    _check_index(L, x, y)
    if not L.leq[x, y]:
        raise NotComparable(f"{L.name(x)} is not below {L.name(y)}")
    return [int(z) for z in np.flatnonzero(L.leq[x] & L.leq[:, y])]


def interval(L: FiniteLattice, x: int, y: int) -> FiniteLattice:
    """구간 [x, y]의 유도 부분격자"""
    members = interval_members(L, x, y)
    sub = L.leq[np.ix_(members, members)].copy()
    names = [L.name(z) for z in members]
    return FiniteLattice.from_leq(sub, names)


def dual(L: FiniteLattice) -> FiniteLattice:
    """순서를 뒤집고 meet/join 테이블을 교환"""
    return FiniteLattice(
        L.leq.T.copy(),
        [(b, a) for a, b in L.covers],
        L.join_table.copy(),
        L.meet_table.copy(),
        L.names,
    )


@dataclass
class LatticeDocument:
    """격자와 '# meta' 주석 행 묶음"""
    lattice: FiniteLattice
    meta: Dict[str, List[List[str]]] = field(default_factory=dict)


def parse_document(text: str) -> LatticeDocument:
    """lattice-v1 텍스트를 파싱"""
    header_seen = False
    n: Optional[int] = None
    names: Dict[int, str] = {}
    covers: List[Cover] = []
    seen_covers = set()
    meta: Dict[str, List[List[str]]] = {}

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if line == META_PREFIX.strip() or line.startswith(META_PREFIX):
            tokens = line[len(META_PREFIX):].split()
            if not tokens:
                raise ParseError(lineno, "empty meta line")
            meta.setdefault(tokens[0], []).append(tokens[1:])
            continue
        if not line or line.startswith("#"):
            continue
        if not header_seen:
            if line != FORMAT_HEADER:
                raise ParseError(lineno, f"expected '{FORMAT_HEADER}' header")
            header_seen = True
            continue
        if n is None:
            if not line.startswith("n="):
                raise ParseError(lineno, "expected 'n=<count>'")
            try:
                n = int(line[2:])
            except ValueError:
                raise ParseError(lineno, f"invalid element count '{line[2:]}'")
            if n < 1:
                raise ParseError(lineno, "element count must be positive")
            continue

        keyword, _, rest = line.partition(" ")
        if keyword == "name":
            index_text, _, label = rest.strip().partition(" ")
            label = label.strip()
            index = _parse_index(index_text, n, lineno)
            if not label:
                raise ParseError(lineno, "missing name")
            if index in names:
                raise ParseError(lineno, f"duplicate name for element {index}")
            names[index] = label
        elif keyword == "cover":
            parts = rest.split()
            if len(parts) != 2:
                raise ParseError(lineno, "cover needs exactly two indices")
            pair = (_parse_index(parts[0], n, lineno), _parse_index(parts[1], n, lineno))
            if pair in seen_covers:
                raise ParseError(lineno, f"duplicate cover {pair[0]} {pair[1]}")
            seen_covers.add(pair)
            covers.append(pair)
        else:
            raise ParseError(lineno, f"unknown directive '{keyword}'")

    if not header_seen:
        raise ParseError(1, f"missing '{FORMAT_HEADER}' header")
    if n is None:
        raise ParseError(max(1, len(text.splitlines())), "missing 'n=<count>' line")

    label_list = [names.get(i, str(i)) for i in range(n)] if names else None
    return LatticeDocument(build_lattice(n, covers, label_list), meta)


def _parse_index(token: str, n: int, lineno: int) -> int:
    try:
        value = int(token)
    except ValueError:
        raise ParseError(lineno, f"invalid element index '{token}'")
    if not 0 <= value < n:
        raise ParseError(lineno, f"element index {value} out of range for n={n}")
    return value


def parse_lattice(text: str) -> FiniteLattice:
    return parse_document(text).lattice


def serialize_lattice(L: FiniteLattice) -> str:
    """정규화된 lattice-v1 텍스트 (cover 사전순)"""
    lines = [FORMAT_HEADER, f"n={L.n}"]
    if L.names is not None:
        lines.extend(f"name {i} {label}" for i, label in enumerate(L.names))
    lines.extend(f"cover {a} {b}" for a, b in L.covers)
    return "\n".join(lines) + "\n"


def serialize_document(doc: LatticeDocument) -> str:
    lines = [serialize_lattice(doc.lattice).rstrip("\n")]
    for key, rows in doc.meta.items():
        for row in rows:
            lines.append(" ".join([META_PREFIX.strip(), key, *row]))
    return "\n".join(lines) + "\n"
