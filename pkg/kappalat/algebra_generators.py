"""
KappaLat - 벤치마크 격자 생성기
Boolean/사슬/하집합/Tamari/약순서 격자와 선형 퀴버 Nakayama 대수의 꼬임류(torsion class) 격자
"""

import itertools
import logging
import re
from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property
from math import comb
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple, Union

import networkx as nx
import numpy as np

from .config import get_settings
from .exceptions import BudgetExceeded, CycleDetected, InconsistentModel, InputError, InvalidInterval, MissingMetadata
from .irreducibles_kappa import compute_kappa_data
from .lattice_core import Cover, FiniteLattice, LatticeDocument, build_lattice
from .modularity_extremality import cover_labels

# 로깅 설정
logger = logging.getLogger(__name__)

BRICK_PATTERN = re.compile(r"^M\[(\d+),(\d+)\]$")


class LatticeFamily(Enum):
    """생성 가능한 격자 계열"""
    BOOLEAN = "boolean"
    CHAIN = "chain"
    DOWNSET = "downset"
    TAMARI = "tamari"
    WEAK_ORDER = "weak_order"
    NAKAYAMA_TORS = "nakayama_tors"


def _check_size(what: str, size: int, max_elements: Optional[int]) -> None:
    cap = max_elements if max_elements is not None else get_settings().max_generated_elements
    if size > cap:
        raise BudgetExceeded(f"{what} with {size} elements", cap)


def _set_name(members: Iterable[int]) -> str:
    return "{" + ",".join(str(v) for v in members) + "}"


# 표준 격자 계열

def boolean_lattice(k: int, max_elements: Optional[int] = None) -> FiniteLattice:
    """{1..k}의 부분집합 격자 (원소 인덱스 = 비트마스크)"""
    if k < 0:
        raise InputError("boolean lattice rank must be non-negative")
    _check_size("boolean lattice", 2 ** k, max_elements)
    size = 2 ** k
    covers = [(mask, mask | 1 << i) for mask in range(size) for i in range(k) if not mask >> i & 1]
    names = [_set_name(i + 1 for i in range(k) if mask >> i & 1) for mask in range(size)]
    return build_lattice(size, covers, names)


def chain_lattice(m: int, max_elements: Optional[int] = None) -> FiniteLattice:
    """길이 m의 사슬 0 < 1 < ... < m"""
    if m < 0:
        raise InputError("chain length must be non-negative")
    _check_size("chain lattice", m + 1, max_elements)
    return build_lattice(m + 1, [(i, i + 1) for i in range(m)], [str(i) for i in range(m + 1)])


def downset_lattice(
    k: int, relations: Iterable[Tuple[int, int]], max_elements: Optional[int] = None
) -> FiniteLattice:
    """유한 포셋 (원소 0..k-1, 관계 a < b)의 하집합 격자"""
    if k < 0:
        raise InputError("poset size must be non-negative")
    graph = nx.DiGraph()
    graph.add_nodes_from(range(k))
    for a, b in relations:
        if not (0 <= a < k and 0 <= b < k):
            raise InputError(f"relation {a}<{b} out of range for poset of size {k}")
        if a == b:
            raise CycleDetected([a])
        graph.add_edge(a, b)
    if not nx.is_directed_acyclic_graph(graph):
        raise CycleDetected([u for u, _ in nx.find_cycle(graph)])

    below = [frozenset(nx.ancestors(graph, x)) for x in range(k)]
    cap = max_elements if max_elements is not None else get_settings().max_generated_elements
    downsets: List[FrozenSet[int]] = []
    order = list(nx.topological_sort(graph))

    def walk(i: int, current: FrozenSet[int]) -> None:
        if i == len(order):
            if len(downsets) >= cap:
                raise BudgetExceeded("downset lattice", cap)
            downsets.append(current)
            return
        x = order[i]
        walk(i + 1, current)
        if below[x] <= current:
            walk(i + 1, current | {x})

    walk(0, frozenset())
    downsets.sort(key=lambda d: (len(d), sorted(d)))
    index = {d: i for i, d in enumerate(downsets)}
    covers = [
        (index[d], index[d | {x}])
        for d in downsets
        for x in range(k)
        if x not in d and (d | {x}) in index
    ]
    return build_lattice(len(downsets), covers, [_set_name(sorted(d)) for d in downsets])


Tree = Optional[Tuple["Tree", "Tree"]]


def _binary_trees(k: int) -> List[Tree]:
    if k == 0:
        return [None]
    return [
        (left, right)
        for i in range(k)
        for left in _binary_trees(i)
        for right in _binary_trees(k - 1 - i)
    ]


def _right_rotations(tree: Tree) -> List[Tree]:
    """((A,B),C) → (A,(B,C)) 를 각 노드에 적용한 결과"""
    if tree is None:
        return []
    left, right = tree
    rotated: List[Tree] = []
    if left is not None:
        a, b = left
        rotated.append((a, (b, right)))
    rotated.extend((new_left, right) for new_left in _right_rotations(left))
    rotated.extend((left, new_right) for new_right in _right_rotations(right))
    return rotated


def _bracketing(tree: Tree, letters: Iterable[str]) -> str:
    letters = iter(letters)

    def render(node: Tree) -> str:
        if node is None:
            return next(letters)
        return "(" + render(node[0]) + render(node[1]) + ")"

    text = render(tree)
    return text[1:-1] if tree is not None else text


def catalan(k: int) -> int:
    return comb(2 * k, k) // (k + 1)


def tamari(k: int, max_elements: Optional[int] = None) -> FiniteLattice:
    """k개의 내부 노드를 가진 이진 트리의 오른쪽 회전 순서 (최소 원소는 왼쪽 빗)"""
    if k < 0:
        raise InputError("tamari size must be non-negative")
    _check_size("tamari lattice", catalan(k), max_elements)
    trees = _binary_trees(k)
    letters = [chr(ord("a") + i) for i in range(k + 1)] if k < 26 else [f"x{i}" for i in range(k + 1)]
    names = {tree: _bracketing(tree, letters) for tree in trees}

    # 왼쪽 빗에서 BFS로 인덱스 부여
    left_comb: Tree = None
    for _ in range(k):
        left_comb = (left_comb, None)
    index: Dict[Tree, int] = {left_comb: 0}
    queue = [left_comb]
    covers: List[Cover] = []
    while queue:
        tree = queue.pop(0)
        for upper in sorted(_right_rotations(tree), key=lambda t: names[t]):
            if upper not in index:
                index[upper] = len(index)
                queue.append(upper)
            covers.append((index[tree], index[upper]))
    ordered = sorted(index, key=index.get)
    return build_lattice(len(ordered), covers, [names[t] for t in ordered])


def weak_order(n: int) -> FiniteLattice:
    """S_n 의 오른쪽 약순서: w ⋖ w·s_i (길이 증가)"""
    if not 2 <= n <= 6:
        raise InputError(f"weak order supports 2 <= n <= 6, got {n}")
    perms = list(itertools.permutations(range(1, n + 1)))
    index = {w: i for i, w in enumerate(perms)}
    covers = []
    for w in perms:
        for i in range(n - 1):
            if w[i] < w[i + 1]:
                swapped = w[:i] + (w[i + 1], w[i]) + w[i + 2:]
                covers.append((index[w], index[swapped]))
    return build_lattice(len(perms), covers, ["".join(map(str, w)) for w in perms])


# Nakayama 대수 모델

@dataclass(frozen=True, order=True)
class Interval:
    """구간 가군 M[a,b] (top S_a, socle S_b)"""
    a: int
    b: int

    @property
    def label(self) -> str:
        return f"M[{self.a},{self.b}]"

    @property
    def length(self) -> int:
        return self.b - self.a + 1

    def contains(self, other: "Interval") -> bool:
        return self.a <= other.a and other.b <= self.b

    @classmethod
    def parse_range(cls, text: str) -> "Interval":
        """'a..b' 형식"""
        match = re.fullmatch(r"\s*(\d+)\.\.(\d+)\s*", text)
        if not match:
            raise InvalidInterval(f"expected 'a..b', got '{text}'")
        return cls(int(match.group(1)), int(match.group(2)))

    @classmethod
    def parse_label(cls, text: str) -> "Interval":
        match = BRICK_PATTERN.match(text)
        if not match:
            raise InputError(f"invalid brick token '{text}'")
        return cls(int(match.group(1)), int(match.group(2)))

    def __str__(self) -> str:
        return self.label


def _indecomposable_key(interval: Interval) -> Tuple[int, int]:
    # socle 내림차순, top 내림차순 (단순 사영 가군부터)
    return (-interval.b, -interval.a)


@dataclass(frozen=True)
class AlgebraModel:
    """선형 퀴버 A_n (i → i+1) 위의 Nakayama 대수 조합 모델"""
    n_vertices: int
    forbidden: FrozenSet[Interval]
    indecomposables: Tuple[Interval, ...]

    @cached_property
    def index(self) -> Dict[Interval, int]:
        return {x: i for i, x in enumerate(self.indecomposables)}

    @property
    def bricks(self) -> Tuple[Interval, ...]:
        # 선형 퀴버의 구간 가군은 모두 brick
        return self.indecomposables

    @property
    def minimal_forbidden(self) -> Tuple[Interval, ...]:
        return tuple(
            sorted(
                f for f in self.forbidden
                if not any(g != f and f.contains(g) for g in self.forbidden)
            )
        )

    @property
    def is_connected(self) -> bool:
        return not any(f.length == 2 for f in self.forbidden)

    def describe(self) -> str:
        forbid = ",".join(f"{f.a}..{f.b}" for f in self.minimal_forbidden)
        return f"nakayama n={self.n_vertices}" + (f" forbid={forbid}" if forbid else "")

    def is_allowed(self, a: int, b: int) -> bool:
        return 1 <= a <= b <= self.n_vertices and Interval(a, b) not in self.forbidden

    def hom_nonzero(self, x: Interval, y: Interval) -> bool:
        """Hom(M[a,b], M[c,d]) ≠ 0 ⇔ c ≤ a ≤ d ≤ b (상은 M[a,d])"""
        return y.a <= x.a <= y.b <= x.b

    def extension_middle(self, quotient: Interval, sub: Interval) -> Optional[Interval]:
        """0 → M[b+1,d] → M[a,d] → M[a,b] → 0 의 중간항"""
        if sub.a == quotient.b + 1 and self.is_allowed(quotient.a, sub.b):
            return Interval(quotient.a, sub.b)
        return None

    def quotients(self, x: Interval) -> List[Interval]:
        return [Interval(x.a, e) for e in range(x.a, x.b + 1)]

    def submodules(self, x: Interval) -> List[Interval]:
        return [Interval(f, x.b) for f in range(x.a, x.b + 1)]

    @cached_property
    def _quotient_masks(self) -> Tuple[int, ...]:
        return tuple(
            sum(1 << self.index[q] for q in self.quotients(x)) for x in self.indecomposables
        )

    @cached_property
    def _extension_triples(self) -> Tuple[Tuple[int, int, int], ...]:
        triples = []
        for x in self.indecomposables:
            for y in self.indecomposables:
                middle = self.extension_middle(x, y)
                if middle is not None:
                    triples.append((self.index[x], self.index[y], self.index[middle]))
        return tuple(triples)

    def mask_of(self, modules: Iterable[Interval]) -> int:
        return sum(1 << self.index[x] for x in set(modules))

    def modules_of(self, mask: int) -> FrozenSet[Interval]:
        return frozenset(x for i, x in enumerate(self.indecomposables) if mask >> i & 1)

    def closure_mask(self, mask: int) -> int:
        """몫과 확장 중간항에 대해 닫힌 최소 집합"""
        while True:
            grown = mask
            for i, quotient_mask in enumerate(self._quotient_masks):
                if grown >> i & 1:
                    grown |= quotient_mask
            for i, k, middle in self._extension_triples:
                if grown >> i & 1 and grown >> k & 1:
                    grown |= 1 << middle
            if grown == mask:
                return mask
            mask = grown

    def torsion_closure(self, modules: Iterable[Interval]) -> FrozenSet[Interval]:
        return self.modules_of(self.closure_mask(self.mask_of(modules)))

    def is_torsion_class(self, modules: Iterable[Interval]) -> bool:
        """몫/확장 닫힘을 구간 규칙으로 직접 확인"""
        members = set(modules)
        for x in members:
            if any(q not in members for q in self.quotients(x)):
                return False
        for x in members:
            for y in members:
                middle = self.extension_middle(x, y)
                if middle is not None and middle not in members:
                    return False
        return True

    def torsion_free_class(self, modules: Iterable[Interval]) -> FrozenSet[Interval]:
        """T⊥ = {Y : 모든 X ∈ T 에 대해 Hom(X, Y) = 0}"""
        members = list(modules)
        return frozenset(
            y for y in self.indecomposables if not any(self.hom_nonzero(x, y) for x in members)
        )

    def is_brick_splitting(self, modules: Iterable[Interval]) -> bool:
        members = frozenset(modules)
        perp = self.torsion_free_class(members)
        return all(b in members or b in perp for b in self.bricks)

    def meta_tokens(self) -> List[str]:
        return self.describe().split()


def _upward_closure(n: int, intervals: Iterable[Interval]) -> FrozenSet[Interval]:
    closed = set()
    for f in intervals:
        for a in range(1, f.a + 1):
            for b in range(f.b, n + 1):
                closed.add(Interval(a, b))
    return frozenset(closed)


def nakayama_algebra(n: int, forbidden: Iterable[Union[Interval, Tuple[int, int]]] = ()) -> AlgebraModel:
    """선형 퀴버 Nakayama 대수 모델 생성 (금지 구간은 위로 닫힘)"""
    if n < 1:
        raise InvalidInterval(f"vertex count must be positive, got {n}")
    generators = []
    for item in forbidden:
        interval = item if isinstance(item, Interval) else Interval(*item)
        if not 1 <= interval.a < interval.b <= n:
            raise InvalidInterval(f"forbidden interval {interval.a}..{interval.b} must satisfy 1 <= a < b <= {n}")
        generators.append(interval)
    closed = _upward_closure(n, generators)
    indecomposables = tuple(
        sorted(
            (Interval(a, b) for a in range(1, n + 1) for b in range(a, n + 1) if Interval(a, b) not in closed),
            key=_indecomposable_key,
        )
    )
    return AlgebraModel(n_vertices=n, forbidden=closed, indecomposables=indecomposables)


def parse_algebra_meta(tokens: Sequence[str]) -> AlgebraModel:
    """'nakayama n=<n> [forbid=a..b,c..d]' 토큰 해석"""
    if not tokens or tokens[0] != "nakayama":
        raise InputError(f"unsupported algebra metadata {list(tokens)}")
    n: Optional[int] = None
    forbidden: List[Interval] = []
    for token in tokens[1:]:
        key, _, value = token.partition("=")
        if key == "n":
            if not value.isdigit():
                raise InputError(f"algebra metadata has invalid vertex count '{value}'")
            n = int(value)
        elif key == "forbid":
            forbidden.extend(Interval.parse_range(part) for part in value.split(",") if part)
        else:
            raise InputError(f"unknown algebra metadata field '{key}'")
    if n is None:
        raise InputError("algebra metadata lacks n=<count>")
    return nakayama_algebra(n, forbidden)


def nakayama_models(n: int, connected_only: bool = False) -> List[AlgebraModel]:
    """n개 정점의 모든 (위로 닫힌) 금지 구간 집합에 대한 모델"""
    candidates = [Interval(a, b) for a in range(1, n + 1) for b in range(a + 1, n + 1)]
    models = []
    for size in range(len(candidates) + 1):
        for subset in itertools.combinations(candidates, size):
            chosen = frozenset(subset)
            if _upward_closure(n, chosen) != chosen:
                continue
            model = nakayama_algebra(n, chosen)
            if connected_only and not model.is_connected:
                continue
            models.append(model)
    return models


def glued_brick_count(m1: int, m2: int) -> int:
    """두 brick-directed 대수를 한 정점에서 붙였을 때의 brick 수 |brick A₁| + |brick A₂| - 1"""
    return m1 + m2 - 1


# 꼬임류 격자

@dataclass
class BrickQuiver:
    """Hom(X, Y) ≠ 0 인 서로 다른 brick 사이의 화살표"""
    vertices: Tuple[Interval, ...]
    arrows: Tuple[Tuple[Interval, Interval], ...]
    acyclic: bool

    @cached_property
    def graph(self) -> nx.DiGraph:
        graph = nx.DiGraph()
        graph.add_nodes_from(self.vertices)
        graph.add_edges_from(self.arrows)
        return graph


def brick_quiver(A: AlgebraModel) -> BrickQuiver:
    arrows = tuple(
        (x, y) for x in A.bricks for y in A.bricks if x != y and A.hom_nonzero(x, y)
    )
    graph = nx.DiGraph()
    graph.add_nodes_from(A.bricks)
    graph.add_edges_from(arrows)
    return BrickQuiver(vertices=A.bricks, arrows=arrows, acyclic=nx.is_directed_acyclic_graph(graph))


def is_brick_directed(A: AlgebraModel) -> bool:
    return brick_quiver(A).acyclic


@dataclass
class TorsLattice:
    """원소마다 brick 집합, cover마다 brick 라벨을 가진 꼬임류 격자"""
    lattice: FiniteLattice
    algebra: AlgebraModel
    element_bricks: Tuple[FrozenSet[Interval], ...]
    cover_bricklabel: Dict[Cover, Interval] = field(default_factory=dict)

    @classmethod
    def attach(
        cls, lattice: FiniteLattice, algebra: AlgebraModel, element_bricks: Sequence[FrozenSet[Interval]]
    ) -> "TorsLattice":
        """격자와 brick 집합을 묶고 cover 라벨을 계산/교차검증"""
        tors = cls(lattice, algebra, tuple(element_bricks))
        tors._validate_order()
        tors.cover_bricklabel = tors._label_covers()
        return tors

    def _validate_order(self) -> None:
        L = self.lattice
        if len(self.element_bricks) != L.n:
            raise InconsistentModel(f"expected {L.n} brick sets, got {len(self.element_bricks)}")
        for x in L.elements:
            if not self.algebra.is_torsion_class(self.element_bricks[x]):
                raise InconsistentModel(f"element {L.name(x)} is not a torsion class")
            for y in L.elements:
                if (self.element_bricks[x] <= self.element_bricks[y]) != bool(L.leq[x, y]):
                    raise InconsistentModel(f"order of {L.name(x)}, {L.name(y)} is not brick-set inclusion")
        if self.element_bricks[L.bottom] or self.element_bricks[L.top] != frozenset(self.algebra.bricks):
            raise InconsistentModel("bottom must be empty and top must contain every brick")

    def _perp_label(self, lower: int, upper: int) -> Interval:
        """T' ∖ T 에 속하면서 T⊥ 에 있는 유일한 brick"""
        smaller = self.element_bricks[lower]
        perp = self.algebra.torsion_free_class(smaller)
        candidates = sorted(b for b in self.element_bricks[upper] - smaller if b in perp)
        if len(candidates) != 1:
            raise InconsistentModel(
                f"cover {self.lattice.name(lower)} < {self.lattice.name(upper)} has brick candidates "
                f"{[b.label for b in candidates]}"
            )
        return candidates[0]

    def brick_of(self, j: int) -> Interval:
        """기약 원소 j의 brick: j ∖ j_* 중 j_*⊥ 에 속하는 것"""
        lower = self.lattice.lower_covers(j)
        if len(lower) != 1:
            raise InputError(f"{self.lattice.name(j)} is not join-irreducible")
        return self._perp_label(lower[0], j)

    def _label_covers(self) -> Dict[Cover, Interval]:
        L = self.lattice
        kd = compute_kappa_data(L)
        labels = cover_labels(L, kd)
        result: Dict[Cover, Interval] = {}
        for (x, y), j in labels.items():
            brick = self._perp_label(x, y)
            if brick != self.brick_of(j):
                raise InconsistentModel(
                    f"cover {L.name(x)} < {L.name(y)}: brick {brick.label} differs from label brick "
                    f"{self.brick_of(j).label}"
                )
            result[(x, y)] = brick
        return result

    def torsion_free(self, x: int) -> FrozenSet[Interval]:
        return self.algebra.torsion_free_class(self.element_bricks[x])

    def is_brick_splitting(self, x: int) -> bool:
        return self.algebra.is_brick_splitting(self.element_bricks[x])

    def brick_splitting_elements(self) -> Tuple[int, ...]:
        return tuple(x for x in self.lattice.elements if self.is_brick_splitting(x))

    def hom_vanishing_violations(self) -> List[Tuple[Cover, Cover]]:
        """같은 경로 위 아래쪽 cover 라벨에서 위쪽 cover 라벨로의 Hom ≠ 0 인 쌍"""
        L = self.lattice
        violations = []
        for lower, lower_brick in self.cover_bricklabel.items():
            for upper, upper_brick in self.cover_bricklabel.items():
                if L.leq[lower[1], upper[0]] and self.algebra.hom_nonzero(lower_brick, upper_brick):
                    violations.append((lower, upper))
        return violations

    def labels_in_hasse_intervals(self, t: int) -> bool:
        """[0̂, t] 와 [t, 1̂] 의 cover 라벨이 모든 brick을 덮는지"""
        L = self.lattice
        seen = {
            brick
            for (x, y), brick in self.cover_bricklabel.items()
            if L.leq[y, t] or L.leq[t, x]
        }
        return seen == set(self.algebra.bricks)

    def to_document(self) -> LatticeDocument:
        meta = {
            "algebra": [self.algebra.meta_tokens()],
            "brick": [
                [str(x), *(b.label for b in sorted(bricks, key=self.algebra.index.get))]
                for x, bricks in enumerate(self.element_bricks)
            ],
        }
        return LatticeDocument(self.lattice, meta)

    @classmethod
    def from_document(cls, doc: LatticeDocument) -> "TorsLattice":
        """'# meta algebra' 와 '# meta brick' 행으로부터 복원"""
        if "algebra" not in doc.meta or "brick" not in doc.meta:
            raise MissingMetadata("no brick metadata in lattice file")
        algebra = parse_algebra_meta(doc.meta["algebra"][0])
        element_bricks: Dict[int, FrozenSet[Interval]] = {}
        for row in doc.meta["brick"]:
            if not row:
                raise InputError("brick metadata row lacks an element index")
            if not row[0].isdigit():
                raise InputError(f"brick metadata row has invalid element index '{row[0]}'")
            index = int(row[0])
            if index in element_bricks:
                raise InputError(f"duplicate brick metadata for element {index}")
            bricks = frozenset(Interval.parse_label(token) for token in row[1:])
            unknown = [b.label for b in bricks if b not in algebra.index]
            if unknown:
                raise InconsistentModel(f"bricks {unknown} are not modules of {algebra.describe()}")
            element_bricks[index] = bricks
        if sorted(element_bricks) != list(doc.lattice.elements):
            raise InputError("brick metadata must cover every element exactly once")
        return cls.attach(doc.lattice, algebra, [element_bricks[x] for x in doc.lattice.elements])


def _class_name(A: AlgebraModel, mask: int) -> str:
    return "{" + ",".join(x.label for i, x in enumerate(A.indecomposables) if mask >> i & 1) + "}"


def torsion_classes(A: AlgebraModel, max_indecomposables: Optional[int] = None) -> TorsLattice:
    """몫과 확장 중간항에 닫힌 부분집합을 포함 순서로 배열한 격자"""
    cap = max_indecomposables if max_indecomposables is not None else get_settings().max_indecomposables
    k = len(A.indecomposables)
    if k > cap:
        raise BudgetExceeded(f"torsion class scan over {k} indecomposables", cap)

    # 닫힌 집합에 가군 하나를 더해 닫는 BFS
    found = {0}
    frontier = [0]
    while frontier:
        grown = []
        for mask in frontier:
            for i in range(k):
                if not mask >> i & 1:
                    closed = A.closure_mask(mask | 1 << i)
                    if closed not in found:
                        found.add(closed)
                        grown.append(closed)
        frontier = grown

    def sort_key(mask: int) -> Tuple[int, Tuple[int, ...]]:
        members = tuple(i for i in range(k) if mask >> i & 1)
        return (len(members), members)

    masks = sorted(found, key=sort_key)
    membership = np.array([[mask >> i & 1 for i in range(k)] for mask in masks], dtype=bool).reshape(len(masks), k)
    outside = (~membership).astype(np.float32)
    leq = (membership.astype(np.float32) @ outside.T) == 0
    lattice = FiniteLattice.from_leq(leq, [_class_name(A, mask) for mask in masks])
    logger.info(f"{A.describe()}: {k} indecomposables, {lattice.n} torsion classes")
    return TorsLattice.attach(lattice, A, [A.modules_of(mask) for mask in masks])


def count_torsion_classes_bruteforce(A: AlgebraModel, max_indecomposables: Optional[int] = None) -> int:
    """모든 2^|ind| 부분집합을 직접 검사하는 독립 오라클"""
    cap = max_indecomposables if max_indecomposables is not None else get_settings().max_indecomposables
    modules = A.indecomposables
    if len(modules) > cap:
        raise BudgetExceeded(f"torsion class scan over {len(modules)} indecomposables", cap)
    count = 0
    for size in range(len(modules) + 1):
        for subset in itertools.combinations(modules, size):
            if A.is_torsion_class(subset):
                count += 1
    return count


def generate_family(family: Union[LatticeFamily, str], **params) -> LatticeDocument:
    """계열 이름과 파라미터로 격자 문서를 생성 (CLI generate 진입점)"""
    family = LatticeFamily(family)
    n = params.get("n")
    if family is not LatticeFamily.DOWNSET and n is None:
        raise InputError(f"family {family.value} requires --n")
    if family is LatticeFamily.BOOLEAN:
        return LatticeDocument(boolean_lattice(n))
    if family is LatticeFamily.CHAIN:
        return LatticeDocument(chain_lattice(n))
    if family is LatticeFamily.DOWNSET:
        relations = params.get("relations") or []
        size = n if n is not None else (max((max(r) for r in relations), default=-1) + 1)
        return LatticeDocument(downset_lattice(size, relations))
    if family is LatticeFamily.TAMARI:
        return LatticeDocument(tamari(n))
    if family is LatticeFamily.WEAK_ORDER:
        return LatticeDocument(weak_order(n))
    algebra = nakayama_algebra(n, params.get("forbid") or [])
    return torsion_classes(algebra).to_document()
