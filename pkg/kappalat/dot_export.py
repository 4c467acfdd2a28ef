"""
KappaLat - DOT 내보내기
Hasse 도표, 라벨링 퀴버, brick 퀴버를 pydot 그래프로 생성 (아래에서 위로 rankdir=BT)
"""

import logging
from typing import Optional

import pydot

from .algebra_generators import TorsLattice, brick_quiver
from .exceptions import InputError
from .irreducibles_kappa import KappaData, compute_kappa_data, is_semidistributive
from .labelling_quiver import build_labelling_quiver
from .lattice_core import FiniteLattice
from .modularity_extremality import cover_labels

# 로깅 설정
logger = logging.getLogger(__name__)


def _quoted(text: str) -> str:
    return '"' + text.replace('"', r'\"') + '"'


def _digraph(name: str) -> pydot.Dot:
    graph = pydot.Dot(name, graph_type="digraph")
    graph.set_rankdir("BT")
    return graph


def hasse_dot(L: FiniteLattice, labels: bool = True) -> pydot.Dot:
    """cover x ⋖ z 마다 화살표 x → z; 반분배이면 cover 라벨(기약 원소 이름)을 붙임"""
    graph = _digraph("hasse")
    for x in L.elements:
        graph.add_node(pydot.Node(str(x), label=_quoted(L.name(x))))

    edge_labels = {}
    if labels and is_semidistributive(L):
        edge_labels = cover_labels(L, compute_kappa_data(L))
    elif labels:
        logger.info("Hasse labels omitted: lattice is not semidistributive")

    for x, z in L.covers:
        attrs = {"label": _quoted(L.name(edge_labels[(x, z)]))} if (x, z) in edge_labels else {}
        graph.add_edge(pydot.Edge(str(x), str(z), **attrs))
    return graph


def labelling_dot(L: FiniteLattice, kd: Optional[KappaData] = None) -> pydot.Dot:
    """라벨링 퀴버 Q_L (정점 이름은 기약 원소 이름)"""
    if not is_semidistributive(L):
        raise InputError("labelling quiver requires a semidistributive lattice: not a kappa-lattice")
    quiver = build_labelling_quiver(L, kd)
    graph = _digraph("labelling")
    for v in quiver.vertices:
        graph.add_node(pydot.Node(str(v), label=_quoted(quiver.name(v))))
    for i, j in quiver.arrows:
        graph.add_edge(pydot.Edge(str(i), str(j)))
    return graph


def brick_dot(tors: TorsLattice) -> pydot.Dot:
    """Hom(X, Y) ≠ 0 인 brick 사이 화살표"""
    quiver = brick_quiver(tors.algebra)
    ids = {brick: f"b{k}" for k, brick in enumerate(quiver.vertices)}
    graph = _digraph("brick")
    for brick, node_id in ids.items():
        graph.add_node(pydot.Node(node_id, label=_quoted(brick.label)))
    for x, y in quiver.arrows:
        graph.add_edge(pydot.Edge(ids[x], ids[y]))
    return graph


def render(graph: pydot.Dot) -> str:
    return graph.to_string()
