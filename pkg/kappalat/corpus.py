"""
KappaLat - 검증용 인스턴스 모음
표준 격자 계열, Nakayama 꼬임류 격자, 비반분배 대조군을 이름과 함께 생성
"""

import logging
from dataclasses import dataclass
from typing import Iterator, List, Optional

from .algebra_generators import (
    TorsLattice,
    boolean_lattice,
    chain_lattice,
    nakayama_models,
    tamari,
    torsion_classes,
    weak_order,
)
from .config import get_settings
from .lattice_core import FiniteLattice, build_lattice

# 로깅 설정
logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CorpusEntry:
    """이름 붙은 검증 인스턴스 (꼬임류 격자이면 tors 포함)"""
    name: str
    lattice: FiniteLattice
    tors: Optional[TorsLattice] = None


def diamond_m3() -> FiniteLattice:
    return build_lattice(5, [(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (3, 4)], ["0", "a", "b", "c", "1"])


def pentagon_n5() -> FiniteLattice:
    return build_lattice(5, [(0, 1), (1, 2), (2, 4), (0, 3), (3, 4)], ["0", "a", "b", "c", "1"])


def iter_corpus(
    max_vertices: int = 5,
    boolean_max: int = 6,
    chain_max: int = 12,
    tamari_max: int = 5,
    weak_order_max: int = 4,
) -> Iterator[CorpusEntry]:
    for k in range(boolean_max + 1):
        yield CorpusEntry(f"boolean k={k}", boolean_lattice(k))
    for m in range(chain_max + 1):
        yield CorpusEntry(f"chain m={m}", chain_lattice(m))
    for k in range(1, tamari_max + 1):
        yield CorpusEntry(f"tamari k={k}", tamari(k))
    for n in range(2, weak_order_max + 1):
        yield CorpusEntry(f"weak_order n={n}", weak_order(n))

    cap = get_settings().max_indecomposables
    for n in range(1, max_vertices + 1):
        for algebra in nakayama_models(n):
            if len(algebra.indecomposables) > cap:
                logger.info(f"Skipping {algebra.describe()}: {len(algebra.indecomposables)} indecomposables")
                continue
            tors = torsion_classes(algebra)
            yield CorpusEntry(f"nakayama_tors {algebra.describe()}", tors.lattice, tors)

    yield CorpusEntry("control M3", diamond_m3())
    yield CorpusEntry("control N5", pentagon_n5())


def build_corpus(max_vertices: int = 5, **sizes: int) -> List[CorpusEntry]:
    entries = list(iter_corpus(max_vertices, **sizes))
    logger.info(f"Corpus built: {len(entries)} instances (Nakayama models up to {max_vertices} vertices)")
    return entries
