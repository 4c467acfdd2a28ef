"""
격자 핵심 구조 테스트
lattice-v1 파싱/직렬화, meet/join 테이블, 극대 사슬, 구간과 쌍대
"""

import numpy as np
import pytest

from kappalat.exceptions import (
    BudgetExceeded,
    CoverNotReduced,
    CycleDetected,
    InputError,
    NotALattice,
    NotComparable,
    NotMaximalChain,
    ParseError,
)
from kappalat.lattice_core import (
    FiniteLattice,
    as_maximal_chain,
    build_lattice,
    dual,
    interval,
    interval_members,
    is_maximal_chain,
    iter_maximal_chains,
    join,
    join_set,
    length,
    maximal_chains,
    meet,
    meet_set,
    parse_document,
    parse_lattice,
    rank_from_bottom,
    serialize_document,
    serialize_lattice,
    transitive_reduction,
)

CANONICAL_FIGURE1 = (
    "lattice-v1\nn=5\n"
    "name 0 bot\nname 1 x\nname 2 y\nname 3 z\nname 4 top\n"
    "cover 0 1\ncover 0 2\ncover 1 4\ncover 2 3\ncover 3 4\n"
)


def test_parse_figure1(figure1):
    """figure1.lat 파일 파싱"""
    assert figure1.n == 5
    assert figure1.covers == ((0, 1), (0, 2), (1, 4), (2, 3), (3, 4))
    assert figure1.names == ("bot", "x", "y", "z", "top")
    assert figure1.bottom == 0 and figure1.top == 4
    assert figure1.upper_covers(0) == (1, 2)
    assert figure1.lower_covers(4) == (1, 3)


def test_meet_and_join(figure1):
    assert meet(figure1, 1, 2) == 0
    assert join(figure1, 1, 2) == 4
    assert join(figure1, 2, 3) == 3
    assert meet(figure1, 1, 3) == 0
    assert join(figure1, 1, 3) == 4


def test_empty_meet_and_join_conventions(figure1):
    assert meet_set(figure1, []) == figure1.top
    assert join_set(figure1, []) == figure1.bottom
    assert join_set(figure1, [1, 2]) == 4
    assert meet_set(figure1, [3, 4]) == 3


def test_index_out_of_range(figure1):
    with pytest.raises(IndexError):
        meet(figure1, 0, 9)


def test_table_axioms(figure1):
    """meet(a,b)는 최대 하계, join(a,b)는 최소 상계"""
    L = figure1
    for a in L.elements:
        for b in L.elements:
            m, j = meet(L, a, b), join(L, a, b)
            assert L.le(m, a) and L.le(m, b)
            assert L.le(a, j) and L.le(b, j)
            for c in L.elements:
                if L.le(c, a) and L.le(c, b):
                    assert L.le(c, m)
                if L.le(a, c) and L.le(b, c):
                    assert L.le(j, c)


def test_covers_match_transitive_reduction(figure1):
    recomputed = sorted(tuple(int(v) for v in pair) for pair in np.argwhere(transitive_reduction(figure1.leq)))
    assert recomputed == list(figure1.covers)


def test_maximal_chains_are_lexicographic(figure1):
    chains = maximal_chains(figure1)
    assert [c.elements for c in chains] == [(0, 1, 4), (0, 2, 3, 4)]
    assert all(is_maximal_chain(figure1, c.elements) for c in chains)
    assert chains[1].names(figure1) == ["bot", "y", "z", "top"]


def test_maximal_chain_budget(figure1):
    with pytest.raises(BudgetExceeded):
        list(iter_maximal_chains(figure1, max_chains=1))


def test_length_and_rank(figure1):
    assert length(figure1) == 3
    assert list(rank_from_bottom(figure1)) == [0, 1, 1, 2, 3]


def test_as_maximal_chain(figure1):
    assert as_maximal_chain(figure1, [0, 2, 3, 4]).length == 3
    assert not is_maximal_chain(figure1, [0, 4])
    with pytest.raises(NotMaximalChain):
        as_maximal_chain(figure1, [0, 3, 4])


def test_one_element_lattice():
    L = build_lattice(1, [])
    assert L.bottom == L.top == 0
    assert length(L) == 0
    assert [c.elements for c in maximal_chains(L)] == [(0,)]


def test_not_a_lattice_two_maximal_elements():
    with pytest.raises(NotALattice):
        build_lattice(3, [(0, 1), (0, 2)])


def test_not_a_lattice_bowtie():
    """두 원자와 두 여원자가 완전 이분으로 연결되면 join이 유일하지 않음"""
    covers = [(0, 1), (0, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 5), (4, 5)]
    with pytest.raises(NotALattice) as error:
        build_lattice(6, covers)
    assert isinstance(error.value, InputError)


def test_cycle_detected():
    with pytest.raises(CycleDetected):
        build_lattice(2, [(0, 1), (1, 0)])


def test_cover_not_reduced():
    with pytest.raises(CoverNotReduced):
        build_lattice(3, [(0, 1), (1, 2), (0, 2)])


@pytest.mark.parametrize(
    "text",
    [
        "lattice-v1\nn=5\ncover 0 5\n",
        "n=5\ncover 0 1\n",
        "lattice-v1\ncover 0 1\n",
        "lattice-v1\nn=2\ncover 0 1\ncover 0 1\n",
        "lattice-v1\nn=2\nedge 0 1\n",
        "lattice-v1\nn=two\n",
    ],
)
def test_parse_errors(text):
    with pytest.raises(ParseError):
        parse_lattice(text)


def test_parse_error_reports_line():
    with pytest.raises(ParseError) as error:
        parse_lattice("lattice-v1\nn=5\ncover 0 1\ncover 0 5\n")
    assert error.value.line == 4


def test_serialize_is_canonical(figure1):
    assert serialize_lattice(figure1) == CANONICAL_FIGURE1
    assert parse_lattice(serialize_lattice(figure1)) == figure1


def test_meta_lines_survive_round_trip():
    text = CANONICAL_FIGURE1 + "# meta algebra nakayama n=2\n# meta brick 1 M[2,2]\n# plain comment\n"
    doc = parse_document(text)
    assert doc.meta == {"algebra": [["nakayama", "n=2"]], "brick": [["1", "M[2,2]"]]}
    again = parse_document(serialize_document(doc))
    assert again.meta == doc.meta
    assert again.lattice == doc.lattice


def test_dual_swaps_bounds(figure1):
    D = dual(figure1)
    assert D.bottom == 4 and D.top == 0
    assert meet(D, 1, 2) == join(figure1, 1, 2)
    assert dual(D) == figure1


def test_interval(figure1):
    assert interval_members(figure1, 2, 4) == [2, 3, 4]
    sub = interval(figure1, 2, 4)
    assert sub.names == ("y", "z", "top")
    assert length(sub) == 2
    with pytest.raises(NotComparable):
        interval_members(figure1, 1, 2)


def test_from_leq_rejects_non_transitive():
    leq = np.array([[1, 1, 0], [0, 1, 1], [0, 0, 1]], dtype=bool)
    with pytest.raises(InputError):
        FiniteLattice.from_leq(leq)


def test_lattice_is_read_only(figure1):
    with pytest.raises(ValueError):
        figure1.leq[0, 1] = False
