"""
격자 생성기와 Nakayama 꼬임류 격자 테스트
"""

import pytest

from kappalat.algebra_generators import (
    Interval,
    TorsLattice,
    boolean_lattice,
    brick_quiver,
    catalan,
    chain_lattice,
    count_torsion_classes_bruteforce,
    downset_lattice,
    generate_family,
    glued_brick_count,
    is_brick_directed,
    nakayama_algebra,
    nakayama_models,
    tamari,
    torsion_classes,
    weak_order,
)
from kappalat.exceptions import BudgetExceeded, CycleDetected, InputError, InvalidInterval, MissingMetadata
from kappalat.lattice_core import LatticeDocument, length, parse_document, serialize_document
from kappalat.modularity_extremality import is_extremal_classical, left_modular_set


# 1. 표준 계열

def test_boolean_lattice():
    B = boolean_lattice(3)
    assert B.n == 8
    assert B.name(5) == "{1,3}"
    assert B.name(0) == "{}"
    assert length(B) == 3


def test_boolean_lattice_size_cap():
    with pytest.raises(BudgetExceeded):
        boolean_lattice(5, max_elements=16)


def test_chain_lattice():
    assert length(chain_lattice(4)) == 4
    assert chain_lattice(0).n == 1


def test_chain_lattice_size_cap():
    with pytest.raises(BudgetExceeded):
        chain_lattice(50, max_elements=10)
    with pytest.raises(InputError):
        chain_lattice(-1)


def test_downset_lattice():
    L = downset_lattice(3, [(0, 1)])
    assert L.n == 6
    assert L.names == ("{}", "{0}", "{2}", "{0,1}", "{0,2}", "{0,1,2}")
    with pytest.raises(CycleDetected):
        downset_lattice(2, [(0, 1), (1, 0)])
    with pytest.raises(InputError):
        downset_lattice(2, [(0, 5)])


@pytest.mark.parametrize("k", range(6))
def test_tamari_size_is_catalan(k):
    assert tamari(k).n == catalan(k)


def test_tamari_bracketings():
    T = tamari(3)
    assert T.name(T.bottom) == "((ab)c)d"
    assert T.name(T.top) == "a(b(cd))"
    assert length(T) == 3


def test_weak_order():
    W = weak_order(3)
    assert W.names == ("123", "132", "213", "231", "312", "321")
    assert W.covers == ((0, 1), (0, 2), (1, 4), (2, 3), (3, 5), (4, 5))
    with pytest.raises(InputError):
        weak_order(7)


def test_weak_order_two_is_a_chain():
    W = weak_order(2)
    assert W.n == 2
    assert W.names == ("12", "21")
    assert W.covers == ((0, 1),)


# 2. Nakayama 모델

def test_interval_parsing():
    assert Interval.parse_range("1..3") == Interval(1, 3)
    assert Interval.parse_label("M[2,3]") == Interval(2, 3)
    assert Interval(1, 3).label == "M[1,3]"
    with pytest.raises(InvalidInterval):
        Interval.parse_range("1-3")


def test_nakayama_indecomposables():
    A = nakayama_algebra(3)
    assert len(A.indecomposables) == 6
    assert A.indecomposables[0] == Interval(3, 3)
    L5 = nakayama_algebra(3, [(1, 3)])
    assert len(L5.bricks) == 5
    assert L5.describe() == "nakayama n=3 forbid=1..3"
    assert L5.is_connected


def test_forbidden_set_is_upward_closed():
    A = nakayama_algebra(3, [(1, 2)])
    assert Interval(1, 3) in A.forbidden
    assert not A.is_connected
    assert A.describe() == "nakayama n=3 forbid=1..2"


@pytest.mark.parametrize("bad", [(2, 2), (1, 5), (3, 1)])
def test_invalid_forbidden_interval(bad):
    with pytest.raises(InvalidInterval):
        nakayama_algebra(3, [bad])


def test_hom_and_extension_rules():
    A = nakayama_algebra(3)
    assert A.hom_nonzero(Interval(1, 2), Interval(1, 1))
    assert A.hom_nonzero(Interval(2, 2), Interval(1, 2))
    assert not A.hom_nonzero(Interval(1, 1), Interval(1, 2))
    assert A.extension_middle(Interval(1, 1), Interval(2, 2)) == Interval(1, 2)
    assert A.extension_middle(Interval(2, 2), Interval(1, 1)) is None
    L5 = nakayama_algebra(3, [(1, 3)])
    assert L5.extension_middle(Interval(1, 2), Interval(3, 3)) is None


def test_torsion_closure():
    A = nakayama_algebra(2)
    closed = A.torsion_closure([Interval(2, 2), Interval(1, 1)])
    assert closed == frozenset(A.indecomposables)
    assert A.is_torsion_class([Interval(1, 2), Interval(1, 1)])
    assert not A.is_torsion_class([Interval(1, 2)])


def test_nakayama_models_enumeration():
    assert len(nakayama_models(3)) == 5
    assert len(nakayama_models(3, connected_only=True)) == 2


# 3. 꼬임류 격자

def test_a2_torsion_lattice_is_figure1(tors_a2, figure1):
    L = tors_a2.lattice
    assert L.covers == figure1.covers
    assert L.names == ("{}", "{M[2,2]}", "{M[1,1]}", "{M[1,2],M[1,1]}", "{M[2,2],M[1,2],M[1,1]}")
    assert tors_a2.brick_of(1) == Interval(2, 2)
    assert tors_a2.brick_of(2) == Interval(1, 1)
    assert tors_a2.brick_of(3) == Interval(1, 2)


@pytest.mark.parametrize(
    "n, forbid, expected",
    [
        (2, [], 5),
        (3, [], 14),
        (3, [(1, 3)], 12),
        (4, [], 42),
    ],
)
def test_torsion_class_counts(n, forbid, expected):
    A = nakayama_algebra(n, forbid)
    assert torsion_classes(A).lattice.n == expected
    assert count_torsion_classes_bruteforce(A) == expected


def test_path_algebra_counts_are_catalan():
    for n in (1, 2, 3, 4):
        assert torsion_classes(nakayama_algebra(n)).lattice.n == catalan(n + 1)


def test_lambda5(tors_lambda5):
    L = tors_lambda5.lattice
    assert length(L) == 5
    assert len(tors_lambda5.algebra.bricks) == 5
    assert left_modular_set(L).is_lm_lattice


def test_a3_has_six_bricks(tors_a3):
    assert len(tors_a3.algebra.bricks) == 6 == 3 * 4 // 2
    assert is_extremal_classical(tors_a3.lattice).is_extremal_classical


def test_line_models_are_brick_directed():
    for n in (1, 2, 3, 4):
        assert all(is_brick_directed(A) for A in nakayama_models(n))


def test_connected_models_skip_lengths_two_and_four():
    lengths = {
        length(torsion_classes(A).lattice)
        for n in (1, 2, 3, 4)
        for A in nakayama_models(n, connected_only=True)
    }
    assert lengths == {1, 3, 5, 6, 7, 8, 9, 10}


def test_brick_quiver_a2(tors_a2):
    quiver = brick_quiver(tors_a2.algebra)
    assert quiver.acyclic
    assert set(quiver.arrows) == {(Interval(2, 2), Interval(1, 2)), (Interval(1, 2), Interval(1, 1))}


def test_glued_brick_count():
    assert glued_brick_count(3, 3) == 5


def test_brick_splitting_matches_left_modular(tors_a3, tors_lambda5):
    for tors in (tors_a3, tors_lambda5):
        lm = left_modular_set(tors.lattice).lm_set
        assert tors.brick_splitting_elements() == lm
        for t in tors.lattice.elements:
            assert tors.labels_in_hasse_intervals(t) == tors.is_brick_splitting(t)


def test_hom_vanishes_along_hasse_paths(tors_a3, tors_lambda5):
    assert tors_a3.hom_vanishing_violations() == []
    assert tors_lambda5.hom_vanishing_violations() == []


def test_brick_metadata_round_trip(tors_lambda5):
    text = serialize_document(tors_lambda5.to_document())
    restored = TorsLattice.from_document(parse_document(text))
    assert restored.element_bricks == tors_lambda5.element_bricks
    assert restored.algebra == tors_lambda5.algebra
    assert restored.cover_bricklabel == tors_lambda5.cover_bricklabel


def test_from_document_requires_metadata(figure1):
    with pytest.raises(MissingMetadata):
        TorsLattice.from_document(LatticeDocument(figure1))


def test_torsion_scan_budget():
    with pytest.raises(BudgetExceeded):
        torsion_classes(nakayama_algebra(3), max_indecomposables=4)


# 4. 계열 생성 진입점

def test_generate_family():
    assert generate_family("boolean", n=3).lattice.n == 8
    assert generate_family("downset", relations=[(0, 1)]).lattice.n == 3
    doc = generate_family("nakayama_tors", n=2)
    assert doc.meta["algebra"] == [["nakayama", "n=2"]]
    assert len(doc.meta["brick"]) == 5
    with pytest.raises(InputError):
        generate_family("chain")
