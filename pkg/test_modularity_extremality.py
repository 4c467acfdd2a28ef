"""
좌모듈러성과 극값성 테스트
정의/κ/cover 세 기준, LM(L), cover 라벨, 고전 및 일반 극값성
"""

import pytest

from kappalat.algebra_generators import boolean_lattice, chain_lattice, tamari, weak_order
from kappalat.exceptions import NotACover, SearchBudgetExceeded
from kappalat.irreducibles_kappa import is_semidistributive
from kappalat.lattice_core import length
from kappalat.modularity_extremality import (
    classical_lambda,
    collect_lm_verdicts,
    converse_cover_lemma,
    cover_criterion_one_directional,
    cover_label,
    cover_labels,
    find_extremal_chain,
    is_extremal_chain,
    is_extremal_classical,
    is_extremal_generalized,
    is_left_modular_cover,
    is_left_modular_def,
    is_left_modular_kappa,
    is_trim,
    left_modular_set,
    minimal_joining_element,
    spine,
)


def test_figure1_left_modular_set(figure1):
    report = left_modular_set(figure1)
    assert report.lm_set == (0, 2, 3, 4)
    assert report.is_lm_lattice
    assert report.lm_chain.elements == (0, 2, 3, 4)
    assert report.lm_closed_under_meet_join
    assert report.lm_distributive


def test_figure1_x_fails_every_criterion(figure1):
    """x는 좌모듈러가 아니며 세 기준 모두 같은 반례 구조를 보고"""
    assert is_left_modular_def(figure1, 1).witness == (2, 3)
    assert is_left_modular_cover(figure1, 1).witness == (2, 3)
    assert is_left_modular_kappa(figure1, 1).witness == (3,)


@pytest.mark.parametrize("t", [0, 2, 3, 4])
def test_figure1_left_modular_elements(figure1, t):
    assert is_left_modular_def(figure1, t)
    assert is_left_modular_kappa(figure1, t)
    assert is_left_modular_cover(figure1, t)


def test_three_criteria_agree_on_tamari():
    L = tamari(4)
    for t, by_def, by_kappa, by_cover in collect_lm_verdicts(L):
        assert by_def == by_kappa == by_cover, t


def test_parallel_scan_matches_serial():
    L = tamari(4)
    assert left_modular_set(L, jobs=4).lm_set == left_modular_set(L, jobs=1).lm_set


def test_weak_order_left_modular_elements():
    """S3, S4 약순서의 좌모듈러 원소는 항등원과 최장원뿐"""
    for n in (3, 4):
        L = weak_order(n)
        report = left_modular_set(L)
        assert report.lm_set == (0, L.n - 1)
        assert not report.is_lm_lattice
        assert report.lm_closed_under_meet_join and report.lm_distributive


def test_modular_lattice_is_left_modular_everywhere(m3):
    report = left_modular_set(m3)
    assert report.lm_set == (0, 1, 2, 3, 4)
    assert report.is_lm_lattice
    assert not report.lm_distributive


def test_chain_lattice_is_left_modular():
    report = left_modular_set(chain_lattice(5))
    assert report.lm_set == tuple(range(6))


def test_figure1_cover_labels(figure1):
    assert cover_labels(figure1) == {(0, 1): 1, (0, 2): 2, (1, 4): 2, (2, 3): 3, (3, 4): 1}
    assert cover_label(figure1, 2, 3) == 3
    assert minimal_joining_element(figure1, 2, 3) == 3
    with pytest.raises(NotACover):
        cover_label(figure1, 0, 3)


def test_cover_lemmas_hold(figure1, s3):
    for L in (figure1, s3, tamari(4)):
        assert converse_cover_lemma(L)
        for t in L.elements:
            assert cover_criterion_one_directional(L, t)


def test_figure1_is_extremal(figure1):
    report = is_extremal_classical(figure1)
    assert (report.length, report.ji_count, report.mi_count) == (3, 3, 3)
    assert report.is_extremal_classical
    general = is_extremal_generalized(figure1)
    assert general.is_extremal_generalized
    assert general.lambda_used == "kappa"
    assert general.extremal_chain.elements == (0, 2, 3, 4)
    assert is_extremal_chain(figure1, [0, 2, 3, 4])
    assert not is_extremal_chain(figure1, [0, 1, 4])


def test_classical_lambda_on_longest_chain(figure1):
    assert classical_lambda(figure1, (0, 2, 3, 4)) == {2: 1, 3: 2, 1: 3}
    assert classical_lambda(figure1, (0, 1, 4)) is None


def test_m3_is_not_extremal(m3):
    assert not is_extremal_classical(m3).is_extremal_classical
    report = is_extremal_generalized(m3)
    assert report.lambda_used == "bijection"
    assert not report.is_extremal_generalized
    assert find_extremal_chain(m3) is None


def test_bijection_search_budget(m3):
    with pytest.raises(SearchBudgetExceeded):
        is_extremal_generalized(m3, max_ji=2)


def test_s3_not_extremal(s3):
    report = is_extremal_generalized(s3)
    assert report.length == 3 and report.ji_count == 4
    assert not report.is_extremal_classical
    assert not report.is_extremal_generalized


def test_tamari_is_semidistributive_and_trim():
    T = tamari(3)
    assert is_semidistributive(T)
    assert is_trim(T)
    assert len(spine(T)) == length(T) + 1 == 4


def test_trim_and_spine(figure1, s3):
    assert is_trim(figure1)
    assert spine(figure1) == (0, 2, 3, 4)
    assert not is_trim(s3)
    assert spine(s3) is None
    assert is_trim(boolean_lattice(3))
    assert spine(boolean_lattice(3)) == tuple(range(8))
