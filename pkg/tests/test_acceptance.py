"""Acceptance gate: one test per criterion, one pass/fail line each.

The heavy criteria (7, 8, 11) each take one to three minutes and a few GB;
the whole module runs in roughly six minutes. `starsem verify-paper` runs
the same functions from the command line.
"""

import pytest

from starsem import acceptance

_BY_NUM = {num: (name, fn) for num, name, fn in acceptance.CRITERIA}


def _check(num):
    name, fn = _BY_NUM[num]
    ok, detail = fn()
    assert ok, f"criterion {num} [{name}]: {detail}"


def test_criterion_01_involution_on_running_example():
    _check(1)


def test_criterion_02_recognition_by_running_example():
    _check(2)


def test_criterion_03_flip_product_recognizers():
    _check(3)


def test_criterion_04_separating_language_grid():
    _check(4)


def test_criterion_05_forward_transport():
    _check(5)


def test_criterion_06_recognizer_structure():
    _check(6)


def test_criterion_07_seeded_accepting_subsets():
    _check(7)


def test_criterion_08_three_letter_cycle_cell():
    _check(8)


def test_criterion_09_logic_cross_check():
    _check(9)


def test_criterion_10_congruences_and_division():
    _check(10)


def test_criterion_11_engine_vs_enumeration():
    _check(11)


def test_run_all_reports_each_line(capsys):
    ok = acceptance.run_all(only={1, 2})
    out = capsys.readouterr().out
    assert ok
    assert out.count("PASS") == 2
    assert "criterion 1: PASS" in out
    assert "criterion 2: PASS" in out
