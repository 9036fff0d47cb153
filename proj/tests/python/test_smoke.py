from fractions import Fraction

import pytest

import casimir_trace as ct


def test_trace_m0():
    s = ct.trace("M0", 1, 5)
    assert s.order == 5
    assert s.terms == {0: 1, 1: 1, 4: 1}


def test_trace_half_integer_exponents():
    s = ct.trace("M-1", 1, 6)
    assert s.terms == {Fraction(1, 2): 1, Fraction(5, 2): 1}


def test_methods_agree():
    assert ct.trace("P x P", 2, 16) == ct.trace("P x P", 2, 16, method="charpoly")


def test_table2_row():
    assert ct.trace("M0 x M0", 1, 20).terms == ct.partial_appell_lerch([1, 1], [0, 0], 1, 20).terms


def test_p_is_theta():
    assert ct.trace("P", 3, 40) == ct.jacobi_theta(3, 40)


def test_deformed():
    b = ct.trace_deformed("M-2", 1, 5)
    assert b.terms == {(1, 1): 1, (4, 2): 1}


def test_kappa_and_spectral():
    k = ct.kappa_matrix("P", -4)
    assert k["matrix"] == [[-12, 2], [-8, -4]]
    s = ct.spectral("P", -4)
    assert s["eigenvalues"] == [{"eigenvalue": "-8", "multiplicity": 2, "block_size": 2}]


def test_multiplicities():
    assert ct.verma_multiplicities([1, 1], [0, 0], 3) == [1, 1, 1, 1]
    assert ct.verma_multiplicities([1, 1, 1], [1, 1, 1], 4) == [1, 5, 12, 20, 28]


def test_errors():
    with pytest.raises(ct.ParseError):
        ct.trace("M0 x", 1, 5)
    with pytest.raises(ct.DomainError):
        ct.trace("M0", 0, 5)
    with pytest.raises(ct.UnsupportedInputError):
        ct.trace_deformed("M-1", 1, 5)
    with pytest.raises(ValueError):
        ct.trace("M0", 1, "1/3")
    with pytest.raises(ct.PrecisionError):
        ct.trace("M0", 1, 5).coefficient(5)


def test_run_check():
    assert "theorem1" in ct.check_names()
    r = ct.run_check("theorem1")
    assert r["status"] == "pass"
    assert ct.canonical_rep("P   x  M0") == ct.canonical_rep("P x M0")
