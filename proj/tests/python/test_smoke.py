import json
from fractions import Fraction

import pytest

import qmorris as qm


def test_qpoly_arithmetic():
    p = qm.QPoly("1 - q") * qm.QPoly("1 + q")
    assert p == qm.QPoly("1 - q^2")
    assert str(p) == "1 - q^2"
    assert qm.QPoly("1 - q").eval(Fraction(3, 2)) * qm.QPoly("1 - q^2").eval("3/2") == Fraction(5, 8)
    assert qm.QPoly("q^-1").eval(2) == Fraction(1, 2)
    with pytest.raises(qm.DomainError):
        qm.QPoly("q^-1").eval(0)


def test_qrat_normalizes():
    r = qm.QRat(qm.QPoly("1 - q^2"), qm.QPoly("1 - q"))
    assert r == qm.QRat(qm.QPoly("1 + q"))
    assert r.is_poly()
    with pytest.raises(qm.DivisionByZero):
        qm.QRat(qm.QPoly(1), qm.QPoly(0))
    assert issubclass(qm.DivisionByZero, qm.QmorrisError)


def test_closed_forms():
    assert qm.dyson_rhs([1, 1, 1]) == 6
    assert str(qm.qdyson_rhs([2, 1])) == "1 + q + q^2"
    assert str(qm.gauss_binom(-1, 1)) == "-q^-1"
    assert qm.qbinomial_theorem_finite(5)
    assert qm.prop52_lhs(2, 0, 2) == qm.prop52_rhs(2, 0, 2)
    v = qm.vanishing_sets(qm.ParamSet(3, b=1, m=2, l=1, k=4))
    assert (v["d1"], v["d2"], v["d3"], v["distinct"]) == ([0, 4], [10], [1, 5, 9], True)


def test_constant_terms_match_closed_forms():
    assert qm.qdyson_ct([1, 1]) == qm.qdyson_rhs([1, 1])
    assert qm.dyson_ct([2, 1, 1]) == qm.dyson_rhs([2, 1, 1])
    p = qm.ParamSet(2, a=1, b=0, m=1, l=1, k=1)
    assert qm.hk_ct(p) == qm.morris_rhs(p) == qm.morris_rhs(p, form="factorial")
    assert qm.aomoto_expansion_check(qm.ParamSet(2, a=1, b=0, m=1, l=0, k=2))


def test_recursion_and_interpolation():
    p = qm.ParamSet(2, b=0, m=1, l=0, k=2)
    root = qm.ct_recursion(p, 0)
    assert root["value"].is_zero() and root["valid"] and root["expanded_leaves"] == 0
    extra = qm.ct_recursion(p, p.h_extra)
    assert extra["valid"] and extra["expanded_leaves"] == 1
    assert extra["value"].eval("3/2") == qm.mprime_at(p, p.h_extra, Fraction(3, 2)) == Fraction(-247, 54)
    assert extra["certificate"]["root"]["verdict"] == "branch"
    coeffs = qm.interp_in_qa(qm.ParamSet(2, b=0, m=1, l=0, k=2, q0="3/2"))
    assert len(coeffs) - 1 <= 1
    with pytest.raises(qm.DomainError):
        qm.ct_recursion(qm.ParamSet(2, b=1, k=2), 1)


def test_classifier_and_cli():
    assert qm.lemma_important(2, 0, [3, 1]) == "Exceptional"
    assert qm.lemma_important(2, 0, [1, 3]) == "ClosePair(1,2)"
    code, out, _ = qm.run_cli(["verify-qdyson", "--n", "1", "--a", "1..1"])
    assert code == 0
    assert json.loads(out)[0]["lhs"] == "1 + q"
    assert qm.run_cli(["verify-hk", "--bogus"])[0] == 2
