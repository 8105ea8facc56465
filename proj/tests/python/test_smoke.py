from fractions import Fraction

import kissing3


def test_paper_f_endpoints():
    assert kissing3.evaluate(1) == Fraction(99999853, 100000000)
    assert kissing3.evaluate(-1) == Fraction(22999929, 100000000)
    assert kissing3.evaluate(Fraction(1, 2)) < 0
    assert len(kissing3.paper_f()) == 7


def test_legendre_values():
    # d = 3 gives Legendre polynomials: P_2(1/2) = -1/8, P_3(1/2) = -7/16
    v = kissing3.gegenbauer_values(3, 3, Fraction(1, 2))
    assert v == [1, Fraction(1, 2), Fraction(-1, 8), Fraction(-7, 16)]


def test_verify_and_fault():
    cert = kissing3.verify()
    assert cert["all_pass"] is True
    assert cert["conclusion"] == 12
    assert cert["bound"]["ratio_decimal"] == "12.99405263"
    bad = kissing3.verify(threshold=Fraction(122, 100))
    assert bad["all_pass"] is False


def test_classical_bound_dim8():
    bound, coeffs = kissing3.classical_bound(8, 6, grid=256)
    assert 240 <= bound <= 240 + Fraction(1, 10000)
    assert all(c >= 0 for c in coeffs.values())
    assert kissing3.classical_bound(3, 1) is None


def test_positivity_and_cli():
    ok, forms, _ = kissing3.positivity_check(20, seed=3)
    assert ok and forms == 20 * 13
    code, out, _ = kissing3.run_cli("eval", "--t", "-1")
    assert code == 0 and out.splitlines()[0] == "22999929/100000000"
    assert kissing3.run_cli("eval", "--t", "3")[0] == 2
