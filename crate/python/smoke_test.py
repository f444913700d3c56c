"""Smoke test for the pycircres extension module.

Run after building, e.g. `pip install --no-build-isolation ./crates/py`.
"""

from fractions import Fraction

import pycircres as cr


def main():
    assert cr.fib(10) == 55 and cr.lucas(10) == 123
    assert cr.fib(300) == 222232244629420445529739893461909967206666939096499764990979600

    assert cr.c12_resistance(6, 3) == Fraction(1, 2)
    assert cr.c12_resistance(5, 1) == Fraction(2, 5)
    assert cr.c12_profile(6) == [0, Fraction(5, 12), Fraction(5, 12), Fraction(1, 2),
                                 Fraction(5, 12), Fraction(5, 12)]
    assert cr.c12_kirchhoff(6) == Fraction(13, 2)
    assert cr.fpt_closed(6, 1) == 5 and cr.commute_closed(6, 1) == 10
    assert cr.mfpt_closed(5) == Fraction(16, 5)
    assert cr.c2_resistance(6, 3) is None
    assert cr.c2_resistance(6, 2) == Fraction(2, 3)
    assert cr.trig_power_sum(3, 3) == Fraction(27, 32)

    g = cr.Circulant(12)
    assert g.jumps == [1, 2] and g.degree == 4 and g.edge_count == 24
    exact = float(cr.c12_resistance(12, 5))
    assert abs(g.resistance(5) - exact) < 1e-12
    assert abs(g.resistance_solve(0, 5) - exact) < 1e-9
    assert abs(g.mfpt() - float(cr.mfpt_closed(12))) < 1e-9
    assert all(c["pass"] for c in g.foster_audit())

    est = g.simulate_fpt(1, 20000, seed=42)
    assert est == g.simulate_fpt(1, 20000, seed=42)
    target = float(cr.fpt_closed(12, 1))
    assert abs(est["mean"] - target) < 4 * est["std_error"], est

    assert not cr.Circulant(6, [2]).is_connected()
    try:
        cr.Circulant(2, [1])
    except ValueError:
        pass
    else:
        raise AssertionError("n = 2 should be rejected")

    checks = cr.verify(20)
    assert checks and all(c["pass"] for c in checks)

    print(f"pycircres smoke test passed ({len(checks)} checks at N=20)")


if __name__ == "__main__":
    main()
