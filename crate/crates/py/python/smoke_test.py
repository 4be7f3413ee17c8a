"""Smoke test for the gformal extension module.

Build and run from the repository root:

    cargo build -p gformal-py --features extension-module --release
    cp target/release/libgformal_py.so crates/py/python/gformal.so
    python3 crates/py/python/smoke_test.py
"""

import os
import sys
from fractions import Fraction
from math import factorial

sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

import gformal  # noqa: E402


def divisor_sum(n, p):
    return sum(d**p for d in range(1, n + 1) if n % d == 0)


def main():
    assert gformal.product("b1", "b1", "balanced") == "2*b1.b1 + b2"
    assert gformal.product("x0", "x1") == "x0.x1 + x1.x0"
    assert gformal.tau("b3") == "b1.b0.b0"
    assert gformal.antipode("b1.b2") == "-b1.b1.b1 + b2.b1"
    assert [gformal.gf_dim(w) for w in range(6)] == [1, 1, 2, 4, 7, 13]
    assert gformal.project_p("b2 b3", 6, True) == "z[0,1;0,0,1]"
    assert gformal.zf_equal("zeta(3)", "zeta(2,1)", 3)
    assert not gformal.zf_equal("zeta(3)", "zeta(2)", 3)

    passed, report = gformal.check_dm(None, 5)
    assert passed, report
    passed, _ = gformal.check_dm("1 + x0.x1", 3)
    assert not passed

    order = 30
    for k in range(1, 5):
        g = [Fraction(c) for c in gformal.bracket([k], order)]
        expected = [Fraction(divisor_sum(n, k - 1), factorial(k - 1)) if n else 0 for n in range(order + 1)]
        assert g == expected, k
    assert gformal.span_dim([[2], [1, 0]], order) == 1

    try:
        gformal.product("b1 q2", "b1")
    except ValueError as e:
        assert "q2" in str(e)
    else:
        raise AssertionError("malformed word accepted")

    passed, report = gformal.verify("euler")
    assert passed and "zf_equal(ζ^f(3), ζ^f(2,1)) = true" in report
    print("python smoke test: ok")


if __name__ == "__main__":
    main()
