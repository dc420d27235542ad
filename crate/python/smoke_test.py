"""Smoke test for the pyfreeprod extension module."""

from fractions import Fraction
import math

import pyfreeprod as fp


def main():
    assert fp.catalan(4) == 14
    parts = fp.nc_partitions(4)
    assert len(parts) == 14
    p = fp.NCPartition("1,7|2|3,5|4|6")
    k = p.kreweras()
    assert len(p.blocks) + len(k.blocks) == p.n + 1

    t = fp.trace("c u c u*")
    assert t.exact == "4*L^2", t.exact
    assert math.isclose(t.numeric, 4 / math.pi**2)
    assert fp.trace("u s v s u* v*").exact == "0"

    rep = fp.free_check("UX", 4)
    assert rep.passed and rep.failures == 0

    nf = fp.normalize("R * R")
    assert str(nf) == "M2(LF(5))"
    assert nf.depth == 1 and nf.core == "LF"
    assert Fraction(nf.alias) == 2
    assert fp.normalize("C^4 * C^4", seed=3).parameter == "3"
    assert Fraction(fp.fdim("C^4 * C^4")) == Fraction(3, 2)
    assert [s[0] for s in fp.rewrite_steps("R * R")] == ["R9", "R11", "R8"]

    try:
        fp.normalize("M3(C)")
    except ValueError as e:
        assert "M3" in str(e)
    else:
        raise AssertionError("expected ValueError")

    print("python smoke test: ok")


if __name__ == "__main__":
    main()
