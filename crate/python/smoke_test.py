#!/usr/bin/env python3
"""Smoke test for the lowprob_py extension module.

Build and run:

    cargo build --release -p lowprob-py
    cp target/release/liblowprob_py.so python/lowprob_py.so
    python3 python/smoke_test.py

Every value crosses the boundary as an exact rational string, so the
assertions below compare through fractions.Fraction without tolerances.
"""

from fractions import Fraction
import sys

import lowprob_py as lp


def frac(s: str) -> Fraction:
    return Fraction(s)


def main() -> int:
    # Dempster construction on the canonical two-point instance.
    x = lp.Space(["x1", "x2"])
    y = lp.Space(["y1", "y2"])
    p = lp.Measure(y, {"y1": "1/2", "y2": "1/2"})
    gamma = lp.Mapping(y, x, {"y1": ["x1"], "y2": ["x1", "x2"]})

    belief = lp.belief_from_mapping(p, gamma)
    assert frac(belief.value("x1")) == Fraction(1, 2)
    assert frac(belief.value("x2")) == 0
    assert frac(belief.value("x1,x2")) == 1
    assert lp.is_belief_function(belief)

    mass = lp.mobius(belief)
    assert frac(mass.value("x1")) == Fraction(1, 2)
    assert frac(mass.value("x1,x2")) == Fraction(1, 2)
    assert lp.from_mass(mass).table() == belief.table()

    upper = lp.upper_from_lower(belief)
    assert frac(upper.value("x2")) == Fraction(1, 2)

    # The family route reproduces the direct construction exactly.
    fam = lp.Family.dempster(p, gamma)
    assert fam.lower_function().table() == belief.table()

    # Envelope taxonomy on the two-point bound.
    ell = lp.SetFunction(y, {"": "0", "y1": "1/4", "y2": "1/2", "y1,y2": "1"})
    holds, gap = lp.is_lower_envelope(ell)
    assert holds and gap is None
    dominating = lp.is_dominated(ell)
    assert dominating is not None
    assert sum(frac(v) for v in dominating.values()) == 1
    assert frac(lp.upper_envelope_value(ell, "y1")) == Fraction(1, 2)

    # Dominated but not an envelope: the gap witness is exact.
    y3 = lp.Space(["y1", "y2", "y3"])
    m1 = lp.SetFunction(
        y3,
        {
            "": "0", "y1": "0", "y2": "0", "y3": "0",
            "y1,y2": "2/3", "y1,y3": "2/3", "y2,y3": "2/3",
            "y1,y2,y3": "1",
        },
    )
    holds, gap = lp.is_lower_envelope(m1)
    assert not holds
    gap_set, value, envelope_value = gap
    assert frac(value) == 0 and frac(envelope_value) == Fraction(1, 3)
    assert lp.natural_envelope(m1).value(gap_set) == envelope_value

    # A pointwise minimum of measures: an envelope that is not 2-monotone.
    y4 = lp.Space(["y1", "y2", "y3", "y4"])
    n1 = lp.SetFunction(
        y4,
        {
            "": "0", "y1": "0", "y2": "0", "y3": "0", "y4": "0",
            "y1,y2": "0", "y1,y3": "1/2", "y1,y4": "1/2",
            "y2,y3": "1/2", "y2,y4": "1/2", "y3,y4": "0",
            "y1,y2,y3": "1/2", "y1,y2,y4": "1/2", "y1,y3,y4": "1/2",
            "y2,y3,y4": "1/2", "y1,y2,y3,y4": "1",
        },
    )
    assert lp.is_lower_envelope(n1)[0]
    holds, witness = lp.is_r_monotone(n1, 2)
    assert not holds and len(witness) == 2
    a, b = witness
    union = ",".join(sorted(set(a.split(",")) | set(b.split(",")), key=y4.labels().index))
    inter_members = sorted(set(a.split(",")) & set(b.split(",")), key=y4.labels().index)
    inter = ",".join(inter_members)
    lhs = frac(n1.value(union)) + frac(n1.value(inter))
    rhs = frac(n1.value(a)) + frac(n1.value(b))
    assert lhs < rhs

    # Envelope evidence: the reduced route equals the family route.
    lam1 = lp.simple_support(x, "x1")
    lam2 = lp.simple_support(x, "x1,x2")
    evidence = lp.Evidence(ell, {"y1": lam1, "y2": lam2})
    fam = lp.Family.envelope(evidence)
    for subset in x.subsets():
        assert evidence.reduced_lower_value(subset) == fam.lower_value(subset), subset
    assert frac(evidence.reduced_lower_value("x1")) == Fraction(1, 4)

    # The closed forms agree with the general machinery.
    assert lp.support_lower_value(ell, gamma, "x1") == "1/4"
    assert lp.mixture_lower_value(p, {"y1": lam1, "y2": lam2}, "x1") == "1/2"

    # Polyhedral family with one pinned cell.
    fam = lp.Family.polyhedral(x, y, [({"x1|y1": "1"}, ">=", "1/2")])
    assert frac(fam.lower_value("x1")) == Fraction(1, 2)

    # Pushforward through a point map.
    y3p = lp.Space(["y1", "y2", "y3"])
    p3 = lp.Measure(y3p, {"y1": "1/2", "y2": "1/3", "y3": "1/6"})
    val = lp.pushforward(p3, x, {"y1": "x1", "y2": "x2", "y3": "x1"}, "x1")
    assert frac(val) == Fraction(2, 3)

    print("lowprob_py smoke test: all assertions passed")
    return 0


if __name__ == "__main__":
    sys.exit(main())
