from fractions import Fraction

import pytest

from hpcolor.model import LOWER, UPPER, HalfPlane, Instance
from hpcolor.verification import arrangement_samples, depth


def make_instance(*triples) -> Instance:
    return Instance([HalfPlane(a, b, side) for a, b, side in triples])


def instance_from_tips(upper_tips, lower_tips) -> Instance:
    """Instance whose dual tips are exactly the given points.

    A tip (x, y) with a downward ray comes from the upper half-plane
    y' <= -x*x' + y; an upward ray from the lower one.
    """
    hps = [HalfPlane(-x, y, UPPER) for x, y in upper_tips]
    hps += [HalfPlane(-x, y, LOWER) for x, y in lower_tips]
    return Instance(hps)


def verify_brute(inst, colors, k=3):
    """Independent slow checker: depth at every arrangement sample."""
    for pt in arrangement_samples(inst):
        d, cov = depth(inst, pt)
        if d >= k:
            seen = {colors[i] for i in cov}
            if len(seen) == 1:
                return tuple(cov)
    return None


@pytest.fixture
def i3() -> Instance:
    return make_instance((1, 0, UPPER), (-1, 2, UPPER), (0, 0, LOWER))


@pytest.fixture
def i_tri2() -> Instance:
    return make_instance(
        (0, 0, UPPER),
        (Fraction(3, 2), 0, LOWER),
        (Fraction(-3, 2), 6, LOWER),
    )


@pytest.fixture
def i_unc() -> Instance:
    return make_instance((1, 0, UPPER), (2, 1, UPPER), (-1, 5, UPPER))
