"""Pure-Python fallback for the hot exact predicates.

The compiled twin (``_kernels``) evaluates the same expressions in C with
128-bit intermediates when all inputs are machine-size ints, falling back
to Python object arithmetic otherwise.  Both implementations are exact on
ints and Fractions; callers never see a difference beyond speed.
"""

IMPLEMENTATION = "python"


def orient(ax, ay, bx, by, cx, cy):
    """Sign of the cross product (b - a) x (c - a): +1 left, -1 right, 0 on."""
    det = (bx - ax) * (cy - ay) - (by - ay) * (cx - ax)
    if det > 0:
        return 1
    if det < 0:
        return -1
    return 0
