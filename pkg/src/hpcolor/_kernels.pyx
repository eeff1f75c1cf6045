# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled exact predicates: the hot kernels behind the hull machinery.

The orientation sign is evaluated in 128-bit integer arithmetic whenever
all six coordinates are machine-size ints; anything else (big ints,
Fractions) falls back to Python object arithmetic, which is exact too.
"""

IMPLEMENTATION = "c"

cdef extern from *:
    ctypedef long long int128 "__int128_t"

DEF LIMIT = 2305843009213693952  # 2**61: diffs stay below 2**62, products in int128


def orient(ax, ay, bx, by, cx, cy):
    """Sign of the cross product (b - a) x (c - a): +1 left, -1 right, 0 on."""
    cdef long long iax, iay, ibx, iby, icx, icy
    cdef int128 det
    if (
        type(ax) is int and type(ay) is int and type(bx) is int
        and type(by) is int and type(cx) is int and type(cy) is int
    ):
        try:
            iax = ax; iay = ay; ibx = bx; iby = by; icx = cx; icy = cy
        except OverflowError:
            pass
        else:
            if (
                -LIMIT < iax < LIMIT and -LIMIT < iay < LIMIT
                and -LIMIT < ibx < LIMIT and -LIMIT < iby < LIMIT
                and -LIMIT < icx < LIMIT and -LIMIT < icy < LIMIT
            ):
                det = (
                    <int128>(ibx - iax) * <int128>(icy - iay)
                    - <int128>(iby - iay) * <int128>(icx - iax)
                )
                if det > 0:
                    return 1
                if det < 0:
                    return -1
                return 0
    obj = (bx - ax) * (cy - ay) - (by - ay) * (cx - ax)
    if obj > 0:
        return 1
    if obj < 0:
        return -1
    return 0
