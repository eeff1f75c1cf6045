"""Independent exact ground truth: arrangement samples, depth, goodness.

The verifier judges colorings against the ORIGINAL instance, degenerate
or not.  Hyperedges are constant on cells of the boundary-line
arrangement, so a finite set of exact sample points (vertices, edge
midpoints and far points, and one point inside every face) decides
goodness.  ``verify`` walks each boundary line with incremental
containment counts, all in integer homogeneous coordinates; nothing is
ever rounded.
"""

from __future__ import annotations

import functools
import json
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .model import BLUE, RED, Instance, ModelError
from .nae import solve_nae
from .rationals import format_scalar

ORACLE_LIMIT = 20


class VerifyError(ModelError):
    pass


class LengthMismatchError(VerifyError):
    pass


class TooLargeError(VerifyError):
    """oracle() refuses instances beyond the exhaustive-search limit."""


@dataclass(frozen=True)
class Hyperedge:
    covering: tuple  # sorted half-plane indices
    witness: tuple  # exact point
    depth: int


@dataclass
class Violation:
    witness: tuple
    covering: tuple
    color: str

    def to_json_dict(self) -> dict:
        return {
            "witness": {
                "x": str(format_scalar(self.witness[0])),
                "y": str(format_scalar(self.witness[1])),
            },
            "covering": list(self.covering),
            "color": self.color,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), indent=2) + "\n"


def depth(inst: Instance, pt) -> tuple[int, list]:
    """Exact count of closed half-planes containing pt, with their indices."""
    covering = [i for i, h in enumerate(inst) if h.contains(pt)]
    return len(covering), covering


# ---------------------------------------------------------------------------
# integer line machinery


def _line_table(inst: Instance):
    """Group half-planes by geometric boundary line.

    Returns (lines, members): lines[g] = reduced integer (P, Q, R) with
    Q > 0, and members[g] = [(hp_index, required_sign)] so that closed
    containment is required_sign * (P*x + Q*y + R) >= 0.
    """
    lines: list[tuple[int, int, int]] = []
    members: list[list[tuple[int, int]]] = []
    index: dict = {}
    for i, h in enumerate(inst):
        p, q, r, s = h.int_constraint()
        g = math.gcd(math.gcd(abs(p), q), abs(r))
        key = (p // g, q // g, r // g)
        if key not in index:
            index[key] = len(lines)
            lines.append(key)
            members.append([])
        members[index[key]].append((i, s))
    return lines, members


def _meet(l1, l2):
    """Homogeneous intersection (X, Y, W) with W > 0, or None if parallel."""
    p1, q1, r1 = l1
    p2, q2, r2 = l2
    w = p1 * q2 - p2 * q1
    if w == 0:
        return None
    x = q1 * r2 - q2 * r1
    y = r1 * p2 - r2 * p1
    if w < 0:
        x, y, w = -x, -y, -w
    return x, y, w


def _point_on(line, x: Fraction):
    """Homogeneous point of `line` at abscissa x (W > 0)."""
    p, q, r = line  # q > 0
    xn, xd = x.numerator, x.denominator
    return xn * q, -(p * xn + r * xd), xd * q


def _sort_rays(rays):
    """Angular sort of integer direction vectors via exact comparisons."""

    def half(d):
        dx, dy = d
        return 0 if (dy > 0 or (dy == 0 and dx > 0)) else 1

    def cmp(d1, d2):
        h1, h2 = half(d1), half(d2)
        if h1 != h2:
            return -1 if h1 < h2 else 1
        cross = d1[0] * d2[1] - d1[1] * d2[0]
        if cross > 0:
            return -1
        if cross < 0:
            return 1
        return 0

    return sorted(rays, key=functools.cmp_to_key(cmp))


# ---------------------------------------------------------------------------
# spec-shaped sampling (used by hyperedges and small-instance work)


def arrangement_samples(inst: Instance) -> list:
    """Exact points hitting every face, edge, and vertex of the arrangement.

    Vertices come from all pairwise boundary intersections; each line
    contributes midpoints between consecutive crossings plus one far
    point beyond each end; every face incident to a vertex is reached by
    offset samples around that vertex (compass directions plus one
    direction inside every sector of the incident lines, so narrow
    sectors and concurrent vertices are covered); parallel-only
    arrangements fall back to per-line side samples.
    """
    lines, _members = _line_table(inst)
    if not lines:
        return [(0, 0)]

    crossings: list[list[Fraction]] = [[] for _ in lines]
    vertices: dict = {}
    for g1 in range(len(lines)):
        for g2 in range(g1 + 1, len(lines)):
            meet = _meet(lines[g1], lines[g2])
            if meet is None:
                continue
            x, y, w = meet
            key = (Fraction(x, w), Fraction(y, w))
            vertices.setdefault(key, set()).update((g1, g2))
            crossings[g1].append(key[0])
            crossings[g2].append(key[0])

    samples: list = []

    def line_y(g, x: Fraction) -> Fraction:
        p, q, r = lines[g]
        return Fraction(-(p * x + r), q)

    for g, xs in enumerate(crossings):
        xs = sorted(set(xs))
        if not xs:
            x0 = Fraction(0)
            y0 = line_y(g, x0)
            samples.append((x0, y0))
            gaps = [
                abs(line_y(h, x0) - y0)
                for h in range(len(lines))
                if h != g and line_y(h, x0) != y0
            ]
            delta = min(gaps) / 2 if gaps else Fraction(1)
            samples.append((x0, y0 + delta))
            samples.append((x0, y0 - delta))
            continue
        stops = [xs[0] - 1] + xs + [xs[-1] + 1]
        samples.append((stops[0], line_y(g, stops[0])))
        samples.append((stops[-1], line_y(g, stops[-1])))
        for a, b in zip(xs, xs[1:]):
            mid = (a + b) / 2
            samples.append((mid, line_y(g, mid)))

    compass = [(1, 0), (1, 1), (0, 1), (-1, 1), (-1, 0), (-1, -1), (0, -1), (1, -1)]
    for vertex in sorted(vertices):
        incident = sorted(vertices[vertex])
        samples.append(vertex)
        rays = []
        for g in incident:
            p, q, _r = lines[g]
            rays.append((q, -p))
            rays.append((-q, p))
        rays = _sort_rays(rays)
        sector_dirs = [
            (r1[0] + r2[0], r1[1] + r2[1])
            for r1, r2 in zip(rays, rays[1:] + rays[:1])
        ]
        for d in compass + sector_dirs:
            if d == (0, 0):
                continue
            delta = _safe_offset(lines, incident, vertex, d)
            samples.append((vertex[0] + delta * d[0], vertex[1] + delta * d[1]))

    seen = set()
    unique = []
    for s in samples:
        key = (Fraction(s[0]), Fraction(s[1]))
        if key not in seen:
            seen.add(key)
            unique.append(s)
    return unique


def _safe_offset(lines, incident, vertex, d) -> Fraction:
    """Half the smallest positive parameter at which vertex + t*d meets a
    non-incident line, capped at 1; no other line's sign changes within."""
    vx, vy = Fraction(vertex[0]), Fraction(vertex[1])
    best: Optional[Fraction] = None
    incident_set = set(incident)
    for g, (p, q, r) in enumerate(lines):
        if g in incident_set:
            continue
        denom = p * d[0] + q * d[1]
        if denom == 0:
            continue
        t = -(p * vx + q * vy + r) / denom
        if t > 0 and (best is None or t < best):
            best = t
    if best is None or best > 2:
        return Fraction(1)
    return best / 2


def hyperedges(inst: Instance, k: int = 3) -> list[Hyperedge]:
    """All distinct covering sets of depth >= k, one witness each."""
    edges: dict = {}
    for pt in arrangement_samples(inst):
        d, covering = depth(inst, pt)
        if d >= k:
            key = tuple(covering)
            if key not in edges:
                edges[key] = Hyperedge(key, (pt[0], pt[1]), d)
    return [edges[key] for key in sorted(edges)]


# ---------------------------------------------------------------------------
# goodness checking (incremental arrangement walk)


def verify(inst: Instance, colors: Sequence[str], k: int = 3) -> Optional[Violation]:
    """None when every depth->=k cell sees both colors, else first Violation.

    Walks every boundary line left to right, keeping exact containment
    counts per color; vertices, edges (midpoints and far points), and all
    faces around each vertex are checked.  Vertex and face checks run
    once, owned by the lowest incident line.  Deterministic order: lines
    by first occurrence, then increasing x, then sectors by angle.
    """
    if len(colors) != len(inst):
        raise LengthMismatchError(
            f"{len(colors)} colors for {len(inst)} half-planes"
        )
    bad = [c for c in colors if c not in (BLUE, RED)]
    if bad:
        raise VerifyError(f"bad color values: {bad[:3]}")
    n = len(inst)
    if n < k:
        return None

    is_red = [c == RED for c in colors]
    lines, members = _line_table(inst)
    nlines = len(lines)

    # vertices keyed by reduced integer homogeneous triples (fast hashing)
    vertex_lines: dict = {}
    vertex_frac: dict = {}
    crossings: list[dict] = [dict() for _ in lines]  # vkey -> Fraction x
    for g1 in range(nlines):
        l1 = lines[g1]
        for g2 in range(g1 + 1, nlines):
            meet = _meet(l1, lines[g2])
            if meet is None:
                continue
            x, y, w = meet
            g = math.gcd(math.gcd(abs(x), abs(y)), w)
            vkey = (x // g, y // g, w // g)
            seen = vertex_lines.get(vkey)
            if seen is None:
                vertex_lines[vkey] = {g1, g2}
                vertex_frac[vkey] = (Fraction(x, w), Fraction(y, w))
            else:
                seen.update((g1, g2))
            fx = vertex_frac[vkey][0]
            crossings[g1][vkey] = fx
            crossings[g2][vkey] = fx

    def check(nblue: int, nred: int, witness_fn) -> Optional[Violation]:
        if nblue + nred >= k and (nblue == 0 or nred == 0):
            w = witness_fn()
            covering = depth(inst, w)[1]
            return Violation(w, tuple(covering), RED if nblue == 0 else BLUE)
        return None

    for g in range(nlines):
        p, q, r = lines[g]
        xs = sorted(crossings[g].items(), key=lambda kv: kv[1])

        def y_at(x: Fraction, p=p, q=q, r=r) -> Fraction:
            return Fraction(-(p * x + r), q)

        x0 = (xs[0][1] - 1) if xs else Fraction(0)
        X0, Y0, W0 = _point_on(lines[g], Fraction(x0))

        # containment state for every half-plane at the current on-line point
        contained = [False] * n
        cnt = [0, 0]  # blue, red
        signs = [0] * nlines
        for h in range(nlines):
            ph, qh, rh = lines[h]
            val = ph * X0 + qh * Y0 + rh * W0
            s = 1 if val > 0 else (-1 if val < 0 else 0)
            signs[h] = s
            for hp, req in members[h]:
                inside = s * req >= 0
                contained[hp] = inside
                if inside:
                    cnt[1 if is_red[hp] else 0] += 1

        v = check(cnt[0], cnt[1], lambda x0=x0: (x0, y_at(x0)))
        if v:
            return v

        for pos, (vkey, x) in enumerate(xs):
            all_inc = sorted(vertex_lines[vkey])
            incident = [h for h in all_inc if h != g]
            owner = all_inc[0] == g
            # vertex sample: every incident half-plane becomes contained
            dblue = dred = 0
            for h in incident:
                for hp, _req in members[h]:
                    if not contained[hp]:
                        if is_red[hp]:
                            dred += 1
                        else:
                            dblue += 1
            if owner:
                v = check(
                    cnt[0] + dblue,
                    cnt[1] + dred,
                    lambda vkey=vkey: vertex_frac[vkey],
                )
                if v:
                    return v

                # face samples: one direction inside each sector
                rays = []
                for h in all_inc:
                    ph, qh, _rh = lines[h]
                    rays.append((qh, -ph))
                    rays.append((-qh, ph))
                rays = _sort_rays(rays)
                onv_blue = cnt[0] + dblue
                onv_red = cnt[1] + dred
                for r1, r2 in zip(rays, rays[1:] + rays[:1]):
                    d = (r1[0] + r2[0], r1[1] + r2[1])
                    sblue, sred = onv_blue, onv_red
                    for h in all_inc:
                        ph, qh, _rh = lines[h]
                        dot = ph * d[0] + qh * d[1]
                        for hp, req in members[h]:
                            if dot * req < 0:
                                if is_red[hp]:
                                    sred -= 1
                                else:
                                    sblue -= 1

                    def sector_witness(vkey=vkey, d=d, all_inc=all_inc):
                        vx, vy = vertex_frac[vkey]
                        delta = _safe_offset(lines, all_inc, (vx, vy), d)
                        return (vx + delta * d[0], vy + delta * d[1])

                    v = check(sblue, sred, sector_witness)
                    if v:
                        return v

            # step over the vertex: incident line signs flip
            for h in incident:
                signs[h] = -signs[h]
                for hp, req in members[h]:
                    inside = signs[h] * req >= 0
                    if inside != contained[hp]:
                        contained[hp] = inside
                        step = 1 if inside else -1
                        cnt[1 if is_red[hp] else 0] += step

            # the edge after this vertex: midpoint to the next crossing,
            # or a far point past the last one
            if pos + 1 < len(xs):
                wit = lambda a=x, b=xs[pos + 1][1]: ((a + b) / 2, y_at((a + b) / 2))
            else:
                wit = lambda x=x: (x + 1, y_at(x + 1))
            v = check(cnt[0], cnt[1], wit)
            if v:
                return v

        if not xs:
            # crossing-free line: the two adjacent cells, one per side
            for updir in (1, -1):
                sblue, sred = cnt[0], cnt[1]
                for hp, req in members[g]:
                    # directional sign along (0, updir): q > 0
                    if (q * updir) * req < 0:
                        if is_red[hp]:
                            sred -= 1
                        else:
                            sblue -= 1

                def side_witness(updir=updir, x0=x0):
                    y0 = y_at(Fraction(x0))
                    gaps = [
                        abs(Fraction(-(ph * x0 + rh), qh) - y0)
                        for hh, (ph, qh, rh) in enumerate(lines)
                        if hh != g
                    ]
                    gaps = [gp for gp in gaps if gp > 0]
                    delta = min(gaps) / 2 if gaps else Fraction(1)
                    return (x0, y0 + updir * delta)

                v = check(sblue, sred, side_witness)
                if v:
                    return v

    return None


def oracle(inst: Instance, k: int = 3) -> Optional[list]:
    """First good coloring in lexicographic order (blue < red), or None.

    Exhaustive over the hyperedge constraints; limited to 20 half-planes.
    """
    n = len(inst)
    if n > ORACLE_LIMIT:
        raise TooLargeError(f"{n} half-planes exceeds oracle limit {ORACLE_LIMIT}")
    if n < k:
        return [BLUE] * n
    constraints = [e.covering for e in hyperedges(inst, k)]
    assignment = solve_nae(n, constraints)
    if assignment is None:
        return None
    return [RED if v else BLUE for v in assignment]
