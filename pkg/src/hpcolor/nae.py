"""Not-all-equal 2-coloring search: backtracking with unit propagation.

Constraints are vertex sets that must see both colors.  The search
assigns variables in index order, trying blue before red, so the first
solution found is the lexicographically smallest (propagated values are
logical consequences of the prefix, which preserves minimality).
"""

from __future__ import annotations

from typing import Optional, Sequence

BLUE, RED = 0, 1


def solve_nae(n: int, edges: Sequence[Sequence[int]]) -> Optional[list[int]]:
    """First good assignment in lexicographic order (blue < red), or None."""
    edge_vars = [tuple(e) for e in edges]
    for e in edge_vars:
        if len(e) < 2:
            return None  # a singleton edge can never see both colors
    watch: list[list[int]] = [[] for _ in range(n)]
    for idx, e in enumerate(edge_vars):
        for v in e:
            watch[v].append(idx)
    counts = [[0, 0] for _ in edge_vars]  # assigned blues/reds per edge
    assign: list[Optional[int]] = [None] * n

    def set_var(v: int, color: int, trail: list[int]) -> None:
        assign[v] = color
        for ei in watch[v]:
            counts[ei][color] += 1
        trail.append(v)

    def undo(trail: list[int]) -> None:
        for v in trail:
            color = assign[v]
            for ei in watch[v]:
                counts[ei][color] -= 1
            assign[v] = None

    def propagate(trail: list[int], queue: list[int]) -> bool:
        while queue:
            v = queue.pop()
            for ei in watch[v]:
                c = counts[ei]
                if c[BLUE] and c[RED]:
                    continue  # already bichromatic
                e = edge_vars[ei]
                unassigned = len(e) - c[BLUE] - c[RED]
                if unassigned == 0:
                    return False  # monochromatic and full
                if unassigned == 1:
                    forced = RED if c[RED] == 0 else BLUE
                    uv = next(u for u in e if assign[u] is None)
                    set_var(uv, forced, trail)
                    queue.append(uv)
        return True

    def dfs(start: int) -> bool:
        v = start
        while v < n and assign[v] is not None:
            v += 1
        if v == n:
            return True
        for color in (BLUE, RED):
            trail: list[int] = []
            set_var(v, color, trail)
            if propagate(trail, [v]) and dfs(v + 1):
                return True
            undo(trail)
        return False

    if dfs(0):
        return [assign[v] for v in range(n)]
    return None
