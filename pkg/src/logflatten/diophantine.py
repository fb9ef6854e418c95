"""Minimal nonnegative solutions of exact linear Diophantine systems.

Implements the Contejean-Devie completion procedure: a breadth-first walk
from the unit vectors in which a node x may grow in coordinate i only when
<A.x - defect target, column i> is negative, pruned against already-found
solutions.  The walk visits every minimal solution and terminates.

Used for monoid membership witnesses, module generators of equation sets,
and Hilbert-style generator computations throughout the package.
"""

from __future__ import annotations

from .lattice import Mat, Vec, mat, transpose

_NODE_CAP = 2_000_000


class SearchBlowup(RuntimeError):
    """Completion search exceeded the safety cap; input is out of desk scale."""


def _cd(columns: list[Vec], rhs: Vec | None, stop_at_first: bool) -> list[Vec]:
    """Core Contejean-Devie walk.

    columns: the columns of A, each of length m.
    rhs: None for the homogeneous problem (minimal nonzero solutions of
         A.x = 0), else the right-hand side b of A.x = b (minimal solutions,
         realized by a homogenized run with an extra variable capped at 1).
    Returns minimal solutions in a canonical sorted order.
    """
    k = len(columns)
    m = len(rhs) if rhs is not None else (len(columns[0]) if columns else 0)
    cols = list(columns)
    nvars = k
    t_index = None
    if rhs is not None:
        if all(c == 0 for c in rhs):
            return [(0,) * k]
        cols = cols + [tuple(-c for c in rhs)]
        t_index = k
        nvars = k + 1

    def defect(x: tuple[int, ...]) -> Vec:
        out = [0] * m
        for i, xi in enumerate(x):
            if xi:
                ci = cols[i]
                for r in range(m):
                    out[r] += xi * ci[r]
        return tuple(out)

    solutions: list[tuple[int, ...]] = []

    def dominated(x: tuple[int, ...]) -> bool:
        for s in solutions:
            if all(si <= xi for si, xi in zip(s, x)):
                return True
        return False

    frontier = []
    for i in range(nvars):
        e = [0] * nvars
        e[i] = 1
        frontier.append(tuple(e))
    seen = set(frontier)
    nodes = 0
    while frontier:
        next_frontier = []
        for x in sorted(frontier):
            nodes += 1
            if nodes > _NODE_CAP:
                raise SearchBlowup(f"more than {_NODE_CAP} nodes")
            if dominated(x):
                continue
            d = defect(x)
            if all(c == 0 for c in d):
                # every zero-defect node joins the pruning set, including
                # homogeneous ones met during an inhomogeneous run
                solutions.append(x)
                if stop_at_first and (rhs is None or x[t_index] == 1):
                    return [_strip(x, t_index)]
                continue
            for i in range(nvars):
                if t_index is not None and i == t_index and x[t_index] >= 1:
                    continue
                ci = cols[i]
                if sum(dc * cc for dc, cc in zip(d, ci)) < 0:
                    y = x[:i] + (x[i] + 1,) + x[i + 1:]
                    if y not in seen and not dominated(y):
                        seen.add(y)
                        next_frontier.append(y)
        frontier = next_frontier
    out = [_strip(s, t_index) for s in solutions if rhs is None or s[t_index] == 1]
    return sorted(set(out))


def _strip(x: tuple[int, ...], t_index: int | None) -> Vec:
    if t_index is None:
        return x
    return x[:t_index]


def minimal_nonneg_solutions(a: Mat, b: Vec) -> tuple[Vec, ...]:
    """All componentwise-minimal x in N^k with a.x = b, sorted canonically."""
    cols = list(transpose(mat(a))) if a else []
    k = len(a[0]) if a else 0
    if k == 0:
        return ((),) if all(c == 0 for c in b) else ()
    return tuple(_cd(cols, tuple(b), stop_at_first=False))


def has_nonneg_solution(a: Mat, b: Vec) -> bool:
    """Decide whether a.x = b admits any x >= 0; exact, terminates always."""
    cols = list(transpose(mat(a))) if a else []
    k = len(a[0]) if a else 0
    if k == 0:
        return all(c == 0 for c in b)
    return bool(_cd(cols, tuple(b), stop_at_first=True))


def kernel_hilbert_basis(a: Mat) -> tuple[Vec, ...]:
    """Minimal nonzero solutions of a.x = 0, x >= 0 (Hilbert basis of the
    kernel monoid)."""
    cols = list(transpose(mat(a))) if a else []
    if not cols:
        return ()
    return tuple(_cd(cols, None, stop_at_first=False))
