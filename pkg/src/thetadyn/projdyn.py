"""Self-maps of P^1(F_q) and their functional graphs.

Nodes of a graph are indexed ``0..q``: index ``i < q`` is the field element
with integer encoding ``i`` and index ``q`` is the point at infinity.
"""

from __future__ import annotations

import os
from collections import Counter, deque
from collections.abc import Callable, Sequence
from dataclasses import dataclass, field

from .errors import DomainTooLargeError, KZeroError
from .ffield import INF, FieldCtx, ProjPoint

DEFAULT_LIMIT = 1 << 20
LIMIT_ENV = "THETA_BF_LIMIT"


def brute_force_limit(override: int | None = None) -> int:
    """Domain-size limit: explicit override, else ``THETA_BF_LIMIT``, else 2**20."""
    if override is not None:
        return override
    env = os.environ.get(LIMIT_ENV)
    return int(env) if env else DEFAULT_LIMIT


@dataclass(frozen=True)
class ThetaMap:
    """``x -> k (x + 1/x)`` on the projective line, with ``0, INF -> INF``."""

    ctx: FieldCtx
    k: int

    def __post_init__(self):
        if self.k % self.ctx.p == 0:
            raise KZeroError("k must be nonzero in F_p")
        object.__setattr__(self, "k", self.k % self.ctx.p)

    def __call__(self, x: ProjPoint) -> ProjPoint:
        return theta_apply(self, x)


def theta_apply(m: ThetaMap, x: ProjPoint) -> ProjPoint:
    if x is INF or x == 0:
        return INF
    ctx = m.ctx
    return ctx.scale(m.k, ctx.add(x, ctx.inv(x)))


def psi_apply(ctx: FieldCtx, x: ProjPoint) -> ProjPoint:
    """The involution ``x -> (x+1)/(x-1)`` swapping 1 and INF."""
    if x is INF:
        return 1
    if x == 1:
        return INF
    return ctx.div(ctx.add(x, 1), ctx.sub(x, 1))


def square_map_apply(ctx: FieldCtx, x: ProjPoint, sign: int) -> ProjPoint:
    """``x -> x**2`` for ``sign=+1``; ``x -> x**-2`` (swapping 0, INF) for ``sign=-1``."""
    if sign == 1:
        return INF if x is INF else ctx.square(x)
    if sign != -1:
        raise ValueError("sign must be +1 or -1")
    if x is INF:
        return 0
    if x == 0:
        return INF
    return ctx.inv(ctx.square(x))


def preimages(m: ThetaMap, y: ProjPoint) -> set:
    """All ``x`` with ``theta(x) == y``: roots of ``k x^2 - y x + k``."""
    if y is INF:
        return {0, INF}
    ctx = m.ctx
    # x^2 - (y/k) x + 1 = 0  =>  x = (b +- sqrt(b^2 - 4)) / 2 with b = y/k
    b = ctx.scale(pow(m.k, -1, ctx.p), y)
    disc = ctx.sub(ctx.square(b), 4 % ctx.p)
    if not ctx.is_square(disc):
        return set()
    r, _ = ctx.sqrt(disc)
    half = pow(2, -1, ctx.p)
    return {ctx.scale(half, ctx.add(b, r)), ctx.scale(half, ctx.sub(b, r))}


def point_to_index(ctx: FieldCtx, x: ProjPoint) -> int:
    return ctx.q if x is INF else x


def index_to_point(ctx: FieldCtx, i: int) -> ProjPoint:
    return INF if i == ctx.q else i


@dataclass(frozen=True)
class FunctionalGraph:
    """Total successor map on ``P^1(F_q)``."""

    ctx: FieldCtx
    successor: tuple[int, ...]
    name: str = ""

    @property
    def domain_size(self) -> int:
        return len(self.successor)

    def label(self, i: int) -> ProjPoint:
        return index_to_point(self.ctx, i)

    def indegrees(self) -> list[int]:
        deg = [0] * self.domain_size
        for s in self.successor:
            deg[s] += 1
        return deg


def build_graph(
    f: Callable[[ProjPoint], ProjPoint],
    ctx: FieldCtx,
    limit: int | None = None,
    name: str = "",
) -> FunctionalGraph:
    """Evaluate ``f`` on every point of ``P^1(F_q)``."""
    size = ctx.q + 1
    lim = brute_force_limit(limit)
    if size > lim:
        raise DomainTooLargeError(size, lim)
    succ = []
    for i in range(size):
        y = f(index_to_point(ctx, i))
        succ.append(point_to_index(ctx, y))
    return FunctionalGraph(ctx, tuple(succ), name)


@dataclass(frozen=True)
class GraphSummary:
    """Canonical structure of a functional graph.

    ``cycles`` lists each cycle in successor order starting from its smallest
    index; ``tree_shapes[c][j]`` is the canonical bracket encoding of the tree
    hanging on ``cycles[c][j]`` (the cyclic predecessor excluded).
    """

    cycle_spectrum: tuple[tuple[int, int], ...]
    cycles: tuple[tuple[int, ...], ...]
    tree_shapes: tuple[tuple[str, ...], ...]
    indegree_histogram: dict[int, int]
    depth: tuple[int, ...] = field(repr=False)
    root: tuple[int, ...] = field(repr=False)

    @property
    def components(self) -> int:
        return len(self.cycles)

    def rooted_shapes(self) -> Counter:
        """Multiset of ``(cycle length, tree encoding)`` over all cyclic nodes."""
        out: Counter = Counter()
        for cyc, shapes in zip(self.cycles, self.tree_shapes):
            for enc in shapes:
                out[(len(cyc), enc)] += 1
        return out


def summarize(g: FunctionalGraph) -> GraphSummary:
    succ = g.successor
    size = len(succ)
    state = [0] * size  # 0 new, 1 on current walk, 2 done
    on_cycle = [False] * size
    cycles = []
    for start in range(size):
        if state[start]:
            continue
        path = []
        x = start
        while state[x] == 0:
            state[x] = 1
            path.append(x)
            x = succ[x]
        if state[x] == 1:
            cyc = path[path.index(x):]
            m = cyc.index(min(cyc))
            cyc = cyc[m:] + cyc[:m]
            cycles.append(tuple(cyc))
            for v in cyc:
                on_cycle[v] = True
        for v in path:
            state[v] = 2
    cycles.sort(key=lambda c: (len(c), c[0]))

    children: list[list[int]] = [[] for _ in range(size)]
    indeg = [0] * size
    for v, s in enumerate(succ):
        indeg[s] += 1
        if not on_cycle[v]:
            children[s].append(v)

    depth = [0] * size
    root = list(range(size))
    order = []
    queue = deque(v for v in range(size) if on_cycle[v])
    while queue:
        v = queue.popleft()
        order.append(v)
        for c in children[v]:
            depth[c] = depth[v] + 1
            root[c] = root[v]
            queue.append(c)

    enc = [""] * size
    for v in reversed(order):
        enc[v] = "(" + "".join(sorted(enc[c] for c in children[v])) + ")"

    spectrum = Counter(len(c) for c in cycles)
    return GraphSummary(
        cycle_spectrum=tuple(sorted(spectrum.items())),
        cycles=tuple(cycles),
        tree_shapes=tuple(tuple(enc[v] for v in c) for c in cycles),
        indegree_histogram=dict(sorted(Counter(indeg).items())),
        depth=tuple(depth),
        root=tuple(root),
    )


# -- canonical encodings of the predicted tree shapes ------------------------


def level_tree_encoding(children_per_level: Sequence[int]) -> str:
    """Encoding of a tree in which every vertex at level ``r`` has
    ``children_per_level[r]`` children (leaves below the last level)."""
    enc = "()"
    for c in reversed(children_per_level):
        enc = "(" + enc * c + ")"
    return enc


def binary_tree_encoding(depth: int) -> str:
    """Root with one child, every other non-leaf with two, leaves at ``depth``."""
    if depth <= 0:
        return "()"
    return level_tree_encoding([1] + [2] * (depth - 1))


def tree_depth(encoding: str) -> int:
    d = best = 0
    for ch in encoding:
        d += 1 if ch == "(" else -1
        best = max(best, d)
    return best - 1


def tree_size(encoding: str) -> int:
    return encoding.count("(")
