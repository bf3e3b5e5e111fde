"""Exchange-graph enumeration, canonical forms, reddening search, DOT export."""

from collections import deque
from dataclasses import dataclass, field
from typing import Optional, Union

from .folding import FoldedMatrix
from .quivers import MutationSequence, Quiver, frame, mutate, vertex_color
from .special import mutate_rule


def _serial(element, coeff):
    return (element.sort_key(), coeff.numerator, coeff.denominator)


def canonical_key(B: FoldedMatrix) -> tuple:
    """Lexicographically minimal serialization of B over its weaving class.

    The minimization runs over simultaneous row/column permutations together
    with a per-index group-element twist, the same moves weaving_isomorphic
    searches. Two folded matrices get equal keys exactly when they are
    weaving-isomorphic (stabilizer orders permuted along).
    """
    m = B.m
    els = B.group.elements
    inverses = {g: g.inverse() for g in els}
    memo = {}

    def translated(i, j, a, b):
        # serialization of els[a] * B[i][j] * els[b]^-1
        key = (i, j, a, b)
        got = memo.get(key)
        if got is None:
            left, right = els[a], inverses[els[b]]
            got = tuple(sorted(
                _serial(left * g * right, c) for g, c in B.entries[i][j].terms))
            memo[key] = got
        return got

    def chunk(depth, src, tw, assign):
        cross = tuple(
            (translated(s, src, a, tw), translated(src, s, tw, a))
            for s, a in assign)
        return (B.stab_orders[src], translated(src, src, tw, tw), cross)

    def complete(depth, assign, used):
        # lexicographically minimal continuation, branching only on ties
        if depth == m:
            return ()
        buckets = {}
        for src in range(m):
            if src in used:
                continue
            for tw in range(len(els)):
                buckets.setdefault(chunk(depth, src, tw, assign), []).append((src, tw))
        smallest = min(buckets)
        best = None
        for src, tw in buckets[smallest]:
            tail = complete(depth + 1, assign + ((src, tw),), used | {src})
            if best is None or tail < best:
                best = tail
        return (smallest,) + best

    return complete(0, (), frozenset())


def quiver_key(q: Quiver) -> tuple:
    return (q.b, tuple(sorted(q.frozen)))


@dataclass
class ExchangeGraph:
    """Mutation closure of a starting object.

    Nodes hold one representative per class: weaving classes for folded
    matrices, exact labeled matrices for quivers. Edges are (source node,
    mutation index, target node). A blocked entry (node, index, kind)
    records a vertex whose diagonal admits no full-matrix mutation rule;
    the node stays in the graph but that direction is not expanded.
    """

    nodes: list
    edges: list = field(default_factory=list)
    root: int = 0
    complete: bool = True
    blocked: list = field(default_factory=list)


def exchange_graph(start: Union[FoldedMatrix, Quiver], budget: int = 100000,
                   rule: str = "auto") -> ExchangeGraph:
    if budget <= 0:
        raise ValueError("budget must be positive")
    if isinstance(start, Quiver):
        return _quiver_graph(start, budget)
    return _folded_graph(start, budget, rule)


def _folded_graph(B0: FoldedMatrix, budget: int, rule: str) -> ExchangeGraph:
    ids = {canonical_key(B0): 0}
    nodes = [B0]
    edges = set()
    blocked = []
    complete = True
    queue = deque([0])
    while queue:
        i = queue.popleft()
        B = nodes[i]
        for k in range(1, B.m + 1):
            try:
                kind, nxt, stale = mutate_rule(B, k, rule)
            except ValueError:
                blocked.append((i, k, "unknown"))
                continue
            if stale:
                blocked.append((i, k, kind))
                continue
            key = canonical_key(nxt)
            j = ids.get(key)
            if j is None:
                if len(nodes) >= budget:
                    complete = False
                    continue
                j = len(nodes)
                ids[key] = j
                nodes.append(nxt)
                queue.append(j)
            edges.add((i, k, j))
    return ExchangeGraph(nodes, sorted(edges), 0, complete, blocked)


def _quiver_graph(q0: Quiver, budget: int) -> ExchangeGraph:
    ids = {quiver_key(q0): 0}
    nodes = [q0]
    edges = set()
    complete = True
    queue = deque([0])
    while queue:
        i = queue.popleft()
        q = nodes[i]
        for k in sorted(q.mutable):
            nxt = mutate(q, k)
            key = quiver_key(nxt)
            j = ids.get(key)
            if j is None:
                if len(nodes) >= budget:
                    complete = False
                    continue
                j = len(nodes)
                ids[key] = j
                nodes.append(nxt)
                queue.append(j)
            edges.add((i, k, j))
    return ExchangeGraph(nodes, sorted(edges), 0, complete, [])


def reddening_search(q: Quiver, max_depth: int) -> Optional[MutationSequence]:
    """Shortest framed mutation sequence turning every mutable vertex red.

    Iterative deepening over sequences without immediate repeats; returns
    the first hit in lexicographic order at the winning depth, or None.
    """
    muts = sorted(q.mutable)
    fq0 = frame(q)

    def all_red(fq):
        return all(vertex_color(fq, v) == "red" for v in muts)

    def dfs(fq, remaining, prefix, last):
        if remaining == 0:
            return prefix if all_red(fq) else None
        for k in muts:
            if k == last:
                continue
            hit = dfs(mutate(fq, k), remaining - 1, prefix + (k,), k)
            if hit is not None:
                return hit
        return None

    for depth in range(max_depth + 1):
        hit = dfs(fq0, depth, (), None)
        if hit is not None:
            return MutationSequence(hit)
    return None


def export_dot(obj: Union[ExchangeGraph, Quiver]) -> str:
    if isinstance(obj, Quiver):
        return _quiver_dot(obj)
    lines = ["digraph exchange {"]
    for i, node in enumerate(obj.nodes):
        shape = "doublecircle" if i == obj.root else "circle"
        lines.append(f'  n{i} [shape={shape}];')
    for i, k, j in sorted(obj.edges):
        lines.append(f'  n{i} -> n{j} [label="{k}"];')
    for i, k, kind in sorted(obj.blocked):
        lines.append(f'  // n{i} blocked at {k}: {kind}')
    lines.append("}")
    return "\n".join(lines)


def _quiver_dot(q: Quiver) -> str:
    lines = ["digraph quiver {"]
    for v in range(1, q.n + 1):
        shape = "box" if v in q.frozen else "circle"
        lines.append(f'  v{v} [shape={shape}];')
    for i, j, w in q.arrow_list():
        label = f' [label="{w}"]' if w > 1 else ""
        lines.append(f"  v{i} -> v{j}{label};")
    lines.append("}")
    return "\n".join(lines)
