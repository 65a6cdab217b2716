"""Folded core automata for finitely generated subgroups of free groups.

A core automaton is a finite connected graph with edges labeled by signed
letters, involutive (delta(v, a) = w iff delta(w, -a) = v), deterministic at
every vertex, and with every non-base vertex of degree >= 2.  Such a graph
with a base vertex is the same data as a finitely generated subgroup of the
free group of the given rank.

Cores are always stored in canonical form: vertex 0 is the base and vertices
are numbered by BFS discovery, expanding letters in the fixed letter order.
Two cores are isomorphic as based labeled graphs iff they are equal.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass
from fractions import Fraction

from .words import (check_letters, free_reduce, inverse, is_reduced,
                    letters_in_order, shortlex_key)


@dataclass(frozen=True)
class CoreAutomaton:
    r: int
    base: int
    delta: dict      # (vertex, signed letter) -> vertex; both directions stored
    num_vertices: int

    def step(self, v, a):
        return self.delta.get((v, a))

    def degree(self, v):
        return sum(1 for (u, _a) in self.delta if u == v)

    def degrees(self):
        deg = [0] * self.num_vertices
        for (u, _a) in self.delta:
            deg[u] += 1
        return deg

    def positive_edges(self):
        return sorted((u, a, w) for (u, a), w in self.delta.items() if a > 0)

    @property
    def num_positive_edges(self):
        return sum(1 for (_u, a) in self.delta if a > 0)


class EmbedConflict(Exception):
    """Raised by embed_check(strict=True); carries the offending vertex pair."""

    def __init__(self, pair, reason):
        super().__init__(f"embedding fails at {pair}: {reason}")
        self.pair = pair
        self.reason = reason


# ---------------------------------------------------------------------------
# construction: wedge of loops -> fold (union-find) -> trim -> canonicalize
# ---------------------------------------------------------------------------

def _fold(num_vertices, edges):
    """Identify edges with equal source and label until deterministic.

    `edges` are directed labeled edges; both directions of each geometric edge
    must be present.  Returns (root vertex list, adjacency dicts) with stale
    entries; callers should normalize through `find`.
    """
    parent = list(range(num_vertices))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    adj = [dict() for _ in range(num_vertices)]
    stack = list(edges)
    while stack:
        u, a, v = stack.pop()
        u, v = find(u), find(v)
        w = adj[u].get(a)
        if w is not None:
            w = find(w)
            adj[u][a] = w
        if w is None:
            adj[u][a] = v
            continue
        if w == v:
            continue
        # conflict: same-source same-label edges to v and w; merge targets
        if len(adj[v]) < len(adj[w]):
            v, w = w, v
        parent[w] = v
        for b, t in adj[w].items():
            stack.append((v, b, t))
        adj[w] = {}
    return find, adj


def _normalized_delta(find, adj, num_vertices):
    delta = {}
    for u in range(num_vertices):
        ru = find(u)
        for a, v in adj[u].items():
            rv = find(v)
            prev = delta.get((ru, a))
            if prev is not None and prev != rv:
                raise AssertionError("folding left a nondeterministic star")
            delta[(ru, a)] = rv
    for (u, a), v in list(delta.items()):
        back = delta.get((v, -a))
        if back is None:
            delta[(v, -a)] = u
        elif back != u:
            raise AssertionError("folding broke the edge involution")
    return delta


def _trim(delta, base):
    """Remove non-base vertices of degree <= 1 (hanging trees), cascading."""
    deg = {}
    for (u, _a) in delta:
        deg[u] = deg.get(u, 0) + 1
    queue = deque(v for v, d in deg.items() if d <= 1 and v != base)
    dead = set()
    while queue:
        v = queue.popleft()
        if v in dead or v == base:
            continue
        if deg.get(v, 0) > 1:
            continue
        dead.add(v)
        # v has at most one incident edge pair left
        for (u, a) in [key for key in delta if key[0] == v]:
            w = delta.pop((v, a))
            delta.pop((w, -a), None)
            deg[v] -= 1
            deg[w] -= 1
            if deg[w] <= 1 and w != base:
                queue.append(w)
    return delta


def _canonicalize(r, base, delta, extra_vertices=()):
    """Renumber by BFS from the base in the fixed letter order."""
    order = [base]
    seen = {base}
    letter_order = letters_in_order(r)
    pos = 0
    while pos < len(order):
        v = order[pos]
        pos += 1
        for a in letter_order:
            w = delta.get((v, a))
            if w is not None and w not in seen:
                seen.add(w)
                order.append(w)
    touched = {u for (u, _a) in delta} | {base}
    if seen != touched:
        raise ValueError("core automaton must be connected")
    renum = {v: i for i, v in enumerate(order)}
    new_delta = {(renum[u], a): renum[v] for (u, a), v in delta.items()}
    return CoreAutomaton(r=r, base=0, delta=new_delta, num_vertices=len(order))


def build_core(generators, r):
    """The folded core automaton of the subgroup generated by the given words.

    The generators are freely reduced first; a wedge of labeled loops at the
    base is folded with a union-find worklist, then hanging trees are trimmed.
    The result is independent of generator order and inverse-closure.
    """
    if r < 1:
        raise ValueError("rank must be >= 1")
    words = []
    for g in generators:
        w = free_reduce(g)
        check_letters(w, r)
        if w:
            words.append(w)
    edges = []
    n = 1
    for w in words:
        prev = 0
        for i, a in enumerate(w):
            nxt = 0 if i == len(w) - 1 else n
            if i != len(w) - 1:
                n += 1
            edges.append((prev, a, nxt))
            edges.append((nxt, -a, prev))
            prev = nxt
    find, adj = _fold(n, edges)
    delta = _normalized_delta(find, adj, n)
    delta = _trim(delta, find(0))
    return _canonicalize(r, find(0), delta)


def extend_core(core, new_generators):
    """Core of the subgroup generated by the old one plus the given words."""
    edges = [(u, a, v) for (u, a), v in core.delta.items()]
    n = core.num_vertices
    for g in new_generators:
        w = free_reduce(g)
        check_letters(w, core.r)
        if not w:
            continue
        prev = core.base
        for i, a in enumerate(w):
            nxt = core.base if i == len(w) - 1 else n
            if i != len(w) - 1:
                n += 1
            edges.append((prev, a, nxt))
            edges.append((nxt, -a, prev))
            prev = nxt
    find, adj = _fold(n, edges)
    delta = _normalized_delta(find, adj, n)
    delta = _trim(delta, find(core.base))
    return _canonicalize(core.r, find(core.base), delta)


# ---------------------------------------------------------------------------
# queries
# ---------------------------------------------------------------------------

def trace(core, word, start=None):
    """Endpoint of the path reading `word` from `start`, or None if undefined."""
    v = core.base if start is None else start
    for a in word:
        v = core.delta.get((v, a))
        if v is None:
            return None
    return v


def membership(core, word):
    """Whether the reduced word lies in the subgroup of the core."""
    w = free_reduce(word)
    check_letters(w, core.r)
    return trace(core, w) == core.base


def distances(core):
    """BFS distances from the base; in canonical form these are monotone."""
    dist = [None] * core.num_vertices
    dist[core.base] = 0
    queue = deque([core.base])
    letter_order = letters_in_order(core.r)
    while queue:
        v = queue.popleft()
        for a in letter_order:
            w = core.delta.get((v, a))
            if w is not None and dist[w] is None:
                dist[w] = dist[v] + 1
                queue.append(w)
    return dist


@dataclass(frozen=True)
class Deficit:
    total: Fraction
    per_vertex: tuple      # def(v) = 2r - deg(v), indexed by vertex
    distance: tuple        # |v|, indexed by vertex


def deficit(core):
    """Exact deficit sum def(C) = sum_v (2r - deg v) (2r-1)^(-|v|)."""
    deg = core.degrees()
    dist = distances(core)
    r = core.r
    per = tuple(2 * r - d for d in deg)
    total = sum((Fraction(per[v], (2 * r - 1) ** dist[v])
                 for v in range(core.num_vertices)), Fraction(0))
    return Deficit(total=total, per_vertex=per, distance=tuple(dist))


def index(core):
    """Subgroup index: the vertex count if every star is full, else None."""
    full = 2 * core.r
    if all(d == full for d in core.degrees()):
        return core.num_vertices
    return None


def rank(core):
    """Rank of the subgroup, by Euler characteristic of the core."""
    return core.num_positive_edges - core.num_vertices + 1


def spanning_tree(core):
    """Geodesic BFS spanning tree with ShortLex letter tie-breaking.

    Returns (parent, tree_edges) where parent[v] = (u, a) with delta(u,a)=v,
    and tree_edges contains both directions of every tree edge.
    """
    parent = [None] * core.num_vertices
    seen = {core.base}
    tree_edges = set()
    letter_order = letters_in_order(core.r)
    queue = deque([core.base])
    while queue:
        v = queue.popleft()
        for a in letter_order:
            w = core.delta.get((v, a))
            if w is not None and w not in seen:
                seen.add(w)
                parent[w] = (v, a)
                tree_edges.add((v, a, w))
                tree_edges.add((w, -a, v))
                queue.append(w)
    return parent, tree_edges


def tree_word(parent, v):
    """Label of the tree path from the base to v."""
    out = []
    while parent[v] is not None:
        u, a = parent[v]
        out.append(a)
        v = u
    return tuple(reversed(out))


def schreier_basis(core):
    """Geodesic spanning tree and the Schreier basis it defines.

    One basis word t(u) * a * t(w)^-1 per positive non-tree edge (u, a, w);
    the words come out freely reduced and their number equals the rank.
    """
    parent, tree_edges = spanning_tree(core)
    basis = []
    for (u, a, w) in core.positive_edges():
        if (u, a, w) in tree_edges:
            continue
        word = tree_word(parent, u) + (a,) + inverse(tree_word(parent, w))
        if not is_reduced(word):
            raise AssertionError("Schreier word failed to be reduced")
        basis.append(word)
    basis.sort(key=shortlex_key)
    if len(basis) != rank(core):
        raise AssertionError("basis size disagrees with Euler characteristic")
    return tree_edges, basis


def embed_check(sub, sup, strict=False):
    """Label-preserving based morphism sub -> sup, if injective and total.

    Propagates deterministically from base to base.  Returns the vertex map on
    success and None on failure; with strict=True failure raises EmbedConflict
    carrying the offending vertex pair.  Success certifies that the subgroup
    of `sub` is a free factor of the subgroup of `sup`.
    """
    if sub.r != sup.r:
        raise ValueError("cores must share the same rank")
    f = {sub.base: sup.base}
    queue = deque([sub.base])
    while queue:
        v = queue.popleft()
        for a in letters_in_order(sub.r):
            w = sub.delta.get((v, a))
            if w is None:
                continue
            target = sup.delta.get((f[v], a))
            if target is None:
                if strict:
                    raise EmbedConflict((v, w), "image edge missing")
                return None
            if w in f:
                if f[w] != target:
                    if strict:
                        raise EmbedConflict((v, w), "inconsistent image")
                    return None
            else:
                f[w] = target
                queue.append(w)
    if len(set(f.values())) != len(f):
        if strict:
            raise EmbedConflict((None, None), "image not injective")
        return None
    return f


def validate_core(core):
    """Check all structural invariants; raises ValueError on violation."""
    if core.r < 1:
        raise ValueError("rank must be >= 1")
    if not (0 <= core.base < core.num_vertices):
        raise ValueError("base vertex out of range")
    deg = [0] * core.num_vertices
    for (u, a), v in core.delta.items():
        if not (0 <= u < core.num_vertices and 0 <= v < core.num_vertices):
            raise ValueError("vertex out of range")
        check_letters((a,), core.r)
        if core.delta.get((v, -a)) != u:
            raise ValueError("edge involution violated")
        deg[u] += 1
    for v, d in enumerate(deg):
        if v != core.base and d < 2:
            raise ValueError(f"non-base vertex {v} has degree {d} < 2")
        if d > 2 * core.r:
            raise ValueError(f"vertex {v} exceeds full star")
    # connectivity
    seen = {core.base}
    queue = deque([core.base])
    while queue:
        v = queue.popleft()
        for a in letters_in_order(core.r):
            w = core.delta.get((v, a))
            if w is not None and w not in seen:
                seen.add(w)
                queue.append(w)
    if len(seen) != core.num_vertices:
        raise ValueError("core automaton must be connected")
    return True


# ---------------------------------------------------------------------------
# JSON wire format: positive-letter edges only; involution is reconstructed
# ---------------------------------------------------------------------------

def core_to_json(core):
    payload = {
        "r": core.r,
        "base": core.base,
        "edges": core.positive_edges(),
    }
    return json.dumps(payload, sort_keys=True)


def core_from_json(text):
    payload = json.loads(text)
    r = payload["r"]
    base = payload["base"]
    delta = {}
    max_v = base
    for src, a, dst in payload["edges"]:
        if a <= 0:
            raise ValueError("serialized edges must carry positive letters")
        if (src, a) in delta or (dst, -a) in delta:
            raise ValueError("duplicate edge label at a vertex")
        delta[(src, a)] = dst
        delta[(dst, -a)] = src
        max_v = max(max_v, src, dst)
    core = CoreAutomaton(r=r, base=base, delta=delta, num_vertices=max_v + 1)
    validate_core(core)
    return core


def subgroup_elements(core, max_length):
    """All reduced words of length <= max_length lying in the subgroup."""
    out = []

    def walk(v, word):
        if len(word) > max_length:
            return
        if v == core.base and word:
            out.append(word)
        if len(word) == max_length:
            return
        for a in letters_in_order(core.r):
            if word and a == -word[-1]:
                continue
            w = core.delta.get((v, a))
            if w is not None:
                walk(w, word + (a,))
    walk(core.base, ())
    return sorted(set(out), key=shortlex_key)
