"""Growth analytics for the action of a free group on the cosets of a subgroup.

The coset graph of a core automaton is the core plus infinite regular trees
hanging at every deficient star slot.  Ball sizes admit an exact closed form
driven by the deficit; an explicit lazy BFS over the same graph provides an
independent route used for cross-checking.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

from .stallings import deficit, distances, index
from .words import letters_in_order


@dataclass(frozen=True)
class GrowthSeries:
    """Exact ball sizes g(0..N) with the alphabet metadata needed to judge them.

    kind is "monoid" (base r: free monoid acts, associative algebra modules)
    or "group" (base 2r-1: free group acts, group algebra modules).  Ball
    values are cardinalities for acts and dimensions for modules.
    """
    kind: str
    r: int
    values: tuple

    def __post_init__(self):
        if self.kind not in ("monoid", "group"):
            raise ValueError(f"unknown series kind {self.kind!r}")

    @property
    def base(self):
        return self.r if self.kind == "monoid" else 2 * self.r - 1

    def g(self, n):
        return self.values[n]

    def spheres(self):
        prev = 0
        out = []
        for v in self.values:
            out.append(v - prev)
            prev = v
        return out

    def alpha(self, n):
        return Fraction(self.values[n], self.base ** n)

    def alphas(self):
        return [self.alpha(n) for n in range(len(self.values))]

    def to_json(self):
        return json.dumps({"base": self.base, "kind": self.kind, "r": self.r,
                           "g": [str(v) for v in self.values]}, sort_keys=True)

    def to_csv(self):
        lines = ["n,g,d,alpha_num,alpha_den"]
        spheres = self.spheres()
        for n, v in enumerate(self.values):
            a = self.alpha(n)
            lines.append(f"{n},{v},{spheres[n]},{a.numerator},{a.denominator}")
        return "\n".join(lines) + "\n"


def series_from_json(text):
    payload = json.loads(text)
    values = tuple(int(v) for v in payload["g"])
    kind = payload.get("kind")
    r = payload.get("r")
    if kind is None or r is None:
        raise ValueError("series JSON needs kind and r fields")
    series = GrowthSeries(kind=kind, r=r, values=values)
    if series.base != payload["base"]:
        raise ValueError("declared base disagrees with kind and rank")
    return series


@dataclass(frozen=True)
class ValidationReport:
    ok: bool
    violations: tuple

    def __bool__(self):
        return self.ok


def validate_series(series):
    """Check the sphere inequalities and, for group series, the backward
    ball propagation.

    Monoid/associative case: d(n) <= r d(n-1).  Group case: d(1) <= 2r d(0),
    d(n+1) <= (2r-1) d(n), and for every n the bound g(m) per the backward
    propagation with c = g(n)/(2r-1)^n at every 0 < m < n.  All checks exact.
    """
    violations = []
    g = series.values
    r = series.r
    d = series.spheres()
    for n in range(1, len(g)):
        if g[n] < g[n - 1]:
            violations.append(f"g decreases at n={n}")
    if series.kind == "monoid":
        for n in range(1, len(g)):
            if d[n] > r * d[n - 1]:
                violations.append(
                    f"sphere growth violated at n={n}: d={d[n]} > {r}*{d[n-1]}")
    else:
        if len(g) > 1 and d[1] > 2 * r * d[0]:
            violations.append(f"sphere growth violated at n=1: d={d[1]}")
        for n in range(1, len(g) - 1):
            if d[n + 1] > (2 * r - 1) * d[n]:
                violations.append(
                    f"sphere growth violated at n={n+1}: d={d[n+1]} > (2r-1)*{d[n]}")
        base = 2 * r - 1
        factor = Fraction(2 * r - 2, 2 * r - 1)
        for n in range(1, len(g)):
            c = Fraction(g[n], base ** n)
            for m in range(1, n):
                if g[m] < factor * c * base ** m:
                    violations.append(
                        f"backward ball propagation violated at n={n}, m={m}")
    return ValidationReport(ok=not violations, violations=tuple(violations))


# ---------------------------------------------------------------------------
# lazy coset graph: core states plus forest addresses
# ---------------------------------------------------------------------------

class LazyCosetGraph:
    """The full coset graph, materialized on demand.

    States are (vertex, tail): `tail` is the reduced path into the hanging
    tree rooted at the core vertex, empty for core states.  The letter action
    is total and deterministic; queries never mutate shared state.
    """

    def __init__(self, core):
        self.core = core

    def base_state(self):
        return (self.core.base, ())

    def is_core_state(self, state):
        return not state[1]

    def step(self, state, a):
        v, tail = state
        if tail:
            if a == -tail[-1]:
                return (v, tail[:-1])
            return (v, tail + (a,))
        w = self.core.delta.get((v, a))
        if w is not None:
            return (w, ())
        return (v, (a,))

    def trace(self, word, start=None):
        state = self.base_state() if start is None else start
        for a in word:
            state = self.step(state, a)
        return state

    def ball_sizes(self, n_max, budget=5_000_000):
        """Exact ball sizes by explicit BFS; memory grows like (2r-1)^n."""
        letters = letters_in_order(self.core.r)
        seen = {self.base_state()}
        frontier = [self.base_state()]
        sizes = [1]
        for _ in range(n_max):
            new = []
            for s in frontier:
                for a in letters:
                    t = self.step(s, a)
                    if t not in seen:
                        seen.add(t)
                        new.append(t)
            frontier = new
            sizes.append(len(seen))
            if len(seen) > budget:
                raise ValueError("explicit ball enumeration budget exceeded")
        return sizes


def diameter(core):
    dist = distances(core)
    return max(dist) if dist else 0


def growth_series(core, n_max, method="closed"):
    """Ball sizes of the coset action, exact.

    method="closed" uses the deficit-driven closed form (no memory limit);
    method="bfs" walks the lazy coset graph explicitly.  The two agree
    everywhere, which the test suite exercises.
    """
    r = core.r
    if method == "bfs":
        values = tuple(LazyCosetGraph(core).ball_sizes(n_max))
    elif method == "closed":
        dist = distances(core)
        defs = deficit(core).per_vertex
        base = 2 * r - 1
        values = []
        for n in range(n_max + 1):
            total = sum(1 for d in dist if d <= n)
            for v in range(core.num_vertices):
                if dist[v] < n and defs[v]:
                    # def(v) tree roots, each a full (2r-1)-ary tree
                    depth = n - dist[v]
                    total += defs[v] * ((base ** depth - 1) // (base - 1)) if r > 1 \
                        else defs[v] * depth
            values.append(total)
        values = tuple(values)
    else:
        raise ValueError(f"unknown method {method!r}")
    series = GrowthSeries(kind="group", r=r, values=values)
    report = validate_series(series)
    if not report.ok:
        raise AssertionError(f"emitted series failed validation: {report.violations}")
    return series


@dataclass(frozen=True)
class LeadingTermDecomposition:
    coefficient: Fraction      # def(C)/(2r-2)
    remainder: tuple           # f(n) = g(n) - coefficient (2r-1)^n, exact
    bound: Fraction            # max |f(n)| over all computed n
    settle_index: int          # f is constant from here on

    @property
    def settled_value(self):
        return self.remainder[self.settle_index]


def leading_term_decompose(core, series):
    """Split g(n) as def(C)/(2r-2) * (2r-1)^n + f(n) with f eventually constant.

    The remainder settles at max |v| + 1; constancy beyond that point is
    asserted, which pins the closed form exactly.
    """
    r = core.r
    if r < 2:
        raise ValueError("growth decomposition needs rank >= 2")
    d = deficit(core)
    coeff = d.total / (2 * r - 2)
    base = 2 * r - 1
    f = tuple(Fraction(series.g(n)) - coeff * base ** n
              for n in range(len(series.values)))
    settle = (max(d.distance) if d.distance else 0) + 1
    if len(f) > settle:
        for n in range(settle, len(f)):
            if f[n] != f[settle]:
                raise AssertionError("remainder failed to settle to a constant")
    bound = max((abs(x) for x in f), default=Fraction(0))
    return LeadingTermDecomposition(coefficient=coeff, remainder=f, bound=bound,
                               settle_index=min(settle, len(f) - 1))


@dataclass(frozen=True)
class GrowthVerdict:
    maximal: bool
    certificate: Fraction      # with g(n) >= certificate * (2r-1)^n when maximal
    alpha_tail: tuple


def classify(core, n_max=12):
    """Maximality of the coset-action growth, with a verified certificate.

    The action has maximal growth iff def(C) > 0; in that case the constant
    c = def(C)/(2r-1) satisfies g(n) >= c (2r-1)^n for n >= 1, verified
    exactly at every computed positive index.
    """
    r = core.r
    d = deficit(core).total
    series = growth_series(core, n_max)
    maximal = d > 0
    cert = d / (2 * r - 1) if maximal else Fraction(0)
    if maximal:
        base = 2 * r - 1
        for n in range(1, n_max + 1):
            if Fraction(series.g(n)) < cert * base ** n:
                raise AssertionError(f"certificate fails at n={n}")
    tail = tuple(series.alpha(n) for n in range(max(0, n_max - 4), n_max + 1))
    return GrowthVerdict(maximal=maximal, certificate=cert, alpha_tail=tail)


# ---------------------------------------------------------------------------
# boundary measure upper bounds (cylinder sums over the geodesic tree)
# ---------------------------------------------------------------------------

def boundary_measure_bounds(core, n_max):
    """Upper bounds u(n) for the measure of the geodesic-tree ray set.

    u(n) sums the cylinder measures (2r-1)^(1-n)/(2r) over the level-n tree
    vertices that extend to level n_max; u(0) is 1 when the root extends and
    0 otherwise.  The sequence is non-increasing, and its positivity at
    n_max is equivalent to maximal growth.
    """
    r = core.r
    base = 2 * r - 1
    dist = distances(core)
    defs = deficit(core).per_vertex

    # tree children of core vertices within the BFS spanning tree
    from .stallings import spanning_tree
    parent, tree_edges = spanning_tree(core)
    children = [[] for _ in range(core.num_vertices)]
    for v in range(core.num_vertices):
        if parent[v] is not None:
            children[parent[v][0]].append(v)

    # a core vertex extends to arbitrarily deep levels iff its tree subtree
    # contains a deficient vertex (the hanging trees are infinite)
    extends = [False] * core.num_vertices
    for v in sorted(range(core.num_vertices), key=lambda x: -dist[x]):
        extends[v] = defs[v] > 0 or any(extends[c] for c in children[v])

    out = []
    for n in range(n_max + 1):
        if n == 0:
            out.append(Fraction(1) if extends[core.base] else Fraction(0))
            continue
        # forest vertices at level n always extend; core tree vertices as marked
        t_n = sum(defs[v] * base ** (n - dist[v] - 1)
                  for v in range(core.num_vertices) if dist[v] < n)
        t_n += sum(1 for v in range(core.num_vertices)
                   if dist[v] == n and extends[v])
        out.append(Fraction(t_n * base, 2 * r * base ** n))
    for i in range(1, len(out)):
        if out[i] > out[i - 1]:
            raise AssertionError("measure bounds must be non-increasing")
    return out


def faithfulness_scan(core, depth, budget=2_000_000):
    """Exhaustively decide whether all reduced words of length <= depth act
    pairwise differently on the coset ball of radius depth + diameter."""
    r = core.r
    lazy = LazyCosetGraph(core)
    radius = depth + diameter(core)
    letters = letters_in_order(r)

    states = [lazy.base_state()]
    seen = {lazy.base_state()}
    frontier = list(states)
    for _ in range(radius):
        new = []
        for s in frontier:
            for a in letters:
                t = lazy.step(s, a)
                if t not in seen:
                    seen.add(t)
                    new.append(t)
        states.extend(new)
        frontier = new

    words = [()]
    frontier_words = [()]
    for _ in range(depth):
        new = []
        for w in frontier_words:
            for a in letters:
                if w and a == -w[-1]:
                    continue
                new.append(w + (a,))
        words.extend(new)
        frontier_words = new

    if len(words) * len(states) > budget:
        raise ValueError("faithfulness scan budget exceeded")
    signatures = {}
    for w in words:
        sig = tuple(lazy.trace(w, start=s) for s in states)
        if sig in signatures:
            return False
        signatures[sig] = w
    return True
