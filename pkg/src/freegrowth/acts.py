"""Acts over free monoids: prescribed growth and the k-transitive act.

States of the transitive act are positive words with no forbidden prefix; the
forbidden words are u(i,j) = v(i,j) * w_i where the markers w_i are drawn from
the suffix/prefix-rigid family x^2 (yx)^t y^2.  Marker words grow linearly
with the tuple index, so only a short initial segment of the forbidden set is
relevant for navigating a bounded ball, while transitivity witnesses at large
indices are settled through the rigid marker shape.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from functools import lru_cache

from .growth import GrowthSeries, validate_series
from .words import shortlex_key


class BudgetExceeded(Exception):
    """A query needed information beyond the materialized budget."""


def check_property_dagger(words):
    """Suffix/prefix rigidity: a suffix of one word is a prefix of another
    only when the two words are equal (and the affix is the whole word)."""
    ws = [tuple(w) for w in words]
    for w in ws:
        for v in ws:
            for k in range(1, len(w) + 1):
                suffix = w[-k:]
                if len(suffix) <= len(v) and tuple(v[:k]) == suffix:
                    if w != v or k != len(w):
                        return False
    return True


def marker_word(t):
    """The marker x^2 (yx)^t y^2 over letters x=1, y=2."""
    return (1, 1) + (2, 1) * t + (2, 2)


@lru_cache(maxsize=None)
def marker_is_clean(t, literal_limit=2048):
    """The only (y,y) letter pair inside marker(t) is the terminal one, and
    no shorter marker is a suffix of marker(t).

    Scanned literally (one linear pass) for t up to the limit; beyond it the
    rigid shape x x (y x)^t y y settles both claims.  A shorter marker would
    have to start at an even offset >= 2, where marker(t) carries the letter
    y while every marker starts with x, so checking the even positions covers
    the suffix claim.
    """
    if t <= literal_limit:
        w = marker_word(t)
        pairs = [(p, p + 1) for p in range(len(w) - 1)
                 if w[p] == 2 and w[p + 1] == 2]
        if pairs != [(len(w) - 2, len(w) - 1)]:
            return False
        if any(w[p] != 2 for p in range(2, len(w) - 1, 2)):
            return False
    return True


# ---------------------------------------------------------------------------
# finite acts with explicit transition tables
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Act:
    """A right act over the rank-r free monoid with a total transition table."""
    r: int
    num_states: int
    generators: tuple                # generating subset, as state indices
    table: tuple                     # table[s][x-1] = target state

    def step(self, s, x):
        return self.table[s][x - 1]

    def apply(self, s, word):
        for x in word:
            s = self.table[s][x - 1]
        return s


def build_prescribed(d, r):
    """An act whose ball sizes around the base set equal the prescribed sums.

    d is the sphere-size sequence (d[0] = number of generators); it must
    satisfy d[n] <= r*d[n-1].  Spheres are materialized level by level: the
    first p states of a sphere get r fresh children, the next state gets q
    fresh children and self-loops elsewhere, all later states self-loop.
    """
    d = list(d)
    if not d or any(x <= 0 for x in d):
        raise ValueError("sphere sizes must be positive")
    for n in range(1, len(d)):
        if d[n] > r * d[n - 1]:
            raise ValueError(
                f"inadmissible sphere sizes at index {n}: {d[n]} > {r}*{d[n-1]}")
    table = []
    generators = tuple(range(d[0]))
    for _ in range(d[0]):
        table.append([None] * r)
    sphere = list(generators)
    for n in range(1, len(d)):
        p, q = divmod(d[n], r)
        new_sphere = []
        for i, s in enumerate(sphere):
            for x in range(r):
                if i < p or (i == p and x < q):
                    t = len(table)
                    table.append([None] * r)
                    new_sphere.append(t)
                else:
                    t = s
                table[s][x] = t
        sphere = new_sphere
    for s in sphere:
        for x in range(r):
            table[s][x] = s
    return Act(r=r, num_states=len(table),
               generators=generators, table=tuple(tuple(row) for row in table))


def act_growth(act, n_max):
    """Exact ball sizes around the generating set, as a monoid growth series."""
    seen = set(act.generators)
    frontier = list(act.generators)
    values = [len(seen)]
    for _ in range(n_max):
        new = []
        for s in frontier:
            for x in range(1, act.r + 1):
                t = act.step(s, x)
                if t not in seen:
                    seen.add(t)
                    new.append(t)
        frontier = new
        values.append(len(seen))
    series = GrowthSeries(kind="monoid", r=act.r, values=tuple(values))
    report = validate_series(series)
    if not report.ok:
        raise AssertionError(f"act series failed validation: {report.violations}")
    return series


# ---------------------------------------------------------------------------
# the k-transitive act of maximal growth
# ---------------------------------------------------------------------------

def enumerate_tuples(r):
    """All tuples (v_1..v_k; v'_1..v'_k) with the v_j pairwise distinct and
    nonempty, bucketed by (max entry length, k) and ordered inside a bucket
    by total length then componentwise ShortLex.

    Every tuple appears exactly once, so any finite prefix of the enumeration
    extends to the full transitivity scheme.  Bucketing small tuples first is
    what makes desk-scale witness checking possible, because marker-word
    length grows with the tuple index.
    """
    def words_up_to(m):
        out = [()]
        frontier = [()]
        for _ in range(m):
            frontier = [w + (x,) for w in frontier for x in range(1, r + 1)]
            out.extend(frontier)
        return out

    max_len = 0
    while True:
        max_len += 1
        pool = words_up_to(max_len)
        nonempty = [w for w in pool if w]
        for k in range(1, len(nonempty) + 1):
            bucket = []
            for sources in itertools.permutations(nonempty, k):
                for targets in itertools.product(pool, repeat=k):
                    m = max(max(len(w) for w in sources),
                            max((len(w) for w in targets), default=0))
                    if m != max_len:
                        continue
                    total = sum(map(len, sources)) + sum(map(len, targets))
                    bucket.append((total,
                                   tuple(map(shortlex_key, sources + targets)),
                                   (sources, targets)))
            bucket.sort(key=lambda item: (item[0], item[1]))
            for _total, _key, entry in bucket:
                yield entry


# all tuples with k <= 3 and entries of length <= 2 sit below this index (r=2)
SMALL_TUPLE_BUDGET = 42672


@dataclass
class TransitiveActPlan:
    """Materialized scheme: tuples, marker exponents, and the short forbidden
    words needed for exact navigation."""
    r: int
    budget: int
    sources: list                    # sources[i], 0-based tuple index
    targets: list
    t_exponents: list                # marker_word(t_exponents[i]) is w_{i+1}
    forbidden: dict                  # u(i,j) -> (i, j), short words only
    forbidden_max_len: int

    def k(self, i):
        return len(self.sources[i])

    def marker(self, i):
        return marker_word(self.t_exponents[i])


def build_k_transitive(budget, depth, r=2):
    """The transitive-act scheme to the given tuple budget and ball depth.

    Only tuples whose entries are themselves states (no forbidden prefix) are
    admitted.  Forbidden words from tuple index i have length >= 2i+5, so
    admissibility of an entry is decided by strictly earlier tuples, and the
    forbidden set restricted to any finite length is finite and fully known.
    """
    if r < 2:
        raise ValueError("the construction needs rank >= 2")
    if r == 2 and budget > SMALL_TUPLE_BUDGET:
        raise BudgetExceeded(
            f"tuple budget capped at {SMALL_TUPLE_BUDGET} at desk scale")
    sources, targets, t_exponents = [], [], []
    forbidden_max_len = depth + 2
    forbidden = {}

    def has_forbidden_prefix(w):
        return any(w[:ln] in forbidden for ln in range(1, len(w) + 1))

    gen = enumerate_tuples(r)
    t_prev = -1
    while len(sources) < budget:
        src, tgt = next(gen)
        if any(has_forbidden_prefix(w) for w in src + tgt):
            continue
        i = len(sources)              # 0-based; the scheme index is i+1
        k = len(src)
        t = max(t_prev + 1, -((-(i + 1 + k - 4)) // 2), 0)
        t_prev = t
        sources.append(src)
        targets.append(tgt)
        t_exponents.append(t)
        if 2 * t + 4 + min(len(v) for v in src) <= forbidden_max_len:
            w = marker_word(t)
            for j, v in enumerate(src):
                u = v + w
                if len(u) <= forbidden_max_len:
                    if u in forbidden:
                        raise AssertionError("forbidden words collided")
                    forbidden[u] = (i, j)
    plan = TransitiveActPlan(r=r, budget=budget, sources=sources,
                             targets=targets, t_exponents=t_exponents,
                             forbidden=forbidden,
                             forbidden_max_len=forbidden_max_len)
    return KTransitiveAct(plan), plan


class KTransitiveAct:
    """Lazy act on words without forbidden prefixes.

    apply() performs the two-case action rule with exact forbidden-word
    detection; queries that would need unmaterialized forbidden words raise
    BudgetExceeded rather than answer wrongly.
    """

    def __init__(self, plan):
        self.plan = plan
        self.r = plan.r

    def _check_len(self, ln):
        if ln > self.plan.forbidden_max_len:
            raise BudgetExceeded(
                f"word of length {ln} beyond materialized forbidden set")

    def is_state(self, w):
        self._check_len(len(w))
        return not any(w[:ln] in self.plan.forbidden
                       for ln in range(1, len(w) + 1))

    def step(self, s, x):
        w = s + (x,)
        self._check_len(len(w))
        hit = self.plan.forbidden.get(w)
        if hit is None:
            return w
        i, j = hit
        return self.plan.targets[i][j]

    def apply(self, s, word):
        for x in word:
            s = self.step(s, x)
        return s

    def ball_series(self, n_max):
        """Ball sizes around the empty word, by explicit BFS."""
        seen = {()}
        frontier = [()]
        values = [1]
        for _ in range(n_max):
            new = []
            for s in frontier:
                for x in range(1, self.r + 1):
                    t = self.step(s, x)
                    if t not in seen:
                        seen.add(t)
                        new.append(t)
            frontier = new
            values.append(len(seen))
        series = GrowthSeries(kind="monoid", r=self.r, values=tuple(values))
        report = validate_series(series)
        if not report.ok:
            raise AssertionError(f"series failed validation: {report.violations}")
        return series

    def transitivity_witness(self, i):
        """Verify v(i,j) * w_i = v'(i,j) under the action, for all j.

        The walk along the marker can only fire the jump rule at a step where
        the read word ends with (y, y), because every forbidden word ends
        with a marker.  Inside marker(t) that pair occurs only at the end
        (marker_is_clean), and the junction pair (last letter of v, x) never
        qualifies, so the jump fires exactly at the last step.  There the full
        word v + marker(t) has a unique marker suffix, namely marker(t)
        itself, hence the unique hit is u(i,j) and the state jumps to v'(i,j).
        The test suite cross-checks this reasoning against literal apply() on
        every small index.
        """
        plan = self.plan
        src = plan.sources[i]
        tgt = plan.targets[i]
        t = plan.t_exponents[i]
        w_len = 2 * t + 4
        if w_len < (i + 1) + len(src):
            raise AssertionError("marker word too short for its index")
        if not marker_is_clean(t):
            raise AssertionError(f"marker {t} violates the rigidity check")
        for j, v in enumerate(src):
            if len(v) + w_len <= plan.forbidden_max_len:
                if plan.forbidden.get(v + marker_word(t)) != (i, j):
                    raise AssertionError("forbidden table disagrees")
        return WitnessReport(index=i, marker_exponent=t, marker_length=w_len,
                             pairs=tuple(zip(src, tgt)))


@dataclass(frozen=True)
class WitnessReport:
    index: int
    marker_exponent: int
    marker_length: int
    pairs: tuple

    @property
    def marker(self):
        return marker_word(self.marker_exponent)


# ---------------------------------------------------------------------------
# wire formats
# ---------------------------------------------------------------------------

def act_to_json(act):
    """Materialized act as a JSON transition table."""
    payload = {"r": act.r, "generators": list(act.generators),
               "table": [list(row) for row in act.table]}
    return json.dumps(payload, sort_keys=True)


def act_from_json(text):
    payload = json.loads(text)
    table = tuple(tuple(row) for row in payload["table"])
    n = len(table)
    for row in table:
        if len(row) != payload["r"] or any(not 0 <= t < n for t in row):
            raise ValueError("transition table must be total within range")
    return Act(r=payload["r"], num_states=n,
               generators=tuple(payload["generators"]), table=table)


def plan_to_json(plan):
    """Transitivity scheme: budget, tuples, and marker exponents."""
    payload = {
        "r": plan.r,
        "budget": plan.budget,
        "tuples": [[list(map(list, src)), list(map(list, tgt))]
                   for src, tgt in zip(plan.sources, plan.targets)],
        "marker_exponents": list(plan.t_exponents),
    }
    return json.dumps(payload, sort_keys=True)
