"""Graph surgeries on core automata and the basis-change experiment.

All surgeries return fresh cores; the originals are never mutated.  Deficit
drops are compared against their bounds exactly, using squared inequalities to
avoid irrational exponents: a drop bound (2r-1)^(2-l/2) is certified as
drop^2 <= (2r-1)^(4-l).
"""

from __future__ import annotations

import itertools
import json
import random
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .growth import GrowthSeries, LazyCosetGraph, diameter, validate_series
from .stallings import (CoreAutomaton, deficit, embed_check, extend_core,
                        membership, rank, validate_core)
from .words import (check_letters, cyclic_decompose, free_reduce, inverse,
                    is_reduced, multiply, sample_reduced)


class SurgeryError(ValueError):
    """A surgery precondition failed."""


def _drop_bound_ok(drop, r, path_len):
    """Exact check of drop <= (2r-1)^(2 - path_len/2), squared form."""
    if drop < 0:
        return False
    e = 4 - path_len
    rhs = Fraction((2 * r - 1) ** e) if e >= 0 else Fraction(1, (2 * r - 1) ** (-e))
    return drop * drop <= rhs


# ---------------------------------------------------------------------------
# elementary attachments
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ElementarySpec:
    """An elementary graph to attach: a cycle at one vertex, an arc between
    two vertices, or a cycle with a leg.

    label is the distinguished path's word; for a cycle-with-leg it is
    leg * cycle * leg^-1 and leg gives the leg length.
    """
    kind: str                 # "cycle" | "arc" | "cycle_with_leg"
    label: tuple
    attach: tuple
    leg: int = 0


def attach_elementary(core, spec):
    """Attach an elementary graph, returning (new core, deficit drop).

    Stars must stay regular at the attachment points, otherwise the
    attachment is rejected.  The drop obeys the elementary bound
    0 <= drop <= (2r-1)^(2-l/2) with l the distinguished path length,
    asserted exactly.
    """
    label = tuple(spec.label)
    check_letters(label, core.r)
    if not label:
        raise SurgeryError("elementary label must be nonempty")
    if not is_reduced(label):
        raise SurgeryError("elementary label must be reduced")
    for v in spec.attach:
        if not (0 <= v < core.num_vertices):
            raise SurgeryError(f"attach vertex {v} out of range")

    delta = dict(core.delta)
    n = core.num_vertices

    def free_slot(v, a, what):
        if (v, a) in delta:
            raise SurgeryError(f"label collision: {what} slot {a} taken at vertex {v}")

    def draw_path(word, start, end):
        nonlocal n
        prev = start
        for i, a in enumerate(word):
            nxt = end if i == len(word) - 1 else n
            if i != len(word) - 1:
                n += 1
            if (prev, a) in delta or (nxt, -a) in delta:
                raise SurgeryError("label collision while drawing the path")
            delta[(prev, a)] = nxt
            delta[(nxt, -a)] = prev
            prev = nxt

    if spec.kind == "cycle":
        (v,) = spec.attach
        if label[0] == -label[-1]:
            raise SurgeryError("cycle label must be cyclically reduced")
        free_slot(v, label[0], "outgoing")
        free_slot(v, -label[-1], "incoming")
        draw_path(label, v, v)
    elif spec.kind == "arc":
        v, w = spec.attach
        if v == w:
            raise SurgeryError("arc endpoints must differ (use a cycle)")
        free_slot(v, label[0], "outgoing")
        free_slot(w, -label[-1], "incoming")
        draw_path(label, v, w)
    elif spec.kind == "cycle_with_leg":
        (v,) = spec.attach
        k = spec.leg
        if not (1 <= k and 2 * k < len(label)):
            raise SurgeryError("leg length must satisfy 1 <= leg and 2*leg < |label|")
        leg, cyc, back = label[:k], label[k:len(label) - k], label[len(label) - k:]
        if back != inverse(leg):
            raise SurgeryError("label must have the form leg * cycle * leg^-1")
        if cyc[0] == -cyc[-1]:
            raise SurgeryError("cycle part must be cyclically reduced")
        free_slot(v, leg[0], "outgoing")
        # draw the leg to a fresh junction vertex, then the cycle there
        junction = n
        n += 1
        prev = v
        for i, a in enumerate(leg):
            nxt = junction if i == len(leg) - 1 else n
            if i != len(leg) - 1:
                n += 1
            delta[(prev, a)] = nxt
            delta[(nxt, -a)] = prev
            prev = nxt
        draw_path(cyc, junction, junction)
    else:
        raise SurgeryError(f"unknown elementary kind {spec.kind!r}")

    from .stallings import _canonicalize
    core2 = _canonicalize(core.r, core.base, delta)
    validate_core(core2)
    drop = deficit(core).total - deficit(core2).total
    if not _drop_bound_ok(drop, core.r, len(label)):
        raise AssertionError("elementary deficit bound violated")
    if embed_check(core, core2) is None:
        raise AssertionError("old core failed to embed after attachment")
    return core2, drop


# ---------------------------------------------------------------------------
# adjoining a proper power
# ---------------------------------------------------------------------------

def _forest_depth(state):
    return len(state[1])


def _min_attachment_length(r, epsilon, scale=1):
    """Least l with scale * (2r-1)^(2-l/2) < epsilon, via squared comparison."""
    eps2 = Fraction(epsilon) ** 2
    s2 = Fraction(scale) ** 2
    l = 0
    while True:
        e = 4 - l
        rhs = Fraction((2 * r - 1) ** e) if e >= 0 else Fraction(1, (2 * r - 1) ** (-e))
        if s2 * rhs < eps2:
            return l
        l += 1


def intersects_cyclic(core, g, probe_bound=None):
    """Exactly decide whether <g> meets the subgroup nontrivially.

    If g^n lies in the subgroup then the whole orbit loop reads inside the
    core, so the orbit period is at most the vertex count; probing
    |i| <= 2V + 10 is therefore conclusive.
    """
    u, w = cyclic_decompose(free_reduce(g))
    bound = probe_bound or (2 * core.num_vertices + 10)
    lazy = LazyCosetGraph(core)
    for direction in (w, inverse(w)):
        seen = {lazy.trace(u)}
        state = lazy.trace(u)
        for _i in range(1, bound + 1):
            state = lazy.trace(direction, start=state)
            if state in seen:
                return True
            seen.add(state)
    return False


def adjoin_power(core, g, epsilon):
    """Adjoin a power of g as a new free factor with a small deficit drop.

    Returns (n, new core) with g^n in the new subgroup, the old core embedded
    as a free factor, and 0 <= deficit drop <= epsilon, all verified exactly.
    """
    g = free_reduce(g)
    if not g:
        raise SurgeryError("cannot adjoin powers of the identity")
    epsilon = Fraction(epsilon)
    d0 = deficit(core).total
    if not (0 < epsilon < d0):
        raise SurgeryError("need 0 < epsilon < deficit(core)")
    if intersects_cyclic(core, g):
        raise SurgeryError("the cyclic group of g meets the subgroup; no free power")
    u, w = cyclic_decompose(g)
    l = _min_attachment_length(core.r, epsilon)
    lazy = LazyCosetGraph(core)

    def first_deep(direction):
        state = lazy.trace(u)
        i = 0
        while True:
            i += 1
            state = lazy.trace(direction, start=state)
            if _forest_depth(state) > l:
                return i
            if i > 4 * core.num_vertices + 4 * l + len(g) * (l + 2) + 64:
                raise AssertionError("escape into the forest took too long")

    i = first_deep(w)
    j = -first_deep(inverse(w))
    n = i - j
    core2 = extend_core(core, [multiply(u, *([w] * n), inverse(u))])
    validate_core(core2)
    if not membership(core2, multiply(*([g] * n))):
        raise AssertionError("adjoined power is not in the new subgroup")
    if embed_check(core, core2) is None:
        raise AssertionError("old core failed to embed")
    d1 = deficit(core2).total
    drop = d0 - d1
    if not (0 <= drop <= epsilon):
        raise AssertionError(f"deficit drop {drop} escapes [0, {epsilon}]")
    if d1 <= 0:
        raise AssertionError("new subgroup must keep infinite index")
    if rank(core2) != rank(core) + 1:
        raise AssertionError("rank must grow by exactly one")
    return n, core2


# ---------------------------------------------------------------------------
# linking tuples of cosets
# ---------------------------------------------------------------------------

def _final_forest_run(states):
    """The maximal final run of forest states moving strictly away from the
    core, in walk order."""
    run = []
    prev = None
    for s in reversed(states):
        d = _forest_depth(s)
        if d == 0 or (prev is not None and d >= prev):
            break
        run.append(s)
        prev = d
    run.reverse()
    return run


def _divergent_tails_long(runs, min_len):
    """Whether every pair of forest runs diverges early enough.

    Runs through the same tree slot share a common prefix; the pairwise
    divergent suffixes past any shared forest prefix must each exceed min_len.
    """
    for i in range(len(runs)):
        if len(runs[i]) <= min_len:
            return False
    for i in range(len(runs)):
        for j in range(i + 1, len(runs)):
            a, b = runs[i], runs[j]
            common = 0
            for x, y in zip(a, b):
                if x != y:
                    break
                common += 1
            if len(a) - common <= min_len or len(b) - common <= min_len:
                return False
    return True


def link_tuples(core, gs, gps, epsilon, seed=0, max_doublings=7,
                samples_per_length=64):
    """Make the cosets of gs and gps differ by one right multiplier b.

    Samples reduced words w, w' until the traced paths end in long pairwise
    disjoint forest tails with distinct last letters, then glues the endpoint
    pairs; returns (new core, b) with H1 g_i b = H1 g'_i for every i,
    the old core embedded, and deficit drop within epsilon, verified exactly.
    """
    gs = [free_reduce(g) for g in gs]
    gps = [free_reduce(g) for g in gps]
    if len(gs) != len(gps) or not gs:
        raise SurgeryError("need equally many source and target cosets")
    k = len(gs)
    lazy = LazyCosetGraph(core)
    src_states = [lazy.trace(g) for g in gs]
    tgt_states = [lazy.trace(g) for g in gps]
    if len(set(src_states)) != k:
        raise SurgeryError("source cosets must be pairwise distinct")
    if len(set(tgt_states)) != k:
        raise SurgeryError("target cosets must be pairwise distinct")
    if src_states == tgt_states:
        return core, ()
    epsilon = Fraction(epsilon)
    d0 = deficit(core).total
    if not (0 < epsilon < d0):
        raise SurgeryError("need 0 < epsilon < deficit(core)")
    l = _min_attachment_length(core.r, epsilon, scale=k)
    rng = random.Random(seed)
    m = max(8 * l, 4 * diameter(core), 8)
    attempts = 0
    for _ in range(max_doublings):
        for _ in range(samples_per_length):
            attempts += 1
            w = sample_reduced(m, core.r, rng=rng)
            wp = sample_reduced(m, core.r, rng=rng)
            if w[-1] == wp[-1]:
                continue
            runs = []
            good = True
            for start, word in [(s, w) for s in src_states] + \
                               [(s, wp) for s in tgt_states]:
                states = [start]
                for a in word:
                    states.append(lazy.step(states[-1], a))
                runs.append(_final_forest_run(states))
            if not _divergent_tails_long(runs, m // 4):
                continue
            b_word = multiply(w, inverse(wp))
            new_gens = [multiply(gs[i], w, inverse(wp), inverse(gps[i]))
                        for i in range(k)]
            core2 = extend_core(core, new_gens)
            validate_core(core2)
            d1 = deficit(core2).total
            drop = d0 - d1
            if not (0 <= drop <= epsilon) or d1 <= 0:
                continue
            if embed_check(core, core2) is None:
                continue
            lazy2 = LazyCosetGraph(core2)
            ok = all(lazy2.trace(b_word, start=lazy2.trace(gs[i]))
                     == lazy2.trace(gps[i]) for i in range(k))
            if not ok:
                raise AssertionError("linking relation failed to hold")
            return core2, b_word
        m *= 2
    raise SurgeryError(
        f"sampling budget exhausted after {attempts} attempts (final length {m})")


# ---------------------------------------------------------------------------
# towers
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class TowerStep:
    kind: str                  # "power" | "link"
    payload: tuple
    epsilon: Fraction
    n_or_b: object             # exponent for power steps, word b for link steps
    deficit_before: Fraction
    deficit_after: Fraction
    core: CoreAutomaton


class TowerAborted(RuntimeError):
    def __init__(self, steps, cause):
        super().__init__(f"tower aborted after {len(steps)} steps: {cause}")
        self.steps = steps
        self.cause = cause


def tower(core, plan, epsilons=None, seed=0):
    """Run a sequence of power-adjunction and tuple-linking steps.

    The default epsilon schedule is c/3, c/9, ... with c the initial deficit,
    which keeps every stage's deficit above c/2.  Steps that request a power
    of an element already meeting the subgroup are skipped (the subgroup
    needs no enlargement for them).
    """
    c = deficit(core).total
    if c <= 0:
        raise SurgeryError("tower needs a positive starting deficit")
    steps = []
    current = core
    rng = random.Random(seed)
    for idx, request in enumerate(plan):
        eps = Fraction(epsilons[idx]) if epsilons is not None \
            else c / Fraction(3) ** (idx + 1)
        before = deficit(current).total
        try:
            if request[0] == "power":
                g = free_reduce(request[1])
                if intersects_cyclic(current, g):
                    steps.append(TowerStep(kind="power-skip", payload=(g,),
                                           epsilon=eps, n_or_b=0,
                                           deficit_before=before,
                                           deficit_after=before, core=current))
                    continue
                n, new = adjoin_power(current, g, eps)
                steps.append(TowerStep(kind="power", payload=(g,), epsilon=eps,
                                       n_or_b=n, deficit_before=before,
                                       deficit_after=deficit(new).total,
                                       core=new))
                current = new
            elif request[0] == "link":
                gs, gps = request[1], request[2]
                new, b = link_tuples(current, gs, gps, eps,
                                     seed=rng.randrange(1 << 30))
                steps.append(TowerStep(kind="link",
                                       payload=(tuple(gs), tuple(gps)),
                                       epsilon=eps, n_or_b=b,
                                       deficit_before=before,
                                       deficit_after=deficit(new).total,
                                       core=new))
                current = new
            else:
                raise SurgeryError(f"unknown tower step kind {request[0]!r}")
        except (SurgeryError, AssertionError) as exc:
            raise TowerAborted(steps, exc) from exc
    return steps


def tower_log_json(steps):
    """JSON-lines log, one record per step, rationals as p/q strings."""
    lines = []
    for i, s in enumerate(steps):
        rec = {
            "step": i,
            "kind": s.kind,
            "n_or_b": list(s.n_or_b) if isinstance(s.n_or_b, tuple) else s.n_or_b,
            "deficit_before": f"{s.deficit_before.numerator}/{s.deficit_before.denominator}",
            "deficit_after": f"{s.deficit_after.numerator}/{s.deficit_after.denominator}",
            "epsilon": f"{s.epsilon.numerator}/{s.epsilon.denominator}",
        }
        lines.append(json.dumps(rec, sort_keys=True))
    return "\n".join(lines) + ("\n" if lines else "")


# ---------------------------------------------------------------------------
# the basis-change experiment
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class BasisChangeResult:
    series_a: GrowthSeries          # balls of the completed action, basis a
    series_b: GrowthSeries          # balls of the same action, basis a1, a1a2
    z_counts: tuple                 # |Z(n)| per level
    level_counts: tuple             # tree vertices per level
    num_states: int
    pair_edges: int


def _rank_tables(r):
    """Next-letter tables over letter ranks 0..2r-1 (rank 2i-2 = +i, 2i-1 = -i)."""
    q = 2 * r
    nxt = np.full((q, q - 1), -1, dtype=np.int8)
    t_index = np.full((q, q), -1, dtype=np.int8)
    for last in range(q):
        t = 0
        for cand in range(q):
            if cand == last ^ 1:
                continue
            nxt[last, t] = cand
            t_index[last, cand] = t
            t += 1
    return nxt, t_index


def basis_change_experiment(r, zparams, depth, seed=0):
    """Finite-depth construction of an action whose growth differs between
    the standard basis and the basis a1, a1*a2, a3, ..., ar.

    Builds the frequency-window words to the given depth, pushes them through
    the letter map a2 -> a1 a2, symmetrizes over letter-inversion subsets,
    closes under prefixes, completes the resulting tree to a transitive
    action by pairing deficient vertices level by level in ShortLex order,
    and counts balls in both bases.  The construction is deterministic; the
    seed only drives optional spot checks.
    """
    if r < 2:
        raise ValueError("rank must be >= 2")
    q = 2 * r
    branch = q - 1
    if zparams.l > 2 * depth + 1:
        # no window can constrain any preimage of a ball word (the inverse
        # substitution at most doubles lengths), so the action is free to
        # this depth and both series are the full free ball sizes
        free = [1]
        for n in range(1, depth + 1):
            free.append(free[-1] + q * branch ** (n - 1))
        series = GrowthSeries(kind="group", r=r, values=tuple(free))
        return BasisChangeResult(series_a=series, series_b=series,
                                 z_counts=tuple(q * branch ** (n - 1) if n else 1
                                                for n in range(depth + 1)),
                                 level_counts=tuple(q * branch ** (n - 1) if n else 1
                                                    for n in range(depth + 1)),
                                 num_states=free[-1], pair_edges=0)
    nxt, t_index = _rank_tables(r)
    eps = Fraction(zparams.epsilon)
    l = zparams.l

    def window(target):
        lo = target - eps
        hi = target + eps
        den = np.int64(lo.denominator * hi.denominator)
        return (np.int64(lo.numerator * hi.denominator),
                np.int64(hi.numerator * lo.denominator), den)

    lo1, hi1, den1 = window(Fraction(1, q))
    lo2, hi2, den2 = window(Fraction(1, q * branch))

    # ---- Z levels with letter and 2-gram statistics -----------------------
    z_codes = {0: np.zeros(1, dtype=np.int64)}
    codes = np.arange(q, dtype=np.int64)
    last = np.arange(q, dtype=np.int8)
    counts = np.zeros((q, q), dtype=np.int16)
    counts[np.arange(q), np.arange(q)] = 1
    grams = np.zeros((q, q * branch), dtype=np.int16)
    letters_matrix = {1: last.reshape(-1, 1).copy()}
    z_counts = [1, q]
    z_codes[1] = codes.copy()
    for n in range(2, depth + 1):
        m = len(codes)
        rep = np.repeat(np.arange(m), branch)
        ts = np.tile(np.arange(branch, dtype=np.int8), m)
        new_last = nxt[last[rep], ts]
        new_codes = codes[rep] * branch + ts
        new_counts = counts[rep].copy()
        new_counts[np.arange(len(rep)), new_last] += 1
        gram_idx = last[rep].astype(np.int16) * branch + ts
        new_grams = grams[rep].copy()
        new_grams[np.arange(len(rep)), gram_idx] += 1
        if n >= l:
            nn = np.int64(n)
            ok = np.ones(len(rep), dtype=bool)
            cd = new_counts.astype(np.int64) * den1
            ok &= (cd > nn * lo1).all(axis=1)
            ok &= (cd < nn * hi1).all(axis=1)
            gd = new_grams.astype(np.int64) * den2
            ok &= (gd > nn * lo2).all(axis=1)
            ok &= (gd < nn * hi2).all(axis=1)
        else:
            ok = np.ones(len(rep), dtype=bool)
        codes = new_codes[ok]
        last = new_last[ok]
        counts = new_counts[ok]
        grams = new_grams[ok]
        prev_letters = letters_matrix[n - 1]
        letters_matrix[n] = np.concatenate(
            [prev_letters[rep][ok], last.reshape(-1, 1)], axis=1)
        z_codes[n] = codes
        z_counts.append(len(codes))
        if len(codes) == 0:
            for n2 in range(n + 1, depth + 1):
                z_codes[n2] = codes
                letters_matrix[n2] = np.zeros((0, n2), dtype=np.int8)
                z_counts.append(0)
            break

    # ---- the letter map a2 -> a1 a2 on rank matrices ----------------------
    # ranks: 0=+1, 1=-1, 2=+2, 3=-2
    def phi_letters(mat):
        m, n = mat.shape
        if m == 0:
            return np.zeros((0, 0), dtype=np.int8), np.zeros(0, dtype=np.int32)
        prev = np.concatenate([np.full((m, 1), -1, dtype=np.int8), mat[:, :-1]], axis=1)
        nxt_col = np.concatenate([mat[:, 1:], np.full((m, 1), -1, dtype=np.int8)], axis=1)
        out = np.full((m, 2 * n), -1, dtype=np.int8)
        pos = np.zeros(m, dtype=np.int32)
        for kcol in range(n):
            a = mat[:, kcol]
            p = prev[:, kcol]
            f = nxt_col[:, kcol]
            # emission 1
            e1 = np.full(m, -1, dtype=np.int8)
            e1 = np.where(a == 0, np.where(p == 3, -1, 0), e1)
            e1 = np.where(a == 1, np.where(f == 2, -1, 1), e1)
            e1 = np.where(a == 2, np.where(p == 1, 2, 0), e1)
            e1 = np.where(a == 3, 3, e1)
            # emission 2
            e2 = np.full(m, -1, dtype=np.int8)
            e2 = np.where((a == 2) & (p != 1), 2, e2)
            e2 = np.where((a == 3) & (f != 0), 1, e2)
            for e in (e1, e2):
                mask = e >= 0
                out[np.nonzero(mask)[0], pos[mask]] = e[mask]
                pos[mask] += 1
        return out, pos

    def encode(mat, lens):
        """Codes of (possibly padded) rank rows with given lengths."""
        m = len(lens)
        code = np.zeros(m, dtype=np.int64)
        started = np.zeros(m, dtype=bool)
        lastr = np.zeros(m, dtype=np.int8)
        width = mat.shape[1]
        for kcol in range(width):
            active = kcol < lens
            a = mat[:, kcol]
            first = active & ~started
            code = np.where(first, a.astype(np.int64), code)
            cont = active & started
            if cont.any():
                t = t_index[lastr[cont], a[cont]]
                if (t < 0).any():
                    raise AssertionError("image words must be reduced")
                code[cont] = code[cont] * branch + t
            lastr = np.where(active, a, lastr)
            started |= active
        return code

    # all subsets of generator indices: the flip family must be closed under
    # symmetric difference for the per-level pairing counts to balance
    flip_sets = [frozenset(s) for k in range(r + 1)
                 for s in itertools.combinations(range(1, r + 1), k)]

    u_levels = {n: [] for n in range(1, depth + 1)}
    for n in range(1, depth + 1):
        mat = letters_matrix.get(n)
        if mat is None or len(mat) == 0:
            continue
        out, lens = phi_letters(mat)
        for flips in flip_sets:
            flipped = out.copy()
            for gen in flips:
                sel = (flipped >> 1) == (gen - 1)
                sel &= flipped >= 0
                flipped[sel] ^= 1
            capped = np.minimum(lens, depth)
            codeable = capped > 0
            codes_f = encode(flipped[codeable], capped[codeable])
            levels = capped[codeable]
            for ln in np.unique(levels):
                u_levels[int(ln)].append(codes_f[levels == ln])

    tree_levels = [np.zeros(1, dtype=np.int64)]
    merged = {n: (np.unique(np.concatenate(v)) if v else np.zeros(0, dtype=np.int64))
              for n, v in u_levels.items()}
    for n in range(depth, 1, -1):
        parents = np.unique(merged[n] // branch)
        merged[n - 1] = np.union1d(merged[n - 1], parents)
    top = depth
    while top > 0 and len(merged.get(top, ())) == 0:
        top -= 1
    for n in range(1, top + 1):
        tree_levels.append(merged[n])

    # ---- decode last letters per level ------------------------------------
    def level_last(n, codes_n):
        if n == 0:
            return np.zeros(0, dtype=np.int8)
        if n == 1:
            return codes_n.astype(np.int8)
        firsts = (codes_n // (branch ** (n - 1))).astype(np.int8)
        rest = codes_n % (branch ** (n - 1))
        lastr = firsts
        for kcol in range(n - 1):
            digit = (rest // (branch ** (n - 2 - kcol))) % branch
            lastr = nxt[lastr, digit.astype(np.int8)]
        return lastr

    lasts = [level_last(n, tree_levels[n]) for n in range(len(tree_levels))]

    # ---- transitions: tree edges, then pairing for deficient slots --------
    offsets = np.zeros(len(tree_levels) + 1, dtype=np.int64)
    for n in range(len(tree_levels)):
        offsets[n + 1] = offsets[n] + len(tree_levels[n])
    num_states = int(offsets[-1])
    trans = np.full((q, num_states), -1, dtype=np.int64)
    pair_edges = 0

    for n in range(len(tree_levels)):
        codes_n = tree_levels[n]
        m = len(codes_n)
        if m == 0:
            continue
        glob = offsets[n] + np.arange(m)
        # parent moves
        if n >= 1:
            parent_codes = codes_n // branch if n >= 2 else np.zeros(m, dtype=np.int64)
            ppos = np.searchsorted(tree_levels[n - 1], parent_codes)
            back = lasts[n] ^ 1
            for c in range(q):
                sel = back == c
                trans[c, glob[sel]] = offsets[n - 1] + ppos[sel]
        # child moves
        if n + 1 < len(tree_levels) and len(tree_levels[n + 1]):
            for c in range(q):
                if n == 0:
                    child_codes = np.full(m, c, dtype=np.int64)
                    valid = np.ones(m, dtype=bool)
                else:
                    t = t_index[lasts[n], c]
                    valid = t >= 0
                    child_codes = codes_n * branch + t
                pos = np.searchsorted(tree_levels[n + 1], child_codes)
                pos = np.minimum(pos, len(tree_levels[n + 1]) - 1)
                present = valid & (tree_levels[n + 1][pos] == child_codes)
                trans[c, glob[present]] = offsets[n + 1] + pos[present]
        # pairing of deficient slots, letter pair by letter pair
        for c in range(0, q, 2):
            want_c = np.nonzero(trans[c, glob] < 0)[0]
            want_ci = np.nonzero(trans[c ^ 1, glob] < 0)[0]
            if len(want_c) != len(want_ci):
                raise AssertionError(
                    f"level {n}: unequal deficient counts for letter pair {c}")
            if len(want_c):
                a_idx = glob[want_c]
                b_idx = glob[want_ci]
                trans[c, a_idx] = b_idx
                trans[c ^ 1, b_idx] = a_idx
                pair_edges += len(want_c)

    if (trans < 0).any():
        raise AssertionError("action completion left undefined moves")

    # ---- series in both bases ----------------------------------------------
    level_counts = tuple(len(x) for x in tree_levels)
    values_a = []
    total = 0
    for n in range(depth + 1):
        total += level_counts[n] if n < len(level_counts) else 0
        values_a.append(total)
    series_a = GrowthSeries(kind="group", r=r, values=tuple(values_a))

    # moves in the second basis: b1 = a1, b2 = a1 a2, bi = ai
    def bfs_cumulative(move_list, n_max):
        visited = np.zeros(num_states, dtype=bool)
        visited[0] = True
        frontier = np.array([0], dtype=np.int64)
        out = [1]
        for _ in range(n_max):
            nbrs = [mv(frontier) for mv in move_list]
            nbrs = np.unique(np.concatenate(nbrs)) if nbrs else frontier
            new = nbrs[~visited[nbrs]]
            visited[new] = True
            frontier = new
            out.append(int(visited.sum()))
        return out

    moves_b = [lambda s: trans[0, s], lambda s: trans[1, s],
               lambda s: trans[2, trans[0, s]], lambda s: trans[1, trans[3, s]]]
    for i in range(3, r + 1):
        c = 2 * i - 2
        moves_b.append(lambda s, c=c: trans[c, s])
        moves_b.append(lambda s, c=c: trans[c ^ 1, s])
    values_b = bfs_cumulative(moves_b, depth)
    series_b = GrowthSeries(kind="group", r=r, values=tuple(values_b))

    report_a = validate_series(series_a)
    report_b = validate_series(series_b)
    if not (report_a.ok and report_b.ok):
        raise AssertionError("experiment series failed validation")
    return BasisChangeResult(series_a=series_a, series_b=series_b,
                             z_counts=tuple(z_counts[:depth + 1]),
                             level_counts=level_counts,
                             num_states=num_states, pair_edges=pair_edges)
