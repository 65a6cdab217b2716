"""Modules over free associative algebras (and free group algebras) with
exact ball-dimension computation.

Vectors are sparse dicts from basis tags to exact rationals.  Ball dimensions
come from incremental row reduction in a fixed tag order; ShortLex on
monomials is used wherever leading terms matter.
"""

from __future__ import annotations

import itertools
import json
import random
from dataclasses import dataclass
from fractions import Fraction

from .growth import GrowthSeries, validate_series
from .words import letters_in_order, multiply, shortlex_key


def vec_add(a, b, scale=Fraction(1)):
    out = dict(a)
    for t, c in b.items():
        v = out.get(t, Fraction(0)) + scale * c
        if v:
            out[t] = v
        else:
            out.pop(t, None)
    return out


def vec_scale(a, scale):
    scale = Fraction(scale)
    if not scale:
        return {}
    return {t: scale * c for t, c in a.items()}


class Echelon:
    """Row echelon over the rationals with an arbitrary total tag order.

    Leading tag = maximum in the order.  Supports membership tests through
    reduce(): a vector lies in the span iff it reduces to zero.
    """

    def __init__(self, key):
        self.key = key
        self.rows = {}   # leading tag -> row normalized to leading coeff 1

    def reduce(self, vec):
        vec = {t: Fraction(c) for t, c in vec.items() if c}
        while vec:
            lead = max(vec, key=self.key)
            row = self.rows.get(lead)
            if row is None:
                return vec, lead
            c = vec[lead]
            for t, x in row.items():
                v = vec.get(t, Fraction(0)) - c * x
                if v:
                    vec[t] = v
                else:
                    vec.pop(t, None)
        return {}, None

    def insert(self, vec):
        """Add a vector; returns the new normalized row or None if dependent."""
        red, lead = self.reduce(vec)
        if lead is None:
            return None
        inv = 1 / red[lead]
        row = {t: c * inv for t, c in red.items()}
        self.rows[lead] = row
        return row

    def contains(self, vec):
        red, _lead = self.reduce(vec)
        return not red

    def normal_form(self, vec):
        """Canonical coset representative: eliminate every pivot tag.

        Head reduction alone leaves pivot tags below the lead, so distinct
        representatives of one coset could disagree; eliminating the largest
        pivot tag present (strictly decreasing, rows only add smaller tags)
        yields the unique representative supported off the pivot set.
        """
        vec = {t: Fraction(c) for t, c in vec.items() if c}
        while True:
            hit = None
            for t in vec:
                if t in self.rows and (hit is None or self.key(t) > self.key(hit)):
                    hit = t
            if hit is None:
                return vec
            c = vec[hit]
            for t, x in self.rows[hit].items():
                v = vec.get(t, Fraction(0)) - c * x
                if v:
                    vec[t] = v
                else:
                    vec.pop(t, None)

    @property
    def rank(self):
        return len(self.rows)


# ---------------------------------------------------------------------------
# rule modules
# ---------------------------------------------------------------------------

@dataclass
class RuleModule:
    """A module over the free associative algebra given by generator rules.

    rule(tag, letter) returns the sparse vector for basis(tag) * x_letter.
    kind "monoid" means the r positive letters act (free associative algebra);
    "group" means all 2r signed letters act (free group algebra).
    """
    r: int
    rule: object
    tag_key: object
    kind: str = "monoid"
    name: str = ""

    @property
    def letters(self):
        if self.kind == "monoid":
            return tuple(range(1, self.r + 1))
        return tuple(letters_in_order(self.r))

    def act_vector(self, vec, x):
        out = {}
        for tag, c in vec.items():
            for t2, c2 in self.rule(tag, x).items():
                v = out.get(t2, Fraction(0)) + c * c2
                if v:
                    out[t2] = v
                else:
                    out.pop(t2, None)
        return out

    def act_word(self, vec, word):
        for x in word:
            vec = self.act_vector(vec, x)
        return vec


def rule_table_json(module, tags):
    """JSON export of the rule table restricted to the given basis tags.

    Tags are serialized as JSON-friendly nested lists; rule outputs as
    [tag, "p/q"] coefficient pairs.
    """
    def enc_tag(tag):
        return [list(x) if isinstance(x, tuple) else x for x in tag]

    table = []
    for tag in tags:
        for x in module.letters:
            out = module.rule(tag, x)
            table.append({
                "tag": enc_tag(tag),
                "letter": x,
                "image": [[enc_tag(t), f"{c.numerator}/{c.denominator}"]
                          for t, c in sorted(out.items(),
                                             key=lambda kv: module.tag_key(kv[0]))],
            })
    return json.dumps({"r": module.r, "kind": module.kind, "name": module.name,
                       "rules": table}, sort_keys=True)


def free_module(r, rank=1, kind="monoid"):
    """The free module of the given rank; tags are (slot, monomial word)."""
    def rule(tag, x):
        slot, word = tag
        if kind == "monoid":
            return {(slot, word + (x,)): Fraction(1)}
        return {(slot, multiply(word, (x,))): Fraction(1)}

    def key(tag):
        slot, word = tag
        return (shortlex_key(word), slot)

    return RuleModule(r=r, rule=rule, tag_key=key, kind=kind,
                      name=f"free^{rank}")


def free_gens(rank=1):
    return [{(slot, ()): Fraction(1)} for slot in range(rank)]


def module_growth(module, gens, n_max):
    """Exact ball dimensions g(n) = dim span{a*u : a in gens, |u| <= n}."""
    ech = Echelon(module.tag_key)
    frontier = []
    for g in gens:
        row = ech.insert(g)
        if row is not None:
            frontier.append(row)
    values = [ech.rank]
    for _ in range(n_max):
        new = []
        for v in frontier:
            for x in module.letters:
                row = ech.insert(module.act_vector(v, x))
                if row is not None:
                    new.append(row)
        frontier = new
        values.append(ech.rank)
    series = GrowthSeries(kind=module.kind, r=module.r, values=tuple(values))
    report = validate_series(series)
    if not report.ok:
        raise AssertionError(f"dimension series failed validation: {report.violations}")
    return series


# ---------------------------------------------------------------------------
# co-growth of a quotient of a free module
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CogrowthReport:
    c: tuple                  # c(n) = dim(N & ball(n))
    g_free: tuple
    g_quotient: tuple
    identity_ok: bool
    ratios: tuple             # c(n)/g_free(n)
    cutoff: int


def _free_ball_dims(r, s, n_max):
    return [s * sum(r ** k for k in range(n + 1)) for n in range(n_max + 1)]


def cogrowth(sub_gens, s, n_max, r=2, max_rounds=5):
    """Exact co-growth of L/N for N generated inside the rank-s free module.

    c(n) = dim(N & ball(n)) is computed from a degree-dominant echelon of the
    level-K spanning set of N; the quotient dimensions are computed by an
    independent route (growth of residues modulo that echelon), and K grows
    until both answers stabilize.  identity_ok records the exact additivity
    g_L(n) = g_M(n) + c(n) at every n.
    """
    mod = free_module(r, rank=s)
    g_free = _free_ball_dims(r, s, n_max)
    max_deg = max((max((len(t[1]) for t in g), default=0) for g in sub_gens),
                  default=0)

    prev = None
    cutoff = n_max + max_deg
    for _round in range(max_rounds):
        ech = Echelon(mod.tag_key)
        frontier = []
        for g in sub_gens:
            row = ech.insert(g)
            if row is not None:
                frontier.append(row)
        for _ in range(cutoff):
            new = []
            for v in frontier:
                for x in mod.letters:
                    row = ech.insert(mod.act_vector(v, x))
                    if row is not None:
                        new.append(row)
            frontier = new
        c_vals = []
        lead_degs = sorted(len(lead[1]) for lead in ech.rows)
        for n in range(n_max + 1):
            c_vals.append(sum(1 for d in lead_degs if d <= n))

        # independent route: ball growth of the quotient module, on canonical
        # normal forms so that equality mod N is literal equality
        q_ech = Echelon(mod.tag_key)
        q_frontier = []
        for g in free_gens(s):
            res = ech.normal_form(g)
            row = q_ech.insert(res)
            if row is not None:
                q_frontier.append(row)
        g_quot = [q_ech.rank]
        for _ in range(n_max):
            new = []
            for v in q_frontier:
                for x in mod.letters:
                    img = mod.act_vector(v, x)
                    res = ech.normal_form(img)
                    row = q_ech.insert(res)
                    if row is not None:
                        new.append(row)
            q_frontier = new
            g_quot.append(q_ech.rank)

        state = (tuple(c_vals), tuple(g_quot))
        if state == prev:
            break
        prev = state
        cutoff += 2

    c_vals, g_quot = prev
    identity_ok = all(g_free[n] == g_quot[n] + c_vals[n]
                      for n in range(n_max + 1))
    ratios = tuple(Fraction(c_vals[n], g_free[n]) for n in range(n_max + 1))
    return CogrowthReport(c=tuple(c_vals), g_free=tuple(g_free),
                          g_quotient=tuple(g_quot), identity_ok=identity_ok,
                          ratios=ratios, cutoff=cutoff)


# ---------------------------------------------------------------------------
# extension examples: fast cyclic module over slow submodule and quotient
# ---------------------------------------------------------------------------

@dataclass
class ExtensionExample:
    kind: str
    module: RuleModule
    generator: dict
    submodule_gens: list
    quotient: RuleModule
    d: tuple
    max_eta_offset: int


def build_extension_example(kind, d, r=2):
    """The two rule-table extension examples over the rank-r free algebra.

    kind "fast-over-linear": cyclic module whose growth beats alpha(n) r^n
    while the submodule generated by the first eta and the quotient both grow
    linearly.  kind "no-nil-quotient": cyclic module with growth above
    alpha(n) r^n such that one nil relation already truncates it to finite
    dimension.

    Eta indices are stored as (chain, offset) pairs since the absolute values
    4 r^(d_chain) are astronomically spaced; offsets are capped below the
    smallest gap so distinct pairs always denote distinct absolute indices.
    """
    d = tuple(d)
    if len(d) < 2 or any(d[i] >= d[i + 1] for i in range(len(d) - 1)):
        raise ValueError("need a strictly increasing d sequence of length >= 2")
    if kind == "fast-over-linear":
        max_off = 4 * r ** d[1] - 2
        def rule(tag, x):
            if tag[0] == "eps":
                _, i = tag
                if x == 1:
                    return {("eps", i + 1): Fraction(1)}
                if x == 2:
                    return {("eps", i): Fraction(1), ("eta", i, 0): Fraction(1)}
                return {}
            if tag[0] == "eta":
                _, i, off = tag
                if off > max_off:
                    raise ValueError("eta offset beyond the safe index gap")
                if x == 1:
                    return {("eta", i, off + 1): Fraction(1)}
                if x == 2 and off == 0:
                    return {("zeta", i, ()): Fraction(1)}
                return {}
            _, i, word = tag
            if i > len(d):
                raise ValueError("d sequence exhausted; extend it")
            if len(word) < d[i - 1]:
                return {("zeta", i, word + (x,)): Fraction(1)}
            return {}

        def key(tag):
            if tag[0] == "eps":
                return (0, tag[1])
            if tag[0] == "eta":
                return (1, tag[1], tag[2])
            return (2, tag[1], shortlex_key(tag[2]))

        def quot_rule(tag, x):
            _, i = tag
            if x == 1:
                return {("eps", i + 1): Fraction(1)}
            if x == 2:
                return {("eps", i): Fraction(1)}
            return {}

        module = RuleModule(r=r, rule=rule, tag_key=key, name="fast-over-linear")
        quotient = RuleModule(r=r, rule=quot_rule,
                              tag_key=lambda t: (0, t[1]), name="quotient")
        return ExtensionExample(kind=kind, module=module,
                                generator={("eps", 1): Fraction(1)},
                                submodule_gens=[{("eta", 1, 0): Fraction(1)}],
                                quotient=quotient, d=d, max_eta_offset=max_off)
    if kind == "no-nil-quotient":
        def rule(tag, x):
            if tag[0] == "eps":
                _, i = tag
                if x == 1:
                    return {("eps", i + 1): Fraction(1)}
                if x == 2:
                    return {("xi", i, ()): Fraction(1)}
                return {}
            _, i, word = tag
            if i > len(d):
                raise ValueError("d sequence exhausted; extend it")
            if len(word) < d[i - 1]:
                return {("xi", i, word + (x,)): Fraction(1)}
            return {}

        def key(tag):
            if tag[0] == "eps":
                return (0, tag[1])
            return (1, tag[1], shortlex_key(tag[2]))

        module = RuleModule(r=r, rule=rule, tag_key=key, name="no-nil-quotient")
        return ExtensionExample(kind=kind, module=module,
                                generator={("eps", 1): Fraction(1)},
                                submodule_gens=[{("xi", 1, ()): Fraction(1)}],
                                quotient=module, d=d, max_eta_offset=0)
    raise ValueError(f"unknown example kind {kind!r}")


def nil_relation_quotient(example, m):
    """Impose generator * x1^m = 0 on the no-nil-quotient example."""
    base_rule = example.module.rule

    def rule(tag, x):
        out = {}
        for t2, c in base_rule(tag, x).items():
            if t2[0] == "eps" and t2[1] > m:
                continue
            out[t2] = c
        return out

    return RuleModule(r=example.module.r, rule=rule,
                      tag_key=example.module.tag_key, name="nil-quotient")


# ---------------------------------------------------------------------------
# graded-submodule dimension bound and the single nil-quotient step
# ---------------------------------------------------------------------------

def _monomials(r, n):
    return list(itertools.product(range(1, r + 1), repeat=n))


def _shift_vector(vec, u):
    return {word + u: c for word, c in vec.items()}


@dataclass(frozen=True)
class GolodReport:
    degrees: tuple              # d_i = dim of the degree-i span of P
    actual: tuple               # dim L_n for n = 0..N
    bound: tuple                # sum_{i<=n} d_i r^(n-i)
    ok: bool


def golod_bound_check(p_vectors, r, n_max):
    """Compare homogeneous-submodule dimensions against the convolution bound.

    p_vectors are homogeneous vectors over monomial-word tags in the free
    algebra; L is the right submodule they generate, and dim L_n is computed
    exactly per degree.
    """
    by_deg = {}
    for p in p_vectors:
        if not p:
            continue
        degs = {len(w) for w in p}
        if len(degs) != 1:
            raise ValueError("generators must be homogeneous")
        by_deg.setdefault(degs.pop(), []).append(p)
    d = []
    for i in range(n_max + 1):
        ech = Echelon(shortlex_key)
        for p in by_deg.get(i, []):
            ech.insert(p)
        d.append(ech.rank)
    actual = []
    bound = []
    ok = True
    for n in range(n_max + 1):
        ech = Echelon(shortlex_key)
        for i, ps in by_deg.items():
            if i > n:
                continue
            for u in _monomials(r, n - i):
                for p in ps:
                    ech.insert(_shift_vector(p, u))
        actual.append(ech.rank)
        b = sum(d[i] * r ** (n - i) for i in range(n + 1))
        bound.append(b)
        if ech.rank > b:
            ok = False
    return GolodReport(degrees=tuple(d), actual=tuple(actual),
                       bound=tuple(bound), ok=ok)


@dataclass(frozen=True)
class NilStepReport:
    q: int
    num_components: int
    quotient_dims: GrowthSeries
    lower_bound_ok: bool          # g_{M/L}(n) >= c r^n for all computed n
    membership_checks: int


def nil_step(u_word, v_list, big_c, c, r, n_max, seed=0, spot_checks=5):
    """One nil-quotient step on the free cyclic module M = R.

    Chooses the least q with 2 q^k <= (C - c) r^q, forms the submodule L
    generated by b * (homogeneous components of (s_1 v_1 + ... + s_k v_k)^q)
    with b the monomial u, and certifies g_{M/L}(n) >= c r^n exactly.  Random
    scalar substitutions confirm b (sum s_i v_i)^q lies in L.
    """
    big_c, c = Fraction(big_c), Fraction(c)
    if not (0 < c < big_c):
        raise ValueError("need 0 < c < C")
    v_list = [tuple(v) for v in v_list]
    if not v_list or any(len(v) < 1 for v in v_list):
        raise ValueError("the v_i must be monomials of degree >= 1")
    k = len(v_list)
    q = 1
    while 2 * Fraction(q) ** k > (big_c - c) * r ** q:
        q += 1
        if q > 10_000:
            raise ValueError("no feasible power exponent found")
    u_word = tuple(u_word)

    components = {}
    for seq in itertools.product(range(k), repeat=q):
        counts = tuple(sorted(seq).count(i) for i in range(k))
        mono = u_word + tuple(x for i in seq for x in v_list[i])
        comp = components.setdefault(counts, {})
        comp[mono] = comp.get(mono, Fraction(0)) + 1
    if len(components) > q ** k:
        raise AssertionError("more homogeneous components than q^k")
    gens = list(components.values())

    # exact quotient dimensions: L is graded, so dim L_n is the span rank of
    # the degree-n shifts of the generators
    by_deg = {}
    for g in gens:
        degs = {len(w) for w in g}
        if len(degs) != 1:
            raise AssertionError("components must be homogeneous")
        by_deg.setdefault(degs.pop(), []).append(g)
    dims = []
    total_l = 0
    ok = True
    values = []
    for n in range(n_max + 1):
        ech = Echelon(shortlex_key)
        for i, ps in by_deg.items():
            if i > n:
                continue
            for u in _monomials(r, n - i):
                for p in ps:
                    ech.insert(_shift_vector(p, u))
        total_l += ech.rank
        g_m = sum(r ** j for j in range(n + 1))
        values.append(g_m - total_l)
        if values[-1] < c * r ** n:
            ok = False
    series = GrowthSeries(kind="monoid", r=r, values=tuple(values))

    # spot checks: numeric scalars, exact membership via a span echelon
    rng = random.Random(seed)
    max_deg = len(u_word) + q * max(len(v) for v in v_list)
    ech = Echelon(shortlex_key)
    for i, ps in by_deg.items():
        for m in range(max_deg - i + 1):
            for u in _monomials(r, m):
                for p in ps:
                    ech.insert(_shift_vector(p, u))
    checks = 0
    for _ in range(spot_checks):
        scalars = [Fraction(rng.randint(1, 9), rng.randint(1, 4)) for _ in range(k)]
        poly = {(): Fraction(1)}
        lin = {}
        for s, v in zip(scalars, v_list):
            lin[v] = lin.get(v, Fraction(0)) + s
        for _ in range(q):
            new = {}
            for w, cw in poly.items():
                for v, cv in lin.items():
                    key = w + v
                    new[key] = new.get(key, Fraction(0)) + cw * cv
            poly = new
        vec = {u_word + w: cw for w, cw in poly.items()}
        if not ech.contains(vec):
            raise AssertionError("power substitution escaped the submodule")
        checks += 1
    return NilStepReport(q=q, num_components=len(gens), quotient_dims=series,
                         lower_bound_ok=ok, membership_checks=checks)


# ---------------------------------------------------------------------------
# quasi-monomial basis e_v = (x_{j1} - a_{j1,1}) ... (x_{jd} - a_{jd,d})
# ---------------------------------------------------------------------------

def e_to_poly(v_word, alpha):
    """Expand the quasi-monomial with leading term v into monomial coordinates."""
    poly = {(): Fraction(1)}
    for pos, j in enumerate(v_word, start=1):
        a = Fraction(alpha(j, pos))
        new = {}
        for w, c in poly.items():
            t = w + (j,)
            new[t] = new.get(t, Fraction(0)) + c
            if a:
                new[w] = new.get(w, Fraction(0)) - c * a
        poly = {w: c for w, c in new.items() if c}
    return poly


def _e_apply_letter(coords, j, alpha):
    """Right multiplication by x_j in quasi-monomial coordinates."""
    out = {}
    for v, c in coords.items():
        t = v + (j,)
        out[t] = out.get(t, Fraction(0)) + c
        a = Fraction(alpha(j, len(v) + 1))
        if a:
            out[v] = out.get(v, Fraction(0)) + c * a
    return {v: c for v, c in out.items() if c}


def poly_to_e(poly, alpha):
    """Rewrite a polynomial in quasi-monomial coordinates (exact inverse)."""
    out = {}
    for word, c in poly.items():
        coords = {(): Fraction(1)}
        for j in word:
            coords = _e_apply_letter(coords, j, alpha)
        for v, cv in coords.items():
            s = out.get(v, Fraction(0)) + c * cv
            if s:
                out[v] = s
            else:
                out.pop(v, None)
    return out


def quasi_convert(vec, alpha, direction="to_e"):
    """Change of basis between monomial and quasi-monomial coordinates."""
    if direction == "to_e":
        return poly_to_e(vec, alpha)
    if direction == "to_monomials":
        out = {}
        for v, c in vec.items():
            for w, cw in e_to_poly(v, alpha).items():
                s = out.get(w, Fraction(0)) + c * cw
                if s:
                    out[w] = s
                else:
                    out.pop(w, None)
        return out
    raise ValueError(f"unknown direction {direction!r}")


# ---------------------------------------------------------------------------
# the residually finite module of maximal growth
# ---------------------------------------------------------------------------

def shortlex_index(word, r):
    """1-based position of a monomial in the ShortLex enumeration."""
    idx = sum(r ** l for l in range(len(word)))
    rank = 0
    for a in word:
        rank = rank * r + (a - 1)
    return idx + rank + 1


def monomial_at(i, r):
    """Inverse of shortlex_index."""
    if i < 1:
        raise ValueError("index must be >= 1")
    i -= 1
    n = 0
    while i >= r ** n:
        i -= r ** n
        n += 1
    word = []
    for _ in range(n):
        word.append(i % r + 1)
        i //= r
    return tuple(reversed(word))


@dataclass
class QuasiMonomialModule:
    """Quotient of the free algebra by the right ideal of quasi-monomials
    whose leading words carry a forbidden prefix."""
    r: int
    alpha: object
    d_of: object                  # d_of(i) >= deg u_i, strictly increasing
    depth: int
    leading: tuple                # minimal forbidden leading words
    module: RuleModule

    def is_forbidden(self, word):
        return any(word[:len(lt)] == lt for lt in self.leading
                   if len(lt) <= len(word))

    def allowed_count(self, n):
        """Number of allowed monomials of length <= n (ball dimension)."""
        total = 0
        frontier = [()]
        if not self.is_forbidden(()):
            total += 1
        for _ in range(n):
            new = []
            for w in frontier:
                for x in range(1, self.r + 1):
                    w2 = w + (x,)
                    if not self.is_forbidden(w2):
                        new.append(w2)
            total += len(new)
            frontier = new
        return total

    def annihilator_witness(self, v_word):
        """Exact annihilation of the class of e_v by its binomial product."""
        i = shortlex_index(v_word, self.r)
        d_i = self.d_of(i)
        if d_i < len(v_word):
            raise ValueError("d sequence must dominate the leading degree")
        vec = {("e", tuple(v_word)): Fraction(1)}
        for pos in range(len(v_word) + 1, d_i + 1):
            a = Fraction(self.alpha(1, pos))
            plus = self.module.act_vector(vec, 1)
            vec = vec_add(plus, vec, scale=-a)
        return vec


def build_residually_finite_module(alpha, d_of, depth, r=2):
    """The triangular, residually finite module of maximal growth.

    alpha(j, i) supplies the twist scalars (each row must repeat any value
    only finitely often; supply e.g. alpha(j, i) = i); d_of(i) the padding
    degrees with 1 < d_1 < d_2 < ... and deg u_i <= d_i.  Ideal generators
    collapse to single quasi-monomials e_(lt_i) because the binomial indices
    align, so the quotient has the allowed quasi-monomials as a basis.
    """
    if d_of(1) <= 1:
        raise ValueError("need d_1 > 1")
    leading = []
    i = 1
    while True:
        u = monomial_at(i, r)
        d_i = d_of(i)
        if i > 1 and d_i <= d_of(i - 1):
            raise ValueError("d sequence must be strictly increasing")
        if d_i < len(u):
            raise ValueError("d sequence must dominate leading degrees")
        if d_i > depth + 1:
            break
        lt = u + (1,) * (d_i - len(u))
        if not any(lt[:len(p)] == p for p in leading if len(p) <= len(lt)):
            leading.append(lt)
        i += 1
    leading = tuple(leading)

    def is_forbidden(word):
        return any(word[:len(lt)] == lt for lt in leading
                   if len(lt) <= len(word))

    def rule(tag, x):
        _, word = tag
        if len(word) + 1 > depth + 1:
            raise ValueError("action beyond materialized depth")
        a = Fraction(alpha(x, len(word) + 1))
        out = {}
        w2 = word + (x,)
        if not is_forbidden(w2):
            out[("e", w2)] = Fraction(1)
        if a:
            out[("e", word)] = a
        return out

    def key(tag):
        return shortlex_key(tag[1])

    module = RuleModule(r=r, rule=rule, tag_key=key, name="quasi-monomial")
    return QuasiMonomialModule(r=r, alpha=alpha, d_of=d_of, depth=depth,
                               leading=leading, module=module)
