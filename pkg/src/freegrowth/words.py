"""Words over free monoids and free groups.

Letters are nonzero signed integers in {-r, ..., -1, 1, ..., r}; negation is
inversion, so a letter's inverse is O(1).  A word is a tuple of letters; group
words are kept freely reduced.  The fixed letter order used everywhere
(ShortLex tie-breaking, canonical BFS, leading terms) is

    1 < -1 < 2 < -2 < ... < r < -r.
"""

from __future__ import annotations

import heapq
import json
import random
from dataclasses import dataclass
from fractions import Fraction

Word = tuple   # tuple[int, ...]


def check_letters(letters, r):
    for a in letters:
        if not isinstance(a, int) or a == 0 or abs(a) > r:
            raise ValueError(f"letter {a!r} out of range for rank {r}")


def letter_rank(a):
    """Position of letter a in the fixed order 1 < -1 < 2 < -2 < ..."""
    return 2 * a - 2 if a > 0 else -2 * a - 1


def letters_in_order(r):
    out = []
    for i in range(1, r + 1):
        out.append(i)
        out.append(-i)
    return out


def shortlex_key(word):
    """Sort key realizing ShortLex: length first, then the fixed letter order."""
    return (len(word), tuple(letter_rank(a) for a in word))


def free_reduce(letters):
    """The unique freely reduced word equal to the input in the free group."""
    out = []
    for a in letters:
        if a == 0:
            raise ValueError("letter 0 is not allowed")
        if out and out[-1] == -a:
            out.pop()
        else:
            out.append(a)
    return tuple(out)


def is_reduced(letters):
    return all(letters[i] != -letters[i + 1] for i in range(len(letters) - 1))


def inverse(word):
    return tuple(-a for a in reversed(word))


def multiply(*words):
    """Product in the free group: concatenation followed by free reduction."""
    out = []
    for w in words:
        for a in w:
            if out and out[-1] == -a:
                out.pop()
            else:
                out.append(a)
    return tuple(out)


def power(word, n):
    if n < 0:
        return power(inverse(word), -n)
    out = ()
    for _ in range(n):
        out = multiply(out, word)
    return out


def cyclic_decompose(g):
    """Split a reduced word as g = u * w * u^-1 with w cyclically reduced.

    u is the shortest prefix that works; for g already cyclically reduced
    u is empty.
    """
    if not g:
        raise ValueError("cyclic decomposition needs a nonempty word")
    if not is_reduced(g):
        raise ValueError("input word must be reduced")
    w = list(g)
    u = []
    while len(w) >= 2 and w[0] == -w[-1]:
        u.append(w[0])
        w = w[1:-1]
    return tuple(u), tuple(w)


def count_occurrences(w, v):
    """Number of positions where v occurs in w as a contiguous subword."""
    if not v:
        raise ValueError("pattern must be nonempty")
    m = len(v)
    return sum(1 for i in range(len(w) - m + 1) if tuple(w[i:i + m]) == tuple(v))


# ---------------------------------------------------------------------------
# subword-avoidance counting (KMP-state dynamic programming)
# ---------------------------------------------------------------------------

def _kmp_table(pattern):
    """delta(state, letter) for matched-prefix states 0..m-1 of the pattern."""
    m = len(pattern)
    pi = [0] * m
    for i in range(1, m):
        k = pi[i - 1]
        while k > 0 and pattern[i] != pattern[k]:
            k = pi[k - 1]
        if pattern[i] == pattern[k]:
            k += 1
        pi[i] = k

    def step(state, a):
        while state > 0 and pattern[state] != a:
            state = pi[state - 1]
        return state + 1 if pattern[state] == a else 0

    return step


@dataclass(frozen=True)
class AvoidanceBound:
    """Certificate (C, r') with r' = radicand^(1/index) for the avoidance language."""
    big_c: int
    radicand: int
    index: int


def count_avoiding(u, n, r, mode="monoid"):
    """Ball counts of the language of words avoiding u as a subword.

    counts[k] = #(N(u) & ball(k)) for k = 0..n.  Monoid mode additionally
    returns the certificate pair (C, r') with C = r^(m-1), r' = (r^m-1)^(1/m);
    the certified inequality bounds the per-length (sphere) counts, checked in
    the exact power form sphere(k)^m <= C^m (r^m-1)^k.
    """
    u = tuple(u)
    if not u:
        raise ValueError("avoided word must be nonempty")
    m = len(u)
    step = _kmp_table(u)
    counts = []
    if mode == "monoid":
        if any(a <= 0 or a > r for a in u):
            raise ValueError("monoid mode needs positive letters within rank")
        vec = {0: 1}
        total = 1
        counts.append(total)
        for _ in range(n):
            new = {}
            for state, c in vec.items():
                for a in range(1, r + 1):
                    s2 = step(state, a)
                    if s2 < m:
                        new[s2] = new.get(s2, 0) + c
            vec = new
            total += sum(vec.values())
            counts.append(total)
        bound = AvoidanceBound(big_c=r ** (m - 1), radicand=r ** m - 1, index=m)
        return counts, bound
    if mode == "group":
        check_letters(u, r)
        if not is_reduced(u):
            raise ValueError("group mode needs a reduced word")
        vec = {(0, 0): 1}    # (kmp state, last letter); 0 = no previous letter
        total = 1
        counts.append(total)
        letters = letters_in_order(r)
        for _ in range(n):
            new = {}
            for (state, last), c in vec.items():
                for a in letters:
                    if last != 0 and a == -last:
                        continue
                    s2 = step(state, a)
                    if s2 < m:
                        key = (s2, a)
                        new[key] = new.get(key, 0) + c
            vec = new
            total += sum(vec.values())
            counts.append(total)
        return counts, None
    raise ValueError(f"unknown mode {mode!r}")


def sphere_bound_holds(counts, bound):
    """Exact check of the avoidance certificate on sphere increments.

    Verifies (counts[k]-counts[k-1])^m <= C^m * radicand^k for all k >= 1,
    entirely in integer arithmetic.
    """
    c_pow = bound.big_c ** bound.index
    prev = counts[0]
    for k in range(1, len(counts)):
        sphere = counts[k] - prev
        prev = counts[k]
        if sphere ** bound.index > c_pow * bound.radicand ** k:
            return False
    return True


# ---------------------------------------------------------------------------
# Nielsen automorphism  a1 -> a1, a2 -> a1 a2, ai -> ai (i > 2)
# ---------------------------------------------------------------------------

_NIELSEN = {2: (1, 2), -2: (-2, -1)}
_NIELSEN_INV = {2: (-1, 2), -2: (-2, 1)}


def _apply_letter_map(w, table):
    out = []
    for a in w:
        for b in table.get(a, (a,)):
            if out and out[-1] == -b:
                out.pop()
            else:
                out.append(b)
    return tuple(out)


def apply_nielsen(w):
    """Reduced image of w under the automorphism sending a2 to a1 a2."""
    return _apply_letter_map(w, _NIELSEN)


def apply_nielsen_inverse(w):
    """Reduced image under the inverse automorphism (a2 -> a1^-1 a2)."""
    return _apply_letter_map(w, _NIELSEN_INV)


def nielsen_stretch_factor(r, epsilon):
    """The guaranteed stretch 1 + (2r-3)/(r(2r-1)) - 6*epsilon, exact."""
    return 1 + Fraction(2 * r - 3, r * (2 * r - 1)) - 6 * Fraction(epsilon)


# ---------------------------------------------------------------------------
# frequency-window words (the Z-set) and membership
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ZParams:
    """Window half-width epsilon and threshold length l for prefix statistics."""
    epsilon: Fraction
    l: int

    def __post_init__(self):
        if Fraction(self.epsilon) <= 0:
            raise ValueError("epsilon must be positive")
        if self.l < 1:
            raise ValueError("threshold length l must be >= 1")

    def stretch_bound_ok(self, r):
        """Whether epsilon is small enough for the stretch inequality claims."""
        return Fraction(self.epsilon) < Fraction(2 * r - 3, 6 * r * (2 * r - 1))


def _window(target, epsilon):
    """Open interval (target-eps, target+eps) as integer cross-multiplied data.

    count/m lies in the window iff m*lo < count*den < m*hi.
    """
    lo = target - epsilon
    hi = target + epsilon
    den = lo.denominator * hi.denominator // _gcd(lo.denominator, hi.denominator)
    return (lo.numerator * (den // lo.denominator),
            hi.numerator * (den // hi.denominator), den)


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


def z_membership(w, params, r):
    """Whether every prefix of length in [l, |w|] has near-uniform statistics.

    For each prefix v with l <= |v| <= |w|, each of the 2r letters u must have
    v_u/|v| in (1/(2r)-eps, 1/(2r)+eps) and each reduced two-letter u must have
    v_u/|v| in (1/(2r(2r-1))-eps, 1/(2r(2r-1))+eps).  All comparisons are done
    in exact integer arithmetic.
    """
    w = tuple(w)
    check_letters(w, r)
    if not is_reduced(w):
        raise ValueError("word must be reduced")
    n = len(w)
    l = params.l
    if n < l:
        raise ValueError(f"word length {n} below threshold l={l}")
    eps = Fraction(params.epsilon)
    lo1, hi1, den1 = _window(Fraction(1, 2 * r), eps)
    lo2, hi2, den2 = _window(Fraction(1, 2 * r * (2 * r - 1)), eps)

    letters = letters_in_order(r)
    singles = {a: 0 for a in letters}
    pairs = {(a, b): 0 for a in letters for b in letters if b != -a}

    def in_window(c, m, lo, hi, den):
        cd = c * den
        return m * lo < cd < m * hi

    def next_lower_fail(c, lo, den):
        # smallest m with m*lo >= c*den; never for lo <= 0
        if lo <= 0:
            return None
        return -((-c * den) // lo)

    # event heap of (m_fail, kind, key); lazily invalidated on counter updates
    events = []

    def push_event(kind, key, c):
        lo, den = (lo1, den1) if kind == 0 else (lo2, den2)
        nf = next_lower_fail(c, lo, den)
        if nf is not None:
            heapq.heappush(events, (nf, kind, key, c))

    for i, a in enumerate(w):
        m = i + 1
        singles[a] += 1
        if i > 0:
            pairs[(w[i - 1], a)] += 1
        if m < l:
            continue
        if m == l:
            for key, c in singles.items():
                if not in_window(c, m, lo1, hi1, den1):
                    return False
                push_event(0, key, c)
            for key, c in pairs.items():
                if not in_window(c, m, lo2, hi2, den2):
                    return False
                push_event(1, key, c)
            continue
        # counters that changed this step must be rechecked now
        if not in_window(singles[a], m, lo1, hi1, den1):
            return False
        push_event(0, a, singles[a])
        pk = (w[i - 1], a)
        if not in_window(pairs[pk], m, lo2, hi2, den2):
            return False
        push_event(1, pk, pairs[pk])
        # fire scheduled lower-bound violations
        while events and events[0][0] <= m:
            _, kind, key, c_at_push = heapq.heappop(events)
            c = singles[key] if kind == 0 else pairs[key]
            if c != c_at_push:
                continue   # stale; a fresh event exists
            lo, hi, den = (lo1, hi1, den1) if kind == 0 else (lo2, hi2, den2)
            if not in_window(c, m, lo, hi, den):
                return False
            push_event(kind, key, c)
    return True


def sample_reduced(n, r, seed=None, rng=None):
    """Uniform sample from the 2r(2r-1)^(n-1) reduced words of length n."""
    if rng is None:
        rng = random.Random(seed)
    if n == 0:
        return ()
    letters = letters_in_order(r)
    out = [letters[rng.randrange(2 * r)]]
    for _ in range(n - 1):
        choices = [a for a in letters if a != -out[-1]]
        out.append(choices[rng.randrange(2 * r - 1)])
    return tuple(out)


def empirical_pass_fraction(epsilon, l, length, r, samples, rng):
    params = ZParams(Fraction(epsilon), l)
    hits = 0
    for _ in range(samples):
        if z_membership(sample_reduced(length, r, rng=rng), params, r):
            hits += 1
    return hits / samples


def calibrate_l(epsilon, r, samples=120, start_l=64, seed=0, max_l=1 << 15,
                floor=0.05, tol=None):
    """Pick a threshold length l by doubling until the pass fraction settles.

    For each candidate l the pass fraction is estimated at the two consecutive
    test lengths 2l and 4l; l is accepted once the fractions differ by less
    than the tolerance and are not degenerately small (below `floor`, which
    guards against "stable at zero" when the windows are infeasible at short
    lengths).  The default tolerance is 1% widened to the sampling noise of
    `samples` draws.
    """
    eps = Fraction(epsilon)
    if tol is None:
        tol = max(0.01, 2.0 * (0.25 / samples) ** 0.5)
    rng = random.Random(seed)
    l = start_l
    while l <= max_l:
        f1 = empirical_pass_fraction(eps, l, 2 * l, r, samples, rng)
        f2 = empirical_pass_fraction(eps, l, 4 * l, r, samples, rng)
        if abs(f1 - f2) < tol and min(f1, f2) >= floor:
            return l
        l *= 2
    raise RuntimeError(f"no stable threshold length below {max_l}")


# ---------------------------------------------------------------------------
# word text formats: "a1 a2 A1" tokens (capital = inverse) or JSON int arrays
# ---------------------------------------------------------------------------

def parse_word(text, r=None):
    text = text.strip()
    if not text:
        return ()
    if text.startswith("["):
        letters = tuple(json.loads(text))
        if not all(isinstance(a, int) for a in letters):
            raise ValueError("JSON word must be an array of integers")
    else:
        letters = []
        for tok in text.split():
            if len(tok) < 2 or tok[0] not in "aA" or not tok[1:].isdigit():
                raise ValueError(f"bad word token {tok!r}")
            i = int(tok[1:])
            if i < 1:
                raise ValueError(f"bad generator index in {tok!r}")
            letters.append(i if tok[0] == "a" else -i)
        letters = tuple(letters)
    if r is not None:
        check_letters(letters, r)
    return letters


def word_to_text(word):
    return " ".join(f"a{a}" if a > 0 else f"A{-a}" for a in word)


def word_to_json(word):
    return json.dumps(list(word))
