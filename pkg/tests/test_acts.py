import itertools

import pytest

from freegrowth.acts import (Act, BudgetExceeded, act_growth,
                             build_k_transitive, build_prescribed,
                             check_property_dagger, enumerate_tuples,
                             marker_is_clean, marker_word)
from freegrowth.growth import validate_series


def test_prescribed_ray():
    act = build_prescribed([1] * 9, 2)
    s = act_growth(act, 8)
    assert list(s.values) == list(range(1, 10))


def test_prescribed_two_rays():
    act = build_prescribed([2] * 9, 2)
    s = act_growth(act, 8)
    assert list(s.values) == [2 * n + 2 for n in range(9)]


def test_prescribed_rejects_inadmissible():
    with pytest.raises(ValueError):
        build_prescribed([1, 3], 2)
    with pytest.raises(ValueError):
        build_prescribed([2, 7], 3)


def test_prescribed_matches_exactly(rng):
    for _ in range(10):
        r = rng.choice((2, 3))
        d = [rng.randint(1, 3)]
        for _ in range(9):
            d.append(rng.randint(1, r * d[-1]))
        act = build_prescribed(d, r)
        s = act_growth(act, len(d) - 1)
        expect = list(itertools.accumulate(d))
        assert list(s.values) == expect


def test_free_act_growth():
    # the free rank-1 act realizes the full monoid ball sizes
    act = build_prescribed([1, 2, 4, 8, 16], 2)
    s = act_growth(act, 4)
    assert list(s.values) == [1, 3, 7, 15, 31]


def test_dagger_examples():
    assert check_property_dagger([(1, 1, 2, 2), (1, 1, 2, 1, 2, 2)])
    assert not check_property_dagger([(1, 2), (2, 1)])
    assert check_property_dagger([(1, 1, 2, 2)])
    assert check_property_dagger([marker_word(t) for t in range(6)])


def test_marker_structure_facts():
    # literal backing for the rigidity used by the witness fast path
    for t in range(301):
        w = marker_word(t)
        pairs = [(p, p + 1) for p in range(len(w) - 1)
                 if w[p] == 2 and w[p + 1] == 2]
        assert pairs == [(len(w) - 2, len(w) - 1)]
        for t2 in range(t):
            assert w[len(w) - (2 * t2 + 4):] != marker_word(t2)
        assert marker_is_clean(t)


def test_enumerate_tuples_order_and_coverage():
    gen = enumerate_tuples(2)
    first = [next(gen) for _ in range(42672)]
    assert first[0] == (((1,),), ((),))
    # uniqueness and full coverage of the small bucket
    assert len(set(first)) == 42672
    small = set()
    pool = [(), (1,), (2,), (1, 1), (1, 2), (2, 1), (2, 2)]
    nonempty = [w for w in pool if w]
    for k in (1, 2, 3):
        for src in itertools.permutations(nonempty, k):
            for tgt in itertools.product(pool, repeat=k):
                small.add((src, tgt))
    assert set(first) == small


def test_k_transitive_ball_growth():
    act, _plan = build_k_transitive(256, depth=12)
    s = act.ball_series(12)
    assert all(s.values[n] >= 2 ** n for n in range(13))
    assert validate_series(s).ok


def test_k_transitive_budget_guard():
    act, _plan = build_k_transitive(64, depth=6)
    with pytest.raises(BudgetExceeded):
        act.apply((), (1,) * 10)


def test_witness_fast_path_matches_literal_apply():
    act, plan = build_k_transitive(512, depth=24)
    checked = 0
    for i in range(len(plan.sources)):
        rep = act.transitivity_witness(i)
        t = plan.t_exponents[i]
        if 2 * t + 4 + max(map(len, plan.sources[i])) <= plan.forbidden_max_len:
            w = marker_word(t)
            for j, v in enumerate(plan.sources[i]):
                assert act.apply(v, w) == plan.targets[i][j]
                checked += 1
    assert checked >= 10


def test_no_state_has_conflicting_rules():
    _act, plan = build_k_transitive(1024, depth=14)
    # forbidden-word table keys are exactly the u(i,j); collisions would have
    # raised during construction.  Re-check pairwise sources per tuple.
    for src in plan.sources:
        assert len(set(src)) == len(src)
    assert len(plan.forbidden) == len(set(plan.forbidden))


def test_k_transitive_faithful_at_small_scale():
    act, _plan = build_k_transitive(128, depth=16)
    words = [()]
    frontier = [()]
    for _ in range(5):
        frontier = [w + (x,) for w in frontier for x in (1, 2)]
        words.extend(frontier)
    states = [()]
    seen = {()}
    fr = [()]
    for _ in range(10):
        new = []
        for s in fr:
            for x in (1, 2):
                t = act.step(s, x)
                if t not in seen:
                    seen.add(t)
                    new.append(t)
        fr = new
        states.extend(new)
    probes = states[:300]
    signatures = set()
    for w in words:
        sig = tuple(act.apply(s, w) for s in probes)
        assert sig not in signatures
        signatures.add(sig)


def test_act_json_round_trip():
    from freegrowth.acts import act_from_json, act_to_json, plan_to_json
    import json
    act = build_prescribed([2, 3, 5], 2)
    assert act_from_json(act_to_json(act)) == act
    with pytest.raises(ValueError):
        act_from_json('{"r": 2, "generators": [0], "table": [[0, 5]]}')
    _act, plan = build_k_transitive(32, depth=8)
    payload = json.loads(plan_to_json(plan))
    assert payload["budget"] == 32
    assert len(payload["tuples"]) == 32
    assert payload["marker_exponents"] == list(plan.t_exponents)
