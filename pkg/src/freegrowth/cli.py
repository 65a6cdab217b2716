"""Command-line front end.

Subcommands mirror the library: core build/info/basis/deficit, growth
series/classify/measure, surgery attach/adjoin-power/link/tower/basis-change,
act prescribed/ktrans/growth, module growth/cogrowth/example/nil-step/t991,
words avoid/nielsen/zcheck/stats.  Identical arguments and seed produce
byte-identical primary output.  Exit code 2 flags a violated precondition.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import __version__
from .acts import act_growth, build_k_transitive, build_prescribed
from .growth import (boundary_measure_bounds, classify, growth_series,
                     leading_term_decompose)
from .linmod import (build_extension_example, build_residually_finite_module, cogrowth,
                     free_gens, free_module, module_growth, nil_step)
from .stallings import (build_core, core_from_json, core_to_json, deficit,
                        index, rank, schreier_basis)
from .surgery import (ElementarySpec, adjoin_power, attach_elementary,
                      basis_change_experiment, link_tuples, tower,
                      tower_log_json)
from .words import (ZParams, apply_nielsen, count_avoiding, count_occurrences,
                    free_reduce, parse_word, sample_reduced, sphere_bound_holds,
                    word_to_text, z_membership)


def frac_str(x):
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def parse_frac(text):
    if "/" in text:
        num, den = text.split("/")
        return Fraction(int(num), int(den))
    return Fraction(text)


def _emit(args, payload, summary):
    if args.format == "json":
        body = json.dumps(payload, sort_keys=True, indent=2) + "\n"
    elif args.format == "csv":
        body = payload.get("csv", "")
        if not body:
            raise SystemExit("no CSV form for this command")
    else:
        body = summary + "\n"
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(body)
        print(summary)
    else:
        sys.stdout.write(body if args.format != "json" else body)
        if args.format == "json":
            print(summary)


def _load_core(path):
    with open(path) as fh:
        return core_from_json(fh.read())


def _series_payload(series):
    return {
        "base": series.base,
        "kind": series.kind,
        "r": series.r,
        "g": [str(v) for v in series.values],
        "csv": series.to_csv(),
    }


def _gen_words(text, r):
    return [free_reduce(parse_word(tok.strip(), r))
            for tok in text.split(",") if tok.strip()]


def main(argv=None):
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--out", default=None, help="write primary output here")
    common.add_argument("--format", choices=("json", "csv", "text"),
                        default="json")

    parser = argparse.ArgumentParser(
        prog="freegrowth",
        parents=[common],
        description="Stallings cores, growth of free-monoid/free-group actions, "
                    "graph surgeries, and module growth, all in exact arithmetic.")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="group")

    core_p = sub.add_parser("core", help="core automata of subgroups")
    core_sub = core_p.add_subparsers(dest="verb")
    for verb in ("build", "info", "basis", "deficit"):
        p = core_sub.add_parser(verb, parents=[common])
        if verb == "build":
            p.add_argument("-g", "--generators", required=True,
                           help='comma-separated words, e.g. "a1 a2 A1, a2"')
            p.add_argument("-r", "--rank", type=int, required=True)
        else:
            p.add_argument("core", help="core JSON file")

    growth_p = sub.add_parser("growth", help="coset growth analytics")
    growth_sub = growth_p.add_subparsers(dest="verb")
    for verb in ("series", "classify", "measure"):
        p = growth_sub.add_parser(verb, parents=[common])
        p.add_argument("core")
        p.add_argument("-N", type=int, default=10)

    surg_p = sub.add_parser("surgery", help="graph surgeries")
    surg_sub = surg_p.add_subparsers(dest="verb")
    p = surg_sub.add_parser("attach", parents=[common])
    p.add_argument("core")
    p.add_argument("--kind", choices=("cycle", "arc", "cycle_with_leg"),
                   required=True)
    p.add_argument("--label", required=True)
    p.add_argument("--attach", required=True,
                   help="vertex, or two comma-separated vertices for an arc")
    p.add_argument("--leg", type=int, default=0)
    p = surg_sub.add_parser("adjoin-power", parents=[common])
    p.add_argument("core")
    p.add_argument("-g", "--element", required=True)
    p.add_argument("--epsilon", required=True)
    p = surg_sub.add_parser("link", parents=[common])
    p.add_argument("core")
    p.add_argument("--sources", required=True, help="comma-separated words")
    p.add_argument("--targets", required=True)
    p.add_argument("--epsilon", required=True)
    p = surg_sub.add_parser("tower", parents=[common])
    p.add_argument("core")
    p.add_argument("--plan", required=True, help="plan JSON file")
    p = surg_sub.add_parser("basis-change", parents=[common])
    p.add_argument("-r", "--rank", type=int, default=2)
    p.add_argument("--epsilon", default="1/6")
    p.add_argument("--threshold", type=int, default=5)
    p.add_argument("--depth", type=int, default=10)

    act_p = sub.add_parser("act", help="acts over free monoids")
    act_sub = act_p.add_subparsers(dest="verb")
    p = act_sub.add_parser("prescribed", parents=[common])
    p.add_argument("--spheres", required=True, help="comma-separated d(0),d(1),...")
    p.add_argument("-r", "--rank", type=int, required=True)
    p.add_argument("-N", type=int, default=None)
    p = act_sub.add_parser("ktrans", parents=[common])
    p.add_argument("--budget", type=int, default=1024)
    p.add_argument("--depth", type=int, default=12)
    p.add_argument("--witness", type=int, default=None,
                   help="verify the witness for this tuple index")
    p = act_sub.add_parser("growth", parents=[common])
    p.add_argument("--spheres", required=True)
    p.add_argument("-r", "--rank", type=int, required=True)
    p.add_argument("-N", type=int, required=True)

    mod_p = sub.add_parser("module", help="modules over free algebras")
    mod_sub = mod_p.add_subparsers(dest="verb")
    p = mod_sub.add_parser("growth", parents=[common])
    p.add_argument("-r", "--rank", type=int, default=2)
    p.add_argument("--free-rank", type=int, default=1)
    p.add_argument("--kind", choices=("monoid", "group"), default="monoid")
    p.add_argument("-N", type=int, default=8)
    p = mod_sub.add_parser("cogrowth", parents=[common])
    p.add_argument("--gens", required=True,
                   help='JSON list of sparse vectors, e.g. [[["a1", "1"]], ...]')
    p.add_argument("-r", "--rank", type=int, default=2)
    p.add_argument("-N", type=int, default=8)
    p = mod_sub.add_parser("example", parents=[common])
    p.add_argument("--kind", choices=("fast-over-linear", "no-nil-quotient"),
                   required=True)
    p.add_argument("--d", required=True, help="comma-separated degree sequence")
    p.add_argument("-N", type=int, default=8)
    p = mod_sub.add_parser("nil-step", parents=[common])
    p.add_argument("--u", default="", help="monomial word for b = a*u")
    p.add_argument("--v", required=True, help="comma-separated monomials")
    p.add_argument("--big-c", default="1")
    p.add_argument("--c", default="1/2")
    p.add_argument("-r", "--rank", type=int, default=2)
    p.add_argument("-N", type=int, default=10)
    p = mod_sub.add_parser("t991", parents=[common])
    p.add_argument("--depth", type=int, default=8)
    p.add_argument("-r", "--rank", type=int, default=2)

    words_p = sub.add_parser("words", help="word combinatorics")
    words_sub = words_p.add_subparsers(dest="verb")
    p = words_sub.add_parser("avoid", parents=[common])
    p.add_argument("--word", required=True)
    p.add_argument("-r", "--rank", type=int, required=True)
    p.add_argument("-N", type=int, default=10)
    p.add_argument("--mode", choices=("monoid", "group"), default="monoid")
    p = words_sub.add_parser("nielsen", parents=[common])
    p.add_argument("--word", required=True)
    p = words_sub.add_parser("zcheck", parents=[common])
    p.add_argument("--word", required=True)
    p.add_argument("-r", "--rank", type=int, required=True)
    p.add_argument("--epsilon", required=True)
    p.add_argument("--threshold", type=int, required=True)
    p = words_sub.add_parser("stats", parents=[common])
    p.add_argument("-r", "--rank", type=int, default=2)
    p.add_argument("--length", type=int, default=1000)
    p.add_argument("--samples", type=int, default=20)

    args = parser.parse_args(argv)
    if args.group is None:
        parser.print_usage()
        return 2
    try:
        return _dispatch(args)
    except (ValueError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def _dispatch(args):
    if args.group == "core":
        if args.verb == "build":
            core = build_core(_gen_words(args.generators, args.rank), args.rank)
            d = deficit(core)
            payload = json.loads(core_to_json(core))
            payload["deficit"] = frac_str(d.total)
            _emit(args, payload,
                  f"core: {core.num_vertices} vertices, rank {rank(core)}, "
                  f"deficit {frac_str(d.total)}")
            return 0
        core = _load_core(args.core)
        if args.verb == "info":
            d = deficit(core)
            idx = index(core)
            payload = {"vertices": core.num_vertices, "rank": rank(core),
                       "deficit": frac_str(d.total),
                       "index": "infinite" if idx is None else idx}
            _emit(args, payload,
                  f"vertices={core.num_vertices} rank={rank(core)} "
                  f"deficit={frac_str(d.total)} "
                  f"index={'infinite' if idx is None else idx}")
            return 0
        if args.verb == "basis":
            _tree, basis = schreier_basis(core)
            payload = {"rank": len(basis),
                       "basis": [word_to_text(w) for w in basis]}
            _emit(args, payload,
                  f"rank {len(basis)}: " + "; ".join(map(word_to_text, basis)))
            return 0
        if args.verb == "deficit":
            d = deficit(core)
            payload = {"total": frac_str(d.total),
                       "per_vertex": list(d.per_vertex),
                       "distance": list(d.distance)}
            _emit(args, payload, f"deficit {frac_str(d.total)}")
            return 0
    elif args.group == "growth":
        core = _load_core(args.core)
        if args.verb == "series":
            series = growth_series(core, args.N)
            payload = _series_payload(series)
            dec = leading_term_decompose(core, series)
            payload["leading_coefficient"] = frac_str(dec.coefficient)
            payload["remainder_bound"] = frac_str(dec.bound)
            _emit(args, payload,
                  f"g(0..{args.N}) = {list(series.values)}; leading "
                  f"{frac_str(dec.coefficient)}*(2r-1)^n, |f| <= {frac_str(dec.bound)}")
            return 0
        if args.verb == "classify":
            verdict = classify(core, args.N)
            payload = {"maximal": verdict.maximal,
                       "certificate": frac_str(verdict.certificate),
                       "alpha_tail": [frac_str(a) for a in verdict.alpha_tail]}
            _emit(args, payload,
                  f"maximal={'true' if verdict.maximal else 'false'} "
                  f"c={frac_str(verdict.certificate)}")
            return 0
        if args.verb == "measure":
            bounds = boundary_measure_bounds(core, args.N)
            payload = {"bounds": [frac_str(b) for b in bounds]}
            payload["csv"] = "n,bound\n" + "\n".join(
                f"{n},{frac_str(b)}" for n, b in enumerate(bounds)) + "\n"
            _emit(args, payload, "measure bounds: "
                  + " ".join(frac_str(b) for b in bounds))
            return 0
    elif args.group == "surgery":
        if args.verb == "basis-change":
            result = basis_change_experiment(
                args.rank, ZParams(parse_frac(args.epsilon), args.threshold),
                args.depth, seed=args.seed)
            payload = {
                "series_a": [str(v) for v in result.series_a.values],
                "series_b": [str(v) for v in result.series_b.values],
                "z_counts": list(result.z_counts),
                "states": result.num_states,
                "csv": "n,g_a,g_b,z\n" + "\n".join(
                    f"{n},{result.series_a.values[n]},{result.series_b.values[n]},"
                    f"{result.z_counts[n] if n < len(result.z_counts) else 0}"
                    for n in range(args.depth + 1)) + "\n",
            }
            _emit(args, payload,
                  f"states={result.num_states} a={list(result.series_a.values)} "
                  f"b={list(result.series_b.values)}")
            return 0
        core = _load_core(args.core)
        if args.verb == "attach":
            attach = tuple(int(v) for v in args.attach.split(","))
            spec = ElementarySpec(kind=args.kind,
                                  label=parse_word(args.label, core.r),
                                  attach=attach, leg=args.leg)
            core2, drop = attach_elementary(core, spec)
            payload = json.loads(core_to_json(core2))
            payload["deficit_drop"] = frac_str(drop)
            _emit(args, payload, f"attached; deficit drop {frac_str(drop)}")
            return 0
        if args.verb == "adjoin-power":
            g = parse_word(args.element, core.r)
            n, core2 = adjoin_power(core, g, parse_frac(args.epsilon))
            payload = json.loads(core_to_json(core2))
            payload["exponent"] = n
            payload["deficit"] = frac_str(deficit(core2).total)
            _emit(args, payload,
                  f"adjoined g^{n}; deficit {frac_str(deficit(core2).total)}")
            return 0
        if args.verb == "link":
            gs = _gen_words(args.sources, core.r)
            gps = _gen_words(args.targets, core.r)
            core2, b = link_tuples(core, gs, gps, parse_frac(args.epsilon),
                                   seed=args.seed)
            payload = json.loads(core_to_json(core2))
            payload["b"] = word_to_text(b)
            _emit(args, payload, f"linked with b of length {len(b)}")
            return 0
        if args.verb == "tower":
            with open(args.plan) as fh:
                plan_spec = json.load(fh)
            plan = []
            for step in plan_spec:
                if step["kind"] == "power":
                    plan.append(("power", parse_word(step["g"], core.r)))
                else:
                    plan.append(("link",
                                 [parse_word(w, core.r) for w in step["g"]],
                                 [parse_word(w, core.r) for w in step["gp"]]))
            steps = tower(core, plan, seed=args.seed)
            log = tower_log_json(steps)
            payload = {"log": log.splitlines(), "csv": log}
            _emit(args, payload,
                  f"{len(steps)} steps; final deficit "
                  f"{frac_str(steps[-1].deficit_after) if steps else 'unchanged'}")
            return 0
    elif args.group == "act":
        if args.verb == "prescribed":
            d = [int(x) for x in args.spheres.split(",")]
            act = build_prescribed(d, args.rank)
            n = args.N if args.N is not None else len(d) - 1
            series = act_growth(act, n)
            payload = _series_payload(series)
            _emit(args, payload, f"g = {list(series.values)}")
            return 0
        if args.verb == "ktrans":
            act, plan = build_k_transitive(args.budget, args.depth)
            series = act.ball_series(args.depth)
            payload = _series_payload(series)
            summary = f"g = {list(series.values)}"
            if args.witness is not None:
                rep = act.transitivity_witness(args.witness)
                payload["witness"] = {
                    "index": rep.index,
                    "marker_length": rep.marker_length,
                    "pairs": [[word_to_text(a), word_to_text(b)]
                              for a, b in rep.pairs],
                }
                summary += (f"; witness {rep.index}: marker length "
                            f"{rep.marker_length}")
            _emit(args, payload, summary)
            return 0
        if args.verb == "growth":
            d = [int(x) for x in args.spheres.split(",")]
            act = build_prescribed(d, args.rank)
            series = act_growth(act, args.N)
            payload = _series_payload(series)
            _emit(args, payload, f"g = {list(series.values)}")
            return 0
    elif args.group == "module":
        if args.verb == "growth":
            mod = free_module(args.rank, rank=args.free_rank, kind=args.kind)
            series = module_growth(mod, free_gens(args.free_rank), args.N)
            payload = _series_payload(series)
            _emit(args, payload, f"dims = {list(series.values)}")
            return 0
        if args.verb == "cogrowth":
            raw = json.loads(args.gens)
            gens = []
            for vec in raw:
                gens.append({(0, parse_word(word, args.rank)): parse_frac(coeff)
                             for word, coeff in vec})
            report = cogrowth(gens, 1, args.N, r=args.rank)
            payload = {"c": list(report.c),
                       "g_free": list(report.g_free),
                       "g_quotient": list(report.g_quotient),
                       "identity_ok": report.identity_ok,
                       "ratios": [frac_str(x) for x in report.ratios]}
            _emit(args, payload,
                  f"identity={'ok' if report.identity_ok else 'VIOLATED'} "
                  f"c={list(report.c)}")
            return 0
        if args.verb == "example":
            d = tuple(int(x) for x in args.d.split(","))
            ex = build_extension_example(args.kind, d)
            series = module_growth(ex.module, [ex.generator], args.N)
            payload = _series_payload(series)
            _emit(args, payload, f"dims = {list(series.values)}")
            return 0
        if args.verb == "nil-step":
            u = parse_word(args.u, args.rank) if args.u else ()
            v_list = [parse_word(tok, args.rank)
                      for tok in args.v.split(",") if tok.strip()]
            rep = nil_step(u, v_list, parse_frac(args.big_c),
                           parse_frac(args.c), args.rank, args.N,
                           seed=args.seed)
            payload = _series_payload(rep.quotient_dims)
            payload["q"] = rep.q
            payload["lower_bound_ok"] = rep.lower_bound_ok
            _emit(args, payload,
                  f"q={rep.q} quotient dims {list(rep.quotient_dims.values)}")
            return 0
        if args.verb == "t991":
            qm = build_residually_finite_module(lambda j, i: Fraction(i), lambda i: i + 1,
                            args.depth, r=args.rank)
            counts = [qm.allowed_count(n) for n in range(args.depth + 1)]
            payload = {"dims": counts,
                       "leading": [word_to_text(w) for w in qm.leading],
                       "csv": "n,dim\n" + "\n".join(
                           f"{n},{c}" for n, c in enumerate(counts)) + "\n"}
            _emit(args, payload, f"dims = {counts}")
            return 0
    elif args.group == "words":
        if args.verb == "avoid":
            u = parse_word(args.word, args.rank)
            counts, bound = count_avoiding(u, args.N, args.rank, mode=args.mode)
            payload = {"counts": counts,
                       "csv": "n,count\n" + "\n".join(
                           f"{n},{c}" for n, c in enumerate(counts)) + "\n"}
            summary = f"counts = {counts}"
            if bound is not None:
                payload["bound"] = {"C": bound.big_c,
                                    "radicand": bound.radicand,
                                    "index": bound.index}
                payload["sphere_bound_holds"] = sphere_bound_holds(counts, bound)
                summary += (f"; C={bound.big_c}, r'={bound.radicand}^(1/{bound.index}),"
                            f" sphere bound {'holds' if payload['sphere_bound_holds'] else 'FAILS'}")
            _emit(args, payload, summary)
            return 0
        if args.verb == "nielsen":
            w = parse_word(args.word)
            img = apply_nielsen(w)
            payload = {"image": word_to_text(img), "length": len(img)}
            _emit(args, payload, f"{word_to_text(img)} (length {len(img)})")
            return 0
        if args.verb == "zcheck":
            w = parse_word(args.word, args.rank)
            params = ZParams(parse_frac(args.epsilon), args.threshold)
            ok = z_membership(w, params, args.rank)
            payload = {"member": ok}
            _emit(args, payload, f"member={'true' if ok else 'false'}")
            return 0
        if args.verb == "stats":
            import random as _random
            rng = _random.Random(args.seed)
            rows = []
            for _ in range(args.samples):
                w = sample_reduced(args.length, args.rank, rng=rng)
                freqs = {a: count_occurrences(w, (a,)) / len(w)
                         for a in range(1, args.rank + 1)}
                rows.append(freqs)
            payload = {"frequencies": [
                {f"a{a}": f"{f:.6f}" for a, f in row.items()} for row in rows]}
            payload["csv"] = "sample," + ",".join(
                f"a{a}" for a in range(1, args.rank + 1)) + "\n" + "\n".join(
                f"{i}," + ",".join(f"{row[a]:.6f}" for a in range(1, args.rank + 1))
                for i, row in enumerate(rows)) + "\n"
            mean = sum(r[1] for r in rows) / len(rows)
            _emit(args, payload, f"mean frequency of a1: {mean:.4f}")
            return 0
    print("unknown command", file=sys.stderr)
    return 2


if __name__ == "__main__":
    sys.exit(main())
