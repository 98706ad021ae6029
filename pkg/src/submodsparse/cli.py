"""Command-line front end.

Subcommands: gen, ingest, sparsify, maximize, verify, bench, plot.
Exit codes: 0 success / verification pass, 1 verification fail,
2 enumeration or table budget exceeded, 64 usage error.
SUBMOD_THREADS caps benchmark workers (default 1, sequential).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

from .core import BudgetExceededError
from .families import gen_coverage, gen_facility
from .fileio import (
    function_of,
    load_edge_csv,
    load_instance,
    load_partition_matroid,
    load_points_csv,
    load_weights,
    report_json,
    save_bench,
    save_instance,
    save_weights,
)
from .matroid import UniformMatroid
from .optimize import lazy_greedy
from .sparsify import (
    PI_MODES,
    SparsifyConfig,
    estimate_importance,
    kappa_matroid,
    kappa_unconstrained,
    sample_sparsifier,
)
from .verify import verify_all_subsets, verify_matroid

EX_OK = 0
EX_FAIL = 1
EX_BUDGET = 2
EX_USAGE = 64


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EX_USAGE)


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def _load_function(args):
    instance = load_instance(args.input)
    return instance, function_of(instance)


def _matroid_of(args, ground):
    if getattr(args, "uniform_k", None) is not None and getattr(args, "matroid", None):
        raise ValueError("give either --uniform-k or --matroid, not both")
    if getattr(args, "uniform_k", None) is not None:
        return UniformMatroid(ground, args.uniform_k)
    if getattr(args, "matroid", None):
        return load_partition_matroid(args.matroid, ground)
    return None


def cmd_gen(args) -> int:
    if args.family == "coverage":
        inst = gen_coverage(args.seed, n_sets=args.sets,
                            universe_size=args.universe, density=args.density)
    else:
        inst = gen_facility(args.seed, n_facilities=args.facilities,
                            n_clients=args.clients, cost_law=args.law)
    save_instance(args.out, inst)
    print(f"wrote {args.out}")
    return EX_OK


def cmd_ingest(args) -> int:
    if args.kind == "coverage":
        inst = load_edge_csv(args.edges, n_sets=args.sets)
        if inst.dropped_uncovered:
            print(f"dropped {inst.dropped_uncovered} uncovered components",
                  file=sys.stderr)
    else:
        inst = load_points_csv(args.clients, args.facilities)
    save_instance(args.out, inst)
    print(f"wrote {args.out}")
    return EX_OK


def cmd_sparsify(args) -> int:
    _, F = _load_function(args)
    matroid = _matroid_of(args, F.ground)
    pi_mode = args.pi_mode or ("exact-matroid" if matroid else "exact")
    config = SparsifyConfig(epsilon=args.epsilon, delta=args.delta,
                            seed=args.seed, pi_mode=pi_mode,
                            allow_large_epsilon=args.allow_large_epsilon)
    est = estimate_importance(F, pi_mode, matroid)
    if matroid is not None:
        kappa = kappa_matroid(F.n, matroid.rank, args.epsilon, args.delta)
    else:
        kappa = kappa_unconstrained(F.n, args.epsilon, args.delta)
    w = sample_sparsifier(est, kappa, args.seed, epsilon=args.epsilon,
                          delta=args.delta, guarantee=config.guarantee)
    save_weights(args.out, w, sum_p=est.sum_p)
    print(_dump({"size": w.size, "num_components": w.num_components,
                 "kappa": kappa, "sum_p": est.sum_p, "mode": est.mode}))
    return EX_OK


def cmd_maximize(args) -> int:
    if args.k < 1:
        raise ValueError("k must be at least 1")
    _, F = _load_function(args)
    trace_full = lazy_greedy(lambda s: F.value(s), F.n, args.k)
    out = {
        "chosen_full": list(trace_full.chosen),
        "value_full": trace_full.value,
        "evals_full": trace_full.evals * F.num_components,
    }
    if args.weights:
        w = load_weights(args.weights, F.num_components)
        trace_s = lazy_greedy(lambda s: F.weighted_value(w, s), F.n, args.k)
        out.update({
            "chosen": list(trace_s.chosen),
            "value_sparse": trace_s.value,
            "value_on_full": F.value(trace_s.chosen),
            "evals_sparse": trace_s.evals * w.size,
        })
    else:
        out.update({"chosen": list(trace_full.chosen),
                    "value_sparse": None,
                    "value_on_full": trace_full.value,
                    "evals_sparse": out["evals_full"]})
    print(_dump(out))
    return EX_OK


def cmd_verify(args) -> int:
    _, F = _load_function(args)
    w = load_weights(args.weights, F.num_components)
    matroid = _matroid_of(args, F.ground)
    if matroid is not None:
        report = verify_matroid(F, w, args.epsilon, matroid)
    else:
        report = verify_all_subsets(F, w, args.epsilon)
    sys.stdout.write(report_json(report))
    return EX_OK if report.passed else EX_FAIL


def _bench_one(F, est, epsilon, trial, seed, delta, k, full_value,
               full_ms, timing):
    kappa = kappa_unconstrained(F.n, epsilon, delta)
    w = sample_sparsifier(est, kappa, seed, epsilon=epsilon, delta=delta,
                          guarantee=epsilon <= 1)
    t0 = time.perf_counter()
    trace = lazy_greedy(lambda s: F.weighted_value(w, s), F.n, k)
    sparse_ms = (time.perf_counter() - t0) * 1000.0
    on_full = F.value(trace.chosen)
    return {
        "epsilon": float(epsilon),
        "trial": trial,
        "sparsifier_size": w.size,
        "relative_size": w.size / F.num_components,
        "greedy_value_sparse": on_full,
        "greedy_value_full": full_value,
        "relative_quality": on_full / full_value if full_value > 0 else 1.0,
        "runtime_sparse_ms": sparse_ms if timing else 0.0,
        "runtime_full_ms": full_ms if timing else 0.0,
    }


def cmd_bench(args) -> int:
    if args.trials < 1:
        raise ValueError("need at least one trial")
    if args.k < 1:
        raise ValueError("k must be at least 1")
    epsilons = [float(tok) for tok in args.epsilons.split(",") if tok.strip()]
    if not epsilons or any(e <= 0 for e in epsilons):
        raise ValueError("epsilons must be a comma list of positive reals")
    _, F = _load_function(args)
    est = estimate_importance(F, args.pi_mode)

    t0 = time.perf_counter()
    trace_full = lazy_greedy(lambda s: F.value(s), F.n, args.k)
    full_ms = (time.perf_counter() - t0) * 1000.0
    full_value = trace_full.value

    jobs = [(eps, t, args.seed + i * args.trials + t)
            for i, eps in enumerate(epsilons) for t in range(args.trials)]
    timing = not args.no_timing

    def run(job):
        eps, t, seed = job
        return _bench_one(F, est, eps, t, seed, args.delta, args.k,
                          full_value, full_ms, timing)

    workers = max(1, int(os.environ.get("SUBMOD_THREADS", "1")))
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(run, jobs))
    else:
        rows = [run(job) for job in jobs]

    save_bench(args.out, rows)
    print(f"wrote {args.out}")
    if not args.no_figures:
        from .plotting import render_bench_figures
        for p in render_bench_figures(args.out, Path(args.out).parent):
            print(f"wrote {p}")
    return EX_OK


def cmd_plot(args) -> int:
    from .plotting import render_bench_figures
    out_dir = args.out_dir or Path(args.input).parent
    for p in render_bench_figures(args.input, out_dir):
        print(f"wrote {p}")
    return EX_OK


def build_parser() -> _Parser:
    p = _Parser(prog="submodsparse",
                description="Sparsify sums of submodular functions by "
                            "importance sampling, then optimize on the result.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    g = sub.add_parser("gen", help="generate a synthetic instance")
    gsub = g.add_subparsers(dest="family", required=True, parser_class=_Parser)
    gc = gsub.add_parser("coverage", help="random coverage instance")
    gc.add_argument("--sets", type=int, required=True)
    gc.add_argument("--universe", type=int, required=True)
    gc.add_argument("--density", type=float, required=True)
    gc.add_argument("--seed", type=int, default=0)
    gc.add_argument("--out", required=True)
    gc.set_defaults(func=cmd_gen)
    gf = gsub.add_parser("facility", help="random facility-location instance")
    gf.add_argument("--facilities", type=int, required=True)
    gf.add_argument("--clients", type=int, required=True)
    gf.add_argument("--law", choices=("uniform", "clustered"), default="uniform")
    gf.add_argument("--seed", type=int, default=0)
    gf.add_argument("--out", required=True)
    gf.set_defaults(func=cmd_gen)

    i = sub.add_parser("ingest", help="convert prepared CSV data to an instance")
    isub = i.add_subparsers(dest="kind", required=True, parser_class=_Parser)
    ic = isub.add_parser("coverage", help="bipartite edge CSV")
    ic.add_argument("--edges", required=True)
    ic.add_argument("--sets", type=int, default=None)
    ic.add_argument("--out", required=True)
    ic.set_defaults(func=cmd_ingest)
    if_ = isub.add_parser("facility", help="client/facility coordinate CSVs")
    if_.add_argument("--clients", required=True)
    if_.add_argument("--facilities", required=True)
    if_.add_argument("--out", required=True)
    if_.set_defaults(func=cmd_ingest)

    s = sub.add_parser("sparsify", help="sample a sparsifier")
    s.add_argument("--input", required=True)
    s.add_argument("--epsilon", type=float, required=True)
    s.add_argument("--delta", type=float, required=True)
    s.add_argument("--pi-mode", choices=PI_MODES, default=None)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--uniform-k", type=int, default=None)
    s.add_argument("--matroid", default=None)
    s.add_argument("--allow-large-epsilon", action="store_true")
    s.add_argument("--out", required=True)
    s.set_defaults(func=cmd_sparsify)

    m = sub.add_parser("maximize", help="greedy maximization under |S| <= k")
    m.add_argument("--input", required=True)
    m.add_argument("--weights", default=None)
    m.add_argument("--k", type=int, required=True)
    m.set_defaults(func=cmd_maximize)

    v = sub.add_parser("verify", help="check the sandwich property")
    v.add_argument("--input", required=True)
    v.add_argument("--weights", required=True)
    v.add_argument("--epsilon", type=float, required=True)
    v.add_argument("--uniform-k", type=int, default=None)
    v.add_argument("--matroid", default=None)
    v.set_defaults(func=cmd_verify)

    b = sub.add_parser("bench", help="sweep epsilons, emit CSV and figures")
    b.add_argument("--input", required=True)
    b.add_argument("--epsilons", default="0.25,0.5,1,2,4")
    b.add_argument("--trials", type=int, default=20)
    b.add_argument("--k", type=int, required=True)
    b.add_argument("--seed", type=int, default=0)
    b.add_argument("--delta", type=float, default=0.2)
    b.add_argument("--pi-mode", choices=PI_MODES, default="closed")
    b.add_argument("--no-timing", action="store_true",
                   help="write zero runtimes for byte-reproducible output")
    b.add_argument("--no-figures", action="store_true")
    b.add_argument("--out", required=True)
    b.set_defaults(func=cmd_bench)

    pl = sub.add_parser("plot", help="render figures from a benchmark CSV")
    pl.add_argument("--input", required=True)
    pl.add_argument("--out-dir", default=None)
    pl.set_defaults(func=cmd_plot)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except SystemExit as e:
        return int(e.code or 0)
    except BudgetExceededError as e:
        print(f"submodsparse: budget exceeded: {e}", file=sys.stderr)
        return EX_BUDGET
    except (ValueError, OSError) as e:
        print(f"submodsparse: error: {e}", file=sys.stderr)
        return EX_USAGE


if __name__ == "__main__":
    sys.exit(main())
