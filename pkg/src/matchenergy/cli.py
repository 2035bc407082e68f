"""Command line interface: ``matchenergy <subcommand> ...``."""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from . import experiments as ex
from . import graph as gr
from . import semicircle
from .emd import EmpiricalDistribution
from .errors import MatchEnergyError
from .mpoly import MatchingPolynomial, closed_form, matching_polynomial
from .roots import matching_energy, matching_roots, normalize, spectrum_of_graph
from .treewalk import count_tree_like, power_sums

FAMILIES = ("path", "cycle", "complete", "star", "empty", "gnp", "tree")


def _ints(text: str) -> list[int]:
    return [int(t) for t in text.split(",") if t.strip()]


def _floats(text: str) -> list[float]:
    return [float(t) for t in text.split(",") if t.strip()]


def _add_graph_args(p: argparse.ArgumentParser) -> None:
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--graph", help="edge-list file ('-' for stdin)")
    src.add_argument("--family", choices=FAMILIES)
    p.add_argument("--n", type=int, help="order for --family")
    p.add_argument("--gnp-p", type=float, default=0.5, help="edge probability for --family gnp")
    p.add_argument("--seed", type=int, default=0, help="seed for --family gnp/tree")


def _load_graph(args) -> gr.Graph:
    if args.graph is not None:
        text = sys.stdin.read() if args.graph == "-" else Path(args.graph).read_text()
        return gr.read_edge_list(text)
    if args.n is None:
        raise SystemExit("--family needs --n")
    fam, n = args.family, args.n
    if fam == "gnp":
        return gr.gen_gnp(n, args.gnp_p, args.seed)
    if fam == "tree":
        return gr.random_tree(n, args.seed)
    if fam == "empty":
        return gr.Graph.empty(n)
    return getattr(gr, fam)(n)


def _emit(obj) -> None:
    print(json.dumps(obj))


def cmd_mpoly(args) -> None:
    if args.engine == "closed":
        if args.family not in ("path", "cycle", "complete") or args.n is None:
            raise SystemExit("--engine closed needs --family path|cycle|complete and --n")
        poly = closed_form(args.family, args.n)
    else:
        poly = matching_polynomial(_load_graph(args), args.engine)
    _emit(poly.to_json())


def cmd_energy(args) -> None:
    spec = spectrum_of_graph(_load_graph(args), tol=args.tol)
    _emit({"me": matching_energy(spec), "roots": spec.roots.tolist()})


def cmd_roots(args) -> None:
    coeffs = _ints(args.coeffs)
    n = args.n if args.n is not None else 2 * (len(coeffs) - 1)
    spec = matching_roots(MatchingPolynomial(n, tuple(coeffs)), args.tol)
    _emit({"n": n, "roots": spec.roots.tolist(), "me": matching_energy(spec)})


def cmd_semicircle(args) -> None:
    out = []
    if args.density is not None:
        out.append(semicircle.density(args.density))
    if args.cdf is not None:
        out.append(semicircle.cdf(args.cdf))
    if args.moment is not None:
        out.append(float(semicircle.moment(args.moment)))
    if args.abs_moment:
        out.append(semicircle.abs_moment())
    if not out:
        raise SystemExit("give at least one of --density, --cdf, --moment, --abs-moment")
    for value in out:
        print(repr(value))


def cmd_emd(args) -> None:
    g = _load_graph(args)
    dist = EmpiricalDistribution.from_spectrum(normalize(spectrum_of_graph(g), g.n, args.p))
    result = {"mean_abs": dist.mean_abs()}
    if args.moments:
        result["moments"] = {str(k): dist.moment(k) for k in _ints(args.moments)}
    if args.ks:
        result["ks"] = dist.ks_distance()
    _emit(result)


def cmd_walks(args) -> None:
    g = _load_graph(args)
    result = {"k": args.k}
    if args.method in ("enumerate", "both"):
        result["enumerate"] = count_tree_like(g, args.k)
    if args.method in ("powersum", "both"):
        result["powersum"] = power_sums(matching_polynomial(g), args.k)[args.k - 1] if args.k else g.n
    if args.method == "both":
        result["match"] = result["enumerate"] == result["powersum"]
    _emit(result)


def _config_from_args(args) -> ex.ExperimentConfig:
    if args.config:
        cfg = ex.ExperimentConfig.from_json(Path(args.config).read_text())
    else:
        if not args.n or not args.p:
            raise SystemExit("experiment needs --config or --n and --p")
        cfg = ex.ExperimentConfig(
            name=args.name, n_list=_ints(args.n), p_list=_floats(args.p),
            trials=args.trials, master_seed=args.seed, engine=args.engine,
            output_path=args.out,
        )
    if args.workers:
        cfg.workers = args.workers
    if args.out:
        cfg.output_path = args.out
    return cfg


def cmd_experiment(args) -> None:
    kind = args.kind
    if kind == "kn":
        result = ex.run_kn_asymptotics(args.n_min, args.n_max, args.step)
        out = args.out or "kn_asymptotics.csv"
    elif kind == "godsil":
        result = ex.run_godsil_verification(args.n_max_godsil, args.k_max, args.corpus_size, args.seed)
        out = args.out or "godsil.csv"
    else:
        cfg = _config_from_args(args)
        runner = {
            "convergence": ex.run_convergence,
            "lower-bound": ex.run_lower_bound,
            "variance": ex.run_variance_decay,
        }[kind]
        result = runner(cfg)
        out = cfg.output_path or f"{cfg.name}.csv"
    csv_path, json_path = result.write(out)
    print(f"{csv_path}\n{json_path}")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="matchenergy", description=__doc__)
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("mpoly", help="matching numbers m_k as JSON")
    _add_graph_args(p)
    p.add_argument("--engine", default="auto",
                   choices=("auto", "dp", "recursion", "forest", "complement", "closed"))
    p.set_defaults(func=cmd_mpoly)

    p = sub.add_parser("energy", help="matching energy and roots")
    _add_graph_args(p)
    p.add_argument("--tol", type=float, default=1e-10)
    p.set_defaults(func=cmd_energy)

    p = sub.add_parser("roots", help="roots from a coefficient vector m_0,m_1,...")
    p.add_argument("--coeffs", required=True, help="comma-separated m_0,m_1,...")
    p.add_argument("--n", type=int, help="graph order (default 2*(len-1))")
    p.add_argument("--tol", type=float, default=1e-10)
    p.set_defaults(func=cmd_roots)

    p = sub.add_parser("semicircle", help="semicircle reference values")
    p.add_argument("--density", type=float)
    p.add_argument("--cdf", type=float)
    p.add_argument("--moment", type=int)
    p.add_argument("--abs-moment", action="store_true")
    p.set_defaults(func=cmd_semicircle)

    p = sub.add_parser("emd", help="empirical matching distribution statistics")
    _add_graph_args(p)
    p.add_argument("--p", type=float, required=True, help="normalising probability")
    p.add_argument("--moments", default="", help="comma-separated orders")
    p.add_argument("--ks", action="store_true")
    p.set_defaults(func=cmd_emd)

    p = sub.add_parser("walks", help="tree-like closed walk counts")
    _add_graph_args(p)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--method", choices=("enumerate", "powersum", "both"), default="both")
    p.set_defaults(func=cmd_walks)

    p = sub.add_parser("experiment", help="run an experiment, write CSV + JSON")
    p.add_argument("--kind", default="convergence",
                   choices=("convergence", "lower-bound", "variance", "kn", "godsil"))
    p.add_argument("--config", help="JSON ExperimentConfig")
    p.add_argument("--name", default="experiment")
    p.add_argument("--n", help="comma-separated orders")
    p.add_argument("--p", help="comma-separated probabilities")
    p.add_argument("--trials", type=int, default=200)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--engine", default="auto")
    p.add_argument("--workers", type=int, default=0)
    p.add_argument("--out")
    p.add_argument("--n-min", type=int, default=200)
    p.add_argument("--n-max", type=int, default=2000)
    p.add_argument("--step", type=int, default=10)
    p.add_argument("--n-max-godsil", type=int, default=7)
    p.add_argument("--k-max", type=int, default=8)
    p.add_argument("--corpus-size", type=int, default=500)
    p.set_defaults(func=cmd_experiment)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        args.func(args)
    except MatchEnergyError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0
