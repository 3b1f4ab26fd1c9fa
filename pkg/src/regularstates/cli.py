"""Command-line interface.

Exit codes: 0 success (or check passed), 1 internal error or failed check,
2 invalid input or unmet precondition.
"""

from __future__ import annotations

import argparse
import json
import sys
from math import pi

import numpy as np

from . import constructions as C
from .complete import probability_complete
from .graph import Graph, GraphError, complete_graph, dumps, loads
from .rankdp import probability_via_decomposition, sample_via_chain
from .scan import phase_scan, rows_to_csv, rows_to_json
from .statevector import (
    LocalRotations,
    check_deletion_projector,
    check_lc_unitary,
    probability,
    sample,
)
from .transform import (
    DELETE,
    LC,
    RewriteStep,
    apply_pipeline,
    duality_reduction,
    hard_family_reduction,
)
from .width import RankDecomposition, entanglement_width, exact_limit, heuristic_rank_decomposition

ENGINES = ("oracle", "complete-fast", "rankdp")


class UsageError(Exception):
    """Invalid input; reported with exit status 2."""


def _num(x: float) -> str:
    return format(float(x), ".17g")


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path) as fh:
            return fh.read()
    except OSError as exc:
        raise UsageError(str(exc)) from None


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _graph(args) -> Graph:
    if not args.graph:
        raise UsageError("--graph FILE is required")
    return loads(_read(args.graph))


def _rotations(args, n: int) -> LocalRotations:
    if not getattr(args, "rotations", None):
        return LocalRotations.identity(n)
    rot = LocalRotations.from_json(_read(args.rotations))
    if rot.n != n:
        raise UsageError(f"rotations file covers {rot.n} qubits, graph has {n}")
    return rot


def _decomposition(args, g: Graph) -> RankDecomposition:
    if getattr(args, "decomposition", None):
        return RankDecomposition.from_json_obj(json.loads(_read(args.decomposition)), g)
    return heuristic_rank_decomposition(g, effort=1, seed=args.seed or 0).decomposition


def _oracle_limit(args) -> int | None:
    return getattr(args, "oracle_limit", None)


# -- subcommands -------------------------------------------------------------

def cmd_construct(args) -> int:
    fam = args.family
    need = {
        "complete": ("n",), "matching": ("n",), "cycle": ("n",), "co-matching": ("n",), "co-cycle": ("n",),
        "easy": ("n", "k"), "hard": ("n", "k"), "double-torus": ("m", "k"),
        "square-torus": ("rows",), "hexagonal-torus": ("rows",), "grid": ("rows",), "hexagonal": ("rows",),
    }[fam]
    for name in need:
        if getattr(args, name) is None:
            raise UsageError(f"--{name} is required for family {fam}")
    n = args.n
    if fam == "complete":
        g = complete_graph(n)
    elif fam in ("matching", "cycle", "co-matching", "co-cycle"):
        k = {"matching": 1, "cycle": 2, "co-matching": n - 2, "co-cycle": n - 3}[fam]
        g = C.build_regular_easy(n, k)
    elif fam == "easy":
        g = C.build_regular_easy(n, args.k)
    elif fam == "hard":
        g = C.build_hard_family(n, args.k)
    elif fam == "double-torus":
        g = C.build_double_torus(args.m, args.k)
    else:
        cols = args.cols if args.cols is not None else args.rows
        lattice = "hexagonal" if fam.startswith("hexagonal") else "square"
        boundary = "torus" if fam.endswith("torus") else "open"
        g = C.build_lattice(C.LatticeShape(args.rows, cols, lattice, boundary))
    _emit(dumps(g, args.format), args.out)
    return 0


def _parse_steps(text: str) -> list[RewriteStep]:
    """``lc:LABEL`` / ``del:LABEL`` items separated by ``;``, or a JSON step list."""
    text = text.strip()
    if text.startswith("["):
        return [RewriteStep(s["kind"], str(s["target"])) for s in json.loads(text)]
    steps = []
    for item in filter(None, (s.strip() for s in text.split(";"))):
        kind, _, target = item.partition(":")
        kinds = {"lc": LC, "del": DELETE, "delete": DELETE}
        if kind not in kinds or not target:
            raise UsageError(f"bad step {item!r}; expected lc:LABEL or del:LABEL")
        steps.append(RewriteStep(kinds[kind], target))
    return steps


def cmd_transform(args) -> int:
    g = _graph(args)
    cert = apply_pipeline(g, _parse_steps(args.steps))
    _emit(json.dumps(cert.to_json_obj()) + "\n", args.out)
    return 0


def cmd_prob(args) -> int:
    g = _graph(args)
    rot = _rotations(args, g.n)
    x = args.x
    if x is None or len(x) != g.n or set(x) - {"0", "1"}:
        raise UsageError(f"--x must be a {g.n}-bit string (qubit 0 first)")
    if args.engine == "complete-fast":
        if g.m != g.n * (g.n - 1) // 2:
            raise UsageError("complete-fast engine only applies to complete graphs")
        p = probability_complete(g.n, rot, x, args.edge_phase)
    elif args.edge_phase != pi:
        if args.engine != "oracle":
            raise UsageError("--edge-phase other than pi needs the oracle or complete-fast engine")
        p = probability(g, rot, x, edge_phase=args.edge_phase, limit=_oracle_limit(args))
    elif args.engine == "oracle":
        p = probability(g, rot, x, limit=_oracle_limit(args))
    else:
        p = probability_via_decomposition(g, _decomposition(args, g), rot, x)
    sys.stdout.write(f'{{"p": {_num(p)}}}\n')
    return 0


def cmd_sample(args) -> int:
    g = _graph(args)
    rot = _rotations(args, g.n)
    if args.count is None or args.count < 0:
        raise UsageError("--count N (N >= 0) is required")
    seed = args.seed or 0
    if args.engine == "oracle":
        out = sample(g, rot, args.count, seed, limit=_oracle_limit(args))
    elif args.engine == "rankdp":
        out = sample_via_chain(g, _decomposition(args, g), rot, args.count, seed)
    else:
        raise UsageError("sampling is available from the oracle and rankdp engines")
    _emit(json.dumps(out) + "\n", args.out)
    return 0


def cmd_width(args) -> int:
    g = _graph(args)
    report = entanglement_width(g, args.exact_limit, args.effort, args.seed or 0)
    obj = {"width": report.value, "exact": report.exact, "decomposition": report.decomposition.to_json_obj(g)}
    _emit(json.dumps(obj) + "\n", args.out)
    return 0


def _random_instances(count: int, n: int, seed: int):
    rng = np.random.default_rng(seed)
    for _ in range(count):
        p = rng.uniform(0.2, 0.8)
        edges = [(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < p]
        yield C.make_graph(n, edges), int(rng.integers(n))


def cmd_verify(args) -> int:
    check = args.check
    report: dict = {"check": check}
    if check in ("duality", "hard-reduction"):
        if check == "duality":
            if args.m is None or args.m < 3:
                raise UsageError("verify duality needs --m >= 3")
            cert = duality_reduction(args.m)
        else:
            if args.n is None or args.k is None:
                raise UsageError("verify hard-reduction needs --n and --k")
            cert = hard_family_reduction(C.build_hard_family(args.n, args.k))
        ok = cert.verified
        report.update(steps=len(cert.steps), final_n=cert.final.n, final_m=cert.final.m, passed=ok)
        if args.out:
            _emit(json.dumps(cert.to_json_obj()) + "\n", args.out)
    else:
        if args.graph:
            g = _graph(args)
            if args.vertex is None:
                raise UsageError("--vertex is required with --graph")
            cases = [(g, g.index(args.vertex if not args.vertex.isdigit() else int(args.vertex)))]
        else:
            if args.n is None:
                raise UsageError(f"verify {check} needs --graph/--vertex or --random N --n N")
            cases = list(_random_instances(args.random, args.n, args.seed or 0))
        limit = _oracle_limit(args)
        if check == "lc":
            fids = [check_lc_unitary(g, v, limit) for g, v in cases]
            ok = min(fids) >= 1 - 1e-10
            report.update(cases=len(cases), min_fidelity=float(_num(min(fids))), passed=ok)
        else:
            res = [check_deletion_projector(g, v, limit) for g, v in cases]
            ok = max(res) <= 1e-10
            report.update(cases=len(cases), max_residual=float(_num(max(res))), passed=ok)
    sys.stdout.write(json.dumps(report) + "\n")
    return 0 if ok else 1


def cmd_phase_scan(args) -> int:
    if (args.n is None) == (args.m is None):
        raise UsageError("give exactly one of --n or --m (n = 2 m^2)")
    n = args.n if args.n is not None else 2 * args.m * args.m
    ks = None
    if args.k_min is not None or args.k_max is not None:
        ks = range(args.k_min or 1, (args.k_max if args.k_max is not None else n - 1) + 1)
    rows = phase_scan(n, ks, args.exact_limit, args.effort, args.seed or 0, args.jobs)
    text = rows_to_json(rows) if args.format == "json" else rows_to_csv(rows)
    _emit(text, args.out)
    return 0


# -- parser ----------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="regularstates", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, graph=True):
        if graph:
            sp.add_argument("--graph", help="graph file (JSON or edge list; '-' for stdin)")
        sp.add_argument("--out", help="write the primary output here instead of stdout")
        sp.add_argument("--seed", type=int, default=0, help="64-bit unsigned seed")
        return sp

    sp = common(sub.add_parser("construct", help="build a graph family"), graph=False)
    sp.add_argument("--family", required=True, choices=[
        "complete", "matching", "cycle", "co-matching", "co-cycle", "easy", "hard", "double-torus",
        "square-torus", "hexagonal-torus", "grid", "hexagonal"])
    for name in ("n", "k", "m", "rows", "cols"):
        sp.add_argument(f"--{name}", type=int)
    sp.add_argument("--format", default="json", choices=["json", "edgelist", "dot"])
    sp.set_defaults(func=cmd_construct)

    sp = common(sub.add_parser("transform", help="apply LC / deletion steps and print the certificate"))
    sp.add_argument("--steps", required=True, help="e.g. 'lc:0,0;del:0,1' or a JSON step list")
    sp.set_defaults(func=cmd_transform)

    for name, func in (("prob", cmd_prob), ("sample", cmd_sample)):
        sp = common(sub.add_parser(name, help=f"{name} of measurement outcomes"))
        sp.add_argument("--rotations", help="rotations JSON (default: identity)")
        sp.add_argument("--engine", choices=ENGINES, default="oracle")
        sp.add_argument("--decomposition", help="decomposition JSON for the rankdp engine")
        sp.add_argument("--oracle-limit", type=int, dest="oracle_limit")
        if name == "prob":
            sp.add_argument("--x", help="outcome bits, qubit 0 first")
            sp.add_argument("--edge-phase", type=float, default=pi, dest="edge_phase")
        else:
            sp.add_argument("--count", type=int)
        sp.set_defaults(func=func)

    sp = common(sub.add_parser("width", help="entanglement (rank) width with a witness decomposition"))
    sp.add_argument("--exact-limit", type=int, default=None, dest="exact_limit")
    sp.add_argument("--effort", type=int, default=1, choices=[0, 1, 2])
    sp.set_defaults(func=cmd_width)

    sp = common(sub.add_parser("verify", help="check a reduction or a Clifford identity"))
    sp.add_argument("check", choices=["duality", "lc", "deletion", "hard-reduction"])
    for name in ("m", "n", "k"):
        sp.add_argument(f"--{name}", type=int)
    sp.add_argument("--random", type=int, default=100, help="number of random instances")
    sp.add_argument("--vertex")
    sp.add_argument("--oracle-limit", type=int, dest="oracle_limit")
    sp.set_defaults(func=cmd_verify)

    sp = common(sub.add_parser("phase-scan", help="width of the canonical witness for each k"), graph=False)
    sp.add_argument("--n", type=int)
    sp.add_argument("--m", type=int)
    sp.add_argument("--k-min", type=int, dest="k_min")
    sp.add_argument("--k-max", type=int, dest="k_max")
    sp.add_argument("--exact-limit", type=int, default=None, dest="exact_limit")
    sp.add_argument("--effort", type=int, default=1, choices=[0, 1, 2])
    sp.add_argument("--jobs", type=int, default=1)
    sp.add_argument("--format", default="csv", choices=["csv", "json"])
    sp.set_defaults(func=cmd_phase_scan)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "exact_limit", "absent") is None:
        args.exact_limit = exact_limit()
    if args.seed is not None and not 0 <= args.seed < 2**64:
        print("error: --seed must be a 64-bit unsigned integer", file=sys.stderr)
        return 2
    try:
        return args.func(args)
    except (UsageError, GraphError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:  # noqa: BLE001
        print(f"internal error: {exc!r}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
