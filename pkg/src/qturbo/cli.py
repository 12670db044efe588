"""Command line front end.

Every subcommand reads seed files in the JSON listing format (see
conv_code.load_seed). `simulate` additionally takes a turbo spec, a JSON
document wiring two seeds into a concatenated code:

    {
      "outer_seed_file": "u313.json",      // path relative to the spec file,
      "inner_seed_file": "shipped:u313",   // or a shipped seed by name
      "N_out": 64,                         // outer body length (omit if the
                                           // run passes --K-list)
      "t_out": null,                       // terminal slices, default m
      "t_in": null,
      "interleaver": {"seed": 0}           // or {"pi": [...], "k": [...]}
    }

A seeded interleaver is drawn from a generator keyed on (seed, size), so
each block length gets its own fixed permutation and the spec stays valid
across --K-list values. Tabular output is CSV on stdout unless --out is
given; diagnostics go to stderr.

Exit codes: 0 success, 2 invalid input, 3 resource budget exceeded,
4 decode-infeasible syndrome outside a Monte Carlo trial.
"""

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from qturbo.channel import depolarizing
from qturbo.conv_code import ConvEncoder, load_seed, rows_to_listing, store_seed
from qturbo.errors import (
    CatastrophicSeedError,
    ResourceBudgetError,
    SisoFailure,
    ValidationError,
)
from qturbo.montecarlo import run_wer, search_codes
from qturbo.seeds import SHIPPED, shipped_seed
from qturbo.spectrum import compute_spectrum
from qturbo.state_graph import (
    build_state_diagram,
    is_non_catastrophic,
    is_recursive,
    kernel_graph,
    kernel_graph_dot,
    state_diagram_dot,
    zero_weight_cycles,
)
from qturbo.turbo import QuantumInterleaver, TurboCode, random_interleaver


def _read_seed(path):
    if path.startswith("shipped:"):
        name = path[len("shipped:"):]
        if name not in SHIPPED:
            raise ValidationError(f"no shipped seed {name!r}; have {SHIPPED}")
        return shipped_seed(name)
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ValidationError(f"cannot read seed file {path}: {exc}") from exc
    return load_seed(text)


def _emit(text, out):
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _g(value):
    return format(float(value), ".10g")


def cmd_validate(args):
    seed = _read_seed(args.seed_file)
    diagram = build_state_diagram(seed)
    print(f"n={seed.n} k={seed.k} m={seed.m}")
    print("symplectic: ok")
    print(f"catastrophic: {'no' if is_non_catastrophic(diagram) else 'yes'}")
    print(f"recursive: {'yes' if is_recursive(diagram) else 'no'}")
    return 0


def cmd_diagram(args):
    seed = _read_seed(args.seed_file)
    diagram = build_state_diagram(seed)
    print(f"vertices: {diagram.n_vertices}")
    print(f"edges: {diagram.n_edges}")
    print(f"zero-weight cycles: {len(zero_weight_cycles(diagram))}")
    print(f"catastrophic: {'no' if is_non_catastrophic(diagram) else 'yes'}")
    if args.dot:
        Path(args.dot).write_text(state_diagram_dot(diagram))
    if args.kernel_dot:
        kg = kernel_graph(seed, diagram)
        Path(args.kernel_dot).write_text(kernel_graph_dot(kg))
    return 0


def cmd_spectrum(args):
    seed = _read_seed(args.seed_file)
    spec = compute_spectrum(seed, args.wmax)
    lines = [f"# d_free={spec.d_free}", f"# d1={spec.d1}", "w,F,F1"]
    for w in range(spec.w_max + 1):
        lines.append(f"{w},{spec.F[w]},{spec.F1[w]}")
    _emit("\n".join(lines) + "\n", args.out)
    return 0


def cmd_search(args):
    rng = np.random.default_rng(args.seed)
    found = search_codes(
        args.n, args.k, args.m, args.count, sieve_wmax=args.sieve_wmax, rng=rng
    )
    out_dir = Path(args.out_dir) if args.out_dir else None
    if out_dir is not None:
        out_dir.mkdir(parents=True, exist_ok=True)
    for i, res in enumerate(found):
        name = f"seed-{i:03d}"
        parts = [name, f"n={args.n}", f"k={args.k}", f"m={args.m}"]
        if res.spectrum is not None:
            parts.append(f"d_free={res.spectrum.d_free}")
            parts.append(f"d1={res.spectrum.d1}")
        if out_dir is not None:
            (out_dir / f"{name}.json").write_text(store_seed(res.seed) + "\n")
        else:
            ints = rows_to_listing(res.seed.u.rows, args.n, args.k, args.m)
            parts.append("rows=" + ",".join(str(v) for v in ints))
        print(" ".join(parts))
    return 0


def _build_interleaver(cfg, size):
    if "pi" in cfg:
        pi = tuple(int(v) for v in cfg["pi"])
        twists = tuple(int(v) for v in cfg.get("k", (0,) * len(pi)))
        il = QuantumInterleaver(pi, twists)
        if il.size != size:
            raise ValidationError(
                f"explicit interleaver has size {il.size}, code needs {size}"
            )
        return il
    rng = np.random.default_rng([int(cfg.get("seed", 0)), size])
    return random_interleaver(
        size, rng, identity_twists=bool(cfg.get("identity_twists", False))
    )


def _spec_seed(doc, base_dir, field):
    if field not in doc:
        raise ValidationError(f"turbo spec is missing {field!r}")
    ref = str(doc[field])
    if ref.startswith("shipped:"):
        return _read_seed(ref)
    return _read_seed(str(base_dir / ref))


def _spec_t(doc, field):
    value = doc.get(field)
    return None if value is None else int(value)


def _turbo_from_spec(doc, base_dir, n_out):
    outer = ConvEncoder(
        _spec_seed(doc, base_dir, "outer_seed_file"),
        N=n_out,
        t=_spec_t(doc, "t_out"),
    )
    inner = ConvEncoder(
        _spec_seed(doc, base_dir, "inner_seed_file"),
        N=outer.n_physical,
        t=_spec_t(doc, "t_in"),
    )
    il = _build_interleaver(doc.get("interleaver", {}), outer.n_physical)
    return TurboCode(outer, inner, il)


def cmd_simulate(args):
    spec_path = Path(args.turbo_spec)
    try:
        doc = json.loads(spec_path.read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise ValidationError(f"bad turbo spec {spec_path}: {exc}") from exc
    if not isinstance(doc, dict):
        raise ValidationError("turbo spec must be a JSON object")
    k_out = _spec_seed(doc, spec_path.parent, "outer_seed_file").k
    if args.K_list:
        for K in args.K_list:
            if K < 1 or K % k_out:
                raise ValidationError(
                    f"K={K} is not a positive multiple of k={k_out}"
                )
        K_list = args.K_list
    elif "N_out" in doc:
        K_list = [int(doc["N_out"]) * k_out]
    else:
        raise ValidationError("turbo spec has no N_out and no --K-list given")
    codes = {
        K: _turbo_from_spec(doc, spec_path.parent, n_out=K // k_out)
        for K in K_list
    }
    rows = ["p,K,trials,wer,ci_low,ci_high,qer,iterations_mean"]
    for p_idx, p in enumerate(args.p_list):
        channel = depolarizing(p)
        for k_idx, K in enumerate(K_list):
            master = int(
                np.random.SeedSequence(
                    [args.seed, p_idx, k_idx]
                ).generate_state(1, np.uint64)[0]
            )
            rep = run_wer(
                codes[K],
                channel,
                args.trials,
                iterations=args.iters,
                master_seed=master,
                extrinsic=args.extrinsic,
            )
            rows.append(
                ",".join(
                    (
                        _g(p),
                        str(K),
                        str(rep.trials),
                        _g(rep.wer),
                        _g(rep.ci_low),
                        _g(rep.ci_high),
                        _g(rep.qer),
                        _g(rep.iterations_mean),
                    )
                )
            )
    _emit("\n".join(rows) + "\n", args.out)
    return 0


def _parser():
    top = argparse.ArgumentParser(
        prog="qturbo",
        description="Quantum serial turbo-codes: inspect seeds, compute "
        "distance spectra, search for codes, simulate decoding.",
    )
    sub = top.add_subparsers(dest="command", required=True)

    seed_help = "seed JSON file, or shipped:<name> (u313, u314, u214)"

    p = sub.add_parser("validate", help="check a seed file and classify it")
    p.add_argument("seed_file", help=seed_help)
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("diagram", help="state-diagram statistics and DOT")
    p.add_argument("seed_file", help=seed_help)
    p.add_argument("--dot", metavar="PATH", help="write the state diagram")
    p.add_argument(
        "--kernel-dot", metavar="PATH", help="write the kernel graph"
    )
    p.set_defaults(func=cmd_diagram)

    p = sub.add_parser("spectrum", help="distance spectrum as CSV")
    p.add_argument("seed_file", help=seed_help)
    p.add_argument("--wmax", type=int, required=True)
    p.add_argument("--out", metavar="PATH")
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("search", help="draw non-catastrophic random seeds")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--count", type=int, required=True)
    p.add_argument(
        "--sieve-wmax",
        type=int,
        help="rank candidates by distance spectrum up to this weight",
    )
    p.add_argument("--seed", type=int, default=0)
    p.add_argument(
        "--out-dir", metavar="DIR", help="write one JSON file per seed"
    )
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("simulate", help="Monte Carlo error rates as CSV")
    p.add_argument("turbo_spec", help="turbo spec JSON file")
    p.add_argument(
        "--p-list", type=float, nargs="+", required=True, dest="p_list"
    )
    p.add_argument(
        "--K-list",
        type=int,
        nargs="+",
        dest="K_list",
        help="encoded-qubit counts; overrides the spec's N_out",
    )
    p.add_argument("--trials", type=int, required=True)
    p.add_argument("--iters", type=int, default=20)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--extrinsic", action="store_true")
    p.add_argument("--out", metavar="PATH")
    p.set_defaults(func=cmd_simulate)

    return top


def main(argv=None):
    args = _parser().parse_args(argv)
    try:
        return args.func(args)
    except (ValidationError, CatastrophicSeedError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ResourceBudgetError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except SisoFailure as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 4


if __name__ == "__main__":
    sys.exit(main())
