"""Command line entry point: gen, corrupt, reconstruct, test, bench."""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import bench
from .generators import CorruptionError, GenerationError, corrupt, generate
from .graph import GraphError, GraphFormatError, load_graph, save_graph
from .recon import DegenerateQuery, added_edge_count
from .supernodes import ConfigError
from .tolerant import (ToleranceParams, connectivity_spec, exact_tester, tolerant_tester)

EXIT_OK, EXIT_PARAM, EXIT_VERIFY, EXIT_IO = 0, 1, 2, 3

KIND_ALIASES = {"conn": "connected", "connected": "connected", "kconn": "kconn",
                "strong": "strong", "lowdiam": "lowdiam", "diam": "lowdiam"}


class ParamError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise ParamError(message)


def _recon_args(p, eps_name="--eps"):
    p.add_argument(eps_name, type=float, default=0.05, dest="eps")
    p.add_argument("--alpha", type=float, default=1.0)
    p.add_argument("--delta", type=float, default=0.1)
    p.add_argument("--gamma", type=float, default=0.1)
    p.add_argument("--c", type=float, default=None)
    p.add_argument("--k", type=int, default=2)
    p.add_argument("--D", type=int, default=3)
    p.add_argument("--t", type=int, default=None, help="search bound override (kconn)")
    p.add_argument("--seed", type=int, default=0)


def make_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="locrecon", description=__doc__)
    sub = ap.add_subparsers(dest="cmd", required=True, parser_class=_Parser)

    g = sub.add_parser("gen", help="generate a graph with a target property")
    g.add_argument("--kind", required=True, choices=sorted(KIND_ALIASES))
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--m", type=int, required=True)
    g.add_argument("--extra", type=int, default=None)
    g.add_argument("--k", type=int, default=2)
    g.add_argument("--D", type=int, default=3)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--out", required=True)

    c = sub.add_parser("corrupt", help="delete edges to reach a certified distance")
    c.add_argument("--property", required=True, choices=["conn", "strong", "kconn", "diam"])
    c.add_argument("--eps", type=float, required=True)
    c.add_argument("--k", type=int, default=2)
    c.add_argument("--D", type=int, default=3)
    c.add_argument("--sources", type=int, default=None)
    c.add_argument("--seed", type=int, default=0)
    c.add_argument("--in", dest="inp", required=True)
    c.add_argument("--out", required=True)

    r = sub.add_parser("reconstruct", help="query or materialize a reconstructor")
    r.add_argument("--property", required=True, choices=["conn", "strong", "kconn", "diam"])
    _recon_args(r)
    r.add_argument("--in", dest="inp", required=True)
    grp = r.add_mutually_exclusive_group(required=True)
    grp.add_argument("--query", nargs=2, type=int, metavar=("U", "V"))
    grp.add_argument("--materialize", metavar="OUT")

    t = sub.add_parser("test", help="run a tester or the tolerant tester")
    t.add_argument("--mode", required=True, choices=["tester", "tolerant"])
    t.add_argument("--property", required=True, choices=["conn", "strong", "kconn", "diam"])
    t.add_argument("--eps1", type=float, default=0.02)
    t.add_argument("--eps2", type=float, default=None)
    t.add_argument("--beta", type=float, default=0.02)
    t.add_argument("--eps-prime", type=float, default=0.05, dest="eps_prime")
    t.add_argument("--trials", type=int, default=1)
    _recon_args(t, "--eps")
    t.add_argument("--in", dest="inp", required=True)

    b = sub.add_parser("bench", help="run an experiment grid from a TOML file")
    b.add_argument("--config", required=True)
    b.add_argument("--out", required=True)
    return ap


def _build(args, graph, seed=None):
    return bench.build_reconstructor(args.property, graph, args.eps, args.alpha, args.delta,
                                     args.gamma, args.c, args.k, args.D,
                                     args.seed if seed is None else seed, args.t)


def cmd_gen(args) -> int:
    kind = KIND_ALIASES[args.kind]
    prop = {"connected": "conn", "lowdiam": "diam"}.get(kind, kind)
    extra = args.extra
    if extra is None:
        extra = bench._extra({**bench.DEFAULTS, "property": prop, "n": args.n, "m": args.m,
                              "k": args.k})
    g = generate(kind, args.n, args.m, extra, args.seed, k=args.k, D=args.D)
    save_graph(g, args.out)
    print(f"wrote {args.out}: n={g.n} edges={g.num_edges} m_bound={g.m_bound}")
    return EXIT_OK


def cmd_corrupt(args) -> int:
    g = load_graph(args.inp)
    kw = {"sources": args.sources, "sinks": args.sources} if args.sources else {}
    h, cert = corrupt(g, args.property, args.eps, args.seed, k=args.k, D=args.D, **kw)
    save_graph(h, args.out)
    Path(args.out + ".cert").write_text(cert.to_json() + "\n")
    print(f"wrote {args.out} ({cert.bound} distance {cert.pairs}/{cert.m_bound})")
    return EXIT_OK


def cmd_reconstruct(args) -> int:
    g = load_graph(args.inp)
    recon = _build(args, g)
    if args.query:
        u, v = args.query
        print(recon.query(u, v))
        print(f"queries={recon.last_query_cost}", file=sys.stderr)
        return EXIT_OK
    G = recon.materialize()
    save_graph(G, args.materialize)
    ok = bench.holds(args.property, G, args.k, args.D)
    print(f"edges_added={added_edge_count(g, G)} property_holds={int(ok)}")
    return EXIT_OK if ok else EXIT_VERIFY


def cmd_test(args) -> int:
    g = load_graph(args.inp)
    spec = connectivity_spec() if args.property == "conn" else exact_tester(args.property, args.k, args.D)
    accepts = 0
    for i in range(args.trials):
        seed = args.seed + i
        if args.mode == "tester":
            from .graph import OracleHandle
            ok = spec.procedure(OracleHandle(g), args.eps_prime, seed)
        else:
            recon = _build(args, g, seed)
            eps2 = args.eps2
            if eps2 is None:
                eps2 = recon.closeness if args.property != "diam" else 2 * args.eps1
            params = ToleranceParams(args.eps1, eps2, args.beta)
            ok = tolerant_tester(g, recon, spec, params, args.eps_prime, seed).accept
        accepts += ok
    print(f"accepted {accepts}/{args.trials}")
    return EXIT_OK


def cmd_bench(args) -> int:
    cfg = bench.load_config(args.config)
    rows = bench.run_experiment(cfg)
    bench.write_csv(rows, args.out)
    failed = sum(1 for r in rows if r.status == "error")
    print(f"wrote {len(rows)} rows to {args.out} ({failed} failed trials)")
    return EXIT_VERIFY if failed else EXIT_OK


COMMANDS = {"gen": cmd_gen, "corrupt": cmd_corrupt, "reconstruct": cmd_reconstruct,
            "test": cmd_test, "bench": cmd_bench}


def main(argv=None) -> int:
    try:
        args = make_parser().parse_args(argv)
        return COMMANDS[args.cmd](args)
    except ParamError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_PARAM
    except (ConfigError, DegenerateQuery, ValueError) as err:
        print(f"parameter error: {err}", file=sys.stderr)
        return EXIT_PARAM
    except (GraphFormatError, OSError) as err:
        print(f"i/o error: {err}", file=sys.stderr)
        return EXIT_IO
    except (GenerationError, CorruptionError, GraphError) as err:
        print(f"verification failure: {err}", file=sys.stderr)
        return EXIT_VERIFY


if __name__ == "__main__":
    sys.exit(main())
