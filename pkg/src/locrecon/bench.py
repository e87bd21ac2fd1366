"""Experiment runner: generate, corrupt, reconstruct, verify, write CSV."""
from __future__ import annotations

import csv
import io
import itertools
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, fields
from pathlib import Path

try:
    import tomllib
except ModuleNotFoundError:          # python < 3.11
    import tomli as tomllib

from . import exact as ex
from .connect import ConnConfig, Connected, ModConnected
from .diameter import DiamConfig, SmallDiameter
from .generators import corrupt, generate
from .kconn import KConnConfig, KConnected
from .rand import RandomSource
from .recon import added_edge_count
from .strong import StrongConnConfig, StronglyConnected
from .supernodes import ConfigError

GEN_KIND = {"conn": "connected", "strong": "strong", "kconn": "kconn", "diam": "lowdiam"}

DEFAULTS = {
    "property": "conn", "n": 200, "m": 400, "eps": 0.05, "alpha": 1.0, "delta": 0.2,
    "gamma": 0.1, "c": None, "k": 2, "D": 3, "t": None, "seed": 0, "trials": 10,
    "extra": None, "mode": "materialize", "queries": 1000, "sources": None,
    "components": None, "workers": 1, "record_time": False,
}


@dataclass
class TrialRecord:
    trial_id: str
    property: str
    n: int
    m_bound: int
    eps: float
    alpha: float
    delta: float
    gamma: float
    c: float
    k: int
    D: int
    seed: int
    property_holds: object
    edges_added: object
    bound: float
    within_bound: object
    max_queries: int
    wall_ms: object
    status: str = "ok"
    detail: str = ""


COLUMNS = [f.name for f in fields(TrialRecord)]


def build_reconstructor(prop: str, graph, eps, alpha=1.0, delta=0.1, gamma=0.1, c=None,
                        k=2, D=3, seed=0, t=None):
    if prop == "conn":
        cfg = ConnConfig(eps=eps, alpha=alpha, delta=delta, seed=seed, c=c)
        return ModConnected(graph, cfg) if c else Connected(graph, cfg)
    if prop == "strong":
        return StronglyConnected(graph, StrongConnConfig(eps=eps, alpha=alpha, delta=delta, seed=seed))
    if prop == "kconn":
        cfg = KConnConfig(eps=eps, alpha=alpha, delta=delta, gamma=gamma, c=c or 0.1,
                          k=k, seed=seed, t=t)
        return KConnected(graph, cfg)
    if prop == "diam":
        return SmallDiameter(graph, DiamConfig(eps=eps, alpha=alpha, delta=delta,
                                               c=c or 0.05, D=D, seed=seed))
    raise ConfigError(f"unknown property {prop!r}")


def edge_bound(prop, m, eps, alpha, c, k) -> float:
    """Added-edge allowance per property (diameter: edges beyond G')."""
    if prop == "conn":
        return (1 + alpha) * eps * m
    if prop == "strong":
        return (4 + alpha) * eps * m
    if prop == "kconn":
        return (2 + alpha) * k * eps * m + (c or 0.1) * k * m / 2
    return 2 * eps * m + 1


def holds(prop, g, k=2, D=3) -> bool:
    if prop == "conn":
        return ex.is_connected(g)
    if prop == "strong":
        return ex.is_strongly_connected(g)
    if prop == "kconn":
        return ex.edge_connectivity(g) >= k
    return ex.exact_diameter(g) <= D


def wilson(successes: int, trials: int, z: float = 1.96) -> tuple[float, float]:
    if trials == 0:
        return 0.0, 1.0
    p = successes / trials
    den = 1 + z * z / trials
    mid = (p + z * z / (2 * trials)) / den
    half = z * math.sqrt(p * (1 - p) / trials + z * z / (4 * trials * trials)) / den
    return max(0.0, mid - half), min(1.0, mid + half)


def load_config(path) -> dict:
    with open(path, "rb") as fh:
        return tomllib.load(fh)


def expand_grid(cfg: dict) -> list[dict]:
    """Cartesian product over every list-valued key."""
    base = dict(DEFAULTS)
    base.update(cfg)
    axes = [key for key, val in base.items() if isinstance(val, list)]
    out = []
    for combo in itertools.product(*(base[a] for a in axes)):
        point = dict(base)
        point.update(zip(axes, combo))
        out.append(point)
    return out


def _extra(p):
    if p["extra"] is not None:
        return int(p["extra"])
    n, m = p["n"], p["m"]
    if p["property"] == "kconn":
        return max(0, (m - n * ((p["k"] + 1) // 2)) // 2)
    return max(0, m - n) if p["property"] != "diam" else max(0, m // 3)


def run_trial(p: dict, index: int) -> TrialRecord:
    prop, n, m = p["property"], p["n"], p["m"]
    seed = int(p["seed"]) + index
    c = p["c"]
    rec = TrialRecord(str(index), prop, n, m, p["eps"], p["alpha"], p["delta"], p["gamma"],
                      c if c is not None else "", p["k"], p["D"], seed,
                      "", "", edge_bound(prop, m, p["eps"], p["alpha"], c, p["k"]), "", 0, "")
    start = time.perf_counter()
    try:
        g = generate(GEN_KIND[prop], n, m, _extra(p), seed, k=p["k"], D=p["D"])
        extra = {}
        if prop == "strong" and p["sources"]:
            extra = {"sources": p["sources"], "sinks": p["sources"]}
        if prop == "conn" and p["components"]:
            extra = {"components": p["components"]}
        h, cert = corrupt(g, prop, p["eps"], seed, k=p["k"], D=p["D"], **extra)
        recon = build_reconstructor(prop, h, p["eps"], p["alpha"], p["delta"], p["gamma"],
                                    c, p["k"], p["D"], seed, p["t"])
        if p["mode"] == "query":
            src = RandomSource(seed, "bench-queries")
            for i in range(int(p["queries"])):
                u = 1 + int(src.value(i, 0) * n) % n
                v = 1 + int(src.value(i, 1) * n) % n
                if u != v:
                    recon.edge(u, v)
        else:
            G = recon.materialize()
            rec.property_holds = holds(prop, G, p["k"], p["D"])
            base = recon.base.materialize() if prop == "diam" else h
            rec.edges_added = added_edge_count(base, G)
            rec.within_bound = rec.edges_added <= rec.bound
        rec.max_queries = recon.max_query_cost
        rec.detail = f"cert={cert.pairs}/{cert.m_bound}:{cert.bound}"
    except Exception as err:          # recorded, never swallowed silently
        rec.status = "error"
        rec.detail = f"{type(err).__name__}: {err}"
    if p["record_time"]:
        rec.wall_ms = round((time.perf_counter() - start) * 1000, 3)
    return rec


def _run_point(args):
    p, index = args
    return run_trial(p, index)


def summarize(records: list[TrialRecord], p: dict, label: str = "summary") -> TrialRecord:
    ok = [r for r in records if r.status == "ok"]
    held = sum(1 for r in ok if r.property_holds is True)
    within = sum(1 for r in ok if r.within_bound is True)
    lo_h, hi_h = wilson(held, len(ok))
    lo_w, hi_w = wilson(within, len(ok))
    c = p["c"]
    return TrialRecord(
        label, p["property"], p["n"], p["m"], p["eps"], p["alpha"], p["delta"], p["gamma"],
        c if c is not None else "", p["k"], p["D"], p["seed"],
        held / len(ok) if ok else "", "", records[0].bound if records else "",
        within / len(ok) if ok else "", max((r.max_queries for r in ok), default=0), "",
        "ok" if len(ok) == len(records) else "partial",
        f"trials={len(records)} failed={len(records) - len(ok)} "
        f"holds_ci=[{lo_h:.9g},{hi_h:.9g}] within_ci=[{lo_w:.9g},{hi_w:.9g}]")


def run_experiment(cfg: dict) -> list[TrialRecord]:
    rows: list[TrialRecord] = []
    for gi, p in enumerate(expand_grid(cfg)):
        jobs = [(p, i) for i in range(int(p["trials"]))]
        if int(p["workers"]) > 1:
            with ProcessPoolExecutor(int(p["workers"])) as pool:
                recs = list(pool.map(_run_point, jobs))
        else:
            recs = [_run_point(j) for j in jobs]
        for r in recs:
            r.trial_id = f"{gi}:{r.trial_id}"
        rows.extend(recs)
        rows.append(summarize(recs, p, f"{gi}:summary"))
    return rows


def _fmt(v):
    if isinstance(v, bool):
        return str(int(v))
    if isinstance(v, float):
        return f"{v:.9g}"
    return "" if v is None else str(v)


def records_to_csv(records: list[TrialRecord]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(COLUMNS)
    for r in records:
        w.writerow([_fmt(getattr(r, col)) for col in COLUMNS])
    return buf.getvalue()


def write_csv(records, path) -> None:
    Path(path).write_text(records_to_csv(records))
