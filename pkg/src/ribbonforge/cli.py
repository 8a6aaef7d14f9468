"""Command line harness: verify family structure, classify ribbon elements,
and sweep parameter grids with persisted JSON reports."""

import argparse
import json
import os
import sys
import tempfile
from dataclasses import dataclass

from .double import (
    build_double,
    drinfeld_u,
    verify_dual_basis_formula,
    verify_quasitriangular,
    verify_u_comult,
)
from .hopf import HopfError, coopposite, dual_hopf, verify_hopf_axioms
from .radford import build_radford, build_taft
from .ribbon import classify_ribbon

DEFAULT_BUDGET = 2000
SWEEP_SCHEMA = "ribbonforge-sweep-v1"
VERIFY_SCHEMA = "ribbonforge-verify-v1"


@dataclass
class RunConfig:
    command: str
    family: str = "radford"
    m: int = 0
    n: int = 0
    m_range: tuple = ()
    n_range: tuple = ()
    depth: str = None
    full_bound: int = 400
    out_dir: str = None
    fmt: str = "text"
    seed: int = 0
    budget: int = DEFAULT_BUDGET
    force: bool = False
    jobs: int = 1

    def __post_init__(self):
        if self.full_bound < 1:
            raise ValueError("full-check bound must be >= 1")
        if self.command == "sweep" and (not self.m_range or not self.n_range):
            raise ValueError("sweep ranges must be nonempty")


class UsageError(Exception):
    pass


def _json_text(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def _write_atomic(path: str, text: str):
    directory = os.path.dirname(os.path.abspath(path))
    os.makedirs(directory, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        try:
            os.unlink(tmp)
        except OSError:
            pass
        raise


def _parse_range(text: str) -> tuple:
    """Inclusive integer range "A..B", or a single integer "A"."""
    if ".." in text:
        lo, _, hi = text.partition("..")
        try:
            a, b = int(lo), int(hi)
        except ValueError:
            raise UsageError(f"bad range {text!r}, expected A..B")
        if b < a:
            raise UsageError(f"empty range {text!r}")
        return tuple(range(a, b + 1))
    try:
        return (int(text),)
    except ValueError:
        raise UsageError(f"bad range {text!r}, expected A..B")


def _build_family(family: str, m, n):
    if family == "radford":
        if m is None or n is None:
            raise UsageError("radford needs both m and n")
        if m < 2:
            raise UsageError("radford needs m >= 2")
        if n < 1:
            raise UsageError("radford needs n >= 1")
        return build_radford(m, n)
    if family == "taft":
        if n is not None:
            raise UsageError("taft takes a single parameter n")
        if m < 2:
            raise UsageError("taft needs n >= 2")
        return build_taft(m)
    raise UsageError(f"unknown family {family!r}")


# ---------------------------------------------------------------------------
# verify


def cmd_verify(cfg: RunConfig) -> int:
    H = _build_family(cfg.family, cfg.m, cfg.n if cfg.family == "radford" else None)
    m = H.meta["m"]
    n = H.meta["n"]
    checks = []

    def add(name, ok, payload=None):
        entry = {"name": name, "ok": bool(ok)}
        if payload is not None:
            entry["report"] = payload
        checks.append(entry)

    rep = verify_hopf_axioms(H, depth=cfg.depth, full_bound=cfg.full_bound)
    add("base_axioms", rep.ok, rep.to_dict())
    Hd = dual_hopf(H)
    rep = verify_hopf_axioms(Hd, depth=cfg.depth, full_bound=cfg.full_bound)
    add("dual_axioms", rep.ok, rep.to_dict())
    rep = verify_hopf_axioms(
        coopposite(Hd), depth=cfg.depth, full_bound=cfg.full_bound
    )
    add("dual_coopposite_axioms", rep.ok, rep.to_dict())

    if cfg.family == "radford":
        from .radford import verify_dual_structure

        rep = verify_dual_structure(m, n)
        add("dual_structure", rep.ok, rep.to_dict())
        add("dual_basis_formula", verify_dual_basis_formula(m, n))

    D = build_double(H)
    rep = verify_hopf_axioms(D.algebra, depth=cfg.depth, full_bound=cfg.full_bound)
    add("double_axioms", rep.ok, rep.to_dict())
    rep = verify_quasitriangular(D, depth=cfg.depth, full_bound=cfg.full_bound)
    add("quasitriangular", rep.ok, rep.to_dict())
    try:
        u, _ = drinfeld_u(D, depth=cfg.depth, full_bound=cfg.full_bound)
        add("drinfeld_u_conjugation", True)
        add("drinfeld_u_comultiplication", verify_u_comult(D, u))
    except HopfError as exc:
        add("drinfeld_u_conjugation", False, str(exc))

    ok = all(c["ok"] for c in checks)
    report = {
        "schema": VERIFY_SCHEMA,
        "family": cfg.family,
        "m": m,
        "n": n,
        "depth": cfg.depth or "auto",
        "checks": checks,
        "ok": ok,
    }
    if cfg.fmt == "json" and not cfg.out_dir:
        sys.stdout.write(_json_text(report))
    else:
        for c in checks:
            print(f"{c['name']}: {'ok' if c['ok'] else 'FAIL'}")
        print(f"verify {H.name}: {'all checks passed' if ok else 'FAILED'}")
    if cfg.out_dir:
        tag = f"{cfg.family}-m{m}-n{n}"
        if cfg.fmt == "json":
            path = os.path.join(cfg.out_dir, f"verify-{tag}.json")
            _write_atomic(path, _json_text(report))
        else:
            lines = [f"{c['name']}: {'ok' if c['ok'] else 'FAIL'}" for c in checks]
            lines.append(f"verify {H.name}: {'all checks passed' if ok else 'FAILED'}")
            path = os.path.join(cfg.out_dir, f"verify-{tag}.txt")
            _write_atomic(path, "\n".join(lines) + "\n")
        print(f"report written to {path}")
    return 0 if ok else 1


# ---------------------------------------------------------------------------
# ribbon


def _ribbon_report_dict(m: int, n: int, depth, full_bound) -> dict:
    D = build_double(build_radford(m, n))
    rep = classify_ribbon(D, depth=depth, full_bound=full_bound)
    return rep.to_dict()


def cmd_ribbon(cfg: RunConfig) -> int:
    D = build_double(build_radford(cfg.m, cfg.n))
    rep = classify_ribbon(D, depth=cfg.depth, full_bound=cfg.full_bound)
    data = rep.to_dict()
    if cfg.fmt == "json" and not cfg.out_dir:
        sys.stdout.write(_json_text(data))
    else:
        print(f"double of radford({cfg.m},{cfg.n}), dimension {rep.dim_double}")
        print(f"quasi-ribbon elements: {rep.quasi_count}")
        print(f"ribbon elements: {rep.ribbon_count}")
        for i, c in enumerate(rep.certificates):
            if c.is_ribbon:
                print(f"v{i + 1} = {c.quasi_ribbon.text()}")
        if rep.explicit_elements:
            print(f"closed-form elements match: {rep.explicit_match}")
        for t in rep.theorems:
            print(f"{t['tag']}: {'ok' if t['matches'] else 'MISMATCH'}")
    if cfg.out_dir:
        path = os.path.join(cfg.out_dir, f"ribbon-m{cfg.m}-n{cfg.n}.json")
        _write_atomic(path, _json_text(data))
        print(f"report written to {path}")
    return 0 if all(t["matches"] for t in rep.theorems) else 1


# ---------------------------------------------------------------------------
# sweep


def _cell_path(out_dir: str, m: int, n: int) -> str:
    return os.path.join(out_dir, f"ribbon-m{m}-n{n}.json")


def _load_valid_report(path: str, m: int, n: int):
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except (OSError, ValueError):
        return None
    if (
        isinstance(data, dict)
        and data.get("schema") == "ribbonforge-report-v1"
        and data.get("m") == m
        and data.get("n") == n
    ):
        return data
    return None


def _sweep_cell(args):
    m, n, depth, full_bound = args
    return m, n, _ribbon_report_dict(m, n, depth, full_bound)


def cmd_sweep(cfg: RunConfig) -> int:
    out_dir = cfg.out_dir or "sweep"
    cells = [(m, n) for m in cfg.m_range for n in cfg.n_range]
    index_cells = {}
    to_run = []
    for m, n in cells:
        dim = (m * n * n) ** 2
        if dim > cfg.budget:
            reason = f"dim {dim} exceeds budget"
            print(f"({m},{n}) skipped: {reason}")
            index_cells[(m, n)] = {
                "m": m,
                "n": n,
                "dim_double": dim,
                "status": "skipped",
                "reason": reason,
            }
            continue
        path = _cell_path(out_dir, m, n)
        cached = None if cfg.force else _load_valid_report(path, m, n)
        if cached is not None:
            print(f"({m},{n}) cached")
            index_cells[(m, n)] = _index_entry(cached)
            continue
        to_run.append((m, n, cfg.depth, cfg.full_bound))

    if to_run:
        if cfg.jobs > 1:
            from concurrent.futures import ProcessPoolExecutor

            with ProcessPoolExecutor(max_workers=cfg.jobs) as pool:
                results = list(pool.map(_sweep_cell, to_run))
        else:
            results = [_sweep_cell(a) for a in to_run]
        for m, n, data in results:
            _write_atomic(_cell_path(out_dir, m, n), _json_text(data))
            counts = data["counts"]
            print(
                f"({m},{n}) quasi-ribbon={counts['quasi_ribbon']} "
                f"ribbon={counts['ribbon']}"
            )
            index_cells[(m, n)] = _index_entry(data)

    ordered = [index_cells[k] for k in sorted(index_cells)]
    computed = [c for c in ordered if c["status"] == "ok"]
    parity = {
        "no_quasi_ribbon_iff_n_even": all(
            (c["quasi_ribbon"] == 0) == (c["n"] % 2 == 0) for c in computed
        ),
        "one_ribbon_iff_m_and_n_odd": all(
            (c["ribbon"] == 1) == (c["m"] % 2 == 1 and c["n"] % 2 == 1)
            for c in computed
        ),
        "two_ribbons_iff_m_even_n_odd": all(
            (c["ribbon"] == 2) == (c["m"] % 2 == 0 and c["n"] % 2 == 1)
            for c in computed
        ),
    }
    index = {
        "schema": SWEEP_SCHEMA,
        "m_range": list(cfg.m_range),
        "n_range": list(cfg.n_range),
        "budget": cfg.budget,
        "cells": ordered,
        "parity": parity,
    }
    index_path = os.path.join(out_dir, "sweep-index.json")
    _write_atomic(index_path, _json_text(index))
    print(f"index written to {index_path}")
    ok = all(
        all(c["theorems"].values()) for c in computed
    )
    return 0 if ok else 1


def _index_entry(data: dict) -> dict:
    return {
        "m": data["m"],
        "n": data["n"],
        "dim_double": data["dim_double"],
        "status": "ok",
        "quasi_ribbon": data["counts"]["quasi_ribbon"],
        "ribbon": data["counts"]["ribbon"],
        "theorems": {t["tag"]: t["matches"] for t in data["theorems"]},
    }


# ---------------------------------------------------------------------------
# argument parsing


def _build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="ribbonforge",
        description="exact Hopf algebra construction, verification, and "
        "ribbon element classification",
    )
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--depth", choices=["full", "generators"], default=None)
        sp.add_argument("--full-bound", type=int, default=None,
                        help="dimension bound for automatic full-depth checks")
        sp.add_argument("--out", default=None, help="directory for reports")
        sp.add_argument("--format", choices=["json", "text"], default="text",
                        dest="fmt")
        sp.add_argument("--seed", type=int, default=0)

    v = sub.add_parser("verify", help="verify family, dual, and double structure")
    v.add_argument("family", choices=["radford", "taft"])
    v.add_argument("a", type=int, help="m for radford, n for taft")
    v.add_argument("b", type=int, nargs="?", default=None,
                   help="n for radford; omit for taft")
    common(v)

    r = sub.add_parser("ribbon", help="classify ribbon elements of the double")
    r.add_argument("m", type=int)
    r.add_argument("n", type=int)
    common(r)

    s = sub.add_parser("sweep", help="classify over a parameter grid")
    s.add_argument("--m", required=True, help="inclusive range A..B")
    s.add_argument("--n", required=True, help="inclusive range C..D")
    s.add_argument("--force", action="store_true",
                   help="recompute cells with existing reports")
    s.add_argument("--jobs", type=int, default=1,
                   help="worker processes for sweep cells")
    common(s)
    return p


def _config_from_args(args) -> RunConfig:
    full_bound = args.full_bound
    if full_bound is None:
        full_bound = int(os.environ.get("RIBBONFORGE_FULL_BOUND", 400))
    budget = int(os.environ.get("RIBBONFORGE_BUDGET", DEFAULT_BUDGET))
    if args.command == "verify":
        return RunConfig(
            command="verify", family=args.family, m=args.a,
            n=args.b if args.b is not None else 0, depth=args.depth,
            full_bound=full_bound, out_dir=args.out, fmt=args.fmt,
            seed=args.seed, budget=budget,
        )
    if args.command == "ribbon":
        return RunConfig(
            command="ribbon", m=args.m, n=args.n, depth=args.depth,
            full_bound=full_bound, out_dir=args.out, fmt=args.fmt,
            seed=args.seed, budget=budget,
        )
    return RunConfig(
        command="sweep", m_range=_parse_range(args.m),
        n_range=_parse_range(args.n), depth=args.depth,
        full_bound=full_bound, out_dir=args.out, fmt=args.fmt,
        seed=args.seed, budget=budget, force=args.force, jobs=args.jobs,
    )


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = _config_from_args(args)
        if cfg.command == "verify":
            if cfg.family == "radford" and args.b is None:
                raise UsageError("radford needs both m and n")
            if cfg.family == "radford" and cfg.m < 2:
                raise UsageError("radford needs m >= 2")
            if cfg.family == "taft" and args.b is not None:
                raise UsageError("taft takes a single parameter n")
            return cmd_verify(cfg)
        if cfg.command == "ribbon":
            if cfg.m < 2 or cfg.n < 1:
                raise UsageError("ribbon needs m >= 2 and n >= 1")
            return cmd_ribbon(cfg)
        return cmd_sweep(cfg)
    except (UsageError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except HopfError as exc:
        print(f"verification failure: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
