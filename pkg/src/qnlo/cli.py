"""The ``qnlo`` command line.

    qnlo state   --family nlcs --alpha-re 1 [--grid -6 6 1201] --out state.json
    qnlo stats   --family even --r-min 0 --r-max 20 --r-step 0.5 --format csv
    qnlo figures --figure 1 --out-dir data/
    qnlo verify  [--suite NAME] [--tol X]
    qnlo pdm     --profile rational --gamma-mass 2 --family gk --z 1

Every command also takes ``--config FILE`` (JSON); explicit flags win over
the file.  Exit codes: 0 ok, 1 configuration error, 2 verification failure,
3 numeric failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from pathlib import Path

import numpy as np

from . import pdm, states, verify
from . import statistics as stats_mod
from .exceptions import ConfigError, ConvergenceError, InvalidFockIndex, QuadratureError
from .wavefunctions import GRID

EXIT_OK, EXIT_CONFIG, EXIT_VERIFY, EXIT_NUMERIC = 0, 1, 2, 3
FAMILIES = ("nlcs", "gis", "gk", "even", "odd")

DEFAULTS = {
    "family": "nlcs",
    "parameters": {"alpha_re": 0.0, "alpha_im": 0.0, "lambda": 1.0, "z": 0.0, "z_im": 0.0,
                   "gamma_phase": 0.0, "gamma_mass": 2.0},
    "sweep": {"r_min": 0.0, "r_max": 20.0, "r_step": 0.1},
    "grid": None,
    "n_max": None,
    "tolerances": {"tol": None},
    "output": {"path": None, "format": "csv"},
}


def fmt(x: float) -> str:
    return format(float(x), ".17g")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ConfigError(f"{self.prog}: {message}")


# --- configuration -----------------------------------------------------------

def _line_of(text: str, key: str) -> int | None:
    for i, line in enumerate(text.splitlines(), start=1):
        if f'"{key}"' in line:
            return i
    return None


def load_config(path) -> tuple[dict, str]:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc.strerror}") from exc
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}:{exc.lineno}:{exc.colno}: {exc.msg}") from exc
    if not isinstance(doc, dict):
        raise ConfigError(f"{path}:1: top level must be a JSON object")
    return doc, text


def _merge(base: dict, extra: dict) -> dict:
    out = dict(base)
    for k, v in extra.items():
        if isinstance(v, dict) and isinstance(out.get(k), dict):
            out[k] = _merge(out[k], v)
        else:
            out[k] = v
    return out


FLAG_KEYS = {
    "family": ("family",),
    "alpha_re": ("parameters", "alpha_re"), "alpha_im": ("parameters", "alpha_im"),
    "lam": ("parameters", "lambda"), "z": ("parameters", "z"), "z_im": ("parameters", "z_im"),
    "gamma_phase": ("parameters", "gamma_phase"), "gamma_mass": ("parameters", "gamma_mass"),
    "r_min": ("sweep", "r_min"), "r_max": ("sweep", "r_max"), "r_step": ("sweep", "r_step"),
    "n_max": ("n_max",), "tol": ("tolerances", "tol"),
    "out": ("output", "path"), "format": ("output", "format"),
}


def resolve_config(args) -> dict:
    """Defaults, then the JSON file, then explicit flags."""
    cfg, text, src = dict(DEFAULTS), "", "flags"
    if getattr(args, "config", None):
        doc, text = load_config(args.config)
        cfg, src = _merge(cfg, doc), str(args.config)
    for attr, path in FLAG_KEYS.items():
        val = getattr(args, attr, None)
        if val is None:
            continue
        node = cfg
        for key in path[:-1]:
            node[key] = dict(node.get(key) or {})
            node = node[key]
        node[path[-1]] = val
    if getattr(args, "grid", None) is not None:
        lo, hi, pts = args.grid
        cfg["grid"] = {"x_min": lo, "x_max": hi, "points": int(pts)}
    validate(cfg, text, src)
    return cfg


def validate(cfg: dict, text: str = "", src: str = "flags"):
    def fail(key, msg):
        line = _line_of(text, key) if text else None
        where = f"{src}:{line}" if line else src
        raise ConfigError(f"{where}: {key}: {msg}")

    if cfg.get("family") not in FAMILIES:
        fail("family", f"must be one of {', '.join(FAMILIES)}, got {cfg.get('family')!r}")
    params = cfg.get("parameters") or {}
    for key, val in params.items():
        if not isinstance(val, (int, float)) or isinstance(val, bool):
            fail(key, f"must be a number, got {val!r}")
    sweep = cfg.get("sweep") or {}
    for key in ("r_min", "r_max", "r_step"):
        if not isinstance(sweep.get(key), (int, float)):
            fail(key, "must be a number")
    if sweep["r_min"] < 0:
        fail("r_min", "must be >= 0")
    if not sweep["r_step"] > 0:
        fail("r_step", "must be > 0")
    if sweep["r_max"] < sweep["r_min"]:
        fail("r_max", "must be >= r_min")
    grid = cfg.get("grid")
    if grid is not None:
        if not isinstance(grid, dict) or not all(k in grid for k in ("x_min", "x_max", "points")):
            fail("grid", "needs x_min, x_max and points")
        if int(grid["points"]) < 2:
            fail("points", "grid needs at least 2 points")
        if not grid["x_max"] > grid["x_min"]:
            fail("x_max", "must exceed x_min")
    n_max = cfg.get("n_max")
    if n_max is not None and (not isinstance(n_max, int) or n_max < 3):
        fail("n_max", "must be an integer >= 3")
    fmt_ = (cfg.get("output") or {}).get("format", "csv")
    if fmt_ not in ("csv", "json"):
        fail("format", f"must be csv or json, got {fmt_!r}")
    if cfg["family"] == "gis":
        lam = params.get("lambda", 1.0)
        if lam == -1:
            fail("lambda", "lambda = -1 is excluded")
        if abs((1 - lam) / (1 + lam)) >= 1:
            fail("lambda", "GIS is normalizable only for lambda > 0")


def _grid(cfg):
    g = cfg.get("grid")
    if g is None:
        return None
    return np.linspace(float(g["x_min"]), float(g["x_max"]), int(g["points"]))


def build_state(cfg, r: float | None = None):
    """Build the configured state; ``r`` overrides |alpha|^2 (or |z|^2) with a real amplitude."""
    p = cfg["parameters"]
    fam = cfg["family"]
    alpha = complex(p["alpha_re"], p["alpha_im"]) if r is None else math.sqrt(r)
    z = complex(p["z"], p.get("z_im", 0.0)) if r is None else math.sqrt(r)
    kw = {"n_max": cfg.get("n_max")}
    if fam == "gis":
        return states.build_gis(alpha, p["lambda"], **kw)
    if fam == "gk":
        return states.build_gk(z, p["gamma_phase"], **kw)
    return states.build(fam, alpha=alpha, **kw)


# --- output helpers -----------------------------------------------------------

def _csv_text(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([fmt(v) if isinstance(v, (float, int, np.floating)) and not isinstance(v, bool)
                    else v for v in row])
    return buf.getvalue()


def _emit(text: str, path):
    if path in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(path, "w", newline="\n") as fh:
            fh.write(text)


# --- commands --------------------------------------------------------------------

def stats_rows(cfg) -> tuple[list, list]:
    """Rows (r, mean_n, q, g2, route) and the cat closed-form discrepancy records."""
    sw = cfg["sweep"]
    count = int(math.floor((sw["r_max"] - sw["r_min"]) / sw["r_step"] + 1e-9)) + 1
    rows, discrepancies = [], []
    fam = cfg["family"]
    for i in range(count):
        r = sw["r_min"] + i * sw["r_step"]
        rep = stats_mod.statistics_report(build_state(cfg, r))
        rows.append((r, rep.mean_n, rep.mandel_q, rep.g2, "direct"))
        if rep.closed_form is not None:
            c = rep.closed_form
            rows.append((r, c.mean_n, c.q, c.g2, "closed"))
            if fam in ("even", "odd"):
                discrepancies.append({"r": r, "max_relative_mismatch": rep.discrepancy,
                                      "flagged": rep.discrepancy >= stats_mod.CAT_MISMATCH_TOL})
        if fam in ("nlcs", "gk") and r > 0:
            nf = stats_mod.stats_from_normalization(r)
            rows.append((r, nf.mean_n, nf.q, nf.g2, "normalization"))
    return rows, discrepancies


def run_stats(cfg) -> int:
    rows, disc = stats_rows(cfg)
    out = cfg["output"]
    if out.get("format", "csv") == "csv":
        text = _csv_text(["r", "mean_n", "q", "g2", "route"], rows)
    else:
        doc = {"family": cfg["family"], "parameters": cfg["parameters"],
               "rows": [{"r": r, "mean_n": m, "q": q, "g2": g, "route": route}
                        for r, m, q, g, route in rows]}
        if cfg["family"] in ("even", "odd"):
            doc["closed_form_discrepancy"] = disc
        text = json.dumps(doc, indent=1) + "\n"
    _emit(text, out.get("path"))
    return EXIT_OK


def run_state(cfg, profile_out=None) -> int:
    st = build_state(cfg)
    _emit(st.to_json() + "\n", cfg["output"].get("path"))
    grid = _grid(cfg)
    if grid is not None:
        psi = states.synthesize_position(st, grid)
        rows = [(y, v.real, v.imag, abs(v) ** 2) for y, v in zip(grid, psi)]
        _emit(_csv_text(["y", "re", "im", "abs2"], rows), profile_out)
    return EXIT_OK


FIGURE_FAMILY = {1: "nlcs", 2: "even", 3: "odd"}
FIGURE_PN_R = (0.5, 1.0, 5.0, 10.0, 20.0)


def run_figures(cfg, figure: int, out_dir) -> int:
    """Data behind the four panels: P(n) at a few r, then <n>, Q, g2 against r."""
    fam = FIGURE_FAMILY[figure]
    cfg = _merge(cfg, {"family": fam})
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    rows = []
    for r in FIGURE_PN_R:
        st = build_state(cfg, r)
        for n, p in stats_mod.photon_distribution(st).items():
            if p > 1e-12:
                rows.append((r, n, p))
    _emit(_csv_text(["r", "n", "p"], rows), out_dir / f"fig{figure}_pn.csv")
    curve, _ = stats_rows(cfg)
    _emit(_csv_text(["r", "mean_n", "q", "g2", "route"], curve), out_dir / f"fig{figure}_curves.csv")
    return EXIT_OK


def run_verify(cfg, suites, seed) -> int:
    opts = {}
    if cfg["parameters"].get("gamma_mass") is not None:
        opts["gamma_mass"] = float(cfg["parameters"]["gamma_mass"])
    report = verify.run(suites, tol=cfg["tolerances"].get("tol"), seed=seed, **opts)
    _emit(json.dumps(report, indent=1) + "\n", cfg["output"].get("path"))
    return EXIT_OK if report["passed"] else EXIT_VERIFY


def run_pdm(cfg, profile_kind, mass_file, level) -> int:
    gm = float(cfg["parameters"]["gamma_mass"])
    if profile_kind == "rational":
        prof = pdm.MassProfile.rational(gm)
    else:
        if not mass_file:
            raise ConfigError("--profile custom needs --mass-file (two columns: y, m)")
        prof = pdm.MassProfile.from_table(mass_file)
    y = _grid(cfg)
    if y is None:
        y = np.linspace(*GRID)
    e = pdm.eta(prof, y)
    m = prof.m(y)
    if level is not None:
        vals = pdm.pdm_psi(level, prof, y).astype(complex)
    else:
        vals = pdm.pdm_state(build_state(cfg), prof, y)
    rows = [(a, b, c, v.real, v.imag, abs(v) ** 2) for a, b, c, v in zip(y, e, m, vals)]
    _emit(_csv_text(["y", "eta", "m", "re", "im", "abs2"], rows), cfg["output"].get("path"))
    return EXIT_OK


# --- argument parsing ------------------------------------------------------------

def _common(p):
    p.add_argument("--config", help="JSON run configuration; flags override it")
    p.add_argument("--family", choices=FAMILIES)
    p.add_argument("--alpha-re", type=float, dest="alpha_re")
    p.add_argument("--alpha-im", type=float, dest="alpha_im")
    p.add_argument("--lambda", type=float, dest="lam")
    p.add_argument("--z", type=float)
    p.add_argument("--z-im", type=float, dest="z_im")
    p.add_argument("--gamma-phase", type=float, dest="gamma_phase")
    p.add_argument("--n-max", type=int, dest="n_max")
    p.add_argument("--out", help="output file (default stdout)")


def make_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="qnlo", description="Coherent states of the solvable nonlinear oscillator.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("state", help="build a state and dump its amplitudes")
    _common(p)
    p.add_argument("--grid", nargs=3, type=float, metavar=("X_MIN", "X_MAX", "POINTS"))
    p.add_argument("--profile-out", help="where to write the position profile CSV (default stdout)")

    p = sub.add_parser("stats", help="photon statistics over a sweep of r = |alpha|^2")
    _common(p)
    p.add_argument("--r-min", type=float, dest="r_min")
    p.add_argument("--r-max", type=float, dest="r_max")
    p.add_argument("--r-step", type=float, dest="r_step")
    p.add_argument("--format", choices=("csv", "json"))

    p = sub.add_parser("figures", help="data files behind the statistics figures")
    _common(p)
    p.add_argument("--figure", type=int, choices=(1, 2, 3), required=True)
    p.add_argument("--out-dir", default=".")
    p.add_argument("--r-min", type=float, dest="r_min")
    p.add_argument("--r-max", type=float, dest="r_max")
    p.add_argument("--r-step", type=float, dest="r_step")

    p = sub.add_parser("verify", help="run the self-check suites")
    p.add_argument("--config")
    p.add_argument("--suite", action="append", choices=tuple(verify.SUITES))
    p.add_argument("--tol", type=float, help="override every check tolerance")
    p.add_argument("--seed", type=int, default=verify.DEFAULT_SEED)
    p.add_argument("--gamma-mass", type=float, dest="gamma_mass")
    p.add_argument("--out")

    p = sub.add_parser("pdm", help="position-dependent-mass eigenfunctions and states")
    _common(p)
    p.add_argument("--profile", choices=("rational", "custom"), default="rational")
    p.add_argument("--gamma-mass", type=float, dest="gamma_mass")
    p.add_argument("--mass-file")
    p.add_argument("--level", type=int, help="emit the eigenfunction of this level instead of a state")
    p.add_argument("--grid", nargs=3, type=float, metavar=("Y_MIN", "Y_MAX", "POINTS"))
    return parser


def main(argv=None) -> int:
    try:
        args = make_parser().parse_args(argv)
        cfg = resolve_config(args)
        if args.command == "state":
            return run_state(cfg, args.profile_out)
        if args.command == "stats":
            return run_stats(cfg)
        if args.command == "figures":
            return run_figures(cfg, args.figure, args.out_dir)
        if args.command == "verify":
            return run_verify(cfg, args.suite, args.seed)
        return run_pdm(cfg, args.profile, args.mass_file, args.level)
    except (ConfigError, InvalidFockIndex) as exc:
        print(f"qnlo: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (QuadratureError, ConvergenceError, FloatingPointError) as exc:
        print(f"qnlo: numeric failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
