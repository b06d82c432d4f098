"""Command-line front end: figure datasets, mode evaluation, sweeps, checks.

All quantities are dimensionless (the time unit is absorbed into the rates).
CSV output is RFC-4180-style with '#' metadata lines before the header and
shortest round-trip decimal formatting, so files are byte-stable across
repeated runs.  Exit codes: 0 success, 1 verification failure, 2 usage
error, 3 I/O error.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import __version__, modes, verify
from .core import (
    ABCoefficients,
    AmpPhaseCoefficients,
    DampingParams,
    RegimeKind,
    RiccatiParam,
    classify_regime,
)
from .errors import SusyDampError, UsageError
from .modes import ModeSpec
from .presets import CRITICAL, OVERDAMPED, UNDERDAMPED
from .riccati import guard_threshold, in_guard_band

#: figure number -> (preset, which quantity the per-gamma columns hold)
FIGURES = {
    1: (UNDERDAMPED, "mode"),
    2: (CRITICAL, "mode"),
    3: (OVERDAMPED, "mode"),
    4: (UNDERDAMPED, "acceleration"),
    5: (CRITICAL, "acceleration"),
    6: (OVERDAMPED, "acceleration"),
}

FIGURE_GRID = (0.0, 10.0, 0.01)


def _fmt(x) -> str:
    """Shortest round-trip decimal (capped at 17 significant digits)."""
    return repr(float(x))


def _time_grid(t0: float, t1: float, dt: float) -> np.ndarray:
    if dt <= 0.0:
        raise UsageError("dt must be positive")
    if t1 < t0:
        raise UsageError("t1 must be >= t0")
    n = int(np.floor((t1 - t0) / dt + 1e-9)) + 1
    return t0 + dt * np.arange(n)


def _write_csv(path: str, meta: dict, header: list[str], rows) -> None:
    lines = [f"# susy-damp {__version__}"]
    for key, value in meta.items():
        lines.append(f"# {key} = {value}")
    lines.append(",".join(header))
    for row in rows:
        lines.append(",".join(row))
    data = "\n".join(lines) + "\n"
    with open(path, "w", newline="") as fh:
        fh.write(data)


def _coeff_label(coeffs) -> str:
    if isinstance(coeffs, AmpPhaseCoefficients):
        return f"amplitude = {_fmt(coeffs.amplitude)}, phase = {_fmt(coeffs.phase)}"
    return f"A = {_fmt(coeffs.A)}, B = {_fmt(coeffs.B)}"


def cmd_figure(n: int, out: str) -> int:
    preset, quantity = FIGURES[n]
    t0, t1, dt = FIGURE_GRID
    ts = _time_grid(t0, t1, dt)
    seed_spec = preset.seed_spec()
    columns = [modes.seed_jet(seed_spec, ts, 0).d[0]]
    header = ["t", "y"]
    for g in preset.gammas:
        spec = preset.tilde_spec(g)
        if quantity == "mode":
            columns.append(modes.tilde_jet(spec, ts, 0).d[0])
            header.append(f"ytilde_gamma={_fmt(g)}")
        else:
            columns.append(modes.antirestoring_acceleration(spec, ts))
            header.append(f"a_gamma={_fmt(g)}")
    meta = {
        "command": f"figure {n}",
        "family": preset.name,
        "quantity": quantity,
        "beta": _fmt(preset.params.beta),
        "omega0": _fmt(preset.params.omega0),
        "coefficients": _coeff_label(preset.coeffs),
        "gammas": ", ".join(_fmt(g) for g in preset.gammas),
        "grid": f"t0 = {_fmt(t0)}, t1 = {_fmt(t1)}, dt = {_fmt(dt)}",
    }
    rows = (
        [_fmt(t)] + [_fmt(col[i]) for col in columns] for i, t in enumerate(ts)
    )
    _write_csv(out, meta, header, rows)
    return 0


def _load_config(path: str | None, allowed: set[str]) -> dict:
    if path is None:
        return {}
    with open(path) as fh:
        try:
            cfg = json.load(fh)
        except json.JSONDecodeError as exc:
            raise UsageError(f"config file {path!r} is not valid JSON: {exc}") from exc
    if not isinstance(cfg, dict):
        raise UsageError("config file must hold a flat JSON object")
    unknown = set(cfg) - allowed
    if unknown:
        raise UsageError(f"unknown config keys: {sorted(unknown)}")
    return cfg


def _merge(args: argparse.Namespace, cfg: dict, key: str):
    """Flag value wins; config fills in; None if neither."""
    val = getattr(args, key, None)
    return val if val is not None else cfg.get(key)


def _build_coeffs(A, B, amp, phase):
    has_ab = A is not None or B is not None
    has_ap = amp is not None or phase is not None
    if has_ab and has_ap:
        raise UsageError("give either --A/--B or --amp/--phase, not both")
    if has_ab:
        return ABCoefficients(A if A is not None else 0.0, B if B is not None else 0.0)
    if has_ap:
        return AmpPhaseCoefficients(
            amp if amp is not None else 1.0, phase if phase is not None else 0.0
        )
    return None


_EVAL_KEYS = {
    "beta", "omega0", "gamma", "family", "A", "B", "amp", "phase",
    "t0", "t1", "dt", "out",
}


def cmd_eval(args: argparse.Namespace) -> int:
    cfg = _load_config(args.config, _EVAL_KEYS)
    beta = _merge(args, cfg, "beta")
    omega0 = _merge(args, cfg, "omega0")
    gamma = _merge(args, cfg, "gamma")
    family = _merge(args, cfg, "family")
    t0 = _merge(args, cfg, "t0")
    t1 = _merge(args, cfg, "t1")
    dt = _merge(args, cfg, "dt")
    out = _merge(args, cfg, "out")
    if beta is None or omega0 is None:
        raise UsageError("--beta and --omega0 are required")
    if t0 is None or t1 is None or dt is None:
        raise UsageError("--t0, --t1 and --dt are required")
    if out is None:
        raise UsageError("--out is required")

    if family is None:
        family = "tilde" if gamma is not None else "seed"
    if family == "seed" and gamma is not None:
        raise UsageError("--gamma makes no sense with --family seed")
    if family == "tilde" and gamma is None:
        raise UsageError("--family tilde needs --gamma")

    coeffs = _build_coeffs(
        _merge(args, cfg, "A"), _merge(args, cfg, "B"),
        _merge(args, cfg, "amp"), _merge(args, cfg, "phase"),
    )
    if coeffs is None:
        coeffs = _default_coeffs_for(beta, omega0)

    riccati = RiccatiParam(gamma) if family == "tilde" else None
    spec = ModeSpec(_damping_params(beta, omega0), coeffs, riccati)
    ts = _time_grid(t0, t1, dt)

    header = ["t", "y", "dy", "d2y"]
    if spec.is_tilde:
        header.append("a")
    header.append("singular")

    rows = []
    for t in ts:
        t = float(t)
        if spec.is_tilde and in_guard_band(gamma, t):
            blanks = [""] * (len(header) - 2)
            rows.append([_fmt(t)] + blanks + ["1"])
            continue
        if spec.is_tilde:
            ev = modes.eval_tilde(spec, t)
            acc = modes.antirestoring_acceleration(spec, t)
            rows.append(
                [_fmt(t), _fmt(ev.y), _fmt(ev.dy), _fmt(ev.d2y), _fmt(acc), "0"]
            )
        else:
            ev = modes.eval_seed(spec, t)
            rows.append([_fmt(t), _fmt(ev.y), _fmt(ev.dy), _fmt(ev.d2y), "0"])

    meta = {
        "command": "eval",
        "family": family,
        "beta": _fmt(beta),
        "omega0": _fmt(omega0),
        "coefficients": _coeff_label(coeffs),
        "grid": f"t0 = {_fmt(t0)}, t1 = {_fmt(t1)}, dt = {_fmt(dt)}",
    }
    if gamma is not None:
        meta["gamma"] = _fmt(gamma)
        meta["t_star"] = _fmt(-1.0 / gamma)
    _write_csv(out, meta, header, rows)
    return 0


def _default_coeffs_for(beta: float, omega0: float):
    """Figure defaults: amplitude 1, phase 0; critical uses A = B = 1."""
    regime = classify_regime(_damping_params(beta, omega0))
    if regime.kind is RegimeKind.CRITICAL:
        return ABCoefficients(1.0, 1.0)
    return AmpPhaseCoefficients(1.0, 0.0)


def _damping_params(beta, omega0) -> DampingParams:
    try:
        return DampingParams(beta, omega0)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


_SWEEP_KEYS = {
    "gammas", "metric", "beta", "omega0", "A", "B", "amp", "phase",
    "t", "t0", "t1", "dt", "out",
}


def cmd_sweep(args: argparse.Namespace) -> int:
    cfg = _load_config(args.config, _SWEEP_KEYS)
    gammas_raw = _merge(args, cfg, "gammas")
    metric = _merge(args, cfg, "metric")
    out = _merge(args, cfg, "out")
    if gammas_raw is None:
        raise UsageError("--gammas is required")
    if metric is None:
        raise UsageError("--metric is required")
    if metric not in ("value_at_t", "max_abs", "blowup_time"):
        raise UsageError(f"unknown metric {metric!r}")
    if out is None:
        raise UsageError("--out is required")
    if isinstance(gammas_raw, str):
        try:
            gammas = [float(tok) for tok in gammas_raw.split(",") if tok.strip()]
        except ValueError as exc:
            raise UsageError(f"bad --gammas list: {exc}") from exc
    else:
        gammas = [float(g) for g in gammas_raw]
    if not gammas:
        raise UsageError("--gammas list is empty")
    if any(g == 0.0 for g in gammas):
        raise UsageError("gamma = 0 is not a family member")

    meta = {"command": "sweep", "metric": metric, "gammas": ", ".join(_fmt(g) for g in gammas)}
    rows = []
    if metric == "blowup_time":
        for g in gammas:
            rows.append([_fmt(g), _fmt(modes.blow_up_time(RiccatiParam(g)))])
    else:
        beta = _merge(args, cfg, "beta")
        omega0 = _merge(args, cfg, "omega0")
        if beta is None or omega0 is None:
            raise UsageError(f"metric {metric!r} needs --beta and --omega0")
        coeffs = _build_coeffs(
            _merge(args, cfg, "A"), _merge(args, cfg, "B"),
            _merge(args, cfg, "amp"), _merge(args, cfg, "phase"),
        )
        if coeffs is None:
            coeffs = _default_coeffs_for(beta, omega0)
        params = _damping_params(beta, omega0)
        meta["beta"] = _fmt(beta)
        meta["omega0"] = _fmt(omega0)
        meta["coefficients"] = _coeff_label(coeffs)
        if metric == "value_at_t":
            t_at = _merge(args, cfg, "t")
            t_at = 0.0 if t_at is None else float(t_at)
            meta["t"] = _fmt(t_at)
            for g in gammas:
                spec = ModeSpec(params, coeffs, RiccatiParam(g))
                rows.append([_fmt(g), _fmt(modes.eval_tilde(spec, t_at).y)])
        else:  # max_abs over a dense grid
            t0 = _merge(args, cfg, "t0")
            t1 = _merge(args, cfg, "t1")
            dt = _merge(args, cfg, "dt")
            t0 = 0.0 if t0 is None else float(t0)
            t1 = 10.0 if t1 is None else float(t1)
            dt = 1e-3 if dt is None else float(dt)
            ts = _time_grid(t0, t1, dt)
            meta["grid"] = f"t0 = {_fmt(t0)}, t1 = {_fmt(t1)}, dt = {_fmt(dt)}"
            for g in gammas:
                spec = ModeSpec(params, coeffs, RiccatiParam(g))
                keep = ~_band_mask(g, ts)
                values = modes.tilde_jet(spec, ts[keep], 0).d[0]
                rows.append([_fmt(g), _fmt(np.max(np.abs(values)))])
    _write_csv(out, meta, ["gamma", metric], rows)
    return 0


def _band_mask(gamma: float, ts: np.ndarray) -> np.ndarray:
    return np.abs(gamma * ts + 1.0) <= guard_threshold(gamma)


def cmd_verify(scope: str, seed: int, out: str | None) -> int:
    reports = verify.run_suite(scope, seed)
    text = verify.reports_to_json(reports)
    if out is not None:
        with open(out, "w", newline="") as fh:
            fh.write(text + "\n")
    for r in reports:
        status = "PASS" if r.passed else "FAIL"
        print(f"{status} {r.check_name}: max_residual = {r.max_residual:.3e} "
              f"(threshold {r.threshold:.3e})")
    return 0 if verify.all_passed(reports) else 1


def cmd_blowup(gamma: float) -> int:
    if gamma == 0.0:
        raise UsageError("gamma = 0 is not a family member")
    t_star = modes.blow_up_time(RiccatiParam(gamma))
    side = "past (t* < 0)" if t_star < 0 else "future (t* > 0)"
    print(f"gamma = {_fmt(gamma)}")
    print(f"t_star = {_fmt(t_star)}")
    print(f"singular instant lies in the {side}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="susy-damp",
        description=(
            "Damping modes of y'' + 2*beta*y' + omega0^2*y = 0 and their "
            "one-parameter partner families; all quantities dimensionless."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_fig = sub.add_parser("figure", help="write one of the six figure datasets as CSV")
    p_fig.add_argument("n", type=int, choices=sorted(FIGURES))
    p_fig.add_argument("--out", required=True)

    p_eval = sub.add_parser("eval", help="evaluate a mode (and derivatives) on a grid")
    p_eval.add_argument("--beta", type=float)
    p_eval.add_argument("--omega0", type=float)
    p_eval.add_argument("--gamma", type=float)
    p_eval.add_argument("--family", choices=("seed", "tilde"))
    p_eval.add_argument("--A", type=float)
    p_eval.add_argument("--B", type=float)
    p_eval.add_argument("--amp", type=float)
    p_eval.add_argument("--phase", type=float)
    p_eval.add_argument("--t0", type=float)
    p_eval.add_argument("--t1", type=float)
    p_eval.add_argument("--dt", type=float)
    p_eval.add_argument("--out")
    p_eval.add_argument("--config", help="flat JSON object mirroring the flag names")

    p_sweep = sub.add_parser("sweep", help="one metric per gamma, as CSV")
    p_sweep.add_argument("--gammas", help="comma-separated gamma list")
    p_sweep.add_argument("--metric", choices=("value_at_t", "max_abs", "blowup_time"))
    p_sweep.add_argument("--beta", type=float)
    p_sweep.add_argument("--omega0", type=float)
    p_sweep.add_argument("--A", type=float)
    p_sweep.add_argument("--B", type=float)
    p_sweep.add_argument("--amp", type=float)
    p_sweep.add_argument("--phase", type=float)
    p_sweep.add_argument("--t", type=float)
    p_sweep.add_argument("--t0", type=float)
    p_sweep.add_argument("--t1", type=float)
    p_sweep.add_argument("--dt", type=float)
    p_sweep.add_argument("--out")
    p_sweep.add_argument("--config")

    p_verify = sub.add_parser("verify", help="run the verification suite")
    p_verify.add_argument("--scope", default="all", choices=("all",) + verify.SCOPES)
    p_verify.add_argument("--seed", type=int, default=0)
    p_verify.add_argument("--out")

    p_blow = sub.add_parser("blowup", help="blow-up instant diagnostics")
    p_blow.add_argument("--gamma", type=float, required=True)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "figure":
            return cmd_figure(args.n, args.out)
        if args.command == "eval":
            return cmd_eval(args)
        if args.command == "sweep":
            return cmd_sweep(args)
        if args.command == "verify":
            return cmd_verify(args.scope, args.seed, args.out)
        if args.command == "blowup":
            return cmd_blowup(args.gamma)
        raise UsageError(f"unknown command {args.command!r}")
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return 3
    except SusyDampError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
