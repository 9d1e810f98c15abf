"""Command-line front end.

Subcommands: nc, transform, cumulants, catalog, convolve, mc, brown,
repro.  Structured results are emitted as a JSON envelope on stdout;
grid and histogram outputs are CSV, written to --out when given (with a
JSON header sidecar) and to stdout otherwise.  --plot renders a PNG next
to the delimited output.

Exit codes: 0 success, 1 numerical failure or failing repro checks,
2 validation error.  Identical (command, seed) pairs produce identical
JSON payloads; wall-clock timing lives outside the payload.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
import time

import numpy as np

from . import __version__, brown, catalog, convolve, moments, ncpart, plotting, repro, rmtlab
from .errors import NumericalError
from .series import DEFAULT_ORDER, MAX_ORDER, MIN_ORDER, MomentSequence, TruncatedSeries
from .series import (
    R_from_S,
    R_to_moments,
    S_from_R,
    S_to_moments,
    moments_to_R,
    moments_to_S,
)

SEED_ENV = "FREECONV_SEED"


def _default_seed():
    raw = os.environ.get(SEED_ENV)
    if raw is None:
        return repro.DEFAULT_SEED
    try:
        return int(raw)
    except ValueError:
        raise ValueError(f"{SEED_ENV} must be an integer, got {raw!r}")


def _parse_grid(text):
    try:
        lo, hi, n = text.split(":")
        lo, hi, n = float(lo), float(hi), int(n)
    except ValueError:
        raise ValueError(f"--grid expects lo:hi:n, got {text!r}")
    if n < 2 or hi <= lo:
        raise ValueError("--grid needs hi > lo and n >= 2")
    return np.linspace(lo, hi, n)


def _parse_params(pairs):
    params = {}
    for pair in pairs or ():
        key, sep, val = pair.partition("=")
        if not sep:
            raise ValueError(f"--param expects key=value, got {pair!r}")
        params[key.strip()] = float(val)
    return params


def _series_from_json(text) -> TruncatedSeries:
    data = json.loads(text)
    if isinstance(data, dict):
        coeffs = data["coeffs"]
        order = int(data.get("order", len(coeffs) - 1))
        return TruncatedSeries(tuple(coeffs)).pad(order)
    return TruncatedSeries(tuple(data))


def _series_payload(s: TruncatedSeries):
    return {"coeffs": list(s.coeffs), "order": s.order}


def _check_order(order):
    if not MIN_ORDER <= order <= MAX_ORDER:
        raise ValueError(f"--order must lie in [{MIN_ORDER}, {MAX_ORDER}]")
    return order


def _moments_input(args, order):
    if getattr(args, "moments", None):
        vals = json.loads(args.moments)
        return MomentSequence(tuple(vals))
    if getattr(args, "spec", None):
        return catalog.parse_spec_string(args.spec).moment_sequence(order)
    raise ValueError("provide --moments or --spec")


def _matrix_from_value(value, n):
    """Deterministic matrix spec: 'identity', 'pm1', or 'spec:<catalog>'."""
    if value == "identity":
        return np.eye(n)
    if value == "pm1":
        if n % 2:
            raise ValueError("pm1 diagonal needs even N")
        return np.diag([1.0] * (n // 2) + [-1.0] * (n // 2))
    if value.startswith("spec:"):
        spec = catalog.parse_spec_string(value[5:])
        return np.diag(catalog.quantile_diagonal(spec, n))
    raise ValueError(f"unknown matrix spec {value!r}; use identity, pm1 "
                     "or spec:<name[:k=v,...]>")


def _load_matrix(path):
    with open(path, "r", encoding="utf-8") as fh:
        data = json.load(fh)
    if isinstance(data, dict):
        re_part = np.array(data["re"], dtype=float)
        im_part = np.array(data.get("im", np.zeros_like(re_part)), dtype=float)
        return re_part + 1j * im_part
    rows = []
    for row in data:
        out_row = []
        for cell in row:
            if isinstance(cell, (list, tuple)):
                out_row.append(complex(cell[0], cell[1]))
            else:
                out_row.append(complex(cell))
        rows.append(out_row)
    return np.array(rows)


def _write_csv(path_or_none, header, rows):
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(_fmt(v) for v in row))
    text = "\n".join(lines) + "\n"
    if path_or_none:
        with open(path_or_none, "w", encoding="utf-8") as fh:
            fh.write(text)
        return None
    return text


def _fmt(v):
    if isinstance(v, float):
        return repr(v)
    return str(v)


def _sidecar(out, suffix):
    stem, _ = os.path.splitext(out)
    return stem + suffix


class _Emitter:
    """Collects the envelope and optional CSV body for one command."""

    def __init__(self, args, command):
        self.command = command
        self.out = getattr(args, "out", None)
        self.seed = getattr(args, "seed", None)
        params = {k: v for k, v in sorted(vars(args).items())
                  if k not in ("func", "out") and v is not None}
        params.pop("command", None)
        self.config = {
            "command": command,
            "parameters": {k: (v if isinstance(v, (int, float, str, bool))
                               else str(v)) for k, v in params.items()},
            "seed": self.seed,
            "output_path": self.out or "",
        }
        self.t0 = time.perf_counter()

    def emit(self, payload, csv=None, csv_header=None, plot_fn=None,
             want_plot=False):
        body = None
        if csv is not None:
            body = _write_csv(self.out, csv_header, csv)
            if self.out:
                header_path = _sidecar(self.out, ".json")
                with open(header_path, "w", encoding="utf-8") as fh:
                    json.dump(payload, fh, sort_keys=True)
                payload = dict(payload)
                payload["csv_path"] = self.out
                payload["header_path"] = header_path
        plot_path = None
        if want_plot and plot_fn is not None:
            if self.out:
                plot_path = _sidecar(self.out, ".png")
            else:
                plot_path = f"freeconv_{self.command.replace(' ', '_')}.png"
            plot_fn(plot_path)
            payload = dict(payload)
            payload["plot_path"] = plot_path
        envelope = {
            "tool_version": __version__,
            "config_echo": self.config,
            "timing_seconds": round(time.perf_counter() - self.t0, 6),
            "payload": payload,
        }
        print(json.dumps(envelope, sort_keys=True))
        if body is not None:
            sys.stdout.write(body)
        return payload


# -- subcommand handlers ---------------------------------------------------------

def _cmd_nc(args):
    em = _Emitter(args, "nc " + args.action)
    if args.action == "enumerate":
        parts = ncpart.enumerate_nc(args.n)
        payload = {"n": args.n, "count": len(parts),
                   "partitions": [str(p) for p in parts]}
    elif args.action == "pairings":
        parts = (ncpart.enumerate_all_pairings(args.n) if args.all
                 else ncpart.enumerate_nc_pairings(args.n))
        payload = {"n": args.n, "count": len(parts),
                   "partitions": [str(p) for p in parts]}
    elif args.action == "kreweras":
        p = ncpart.SetPartition.from_string(args.partition)
        payload = {"partition": str(p), "kreweras": str(ncpart.kreweras(p)),
                   "geodesic_perm": ncpart.nc_to_geodesic_perm(p).cycle_string()}
    elif args.action == "mobius":
        a = ncpart.SetPartition.from_string(args.a)
        b = (ncpart.SetPartition.from_string(args.b) if args.b
             else ncpart.SetPartition.full(a.n))
        payload = {"a": str(a), "b": str(b), "mobius": ncpart.mobius_nc(a, b)}
    else:  # pragma: no cover - argparse restricts choices
        raise ValueError(args.action)
    em.emit(payload)
    return 0


_TRANSFORMS = {
    "m2r": lambda args, order: _series_payload(
        moments_to_R(_moments_input(args, order))),
    "r2m": lambda args, order: {"moments": list(
        R_to_moments(_series_from_json(args.series)).values)},
    "m2s": lambda args, order: _series_payload(
        moments_to_S(_moments_input(args, order))),
    "s2m": lambda args, order: {"moments": list(
        S_to_moments(_series_from_json(args.series)).values)},
    "r2s": lambda args, order: _series_payload(
        S_from_R(_series_from_json(args.series))),
    "s2r": lambda args, order: _series_payload(
        R_from_S(_series_from_json(args.series))),
}


def _cmd_transform(args):
    em = _Emitter(args, "transform " + args.action)
    payload = _TRANSFORMS[args.action](args, _check_order(args.order))
    em.emit(payload)
    return 0


def _cmd_cumulants(args):
    em = _Emitter(args, "cumulants")
    order = args.order
    ms = _moments_input(args, order)
    ms = ms.truncate(min(order, ms.order))
    series_route = moments.series_cumulants(ms)
    payload = {
        "moments": list(ms.values),
        "cumulants": list(series_route.values),
    }
    lattice_order = min(ms.order, moments.LATTICE_MAX)
    lattice = moments.cumulants_from_moments(ms, lattice_order)
    payload["route_agreement_error"] = max(
        abs(a - b) for a, b in zip(lattice.values, series_route.values))
    em.emit(payload)
    return 0


def _cmd_catalog(args):
    em = _Emitter(args, "catalog")
    spec = catalog.catalog_get(args.name, _parse_params(args.param))
    grid = _parse_grid(args.grid)
    dens = catalog.stieltjes_invert(spec.G, grid, args.eps)
    rows = []
    g_re, g_im = [], []
    for x, d in zip(grid, dens):
        g = spec.G(complex(x, args.eps))
        g_re.append(g.real)
        g_im.append(g.imag)
        rows.append((float(x), float(d), g.real, g.imag))
    payload = {
        "name": spec.name,
        "params": dict(spec.params),
        "atoms": [[loc, mass] for loc, mass in spec.atoms],
        "eps": args.eps,
        "rows": len(rows),
    }
    if spec.has_moments:
        payload["moments"] = [spec.moment(k) for k in range(1, 9)]
    else:
        payload["moments"] = "undefined (heavy-tailed)"

    def plot(path):
        exact = [spec.density_at(x) for x in grid]
        plotting.render_catalog(grid, exact, g_re, g_im, spec.atoms, path,
                                f"{spec.name} {dict(spec.params)}")

    em.emit(payload, csv=rows, csv_header=("x", "density", "G_re", "G_im"),
            plot_fn=plot, want_plot=args.plot)
    return 0


def _cmd_convolve(args):
    em = _Emitter(args, "convolve " + args.action)
    order = _check_order(args.order)
    if args.action in ("add", "mul"):
        if not args.spec_b:
            raise ValueError(f"convolve {args.action} needs two laws")
        a = catalog.parse_spec_string(args.spec_a).moment_sequence(order)
        b = catalog.parse_spec_string(args.spec_b).moment_sequence(order)
        fn = convolve.free_add if args.action == "add" else convolve.free_mul
        res = fn(a, b, order)
        payload = {
            "moments": list(res.moments.values),
            "cumulants": list(res.cumulants.values),
            "provenance": list(res.provenance),
            "consistency_residual": res.consistency_residual(),
        }
    elif args.action == "compress":
        a = catalog.parse_spec_string(args.spec_a).moment_sequence(order)
        fn = convolve.compress_rescaled if args.rescale else convolve.compress
        res = fn(a, args.t, order)
        payload = {
            "moments": list(res.moments.values),
            "cumulants": list(res.cumulants.values),
            "provenance": list(res.provenance),
            "t": args.t,
            "rescaled": bool(args.rescale),
        }
        if not args.rescale:
            payload["atom_at_zero_lower_bound"] = 1.0 - args.t
    elif args.action == "product-support":
        model = _psi_model(args.spec_a)
        u_n, l_n = convolve.product_support(model, args.n)
        payload = {
            "model": model.name,
            "n": args.n,
            "u_n": u_n,
            "L_n": l_n,
            "L_n_over_n": l_n / args.n,
            "e_times_variance": math.e * model.variance,
        }
    else:  # pragma: no cover
        raise ValueError(args.action)
    em.emit(payload)
    return 0


def _psi_model(text):
    name, _, tail = text.partition(":")
    name = name.strip().lower()
    if name in ("free-poisson-1", "mp1", "marchenko-pastur"):
        return convolve.free_poisson_one_model()
    if name in ("bernoulli-mean1", "bernoulli1"):
        params = dict(kv.split("=") for kv in tail.split(",") if kv)
        return convolve.bernoulli_mean_one_model(float(params.get("p", 0.5)))
    raise ValueError(f"unknown product-support model {text!r}; use "
                     "free-poisson-1 or bernoulli-mean1:p=...")


def _cmd_mc(args):
    em = _Emitter(args, "mc " + args.action)
    if args.action == "trace":
        word = rmtlab.parse_word(args.word)
        det = {}
        for slot_flag in ("d1", "d2", "d3"):
            value = getattr(args, slot_flag)
            if value:
                det[slot_flag.upper()] = _matrix_from_value(value, args.N)
        cfg = rmtlab.EnsembleConfig(N=args.N, reps=args.reps, seed=args.seed,
                                    deterministic=det, threads=args.threads)
        est = rmtlab.mc_trace(word, cfg)
        payload = {
            "word": " ".join(k if k in ("U", "U*") else f"{k}{s}"
                             for k, s in word),
            "N": args.N, "reps": args.reps, "seed": args.seed,
            "mean": est.mean, "stderr": est.stderr,
        }
        exact = _exact_word_prediction(word, det, args.N)
        if exact is not None:
            payload["exact_prediction"] = exact
            payload["z"] = est.z_score(exact)
        em.emit(payload)
        return 0
    # spectrum
    pooled = []
    for rep in range(args.reps):
        rng = rmtlab.rep_rng(args.seed, rep)
        h = rmtlab.sample_gue(args.N, rng)
        if args.ensemble == "wishart":
            h = h @ h
        pooled.append(np.linalg.eigvalsh(h))
    eigs = np.concatenate(pooled)
    counts, edges = np.histogram(eigs, bins=args.bins)
    widths = np.diff(edges)
    dens = counts / (counts.sum() * widths)
    rows = [(float(lo), float(hi), int(c), float(d))
            for lo, hi, c, d in zip(edges[:-1], edges[1:], counts, dens)]
    payload = {"ensemble": args.ensemble, "N": args.N, "reps": args.reps,
               "bins": args.bins, "samples": int(eigs.size),
               "seed": args.seed}

    def plot(path):
        target = ("semicircle" if args.ensemble == "gue" else
                  "marchenko-pastur")
        spec = catalog.catalog_get(target)
        xs = np.linspace(edges[0], edges[-1], 200)
        overlay = (xs, [spec.density_at(x) for x in xs])
        plotting.render_histogram(list(edges), list(counts), path,
                                  f"{args.ensemble} spectrum, N={args.N}",
                                  overlay=overlay)

    em.emit(payload, csv=rows,
            csv_header=("bin_lo", "bin_hi", "count", "density"),
            plot_fn=plot, want_plot=args.plot)
    return 0


def _exact_word_prediction(word, det, n):
    """Pairing-sum prediction for words of the shape A D A D ... (with the
    same Gaussian slot and optional deterministic separators)."""
    kinds = [k for k, _ in word]
    if "U" in kinds or "U*" in kinds:
        return None
    a_slots = {s for k, s in word if k == "A"}
    if len(a_slots) != 1:
        return None
    seps = []
    i = 0
    while i < len(word):
        if word[i][0] != "A":
            return None
        if i + 1 < len(word) and word[i + 1][0] == "D":
            seps.append(np.asarray(det[f"D{word[i + 1][1]}"]))
            i += 2
        else:
            seps.append(np.eye(n))
            i += 1
    if len(seps) % 2 == 1:
        return 0.0
    if len(seps) > rmtlab.GENUS_N_MAX:
        return None
    return rmtlab.genus_expansion_exact(seps, len(seps))


def _cmd_brown(args):
    em = _Emitter(args, "brown " + args.action)
    if args.action == "radial":
        if not args.sigma.startswith("spec:"):
            raise ValueError("--sigma expects spec:<catalog-name[:k=v,...]>")
        spec = catalog.parse_spec_string(args.sigma[5:])
        if args.from_moments or not spec.has_s_transform:
            rm = brown.hl_from_moments(spec.moment_sequence(args.order),
                                       w=args.w, grid_size=args.grid)
        else:
            rm = brown.hl_radial(spec.S, w=args.w, grid_size=args.grid,
                                 exx=spec.moment(1))
        rows = list(zip(rm.r, rm.F, rm.density))
        payload = {
            "sigma": args.sigma, "w": rm.atom_at_zero,
            "grid": args.grid, "r_max": rm.r_max,
            "truncated": rm.truncated, "rows": len(rows),
        }

        def plot(path):
            plotting.render_radial(rm.r, rm.F, rm.density, path,
                                   f"radial law for sigma = {args.sigma[5:]}")

        em.emit(payload, csv=rows, csv_header=("r", "F", "rho"),
                plot_fn=plot, want_plot=args.plot)
        return 0
    # fkdet
    mat = _load_matrix(args.matrix)
    eig_route = brown.fk_det(mat)
    lu_route = brown.fk_det_lu(mat)
    payload = {
        "n": int(mat.shape[0]),
        "fk_det": eig_route,
        "fk_det_lu": lu_route,
        "relative_gap": (abs(eig_route - lu_route) / eig_route
                         if eig_route else 0.0),
    }
    em.emit(payload)
    return 0


def _cmd_repro(args):
    em = _Emitter(args, "repro " + args.suite)
    if args.suite == "all":
        reports = [(num, repro.run_suite(name, seed=args.seed,
                                         threads=args.threads))
                   for num, name in repro.CRITERIA]
        payload = {
            "criteria": [{"criterion": num, **rep.to_payload()}
                         for num, rep in reports],
            "pass": all(rep.passed for _, rep in reports),
        }
        passed = payload["pass"]
        plot = None
    else:
        report = repro.run_suite(args.suite, seed=args.seed,
                                 threads=args.threads)
        payload = report.to_payload()
        passed = report.passed

        def plot(path):
            plotting.render_repro(report, path)

    em.emit(payload, plot_fn=plot, want_plot=args.plot)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            json.dump(payload, fh, sort_keys=True, indent=2)
    return 0 if passed else 1


# -- parser -----------------------------------------------------------------------

def build_parser():
    import re

    parser = argparse.ArgumentParser(
        prog="freeconv",
        description="free-probability toolkit: non-crossing combinatorics, "
                    "transform algebra, free convolution, random-matrix "
                    "checks, radial spectral laws")
    # let grid values like -2.5:2.5:101 pass as option arguments
    grid_friendly = re.compile(r"^-\d+(\.\d*)?([:eE][-+]?[\d.:]+)*$")
    parser._negative_number_matcher = grid_friendly
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)
    seed_default = _default_seed()

    p = sub.add_parser("nc", help="non-crossing partition utilities")
    p.add_argument("action", choices=("enumerate", "pairings", "kreweras",
                                      "mobius"))
    p.add_argument("--n", type=int, default=4)
    p.add_argument("--all", action="store_true",
                   help="with pairings: list crossing pairings too")
    p.add_argument("--partition", help='partition string like "{1,4}{2,3}"')
    p.add_argument("--a", help="lower partition for mobius")
    p.add_argument("--b", help="upper partition for mobius (default 1_n)")
    p.set_defaults(func=_cmd_nc)

    p = sub.add_parser("transform", help="series transform algebra")
    p.add_argument("action", choices=sorted(_TRANSFORMS))
    p.add_argument("--moments", help="JSON list of moments m_1..m_M")
    p.add_argument("--spec", help="catalog law name[:k=v,...]")
    p.add_argument("--series", help='JSON {"coeffs": [...], "order": M}')
    p.add_argument("--order", type=int, default=DEFAULT_ORDER)
    p.set_defaults(func=_cmd_transform)

    p = sub.add_parser("cumulants", help="moments -> free cumulants, dual route")
    p.add_argument("--moments", help="JSON list of moments")
    p.add_argument("--spec", help="catalog law name[:k=v,...]")
    p.add_argument("--order", type=int, default=9)
    p.set_defaults(func=_cmd_cumulants)

    p = sub.add_parser("catalog", help="closed-form law: density grid + transforms")
    p.add_argument("name")
    p.add_argument("--param", action="append", help="key=value (repeatable)")
    p.add_argument("--grid", default="-2.5:2.5:101", help="lo:hi:n")
    p.add_argument("--eps", type=float, default=1e-4)
    p.add_argument("--out", help="CSV output path")
    p.add_argument("--plot", action="store_true")
    p.set_defaults(func=_cmd_catalog)

    p = sub.add_parser("convolve", help="free additive/multiplicative convolution")
    p.add_argument("action", choices=("add", "mul", "compress",
                                      "product-support"))
    p.add_argument("spec_a", help="catalog law or model name")
    p.add_argument("spec_b", nargs="?", help="second law for add/mul")
    p.add_argument("--order", type=int, default=DEFAULT_ORDER)
    p.add_argument("--t", type=float, default=0.5, help="projection trace")
    p.add_argument("--rescale", action="store_true")
    p.add_argument("--n", type=int, default=10 ** 5,
                   help="power for product-support")
    p.set_defaults(func=_cmd_convolve)

    p = sub.add_parser("mc", help="random-matrix Monte Carlo")
    p.add_argument("action", choices=("trace", "spectrum"))
    p.add_argument("--word", default="A A", help='trace word, e.g. "A D1 A D1"')
    p.add_argument("--N", type=int, default=64)
    p.add_argument("--reps", type=int, default=10 ** 4)
    p.add_argument("--seed", type=int, default=seed_default)
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--d1", help="D1 matrix: identity|pm1|spec:<law>")
    p.add_argument("--d2", help="D2 matrix")
    p.add_argument("--d3", help="D3 matrix")
    p.add_argument("--ensemble", choices=("gue", "wishart"), default="gue")
    p.add_argument("--bins", type=int, default=80)
    p.add_argument("--out", help="CSV output path (spectrum)")
    p.add_argument("--plot", action="store_true")
    p.set_defaults(func=_cmd_mc)

    p = sub.add_parser("brown", help="determinants and radial spectral laws")
    p.add_argument("action", choices=("radial", "fkdet"))
    p.add_argument("--sigma", default="spec:marchenko-pastur:lambda=1",
                   help="squared-singular-value law, spec:<name[:k=v,...]>")
    p.add_argument("--w", type=float, default=0.0, help="mass at zero")
    p.add_argument("--grid", type=int, default=512, help="grid size")
    p.add_argument("--from-moments", action="store_true",
                   help="build S by series reversion instead of closed form")
    p.add_argument("--order", type=int, default=DEFAULT_ORDER)
    p.add_argument("--matrix", help="JSON matrix file for fkdet")
    p.add_argument("--out", help="CSV output path (radial)")
    p.add_argument("--plot", action="store_true")
    p.set_defaults(func=_cmd_brown)

    p = sub.add_parser("repro", help="run a verification suite")
    p.add_argument("suite", choices=sorted(repro.SUITES) + ["all"])
    p.add_argument("--seed", type=int, default=seed_default)
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--out", help="write the JSON report here too")
    p.add_argument("--plot", action="store_true")
    p.set_defaults(func=_cmd_repro)

    for action in sub.choices.values():
        action._negative_number_matcher = grid_friendly
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:       # argparse uses 2 for usage errors
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (ValueError, KeyError, json.JSONDecodeError, OSError) as exc:
        print(f"freeconv: {exc}", file=sys.stderr)
        return 2
    except (NumericalError, np.linalg.LinAlgError) as exc:
        print(f"freeconv: numerical failure: {exc}", file=sys.stderr)
        return 1


def entrypoint():  # console-script target
    raise SystemExit(main())


if __name__ == "__main__":
    entrypoint()
