"""Minimal-γ sweeps over grid spacing and smoothness

Each row of a sweep is an independent `min_gamma` search.  Rows run in a
bounded process pool, are checkpointed to a JSON-lines file as they finish, and
are merged in configuration order, so the CSV does not depend on completion
order and re-running a finished sweep rewrites identical bytes.

"""

import logging
import warnings

import numpy as np
import pandas as pd

from ..errors import ConfigError

logger = logging.getLogger(__name__)

FIG2_COLUMNS = [
    "scheme", "d", "lambda", "nu", "h", "n_star", "gamma_star", "ratio", "at_lower_limit", "status",
]
FIG3_COLUMNS = [
    "scheme", "d", "lambda", "nu", "h", "n_star", "gamma_star",
    "nu_pow_neg_half", "nu_half_log_nu", "at_lower_limit", "status",
]


class SweepDataFrame(pd.DataFrame):
    @property
    def classical(self):
        """Restrict to rows of the classical scheme"""
        return type(self)(self[self["scheme"] == "classical"])

    @property
    def smooth(self):
        """Restrict to rows of either smooth cutoff"""
        return type(self)(self[self["scheme"] != "classical"])

    @property
    def bspline(self):
        return type(self)(self[self["scheme"] == "bspline"])

    @property
    def expsmooth(self):
        return type(self)(self[self["scheme"] == "expsmooth"])

    @property
    def ok(self):
        """Restrict to rows whose search succeeded"""
        return type(self)(self[self["status"] == "ok"])

    def dimension(self, d):
        return type(self)(self[self["d"] == d])


def _jobs(config):
    """(key, payload) pairs in configuration order"""
    jobs = []
    for descriptor in config.descriptors:
        if config.kind == "fig2":
            combinations = [(nu, h) for h in config.effective_h_list for nu in config.nu_list]
        else:
            combinations = [(nu, h) for nu in config.nu_list for h in config.effective_h_list]
        for nu, h in combinations:
            key = [descriptor.kind, config.d, float(nu), float(h)]
            payload = {
                "descriptor": descriptor.to_dict(),
                "d": config.d,
                "lam": config.lam,
                "nu": float(nu),
                "h": float(h),
                "e0": config.e0,
                "bounds": (config.n_min, config.n_max) if config.n_min and config.n_max else None,
                "nmax_cap": config.nmax_cap,
                "max_cells": config.max_cells,
                "rel_tol": config.pd_rel_tol,
            }
            jobs.append((key, payload))
    return jobs


def _run_row(payload):
    """Run one minimal-γ search; failures become rows with a status message"""
    from ..covariance import CovarianceModel
    from ..torus import SchemeDescriptor
    from .min_gamma import min_gamma

    descriptor = SchemeDescriptor.from_dict(payload["descriptor"])
    model = CovarianceModel(lam=payload["lam"], nu=payload["nu"], d=payload["d"])
    row = {
        "scheme": descriptor.kind,
        "d": payload["d"],
        "lambda": payload["lam"],
        "nu": payload["nu"],
        "h": payload["h"],
    }
    try:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            result = min_gamma(
                model, payload["h"], descriptor,
                bounds=payload["bounds"], e0=payload["e0"],
                max_cells=payload["max_cells"], nmax_cap=payload["nmax_cap"],
                rel_tol=payload["rel_tol"],
            )
    except (RuntimeError, MemoryError, ValueError) as e:
        row.update(n_star=None, gamma_star=None, ratio=None, at_lower_limit=None,
                   status=f"{type(e).__name__}: {e}".replace("\n", " ").strip())
        return row
    row.update(
        n_star=result.n_star,
        gamma_star=result.gamma_star,
        ratio=result.extension_ratio,
        at_lower_limit=result.at_lower_limit,
        non_monotone=list(result.non_monotone),
        status="ok",
    )
    return row


def checkpoint_path(config):
    """Where completed rows of `config` are recorded"""
    from pathlib import Path
    from ..utilities import tgrf_directory
    if config.output:
        return Path(config.output).expanduser().resolve().with_suffix(".checkpoint.jsonl")
    from hashlib import md5
    digest = md5(config.to_json().encode("utf-8")).hexdigest()[:12]
    return tgrf_directory("cache") / f"{config.kind}-d{config.d}-{digest}.checkpoint.jsonl"


def _read_checkpoint(path):
    import json
    from packaging.version import Version
    from ..__about__ import __version__
    rows = {}
    if not path.exists():
        return rows
    current = Version(__version__)
    stale = 0
    with path.open("r") as f:
        for line in f:
            if not line.strip():
                continue
            try:
                entry = json.loads(line)
            except json.JSONDecodeError:
                stale += 1
                continue
            written = Version(entry.get("version", "0"))
            if (written.major, written.minor) != (current.major, current.minor):
                stale += 1
                continue
            rows[tuple(entry["key"])] = entry["row"]
    if stale:
        warnings.warn(f"\nIgnored {stale} checkpoint lines in '{path}' from other versions or damaged writes")
    logger.info("Resuming from %d checkpointed rows in %s", len(rows), path)
    return rows


def _append_checkpoint(path, key, row):
    import json
    from ..__about__ import __version__
    from ..utilities import lock_file_manager
    path.parent.mkdir(parents=True, exist_ok=True)
    with lock_file_manager(path, "a") as f:
        print(json.dumps({"version": __version__, "key": key, "row": row}), file=f, flush=True)


def run_sweep(config, show_progress=False):
    """Run every row of `config`, resuming from its checkpoint

    Returns
    -------
    table : SweepDataFrame
        One row per (scheme, ν, h), in configuration order, with the columns of
        the sweep kind.

    """
    from concurrent.futures import ProcessPoolExecutor, as_completed
    from tqdm.auto import tqdm
    from ..utilities import setting

    config.validate()
    jobs = _jobs(config)
    path = checkpoint_path(config)
    done = _read_checkpoint(path)
    pending = [(key, payload) for key, payload in jobs if tuple(key) not in done]
    workers = config.workers or setting("workers")

    if pending:
        progress = tqdm(total=len(pending), disable=not show_progress, desc=f"{config.kind} d={config.d}")
        if workers == 1 or len(pending) == 1:
            for key, payload in pending:
                row = _run_row(payload)
                _append_checkpoint(path, key, row)
                done[tuple(key)] = row
                progress.update()
        else:
            with ProcessPoolExecutor(max_workers=workers) as executor:
                futures = {executor.submit(_run_row, payload): key for key, payload in pending}
                for future in as_completed(futures):
                    key = futures[future]
                    row = future.result()
                    _append_checkpoint(path, key, row)
                    done[tuple(key)] = row
                    progress.update()
        progress.close()

    rows = [done[tuple(key)] for key, _ in jobs]
    failed = [r for r in rows if r.get("status") != "ok"]
    if failed:
        warnings.warn(
            f"\n{len(failed)} of {len(rows)} rows of the {config.kind} sweep failed; "
            "they are kept in the table with their status and empty values"
        )
    return _table(config, rows)


def _table(config, rows):
    frame = pd.DataFrame(rows)
    frame["n_star"] = pd.array(frame["n_star"], dtype="Int64")
    frame["gamma_star"] = frame["gamma_star"].astype(float)
    if config.kind == "fig2":
        frame["ratio"] = frame["ratio"].astype(float)
        columns = FIG2_COLUMNS
    else:
        nu = frame["nu"].to_numpy(dtype=float)
        frame["nu_pow_neg_half"] = nu ** -0.5
        frame["nu_half_log_nu"] = np.sqrt(nu) * np.log(nu)
        columns = FIG3_COLUMNS
    return SweepDataFrame(frame[columns].reset_index(drop=True))


def write_outputs(config, table):
    """Write the CSV, its metadata sidecar, and the optional SVG"""
    import json
    from pathlib import Path
    from ..__about__ import __version__
    from ..utilities import format_float, md5checksum
    if not config.output:
        return
    path = Path(config.output).expanduser().resolve()
    path.parent.mkdir(parents=True, exist_ok=True)
    table.to_csv(path, index=False, float_format=format_float)
    metadata = {
        "tgrf_version": __version__,
        "columns": list(table.columns),
        "rows": len(table),
        "csv_md5": md5checksum(path),
        "partial": bool((table["status"] != "ok").any()),
        "gamma_resolution": "one grid step h (γ = N h / 2 with N even)",
        "config": config.to_dict(),
    }
    with path.with_suffix(".meta.json").open("w") as f:
        json.dump(metadata, f, indent=4, separators=(",", ": "))
    if config.svg:
        from .plotting import svg_plot, sweep_axes
        svg = svg_plot(table, sweep_axes(config.kind))
        Path(config.svg).expanduser().resolve().write_text(svg)


def fig2_sweep(config, show_progress=False):
    """Minimal γ and extension ratio over h, classical against smooth

    Returns a `SweepDataFrame` with columns `FIG2_COLUMNS`, where `ratio` is
    (extended points)/(original points) = (N*/m)^d.

    """
    if config.kind != "fig2":
        raise ConfigError(f"Expected an extension-ratio ('fig2') configuration; got '{config.kind}'")
    table = run_sweep(config, show_progress=show_progress)
    write_outputs(config, table)
    return table


def fig3_sweep(config, show_progress=False):
    """Minimal γ over ν for the smooth cutoffs

    Returns a `SweepDataFrame` with columns `FIG3_COLUMNS`, including the
    reference asymptotes ν^{-1/2} and ν^{1/2} log ν.

    """
    if config.kind != "fig3":
        raise ConfigError(f"Expected a smoothness ('fig3') configuration; got '{config.kind}'")
    table = run_sweep(config, show_progress=show_progress)
    write_outputs(config, table)
    return table
