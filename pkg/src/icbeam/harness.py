"""Monte-Carlo sweep engine: config parsing, seeded sweeps, CSV emission.

Config files are flat INI-style key/value documents with three sections::

    [scenario]
    family = symmetric          # symmetric | asym_noise | asym_sir | weak_direct
    n_links = 3
    n_tx_ant = 2
    n_rx_ant = 2
    sir_db = 0, 0, 0            # one value per link (a single value broadcasts)
    delta_noise_db = 0          # asym_noise / asym_sir only
    delta_direct_db = 0         # weak_direct only
    victim_link = 0             # 0-based link index

    [sweep]
    snr_grid_db = 0, 5, 10
    algorithms = DBA, MAXSINR
    trials = 100
    base_seed = 1234
    output_path = out.csv       # optional

    [settings]                  # optional section, all keys optional
    max_iters = 500
    tol_sumrate = 0.001
    init_mode = fixed_basis     # fixed_basis | seeded_random
    restarts = 1
    lambda_direct_gain = ii     # ii | jj

Unknown sections or keys are errors (no silent typo acceptance).  Within a
trial the fading realization is drawn once (seed = base_seed + trial) and
shared across every algorithm and SNR point; only noise powers are
rescaled along the grid.  All algorithms start a trial from the identical
initial profile.  Rows are ordered (algorithm, snr, trial) in config
order, so parallel execution never changes the output bytes.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace

import numpy as np

from .algorithms import AlgorithmId, RunSettings, ia_residual, run_algorithm
from .equilibria import DegenerateDirectionError
from .metrics import total_leakage
from .network import ChannelRealization, ScenarioSpec, build_scenario, draw_realization
from .numerics import NonFiniteError, NonHermitianError, NotPositiveDefiniteError

CSV_COLUMNS = (
    "scenario",
    "algorithm",
    "snr_db",
    "trial",
    "seed",
    "iterations",
    "converged",
    "sum_rate_bits",
    "leakage",
    "ia_residual",
)

_RUN_ERRORS = (
    DegenerateDirectionError,
    NonFiniteError,
    NonHermitianError,
    NotPositiveDefiniteError,
)


class ParseError(ValueError):
    """Malformed config document; carries the offending line number."""

    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


class ValidationError(ValueError):
    """Well-formed config with an invalid field value."""

    def __init__(self, field: str, message: str = ""):
        super().__init__(f"{field}: {message}" if message else field)
        self.field = field


@dataclass(frozen=True)
class SweepConfig:
    scenario: ScenarioSpec
    snr_grid_db: tuple[float, ...]
    algorithms: tuple[AlgorithmId, ...]
    trials: int
    base_seed: int
    settings: RunSettings = RunSettings()
    output_path: str | None = None
    scenario_name: str = ""

    def __post_init__(self):
        if not self.snr_grid_db:
            raise ValidationError("snr_grid_db", "must not be empty")
        if not self.algorithms:
            raise ValidationError("algorithms", "must not be empty")
        if self.trials < 1:
            raise ValidationError("trials", "must be >= 1")
        if self.base_seed < 0:
            raise ValidationError("base_seed", "must be >= 0")
        if not self.scenario_name:
            object.__setattr__(self, "scenario_name", self.scenario.family)


@dataclass(frozen=True)
class SweepRow:
    scenario: str
    algorithm: str
    snr_db: float
    trial: int
    seed: int
    iterations: int
    converged: bool
    sum_rate_bits: float
    leakage: float
    ia_residual: float


@dataclass
class SweepResult:
    rows: list[SweepRow]


# --------------------------------------------------------------------------
# config parsing
# --------------------------------------------------------------------------

_SECTION_KEYS = {
    "scenario": (
        "family",
        "n_links",
        "n_tx_ant",
        "n_rx_ant",
        "snr_db",
        "sir_db",
        "delta_noise_db",
        "delta_direct_db",
        "victim_link",
    ),
    "sweep": ("snr_grid_db", "algorithms", "trials", "base_seed", "output_path"),
    "settings": (
        "max_iters",
        "tol_sumrate",
        "init_mode",
        "restarts",
        "init_seed",
        "lambda_direct_gain",
    ),
}

_REQUIRED = {
    "scenario": ("family", "n_links", "n_tx_ant", "n_rx_ant"),
    "sweep": ("snr_grid_db", "algorithms", "trials", "base_seed"),
}


def _split_sections(text: str) -> dict[str, dict[str, tuple[str, int]]]:
    sections: dict[str, dict[str, tuple[str, int]]] = {k: {} for k in _SECTION_KEYS}
    current: str | None = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line.startswith("[") and line.endswith("]"):
            name = line[1:-1].strip()
            if name not in sections:
                raise ParseError(f"unknown section '[{name}]'", lineno)
            current = name
            continue
        if "=" not in line:
            raise ParseError("expected 'key = value'", lineno)
        if current is None:
            raise ParseError("key/value pair outside of any section", lineno)
        key, _, value = line.partition("=")
        key = key.strip()
        value = value.strip()
        if key not in _SECTION_KEYS[current]:
            raise ParseError(f"unknown key '{key}' in [{current}]", lineno)
        if key in sections[current]:
            raise ParseError(f"duplicate key '{key}' in [{current}]", lineno)
        sections[current][key] = (value, lineno)
    return sections


def _convert(section: dict, key: str, conv, default=None):
    if key not in section:
        return default
    value, lineno = section[key]
    try:
        return conv(value)
    except ValidationError:
        raise
    except (ValueError, KeyError) as exc:
        raise ParseError(f"bad value for '{key}': {exc}", lineno) from exc


def _float_list(value: str) -> tuple[float, ...]:
    return tuple(float(x.strip()) for x in value.split(",") if x.strip())


def _algorithm_list(value: str) -> tuple[AlgorithmId, ...]:
    return tuple(AlgorithmId(x.strip().upper()) for x in value.split(",") if x.strip())


def parse_config(text: str) -> SweepConfig:
    """Parse and fully validate a sweep config document."""
    sections = _split_sections(text)
    for section, keys in _REQUIRED.items():
        for key in keys:
            if key not in sections[section]:
                raise ValidationError(key, f"missing from [{section}]")

    scen = sections["scenario"]
    n_links = _convert(scen, "n_links", int)
    sir = _convert(scen, "sir_db", _float_list, default=(0.0,) * n_links)
    if len(sir) == 1 and n_links > 1:
        sir = sir * n_links
    try:
        spec = ScenarioSpec(
            family=_convert(scen, "family", str),
            n_links=n_links,
            n_tx_ant=_convert(scen, "n_tx_ant", int),
            n_rx_ant=_convert(scen, "n_rx_ant", int),
            snr_db=_convert(scen, "snr_db", float, default=0.0),
            sir_db=sir,
            delta_noise_db=_convert(scen, "delta_noise_db", float, default=0.0),
            delta_direct_db=_convert(scen, "delta_direct_db", float, default=0.0),
            victim_link=_convert(scen, "victim_link", int, default=0),
        )
    except ValueError as exc:
        if isinstance(exc, (ParseError, ValidationError)):
            raise
        raise ValidationError("scenario", str(exc)) from exc

    st = sections["settings"]
    try:
        settings = RunSettings(
            max_iters=_convert(st, "max_iters", int, default=500),
            tol_sumrate=_convert(st, "tol_sumrate", float, default=0.001),
            init_mode=_convert(st, "init_mode", str, default="fixed_basis"),
            restarts=_convert(st, "restarts", int, default=1),
            init_seed=_convert(st, "init_seed", int, default=0),
            lambda_direct_gain=_convert(st, "lambda_direct_gain", str, default="ii"),
        )
    except ValueError as exc:
        if isinstance(exc, (ParseError, ValidationError)):
            raise
        raise ValidationError("settings", str(exc)) from exc

    sw = sections["sweep"]
    return SweepConfig(
        scenario=spec,
        snr_grid_db=_convert(sw, "snr_grid_db", _float_list),
        algorithms=_convert(sw, "algorithms", _algorithm_list),
        trials=_convert(sw, "trials", int),
        base_seed=_convert(sw, "base_seed", int),
        settings=settings,
        output_path=_convert(sw, "output_path", str, default=None),
    )


def config_to_text(cfg: SweepConfig) -> str:
    """Render a config back to the document format ``parse_config`` accepts."""
    s = cfg.scenario
    lines = [
        "[scenario]",
        f"family = {s.family}",
        f"n_links = {s.n_links}",
        f"n_tx_ant = {s.n_tx_ant}",
        f"n_rx_ant = {s.n_rx_ant}",
        f"snr_db = {_fmt(s.snr_db)}",
        f"sir_db = {', '.join(_fmt(x) for x in s.sir_db)}",
        f"delta_noise_db = {_fmt(s.delta_noise_db)}",
        f"delta_direct_db = {_fmt(s.delta_direct_db)}",
        f"victim_link = {s.victim_link}",
        "",
        "[sweep]",
        f"snr_grid_db = {', '.join(_fmt(x) for x in cfg.snr_grid_db)}",
        f"algorithms = {', '.join(a.value for a in cfg.algorithms)}",
        f"trials = {cfg.trials}",
        f"base_seed = {cfg.base_seed}",
    ]
    if cfg.output_path:
        lines.append(f"output_path = {cfg.output_path}")
    t = cfg.settings
    lines += [
        "",
        "[settings]",
        f"max_iters = {t.max_iters}",
        f"tol_sumrate = {_fmt(t.tol_sumrate)}",
        f"init_mode = {t.init_mode}",
        f"restarts = {t.restarts}",
        f"init_seed = {t.init_seed}",
        f"lambda_direct_gain = {t.lambda_direct_gain}",
    ]
    return "\n".join(lines) + "\n"


# --------------------------------------------------------------------------
# sweep execution
# --------------------------------------------------------------------------


def _run_trial(cfg: SweepConfig, trial: int) -> list[SweepRow]:
    seed = cfg.base_seed + trial
    base_net = build_scenario(replace(cfg.scenario, snr_db=cfg.snr_grid_db[0]))
    fading = draw_realization(base_net, seed)
    settings = replace(cfg.settings, init_seed=seed)
    rows = []
    for snr_db in cfg.snr_grid_db:
        net = build_scenario(replace(cfg.scenario, snr_db=snr_db))
        r = ChannelRealization(config=net, h_bar=fading.h_bar, seed=seed)
        for algorithm in cfg.algorithms:
            try:
                res = run_algorithm(algorithm, r, settings)
                row = SweepRow(
                    scenario=cfg.scenario_name,
                    algorithm=algorithm.value,
                    snr_db=float(snr_db),
                    trial=trial,
                    seed=seed,
                    iterations=res.iterations,
                    converged=res.converged,
                    sum_rate_bits=res.trace[-1].sum_rate,
                    leakage=total_leakage(r, res.profile),
                    ia_residual=ia_residual(r, res.profile),
                )
            except _RUN_ERRORS:
                row = SweepRow(
                    scenario=cfg.scenario_name,
                    algorithm=algorithm.value,
                    snr_db=float(snr_db),
                    trial=trial,
                    seed=seed,
                    iterations=0,
                    converged=False,
                    sum_rate_bits=math.nan,
                    leakage=math.nan,
                    ia_residual=math.nan,
                )
            rows.append(row)
    return rows


def run_sweep(cfg: SweepConfig, workers: int = 1) -> SweepResult:
    """Run every (algorithm, snr, trial) cell of the sweep.

    ``workers > 1`` distributes trials over a process pool; the result is
    re-sorted into canonical order so parallelism never changes output.
    """
    if workers <= 1:
        per_trial = [_run_trial(cfg, t) for t in range(cfg.trials)]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            per_trial = list(pool.map(_run_trial, [cfg] * cfg.trials, range(cfg.trials)))
    by_key = {
        (row.algorithm, row.snr_db, row.trial): row
        for rows in per_trial
        for row in rows
    }
    ordered = [
        by_key[(algorithm.value, float(snr_db), trial)]
        for algorithm in cfg.algorithms
        for snr_db in cfg.snr_grid_db
        for trial in range(cfg.trials)
    ]
    return SweepResult(rows=ordered)


def trial_sum_rates(result: SweepResult, algorithm: AlgorithmId, snr_db: float) -> np.ndarray:
    """Per-trial sum rates for one (algorithm, snr) cell, in trial order."""
    rows = [
        row
        for row in result.rows
        if row.algorithm == AlgorithmId(algorithm).value and row.snr_db == float(snr_db)
    ]
    rows.sort(key=lambda row: row.trial)
    return np.array([row.sum_rate_bits for row in rows])


def mean_sum_rate(result: SweepResult, algorithm: AlgorithmId, snr_db: float) -> float:
    return float(np.mean(trial_sum_rates(result, algorithm, snr_db)))


# --------------------------------------------------------------------------
# CSV emission
# --------------------------------------------------------------------------


def _fmt(x: float) -> str:
    if isinstance(x, float) and math.isnan(x):
        return "nan"
    return f"{x:.10g}"


def render_csv(result: SweepResult) -> str:
    lines = [",".join(CSV_COLUMNS)]
    for row in result.rows:
        lines.append(
            ",".join(
                (
                    row.scenario,
                    row.algorithm,
                    _fmt(row.snr_db),
                    str(row.trial),
                    str(row.seed),
                    str(row.iterations),
                    "true" if row.converged else "false",
                    _fmt(row.sum_rate_bits),
                    _fmt(row.leakage),
                    _fmt(row.ia_residual),
                )
            )
        )
    return "\n".join(lines) + "\n"


def emit_csv(result: SweepResult, path) -> None:
    with open(path, "w", newline="") as fh:
        fh.write(render_csv(result))


def parse_csv_text(text: str) -> SweepResult:
    lines = [line for line in text.split("\n") if line]
    if not lines or lines[0] != ",".join(CSV_COLUMNS):
        raise ValueError("unexpected CSV header")
    rows = []
    for line in lines[1:]:
        parts = line.split(",")
        if len(parts) != len(CSV_COLUMNS):
            raise ValueError(f"malformed CSV row: {line!r}")
        rows.append(
            SweepRow(
                scenario=parts[0],
                algorithm=parts[1],
                snr_db=float(parts[2]),
                trial=int(parts[3]),
                seed=int(parts[4]),
                iterations=int(parts[5]),
                converged=parts[6] == "true",
                sum_rate_bits=float(parts[7]),
                leakage=float(parts[8]),
                ia_residual=float(parts[9]),
            )
        )
    return SweepResult(rows=rows)


def read_csv(path) -> SweepResult:
    with open(path, "r", newline="") as fh:
        return parse_csv_text(fh.read())


# --------------------------------------------------------------------------
# bundled presets
# --------------------------------------------------------------------------

_ALL_ALGOS = (
    AlgorithmId.DBA,
    AlgorithmId.SRMAX,
    AlgorithmId.MAXSINR,
    AlgorithmId.ALTMIN,
)
_DEFAULT_GRID = tuple(float(x) for x in range(0, 45, 5))
_DEFAULT_TRIALS = 100
_DEFAULT_SEED = 1234

PRESETS: dict[str, SweepConfig] = {
    "fig3": SweepConfig(
        scenario=ScenarioSpec("symmetric", 3, 2, 2, sir_db=(0.0, 0.0, 0.0)),
        snr_grid_db=_DEFAULT_GRID,
        algorithms=_ALL_ALGOS,
        trials=_DEFAULT_TRIALS,
        base_seed=_DEFAULT_SEED,
        scenario_name="fig3",
    ),
    "fig4": SweepConfig(
        scenario=ScenarioSpec(
            "asym_noise", 3, 2, 2, sir_db=(10.0, 10.0, 10.0), delta_noise_db=20.0, victim_link=2
        ),
        snr_grid_db=_DEFAULT_GRID,
        algorithms=_ALL_ALGOS,
        trials=_DEFAULT_TRIALS,
        base_seed=_DEFAULT_SEED,
        scenario_name="fig4",
    ),
    "fig6": SweepConfig(
        scenario=ScenarioSpec(
            "asym_sir", 3, 2, 2, sir_db=(10.0, 10.0, -10.0), delta_noise_db=20.0, victim_link=2
        ),
        snr_grid_db=_DEFAULT_GRID,
        algorithms=_ALL_ALGOS,
        trials=_DEFAULT_TRIALS,
        base_seed=_DEFAULT_SEED,
        scenario_name="fig6",
    ),
    # victim SIR of -30 dB keeps the victim's incoming cross gains at the
    # symmetric baseline: only the direct path is shadowed
    "fig7": SweepConfig(
        scenario=ScenarioSpec(
            "weak_direct", 3, 2, 2, sir_db=(-30.0, 0.0, 0.0), delta_direct_db=30.0, victim_link=0
        ),
        snr_grid_db=_DEFAULT_GRID,
        algorithms=_ALL_ALGOS,
        trials=_DEFAULT_TRIALS,
        base_seed=_DEFAULT_SEED,
        scenario_name="fig7",
    ),
}


def get_preset(name: str) -> SweepConfig:
    try:
        return PRESETS[name]
    except KeyError:
        raise KeyError(
            f"unknown preset '{name}'; available: {', '.join(sorted(PRESETS))}"
        ) from None
