"""FastAPI service wrapping the sweep engine.

The service is synchronous by design: a sweep request blocks until the
CSV is ready.  The CLI talks to this app in-process by default and over
HTTP when pointed at a remote instance.
"""

from __future__ import annotations

from dataclasses import replace

from fastapi import FastAPI, HTTPException

from .. import __version__
from ..harness import (
    CSV_COLUMNS,
    PRESETS,
    ParseError,
    SweepConfig,
    ValidationError,
    config_to_text,
    get_preset,
    parse_config,
    render_csv,
    run_sweep,
)
from ..network import FAMILIES
from .models import (
    HealthResponse,
    PresetConfigResponse,
    PresetSummary,
    ScenarioCatalog,
    SweepRunRequest,
    SweepRunResponse,
    ValidateConfigRequest,
    ValidateConfigResponse,
)


def _summary(name: str, cfg: SweepConfig) -> PresetSummary:
    return PresetSummary(
        name=name,
        family=cfg.scenario.family,
        n_links=cfg.scenario.n_links,
        n_tx_ant=cfg.scenario.n_tx_ant,
        n_rx_ant=cfg.scenario.n_rx_ant,
        snr_grid_db=list(cfg.snr_grid_db),
        algorithms=[a.value for a in cfg.algorithms],
        trials=cfg.trials,
        base_seed=cfg.base_seed,
    )


def _resolve_config(req: SweepRunRequest) -> SweepConfig:
    if req.preset is not None:
        try:
            cfg = get_preset(req.preset)
        except KeyError as exc:
            raise HTTPException(status_code=404, detail=str(exc)) from exc
    else:
        try:
            cfg = parse_config(req.config_text)
        except (ParseError, ValidationError) as exc:
            raise HTTPException(status_code=422, detail=str(exc)) from exc
    if req.seed is not None:
        cfg = replace(cfg, base_seed=req.seed)
    return cfg


def create_app() -> FastAPI:
    app = FastAPI(title="icbeam", version=__version__)

    @app.get("/health", response_model=HealthResponse)
    def health():
        return HealthResponse(status="ok", version=__version__)

    @app.get("/scenarios", response_model=ScenarioCatalog)
    def scenarios():
        return ScenarioCatalog(
            families=list(FAMILIES),
            presets=[_summary(name, cfg) for name, cfg in sorted(PRESETS.items())],
        )

    @app.get("/scenarios/{name}", response_model=PresetConfigResponse)
    def scenario_config(name: str):
        try:
            cfg = get_preset(name)
        except KeyError as exc:
            raise HTTPException(status_code=404, detail=str(exc)) from exc
        return PresetConfigResponse(name=name, config_text=config_to_text(cfg))

    @app.post("/configs/validate", response_model=ValidateConfigResponse)
    def validate(req: ValidateConfigRequest):
        try:
            cfg = parse_config(req.config_text)
        except (ParseError, ValidationError) as exc:
            raise HTTPException(status_code=422, detail=str(exc)) from exc
        return ValidateConfigResponse(
            valid=True,
            scenario=cfg.scenario_name,
            snr_grid_db=list(cfg.snr_grid_db),
            algorithms=[a.value for a in cfg.algorithms],
            trials=cfg.trials,
            base_seed=cfg.base_seed,
            output_path=cfg.output_path,
        )

    @app.post("/sweeps/run", response_model=SweepRunResponse)
    def sweep_run(req: SweepRunRequest):
        cfg = _resolve_config(req)
        result = run_sweep(cfg, workers=req.workers)
        return SweepRunResponse(
            scenario=cfg.scenario_name,
            columns=list(CSV_COLUMNS),
            row_count=len(result.rows),
            csv_text=render_csv(result),
            output_path=cfg.output_path,
        )

    return app


app = create_app()
