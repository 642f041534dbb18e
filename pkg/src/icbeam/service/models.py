"""Pydantic request/response models for the HTTP surface."""

from __future__ import annotations

from pydantic import BaseModel, Field, model_validator


class HealthResponse(BaseModel):
    status: str
    version: str


class PresetSummary(BaseModel):
    name: str
    family: str
    n_links: int
    n_tx_ant: int
    n_rx_ant: int
    snr_grid_db: list[float]
    algorithms: list[str]
    trials: int
    base_seed: int


class ScenarioCatalog(BaseModel):
    families: list[str]
    presets: list[PresetSummary]


class PresetConfigResponse(BaseModel):
    name: str
    config_text: str


class ValidateConfigRequest(BaseModel):
    config_text: str


class ValidateConfigResponse(BaseModel):
    valid: bool
    scenario: str
    snr_grid_db: list[float]
    algorithms: list[str]
    trials: int
    base_seed: int
    output_path: str | None


class SweepRunRequest(BaseModel):
    """Run a sweep from an inline config document or a named preset."""

    config_text: str | None = None
    preset: str | None = None
    seed: int | None = Field(default=None, ge=0, description="base_seed override")
    workers: int = Field(default=1, ge=1, le=64)

    @model_validator(mode="after")
    def _exactly_one_source(self):
        if (self.config_text is None) == (self.preset is None):
            raise ValueError("provide exactly one of config_text or preset")
        return self


class SweepRunResponse(BaseModel):
    scenario: str
    columns: list[str]
    row_count: int
    csv_text: str
    output_path: str | None
