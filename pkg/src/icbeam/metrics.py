"""Scalar performance functionals: SINR, rates, leakage, sweep slopes.

Rates are in bits per channel use (log base 2) throughout.  The shared
dB/linear converters are re-exported here so metric users never roll
their own.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .equilibria import BeamformerProfile
from .network import ChannelRealization, db_to_linear, effective_channel, linear_to_db

__all__ = [
    "LinkRates",
    "db_to_linear",
    "linear_to_db",
    "link_rates",
    "multiplexing_gain",
    "sinr",
    "slope_bits_per_decade",
    "sum_rate",
    "total_leakage",
]


@dataclass(frozen=True)
class LinkRates:
    per_link: np.ndarray  # bits/channel use, one entry per link
    sum: float


def sinr(r: ChannelRealization, profile: BeamformerProfile, link: int) -> float:
    """Received SINR of one link under the current profile."""
    cfg = r.config
    p = cfg.tx_power
    signal = (
        p
        * np.abs(
            profile.rx[link].conj() @ (effective_channel(r, link, link) @ profile.tx[link])
        )
        ** 2
    )
    interference = 0.0
    for j in range(cfg.n_links):
        if j == link:
            continue
        x = profile.rx[link].conj() @ (effective_channel(r, link, j) @ profile.tx[j])
        interference += p * float(np.abs(x)) ** 2
    return float(signal / (interference + cfg.noise_power[link]))


def link_rates(r: ChannelRealization, profile: BeamformerProfile) -> LinkRates:
    """Per-link rates ``log2(1 + SINR_i)`` and their sum."""
    per_link = np.array(
        [np.log2(1.0 + sinr(r, profile, i)) for i in range(r.config.n_links)]
    )
    return LinkRates(per_link=per_link, sum=float(per_link.sum()))


def sum_rate(r: ChannelRealization, profile: BeamformerProfile) -> float:
    return link_rates(r, profile).sum


def total_leakage(r: ChannelRealization, profile: BeamformerProfile) -> float:
    """Total cross-link interference power ``sum_{i, j != i} |v_i^H H_ij w_j|^2 P``."""
    cfg = r.config
    total = 0.0
    for i in range(cfg.n_links):
        for j in range(cfg.n_links):
            if j == i:
                continue
            x = profile.rx[i].conj() @ (effective_channel(r, i, j) @ profile.tx[j])
            total += cfg.tx_power * float(np.abs(x)) ** 2
    return total


def slope_bits_per_decade(sweep: list[tuple[float, float]]) -> float:
    """Least-squares slope of mean sum rate versus SNR, in bits per 10 dB."""
    if len(sweep) < 2:
        raise ValueError("need at least two sweep points")
    snr_db = np.array([p[0] for p in sweep], dtype=float)
    rates = np.array([p[1] for p in sweep], dtype=float)
    if np.unique(snr_db).size < 2:
        raise ValueError("sweep points must have distinct SNR values")
    decades = snr_db / 10.0
    slope, _ = np.polyfit(decades, rates, 1)
    return float(slope)


def multiplexing_gain(sweep: list[tuple[float, float]]) -> float:
    """Slope of the sweep expressed in interference-free stream equivalents.

    A rate growing like ``d * log2(SNR)`` has slope ``d * log2(10)`` bits
    per decade, so dividing by ``log2(10)`` recovers ``d``.
    """
    return slope_bits_per_decade(sweep) / np.log2(10.0)
