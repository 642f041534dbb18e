"""Channel generation and scenario construction.

The channel from transmitter ``i`` to receiver ``j`` is
``H[j, i] = sqrt(alpha[j, i]) * h_bar[j, i]`` where ``h_bar`` entries are
i.i.d. circularly symmetric complex Gaussian with unit variance and
``alpha`` collects slow path-loss/shadowing power gains.  Out-of-cluster
interference is folded into the per-link white noise powers, which is why
scenarios only carry ``alpha``, ``noise_power`` and ``tx_power``.

Randomness: numpy's counter-based Philox generator keyed directly by the
realization seed; normal variates come from numpy's ziggurat
``standard_normal`` and a unit-variance complex entry is
``(x + 1j*y) / sqrt(2)``.  Identical ``(config, seed)`` pairs therefore
reproduce identical channels.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

FAMILIES = ("symmetric", "asym_noise", "asym_sir", "weak_direct")


def db_to_linear(x_db):
    """Shared dB -> linear power conversion (single definition package-wide)."""
    return 10.0 ** (x_db / 10.0)


def linear_to_db(x):
    return 10.0 * np.log10(x)


def _readonly(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class NetworkConfig:
    """Static scenario description; everything downstream is derived from it.

    ``alpha[j, i]`` is the linear power gain from transmitter i to receiver
    j, ``noise_power[i]`` the white noise power at receiver i (including
    uncoordinated interference) and ``tx_power`` the common transmit power.
    """

    n_links: int
    n_tx_ant: int
    n_rx_ant: int
    alpha: np.ndarray
    noise_power: np.ndarray
    tx_power: float

    def __post_init__(self):
        if self.n_links < 1 or self.n_tx_ant < 1 or self.n_rx_ant < 1:
            raise ValueError("link and antenna counts must be positive")
        alpha = _readonly(np.array(self.alpha, dtype=float))
        noise = _readonly(np.array(self.noise_power, dtype=float))
        object.__setattr__(self, "alpha", alpha)
        object.__setattr__(self, "noise_power", noise)
        n = self.n_links
        if alpha.shape != (n, n):
            raise ValueError(f"alpha must be {n}x{n}, got {alpha.shape}")
        if noise.shape != (n,):
            raise ValueError(f"noise_power must have length {n}")
        if not np.all(np.isfinite(alpha)) or np.any(alpha < 0):
            raise ValueError("alpha entries must be finite and >= 0")
        if np.any(np.diag(alpha) <= 0):
            raise ValueError("direct gains alpha[i, i] must be > 0")
        if not np.all(np.isfinite(noise)) or np.any(noise <= 0):
            raise ValueError("noise powers must be finite and > 0")
        if not np.isfinite(self.tx_power) or self.tx_power <= 0:
            raise ValueError("tx_power must be finite and > 0")


@dataclass(frozen=True, eq=False)
class ChannelRealization:
    """One draw of all fast-fading matrices plus the config that scales them.

    Only the unit-variance ``h_bar`` is stored; the effective channels
    ``sqrt(alpha) * h_bar`` are recomputed on demand so the same fading can
    be re-scaled across an SNR sweep.
    """

    config: NetworkConfig
    h_bar: np.ndarray  # (n_links, n_links, n_rx_ant, n_tx_ant), h_bar[rx, tx]
    seed: int

    def __post_init__(self):
        h = np.asarray(self.h_bar, dtype=np.complex128)
        object.__setattr__(self, "h_bar", _readonly(h))
        cfg = self.config
        expected = (cfg.n_links, cfg.n_links, cfg.n_rx_ant, cfg.n_tx_ant)
        if h.shape != expected:
            raise ValueError(f"h_bar must have shape {expected}, got {h.shape}")
        if not np.all(np.isfinite(h)):
            raise ValueError("h_bar has non-finite entries")


def draw_realization(config: NetworkConfig, seed: int) -> ChannelRealization:
    """Draw a channel realization from a deterministic seeded generator."""
    if seed < 0:
        raise ValueError("seed must be a non-negative integer")
    rng = np.random.Generator(np.random.Philox(key=seed))
    shape = (config.n_links, config.n_links, config.n_rx_ant, config.n_tx_ant)
    h_bar = (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) / np.sqrt(2.0)
    return ChannelRealization(config=config, h_bar=h_bar, seed=seed)


def effective_channel(r: ChannelRealization, rx: int, tx: int) -> np.ndarray:
    """Effective channel ``sqrt(alpha[rx, tx]) * h_bar[rx, tx]``."""
    n = r.config.n_links
    if not (0 <= rx < n and 0 <= tx < n):
        raise IndexError(f"link indices ({rx}, {tx}) out of range for {n} links")
    return np.sqrt(r.config.alpha[rx, tx]) * r.h_bar[rx, tx]


@dataclass(frozen=True)
class ScenarioSpec:
    """Declarative description of one of the four scenario families.

    ``snr_db`` is the reference per-link SNR ``tx_power * alpha_ii /
    noise_power`` in dB; ``sir_db[i]`` the per-link in-cluster
    signal-to-interference ratio ``alpha_ii / sum_{j != i} alpha_ij`` in dB.
    Exactly one family offset is active:

    * ``asym_noise`` / ``asym_sir``: the victim link's noise power is
      raised by ``delta_noise_db``,
    * ``weak_direct``: the victim link's direct gain is lowered by
      ``delta_direct_db`` (noise powers stay equal across links).

    ``victim_link`` is a 0-based link index.
    """

    family: str
    n_links: int
    n_tx_ant: int
    n_rx_ant: int
    snr_db: float = 0.0
    sir_db: tuple[float, ...] = ()
    delta_noise_db: float = 0.0
    delta_direct_db: float = 0.0
    victim_link: int = 0

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family '{self.family}', expected one of {FAMILIES}")
        if self.n_links < 1 or self.n_tx_ant < 1 or self.n_rx_ant < 1:
            raise ValueError("link and antenna counts must be positive")
        sir = tuple(float(s) for s in self.sir_db) or (0.0,) * self.n_links
        object.__setattr__(self, "sir_db", sir)
        if len(sir) != self.n_links:
            raise ValueError(f"sir_db must have {self.n_links} entries, got {len(sir)}")
        if not (0 <= self.victim_link < self.n_links):
            raise ValueError("victim_link out of range")
        if self.family in ("symmetric", "weak_direct") and self.delta_noise_db != 0.0:
            raise ValueError(f"delta_noise_db must be 0 for family '{self.family}'")
        if self.family != "weak_direct" and self.delta_direct_db != 0.0:
            raise ValueError(f"delta_direct_db must be 0 for family '{self.family}'")
        for name in ("snr_db", "delta_noise_db", "delta_direct_db"):
            if not np.isfinite(getattr(self, name)):
                raise ValueError(f"{name} must be finite")


def build_scenario(spec: ScenarioSpec) -> NetworkConfig:
    """Materialize a ``NetworkConfig`` from a scenario description.

    Direct gains default to 1.0 (the weak_direct victim is scaled down by
    its offset); cross gains split each link's aggregate interference
    budget equally over the ``n_links - 1`` interferers so that the
    requested per-link SIR holds exactly.  ``tx_power`` is fixed at 1.0 and
    SNR is swept through the noise powers.  Noise powers are set from the
    baseline direct gain, so a weak_direct victim keeps the same noise
    floor as its neighbours and its effective SNR drops by the offset.
    """
    n = spec.n_links
    tx_power = 1.0
    gamma = db_to_linear(spec.snr_db)
    direct = np.ones(n)
    if spec.family == "weak_direct":
        direct[spec.victim_link] /= db_to_linear(spec.delta_direct_db)
    alpha = np.zeros((n, n))
    for i in range(n):
        alpha[i, i] = direct[i]
        if n > 1:
            sir_lin = db_to_linear(spec.sir_db[i])
            alpha[i, :] = direct[i] / ((n - 1) * sir_lin)
            alpha[i, i] = direct[i]
    noise = np.full(n, tx_power / gamma)
    if spec.family in ("asym_noise", "asym_sir"):
        noise[spec.victim_link] *= db_to_linear(spec.delta_noise_db)
    return NetworkConfig(
        n_links=n,
        n_tx_ant=spec.n_tx_ant,
        n_rx_ant=spec.n_rx_ant,
        alpha=alpha,
        noise_power=noise,
        tx_power=tx_power,
    )
