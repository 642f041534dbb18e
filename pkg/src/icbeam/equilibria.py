"""Per-link beamforming equilibria on the interference channel.

For link ``i`` with unit-norm transmit vector ``w_i`` and receive vector
``v_i``, the two extreme single-link objectives have closed-form best
responses:

* egoistic (maximize own SINR): ``w_i`` is the dominant eigenvector of
  ``E_i = H_ii^H v_i v_i^H H_ii``;
* altruistic (minimize interference caused): ``w_i`` is the least
  eigenvector of ``sum_{j != i} A_ji`` with
  ``A_ji = H_ji^H v_j v_j^H H_ji``.

A weighted compromise ``V^max(E_i + sum_j lambda_ji A_ji)`` with negative
weights interpolates between the two.  ``optimal_lambda`` gives the
weights that make every such update a stationary point of the network sum
rate for the current receivers; ``heuristic_lambda`` gives weights that
depend on long-term statistics (path gains, noise powers) only.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .network import ChannelRealization, NetworkConfig, effective_channel
from .numerics import canonical_phase, dominant_eigvec, least_eigvec, solve_hpd

UNIT_NORM_TOL = 1e-10
DEGENERATE_TOL = 1e-14


class DegenerateDirectionError(ValueError):
    """A beamforming update hit a numerically zero direct-signal direction."""


@dataclass(eq=False)
class BeamformerProfile:
    """Unit-norm transmit vectors ``tx[i]`` and receive vectors ``rx[i]``.

    Treated as immutable: algorithms build a fresh profile per sweep
    rather than mutating one in place.
    """

    tx: list[np.ndarray]
    rx: list[np.ndarray]

    def __post_init__(self):
        self.tx = [np.ascontiguousarray(w, dtype=np.complex128) for w in self.tx]
        self.rx = [np.ascontiguousarray(v, dtype=np.complex128) for v in self.rx]
        if len(self.tx) != len(self.rx):
            raise ValueError("tx and rx must have one vector per link")
        for name, vecs in (("tx", self.tx), ("rx", self.rx)):
            for i, vec in enumerate(vecs):
                if vec.ndim != 1:
                    raise ValueError(f"{name}[{i}] must be a 1-D vector")
                if abs(np.linalg.norm(vec) - 1.0) > UNIT_NORM_TOL:
                    raise ValueError(f"{name}[{i}] is not unit norm")

    @property
    def n_links(self) -> int:
        return len(self.tx)

    def replace_tx(self, tx: list[np.ndarray]) -> "BeamformerProfile":
        return BeamformerProfile(tx=tx, rx=self.rx)

    def replace_rx(self, rx: list[np.ndarray]) -> "BeamformerProfile":
        return BeamformerProfile(tx=self.tx, rx=rx)


def fixed_basis_profile(config: NetworkConfig) -> BeamformerProfile:
    """All transmit and receive vectors set to the first standard basis vector."""
    e_tx = np.zeros(config.n_tx_ant, dtype=np.complex128)
    e_tx[0] = 1.0
    e_rx = np.zeros(config.n_rx_ant, dtype=np.complex128)
    e_rx[0] = 1.0
    return BeamformerProfile(
        tx=[e_tx.copy() for _ in range(config.n_links)],
        rx=[e_rx.copy() for _ in range(config.n_links)],
    )


def random_unit_vector(rng: np.random.Generator, dim: int) -> np.ndarray:
    z = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
    return canonical_phase(z / np.linalg.norm(z))


def interference_covariance(
    r: ChannelRealization, profile: BeamformerProfile, link: int
) -> np.ndarray:
    """Covariance of interference plus noise seen at receiver ``link``:
    ``sum_{j != i} H_ij w_j w_j^H H_ij^H * P + sigma_i^2 * I``."""
    cfg = r.config
    cov = cfg.noise_power[link] * np.eye(cfg.n_rx_ant, dtype=np.complex128)
    for j in range(cfg.n_links):
        if j == link:
            continue
        g = effective_channel(r, link, j) @ profile.tx[j]
        cov += cfg.tx_power * np.outer(g, g.conj())
    return cov


def max_sinr_receiver(
    r: ChannelRealization, profile: BeamformerProfile, link: int
) -> np.ndarray:
    """SINR-maximizing unit receive vector ``C^-1 H_ii w_i`` (normalized)."""
    h = effective_channel(r, link, link) @ profile.tx[link]
    if np.linalg.norm(h) < DEGENERATE_TOL:
        raise DegenerateDirectionError(f"zero direct-signal direction on link {link}")
    cov = interference_covariance(r, profile, link)
    x = solve_hpd(cov, h)
    return canonical_phase(x / np.linalg.norm(x))


def egoistic_matrix(
    r: ChannelRealization, profile: BeamformerProfile, link: int
) -> np.ndarray:
    """Rank-one matrix whose dominant eigenvector maximizes link ``link``'s SINR."""
    g = effective_channel(r, link, link).conj().T @ profile.rx[link]
    return np.outer(g, g.conj())


def altruistic_matrix(
    r: ChannelRealization, profile: BeamformerProfile, victim: int, tx: int
) -> np.ndarray:
    """Rank-one matrix quantifying interference transmitter ``tx`` causes
    receiver ``victim``."""
    a = effective_channel(r, victim, tx).conj().T @ profile.rx[victim]
    return np.outer(a, a.conj())


def egoistic_response(
    r: ChannelRealization, profile: BeamformerProfile, link: int
) -> np.ndarray:
    """Transmit vector maximizing own SINR for the current receivers."""
    g = effective_channel(r, link, link).conj().T @ profile.rx[link]
    if np.linalg.norm(g) < DEGENERATE_TOL:
        raise DegenerateDirectionError(f"zero direct-signal direction on link {link}")
    return dominant_eigvec(egoistic_matrix(r, profile, link))


def altruistic_response(
    r: ChannelRealization, profile: BeamformerProfile, link: int
) -> np.ndarray:
    """Transmit vector minimizing total interference caused to other links."""
    cfg = r.config
    total = np.zeros((cfg.n_tx_ant, cfg.n_tx_ant), dtype=np.complex128)
    for j in range(cfg.n_links):
        if j != link:
            total += altruistic_matrix(r, profile, j, link)
    return least_eigvec(total)


def signal_power_matrix(r: ChannelRealization, profile: BeamformerProfile) -> np.ndarray:
    """``S[j, k] = |v_j^H H_jk w_k|^2 * P`` for all link pairs."""
    cfg = r.config
    n = cfg.n_links
    s = np.empty((n, n))
    for j in range(n):
        for k in range(n):
            x = profile.rx[j].conj() @ (effective_channel(r, j, k) @ profile.tx[k])
            s[j, k] = cfg.tx_power * float(np.abs(x)) ** 2
    return s


def optimal_lambda(r: ChannelRealization, profile: BeamformerProfile) -> np.ndarray:
    """Exact egoism-altruism weights for the current iterate.

    Entry ``(j, i)`` weighs how much transmitter i protects receiver j:

        -S_jj / (sum_k S_jk + sigma_j^2)
            * (sum_k S_ik + sigma_i^2) / (sum_{k != j} S_jk + sigma_j^2)

    With these weights, any transmit vector satisfying the weighted
    eigen-equation is a stationary point of the sum rate for the current
    receivers.  Needs global channel knowledge; recomputed each iteration.
    """
    cfg = r.config
    n = cfg.n_links
    s = signal_power_matrix(r, profile)
    row = s.sum(axis=1)
    sigma2 = cfg.noise_power
    lam = np.zeros((n, n))
    for j in range(n):
        for i in range(n):
            if i == j:
                continue
            lam[j, i] = -(s[j, j] / (row[j] + sigma2[j])) * (
                (row[i] + sigma2[i]) / (row[j] - s[j, j] + sigma2[j])
            )
    return lam


def heuristic_lambda(config: NetworkConfig, direct_gain: str = "ii") -> np.ndarray:
    """Statistical egoism-altruism weights; never reads a realization.

    With ``gamma_i = P * alpha_ii / sigma_i^2``, entry ``(j, i)`` is

        -[1 / (1 + 1/gamma_j)] * (1 + 1/gamma_i) * P * alpha_dd / sigma_j^2

    where ``alpha_dd`` is ``alpha[i, i]`` for ``direct_gain="ii"`` (the
    literal formula) or ``alpha[j, j]`` for ``direct_gain="jj"``.  When all
    direct gains are equal this reduces to
    ``-(1 + 1/gamma_i) / (1 + 1/gamma_j) * gamma_j``.
    """
    if direct_gain not in ("ii", "jj"):
        raise ValueError("direct_gain must be 'ii' or 'jj'")
    n = config.n_links
    p = config.tx_power
    sigma2 = config.noise_power
    gamma = p * np.diag(config.alpha) / sigma2
    lam = np.zeros((n, n))
    for j in range(n):
        for i in range(n):
            if i == j:
                continue
            alpha_dd = config.alpha[i, i] if direct_gain == "ii" else config.alpha[j, j]
            lam[j, i] = (
                -(1.0 / (1.0 + 1.0 / gamma[j]))
                * (1.0 + 1.0 / gamma[i])
                * p
                * alpha_dd
                / sigma2[j]
            )
    return lam


def validate_lambda(lambdas: np.ndarray, n_links: int) -> np.ndarray:
    lam = np.asarray(lambdas, dtype=float)
    if lam.shape != (n_links, n_links):
        raise ValueError(f"lambda matrix must be {n_links}x{n_links}, got {lam.shape}")
    if not np.all(np.isfinite(lam)):
        raise ValueError("lambda matrix has non-finite entries")
    off = lam[~np.eye(n_links, dtype=bool)]
    if off.size and off.max() > 0.0:
        raise ValueError("off-diagonal lambda entries must be <= 0")
    return lam


def balanced_matrix(
    r: ChannelRealization,
    profile: BeamformerProfile,
    link: int,
    lambdas: np.ndarray,
) -> np.ndarray:
    """``E_i + sum_{j != i} lambda_ji A_ji`` for transmitter ``link``."""
    lam = validate_lambda(lambdas, r.config.n_links)
    m = egoistic_matrix(r, profile, link)
    for j in range(r.config.n_links):
        if j != link:
            m += lam[j, link] * altruistic_matrix(r, profile, j, link)
    return m


def balanced_response(
    r: ChannelRealization,
    profile: BeamformerProfile,
    link: int,
    lambdas: np.ndarray,
) -> np.ndarray:
    """Dominant eigenvector of the weighted egoistic/altruistic compromise."""
    return dominant_eigvec(balanced_matrix(r, profile, link, lambdas))
