"""Iterative coordination algorithms and their verification helpers.

All algorithms alternate Jacobi-style sweeps: every receiver updates from
the frozen previous transmit set, then every transmitter updates from the
freshly computed receive set (SRMAX orders its sweep transmit-first, with
the weights recomputed from the current iterate).  Convergence is declared
when the sum rate changes by less than ``tol_sumrate`` between successive
iterations; non-convergence is reported through ``RunResult.converged``,
never raised.

Algorithms
----------
DBA        balanced transmit updates with statistical weights
SRMAX      balanced transmit updates with exact per-iterate weights
MAXSINR    SINR-maximizing updates on both sides (reciprocal network)
ALTMIN     alternating leakage minimization (ignores the direct channel)
EGO_ONLY   purely egoistic transmit updates
ALT_ONLY   purely altruistic transmit updates
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import NamedTuple, Optional

import numpy as np

from .equilibria import (
    BeamformerProfile,
    DegenerateDirectionError,
    balanced_response,
    fixed_basis_profile,
    heuristic_lambda,
    max_sinr_receiver,
    random_unit_vector,
    validate_lambda,
)
from .network import ChannelRealization, NetworkConfig, effective_channel
from .numerics import canonical_phase

INIT_MODES = ("fixed_basis", "seeded_random")


class AlgorithmId(str, Enum):
    DBA = "DBA"
    SRMAX = "SRMAX"
    MAXSINR = "MAXSINR"
    ALTMIN = "ALTMIN"
    EGO_ONLY = "EGO_ONLY"
    ALT_ONLY = "ALT_ONLY"


@dataclass(frozen=True)
class RunSettings:
    """Iteration budget, stopping rule and initialization policy.

    ``restarts > 1`` reruns from seeded random starts (restart 0 honors
    ``init_mode``) and keeps the best final sum rate.  ``init_seed`` keys
    the random starts; restart ``k`` derives its stream from
    ``(init_seed, k)``.
    """

    max_iters: int = 500
    tol_sumrate: float = 0.001
    init_mode: str = "fixed_basis"
    restarts: int = 1
    init_seed: int = 0
    lambda_direct_gain: str = "ii"

    def __post_init__(self):
        if self.max_iters < 1:
            raise ValueError("max_iters must be >= 1")
        if not self.tol_sumrate > 0:
            raise ValueError("tol_sumrate must be > 0")
        if self.init_mode not in INIT_MODES:
            raise ValueError(f"init_mode must be one of {INIT_MODES}")
        if self.restarts < 1:
            raise ValueError("restarts must be >= 1")
        if self.lambda_direct_gain not in ("ii", "jj"):
            raise ValueError("lambda_direct_gain must be 'ii' or 'jj'")


class TracePoint(NamedTuple):
    sum_rate: float  # bits/channel use
    leakage: float  # linear power
    max_beamformer_delta: float


@dataclass(eq=False)
class RunResult:
    profile: BeamformerProfile
    trace: list[TracePoint]
    converged: bool
    iterations: int


def initial_tx_vectors(
    config: NetworkConfig, settings: RunSettings, restart: int = 0
) -> list[np.ndarray]:
    """Initial transmit vectors for one restart (deterministic)."""
    if restart == 0 and settings.init_mode == "fixed_basis":
        e1 = np.zeros(config.n_tx_ant, dtype=np.complex128)
        e1[0] = 1.0
        return [e1.copy() for _ in range(config.n_links)]
    seq = np.random.SeedSequence(entropy=settings.init_seed, spawn_key=(restart,))
    rng = np.random.Generator(np.random.Philox(seq))
    return [random_unit_vector(rng, config.n_tx_ant) for _ in range(config.n_links)]


def initial_profile(
    config: NetworkConfig, settings: RunSettings, restart: int = 0
) -> BeamformerProfile:
    """Initial profile fed to every algorithm: shared transmit vectors plus
    placeholder basis receive vectors (each algorithm derives its own
    receivers in its first sweep)."""
    return fixed_basis_profile(config).replace_tx(
        initial_tx_vectors(config, settings, restart)
    )


def downlink_interference_gram(
    r: ChannelRealization, profile: BeamformerProfile, link: int
) -> np.ndarray:
    """``sum_{k != i} H_ik w_k w_k^H H_ik^H``: interference directions at Rx i."""
    cfg = r.config
    q = np.zeros((cfg.n_rx_ant, cfg.n_rx_ant), dtype=np.complex128)
    for k in range(cfg.n_links):
        if k == link:
            continue
        g = effective_channel(r, link, k) @ profile.tx[k]
        q += np.outer(g, g.conj())
    return q


def uplink_interference_gram(
    r: ChannelRealization, profile: BeamformerProfile, link: int
) -> np.ndarray:
    """``sum_{k != i} H_ki^H v_k v_k^H H_ki``: interference Tx i causes."""
    cfg = r.config
    q = np.zeros((cfg.n_tx_ant, cfg.n_tx_ant), dtype=np.complex128)
    for k in range(cfg.n_links):
        if k == link:
            continue
        a = effective_channel(r, k, link).conj().T @ profile.rx[k]
        q += np.outer(a, a.conj())
    return q


def _maxsinr_rx_sweep(r: ChannelRealization, profile: BeamformerProfile):
    return [max_sinr_receiver(r, profile, i) for i in range(r.config.n_links)]


class _SweepEngine:
    """Vectorized per-realization sweep kernels for the iteration loop.

    Mathematically identical to the public per-link operations (same
    formulas, same LAPACK primitives) but batched over links so a full
    iteration costs a handful of numpy calls.  Rows of ``w``/``v`` hold
    one beamformer per link.
    """

    def __init__(self, r: ChannelRealization):
        cfg = r.config
        self.n = cfg.n_links
        self.p = cfg.tx_power
        self.sigma2 = cfg.noise_power
        self.h = np.sqrt(cfg.alpha)[:, :, None, None] * r.h_bar  # H[rx, tx]
        self.hc = self.h.conj()
        self.eye_rx = np.eye(cfg.n_rx_ant, dtype=np.complex128)
        self.eye_tx = np.eye(cfg.n_tx_ant, dtype=np.complex128)
        self.diag_idx = np.arange(self.n)

    @staticmethod
    def _canonical_rows(x: np.ndarray, tol: float = 1e-12) -> np.ndarray:
        mag = np.abs(x)
        has = (mag > tol).any(axis=1)
        idx = np.where(has, (mag > tol).argmax(axis=1), 0)
        piv = x[np.arange(x.shape[0]), idx]
        phase = np.where(has, np.conj(piv) / np.where(np.abs(piv) > 0, np.abs(piv), 1.0), 1.0)
        return x * phase[:, None]

    def _normalized(self, x: np.ndarray) -> np.ndarray:
        return self._canonical_rows(x / np.linalg.norm(x, axis=1, keepdims=True))

    def tx_images(self, w: np.ndarray) -> np.ndarray:
        """T[j, k] = H[j, k] @ w_k for all link pairs."""
        return np.einsum("jkab,kb->jka", self.h, w)

    def rx_images(self, v: np.ndarray) -> np.ndarray:
        """U[j, i] = H[j, i]^H @ v_j for all link pairs."""
        return np.einsum("jiba,jb->jia", self.hc, v)

    def s_matrix(self, t: np.ndarray, v: np.ndarray) -> np.ndarray:
        """S[j, k] = |v_j^H H_jk w_k|^2 * P."""
        return self.p * np.abs(np.einsum("ja,jka->jk", v.conj(), t)) ** 2

    def _zero_diag(self, images: np.ndarray) -> np.ndarray:
        off = images.copy()
        off[self.diag_idx, self.diag_idx] = 0.0
        return off

    def maxsinr_rx(self, t: np.ndarray) -> np.ndarray:
        own = t[self.diag_idx, self.diag_idx]
        if np.any(np.linalg.norm(own, axis=1) < 1e-14):
            raise DegenerateDirectionError("zero direct-signal direction")
        t_off = self._zero_diag(t)
        gram = np.einsum("ija,ijb->iab", t_off, t_off.conj())
        cov = self.p * gram + self.sigma2[:, None, None] * self.eye_rx
        x = np.linalg.solve(cov, own[:, :, None])[:, :, 0]
        return self._normalized(x)

    def balanced_tx(self, v: np.ndarray, lam: np.ndarray) -> np.ndarray:
        u = self.rx_images(v)
        weights = lam.copy()
        np.fill_diagonal(weights, 1.0)
        m = np.einsum("jia,jib,ji->iab", u, u.conj(), weights)
        vecs = np.linalg.eigh(m)[1]
        return self._canonical_rows(vecs[:, :, -1])

    def egoistic_tx(self, v: np.ndarray) -> np.ndarray:
        own = self.rx_images(v)[self.diag_idx, self.diag_idx]
        if np.any(np.linalg.norm(own, axis=1) < 1e-14):
            raise DegenerateDirectionError("zero direct-signal direction")
        return self._normalized(own)

    def altruistic_tx(self, v: np.ndarray) -> np.ndarray:
        u_off = self._zero_diag(self.rx_images(v))
        q = np.einsum("jia,jib->iab", u_off, u_off.conj())
        vecs = np.linalg.eigh(q)[1]
        return self._canonical_rows(vecs[:, :, 0])

    def maxsinr_tx(self, v: np.ndarray) -> np.ndarray:
        u = self.rx_images(v)
        own = u[self.diag_idx, self.diag_idx]
        if np.any(np.linalg.norm(own, axis=1) < 1e-14):
            raise DegenerateDirectionError("zero direct-signal direction")
        u_off = self._zero_diag(u)
        gram = np.einsum("jia,jib->iab", u_off, u_off.conj())
        cov = self.p * gram + self.sigma2[:, None, None] * self.eye_tx
        x = np.linalg.solve(cov, own[:, :, None])[:, :, 0]
        return self._normalized(x)

    def altmin_rx(self, t: np.ndarray) -> np.ndarray:
        t_off = self._zero_diag(t)
        q = np.einsum("ija,ijb->iab", t_off, t_off.conj())
        vecs = np.linalg.eigh(q)[1]
        return self._canonical_rows(vecs[:, :, 0])

    def optimal_lambda(self, s: np.ndarray) -> np.ndarray:
        row = s.sum(axis=1)
        num = row + self.sigma2
        den = row - np.diag(s) + self.sigma2
        lam = -(np.diag(s) / num)[:, None] * (num[None, :] / den[:, None])
        np.fill_diagonal(lam, 0.0)
        return lam

    def rates_and_leakage(self, s: np.ndarray) -> tuple[float, float]:
        own = np.diag(s)
        interference = s.sum(axis=1) - own
        rate = float(np.sum(np.log2(1.0 + own / (interference + self.sigma2))))
        return rate, float(interference.sum())


def _run_single(
    algorithm: AlgorithmId,
    r: ChannelRealization,
    settings: RunSettings,
    tx0: list[np.ndarray],
    lambdas: Optional[np.ndarray],
) -> RunResult:
    cfg = r.config
    n = cfg.n_links
    eng = _SweepEngine(r)
    w = np.array([vec for vec in tx0], dtype=np.complex128)
    v = np.zeros((n, cfg.n_rx_ant), dtype=np.complex128)
    v[:, 0] = 1.0

    lam = None
    if algorithm is AlgorithmId.DBA:
        if lambdas is None:
            lam = heuristic_lambda(cfg, settings.lambda_direct_gain)
        else:
            lam = validate_lambda(lambdas, n)

    t = eng.tx_images(w)
    if algorithm is AlgorithmId.SRMAX:
        # complete the initialization: exact weights need meaningful receivers
        v = eng.maxsinr_rx(t)

    prev_rate = None
    trace: list[TracePoint] = []
    converged = False
    for _ in range(settings.max_iters):
        w_prev, v_prev = w, v
        if algorithm is AlgorithmId.SRMAX:
            lam_now = eng.optimal_lambda(eng.s_matrix(t, v))
            w = eng.balanced_tx(v, lam_now)
            t = eng.tx_images(w)
            v = eng.maxsinr_rx(t)
        elif algorithm is AlgorithmId.ALTMIN:
            v = eng.altmin_rx(t)
            w = eng.altruistic_tx(v)  # least eigvec of the caused-interference gram
            t = eng.tx_images(w)
        else:
            v = eng.maxsinr_rx(t)
            if algorithm is AlgorithmId.DBA:
                w = eng.balanced_tx(v, lam)
            elif algorithm is AlgorithmId.MAXSINR:
                w = eng.maxsinr_tx(v)
            elif algorithm is AlgorithmId.EGO_ONLY:
                w = eng.egoistic_tx(v)
            elif algorithm is AlgorithmId.ALT_ONLY:
                w = eng.altruistic_tx(v)
            else:  # pragma: no cover - closed enumeration
                raise ValueError(f"unhandled algorithm {algorithm}")
            t = eng.tx_images(w)

        s = eng.s_matrix(t, v)
        rate, leakage = eng.rates_and_leakage(s)
        delta = max(
            float(np.linalg.norm(w - w_prev, axis=1).max()),
            float(np.linalg.norm(v - v_prev, axis=1).max()),
        )
        trace.append(TracePoint(sum_rate=rate, leakage=leakage, max_beamformer_delta=delta))
        if prev_rate is not None and abs(rate - prev_rate) < settings.tol_sumrate:
            converged = True
            break
        prev_rate = rate

    if algorithm is AlgorithmId.ALTMIN:
        if np.any(np.diag(s) < cfg.tx_power * 1e-24):
            raise DegenerateDirectionError("leakage receiver has zero direct gain")
    profile = BeamformerProfile(tx=list(w), rx=list(v))
    return RunResult(profile=profile, trace=trace, converged=converged, iterations=len(trace))


def _run_with_restarts(
    algorithm: AlgorithmId,
    r: ChannelRealization,
    settings: RunSettings,
    lambdas: Optional[np.ndarray] = None,
) -> RunResult:
    best: Optional[RunResult] = None
    for restart in range(settings.restarts):
        tx0 = initial_tx_vectors(r.config, settings, restart)
        result = _run_single(algorithm, r, settings, tx0, lambdas)
        if best is None or result.trace[-1].sum_rate > best.trace[-1].sum_rate:
            best = result
    return best


def run_dba(
    r: ChannelRealization,
    settings: RunSettings = RunSettings(),
    lambdas: Optional[np.ndarray] = None,
) -> RunResult:
    """Distributed balancing with statistical weights.

    ``lambdas`` overrides the weight matrix (used by limit checks); by
    default it is computed once from the config statistics and held fixed.
    """
    return _run_with_restarts(AlgorithmId.DBA, r, settings, lambdas)


def run_srmax(r: ChannelRealization, settings: RunSettings = RunSettings()) -> RunResult:
    """Balanced updates with exact weights recomputed every iteration."""
    return _run_with_restarts(AlgorithmId.SRMAX, r, settings)


def run_maxsinr(r: ChannelRealization, settings: RunSettings = RunSettings()) -> RunResult:
    """Alternating receive/transmit Max-SINR in the reciprocal network."""
    return _run_with_restarts(AlgorithmId.MAXSINR, r, settings)


def run_altmin(r: ChannelRealization, settings: RunSettings = RunSettings()) -> RunResult:
    """Alternating leakage minimization; never reads the direct channels.

    Raises ``DegenerateDirectionError`` only if a final leakage receiver
    is exactly orthogonal to its own signal direction (callers resample).
    """
    return _run_with_restarts(AlgorithmId.ALTMIN, r, settings)


_RUNNERS = {
    AlgorithmId.DBA: run_dba,
    AlgorithmId.SRMAX: run_srmax,
    AlgorithmId.MAXSINR: run_maxsinr,
    AlgorithmId.ALTMIN: run_altmin,
}


def run_algorithm(
    algorithm: AlgorithmId, r: ChannelRealization, settings: RunSettings = RunSettings()
) -> RunResult:
    algorithm = AlgorithmId(algorithm)
    runner = _RUNNERS.get(algorithm)
    if runner is not None:
        return runner(r, settings)
    return _run_with_restarts(algorithm, r, settings)


def ia_residual(r: ChannelRealization, profile: BeamformerProfile) -> float:
    """Worst cross-link interference power ``max_{i, j != i} |v_i^H H_ij w_j|^2 P``."""
    cfg = r.config
    worst = 0.0
    for i in range(cfg.n_links):
        for j in range(cfg.n_links):
            if j == i:
                continue
            x = profile.rx[i].conj() @ (effective_channel(r, i, j) @ profile.tx[j])
            worst = max(worst, cfg.tx_power * float(np.abs(x)) ** 2)
    return worst


def ia_stability_probe(
    r: ChannelRealization,
    profile_in_ia: BeamformerProfile,
    lambda_magnitude: float,
) -> float:
    """Apply one balanced iteration with uniform weight ``-lambda_magnitude``
    to an interference-aligned profile and return the new residual.

    As the magnitude grows the update pins the profile to the aligned set,
    so the returned residual falls toward the receiver noise floor.
    """
    if lambda_magnitude < 0:
        raise ValueError("lambda_magnitude must be >= 0")
    res0 = ia_residual(r, profile_in_ia)
    if res0 > 1e-8:
        raise ValueError(
            f"profile is not interference aligned (residual {res0:.3e} > 1e-8)"
        )
    n = r.config.n_links
    lam = np.full((n, n), -float(lambda_magnitude))
    np.fill_diagonal(lam, 0.0)
    profile = profile_in_ia.replace_rx(_maxsinr_rx_sweep(r, profile_in_ia))
    profile = profile.replace_tx(
        [balanced_response(r, profile, i, lam) for i in range(n)]
    )
    return ia_residual(r, profile)


def _eigvec_2x2(m: np.ndarray) -> np.ndarray:
    """Deterministic unit eigenvector of a general complex 2x2 matrix."""
    tr = m[0, 0] + m[1, 1]
    det = m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0]
    disc = np.sqrt(tr * tr / 4.0 - det + 0j)
    lam1, lam2 = tr / 2.0 + disc, tr / 2.0 - disc
    lam = lam1 if abs(lam1) >= abs(lam2) else lam2
    c1 = np.array([m[0, 1], lam - m[0, 0]])
    c2 = np.array([lam - m[1, 1], m[1, 0]])
    v = c1 if np.linalg.norm(c1) >= np.linalg.norm(c2) else c2
    return canonical_phase(v / np.linalg.norm(v))


def closed_form_ia(r: ChannelRealization) -> BeamformerProfile:
    """Exact interference-aligned profile for a 3-link system with 2x2 channels.

    The first transmit vector is an eigenvector of the round-trip cross
    channel product; the other two follow by matching the interference
    directions pairwise, and each receiver takes the 2-D orthogonal
    complement of its (aligned) interference.
    """
    cfg = r.config
    if cfg.n_links != 3 or cfg.n_tx_ant != 2 or cfg.n_rx_ant != 2:
        raise ValueError("closed-form alignment requires 3 links with 2x2 channels")

    def h(rx: int, tx: int) -> np.ndarray:
        return effective_channel(r, rx, tx)

    try:
        chain = (
            np.linalg.inv(h(2, 0))
            @ h(2, 1)
            @ np.linalg.inv(h(0, 1))
            @ h(0, 2)
            @ np.linalg.inv(h(1, 2))
            @ h(1, 0)
        )
        w1 = _eigvec_2x2(chain)
        w2 = np.linalg.inv(h(2, 1)) @ h(2, 0) @ w1
        w3 = np.linalg.inv(h(1, 2)) @ h(1, 0) @ w1
    except np.linalg.LinAlgError as exc:
        raise ValueError("cross channels must be invertible for alignment") from exc
    w2 = canonical_phase(w2 / np.linalg.norm(w2))
    w3 = canonical_phase(w3 / np.linalg.norm(w3))
    tx = [w1, w2, w3]

    rx = []
    for i in range(3):
        j = (i + 1) % 3
        u = h(i, j) @ tx[j]
        v = np.array([u[1].conjugate(), -u[0].conjugate()])
        rx.append(canonical_phase(v / np.linalg.norm(v)))
    return BeamformerProfile(tx=tx, rx=rx)


def _beam_grid(grid_density: int) -> np.ndarray:
    """Columns ``(cos t, sin t * exp(1j p))`` over the 2-antenna beam grid."""
    theta = np.linspace(0.0, np.pi / 2.0, grid_density)
    phi = np.linspace(0.0, 2.0 * np.pi, grid_density, endpoint=False)
    tt, pp = np.meshgrid(theta, phi, indexing="ij")
    w = np.empty((2, grid_density * grid_density), dtype=np.complex128)
    w[0] = np.cos(tt).ravel()
    w[1] = (np.sin(tt) * np.exp(1j * pp)).ravel()
    return w


def brute_force_sumrate(
    r: ChannelRealization, grid_density: int
) -> tuple[float, BeamformerProfile]:
    """Exhaustive sum-rate search over a transmit beam grid (desk scale).

    Restricted to 2 transmit antennas and at most 3 links; each transmit
    vector is parameterized as ``(cos t, sin t * e^{j p})`` on a
    ``grid_density x grid_density`` grid, receivers are the implied
    SINR-optimal filters.  The best grid profile underestimates the true
    optimum by O(1/grid_density).
    """
    cfg = r.config
    if cfg.n_tx_ant != 2 or not (1 <= cfg.n_links <= 3):
        raise ValueError("brute force supports n_tx_ant == 2 and n_links <= 3 only")
    if grid_density < 2:
        raise ValueError("grid_density must be >= 2")
    w = _beam_grid(grid_density)
    m = w.shape[1]
    p = cfg.tx_power
    sig = cfg.noise_power

    if cfg.n_links == 1:
        hw = effective_channel(r, 0, 0) @ w
        rates = np.log2(1.0 + p * np.sum(np.abs(hw) ** 2, axis=0) / sig[0])
        best = int(np.argmax(rates))
        idx = [best]
        value = float(rates[best])
    elif cfg.n_links == 2:
        h00w = effective_channel(r, 0, 0) @ w
        h01w = effective_channel(r, 0, 1) @ w
        h10w = effective_channel(r, 1, 0) @ w
        h11w = effective_channel(r, 1, 1) @ w
        hn0 = np.sum(np.abs(h00w) ** 2, axis=0)
        gn1 = np.sum(np.abs(h10w) ** 2, axis=0)
        value = -np.inf
        idx = [0, 0]
        for b in range(m):
            g = h01w[:, b]
            gn = float(np.sum(np.abs(g) ** 2))
            cross0 = np.abs(g.conj() @ h00w) ** 2
            sinr0 = (p / sig[0]) * (hn0 - p * cross0 / (sig[0] + p * gn))
            hb = h11w[:, b]
            hn1 = float(np.sum(np.abs(hb) ** 2))
            cross1 = np.abs(hb.conj() @ h10w) ** 2
            sinr1 = (p / sig[1]) * (hn1 - p * cross1 / (sig[1] + p * gn1))
            total = np.log2(1.0 + sinr0) + np.log2(1.0 + sinr1)
            a = int(np.argmax(total))
            if total[a] > value:
                value = float(total[a])
                idx = [a, b]
    else:
        hw = {
            (i, j): effective_channel(r, i, j) @ w
            for i in range(3)
            for j in range(3)
        }
        eye = np.eye(cfg.n_rx_ant, dtype=np.complex128)
        value = -np.inf
        idx = [0, 0, 0]
        for b in range(m):
            for c in range(m):
                g01, g02 = hw[(0, 1)][:, b], hw[(0, 2)][:, c]
                cov0 = sig[0] * eye + p * (np.outer(g01, g01.conj()) + np.outer(g02, g02.conj()))
                x0 = np.linalg.solve(cov0, hw[(0, 0)])
                sinr0 = p * np.real(np.sum(hw[(0, 0)].conj() * x0, axis=0))

                # links 1 and 2: rank-one downdate over the varying w_1 grid
                def _sinr_vs_first(link: int, h_fixed: np.ndarray, g_fixed: np.ndarray):
                    base = sig[link] * eye + p * np.outer(g_fixed, g_fixed.conj())
                    a_var = hw[(link, 0)]
                    y = np.linalg.solve(base, h_fixed)
                    z = np.linalg.solve(base, a_var)
                    quad = float(np.real(h_fixed.conj() @ y))
                    cross = np.abs(y.conj() @ a_var) ** 2
                    den = 1.0 + p * np.real(np.sum(a_var.conj() * z, axis=0))
                    return p * (quad - p * cross / den)

                sinr1 = _sinr_vs_first(1, hw[(1, 1)][:, b], hw[(1, 2)][:, c])
                sinr2 = _sinr_vs_first(2, hw[(2, 2)][:, c], hw[(2, 1)][:, b])
                total = (
                    np.log2(1.0 + sinr0) + np.log2(1.0 + sinr1) + np.log2(1.0 + sinr2)
                )
                a = int(np.argmax(total))
                if total[a] > value:
                    value = float(total[a])
                    idx = [a, b, c]

    tx = [canonical_phase(w[:, k].copy()) for k in idx]
    e1 = np.zeros(cfg.n_rx_ant, dtype=np.complex128)
    e1[0] = 1.0
    profile = BeamformerProfile(tx=tx, rx=[e1.copy() for _ in range(cfg.n_links)])
    profile = profile.replace_rx(_maxsinr_rx_sweep(r, profile))
    return value, profile
