"""Shared test utilities: constructed channels and independent re-implementations.

``sum_rate_free`` and ``fd_tangent_gradient`` deliberately re-derive the
rate formula with plain loops (no normalization, no shared code with the
package) so gradient and dual-implementation checks stay independent of
the paths they verify.
"""

import numpy as np

from icbeam.equilibria import BeamformerProfile, random_unit_vector
from icbeam.network import ChannelRealization, NetworkConfig, effective_channel


def make_network(alpha, noise_power, tx_power=1.0, n_tx_ant=2, n_rx_ant=2):
    alpha = np.atleast_2d(np.asarray(alpha, dtype=float))
    n = alpha.shape[0]
    noise = np.broadcast_to(np.asarray(noise_power, dtype=float), (n,)).copy()
    return NetworkConfig(
        n_links=n,
        n_tx_ant=n_tx_ant,
        n_rx_ant=n_rx_ant,
        alpha=alpha,
        noise_power=noise,
        tx_power=tx_power,
    )


def make_realization(config, h_bar, seed=0):
    return ChannelRealization(config=config, h_bar=np.asarray(h_bar, complex), seed=seed)


def random_profile(config, seed):
    rng = np.random.default_rng(seed)
    return BeamformerProfile(
        tx=[random_unit_vector(rng, config.n_tx_ant) for _ in range(config.n_links)],
        rx=[random_unit_vector(rng, config.n_rx_ant) for _ in range(config.n_links)],
    )


def random_unit(rng, dim):
    z = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
    return z / np.linalg.norm(z)


def sum_rate_free(r, tx, rx):
    """Sum rate from raw (possibly non-unit) vectors, direct formula."""
    cfg = r.config
    p = cfg.tx_power
    total = 0.0
    for i in range(cfg.n_links):
        signal = p * abs(rx[i].conj() @ (effective_channel(r, i, i) @ tx[i])) ** 2
        interference = 0.0
        for j in range(cfg.n_links):
            if j != i:
                interference += (
                    p * abs(rx[i].conj() @ (effective_channel(r, i, j) @ tx[j])) ** 2
                )
        total += np.log2(1.0 + signal / (interference + cfg.noise_power[i]))
    return total


def fd_tangent_gradient(r, profile, link, step=1e-6):
    """Central-difference gradient of sum rate w.r.t. the real/imag parts of
    one transmit vector, projected onto the unit-sphere tangent space."""
    base = profile.tx[link]
    dim = base.size
    grad = np.zeros(2 * dim)
    tx = [w.copy() for w in profile.tx]
    for k in range(dim):
        for offset, delta in ((0, step), (dim, 1j * step)):
            plus = base.copy()
            plus[k] += delta
            minus = base.copy()
            minus[k] -= delta
            tx[link] = plus
            f_plus = sum_rate_free(r, tx, profile.rx)
            tx[link] = minus
            f_minus = sum_rate_free(r, tx, profile.rx)
            grad[offset + k] = (f_plus - f_minus) / (2.0 * step)
    tx[link] = base
    x = np.concatenate([base.real, base.imag])
    x = x / np.linalg.norm(x)
    return grad - (grad @ x) * x


def principal_angle(u, v):
    """Angle between the lines spanned by unit vectors u and v (phase-blind)."""
    return float(np.arccos(min(1.0, abs(np.vdot(u, v)))))
