"""Network geometry, path loss, and per-slot fading realizations.

Direct device-BS links are Rayleigh; the two RIS legs are Rician with a
deterministic LoS component.  Path-loss exponents are stored positive and
applied as d**(-eta).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .config import ScenarioConfig


@dataclass(frozen=True)
class FadingParams:
    gamma0: float                # linear power gain at 1 m
    eta_rb: float
    eta_wr: float
    eta_sb: float
    eta_wb: float
    rician_k: float              # linear Rician factor K1
    los_mode: str = "steering"   # phase ramp from geometry, or "ones"

    def __post_init__(self):
        if self.gamma0 <= 0:
            raise ValueError("gamma0 must be > 0")
        for name in ("eta_rb", "eta_wr", "eta_sb", "eta_wb"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be > 0")
        if self.rician_k < 0:
            raise ValueError("rician_k must be >= 0")

    @classmethod
    def from_config(cls, config: ScenarioConfig) -> "FadingParams":
        return cls(
            gamma0=config.gamma0,
            eta_rb=config.eta_rb,
            eta_wr=config.eta_wr,
            eta_sb=config.eta_sb,
            eta_wb=config.eta_wb,
            rician_k=config.rician_k,
            los_mode=config.los_mode,
        )


@dataclass(frozen=True)
class Topology:
    """Positions of BS, RIS and devices, with precomputed link distances."""

    bs_position: np.ndarray
    ris_position: np.ndarray
    strong_positions: np.ndarray   # (I, 3)
    weak_positions: np.ndarray     # (I, 3)
    d_sb: np.ndarray               # (I,)  strong -> BS
    d_wb: np.ndarray               # (I,)  weak -> BS
    d_wr: np.ndarray               # (I,)  weak -> RIS
    d_rb: float                    # RIS -> BS

    @property
    def n_clusters(self) -> int:
        return self.strong_positions.shape[0]


@dataclass(frozen=True)
class ChannelSlot:
    """All complex channel realizations for one time slot."""

    h_sb: np.ndarray   # (I,) complex
    h_wb: np.ndarray   # (I,) complex
    h_wr: np.ndarray   # (I, L) complex
    h_rb: np.ndarray   # (L,) complex
    slot_index: int

    @property
    def n_weak(self) -> int:
        return self.h_wb.shape[0]

    @property
    def l_elements(self) -> int:
        return self.h_rb.shape[0]


def place_devices(config: ScenarioConfig, rng: np.random.Generator) -> Topology:
    """Draw device positions: strong on a circle of radius d_s around the BS
    ground point, weak on a circle of radius d_w around the RIS ground point.
    """
    if config.d_s <= 0 or config.d_w <= 0 or config.d_rb <= 0:
        raise ValueError("radii and RIS-BS distance must be > 0")
    if config.h_b <= 0 or config.h_r <= 0:
        raise ValueError("antenna heights must be > 0")
    I = config.i_clusters
    bs = np.array([0.0, 0.0, config.h_b])
    ris = np.array([config.d_rb, 0.0, config.h_r])

    th_s = rng.uniform(0.0, 2.0 * np.pi, size=I)
    th_w = rng.uniform(0.0, 2.0 * np.pi, size=I)
    strong = np.stack(
        [config.d_s * np.cos(th_s), config.d_s * np.sin(th_s), np.zeros(I)], axis=1
    )
    weak = np.stack(
        [config.d_w * np.cos(th_w) + config.d_rb, config.d_w * np.sin(th_w), np.zeros(I)],
        axis=1,
    )
    return Topology(
        bs_position=bs,
        ris_position=ris,
        strong_positions=strong,
        weak_positions=weak,
        d_sb=np.linalg.norm(strong - bs, axis=1),
        d_wb=np.linalg.norm(weak - bs, axis=1),
        d_wr=np.linalg.norm(weak - ris, axis=1),
        d_rb=float(np.linalg.norm(ris - bs)),
    )


def large_scale_amplitude(distance: float, exponent: float, gamma0: float) -> float:
    """Amplitude sqrt(gamma0 * d**(-eta)); its square is the mean link power gain."""
    d = np.asarray(distance, dtype=float)
    if np.any(d <= 0):
        raise ValueError("distance must be > 0")
    return np.sqrt(gamma0 * d ** (-exponent))


def sample_rayleigh(rng: np.random.Generator, n: int) -> np.ndarray:
    """i.i.d. CN(0, 1) draws (real/imag parts each with variance 1/2)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return (rng.standard_normal(n) + 1j * rng.standard_normal(n)) / np.sqrt(2.0)


def sample_rician(rng: np.random.Generator, k: float, los: np.ndarray) -> np.ndarray:
    """sqrt(k/(k+1)) * los + sqrt(1/(k+1)) * CN(0,1), elementwise."""
    if k < 0:
        raise ValueError("Rician factor must be >= 0")
    los = np.asarray(los, dtype=complex)
    if np.any(np.abs(np.abs(los) - 1.0) > 1e-9):
        raise ValueError("LoS component must be unit-modulus")
    scatter = sample_rayleigh(rng, los.size).reshape(los.shape)
    return np.sqrt(k / (k + 1.0)) * los + np.sqrt(1.0 / (k + 1.0)) * scatter


def _steering(l_elements: int, origin: np.ndarray, target: np.ndarray) -> np.ndarray:
    """Unit-modulus phase ramp exp(-j*pi*(l-1)*sin(phi)) along a half-wavelength
    array, phi being the azimuth from origin to target."""
    delta = target - origin
    phi = np.arctan2(delta[1], delta[0])
    l_idx = np.arange(l_elements)
    return np.exp(-1j * np.pi * l_idx * np.sin(phi))


def _los_vector(params: FadingParams, l_elements: int, origin, target) -> np.ndarray:
    if params.los_mode == "ones":
        return np.ones(l_elements, dtype=complex)
    return _steering(l_elements, np.asarray(origin), np.asarray(target))


def sample_slot(
    topology: Topology,
    params: FadingParams,
    l_elements: int,
    t: int,
    rng: np.random.Generator,
) -> ChannelSlot:
    """One slot of composite (small-scale x large-scale) channels."""
    if l_elements < 1:
        raise ValueError("l_elements must be >= 1")
    I = topology.n_clusters

    amp_sb = large_scale_amplitude(topology.d_sb, params.eta_sb, params.gamma0)
    amp_wb = large_scale_amplitude(topology.d_wb, params.eta_wb, params.gamma0)
    amp_wr = large_scale_amplitude(topology.d_wr, params.eta_wr, params.gamma0)
    amp_rb = large_scale_amplitude(topology.d_rb, params.eta_rb, params.gamma0)

    h_sb = amp_sb * sample_rayleigh(rng, I)
    h_wb = amp_wb * sample_rayleigh(rng, I)

    los_rb = _los_vector(params, l_elements, topology.ris_position, topology.bs_position)
    h_rb = amp_rb * sample_rician(rng, params.rician_k, los_rb)

    h_wr = np.empty((I, l_elements), dtype=complex)
    for w in range(I):
        los_wr = _los_vector(
            params, l_elements, topology.weak_positions[w], topology.ris_position
        )
        h_wr[w] = amp_wr[w] * sample_rician(rng, params.rician_k, los_wr)

    return ChannelSlot(h_sb=h_sb, h_wb=h_wb, h_wr=h_wr, h_rb=h_rb, slot_index=t)


def effective_gain(h_wr: np.ndarray, theta: np.ndarray, h_rb: np.ndarray, h_wb: complex) -> float:
    """|sum_l h_wr[l] * exp(j*theta[l]) * conj(h_rb[l]) + h_wb|**2."""
    h_wr = np.asarray(h_wr)
    h_rb = np.asarray(h_rb)
    theta = np.asarray(theta, dtype=float)
    if h_wr.shape != theta.shape or h_wr.shape != h_rb.shape:
        raise ValueError("h_wr, theta and h_rb must have matching lengths")
    cascade = np.sum(h_wr * np.exp(1j * theta) * np.conj(h_rb))
    return float(np.abs(cascade + h_wb) ** 2)


def single_user_gain_bound(h_wr: np.ndarray, h_rb: np.ndarray, h_wb: complex) -> float:
    """Triangle-inequality optimum (sum_l |h_wr||h_rb| + |h_wb|)**2, achievable
    by co-phasing; used as the single-device oracle."""
    return float((np.sum(np.abs(h_wr) * np.abs(h_rb)) + abs(h_wb)) ** 2)
