"""Per-slot RIS phase optimization: lifting, relaxation, randomization.

Sign convention (fixed once by the lifting identity and reused everywhere):
the cascaded channel is v^H Q + h_wb with v_l = exp(-j*theta_l) and
Q_l = conj(h_rb[l]) * h_wr[l], so that v^H Q = sum_l h_wr[l] e^{j theta_l}
conj(h_rb[l]) matches ``effective_gain``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .channel import ChannelSlot, effective_gain
from .sdp import SolverFailure, solve_maxmin_gain

__all__ = [
    "LiftedInstance",
    "PhaseSolution",
    "build_q",
    "build_lifted",
    "lifted_instance_from_slot",
    "solve_sdr",
    "gaussian_randomize",
    "optimize_phases",
    "exhaustive_phase_oracle",
    "SolverFailure",
]


@dataclass(frozen=True)
class LiftedInstance:
    """Lifted matrices for all weak devices of one slot."""

    thetas: list          # (L+1)x(L+1) Hermitian matrix per weak device
    direct_powers: list   # |h_wb|^2 per weak device
    l: int
    qs: list              # cascade vectors Q_w, kept for fast gain evaluation
    h_wbs: list

    @property
    def n_weak(self) -> int:
        return len(self.thetas)

    def b_vectors(self):
        """Stacked [Q_w; h_wb] vectors; b^H v_bar is the total weak channel."""
        return [np.concatenate([q, [h]]) for q, h in zip(self.qs, self.h_wbs)]


@dataclass(frozen=True)
class PhaseSolution:
    theta: np.ndarray          # (L,) phases in [0, 2*pi)
    achieved_min_gain: float   # min over weak devices of effective_gain
    sdr_bound: float           # certified upper bound zeta* of the relaxation
    rank_one_exact: bool


def build_q(h_wr: np.ndarray, h_rb: np.ndarray) -> np.ndarray:
    """Elementwise conj(h_rb) * h_wr (the diag(h_rb^H) h_wr cascade vector)."""
    h_wr = np.asarray(h_wr)
    h_rb = np.asarray(h_rb)
    if h_wr.shape != h_rb.shape:
        raise ValueError("h_wr and h_rb must have matching lengths")
    return np.conj(h_rb) * h_wr


def build_lifted(q: np.ndarray, h_wb: complex) -> np.ndarray:
    """Hermitian (L+1)x(L+1) matrix with v_bar^H Theta v_bar + |h_wb|^2
    = |v^H Q + h_wb|^2 for every v_bar = [v; 1] with unit-modulus v."""
    q = np.asarray(q, dtype=complex)
    n = q.size + 1
    theta = np.zeros((n, n), dtype=complex)
    theta[:-1, :-1] = np.outer(q, q.conj())
    theta[:-1, -1] = q * np.conj(h_wb)
    theta[-1, :-1] = h_wb * np.conj(q)
    return theta


def lifted_instance_from_slot(slot: ChannelSlot) -> LiftedInstance:
    qs = [build_q(slot.h_wr[w], slot.h_rb) for w in range(slot.n_weak)]
    h_wbs = [complex(slot.h_wb[w]) for w in range(slot.n_weak)]
    return LiftedInstance(
        thetas=[build_lifted(q, h) for q, h in zip(qs, h_wbs)],
        direct_powers=[abs(h) ** 2 for h in h_wbs],
        l=slot.l_elements,
        qs=qs,
        h_wbs=h_wbs,
    )


def solve_sdr(instance: LiftedInstance, tolerance: float):
    """Relaxation solve: returns (V, zeta) with V Hermitian PSD, unit diagonal,
    and tr(Theta_w V) + |h_wb|^2 >= zeta - tolerance*max(s, zeta) for all w,
    where s is the largest total channel power among the weak devices.

    ``zeta`` is a certified upper bound on the relaxation optimum (duality);
    the gap to the primal value of V is at most tolerance*max(1, zeta).
    """
    if tolerance <= 0:
        raise ValueError("tolerance must be > 0")
    return solve_maxmin_gain(instance.b_vectors(), tolerance=tolerance)[:2]


def _phases_from_candidate(r: np.ndarray) -> np.ndarray:
    """Map a lifted-space candidate to phases: rotate so the last entry is
    real positive, then theta_l = -arg(v_l) per the sign convention."""
    ref = r[-1]
    if ref == 0:
        ref = 1.0
    v = r[:-1] * np.conj(ref)
    theta = -np.angle(v)
    return np.mod(theta, 2.0 * np.pi)


def _min_gain_for_thetas(bs: np.ndarray, thetas: np.ndarray) -> np.ndarray:
    """Min over devices of |v_bar^H b|^2 for a batch of phase vectors.

    bs: (W, L+1) stacked b vectors; thetas: (K, L) phases.  Returns (K,).
    """
    v = np.exp(-1j * thetas)                       # (K, L)
    vbar = np.concatenate([v, np.ones((v.shape[0], 1))], axis=1)
    totals = np.conj(vbar) @ bs.T                  # (K, W)
    return np.min(np.abs(totals) ** 2, axis=1)


def gaussian_randomize(
    v_matrix: np.ndarray,
    instance: LiftedInstance,
    x: int,
    rng: np.random.Generator,
) -> np.ndarray:
    """Draw x candidates r = V^{1/2} xi, project to feasible phases, and return
    the phase vector maximizing the min effective gain; the principal
    eigenvector of V is always included as a candidate."""
    if x < 1:
        raise ValueError("x must be >= 1")
    n = instance.l + 1
    v_matrix = np.asarray(v_matrix, dtype=complex)
    eigval, eigvec = np.linalg.eigh(v_matrix)
    eigval = np.clip(eigval, 0.0, None)
    root = eigvec * np.sqrt(eigval)

    xi = (rng.standard_normal((n, x)) + 1j * rng.standard_normal((n, x))) / np.sqrt(2.0)
    draws = root @ xi                                       # (n, x)
    principal = eigvec[:, -1:]
    candidates = np.concatenate([principal, draws], axis=1)

    thetas = np.stack([_phases_from_candidate(candidates[:, k])
                       for k in range(candidates.shape[1])])
    bs = np.stack(instance.b_vectors())
    gains = _min_gain_for_thetas(bs, thetas)
    return thetas[int(np.argmax(gains))]


def optimize_phases(
    slot: ChannelSlot,
    x: int,
    tolerance: float,
    rng: np.random.Generator,
) -> PhaseSolution:
    """Full per-slot pipeline: lifting, relaxation, Gaussian randomization."""
    if slot.n_weak < 1:
        raise ValueError("slot must contain at least one weak device")
    instance = lifted_instance_from_slot(slot)
    v_matrix, zeta = solve_sdr(instance, tolerance)
    theta = gaussian_randomize(v_matrix, instance, x, rng)

    achieved = min(
        effective_gain(slot.h_wr[w], theta, slot.h_rb, slot.h_wb[w])
        for w in range(slot.n_weak)
    )
    eigval = np.linalg.eigvalsh(v_matrix)
    lead = eigval[-1]
    rank_one = bool(lead > 0 and eigval[-2] / lead < 1e-6)
    return PhaseSolution(
        theta=theta,
        achieved_min_gain=float(achieved),
        sdr_bound=float(zeta),
        rank_one_exact=rank_one,
    )


def exhaustive_phase_oracle(slot: ChannelSlot, levels: int, guard: int = 10**8):
    """Brute-force max-min gain over the quantized grid theta_l in
    {2*pi*k/levels}.  Returns (theta, min_gain).  Independent of the SDR path:
    gains are accumulated by direct enumeration."""
    L = slot.l_elements
    if levels < 1:
        raise ValueError("levels must be >= 1")
    if levels**L > guard:
        raise ValueError(f"instance too large: {levels}**{L} exceeds {guard}")

    omega = np.exp(2j * np.pi * np.arange(levels) / levels)
    bs = np.stack(lifted_instance_from_slot(slot).b_vectors())  # (W, L+1)
    # cascade contribution of element l at level k is conj at evaluation time;
    # enumerate v^H Q + h_wb = sum_l e^{j theta_l} Q_l + h_wb directly.
    qs = bs[:, :-1]        # (W, L)
    h_wbs = bs[:, -1]      # (W,)

    best_gain = -1.0
    best_idx = None
    # chunk over the first element's level to bound memory
    tail_shape = (levels,) * (L - 1) if L > 1 else ()
    tail_size = levels ** (L - 1)

    # totals for elements 2..L built once per chunk via broadcasting
    def tail_totals(w):
        total = np.full((1,), h_wbs[w], dtype=complex)
        for l in range(1, L):
            contrib = qs[w, l] * omega
            total = (total[:, None] + contrib[None, :]).ravel()
        return total

    tails = np.stack([tail_totals(w) for w in range(qs.shape[0])])  # (W, tail)
    for k0 in range(levels):
        totals = tails + (qs[:, 0] * omega[k0])[:, None]
        min_gain = np.min(np.abs(totals) ** 2, axis=0)
        j = int(np.argmax(min_gain))
        if min_gain[j] > best_gain:
            best_gain = float(min_gain[j])
            best_idx = (k0, j)

    k0, j = best_idx
    idx = [k0]
    for l in range(L - 1, 0, -1):
        div = levels ** (l - 1)
        idx.append((j // div) % levels)
    # tail_totals builds indices with element 1 as the slowest axis
    theta = 2.0 * np.pi * np.array(idx, dtype=float) / levels
    return theta, best_gain
