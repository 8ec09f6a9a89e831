"""Certify that a pulse schedule implements a holonomic gate.

Two conditions are checked numerically on a sampled evolution of the
computational subspace: (i) the subspace returns to itself at the final
time (the projector built from the evolved basis closes its loop), and
(ii) the dynamical phase vanishes throughout, i.e. every matrix element
of the instantaneous generator between evolved basis states stays zero.
Residuals for (ii) are reported in units of the peak Rabi frequency so
one dimensionless tolerance covers schedules of any strength.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import linalg


@dataclass(frozen=True)
class EvolutionTrace:
    """Sampled subspace evolution under a piecewise-constant schedule.

    states has shape (n_basis, n_samples, dim): evolved copies of each
    subspace basis vector.  hamiltonians[i] is the generator in force at
    sample i (for a boundary sample, the generator of the segment that
    just ended).  segment_boundaries are sample indices closing each
    segment; the last one is the final sample.
    """

    times: np.ndarray
    states: np.ndarray
    hamiltonians: np.ndarray
    segment_boundaries: tuple[int, ...]

    @property
    def n_segments(self) -> int:
        return len(self.segment_boundaries)

    def projector(self, sample: int) -> np.ndarray:
        vecs = self.states[:, sample, :]
        return vecs.T @ vecs.conj()


@dataclass(frozen=True)
class HolonomyReport:
    cond1_residual: float
    cond2_max: float
    passed: bool
    tolerance: float


def trace_evolution(
    schedule, subspace_basis, samples_per_segment: int = 128
) -> EvolutionTrace:
    """Propagate an orthonormal subspace basis through a schedule.

    schedule is an ordered list of (Hermitian generator, area) pairs;
    each segment is subdivided into samples_per_segment equal-area slices
    and the states are stored after every slice.
    """
    if samples_per_segment < 1:
        raise ValueError("samples_per_segment must be >= 1")
    basis = np.array([np.asarray(v, dtype=complex) for v in subspace_basis])
    gram = basis.conj() @ basis.T
    if linalg.frobenius_norm(gram - np.eye(len(basis))) > 1e-10:
        raise ValueError("subspace basis is not orthonormal")
    schedule = [(linalg.as_complex_matrix(g), float(a)) for g, a in schedule]
    if not schedule:
        raise ValueError("empty schedule")
    dim = schedule[0][0].shape[0]
    if basis.shape[1] != dim:
        raise ValueError("basis dimension does not match schedule generators")

    times = [0.0]
    states = [basis.copy()]
    hams = [schedule[0][0]]
    boundaries = []
    t = 0.0
    current = basis.copy()
    for gen, area in schedule:
        if gen.shape != (dim, dim):
            raise ValueError("schedule generators differ in dimension")
        step = linalg.expm_hermitian(gen, area / samples_per_segment)
        for _ in range(samples_per_segment):
            t += area / samples_per_segment
            current = current @ step.T
            times.append(t)
            states.append(current.copy())
            hams.append(gen)
        boundaries.append(len(times) - 1)

    return EvolutionTrace(
        times=np.array(times),
        states=np.transpose(np.array(states), (1, 0, 2)),
        hamiltonians=np.array(hams),
        segment_boundaries=tuple(boundaries),
    )


def peak_rabi(trace: EvolutionTrace) -> float:
    """Largest spectral norm among the schedule generators."""
    return max(
        float(np.max(np.abs(np.linalg.eigvalsh(h)))) for h in trace.hamiltonians
    )


def check_holonomy(trace: EvolutionTrace, tolerance: float = 1e-8) -> HolonomyReport:
    """Evaluate loop closure and dynamical-phase residuals for a trace."""
    n_samples = trace.states.shape[1]
    cond1 = linalg.frobenius_distance(
        trace.projector(n_samples - 1), trace.projector(0)
    )

    scale = peak_rabi(trace)
    worst = 0.0
    for i in range(n_samples):
        vecs = trace.states[:, i, :]
        elements = vecs.conj() @ trace.hamiltonians[i] @ vecs.T
        worst = max(worst, float(np.max(np.abs(elements))))
    cond2 = worst / scale if scale > 0 else worst

    passed = cond1 <= tolerance and cond2 <= tolerance
    return HolonomyReport(
        cond1_residual=cond1, cond2_max=cond2, passed=passed, tolerance=tolerance
    )


def projector_residual_curve(trace: EvolutionTrace) -> np.ndarray:
    """Frobenius distance of P(t) from P(0) at every sample time."""
    p0 = trace.projector(0)
    n_samples = trace.states.shape[1]
    return np.array(
        [linalg.frobenius_distance(trace.projector(i), p0) for i in range(n_samples)]
    )


def grassmannian_midpoint_check(trace: EvolutionTrace) -> float:
    """Subspace displacement at the boundary of a two-segment loop.

    For the standard elementary schedule the bright direction has fully
    rotated into the excited level at the half-way point, so the
    projector sits maximally far from its origin before the second
    segment brings it back.
    """
    if trace.n_segments != 2:
        raise ValueError("midpoint check expects a two-segment trace")
    mid = trace.segment_boundaries[0]
    return linalg.frobenius_distance(trace.projector(mid), trace.projector(0))
