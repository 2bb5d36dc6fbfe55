"""Numerical integration of polynomial fields and synchrony diagnostics.

The integrator compiles a polynomial vector field into flat coefficient /
exponent arrays and runs a fixed-step RK4 scheme through a numba kernel,
so long verification sweeps (many patterns times many parameter sets)
stay fast.  Synchrony checks measure the distance of a trajectory from a
polydiagonal subspace defined by a cell partition.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np
from numba import njit

from .network import Partition
from .polynomial import Polynomial
from .realize import VectorFieldSpec


class IntegrationError(RuntimeError):
    """Raised when a trajectory leaves the finite range."""


# ---------------------------------------------------------------------------
# Ring-coupled van der Pol oscillators
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class VdpParams:
    """Parameters of the coupled van der Pol ring (exact rationals)."""

    b: Fraction = Fraction(1)
    omega0: Fraction = Fraction(1)
    alpha1: Fraction = Fraction(1, 10)
    alpha2: Fraction = Fraction(1, 100)
    eps: Fraction = Fraction(3, 10)
    eta: Fraction = Fraction(1, 5)

    def replace(self, **kwargs) -> "VdpParams":
        vals = {k: Fraction(v) for k, v in kwargs.items()}
        current = {
            "b": self.b,
            "omega0": self.omega0,
            "alpha1": self.alpha1,
            "alpha2": self.alpha2,
            "eps": self.eps,
            "eta": self.eta,
        }
        unknown = set(vals) - set(current)
        if unknown:
            raise ValueError(f"unknown parameters: {sorted(unknown)}")
        current.update(vals)
        return VdpParams(**current)


def vdp_network_field(n_osc: int, params: Optional[VdpParams] = None) -> VectorFieldSpec:
    """Ring of van der Pol oscillators, each coupled to its four nearest
    neighbours (distance one and two on the ring, indices mod n_osc).

        dx_i/dt = y_i
        dy_i/dt = b (1 - x_i^2) y_i - (omega0^2 + a1 x_i^2 + a2 x_i^4) x_i
                  + eps (mean of neighbour y - y_i)
                  + eta (mean of neighbour x - x_i)

    Coordinates: x_i at 2i, y_i at 2i+1; cells are the (x_i, y_i) pairs.
    """
    if n_osc < 5:
        raise ValueError("the four-neighbour ring needs at least 5 oscillators")
    p = params or VdpParams()
    n = 2 * n_osc
    quarter = Fraction(1, 4)

    def x(i):
        return Polynomial.variable(n, 2 * (i % n_osc))

    def y(i):
        return Polynomial.variable(n, 2 * (i % n_osc) + 1)

    components: list[Polynomial] = []
    for i in range(n_osc):
        components.append(y(i))
        xi, yi = x(i), y(i)
        rhs = yi * p.b - xi * xi * yi * p.b
        rhs = rhs - xi * (p.omega0 ** 2) - xi ** 3 * p.alpha1 - xi ** 5 * p.alpha2
        nbh_y = Polynomial.zero(n)
        nbh_x = Polynomial.zero(n)
        for j in (i - 2, i - 1, i + 1, i + 2):
            nbh_y = nbh_y + y(j)
            nbh_x = nbh_x + x(j)
        rhs = rhs + (nbh_y * quarter - yi) * p.eps
        rhs = rhs + (nbh_x * quarter - xi) * p.eta
        components.append(rhs)
    cellization = tuple((2 * i, 2 * i + 1) for i in range(n_osc))
    return VectorFieldSpec(n, cellization, tuple(components))


# ---------------------------------------------------------------------------
# RK4 integration
# ---------------------------------------------------------------------------


@dataclass
class Trajectory:
    times: np.ndarray
    states: np.ndarray  # shape (len(times), n)

    def to_csv(self, path: str) -> None:
        n = self.states.shape[1]
        with open(path, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["t"] + [f"x{i + 1}" for i in range(n)])
            for t, row in zip(self.times, self.states):
                writer.writerow([repr(float(t))] + [repr(float(v)) for v in row])


def _compile_field(f: VectorFieldSpec):
    terms = []
    for comp_index, poly in enumerate(f.components):
        for exps, coeff in poly.terms():
            terms.append((comp_index, exps, float(coeff)))
    nterms = len(terms)
    coeffs = np.zeros(nterms, dtype=np.float64)
    expmat = np.zeros((nterms, f.n), dtype=np.int64)
    comp = np.zeros(nterms, dtype=np.int64)
    for t, (ci, exps, cf) in enumerate(terms):
        comp[t] = ci
        coeffs[t] = cf
        expmat[t, :] = exps
    return coeffs, expmat, comp


@njit(cache=True, fastmath=True)
def _eval_poly_field(coeffs, expmat, comp, x, out):
    out[:] = 0.0
    for t in range(coeffs.shape[0]):
        v = coeffs[t]
        for j in range(expmat.shape[1]):
            e = expmat[t, j]
            if e == 1:
                v *= x[j]
            elif e > 1:
                v *= x[j] ** e
        out[comp[t]] += v


@njit(cache=True, fastmath=True)
def _rk4_kernel(coeffs, expmat, comp, x0, dt, nsteps):
    n = x0.shape[0]
    states = np.empty((nsteps + 1, n))
    states[0] = x0
    k1 = np.empty(n)
    k2 = np.empty(n)
    k3 = np.empty(n)
    k4 = np.empty(n)
    tmp = np.empty(n)
    x = x0.copy()
    bad = -1
    for step in range(nsteps):
        _eval_poly_field(coeffs, expmat, comp, x, k1)
        for j in range(n):
            tmp[j] = x[j] + 0.5 * dt * k1[j]
        _eval_poly_field(coeffs, expmat, comp, tmp, k2)
        for j in range(n):
            tmp[j] = x[j] + 0.5 * dt * k2[j]
        _eval_poly_field(coeffs, expmat, comp, tmp, k3)
        for j in range(n):
            tmp[j] = x[j] + dt * k3[j]
        _eval_poly_field(coeffs, expmat, comp, tmp, k4)
        bound = 1e150  # fastmath licenses no-NaN assumptions, so test magnitude
        ok = True
        for j in range(n):
            x[j] = x[j] + dt / 6.0 * (k1[j] + 2.0 * k2[j] + 2.0 * k3[j] + k4[j])
            if not (-bound < x[j] < bound):
                ok = False
        states[step + 1] = x
        if not ok:
            bad = step + 1
            break
    return states, bad


def integrate_rk4(
    f: VectorFieldSpec, x0: Sequence[float], t_end: float, dt: float
) -> Trajectory:
    """Fixed-step classical RK4 from t=0 to t_end (last step clipped so the
    final time is within dt/2 of t_end)."""
    x0 = np.asarray(x0, dtype=np.float64)
    if x0.shape != (f.n,):
        raise ValueError(f"initial state must have {f.n} coordinates")
    if dt <= 0 or t_end <= 0:
        raise ValueError("t_end and dt must be positive")
    nsteps = int(round(t_end / dt))
    if abs(nsteps * dt - t_end) > dt / 2:
        nsteps = int(np.ceil(t_end / dt))
    coeffs, expmat, comp = _compile_field(f)
    states, bad = _rk4_kernel(coeffs, expmat, comp, x0, float(dt), nsteps)
    if bad >= 0:
        raise IntegrationError(
            f"trajectory left the finite range at t={bad * dt:.6g}"
        )
    times = np.arange(nsteps + 1) * dt
    return Trajectory(times, states)


# ---------------------------------------------------------------------------
# Polydiagonal projection and deviation
# ---------------------------------------------------------------------------


def project_polydiagonal(
    x: np.ndarray, p: Partition, cellization: Sequence[Sequence[int]]
) -> np.ndarray:
    """Orthogonal projection onto the polydiagonal of partition ``p``:
    within each block, every cell's coordinates are replaced by the
    blockwise mean (positionwise).  Accepts a state vector or a
    trajectory array (time along the first axis)."""
    out = np.array(x, dtype=np.float64, copy=True)
    for block in p.blocks:
        dim = len(cellization[block[0]])
        if any(len(cellization[c]) != dim for c in block):
            raise ValueError("polydiagonal blocks must contain equal-dimension cells")
        for k in range(dim):
            idx = [cellization[c][k] for c in block]
            mean = out[..., idx].mean(axis=-1)
            for i in idx:
                out[..., i] = mean
    return out


def sync_deviation(
    traj: Trajectory, p: Partition, cellization: Sequence[Sequence[int]]
) -> float:
    """Maximum over time of the sup-norm distance to the polydiagonal."""
    proj = project_polydiagonal(traj.states, p, cellization)
    return float(np.max(np.abs(traj.states - proj)))


def polydiagonal_point(
    p: Partition,
    cellization: Sequence[Sequence[int]],
    rng: np.random.Generator,
    scale: float = 0.5,
) -> np.ndarray:
    """Random point lying exactly on the polydiagonal of ``p``."""
    n = sum(len(b) for b in cellization)
    x = rng.uniform(-scale, scale, size=n)
    return project_polydiagonal(x, p, cellization)
