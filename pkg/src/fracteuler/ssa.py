"""Gillespie simulation with pluggable waiting times, and random walks on graphs.

Only the waiting-time draw differs between the classical and the fractional
algorithms: with total propensity ``a`` the time to the next event is
exponential with rate ``a``, Mittag-Leffler with ``lam = a``, or drawn from
the W+ mixture with ``lam = a``.  The next reaction is chosen with
probability ``a_i / a`` in every case.

Inner loops are compiled with numba and take a numpy ``Generator`` so that a
trajectory consumes exactly the same uniforms as the pure-Python
:func:`ssa_step` would.
"""

from __future__ import annotations

import logging
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numba
import numpy as np
from scipy.signal import find_peaks

from .densities import normalization_C
from .errors import AbsorbingStateError, EventCapError
from .laplacian import GraphLaplacian, validate_laplacian
from .master import solve_birth_death_mlf
from .samplers import RngStream, as_generator, open_uniform, sample_exponential, sample_mlf_waiting, sample_wplus_waiting
from .special import MlfParams

__all__ = [
    "ReactionNetwork",
    "SchloglParams",
    "schlogl_network",
    "schlogl_propensities",
    "deterministic_steady_states",
    "WaitingTime",
    "ssa_step",
    "Trajectory",
    "simulate_trajectory",
    "ctrw_on_graph",
    "ctrw_ensemble",
    "EnsembleHistogram",
    "ensemble_histogram",
    "schlogl_master_generator",
    "schlogl_master_solution",
    "MAX_EVENTS",
]

log = logging.getLogger(__name__)

MAX_EVENTS = 100_000_000
WAITING_KINDS = {"exp": 0, "mlf": 1, "wplus": 2}
_ALIASES = {"exponential": "exp", "mittag-leffler": "mlf", "ml": "mlf", "w+": "wplus"}


# ---------------------------------------------------------------------------
# Networks


@dataclass(frozen=True)
class ReactionNetwork:
    """One-species mass-action network.

    Reaction ``i`` fires with propensity ``rates[i] * C(x, orders[i])`` and
    changes the copy number by ``changes[i]``.  The binomial coefficient makes
    propensities vanish whenever too few molecules are present, so the state
    stays nonnegative.
    """

    rates: tuple
    orders: tuple
    changes: tuple
    name: str = "network"

    def __post_init__(self):
        if not (len(self.rates) == len(self.orders) == len(self.changes)):
            raise ValueError("rates, orders and changes must have equal length")
        if any(r < 0 for r in self.rates):
            raise ValueError("rate constants must be nonnegative")
        if any(int(o) != o or o < 0 for o in self.orders):
            raise ValueError("reaction orders must be nonnegative integers")
        for c, o in zip(self.changes, self.orders):
            if c < 0 and -c > o:
                raise ValueError("a reaction cannot consume more molecules than its order")

    def arrays(self):
        """``(rates / orders!, orders, changes)`` as contiguous arrays for the kernels."""
        fact = np.array([math.factorial(int(o)) for o in self.orders], dtype=float)
        return (
            np.asarray(self.rates, dtype=float) / fact,
            np.asarray(self.orders, dtype=np.int64),
            np.asarray(self.changes, dtype=np.int64),
        )

    def propensities(self, x: int) -> np.ndarray:
        if x < 0:
            raise ValueError("copy numbers are nonnegative")
        return np.array([r * math.comb(int(x), int(o)) for r, o in zip(self.rates, self.orders)])


@dataclass(frozen=True)
class SchloglParams:
    k1: float = 3e-7
    k2: float = 1e-4
    k3: float = 1e-3
    k4: float = 3.5
    B1: float = 1e5
    B2: float = 2e5
    X0: int = 247

    def __post_init__(self):
        for name in ("k1", "k2", "k3", "k4", "B1", "B2"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be positive")
        if self.X0 < 0:
            raise ValueError("X0 must be nonnegative")


def schlogl_network(params: SchloglParams | None = None) -> ReactionNetwork:
    """``B1 + 2X -> 3X``, ``3X -> B1 + 2X``, ``B2 -> X``, ``X -> B2``."""
    p = params or SchloglParams()
    return ReactionNetwork(
        rates=(p.k1 * p.B1, p.k2, p.k3 * p.B2, p.k4),
        orders=(2, 3, 0, 1),
        changes=(1, -1, 1, -1),
        name="schlogl",
    )


def schlogl_propensities(x: int, params: SchloglParams | None = None) -> np.ndarray:
    """``(k1 B1 x(x-1)/2, k2 x(x-1)(x-2)/6, k3 B2, k4 x)``."""
    return schlogl_network(params).propensities(x)


def _mean_field_rhs(x, p: SchloglParams, convention: str):
    if convention == "mean-field":
        return p.k1 * p.B1 * x * x / 2 - p.k2 * x**3 / 6 + p.k3 * p.B2 - p.k4 * x
    if convention == "combinatorial":
        return (
            p.k1 * p.B1 * x * (x - 1) / 2
            - p.k2 * x * (x - 1) * (x - 2) / 6
            + p.k3 * p.B2
            - p.k4 * x
        )
    raise ValueError("convention must be 'mean-field' or 'combinatorial'")


def _bisect(f, lo, hi, tol=1e-10):
    flo = f(lo)
    while hi - lo > tol * max(1.0, abs(lo)):
        mid = 0.5 * (lo + hi)
        fm = f(mid)
        if (fm < 0) == (flo < 0):
            lo, flo = mid, fm
        else:
            hi = mid
    return 0.5 * (lo + hi)


def deterministic_steady_states(
    params: SchloglParams | None = None, convention: str = "mean-field", *, upper: float = 1000.0
) -> list[float]:
    """Real roots of the deterministic rate law on ``[0, upper]``.

    ``"mean-field"`` uses ``x^2/2`` and ``x^3/6`` (large-volume limit);
    ``"combinatorial"`` uses the falling factorials of the propensities.
    Brackets come from a fine sign scan, then each root is bisected.
    """
    p = params or SchloglParams()

    def f(x):
        return _mean_field_rhs(x, p, convention)

    xs = np.linspace(0.0, upper, 20001)
    vals = f(xs)
    roots = []
    for i in np.nonzero(np.sign(vals[:-1]) != np.sign(vals[1:]))[0]:
        roots.append(_bisect(f, float(xs[i]), float(xs[i + 1])))
    return roots


# ---------------------------------------------------------------------------
# Waiting times and single steps


@dataclass(frozen=True)
class WaitingTime:
    """Waiting-time family: ``"exp"``, ``"mlf"`` or ``"wplus"`` with order ``alpha``."""

    kind: str = "exp"
    alpha: float = 1.0

    def __post_init__(self):
        kind = _ALIASES.get(self.kind, self.kind)
        if kind not in WAITING_KINDS:
            raise ValueError(f"waiting kind must be one of {sorted(WAITING_KINDS)}")
        object.__setattr__(self, "kind", kind)
        if not (0.0 < self.alpha <= 1.0):
            raise ValueError("alpha must lie in (0, 1]")
        if kind == "wplus" and self.alpha == 1.0:
            raise ValueError("the W+ mixture needs alpha < 1")
        if kind == "exp" and self.alpha != 1.0:
            raise ValueError("exponential waiting has alpha = 1")

    @property
    def code(self) -> int:
        return WAITING_KINDS[self.kind]

    def sample(self, rate: float, rng):
        if self.kind == "exp":
            return sample_exponential(rate, rng)
        if self.kind == "mlf":
            return sample_mlf_waiting(MlfParams(self.alpha, rate), rng)
        return sample_wplus_waiting(MlfParams(self.alpha, rate), rng)


def _as_waiting(waiting) -> WaitingTime:
    if isinstance(waiting, WaitingTime):
        return waiting
    if isinstance(waiting, str):
        return WaitingTime(waiting)
    kind, alpha = waiting
    return WaitingTime(kind, alpha)


def ssa_step(state: int, network: ReactionNetwork, waiting, rng):
    """One event: ``(tau, next_state)``.

    Raises :class:`AbsorbingStateError` when every propensity is zero.
    """
    waiting = _as_waiting(waiting)
    rng = as_generator(rng)
    a = network.propensities(state)
    total = a.sum()
    if total <= 0:
        raise AbsorbingStateError(f"no reaction can fire from state {state}")
    tau = waiting.sample(total, rng)
    v = rng.random() * total
    j = int(np.searchsorted(np.cumsum(a), v, side="right"))
    j = min(j, a.size - 1)
    return float(tau), int(state + network.changes[j])


# ---------------------------------------------------------------------------
# Compiled kernels


@numba.njit(cache=True)
def _uniform(rng):
    u = rng.random()
    while u == 0.0:
        u = rng.random()
    return u


@numba.njit(cache=True)
def _waiting(rng, rate, kind, alpha, wplus_c):
    if kind == 0 or (kind == 1 and alpha == 1.0):
        return -math.log(_uniform(rng)) / rate
    u1 = _uniform(rng)
    u2 = _uniform(rng)
    pa = math.pi * alpha
    if kind == 1:
        mix = math.sin(pa) / math.tan(pa * (1.0 - u1)) - math.cos(pa)
    else:
        v = wplus_c * u1
        mix = math.sin(pa * v) / math.sin(pa * (1.0 + v))
    return -((mix / rate) ** (1.0 / alpha)) * math.log(u2)


@numba.njit(cache=True)
def _propensities(x, scaled_rates, orders, falling, out):
    # scaled_rates[r] = rates[r] / orders[r]!, so only the falling factorial remains;
    # falling[m] holds x(x-1)...(x-m+1), clamped at zero once m > x
    xf = float(x)
    falling[0] = 1.0
    for m in range(falling.shape[0] - 1):
        falling[m + 1] = falling[m] * max(xf - m, 0.0)
    total = 0.0
    for r in range(scaled_rates.shape[0]):
        p = scaled_rates[r] * falling[orders[r]]
        out[r] = p
        total += p
    return total


@numba.njit(cache=True, inline="always")
def _select(a, v):
    # first reaction whose cumulative propensity exceeds v
    acc = 0.0
    for r in range(a.shape[0]):
        acc += a[r]
        if v < acc:
            return r
    return a.shape[0] - 1


@numba.njit(cache=True, nogil=True)
def _run_network(rng, x0, snapshots, rates, orders, changes, kind, alpha, wplus_c, record, max_events):
    """Simulate up to ``snapshots[-1]``; returns (snapshot states, times, states, n_events, status).

    ``status`` is 0 on success and 1 when ``max_events`` was hit.
    """
    nsnap = snapshots.shape[0]
    snap_states = np.empty(nsnap, dtype=np.int64)
    cap = 1024 if record else 1
    times = np.empty(cap)
    states = np.empty(cap, dtype=np.int64)
    a = np.empty(rates.shape[0])
    falling = np.empty(orders.max() + 1)
    x = x0
    t = 0.0
    n_events = 0
    s_idx = 0
    t_end = snapshots[nsnap - 1]
    while True:
        total = _propensities(x, rates, orders, falling, a)
        if total <= 0.0:
            break
        t_next = t + _waiting(rng, total, kind, alpha, wplus_c)
        if t_next > t_end:
            break
        while s_idx < nsnap and snapshots[s_idx] < t_next:
            snap_states[s_idx] = x
            s_idx += 1
        x += changes[_select(a, rng.random() * total)]
        t = t_next
        if record:
            if n_events == cap:
                cap *= 2
                new_t = np.empty(cap)
                new_s = np.empty(cap, dtype=np.int64)
                new_t[:n_events] = times[:n_events]
                new_s[:n_events] = states[:n_events]
                times = new_t
                states = new_s
            times[n_events] = t
            states[n_events] = x
        n_events += 1
        if n_events >= max_events:
            return snap_states, times[:0], states[:0], n_events, 1
    while s_idx < nsnap:
        snap_states[s_idx] = x
        s_idx += 1
    if not record:
        return snap_states, times[:0], states[:0], n_events, 0
    return snap_states, times[:n_events], states[:n_events], n_events, 0


@numba.njit(cache=True, nogil=True)
def _snap_network(rng, x0, snapshots, rates, orders, changes, kind, alpha, wplus_c, max_events):
    """Snapshot-only twin of :func:`_run_network`; same draws, no event arrays.

    Returns (snapshot states, n_events, status).
    """
    nsnap = snapshots.shape[0]
    snap_states = np.empty(nsnap, dtype=np.int64)
    a = np.empty(rates.shape[0])
    falling = np.empty(orders.max() + 1)
    x = x0
    t = 0.0
    n_events = 0
    s_idx = 0
    t_end = snapshots[nsnap - 1]
    while True:
        total = _propensities(x, rates, orders, falling, a)
        if total <= 0.0:
            break
        t_next = t + _waiting(rng, total, kind, alpha, wplus_c)
        if t_next > t_end:
            break
        while s_idx < nsnap and snapshots[s_idx] < t_next:
            snap_states[s_idx] = x
            s_idx += 1
        x += changes[_select(a, rng.random() * total)]
        t = t_next
        n_events += 1
        if n_events >= max_events:
            return snap_states, n_events, 1
    while s_idx < nsnap:
        snap_states[s_idx] = x
        s_idx += 1
    return snap_states, n_events, 0


@numba.njit(cache=True, nogil=True)
def _run_graph(rng, j0, snapshots, exit_rates, cum_jump, kind, alpha, wplus_c, record, max_events):
    """Random walk on a generator; ``cum_jump[:, j]`` is the cumulative jump law out of ``j``."""
    nsnap = snapshots.shape[0]
    snap_states = np.empty(nsnap, dtype=np.int64)
    cap = 1024 if record else 1
    times = np.empty(cap)
    states = np.empty(cap, dtype=np.int64)
    n = exit_rates.shape[0]
    j = j0
    t = 0.0
    n_events = 0
    s_idx = 0
    t_end = snapshots[nsnap - 1]
    while True:
        rate = exit_rates[j]
        if rate <= 0.0:
            break
        t_next = t + _waiting(rng, rate, kind, alpha, wplus_c)
        if t_next > t_end:
            break
        while s_idx < nsnap and snapshots[s_idx] < t_next:
            snap_states[s_idx] = j
            s_idx += 1
        v = rng.random()
        nxt = n - 1
        for i in range(n):
            if v < cum_jump[i, j]:
                nxt = i
                break
        j = nxt
        t = t_next
        if record:
            if n_events == cap:
                cap *= 2
                new_t = np.empty(cap)
                new_s = np.empty(cap, dtype=np.int64)
                new_t[:n_events] = times[:n_events]
                new_s[:n_events] = states[:n_events]
                times = new_t
                states = new_s
            times[n_events] = t
            states[n_events] = j
        n_events += 1
        if n_events >= max_events:
            return snap_states, times[:0], states[:0], n_events, 1
    while s_idx < nsnap:
        snap_states[s_idx] = j
        s_idx += 1
    if not record:
        return snap_states, times[:0], states[:0], n_events, 0
    return snap_states, times[:n_events], states[:n_events], n_events, 0


def _wplus_c(waiting: WaitingTime) -> float:
    return normalization_C(waiting.alpha) if waiting.kind == "wplus" else 0.0


def _snapshots(t):
    arr = np.atleast_1d(np.asarray(t, dtype=float))
    if arr.size == 0 or np.any(arr <= 0) or np.any(np.diff(arr) <= 0):
        raise ValueError("snapshot times must be positive and strictly increasing")
    return arr


def _check_status(status, n_events):
    if status == 1:
        raise EventCapError(f"simulation exceeded {n_events} events")


# ---------------------------------------------------------------------------
# Trajectories


@dataclass
class Trajectory:
    """Event times and the state entered at each event (right-continuous path)."""

    x0: int
    times: np.ndarray
    states: np.ndarray
    t_end: float
    seed: int | None = None
    stream_id: int | None = None

    def __post_init__(self):
        self.times = np.asarray(self.times, dtype=float)
        self.states = np.asarray(self.states, dtype=np.int64)

    @property
    def n_events(self) -> int:
        return self.times.size

    def state_at(self, t):
        """State held at time ``t`` (the last event at or before ``t``)."""
        idx = np.searchsorted(self.times, np.asarray(t, dtype=float), side="right")
        path = np.concatenate(([self.x0], self.states))
        return path[idx]


def _stream(rng):
    if isinstance(rng, RngStream):
        return rng.seed, rng.stream_id
    return None, None


def simulate_trajectory(network: ReactionNetwork, waiting, t_end: float, rng, *, x0=None, max_events=MAX_EVENTS) -> Trajectory:
    """Record every event up to ``t_end``.

    ``x0`` defaults to the Schlogl initial condition for the bundled network.
    A state where nothing can fire ends the trajectory early.
    """
    if not t_end > 0:
        raise ValueError("t_end must be positive")
    waiting = _as_waiting(waiting)
    x0 = SchloglParams().X0 if x0 is None else int(x0)
    seed, stream_id = _stream(rng)
    gen = as_generator(rng)
    rates, orders, changes = network.arrays()
    _, times, states, n_events, status = _run_network(
        gen, x0, np.array([float(t_end)]), rates, orders, changes,
        waiting.code, waiting.alpha, _wplus_c(waiting), True, int(max_events),
    )
    _check_status(status, n_events)
    return Trajectory(x0, times, states, float(t_end), seed, stream_id)


def _graph_tables(L: GraphLaplacian):
    rates = L.exit_rates
    jump = np.zeros((L.dim, L.dim))
    for j in range(L.dim):
        if rates[j] > 0:
            jump[:, j] = L.jump_probabilities(j)
    cum = np.cumsum(jump, axis=0)
    # Guard the last bin against rounding in the cumulative sum.
    for j in range(L.dim):
        nz = np.nonzero(jump[:, j])[0]
        if nz.size:
            cum[nz[-1]:, j] = 1.0
    return rates, cum


def ctrw_on_graph(A, waiting, j0: int, t_end: float, rng, *, max_events=MAX_EVENTS) -> Trajectory:
    """Continuous-time random walk: wait with rate ``|a_jj|``, jump to ``i`` w.p. ``a_ij/|a_jj|``."""
    L = validate_laplacian(A)
    if not (0 <= j0 < L.dim):
        raise ValueError("j0 out of range")
    if not t_end > 0:
        raise ValueError("t_end must be positive")
    waiting = _as_waiting(waiting)
    seed, stream_id = _stream(rng)
    rates, cum = _graph_tables(L)
    _, times, states, n_events, status = _run_graph(
        as_generator(rng), int(j0), np.array([float(t_end)]), rates, cum,
        waiting.code, waiting.alpha, _wplus_c(waiting), True, int(max_events),
    )
    _check_status(status, n_events)
    return Trajectory(int(j0), times, states, float(t_end), seed, stream_id)


# ---------------------------------------------------------------------------
# Ensembles


def _n_workers(workers):
    cap = os.environ.get("FRACTEULER_THREADS")
    n = workers if workers is not None else (os.cpu_count() or 1)
    if cap:
        n = min(n, max(1, int(cap)))
    return max(1, int(n))


def _ensemble(run_one, N, base_seed, workers):
    """Run ``run_one(generator)`` for stream ids ``0..N-1``; returns stacked snapshot states."""
    if N < 1:
        raise ValueError("N must be at least 1")

    def chunk(lo, hi):
        out = []
        for i in range(lo, hi):
            out.append(run_one(RngStream(base_seed, i).generator()))
        return np.array(out, dtype=np.int64)

    n_workers = min(_n_workers(workers), N)
    if n_workers == 1:
        return chunk(0, N)
    bounds = np.linspace(0, N, n_workers * 4 + 1).astype(int)
    with ThreadPoolExecutor(n_workers) as pool:
        parts = list(pool.map(lambda b: chunk(*b), zip(bounds[:-1], bounds[1:])))
    return np.concatenate([p for p in parts if p.size])


@dataclass
class EnsembleHistogram:
    """Counts of the state held at ``time`` over ``n`` trajectories."""

    time: float
    counts: np.ndarray
    n: int
    base_seed: int = 0
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        self.counts = np.asarray(self.counts, dtype=np.int64)
        if int(self.counts.sum()) != self.n:
            raise ValueError("histogram counts must sum to the trajectory count")

    @property
    def states(self) -> np.ndarray:
        return np.arange(self.counts.size)

    def frequencies(self) -> np.ndarray:
        return self.counts / self.n

    def smoothed(self, width: int = 5) -> np.ndarray:
        return np.convolve(self.counts.astype(float), np.ones(width) / width, mode="same")

    def modes(self, width: int = 5, z: float = 3.5, separation: int = 10) -> list[int]:
        """Local maxima of the boxcar-smoothed histogram.

        A peak counts as a mode when its prominence exceeds ``z`` standard
        deviations of the Poisson noise in (peak - valley) of the smoothed
        counts, ``sqrt((h_peak + h_valley) / width)``.  Peaks closer than
        ``separation`` states to a taller mode are merged into it.
        """
        hs = self.smoothed(width)
        peaks, props = find_peaks(hs, prominence=0)
        valley = hs[peaks] - props["prominences"]
        noise = np.sqrt((np.maximum(hs[peaks], 1.0) + np.maximum(valley, 1.0)) / width)
        keep = peaks[props["prominences"] > z * noise]
        out: list[int] = []
        for k in keep[np.argsort(-hs[keep], kind="stable")]:
            if all(abs(int(k) - o) >= separation for o in out):
                out.append(int(k))
        return sorted(out)


def _histograms(snap_states, t_snap, N, base_seed, meta):
    size = int(snap_states.max()) + 1 if snap_states.size else 1
    return [
        EnsembleHistogram(float(t), np.bincount(snap_states[:, i], minlength=size), N, base_seed, dict(meta))
        for i, t in enumerate(t_snap)
    ]


def ensemble_histogram(
    network: ReactionNetwork,
    waiting,
    t_snapshots,
    N: int,
    base_seed: int = 0,
    *,
    x0=None,
    workers: int | None = None,
    max_events: int = MAX_EVENTS,
) -> list[EnsembleHistogram]:
    """Histograms of ``N`` independent trajectories at each snapshot time.

    Trajectory ``i`` uses stream ``(base_seed, i)``, so the result does not
    depend on how the work is split across threads.
    """
    waiting = _as_waiting(waiting)
    t_snap = _snapshots(t_snapshots)
    x0 = SchloglParams().X0 if x0 is None else int(x0)
    rates, orders, changes = network.arrays()
    wc = _wplus_c(waiting)

    def run_one(gen):
        snap, n_events, status = _snap_network(
            gen, x0, t_snap, rates, orders, changes, waiting.code, waiting.alpha, wc, max_events
        )
        _check_status(status, n_events)
        return snap

    states = _ensemble(run_one, int(N), int(base_seed), workers)
    meta = {"network": network.name, "waiting": waiting.kind, "alpha": waiting.alpha, "x0": x0}
    return _histograms(states, t_snap, int(N), int(base_seed), meta)


def ctrw_ensemble(
    A, waiting, j0: int, t_snapshots, N: int, base_seed: int = 0, *, workers: int | None = None
) -> np.ndarray:
    """Occupation frequencies of ``N`` walks, shape ``(len(t_snapshots), dim)``."""
    L = validate_laplacian(A)
    waiting = _as_waiting(waiting)
    t_snap = _snapshots(t_snapshots)
    rates, cum = _graph_tables(L)
    wc = _wplus_c(waiting)

    def run_one(gen):
        snap, _, _, n_events, status = _run_graph(
            gen, int(j0), t_snap, rates, cum, waiting.code, waiting.alpha, wc, False, MAX_EVENTS
        )
        _check_status(status, n_events)
        return snap

    states = _ensemble(run_one, int(N), int(base_seed), workers)
    return np.stack([np.bincount(states[:, i], minlength=L.dim) / N for i in range(t_snap.size)])


# ---------------------------------------------------------------------------
# Master-equation counterpart of the Schlogl model


def schlogl_master_generator(params: SchloglParams | None = None, x_max: int = 800):
    """Birth and death rates of the Schlogl chain truncated to ``[0, x_max]``.

    The top state cannot give birth (reflecting boundary).
    """
    net = schlogl_network(params)
    x = np.arange(x_max + 1)
    a = np.array([net.propensities(int(v)) for v in x])
    birth = a[:, 0] + a[:, 2]
    death = a[:, 1] + a[:, 3]
    birth[-1] = 0.0
    return birth, death


def schlogl_master_solution(
    params: SchloglParams | None = None, alpha: float = 1.0, times=(50.0,), x_max: int = 800
) -> list[np.ndarray]:
    """``E_alpha(A t^alpha) delta_X0`` on the truncated state space."""
    p = params or SchloglParams()
    birth, death = schlogl_master_generator(p, x_max)
    p0 = np.zeros(x_max + 1)
    p0[p.X0] = 1.0
    return solve_birth_death_mlf(birth, death, alpha, p0, times)
