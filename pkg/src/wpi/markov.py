"""Finite discrete-time Markov models and deterministic trajectory sampling.

Sampling uses one Philox counter-based substream per trajectory, keyed by
``(seed, trajectory index)``.  Results are therefore bit-identical for a
given seed no matter how trajectories are partitioned across workers.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import NamedTuple, Sequence

import networkx as nx
import numpy as np

from .complexity import CoarseState
from .entropy import StateMeasure
from .errors import NonErgodicChainError, ValidationError

#: Tolerance on kernel row sums and the initial distribution.
DISTRIBUTION_TOL = 1e-12

#: Power-iteration convergence target for the stationary distribution.
STATIONARY_RESIDUAL = 1e-12


@dataclass(frozen=True, eq=False)
class MarkovModel:
    """Finite state space, transition kernel, measure, and initial law."""

    states: tuple[CoarseState, ...]
    kernel: np.ndarray
    measure: StateMeasure
    initial: np.ndarray
    name: str = "model"

    def __eq__(self, other):
        if not isinstance(other, MarkovModel):
            return NotImplemented
        return (
            self.name == other.name
            and self.states == other.states
            and [s.label for s in self.states] == [s.label for s in other.states]
            and np.array_equal(self.kernel, other.kernel)
            and self.measure == other.measure
            and np.array_equal(self.initial, other.initial)
        )

    def __init__(self, states, kernel, measure, initial, name="model"):
        states = tuple(states)
        if not states:
            raise ValidationError("model needs at least one state")
        if len({s.bits for s in states}) != len(states):
            raise ValidationError("model states must be distinct")
        n = len(states)

        kernel = np.array(kernel, dtype=float)
        if kernel.shape != (n, n):
            raise ValidationError(f"kernel must be {n}x{n}, got {kernel.shape}")
        if np.any(kernel < 0.0):
            raise ValidationError("kernel entries must be >= 0")
        row_sums = kernel.sum(axis=1)
        bad = np.nonzero(np.abs(row_sums - 1.0) > DISTRIBUTION_TOL)[0]
        if bad.size:
            raise ValidationError(
                f"kernel row {bad[0]} sums to {row_sums[bad[0]]!r}, expected 1 "
                f"within {DISTRIBUTION_TOL}"
            )

        initial = np.array(initial, dtype=float)
        if initial.shape != (n,):
            raise ValidationError(f"initial distribution must have length {n}")
        if np.any(initial < 0.0):
            raise ValidationError("initial probabilities must be >= 0")
        if abs(initial.sum() - 1.0) > DISTRIBUTION_TOL:
            raise ValidationError(
                f"initial distribution sums to {initial.sum()!r}, expected 1 "
                f"within {DISTRIBUTION_TOL}"
            )

        for s in states:
            if s not in measure:
                raise ValidationError(f"measure is missing state {s.bits!r}")

        kernel.setflags(write=False)
        initial.setflags(write=False)
        object.__setattr__(self, "states", states)
        object.__setattr__(self, "kernel", kernel)
        object.__setattr__(self, "measure", measure)
        object.__setattr__(self, "initial", initial)
        object.__setattr__(self, "name", name)

    @property
    def n_states(self) -> int:
        return len(self.states)

    def index_of(self, state: CoarseState) -> int:
        for i, s in enumerate(self.states):
            if s == state:
                return i
        raise ValidationError(f"state {state.bits!r} is not in the model")


class TransitionStep(NamedTuple):
    source: int
    target: int
    probability: float


@dataclass(frozen=True)
class Trajectory:
    """A sampled state path; steps chain source -> target consecutively."""

    steps: tuple[TransitionStep, ...]
    seed: tuple[int, int]  # (experiment seed, trajectory index)

    def __post_init__(self):
        for a, b in zip(self.steps, self.steps[1:]):
            if a.target != b.source:
                raise ValidationError("trajectory steps do not chain")


def is_ergodic(kernel: np.ndarray) -> bool:
    """Irreducible and aperiodic as a directed graph on positive entries."""
    graph = nx.DiGraph()
    n = kernel.shape[0]
    graph.add_nodes_from(range(n))
    for i, j in zip(*np.nonzero(kernel > 0.0)):
        graph.add_edge(int(i), int(j))
    return nx.is_strongly_connected(graph) and nx.is_aperiodic(graph)


def stationary_distribution(kernel: np.ndarray, max_iterations: int = 100_000) -> np.ndarray:
    """Stationary law by power iteration to an L1 residual of 1e-12.

    Non-ergodic kernels are rejected: without a unique positive stationary
    distribution the surprisal control quantity is ill-defined.
    """
    kernel = np.asarray(kernel, dtype=float)
    if not is_ergodic(kernel):
        raise NonErgodicChainError(
            "kernel is not ergodic (must be irreducible and aperiodic)"
        )
    n = kernel.shape[0]
    pi = np.full(n, 1.0 / n)
    for _ in range(max_iterations):
        nxt = pi @ kernel
        residual = float(np.abs(nxt - pi).sum())
        pi = nxt
        if residual <= STATIONARY_RESIDUAL:
            return pi / pi.sum()
    raise NonErgodicChainError(
        f"power iteration did not reach residual {STATIONARY_RESIDUAL} in "
        f"{max_iterations} iterations"
    )


def sample_trajectories(
    model: MarkovModel,
    steps: int,
    count: int,
    seed: int,
    workers: int = 1,
) -> list[Trajectory]:
    """Sample ``count`` trajectories of ``steps`` transitions each.

    Trajectory ``i`` draws all its randomness from ``Philox(key=(seed, i))``,
    so output is deterministic for a given seed and independent of
    ``workers`` (which only partitions the index range).
    """
    if steps < 1:
        raise ValidationError(f"steps must be >= 1, got {steps}")
    if count < 1:
        raise ValidationError(f"count must be >= 1, got {count}")
    if workers < 1:
        raise ValidationError(f"workers must be >= 1, got {workers}")

    kernel_cdf = np.cumsum(model.kernel, axis=1)
    initial_cdf = np.cumsum(model.initial)

    if workers == 1 or count < 2 * workers:
        paths = _sample_block(kernel_cdf, initial_cdf, steps, seed, 0, count)
    else:
        bounds = np.linspace(0, count, workers + 1, dtype=int)
        blocks = []
        with ProcessPoolExecutor(max_workers=workers) as pool:
            futures = [
                pool.submit(_sample_block, kernel_cdf, initial_cdf, steps, seed,
                            int(lo), int(hi))
                for lo, hi in zip(bounds[:-1], bounds[1:])
                if hi > lo
            ]
            for future in futures:
                blocks.append(future.result())
        paths = np.vstack(blocks)

    kernel = model.kernel
    trajectories = []
    for i in range(count):
        path = paths[i]
        steps_out = tuple(
            TransitionStep(int(a), int(b), float(kernel[a, b]))
            for a, b in zip(path[:-1], path[1:])
        )
        trajectories.append(Trajectory(steps=steps_out, seed=(seed, i)))
    return trajectories


def transition_counts(model: MarkovModel, trajectories: Sequence[Trajectory]) -> np.ndarray:
    """Count matrix of observed (source, target) transitions."""
    counts = np.zeros((model.n_states, model.n_states), dtype=np.int64)
    for trajectory in trajectories:
        for step in trajectory.steps:
            counts[step.source, step.target] += 1
    return counts


def _sample_block(kernel_cdf, initial_cdf, steps, seed, lo, hi):
    """Sample trajectories lo..hi-1; returns an int array (hi-lo, steps+1)."""
    n = kernel_cdf.shape[0]
    out = np.empty((hi - lo, steps + 1), dtype=np.int64)
    for i in range(lo, hi):
        gen = np.random.Generator(np.random.Philox(key=[seed, i]))
        uniforms = gen.random(steps + 1)
        state = min(int(np.searchsorted(initial_cdf, uniforms[0], side="right")), n - 1)
        row = out[i - lo]
        row[0] = state
        for k in range(steps):
            state = min(
                int(np.searchsorted(kernel_cdf[state], uniforms[k + 1], side="right")),
                n - 1,
            )
            row[k + 1] = state
    return out


def two_state_chain() -> MarkovModel:
    """Symmetric two-state chain; detailed balance makes surprisal exactly zero."""
    states = (CoarseState("0"), CoarseState("1"))
    kernel = [[0.875, 0.125],
              [0.125, 0.875]]
    measure = StateMeasure({states[0]: 1.0, states[1]: 0.5})
    return MarkovModel(states, kernel, measure, [0.5, 0.5], name="two-state")


def four_state_chain() -> MarkovModel:
    """Cyclically biased lazy chain over 4-bit states of unequal complexity.

    All probabilities are exact binary fractions (56/64, 4/64, 3/64, 1/64),
    the kernel is doubly stochastic (uniform stationary law), every
    transition has a positive reverse transition, and the bias makes the
    surprisal quantity genuinely fluctuate.
    """
    states = (
        CoarseState("0000"),
        CoarseState("0101"),
        CoarseState("0110"),
        CoarseState("1011"),
    )
    s, f, d, b = 0.875, 0.0625, 0.046875, 0.015625  # stay, +1, +2, -1
    kernel = [
        [s, f, d, b],
        [b, s, f, d],
        [d, b, s, f],
        [f, d, b, s],
    ]
    measure = StateMeasure({
        states[0]: 1.0,
        states[1]: 0.5,
        states[2]: 2.0,
        states[3]: 0.25,
    })
    return MarkovModel(states, kernel, measure, [0.25] * 4, name="four-state")


def eight_state_chain() -> MarkovModel:
    """Biased ring over the 3-bit states: forward 1/2, stay 5/16, back 3/16."""
    bits = ["000", "001", "011", "010", "110", "111", "101", "100"]
    states = tuple(CoarseState(b) for b in bits)
    n = len(states)
    kernel = np.zeros((n, n))
    for i in range(n):
        kernel[i, (i + 1) % n] = 0.5
        kernel[i, i] = 0.3125
        kernel[i, (i - 1) % n] = 0.1875
    measure = StateMeasure({s: 1.0 for s in states})
    return MarkovModel(states, kernel, measure, [1.0 / n] * n, name="eight-state")


def four_state_structural_chain() -> MarkovModel:
    """The four-state chain relabeled as architecture (structural) states."""
    base = four_state_chain()
    labels = ("arch-dense", "arch-sparse", "arch-routed", "arch-spiking")
    states = tuple(
        CoarseState(s.bits, label=lab) for s, lab in zip(base.states, labels)
    )
    measure = StateMeasure({s: base.measure.weights[s] for s in states})
    return MarkovModel(states, base.kernel, measure, base.initial, name="four-state-structural")


def shipped_chains() -> list[MarkovModel]:
    """The ergodic test chains bundled with the package."""
    return [two_state_chain(), four_state_chain(), eight_state_chain()]
