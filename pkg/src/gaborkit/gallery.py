"""Window recipes and the constructive counterexample families.

Windows: the periodized Gaussian at the self-dual scaling, discrete
B-splines (iterated box convolutions, exact in integer arithmetic before
normalization), general box convolution products, the delta, and windows
loaded from files.  All recipe windows come out unit-norm.

Counterexamples: the alternating-sign sequence on the critical square
lattice, and the explicit telescoping kernel sequence for windows that
partition unity, which certifies the non-frame verdict without touching an
inequality.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import LatticeError, PartitionOfUnityError, ShapeMismatchError
from .lattice import SeparableLattice
from .operators import Window, synthesis_map, window_samples
from .twisted import TwistedSequence

RECIPE_KINDS = ("delta", "periodized_gaussian", "bspline", "convolution_product", "file")


@dataclass(frozen=True)
class WindowRecipe:
    """How to build a window: one of ``delta``, ``periodized_gaussian``,
    ``bspline`` (order, one width), ``convolution_product`` (width list),
    or ``file`` (path to a saved window)."""

    kind: str
    order: int = 1
    widths: tuple = ()
    path: str = ""

    def __post_init__(self):
        if self.kind not in RECIPE_KINDS:
            raise LatticeError(f"unknown window recipe kind {self.kind!r}")

    @classmethod
    def parse(cls, text: str) -> "WindowRecipe":
        """Parse CLI recipe strings: ``delta``, ``gaussian``,
        ``bspline:ORDER:WIDTH``, ``conv:W1,W2,...``, ``file:PATH``."""
        head, _, rest = text.partition(":")
        head = head.strip().lower()
        if head == "delta":
            return cls("delta")
        if head in ("gaussian", "periodized_gaussian"):
            return cls("periodized_gaussian")
        if head == "bspline":
            parts = rest.split(":")
            if len(parts) != 2:
                raise LatticeError(f"bspline recipe needs ORDER:WIDTH, got {text!r}")
            return cls("bspline", order=int(parts[0]), widths=(int(parts[1]),))
        if head in ("conv", "convolution_product"):
            widths = tuple(int(w) for w in rest.split(",") if w.strip())
            if not widths:
                raise LatticeError(f"convolution recipe needs widths, got {text!r}")
            return cls("convolution_product", widths=widths)
        if head == "file":
            return cls("file", path=rest)
        raise LatticeError(f"cannot parse window recipe {text!r}")


def periodized_gaussian(L: int) -> np.ndarray:
    """Unit-norm periodization of exp(-pi t^2 / L), the self-dual width.

    Evaluated on centered residues with a symmetric truncation range so the
    samples satisfy g[n] = g[L - n] term by term; the truncation tail is
    below 1e-17 relative.
    """
    n = np.arange(L)
    centered = ((n + L // 2) % L) - L // 2
    reach = int(np.ceil(0.5 + np.sqrt(40.0 / L))) + 1
    g = np.zeros(L)
    for j in range(-reach, reach + 1):
        g += np.exp(-np.pi * (centered + j * L) ** 2 / L)
    return g / np.linalg.norm(g)


def _box_product(L: int, widths) -> np.ndarray:
    """Iterated circular convolution of unit boxes, exact in int64."""
    out = np.zeros(L, dtype=np.int64)
    out[: widths[0]] = 1
    for w in widths[1:]:
        box = np.zeros(L, dtype=np.int64)
        box[:w] = 1
        full = np.convolve(out, box)
        folded = np.zeros(L, dtype=np.int64)
        for start in range(0, full.size, L):
            chunk = full[start : start + L]
            folded[: chunk.size] += chunk
        out = folded
    return out


def _check_widths(L, widths):
    for w in widths:
        if w < 1:
            raise LatticeError(f"box width must be positive, got {w}")
        if L % w != 0:
            raise LatticeError(f"box width {w} does not divide L={L}")


def make_window(recipe: WindowRecipe, model) -> Window:
    """Realize a recipe as a unit-norm window of length ``model.L``."""
    L = model.L
    if recipe.kind == "delta":
        samples = np.zeros(L)
        samples[0] = 1.0
        return Window.unit(samples, "delta")
    if recipe.kind == "periodized_gaussian":
        return Window.unit(periodized_gaussian(L), "periodized-gaussian")
    if recipe.kind == "bspline":
        if recipe.order < 1:
            raise LatticeError(f"bspline order must be >= 1, got {recipe.order}")
        if len(recipe.widths) != 1:
            raise LatticeError("bspline recipe takes exactly one width")
        _check_widths(L, recipe.widths)
        samples = _box_product(L, recipe.widths * recipe.order)
        return Window.unit(samples, f"bspline-{recipe.order}(w={recipe.widths[0]})")
    if recipe.kind == "convolution_product":
        _check_widths(L, recipe.widths)
        samples = _box_product(L, recipe.widths)
        return Window.unit(samples, f"conv{list(recipe.widths)}")
    if recipe.kind == "file":
        from .reporting import load_window

        samples = load_window(recipe.path)
        if samples.shape != (L,):
            raise ShapeMismatchError(
                f"window file {recipe.path!r} has length {samples.shape[0]}, expected {L}"
            )
        return Window.unit(samples, f"file:{recipe.path}")
    raise LatticeError(f"unknown recipe kind {recipe.kind!r}")


def random_window(model, rng, label="random") -> Window:
    """Unit-norm complex Gaussian window (for property sweeps)."""
    samples = rng.standard_normal(model.L) + 1j * rng.standard_normal(model.L)
    return Window.unit(samples, label)


def partition_of_unity_deviation(samples, period: int):
    """Return ``(mean, max deviation)`` of the periodized sums
    ``sum_k g[n - period*k]`` over the residues ``n``."""
    samples = np.asarray(samples)
    L = samples.shape[0]
    if period < 1 or L % period != 0:
        raise LatticeError(f"period {period} does not divide L={L}")
    sums = samples.reshape(L // period, period).sum(axis=0)
    mean = complex(np.mean(sums))
    return mean, float(np.max(np.abs(sums - mean)))


@dataclass(frozen=True)
class AlternatingProbeResult:
    length: int
    step: int
    ratio: float


def gaussian_alternating_kernel_probe(L: int, window=None) -> AlternatingProbeResult:
    """Synthesize the alternating sequence c[k, l] = (-1)^(k+l) on the
    critical square lattice (step sqrt(L) in both directions, which is its
    own adjoint) and return ``ratio = |D c| / |c|``.

    ``window=None`` uses the periodized Gaussian; pass another window (e.g.
    the delta) for control runs.
    """
    step = int(round(np.sqrt(L)))
    if step < 2 or step * step != L:
        raise LatticeError(f"alternating probe needs a perfect square length, got L={L}")
    g = periodized_gaussian(L) if window is None else window_samples(window)
    lattice = SeparableLattice(L, step, step)
    adjoint = lattice.adjoint()
    k = np.arange(adjoint.n_time)[:, None]
    l = np.arange(adjoint.n_freq)[None, :]
    values = ((-1.0) ** (k + l)).astype(complex)
    out = synthesis_map(g, adjoint, values)
    ratio = float(np.linalg.norm(out) / np.linalg.norm(values))
    return AlternatingProbeResult(length=L, step=step, ratio=ratio)


#: Numerical tolerance on the partition-of-unity identity (relative).
POU_RTOL = 1e-12


def partition_of_unity_kernel(g, pou_period: int, phases: int, time_step: int = 1):
    """Explicit kernel certificate for windows that partition unity.

    Given a window with ``sum_k g[n - pou_period*k]`` constant and nonzero,
    builds the lattice ``time_step*Z_L x (L*phases/pou_period)*Z_L`` whose
    adjoint has time step ``pou_period/phases``, together with the sequence
    that places ``+1, -1, 0, ..., 0`` (period ``phases``) along the adjoint
    time axis at frequency zero.  Adjacent groups of ``phases`` translates
    telescope against the partition of unity, so the synthesis of the
    sequence vanishes identically and the system cannot be a frame.

    Returns ``(lattice, sequence)`` with the sequence indexed by the
    adjoint lattice.
    """
    samples = window_samples(g)
    L = samples.shape[0]
    if phases < 2:
        raise LatticeError(f"need at least 2 phases, got {phases}")
    if pou_period < 1 or L % pou_period != 0:
        raise LatticeError(f"partition period {pou_period} does not divide L={L}")
    if pou_period % phases != 0:
        raise LatticeError(
            f"phase count {phases} does not divide the partition period {pou_period}"
        )
    if time_step < 1 or L % time_step != 0:
        raise LatticeError(f"time step {time_step} does not divide L={L}")

    mean, deviation = partition_of_unity_deviation(samples, pou_period)
    scale = float(np.max(np.abs(samples))) * (L // pou_period)
    if abs(mean) <= POU_RTOL * scale:
        raise PartitionOfUnityError(
            f"window sums to {mean} over period {pou_period}; need a nonzero constant"
        )
    if deviation > POU_RTOL * abs(mean):
        raise PartitionOfUnityError(
            f"window violates the partition of unity at period {pou_period}: "
            f"max deviation {deviation:.3e} against constant {abs(mean):.3e}"
        )

    freq_step = (L * phases) // pou_period
    lattice = SeparableLattice(L, time_step, freq_step)
    adjoint = lattice.adjoint()
    values = np.zeros(adjoint.grid_shape, dtype=complex)
    ks = np.arange(adjoint.n_time)
    values[ks % phases == 0, 0] = 1.0
    values[ks % phases == 1, 0] = -1.0
    return lattice, TwistedSequence(values, adjoint)
