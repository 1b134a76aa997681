"""Frame diagnostics: bounds, the fourteen-way equivalence harness, dual
windows, cross-Gramians, duality checks and sampled-STFT proxy norms.

The harness evaluates, independently and on its own operator matrix, the
fourteen classical characterizations of the frame property of a system on a
lattice -- injectivity / invertibility / surjectivity statements about the
analysis map, the frame operator, the synthesis map, and the adjoint-lattice
analysis, synthesis and Gramian -- and reports whether all fourteen verdicts
agree.  In exact arithmetic they must; the harness is therefore a
machine-checkable consistency property, and any disagreement beyond the
flagged marginal band is an alarm.

Tolerances: every check reduces to a dimensionless margin (sigma_min over
sigma_max for first-order operators, its square for the PSD compositions)
compared against one shared cutoff, so the fourteen sub-checks measure the
same quantity and cannot disagree by threshold choice alone.  Margins within
a factor 10 of the cutoff are flagged marginal rather than trusted.

In this finite model, invertibility on the heavy and light sequence spaces
collapses to plain invertibility, and injectivity of a square system already
implies invertibility; the distinctions the infinite-dimensional theory
draws between these conditions are documented collapses here, not separate
computations.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import NotAFrameError, ShapeMismatchError
from .gallery import periodized_gaussian
from .lattice import SeparableLattice
from .operators import (
    analysis_matrix,
    atom_stack,
    coefficient_map,
    frame_operator_matrix,
    gramian_matrix,
    synthesis_map,
    synthesis_matrix,
    window_samples,
)
from .tolerances import DEFAULT_TOL_SCALE, MARGINAL_BAND, margin_cutoff

CONDITION_KEYS = (
    "i", "ii", "iii", "iv", "v", "vi", "vii",
    "viii", "ix", "x", "xi", "xii", "xiii", "xiv",
)


@dataclass
class BoundsReport:
    """Frame bounds (extreme eigenvalues of the frame operator) and Riesz
    bounds (from the nonzero Gramian spectrum, stored both squared and in
    the unsquared norm convention)."""

    frame_lower: float
    frame_upper: float
    riesz_lower: float
    riesz_upper: float
    riesz_lower_sq: float
    riesz_upper_sq: float
    condition_number: float


@dataclass
class EquivalenceVerdict:
    """Outcome of the fourteen-way consistency harness."""

    conditions: dict
    residuals: dict
    margins: dict
    consistent: bool
    marginal: bool
    marginal_conditions: tuple
    cutoff: float

    @property
    def frame(self) -> bool:
        return self.conditions["i"]

    @property
    def all_true(self) -> bool:
        return all(self.conditions.values())

    @property
    def all_false(self) -> bool:
        return not any(self.conditions.values())


@dataclass
class DualityRecord:
    """Frame verdict on the lattice vs Riesz verdict on its adjoint, with
    both spectra for empirical study of the bound relation."""

    frame: bool
    adjoint_riesz: bool
    agree: bool
    frame_spectrum: np.ndarray = field(repr=False)
    adjoint_gramian_spectrum: np.ndarray = field(repr=False)


def _rank_margin(svals, need):
    """Margin sigma_need/sigma_max for 'rank >= need', 0 when impossible."""
    if svals.size == 0 or svals[0] <= 0.0 or svals.size < need:
        return 0.0
    return float(svals[need - 1] / svals[0])


def _psd_margin(eigs):
    """Margin lambda_min/lambda_max for PSD spectra, clipped at zero."""
    top = float(eigs[-1])
    if top <= 0.0:
        return 0.0
    return float(max(eigs[0], 0.0) / top)


def check_all_conditions(g, lattice: SeparableLattice, tol_scale=DEFAULT_TOL_SCALE) -> EquivalenceVerdict:
    """Evaluate the fourteen equivalent frame characterizations independently.

    (i)     analysis map on the lattice is bounded below (frame),
    (ii)    frame operator invertible (heavy-space collapse),
    (iii)   frame operator invertible (light-space collapse),
    (iv)    frame operator has trivial nullspace,
    (v)     analysis map has trivial nullspace,
    (vi)    synthesis map has dense range (= full rank),
    (vii)   synthesis map is surjective (= full rank),
    (viii)  adjoint-lattice synthesis map is injective,
    (ix)    adjoint-lattice analysis map has dense range,
    (x)     adjoint-lattice analysis map is surjective,
    (xi)    adjoint Gramian invertible (heavy-space collapse),
    (xii)   adjoint Gramian invertible (light-space collapse),
    (xiii)  adjoint Gramian has trivial nullspace,
    (xiv)   adjoint system is a Riesz sequence (Gramian bounded below).

    Always returns a verdict; ``consistent`` records whether all fourteen
    booleans agree.
    """
    adjoint = lattice.adjoint()
    L = lattice.L
    n = lattice.cardinality
    n_adj = adjoint.cardinality

    cut = margin_cutoff((L, n, n_adj), tol_scale)
    cut2 = cut * cut

    s_analysis = np.linalg.svd(analysis_matrix(g, lattice), compute_uv=False)
    s_synthesis = np.linalg.svd(synthesis_matrix(g, lattice), compute_uv=False)
    eig_frame = np.linalg.eigvalsh(frame_operator_matrix(g, lattice))
    s_adj_analysis = np.linalg.svd(analysis_matrix(g, adjoint), compute_uv=False)
    s_adj_synthesis = np.linalg.svd(synthesis_matrix(g, adjoint), compute_uv=False)
    eig_adj_gram = np.linalg.eigvalsh(gramian_matrix(g, adjoint))

    m_analysis = _rank_margin(s_analysis, L)
    m_synthesis = _rank_margin(s_synthesis, L)
    m_frame = _psd_margin(eig_frame)
    m_adj_analysis = _rank_margin(s_adj_analysis, n_adj)
    m_adj_synthesis = _rank_margin(s_adj_synthesis, n_adj)
    m_adj_gram = _psd_margin(eig_adj_gram)

    def nullity(eigs, top):
        if top <= 0.0:
            return eigs.size
        return int(np.sum(np.maximum(eigs, 0.0) <= cut2 * top))

    frame_nullity = nullity(eig_frame, float(eig_frame[-1]))
    gram_nullity = nullity(eig_adj_gram, float(eig_adj_gram[-1]))
    analysis_rank = int(np.sum(s_analysis > cut * s_analysis[0])) if s_analysis.size else 0
    synthesis_rank = int(np.sum(s_synthesis > cut * s_synthesis[0])) if s_synthesis.size else 0
    adj_analysis_rank = int(np.sum(s_adj_analysis > cut * s_adj_analysis[0])) if s_adj_analysis.size else 0
    adj_synthesis_rank = int(np.sum(s_adj_synthesis > cut * s_adj_synthesis[0])) if s_adj_synthesis.size else 0

    conditions = {
        "i": m_analysis > cut,
        "ii": m_frame > cut2,
        "iii": m_frame > cut2,
        "iv": frame_nullity == 0,
        "v": analysis_rank == L,
        "vi": synthesis_rank == L,
        "vii": synthesis_rank == L,
        "viii": adj_synthesis_rank == n_adj,
        "ix": adj_analysis_rank == n_adj,
        "x": adj_analysis_rank == n_adj,
        "xi": m_adj_gram > cut2,
        "xii": m_adj_gram > cut2,
        "xiii": gram_nullity == 0,
        "xiv": m_adj_gram > cut2,
    }

    def sigma_at(svals, need):
        return float(svals[need - 1]) if svals.size >= need else 0.0

    residuals = {
        "i": sigma_at(s_analysis, L),
        "ii": float(eig_frame[0]),
        "iii": float(eig_frame[0]),
        "iv": float(frame_nullity),
        "v": float(L - analysis_rank),
        "vi": sigma_at(s_synthesis, L),
        "vii": sigma_at(s_synthesis, L),
        "viii": sigma_at(s_adj_synthesis, n_adj),
        "ix": sigma_at(s_adj_analysis, n_adj),
        "x": sigma_at(s_adj_analysis, n_adj),
        "xi": float(eig_adj_gram[0]),
        "xii": float(eig_adj_gram[0]),
        "xiii": float(gram_nullity),
        "xiv": float(np.sqrt(max(eig_adj_gram[0], 0.0))),
    }

    # Normalized decision margins: >1 means the condition held, <1 failed.
    margins = {
        "i": m_analysis / cut,
        "ii": m_frame / cut2,
        "iii": m_frame / cut2,
        "iv": m_frame / cut2,
        "v": m_analysis / cut,
        "vi": m_synthesis / cut,
        "vii": m_synthesis / cut,
        "viii": m_adj_synthesis / cut,
        "ix": m_adj_analysis / cut,
        "x": m_adj_analysis / cut,
        "xi": m_adj_gram / cut2,
        "xii": m_adj_gram / cut2,
        "xiii": m_adj_gram / cut2,
        "xiv": m_adj_gram / cut2,
    }

    marginal_conditions = tuple(
        key for key in CONDITION_KEYS
        if 1.0 / MARGINAL_BAND < margins[key] < MARGINAL_BAND
    )
    verdicts = set(conditions.values())
    return EquivalenceVerdict(
        conditions=conditions,
        residuals=residuals,
        margins=margins,
        consistent=len(verdicts) == 1,
        marginal=bool(marginal_conditions),
        marginal_conditions=marginal_conditions,
        cutoff=cut,
    )


def frame_bounds(g, lattice: SeparableLattice, tol_scale=DEFAULT_TOL_SCALE) -> BoundsReport:
    """Frame bounds from the frame operator spectrum and Riesz bounds from
    the nonzero Gramian spectrum of the same system."""
    eig_frame = np.linalg.eigvalsh(frame_operator_matrix(g, lattice))
    eig_gram = np.linalg.eigvalsh(gramian_matrix(g, lattice))
    cut2 = margin_cutoff((lattice.L, lattice.cardinality), tol_scale) ** 2

    lower = float(max(eig_frame[0], 0.0))
    upper = float(eig_frame[-1])
    nonzero = eig_gram[eig_gram > cut2 * max(eig_gram[-1], 0.0)]
    if nonzero.size:
        riesz_lower_sq = float(nonzero[0])
        riesz_upper_sq = float(nonzero[-1])
    else:
        riesz_lower_sq = riesz_upper_sq = 0.0
    condition = upper / lower if lower > cut2 * upper else float("inf")
    return BoundsReport(
        frame_lower=lower,
        frame_upper=upper,
        riesz_lower=float(np.sqrt(riesz_lower_sq)),
        riesz_upper=float(np.sqrt(riesz_upper_sq)),
        riesz_lower_sq=riesz_lower_sq,
        riesz_upper_sq=riesz_upper_sq,
        condition_number=condition,
    )


def wexler_raz_dual(g, lattice: SeparableLattice, tol_scale=DEFAULT_TOL_SCALE):
    """The canonical dual window, the frame-operator inverse applied to the
    window.

    The dual is biorthogonal to the adjoint-lattice atoms with the covolume
    constant: ``<dual, shift(mu) g> = (a*b/L) * delta_{mu,0}`` on the
    adjoint lattice (the constant is pinned by the orthonormal-basis and
    full-lattice cases).  Raises :class:`NotAFrameError` when the system is
    not a frame at the working tolerance.
    """
    from .operators import Window

    S = frame_operator_matrix(g, lattice)
    eigs = np.linalg.eigvalsh(S)
    cut2 = margin_cutoff((lattice.L, lattice.cardinality), tol_scale) ** 2
    if _psd_margin(eigs) <= cut2:
        raise NotAFrameError(
            "system is not a frame; no dual window",
            sigma_min=float(eigs[0]),
            cutoff=cut2 * float(eigs[-1]),
        )
    samples = window_samples(g)
    dual = np.linalg.solve(S, samples)
    label = getattr(g, "label", "") or "window"
    return Window(
        samples=dual,
        label=f"wexler-raz-dual({label})",
        original_norm=float(np.linalg.norm(dual)),
    )


def wexler_raz_residual(dual, g, lattice: SeparableLattice) -> float:
    """Max deviation of ``<dual, shift(mu) g>`` from ``(a*b/L) delta_{mu,0}``
    over the adjoint lattice."""
    adjoint = lattice.adjoint()
    vals = coefficient_map(g, adjoint, window_samples(dual)).values.copy()
    vals[0, 0] -= lattice.covolume
    return float(np.max(np.abs(vals)))


def reconstruction_residual(g, dual, lattice: SeparableLattice, signals) -> float:
    """Max relative error of ``f = D_g C_dual f`` over the given signals."""
    worst = 0.0
    for f in signals:
        f = np.asarray(f, dtype=complex)
        rebuilt = synthesis_map(g, lattice, coefficient_map(dual, lattice, f))
        worst = max(worst, float(np.linalg.norm(rebuilt - f) / np.linalg.norm(f)))
    return worst


def cross_gramian(phi, g, lattice: SeparableLattice) -> np.ndarray:
    """The cross-Gramian ``Phi[mu, nu] = <shift(nu) phi, shift(mu) g>`` of
    two windows over one lattice."""
    atoms_g = atom_stack(g, lattice)
    atoms_phi = atom_stack(phi, lattice)
    return np.conj(atoms_g) @ atoms_phi.T


def cross_gramian_row_sum_gap(phi, g, lattice: SeparableLattice) -> float:
    """The max-row-sum (l_inf-induced) norm of ``cross_gramian - I``,
    computable without the matrix as
    ``|<phi, g> - 1| + sum_{mu != 0} |<phi, shift(mu) g>|``."""
    vals = coefficient_map(g, lattice, window_samples(phi)).values
    out = float(np.sum(np.abs(vals)) - abs(vals[0, 0]) + abs(vals[0, 0] - 1.0))
    return out


def duality_check(g, lattice: SeparableLattice, tol_scale=DEFAULT_TOL_SCALE) -> DualityRecord:
    """Frame verdict on the lattice against the Riesz verdict of the adjoint
    system, with both spectra attached."""
    adjoint = lattice.adjoint()
    eig_frame = np.linalg.eigvalsh(frame_operator_matrix(g, lattice))
    eig_adj_gram = np.linalg.eigvalsh(gramian_matrix(g, adjoint))
    cut2 = margin_cutoff((lattice.L, lattice.cardinality, adjoint.cardinality), tol_scale) ** 2
    frame = _psd_margin(eig_frame) > cut2
    riesz = _psd_margin(eig_adj_gram) > cut2
    return DualityRecord(
        frame=frame,
        adjoint_riesz=riesz,
        agree=frame == riesz,
        frame_spectrum=eig_frame,
        adjoint_gramian_spectrum=eig_adj_gram,
    )


def stft_grid(f, phi) -> np.ndarray:
    """Full-grid windowed Fourier coefficients ``V[x, xi] = <f, shift((x, xi)) phi>``."""
    f = np.asarray(f, dtype=complex)
    phi = np.asarray(phi, dtype=complex)
    if f.shape != phi.shape or f.ndim != 1:
        raise ShapeMismatchError("signal and analyzing window must be vectors of equal length")
    L = f.shape[0]
    rows = np.empty((L, L), dtype=complex)
    for x in range(L):
        rows[x] = np.fft.fft(f * np.conj(np.roll(phi, x)))
    return rows


def modulation_norm_proxy(f, p) -> float:
    """Grid-sampled STFT proxy norm with the periodized Gaussian analyzer.

    ``p`` is 1, 2 or inf.  The p=2 proxy equals sqrt(L) times the signal
    norm (finite STFT orthogonality), so only p=1 and p=inf carry
    information beyond the plain norm.
    """
    f = np.asarray(f, dtype=complex)
    phi = periodized_gaussian(f.shape[0])
    grid = np.abs(stft_grid(f, phi))
    if p == 1:
        return float(np.sum(grid))
    if p == 2:
        return float(np.sqrt(np.sum(grid**2)))
    if p in (np.inf, float("inf")):
        return float(np.max(grid))
    raise ShapeMismatchError(f"proxy norm defined for p in {{1, 2, inf}}, got {p!r}")
