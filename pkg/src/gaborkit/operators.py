"""The four canonical operators of a Gabor system on a separable lattice.

For a window ``g`` and lattice ``Lam`` the system's atoms are the shifted
windows ``shift(lam) g, lam in Lam``.  The toolkit provides

* the coefficient (analysis) map  ``C f = (<f, shift(lam) g>)_lam``,
* the synthesis map               ``D c = sum_lam c_lam shift(lam) g``,
* the frame operator              ``S = D C``  (L x L, Hermitian PSD),
* the Gramian                     ``G = C D``  (n x n, Hermitian PSD),

both as explicit matrices for spectral diagnostics and as matrix-free
FFT-accelerated applications for larger problems.  ``D`` is the conjugate
transpose of ``C`` entrywise, so the adjointness ``<C f, c> = <f, D c>``
holds exactly.

The dense builders refuse to allocate beyond a hard entry budget; use the
``coefficient_map`` / ``synthesis_map`` / ``frame_operator_apply`` paths for
long signals.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import MemoryGuardError, ShapeMismatchError
from .lattice import SeparableLattice

#: Hard cap on signal length for explicit L x L matrices.
MAX_DENSE_LENGTH = 4096
#: Hard cap on total entries of any dense operator matrix (~256 MiB complex).
MAX_DENSE_ENTRIES = 1 << 24


@dataclass
class Window:
    """A window vector plus provenance.

    Analysis windows are unit-norm; build them with :meth:`unit`, which
    normalizes and records the original norm.  Dual windows keep their
    canonical (non-unit) scale and are constructed directly.
    """

    samples: np.ndarray
    label: str = ""
    original_norm: float = 1.0

    def __post_init__(self):
        self.samples = np.asarray(self.samples, dtype=complex)
        if self.samples.ndim != 1:
            raise ShapeMismatchError(f"window must be a vector, got shape {self.samples.shape}")
        if not np.any(self.samples):
            raise ShapeMismatchError("window must not be identically zero")

    @classmethod
    def unit(cls, samples, label=""):
        """Normalize ``samples`` to unit l2 norm and record the original norm."""
        samples = np.asarray(samples, dtype=complex)
        norm = float(np.linalg.norm(samples))
        if norm == 0.0:
            raise ShapeMismatchError("window must not be identically zero")
        return cls(samples=samples / norm, label=label, original_norm=norm)

    @property
    def length(self) -> int:
        return self.samples.shape[0]


@dataclass
class LatticeCoefficients:
    """A coefficient array on a lattice grid, shape (L/a, L/b)."""

    values: np.ndarray
    lattice: SeparableLattice = field(repr=False)

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=complex)
        if self.values.shape != self.lattice.grid_shape:
            raise ShapeMismatchError(
                f"coefficient shape {self.values.shape} does not match lattice grid "
                f"{self.lattice.grid_shape}"
            )

    @property
    def flat(self) -> np.ndarray:
        return self.values.reshape(-1)


def window_samples(g) -> np.ndarray:
    """Accept a Window or a bare vector."""
    if isinstance(g, Window):
        return g.samples
    return np.asarray(g, dtype=complex)


def _check_signal(lattice, f):
    f = np.asarray(f, dtype=complex)
    if f.shape != (lattice.L,):
        raise ShapeMismatchError(f"expected a length-{lattice.L} signal, got shape {f.shape}")
    return f


def _translates(g, lattice):
    """Stack of circular translates g((t - k*a) mod L), shape (n_time, L)."""
    L, a = lattice.L, lattice.a
    t = np.arange(L)
    idx = (t[None, :] - a * np.arange(lattice.n_time)[:, None]) % L
    return g[idx]


def _guard_dense(entries, what):
    if entries > MAX_DENSE_ENTRIES:
        raise MemoryGuardError(
            f"{what} would need {entries} entries (cap {MAX_DENSE_ENTRIES}); "
            "use the matrix-free maps instead"
        )


def coefficient_map(g, lattice: SeparableLattice, f) -> LatticeCoefficients:
    """Analysis coefficients ``c[k, l] = <f, shift((k*a, l*b)) g>``.

    Matrix-free: for each time row the frequency column is a folded FFT of
    ``f * conj(translate(g))``, since the sampled modulation has period L/b.
    """
    g = window_samples(g)
    f = _check_signal(lattice, f)
    if g.shape != (lattice.L,):
        raise ShapeMismatchError(f"window length {g.shape} does not match L={lattice.L}")
    n_freq = lattice.n_freq
    prod = f[None, :] * np.conj(_translates(g, lattice))
    folded = prod.reshape(lattice.n_time, lattice.b, n_freq).sum(axis=1)
    return LatticeCoefficients(np.fft.fft(folded, axis=1), lattice)


def synthesis_map(g, lattice: SeparableLattice, coeffs) -> np.ndarray:
    """Synthesize ``sum_{k,l} c[k, l] * shift((k*a, l*b)) g``.

    Matrix-free adjoint of :func:`coefficient_map`: per time row, the
    modulation sum is an inverse FFT tiled to length L.
    """
    g = window_samples(g)
    if isinstance(coeffs, LatticeCoefficients):
        if coeffs.lattice != lattice:
            raise ShapeMismatchError("coefficients indexed by a different lattice")
        values = coeffs.values
    else:
        values = np.asarray(coeffs, dtype=complex)
        if values.shape != lattice.grid_shape:
            raise ShapeMismatchError(
                f"coefficient shape {values.shape} does not match lattice grid "
                f"{lattice.grid_shape}"
            )
    if g.shape != (lattice.L,):
        raise ShapeMismatchError(f"window length {g.shape} does not match L={lattice.L}")
    mods = lattice.n_freq * np.fft.ifft(values, axis=1)
    mods_full = np.tile(mods, (1, lattice.b))
    return np.sum(_translates(g, lattice) * mods_full, axis=0)


def frame_operator_apply(g, lattice: SeparableLattice, f) -> np.ndarray:
    """Apply the frame operator S = D C without forming matrices."""
    return synthesis_map(g, lattice, coefficient_map(g, lattice, f))


def atom_stack(g, lattice: SeparableLattice) -> np.ndarray:
    """All atoms ``shift(lam) g`` as rows, flat grid order, shape (n, L)."""
    g = window_samples(g)
    L = lattice.L
    _guard_dense(lattice.cardinality * L, "atom stack")
    t = np.arange(L)
    phases = np.exp(
        2j * np.pi * (((lattice.b * np.arange(lattice.n_freq))[:, None] * t[None, :]) % L) / L
    )
    atoms = _translates(g, lattice)[:, None, :] * phases[None, :, :]
    return atoms.reshape(lattice.cardinality, L)


def analysis_matrix(g, lattice: SeparableLattice) -> np.ndarray:
    """Dense n x L matrix of the coefficient map (rows are conjugate atoms)."""
    return np.conj(atom_stack(g, lattice))


def synthesis_matrix(g, lattice: SeparableLattice) -> np.ndarray:
    """Dense L x n matrix of the synthesis map; the exact conjugate
    transpose of :func:`analysis_matrix`."""
    return atom_stack(g, lattice).T.copy()


def frame_operator_matrix(g, lattice: SeparableLattice) -> np.ndarray:
    """Dense frame operator S, built from its lattice band structure.

    Summing the modulation geometric series first gives

        S[t, s] = (L/b) * [t = s mod L/b] * sum_k g(t - k*a) conj(g(s - k*a)),

    which is independent of the D @ C product path and is used to
    cross-check it.
    """
    g = window_samples(g)
    L = lattice.L
    if L > MAX_DENSE_LENGTH:
        raise MemoryGuardError(f"L={L} exceeds dense cap {MAX_DENSE_LENGTH}")
    _guard_dense(L * L, "frame operator matrix")
    tr = _translates(g, lattice)
    corr = tr.T @ np.conj(tr)
    t = np.arange(L)
    mask = ((t[:, None] - t[None, :]) % lattice.n_freq) == 0
    return lattice.n_freq * corr * mask


def shift_autocorrelation(g, lattice: SeparableLattice) -> LatticeCoefficients:
    """The window's shift autocorrelation ``a[lam] = <g, shift(lam) g>``."""
    g = window_samples(g)
    return coefficient_map(g, lattice, g)


def gramian_matrix(g, lattice: SeparableLattice) -> np.ndarray:
    """Dense Gramian ``G[lam, mu] = <shift(mu) g, shift(lam) g>``.

    Filled from the autocorrelation sequence and the composition phases,

        G[lam, mu] = exp(-2*pi*i*mu_1*(lam_2 - mu_2)/L) * a[lam - mu],

    an independent route from the C @ D product.  Hermitian PSD with unit
    diagonal for unit-norm windows.
    """
    L = lattice.L
    n = lattice.cardinality
    _guard_dense(n * n, "Gramian matrix")
    acf = shift_autocorrelation(g, lattice).values
    nt, nf = lattice.grid_shape
    kv = np.repeat(np.arange(nt), nf)
    lv = np.tile(np.arange(nf), nt)
    dk = (kv[:, None] - kv[None, :]) % nt
    dl = (lv[:, None] - lv[None, :]) % nf
    expo = (-(kv[None, :] * lattice.a) * ((dl * lattice.b) % L)) % L
    return acf[dk, dl] * np.exp(2j * np.pi * expo / L)


def multiwindow_frame_operator(windows, lattice: SeparableLattice) -> np.ndarray:
    """Frame operator of a multi-window system: the sum of the per-window
    frame operators."""
    windows = list(windows)
    if not windows:
        raise ShapeMismatchError("multiwindow frame operator needs at least one window")
    out = frame_operator_matrix(windows[0], lattice)
    for g in windows[1:]:
        out = out + frame_operator_matrix(g, lattice)
    return out


def operator_norms(g, lattice: SeparableLattice) -> dict:
    """Measured operator norms of C, D, S, G plus the l1 autocorrelation
    row sum.  ``norm_C**2 = norm_S = norm_G = norm_D**2`` up to roundoff."""
    S = frame_operator_matrix(g, lattice)
    G = gramian_matrix(g, lattice)
    norm_s = float(np.linalg.eigvalsh(S)[-1])
    norm_g = float(np.linalg.eigvalsh(G)[-1])
    acf = shift_autocorrelation(g, lattice)
    return {
        "norm_C": float(np.sqrt(max(norm_s, 0.0))),
        "norm_D": float(np.sqrt(max(norm_g, 0.0))),
        "norm_S": norm_s,
        "norm_G": norm_g,
        "autocorrelation_l1": float(np.sum(np.abs(acf.values))),
    }
