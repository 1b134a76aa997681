"""Cyclic time-frequency plane: shifts, separable lattices and their adjoints.

Signals are complex vectors indexed by ``Z_L``.  A phase point ``z = (x, xi)``
acts through the unitary time-frequency shift

    (shift f)(t) = exp(2*pi*i*xi*t/L) * f((t - x) mod L),

i.e. modulation applied after translation.  Two shifts compose up to a
unimodular phase,

    shift(lam) o shift(mu) = exp(-2*pi*i*lam_1*mu_2/L) * shift(lam + mu),

and all phase exponents here are reduced mod L in integer arithmetic so that
group-law identities hold to the last ulp.

A separable lattice ``a*Z_L x b*Z_L`` requires ``a | L`` and ``b | L`` (this
guarantees a subgroup and makes the adjoint formula exact).  Its adjoint is
``(L/b)*Z_L x (L/a)*Z_L``: exactly the phase points whose shifts commute with
every lattice shift.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import LatticeError, ShapeMismatchError

#: A phase point: (time shift, frequency shift), residues mod L.
PhasePoint = tuple[int, int]


@dataclass(frozen=True)
class FiniteModel:
    """The signal space C^L over the cyclic group Z_L.

    The inner product is ``<f, h> = sum_t f(t) * conj(h(t))``, conjugate
    linear in the second argument.
    """

    L: int

    def __post_init__(self):
        if not isinstance(self.L, (int, np.integer)) or self.L < 2:
            raise LatticeError(f"signal length must be an integer >= 2, got {self.L!r}")

    def reduce(self, z) -> PhasePoint:
        """Reduce a phase point mod L."""
        x, xi = z
        return (int(x) % self.L, int(xi) % self.L)

    def inner(self, f, h) -> complex:
        """<f, h>, conjugate linear in the second argument."""
        return complex(np.vdot(np.asarray(h), np.asarray(f)))


def _check_length(L, f):
    f = np.asarray(f)
    if f.shape != (L,):
        raise ShapeMismatchError(f"expected a length-{L} vector, got shape {f.shape}")
    return f


def tf_shift(model: FiniteModel, z, f):
    """Apply the time-frequency shift at ``z = (x, xi)`` to a signal.

    Returns ``g`` with ``g(t) = exp(2*pi*i*xi*t/L) * f((t - x) mod L)``.
    The map is unitary for every ``z``.
    """
    L = model.L
    f = _check_length(L, f)
    x, xi = model.reduce(z)
    t = np.arange(L)
    phase = np.exp(2j * np.pi * ((xi * t) % L) / L)
    return phase * np.roll(f, x)


def shift_matrix(model: FiniteModel, z):
    """The L x L unitary matrix of the shift at ``z``."""
    L = model.L
    x, xi = model.reduce(z)
    t = np.arange(L)
    out = np.zeros((L, L), dtype=complex)
    out[t, (t - x) % L] = np.exp(2j * np.pi * ((xi * t) % L) / L)
    return out


def compose_shifts(model: FiniteModel, lam, mu):
    """Compose two shifts: returns ``(phase, lam + mu)`` such that
    ``shift(lam) o shift(mu) = phase * shift(lam + mu)`` exactly.

    The phase is ``exp(-2*pi*i*lam_1*mu_2/L)``, computed from the integer
    exponent ``(-lam_1*mu_2) mod L`` so that cocycle identities
    (associativity of total phases) are exact.
    """
    L = model.L
    l1, l2 = model.reduce(lam)
    m1, m2 = model.reduce(mu)
    expo = (-(l1 * m2)) % L
    phase = complex(np.exp(2j * np.pi * expo / L))
    return phase, ((l1 + m1) % L, (l2 + m2) % L)


def shifts_commute(model: FiniteModel, lam, mu) -> bool:
    """Whether shift(lam) and shift(mu) commute (phase-exactly)."""
    l1, l2 = model.reduce(lam)
    m1, m2 = model.reduce(mu)
    return (l1 * m2 - m1 * l2) % model.L == 0


@dataclass(frozen=True)
class SeparableLattice:
    """The subgroup ``a*Z_L x b*Z_L`` of the time-frequency plane Z_L x Z_L.

    ``a`` and ``b`` must divide ``L``.  The grid has ``L/a`` time rows and
    ``L/b`` frequency columns; grid index ``(k, l)`` is the phase point
    ``(k*a mod L, l*b mod L)``.  Flat indices follow C order, ``k*(L/b) + l``.
    """

    L: int
    a: int
    b: int

    def __post_init__(self):
        if self.L < 2:
            raise LatticeError(f"signal length must be >= 2, got {self.L}")
        for name, step in (("a", self.a), ("b", self.b)):
            if not isinstance(step, (int, np.integer)) or step < 1:
                raise LatticeError(f"lattice step {name} must be a positive integer, got {step!r}")
            if self.L % step != 0:
                raise LatticeError(f"lattice step {name}={step} does not divide L={self.L}")

    @property
    def n_time(self) -> int:
        return self.L // self.a

    @property
    def n_freq(self) -> int:
        return self.L // self.b

    @property
    def grid_shape(self) -> tuple[int, int]:
        return (self.n_time, self.n_freq)

    @property
    def cardinality(self) -> int:
        """Number of lattice points, L**2/(a*b)."""
        return self.n_time * self.n_freq

    @property
    def covolume(self) -> float:
        """s = a*b/L, the covolume in the normalization that pins the
        shift-series identity for the frame operator."""
        return self.a * self.b / self.L

    @property
    def redundancy(self) -> float:
        """L/(a*b); frames require redundancy >= 1."""
        return self.L / (self.a * self.b)

    def point(self, k, l) -> PhasePoint:
        return ((k * self.a) % self.L, (l * self.b) % self.L)

    def points(self) -> np.ndarray:
        """All lattice points in flat (C-order) grid order, shape (n, 2)."""
        k = np.repeat(np.arange(self.n_time), self.n_freq)
        l = np.tile(np.arange(self.n_freq), self.n_time)
        return np.stack([(k * self.a) % self.L, (l * self.b) % self.L], axis=1)

    def contains(self, z) -> bool:
        x, xi = int(z[0]) % self.L, int(z[1]) % self.L
        return x % self.a == 0 and xi % self.b == 0

    def adjoint(self) -> "SeparableLattice":
        """The lattice of phase points commuting with every point here:
        ``(L/b)*Z_L x (L/a)*Z_L``."""
        return SeparableLattice(self.L, self.L // self.b, self.L // self.a)

    @property
    def has_commuting_shifts(self) -> bool:
        """True when all shifts of this lattice mutually commute, which for
        separable lattices happens exactly when L divides a*b."""
        return (self.a * self.b) % self.L == 0

    @property
    def model(self) -> FiniteModel:
        return FiniteModel(self.L)


def adjoint_lattice(lattice: SeparableLattice) -> SeparableLattice:
    """Adjoint of a separable lattice (see :meth:`SeparableLattice.adjoint`)."""
    return lattice.adjoint()
