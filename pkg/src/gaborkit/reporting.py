"""Configuration, analysis runner, lattice sweeps, and report emission.

Reports are JSON documents with a top-level ``schema_version``; floats are
serialized at full round-trip precision, complex numbers as ``[re, im]``
pairs, and non-finite values as the strings ``"inf"``/``"-inf"``/``"nan"``.
Window files are plain text, one ``re<TAB>im`` pair per line in 17
significant digits, which round-trips binary doubles exactly.

Identical configurations produce byte-identical reports apart from the
``timing`` block (wall-clock seconds); all randomized checks derive from
the configured seed, which is echoed in the report.
"""

from __future__ import annotations

import csv
import json
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field, is_dataclass

import numpy as np

from ._version import __version__
from .diagnostics import (
    check_all_conditions,
    duality_check,
    frame_bounds,
    reconstruction_residual,
    wexler_raz_dual,
    wexler_raz_residual,
)
from .errors import ConfigError, LatticeError
from .gallery import (
    WindowRecipe,
    gaussian_alternating_kernel_probe,
    make_window,
    partition_of_unity_kernel,
    random_window,
)
from .lattice import FiniteModel, SeparableLattice
from .operators import Window, frame_operator_matrix, operator_norms, synthesis_map
from .tolerances import DEFAULT_TOL_SCALE, margin_cutoff
from .twisted import index_commutative, janssen_coefficients, kernel_basis, represent

SCHEMA_VERSION = "1"

TASKS = ("bounds", "conditions", "duality", "janssen", "dual_window", "kernel", "index", "gallery")

DEFAULT_SEED = 20200313

#: Square lengths used by the fixed counterexample gallery task.
GALLERY_LENGTHS = (16, 36, 64, 100)


def save_window(path, samples) -> None:
    """Write a window as ``re<TAB>im`` lines (17 significant digits)."""
    samples = np.asarray(samples, dtype=complex)
    with open(path, "w") as handle:
        for value in samples:
            handle.write(f"{value.real:.17g}\t{value.imag:.17g}\n")


def load_window(path) -> np.ndarray:
    """Read a window saved by :func:`save_window` (re/im columns; ``#``
    comments and blank lines are skipped)."""
    values = []
    try:
        handle = open(path)
    except OSError as err:
        raise ConfigError("window", f"cannot read window file {path!r}: {err}")
    with handle:
        for line in handle:
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            parts = line.split()
            if len(parts) != 2:
                raise ConfigError("window", f"bad line in window file {path!r}: {line!r}")
            values.append(complex(float(parts[0]), float(parts[1])))
    return np.array(values, dtype=complex)


@dataclass
class AnalysisConfig:
    """One analysis run: signal length, lattice steps, window, tasks."""

    length: int
    a: int
    b: int
    window: str = "gaussian"
    tasks: tuple = ("bounds", "conditions", "duality")
    tol_scale: float = DEFAULT_TOL_SCALE
    seed: int = DEFAULT_SEED
    out: str = ""
    spectra: str = ""

    def validate(self) -> None:
        if not isinstance(self.length, int) or self.length < 2:
            raise ConfigError("length", f"must be an integer >= 2, got {self.length!r}")
        for name, step in (("a", self.a), ("b", self.b)):
            if not isinstance(step, int) or step < 1:
                raise ConfigError(name, f"must be a positive integer, got {step!r}")
            if self.length % step != 0:
                raise ConfigError(name, f"{step} does not divide length {self.length}")
        if not self.tasks:
            raise ConfigError("tasks", "at least one task is required")
        for task in self.tasks:
            if task not in TASKS:
                raise ConfigError("tasks", f"unknown task {task!r}; choose from {TASKS}")
        if self.tol_scale <= 0:
            raise ConfigError("tol_scale", f"must be positive, got {self.tol_scale!r}")
        if not self.window:
            raise ConfigError("window", "a window recipe or file path is required")

    def lattice(self) -> SeparableLattice:
        return SeparableLattice(self.length, self.a, self.b)

    def build_window(self) -> Window:
        model = FiniteModel(self.length)
        text = self.window
        if text.strip().lower() == "random":
            return random_window(model, np.random.default_rng(self.seed), "random")
        try:
            recipe = WindowRecipe.parse(text)
        except LatticeError:
            recipe = WindowRecipe("file", path=text)
        return make_window(recipe, model)


@dataclass
class DiagnosticsReport:
    """The full record of one analysis run."""

    schema_version: str
    tool_version: str
    config: dict
    seed: int
    results: dict
    timing: dict = field(default_factory=dict)

    def to_json(self) -> str:
        return json.dumps(jsonable(self), indent=2, sort_keys=True, allow_nan=False)


def jsonable(obj):
    """Recursively convert report objects to JSON-encodable structures."""
    if is_dataclass(obj) and not isinstance(obj, type):
        return jsonable(asdict(obj))
    if isinstance(obj, dict):
        return {str(key): jsonable(value) for key, value in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(item) for item in obj]
    if isinstance(obj, np.ndarray):
        return [jsonable(item) for item in obj.tolist()]
    if isinstance(obj, (complex, np.complexfloating)):
        return [jsonable(float(obj.real)), jsonable(float(obj.imag))]
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        value = float(obj)
        if np.isnan(value):
            return "nan"
        if np.isinf(value):
            return "inf" if value > 0 else "-inf"
        return value
    return obj


def _task_bounds(g, lattice, config, rng):
    return frame_bounds(g, lattice, config.tol_scale)


def _task_conditions(g, lattice, config, rng):
    return check_all_conditions(g, lattice, config.tol_scale)


def _task_duality(g, lattice, config, rng):
    return duality_check(g, lattice, config.tol_scale)


def _task_janssen(g, lattice, config, rng):
    coeffs = janssen_coefficients(g, lattice)
    S = frame_operator_matrix(g, lattice)
    residual = np.linalg.norm(S - represent(coeffs)) / np.linalg.norm(S)
    return {
        "relative_residual": float(residual),
        "coefficient_l1": coeffs.norm1(),
        "adjoint_lattice": {"a": coeffs.lattice.a, "b": coeffs.lattice.b},
    }


def _task_dual_window(g, lattice, config, rng):
    dual = wexler_raz_dual(g, lattice, config.tol_scale)
    signals = [
        rng.standard_normal(lattice.L) + 1j * rng.standard_normal(lattice.L) for _ in range(8)
    ]
    return {
        "biorthogonality_residual": wexler_raz_residual(dual, g, lattice),
        "biorthogonality_constant": lattice.covolume,
        "reconstruction_residual": reconstruction_residual(g, dual, lattice, signals),
        "dual_norm": dual.original_norm,
        "samples": dual.samples,
    }


def _task_kernel(g, lattice, config, rng):
    adjoint = lattice.adjoint()
    basis = kernel_basis(g, adjoint, config.tol_scale)
    witnesses = []
    for seq in basis:
        out = synthesis_map(g, adjoint, seq.values)
        witnesses.append(float(np.linalg.norm(out) / seq.norm2()))
    return {
        "dimension": len(basis),
        "witness_residuals": witnesses,
        "adjoint_lattice": {"a": adjoint.a, "b": adjoint.b},
    }


def _task_index(g, lattice, config, rng):
    adjoint = lattice.adjoint()
    entry = {
        "commutative": adjoint.has_commuting_shifts,
        "kernel_dimension_surrogate": len(kernel_basis(g, adjoint, config.tol_scale)),
    }
    if adjoint.has_commuting_shifts:
        entry["index"] = index_commutative(g, adjoint, config.tol_scale)
    else:
        # Non-commutative adjoint: the exact module index is not computed;
        # the kernel dimension above is an upper-bound surrogate.
        entry["index"] = None
    return entry


def _task_gallery(g, lattice, config, rng):
    ladder = []
    for length in GALLERY_LENGTHS:
        gauss = gaussian_alternating_kernel_probe(length)
        model = FiniteModel(length)
        delta = make_window(WindowRecipe("delta"), model)
        control = gaussian_alternating_kernel_probe(length, window=delta)
        ladder.append(
            {"length": length, "gaussian_ratio": gauss.ratio, "delta_ratio": control.ratio}
        )
    pou_model = FiniteModel(16)
    pou_window = make_window(WindowRecipe("bspline", order=1, widths=(4,)), pou_model)
    pou_lattice, pou_sequence = partition_of_unity_kernel(pou_window, pou_period=4, phases=2)
    out = synthesis_map(pou_window, pou_lattice.adjoint(), pou_sequence.values)
    verdict = check_all_conditions(pou_window, pou_lattice, config.tol_scale)
    return {
        "alternating_ladder": ladder,
        "partition_of_unity": {
            "length": 16,
            "lattice": {"a": pou_lattice.a, "b": pou_lattice.b},
            "kernel_residual": float(np.linalg.norm(out) / pou_sequence.norm2()),
            "all_conditions_false": verdict.all_false,
        },
    }


_TASK_RUNNERS = {
    "bounds": _task_bounds,
    "conditions": _task_conditions,
    "duality": _task_duality,
    "janssen": _task_janssen,
    "dual_window": _task_dual_window,
    "kernel": _task_kernel,
    "index": _task_index,
    "gallery": _task_gallery,
}


def run(config: AnalysisConfig) -> DiagnosticsReport:
    """Execute the configured tasks and assemble a report.

    Writes the report to ``config.out`` and spectra tables to
    ``config.spectra`` when those paths are set.
    """
    config.validate()
    lattice = config.lattice()
    g = config.build_window()
    rng = np.random.default_rng(config.seed)

    first_order_cut = margin_cutoff(
        (lattice.L, lattice.cardinality, lattice.adjoint().cardinality), config.tol_scale
    )
    results = {
        "window_label": g.label,
        "lattice": {
            "L": lattice.L,
            "a": lattice.a,
            "b": lattice.b,
            "cardinality": lattice.cardinality,
            "redundancy": lattice.redundancy,
            "covolume": lattice.covolume,
            "adjoint_a": lattice.adjoint().a,
            "adjoint_b": lattice.adjoint().b,
        },
        "tolerances": {
            "tol_scale": config.tol_scale,
            "margin_cutoff_first_order": first_order_cut,
            "margin_cutoff_second_order": first_order_cut**2,
        },
    }
    timing = {}
    for task in config.tasks:
        start = time.perf_counter()
        results[task] = _TASK_RUNNERS[task](g, lattice, config, rng)
        timing[task] = time.perf_counter() - start
    if "bounds" in config.tasks:
        results["operator_norms"] = operator_norms(g, lattice)

    report = DiagnosticsReport(
        schema_version=SCHEMA_VERSION,
        tool_version=__version__,
        config={
            "length": config.length,
            "a": config.a,
            "b": config.b,
            "window": config.window,
            "tasks": list(config.tasks),
            "tol_scale": config.tol_scale,
            "seed": config.seed,
        },
        seed=config.seed,
        results=results,
        timing=timing,
    )
    if config.out:
        with open(config.out, "w") as handle:
            handle.write(report.to_json())
            handle.write("\n")
    if config.spectra:
        _write_spectra(config.spectra, g, lattice, config)
    return report


def _write_spectra(path, g, lattice, config):
    record = duality_check(g, lattice, config.tol_scale)
    with open(path, "w", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(["kind", "index", "eigenvalue"])
        for i, value in enumerate(record.frame_spectrum):
            writer.writerow(["frame_operator", i, f"{value:.17g}"])
        for i, value in enumerate(record.adjoint_gramian_spectrum):
            writer.writerow(["adjoint_gramian", i, f"{value:.17g}"])


def divisor_pairs(length: int):
    """All (a, b) divisor pairs of ``length``."""
    divisors = [d for d in range(1, length + 1) if length % d == 0]
    return [(a, b) for a in divisors for b in divisors]


def sweep(base: AnalysisConfig, pairs=None, jobs: int = 1):
    """Run bounds + duality over a grid of lattice steps.

    Returns one row per (a, b) with redundancy, frame bounds, the frame and
    duality verdicts, and the marginal flag.  Rows are computed over
    immutable configs (optionally in a thread pool) and returned in grid
    order; writes CSV to ``base.out`` when set.
    """
    base.validate()
    if pairs is None:
        pairs = divisor_pairs(base.length)
    for a, b in pairs:
        if base.length % a != 0:
            raise ConfigError("a", f"{a} does not divide length {base.length}")
        if base.length % b != 0:
            raise ConfigError("b", f"{b} does not divide length {base.length}")

    def one(pair):
        a, b = pair
        lattice = SeparableLattice(base.length, a, b)
        g = AnalysisConfig(
            length=base.length, a=a, b=b, window=base.window,
            tol_scale=base.tol_scale, seed=base.seed,
        ).build_window()
        bounds = frame_bounds(g, lattice, base.tol_scale)
        verdict = check_all_conditions(g, lattice, base.tol_scale)
        record = duality_check(g, lattice, base.tol_scale)
        return {
            "a": a,
            "b": b,
            "redundancy": lattice.redundancy,
            "frame_lower": bounds.frame_lower,
            "frame_upper": bounds.frame_upper,
            "frame": verdict.frame,
            "adjoint_riesz": record.adjoint_riesz,
            "duality_agree": record.agree,
            "consistent": verdict.consistent,
            "marginal": verdict.marginal,
        }

    if jobs > 1 and len(pairs) > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            rows = list(pool.map(one, pairs))
    else:
        rows = [one(pair) for pair in pairs]

    if base.out:
        fieldnames = [
            "a", "b", "redundancy", "frame_lower", "frame_upper",
            "frame", "adjoint_riesz", "duality_agree", "consistent", "marginal",
        ]
        with open(base.out, "w", newline="") as handle:
            writer = csv.DictWriter(handle, fieldnames=fieldnames)
            writer.writeheader()
            for row in rows:
                writer.writerow(
                    {
                        key: (f"{value:.17g}" if isinstance(value, float) else value)
                        for key, value in row.items()
                    }
                )
    return rows


def consistency_alarm(report: DiagnosticsReport) -> bool:
    """True when a conditions task reported a non-marginal inconsistency
    (the exit-code-2 alarm)."""
    verdict = report.results.get("conditions")
    if verdict is None:
        return False
    return (not verdict.consistent) and (not verdict.marginal)


__all__ = [
    "AnalysisConfig",
    "DiagnosticsReport",
    "SCHEMA_VERSION",
    "TASKS",
    "consistency_alarm",
    "divisor_pairs",
    "jsonable",
    "load_window",
    "run",
    "save_window",
    "sweep",
]
