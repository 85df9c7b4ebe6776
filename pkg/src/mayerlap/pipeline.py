"""End-to-end runs: build or load a complex, sweep channels, cross-check.

A channel is one (dimension n, stage q) pair for a fixed prime N.  Every
channel yields a Betti curve over the critical values; with eigenvalues
enabled it also yields spectral curves whose zero counts are cross-checked
against the exact Betti numbers, and in diagram mode the persistence
diagram, cross-checked against the Betti curve.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace

from . import __version__
from .chain import (
    betti_curve,
    count_variations,
    get_boundary,
    is_prime,
    persistence_diagram,
    persistent_betti,
)
from .io import parse_complex, parse_points, parse_xyz
from .simplicial import FilteredComplex, PointCloud, vr_filtration
from .spectral import hermitian_eigenvalues, persistent_laplacian, spectral_summary

LAMBDA_CURVE_TOL = 1e-6


class CrossCheckError(RuntimeError):
    """Spectral zero counts disagreed with exact Betti numbers."""


@dataclass(frozen=True)
class RunConfig:
    N: int = 3
    stages: tuple[int, ...] | None = None  # None = all of 1 .. N-1
    dims: tuple[int, ...] = (0, 1)
    max_dim: int = 3
    max_radius: float | None = None
    eigen: bool = False
    diagrams: bool = False
    persistence_step: int = 0
    tol_factor: float = 1e-8
    wasserstein_r: float = 2.0
    threads: int | None = None

    def __post_init__(self):
        if not is_prime(self.N):
            raise ValueError(f"N must be prime, got {self.N}")
        stages = self.stages
        if stages is not None:
            stages = tuple(sorted(set(stages)))
            if not stages or any(q < 1 or q > self.N - 1 for q in stages):
                raise ValueError(f"stages must be a non-empty subset of 1..{self.N - 1}")
            object.__setattr__(self, "stages", stages)
        dims = tuple(sorted(set(self.dims)))
        if not dims or any(d < 0 for d in dims):
            raise ValueError("dims must be non-negative")
        if max(dims) > self.max_dim:
            raise ValueError(
                f"requested dimension {max(dims)} exceeds max_dim {self.max_dim}"
            )
        object.__setattr__(self, "dims", dims)
        if self.persistence_step < 0:
            raise ValueError("persistence step must be >= 0")

    def resolved_stages(self) -> tuple[int, ...]:
        return self.stages if self.stages is not None else tuple(range(1, self.N))

    def resolved_threads(self) -> int:
        if self.threads is not None:
            return max(1, self.threads)
        env = os.environ.get("MAYER_THREADS", "")
        try:
            return max(1, int(env)) if env else 1
        except ValueError:
            return 1


@dataclass
class ChannelReport:
    n: int
    q: int
    N: int
    betti: list[int]
    zero_count: list[int] | None = None
    lambda1: list[float] | None = None
    lambda_max: list[float] | None = None
    mean_positive: list[float] | None = None
    diagram: object | None = None
    failures: list[str] = field(default_factory=list)


@dataclass
class PipelineResult:
    critical_values: list[float]
    channels: list[ChannelReport]

    @property
    def failures(self) -> list[str]:
        return [msg for ch in self.channels for msg in ch.failures]


def load_input(path: str, config: RunConfig) -> FilteredComplex:
    """Load a point cloud (.xyz/.csv, then Vietoris-Rips) or explicit complex."""
    lower = path.lower()
    if lower.endswith(".xyz"):
        cloud = parse_xyz(path)
    elif lower.endswith(".csv"):
        cloud = parse_points(path)
    else:
        return parse_complex(path)
    return vr_filtration(cloud, max_dim=config.max_dim, max_radius=config.max_radius)


def complex_from_cloud(cloud: PointCloud, config: RunConfig) -> FilteredComplex:
    return vr_filtration(cloud, max_dim=config.max_dim, max_radius=config.max_radius)


def _channel_report(K: FilteredComplex, n: int, q: int, config: RunConfig) -> ChannelReport:
    N = config.N
    curve = betti_curve(K, n, q, N)
    report = ChannelReport(n=n, q=q, N=N, betti=[b for _, b in curve])
    crit = K.critical_values
    m = len(crit)
    if config.eigen:
        zero, lam1, lam_max, mean_pos = [], [], [], []
        for i, a in enumerate(crit):
            j = min(i + config.persistence_step, m - 1)
            b = crit[j]
            expected = (
                report.betti[i]
                if j == i
                else persistent_betti(K, n, q, N, a, b)
            )
            H = persistent_laplacian(K, a, b, n, q, N)
            eigs = hermitian_eigenvalues(H)
            summary = spectral_summary(
                eigs,
                expected_zero=expected,
                channel=(n, q, N, a, b),
                tol_factor=config.tol_factor,
            )
            if not summary.crosscheck_ok:
                report.failures.append(
                    f"channel (n={n}, q={q}, N={N}) at r={a!r}: zero count "
                    f"{summary.zero_count} != exact Betti {expected}"
                )
            zero.append(summary.zero_count)
            lam1.append(summary.lambda1 if summary.lambda1 is not None else 0.0)
            lam_max.append(summary.lambda_max)
            mean_pos.append(
                summary.mean_positive if summary.mean_positive is not None else 0.0
            )
        report.zero_count = zero
        report.lambda1 = lam1
        report.lambda_max = lam_max
        report.mean_positive = mean_pos
    if config.diagrams:
        diagram = persistence_diagram(K, n, q, N)
        report.diagram = diagram
        for i, r in enumerate(crit):
            alive = diagram.total_alive(r)
            if alive != report.betti[i]:
                report.failures.append(
                    f"channel (n={n}, q={q}, N={N}) at r={r!r}: diagram mass "
                    f"{alive} != Betti {report.betti[i]}"
                )
    return report


def _worker(args):
    K, n, q, config = args
    return _channel_report(K, n, q, config)


def run_pipeline(K: FilteredComplex, config: RunConfig) -> PipelineResult:
    """Compute every requested channel; deterministic output order."""
    channels = [(n, q) for n in config.dims for q in config.resolved_stages()]
    threads = config.resolved_threads()
    if threads > 1 and len(channels) > 1:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            reports = list(pool.map(_worker, [(K, n, q, config) for n, q in channels]))
    else:
        get_boundary(K, config.N)  # warm the shared engine
        reports = [_channel_report(K, n, q, config) for n, q in channels]
    return PipelineResult(critical_values=list(K.critical_values), channels=reports)


def run_distance(
    K1: FilteredComplex, K2: FilteredComplex, config: RunConfig
) -> dict:
    """Family Wasserstein and bottleneck distances per dimension."""
    from .metrics import DiagramFamily, family_bottleneck, family_wasserstein

    N = config.N
    stages = tuple(range(1, N))
    out = []
    for n in config.dims:
        F = DiagramFamily(N, n, tuple(persistence_diagram(K1, n, q, N) for q in stages))
        G = DiagramFamily(N, n, tuple(persistence_diagram(K2, n, q, N) for q in stages))
        w = family_wasserstein(F, G, r=config.wasserstein_r)
        b = family_bottleneck(F, G)
        out.append(
            {
                "n": n,
                "wasserstein": None if math.isinf(w) else w,
                "bottleneck": None if math.isinf(b) else b,
            }
        )
    return {
        "meta": {
            "N": N,
            "dims": list(config.dims),
            "stages": list(stages),
            "wasserstein_r": config.wasserstein_r,
            "tool_version": __version__,
        },
        "dimensions": out,
    }


def variation_summary(result: PipelineResult) -> dict:
    """Per-channel variation counts of the Betti and spectral-gap curves."""
    rows = []
    for ch in result.channels:
        row = {
            "n": ch.n,
            "q": ch.q,
            "betti_variations": count_variations(ch.betti),
        }
        if ch.lambda1 is not None:
            row["lambda1_variations"] = count_variations(ch.lambda1, tol=LAMBDA_CURVE_TOL)
        rows.append(row)
    return {"channels": rows}
