"""Monte Carlo verification of the closed forms.

Uniform points on the upper half-sphere are mapped by central (gnomonic)
projection onto the tangent hyperplane at the pole, where the face lattice
of the spherical hull equals the face lattice of the flat convex hull of the
projected points.  Faces are enumerated by brute force over point subsets,
which is exact for points in general position and cheap at desk scale
(n <= 25, d <= 8).

Reproducibility contract: trial t of a run with seed s draws from its own
counter-based substream ``Philox(key = (s << 64) + t)``, and all trial
statistics are accumulated as exact integers, so a report depends only on
(seed, parameters) and not on chunking or the number of worker processes.
Wall-clock ``seconds`` is the one field outside that contract.
"""

from __future__ import annotations

import math
import time
import warnings
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from itertools import combinations
from typing import Callable, Sequence

import numpy as np

from . import formulas
from .piring import PiNumber

__all__ = [
    "DegenerateGeometryError",
    "SimulationReport",
    "QuantityEstimate",
    "RNG_NAME",
    "trial_generator",
    "sample_half_sphere",
    "gnomonic_project",
    "hull_f_vector",
    "cone_contains",
    "estimate_f_vector",
    "estimate_sylvester",
    "estimate_solid_angle",
]

POLE_TOL = 1e-9          # points with x0 below this are resampled before projection
SUPPORT_TOL = 1e-9       # strict one-sided support margin on normalized distances
NEAR_TIE_FACTOR = 10.0   # distances within 10x the margin reject the trial
CONE_TOL = 1e-10         # nonnegativity margin for conic coordinates
DEGENERATE_NORMAL_TOL = 1e-12
SINGULAR_DET_TOL = 1e-5  # conic systems with smaller |det| are resampled
MAX_POINTS = 25
MAX_DIM = 8
_MAX_RETRIES = 1000

RNG_NAME = "philox4x64(key=(seed<<64)+trial)"


class DegenerateGeometryError(Exception):
    """Configuration too close to degenerate to classify reliably."""


def trial_generator(seed: int, trial: int) -> np.random.Generator:
    """Independent counter-based substream for one trial."""
    return np.random.Generator(np.random.Philox(key=(int(seed) << 64) + trial))


# -- sampling ------------------------------------------------------------------


def sample_half_sphere(d: int, rng: np.random.Generator) -> np.ndarray:
    """Uniform point on the upper half-sphere in R^(d+1): standard Gaussian,
    normalized, first coordinate flipped to be nonnegative."""
    if d < 1:
        raise ValueError("dimension must be >= 1")
    while True:
        v = rng.standard_normal(d + 1)
        norm = np.linalg.norm(v)
        if norm > 0:
            v /= norm
            if v[0] < 0:
                v = -v
            return v


def gnomonic_project(p: np.ndarray) -> np.ndarray:
    """Central projection (x_0, ..., x_d) -> (x_1, ..., x_d)/x_0 onto the
    tangent hyperplane at the pole; requires x_0 above the pole threshold."""
    p = np.asarray(p, dtype=float)
    if p[0] <= POLE_TOL:
        raise DegenerateGeometryError("pole-proximal point; resample")
    return p[1:] / p[0]


def _sample_projected(n: int, d: int, rng: np.random.Generator) -> np.ndarray:
    """n projected points, resampling zero vectors and pole-proximal points."""
    block = rng.standard_normal((n, d + 1))
    norms = np.linalg.norm(block, axis=1)
    block = np.where(np.signbit(block[:, :1]), -block, block)
    for i in range(n):
        while norms[i] == 0.0 or abs(block[i, 0]) / norms[i] < POLE_TOL:
            row = rng.standard_normal(d + 1)
            norms[i] = np.linalg.norm(row)
            block[i] = row if row[0] >= 0 else -row
    return block[:, 1:] / block[:, :1]


# -- brute-force face enumeration ----------------------------------------------


class _HullEngine:
    """Vectorized facet enumeration for batches of n-point sets in R^d."""

    def __init__(self, n: int, d: int):
        if n > MAX_POINTS or d > MAX_DIM:
            raise ValueError(f"brute-force hull capped at n <= {MAX_POINTS}, d <= {MAX_DIM}")
        if n < d + 1:
            raise ValueError("need at least d+1 points")
        self.n, self.d = n, d
        subsets = np.array(list(combinations(range(n), d)), dtype=np.intp)
        self.subsets = subsets                      # (S, d)
        s_count = len(subsets)
        member = np.zeros((s_count, n), dtype=bool)
        member[np.arange(s_count)[:, None], subsets] = True
        self.member = member
        # bitmasks of all (k+1)-point sub-subsets of each d-subset
        self.face_masks: dict[int, np.ndarray] = {}
        for k in range(d - 1):
            combos = list(combinations(range(d), k + 1))
            masks = np.zeros((s_count, len(combos)), dtype=np.int64)
            for j, combo in enumerate(combos):
                bits = np.zeros(s_count, dtype=np.int64)
                for pos in combo:
                    bits |= np.int64(1) << subsets[:, pos].astype(np.int64)
                masks[:, j] = bits
            self.face_masks[k] = masks

    def _hyperplanes(self, sub_pts: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """Normals, offsets, and degeneracy flags for (..., d, d) point sets."""
        d = self.d
        if d == 1:
            w = np.ones(sub_pts.shape[:-2] + (1,))
            c = sub_pts[..., 0, 0]
            deg = np.zeros(sub_pts.shape[:-2], dtype=bool)
            return w, c, deg
        diffs = sub_pts[..., 1:, :] - sub_pts[..., :1, :]     # (..., d-1, d)
        cols = []
        for j in range(d):
            minor = np.delete(diffs, j, axis=-1)
            cols.append((-1) ** j * np.linalg.det(minor))
        w = np.stack(cols, axis=-1)                           # (..., d)
        c = np.einsum("...c,...c->...", w, sub_pts[..., 0, :])
        hadamard = np.prod(np.linalg.norm(diffs, axis=-1), axis=-1)
        wnorm = np.linalg.norm(w, axis=-1)
        deg = wnorm <= DEGENERATE_NORMAL_TOL * np.maximum(hadamard, 1e-300)
        return w, c, deg

    def facets_batch(self, pts: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        """Facet flags (T, S) and per-trial rejection flags (T,)."""
        sub_pts = pts[:, self.subsets, :]                     # (T, S, d, d)
        w, c, deg = self._hyperplanes(sub_pts)
        wnorm = np.linalg.norm(w, axis=-1)
        wnorm = np.where(wnorm == 0, 1.0, wnorm)
        dist = (np.einsum("tnc,tsc->tsn", pts, w) - c[..., None]) / wnorm[..., None]
        others = ~self.member[None, :, :]
        band = NEAR_TIE_FACTOR * SUPPORT_TOL
        ambiguous = ((np.abs(dist) < band) & others).any(axis=2)
        # clear points on both sides disqualify a subset no matter how the
        # ambiguous ones resolve; only one-sided near-ties force a resample
        mixed = ((dist > band) & others).any(axis=2) & ((dist < -band) & others).any(axis=2)
        pos_ok = ((dist > SUPPORT_TOL) | ~others).all(axis=2)
        neg_ok = ((dist < -SUPPORT_TOL) | ~others).all(axis=2)
        facets = (pos_ok | neg_ok) & ~ambiguous & ~deg
        bad = (ambiguous & ~mixed).any(axis=1) | deg.any(axis=1)
        return facets, bad

    def f_vector_rows(self, facet_rows: np.ndarray) -> tuple[int, ...]:
        """f-vector from the indices of facet subsets (simplicial rule:
        k-faces are the distinct (k+1)-subsets of facet vertex sets)."""
        d = self.d
        if len(facet_rows) == 0:
            raise DegenerateGeometryError("degenerate configuration")
        f = [0] * d
        f[d - 1] = len(facet_rows)
        for k in range(d - 1):
            f[k] = len(np.unique(self.face_masks[k][facet_rows]))
        euler = sum((-1) ** k * fk for k, fk in enumerate(f))
        if euler != 1 - (-1) ** d:
            raise DegenerateGeometryError("face enumeration violated the Euler relation")
        return tuple(f)

    def f_vectors_batch(self, pts: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        """f-vectors (T, d) and rejection flags (T,) for a batch of trials."""
        facets, bad = self.facets_batch(pts)
        out = np.zeros((pts.shape[0], self.d), dtype=np.int64)
        for t in range(pts.shape[0]):
            if bad[t]:
                continue
            try:
                out[t] = self.f_vector_rows(np.nonzero(facets[t])[0])
            except DegenerateGeometryError:
                bad[t] = True
        return out, bad

    def vertex_masks_batch(self, pts: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        """Bitmask of hull vertices per trial, plus rejection flags."""
        facets, bad = self.facets_batch(pts)
        masks = np.zeros(pts.shape[0], dtype=np.int64)
        for t in range(pts.shape[0]):
            if bad[t]:
                continue
            rows = np.nonzero(facets[t])[0]
            if len(rows) == 0:
                bad[t] = True
                continue
            bits = np.int64(0)
            for idx in self.subsets[rows].ravel():
                bits |= np.int64(1) << np.int64(idx)
            masks[t] = bits
        return masks, bad


def hull_f_vector(points: Sequence[Sequence[float]] | np.ndarray,
                  d: int | None = None) -> tuple[int, ...]:
    """Exact f-vector of the convex hull of points in general position.

    Facets are the d-subsets whose affine hull strictly supports all other
    points (margin ``SUPPORT_TOL`` on normalized signed distances); lower
    faces are counted as distinct vertex subsets of facets, which is valid
    for simplicial polytopes.  Raises :class:`DegenerateGeometryError` for
    affinely dependent input or unresolvable near-ties.
    """
    pts = np.asarray(points, dtype=float)
    if pts.ndim != 2:
        raise ValueError("points must be a 2-d array (n, d)")
    if d is None:
        d = pts.shape[1]
    if pts.shape[1] != d:
        raise ValueError("points do not match the requested dimension")
    centered = pts - pts.mean(axis=0)
    if np.linalg.matrix_rank(centered, tol=1e-9) < d:
        raise DegenerateGeometryError("degenerate configuration")
    engine = _HullEngine(pts.shape[0], d)
    facets, bad = engine.facets_batch(pts[None])
    if bad[0]:
        raise DegenerateGeometryError("near-tie in support test")
    return engine.f_vector_rows(np.nonzero(facets[0])[0])


def cone_contains(generators: Sequence[Sequence[float]] | np.ndarray,
                  query: Sequence[float] | np.ndarray) -> bool:
    """Membership of ``query`` in the positive hull of d+1 generators that
    span R^(d+1): solve the square system and test the coefficients."""
    gens = np.asarray(generators, dtype=float)
    q = np.asarray(query, dtype=float)
    dim = gens.shape[1]
    if gens.shape[0] != dim:
        raise ValueError("need exactly d+1 generators in R^(d+1)")
    matrix = gens.T
    if abs(np.linalg.det(matrix)) < SINGULAR_DET_TOL:
        raise DegenerateGeometryError("generators nearly singular; resample")
    lam = np.linalg.solve(matrix, q)
    if np.any(np.abs(lam) < NEAR_TIE_FACTOR * CONE_TOL):
        raise DegenerateGeometryError("ambiguous conic coordinate; resample")
    return bool(np.all(lam >= -CONE_TOL))


# -- estimators ----------------------------------------------------------------


@dataclass(frozen=True)
class QuantityEstimate:
    """One estimated quantity with its exact reference (k is the face
    dimension for f-vector components, None for scalar estimators)."""

    k: int | None
    mean: float
    stderr: float
    exact_float: float
    z: float


@dataclass(frozen=True)
class SimulationReport:
    estimator: str
    n: int
    d: int
    trials: int
    seed: int
    rng: str
    quantities: tuple[QuantityEstimate, ...]
    rejected_trials: int
    seconds: float

    def to_json_dict(self, include_seconds: bool = True) -> dict:
        data = {
            "estimator": self.estimator,
            "n": self.n,
            "d": self.d,
            "trials": self.trials,
            "seed": self.seed,
            "rng": self.rng,
            "quantities": [
                {
                    "k": q.k,
                    "mean": q.mean,
                    "stderr": q.stderr,
                    "exact_float": q.exact_float,
                    "z": q.z,
                }
                for q in self.quantities
            ],
            "rejected_trials": self.rejected_trials,
        }
        if include_seconds:
            data["seconds"] = self.seconds
        return data

    @property
    def max_abs_z(self) -> float:
        return max((abs(q.z) for q in self.quantities), default=0.0)


def _z_score(mean: float, stderr: float, exact: float) -> float:
    if stderr == 0.0:
        return 0.0 if abs(mean - exact) <= 1e-12 else math.inf
    return (mean - exact) / stderr


def _mean_stderr(total: int, total_sq: int, trials: int, scale: float = 1.0
                 ) -> tuple[float, float]:
    """Mean and standard error from exact integer sums of (value/scale)."""
    mean = total / trials * scale
    if trials < 2:
        return mean, 0.0
    var = (total_sq - total * total / trials) / (trials - 1) * scale * scale
    var = max(var, 0.0)
    return mean, math.sqrt(var / trials)


_CHUNK = 2048


def _split_ranges(trials: int, workers: int) -> list[range]:
    step = (trials + workers - 1) // workers
    return [range(lo, min(lo + step, trials)) for lo in range(0, trials, step)]


def _run_chunked(func: Callable[[tuple], tuple], fixed: tuple, trials: int,
                 workers: int) -> list[tuple]:
    """Run ``func(fixed + (trial_range,))`` over the trial range, split across
    worker processes; results are reduced with exact integer sums so the
    split cannot change the outcome."""
    if workers <= 1 or trials < 2 * _CHUNK:
        return [func(fixed + (range(trials),))]
    tasks = [fixed + (r,) for r in _split_ranges(trials, workers)]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(func, tasks))


def _fvector_chunk(args) -> tuple[list[int], list[int], int]:
    n, d, seed, trial_range = args
    engine = _HullEngine(n, d)
    sums = [0] * d
    sums_sq = [0] * d
    rejected = 0
    trial_list = list(trial_range)
    for lo in range(0, len(trial_list), _CHUNK):
        block = trial_list[lo:lo + _CHUNK]
        rngs = [trial_generator(seed, t) for t in block]
        pts = np.stack([_sample_projected(n, d, rng) for rng in rngs])
        fvecs, bad = engine.f_vectors_batch(pts)
        for i, rng in enumerate(rngs):
            if bad[i]:
                fvecs[i], extra = _retry_f_vector(engine, n, d, rng)
                rejected += extra
        totals = fvecs.sum(axis=0)
        totals_sq = (fvecs * fvecs).sum(axis=0)
        for k in range(d):
            sums[k] += int(totals[k])
            sums_sq[k] += int(totals_sq[k])
    return sums, sums_sq, rejected


def _retry_f_vector(engine: _HullEngine, n: int, d: int,
                    rng: np.random.Generator) -> tuple[np.ndarray, int]:
    for attempt in range(1, _MAX_RETRIES + 1):
        pts = _sample_projected(n, d, rng)
        fvecs, bad = engine.f_vectors_batch(pts[None])
        if not bad[0]:
            return fvecs[0], attempt
    raise RuntimeError("persistent degenerate trials; check tolerances")


def estimate_f_vector(n: int, d: int, trials: int, seed: int,
                      workers: int = 1) -> SimulationReport:
    """Empirical expected f-vector of the spherical hull of n uniform points
    on the half-sphere, with z-scores against the exact formula."""
    if trials < 1:
        raise ValueError("need at least one trial")
    if n < d + 1:
        raise ValueError("need n >= d+1")
    start = time.perf_counter()
    parts = _run_chunked(_fvector_chunk, (n, d, seed), trials, workers)
    sums = [0] * d
    sums_sq = [0] * d
    rejected = 0
    for part_sums, part_sq, part_rej in parts:
        rejected += part_rej
        for k in range(d):
            sums[k] += part_sums[k]
            sums_sq[k] += part_sq[k]
    exact = [v.eval_float() for v in formulas.half_sphere_f_vector(n, d)]
    quantities = []
    for k in range(d):
        mean, stderr = _mean_stderr(sums[k], sums_sq[k], trials)
        quantities.append(QuantityEstimate(k, mean, stderr, exact[k],
                                           _z_score(mean, stderr, exact[k])))
    report = SimulationReport("fvector", n, d, trials, seed, RNG_NAME,
                              tuple(quantities), rejected,
                              time.perf_counter() - start)
    _warn_if_rejection_heavy(report)
    return report


def _sample_sphere_block(n: int, d: int, rng: np.random.Generator) -> np.ndarray:
    """n uniform points on the half-sphere (no projection, no pole rule)."""
    block = rng.standard_normal((n, d + 1))
    norms = np.linalg.norm(block, axis=1)
    for i in range(n):
        while norms[i] == 0.0:
            block[i] = rng.standard_normal(d + 1)
            norms[i] = np.linalg.norm(block[i])
    block /= norms[:, None]
    return np.where(np.signbit(block[:, :1]), -block, block)


def _sylvester_chunk(args) -> tuple[int, int]:
    d, seed, trial_range = args
    m = d + 2
    others = np.array([[j for j in range(m) if j != i] for i in range(m)])
    successes = 0
    rejected = 0
    trial_list = list(trial_range)
    for lo in range(0, len(trial_list), _CHUNK):
        block = trial_list[lo:lo + _CHUNK]
        rngs = [trial_generator(seed, t) for t in block]
        pts = np.stack([_sample_sphere_block(m, d, rng) for rng in rngs])
        hit, bad = _sylvester_decide(pts, others)
        for i, rng in enumerate(rngs):
            if bad[i]:
                hit_i, extra = _retry_sylvester(d, others, rng)
                hit[i] = hit_i
                rejected += extra
        successes += int(hit.sum())
    return successes, rejected


def _sylvester_decide(pts: np.ndarray, others: np.ndarray
                      ) -> tuple[np.ndarray, np.ndarray]:
    """For each trial decide whether some point lies in the cone of the rest."""
    # systems[t, i] has the d+1 other points of trial t as columns
    systems = pts[:, others, :].swapaxes(-1, -2)       # (T, m, d+1, d+1)
    dets = np.linalg.det(systems)
    bad = (np.abs(dets) < SINGULAR_DET_TOL).any(axis=1)
    safe = np.where(np.abs(dets)[..., None, None] < SINGULAR_DET_TOL,
                    np.eye(systems.shape[-1]), systems)
    lam = np.linalg.solve(safe, pts[..., None]).squeeze(-1)   # (T, m, d+1)
    bad |= (np.abs(lam) < NEAR_TIE_FACTOR * CONE_TOL).any(axis=(1, 2))
    inside = (lam >= -CONE_TOL).all(axis=2)
    return inside.any(axis=1), bad


def _retry_sylvester(d: int, others: np.ndarray, rng: np.random.Generator
                     ) -> tuple[bool, int]:
    for attempt in range(1, _MAX_RETRIES + 1):
        pts = _sample_sphere_block(d + 2, d, rng)
        hit, bad = _sylvester_decide(pts[None], others)
        if not bad[0]:
            return bool(hit[0]), attempt
    raise RuntimeError("persistent degenerate trials; check tolerances")


def estimate_sylvester(d: int, trials: int, seed: int,
                       workers: int = 1) -> SimulationReport:
    """Frequency that one of d+2 uniform half-sphere points lies in the
    positive hull of the others (the hull is then a simplex)."""
    if trials < 1:
        raise ValueError("need at least one trial")
    start = time.perf_counter()
    parts = _run_chunked(_sylvester_chunk, (d, seed), trials, workers)
    successes = sum(p[0] for p in parts)
    rejected = sum(p[1] for p in parts)
    exact = formulas.sylvester_probability(d).eval_float()
    mean, stderr = _mean_stderr(successes, successes, trials)
    quantity = QuantityEstimate(None, mean, stderr, exact,
                                _z_score(mean, stderr, exact))
    report = SimulationReport("sylvester", d + 2, d, trials, seed, RNG_NAME,
                              (quantity,), rejected, time.perf_counter() - start)
    _warn_if_rejection_heavy(report)
    return report


def _angle_chunk(args) -> tuple[int, int]:
    n, d, seed, trial_range = args
    engine = _HullEngine(n + 1, d)
    fresh_bit = np.int64(1) << np.int64(n)
    member_count = 0
    rejected = 0
    trial_list = list(trial_range)
    for lo in range(0, len(trial_list), _CHUNK):
        block = trial_list[lo:lo + _CHUNK]
        rngs = [trial_generator(seed, t) for t in block]
        pts = np.stack([_sample_projected(n + 1, d, rng) for rng in rngs])
        masks, bad = engine.vertex_masks_batch(pts)
        for i, rng in enumerate(rngs):
            if bad[i]:
                masks[i], extra = _retry_vertex_mask(engine, n + 1, d, rng)
                rejected += extra
        member_count += int((masks & fresh_bit == 0).sum())
    return member_count, rejected


def _retry_vertex_mask(engine: _HullEngine, n_pts: int, d: int,
                       rng: np.random.Generator) -> tuple[np.int64, int]:
    for attempt in range(1, _MAX_RETRIES + 1):
        pts = _sample_projected(n_pts, d, rng)
        masks, bad = engine.vertex_masks_batch(pts[None])
        if not bad[0]:
            return masks[0], attempt
    raise RuntimeError("persistent degenerate trials; check tolerances")


def estimate_solid_angle(n: int, d: int, trials: int, seed: int,
                         workers: int = 1) -> SimulationReport:
    """Expected normalized solid angle of the cone of n points, estimated as
    half the probability that a fresh (n+1)-st point fails to be a hull
    vertex (the Efron-type identity)."""
    if trials < 1:
        raise ValueError("need at least one trial")
    if n < d + 1:
        raise ValueError("need n >= d+1")
    start = time.perf_counter()
    parts = _run_chunked(_angle_chunk, (n, d, seed), trials, workers)
    count = sum(p[0] for p in parts)
    rejected = sum(p[1] for p in parts)
    exact = formulas.expected_solid_angle(n, d).eval_float()
    # per-trial value is indicator/2; integer sums of the indicator suffice
    mean, stderr = _mean_stderr(count, count, trials, scale=0.5)
    quantity = QuantityEstimate(None, mean, stderr, exact,
                                _z_score(mean, stderr, exact))
    report = SimulationReport("angle", n, d, trials, seed, RNG_NAME,
                              (quantity,), rejected, time.perf_counter() - start)
    _warn_if_rejection_heavy(report)
    return report


def _warn_if_rejection_heavy(report: SimulationReport) -> None:
    if report.trials >= 10000 and report.rejected_trials / report.trials >= 1e-3:
        warnings.warn(
            f"{report.estimator}: {report.rejected_trials}/{report.trials} trials "
            "rejected as degenerate; tolerances may need review",
            RuntimeWarning,
        )
