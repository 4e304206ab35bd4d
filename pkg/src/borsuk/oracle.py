"""Brute-force oracles, kept independent of the caliper / graph code paths.

Nothing here calls into :mod:`borsuk.diameter`; every quantity comes from
explicit pairwise distances between boundary samples and exact vertices.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .bodies import ConvexBody
from .decision import borsuk_number
from .geometry import Arc, Chord, Point

EPS_REL = 1e-9


@dataclass(frozen=True)
class OracleConfig:
    boundary_samples: int = 2048
    chord_grid: int = 256
    seed: int = 42
    eps_rel: float = EPS_REL

    def __post_init__(self):
        if self.boundary_samples < 16:
            raise ValueError("boundary_samples must be at least 16")
        if self.chord_grid < 8:
            raise ValueError("chord_grid must be at least 8")


def _max_pair(xy: np.ndarray, block: int = 2048) -> tuple[float, int, int]:
    """Largest pairwise distance by exhaustive comparison, in blocks.

    Squared distances come from the Gram expansion |p|^2 + |q|^2 - 2 p.q,
    which is fast but loses a few ulps; every pair within a relative 1e-9 of
    its block maximum is kept and the winner is recomputed directly.
    """
    c = xy - xy.mean(axis=0)
    sq = (c * c).sum(1)
    cands = []
    for s in range(0, len(c), block):
        d2 = c[s : s + block] @ c[s:].T
        d2 *= -2.0
        d2 += sq[None, s:]
        d2 += sq[s : s + block, None]
        rows = d2.max(axis=1)
        thr = float(rows.max()) * (1 - 1e-9)
        keep = np.nonzero(rows >= thr)[0]
        ii, jj = np.nonzero(d2[keep] >= thr)
        ii = keep[ii]
        cands += [(float(d2[i, j]), i + s, j + s) for i, j in zip(ii.tolist(), jj.tolist())]
    top = max(c[0] for c in cands)
    best, bi, bj = -1.0, 0, 0
    for rough, i, j in cands:
        if rough >= top * (1 - 1e-9):
            d = float(((xy[i] - xy[j]) ** 2).sum())
            if d > best:
                best, bi, bj = d, i, j
    return math.sqrt(best), bi, bj


def boundary_samples(body: ConvexBody, n: int, seed: int | None) -> tuple[np.ndarray, np.ndarray]:
    """(t, xy) for equal-arc-length strata with seeded jitter, plus exact vertices."""
    rng = np.random.default_rng(seed) if seed is not None else None
    ts = list(body.sample_params(n, rng))
    ts += [body.junction_param(k) for k in range(len(body.vertex_like()))]
    ts = np.unique(np.asarray(ts) % 1.0)
    return ts, body.points_at(ts)


def brute_diameter(body: ConvexBody, config: OracleConfig | None = None) -> tuple[float, Chord]:
    """Largest distance among boundary samples and exact vertices (a lower bound on D)."""
    config = config or OracleConfig()
    _, xy = boundary_samples(body, config.boundary_samples, config.seed)
    d, i, j = _max_pair(xy)
    return d, Chord(Point(*xy[i]), Point(*xy[j]))


def sampling_tolerance(body: ConvexBody, config: OracleConfig) -> float:
    """Relative slack that covers sampling error on curved boundaries.

    With arc-length spacing h the best sample pair misses a curved diameter
    pair by at most about 4 h^2 / (D r_min); polygons have no such error since
    their vertices are sampled exactly.
    """
    radii = [p.radius for p in body.pieces if isinstance(p, Arc)]
    if not radii:
        return config.eps_rel
    D = body.scale / math.sqrt(2)
    h = body.perimeter / config.boundary_samples
    return max(config.eps_rel, min(1e-2, 8 * h * h / (D * min(radii))))


def _interval_diameters(M: np.ndarray, pos: np.ndarray) -> np.ndarray:
    """R[a, b] = diameter of the samples on the ccw boundary run pos[a] .. pos[b].

    Dynamic programme over run length: a run's diameter is the max of the two
    runs one shorter and the distance between its two end samples.
    """
    N = len(M)
    g = len(pos)
    out = np.zeros((g, g))
    want: dict[int, list[tuple[int, int]]] = {}
    for a in range(g):
        for b in range(g):
            if a != b:
                want.setdefault(int((pos[b] - pos[a]) % N), []).append((a, b))
    idx = np.arange(N)
    cur = np.zeros(N)
    for L in range(1, N):
        cur = np.maximum(np.maximum(cur, np.roll(cur, -1)), M[idx, (idx + L) % N])
        for a, b in want.get(L, ()):
            out[a, b] = cur[pos[a]]
    return out


def brute_alpha2(body: ConvexBody, config: OracleConfig | None = None) -> Chord | None:
    """First grid chord whose two sides both have sampled diameter below D.

    Each side of a chord is the convex hull of a boundary run, so its diameter
    is the largest distance between samples of that run (chord ends included).
    Chords are tried in lexicographic order of their grid indices.
    """
    config = config or OracleConfig()
    ts, _ = boundary_samples(body, config.boundary_samples, config.seed)
    grid_t = np.arange(config.chord_grid) / config.chord_grid
    all_t = np.unique(np.concatenate([ts, grid_t]) % 1.0)
    xy = body.points_at(all_t)
    M = np.sqrt(((xy[:, None, :] - xy[None, :, :]) ** 2).sum(-1))
    D = float(M.max())
    pos = np.searchsorted(all_t, grid_t)
    R = _interval_diameters(M, pos)
    limit = D * (1.0 - sampling_tolerance(body, config))
    ok = (R < limit) & (R.T < limit)
    g = config.chord_grid
    for a in range(g):
        for b in range(a + 1, g):
            if ok[a, b] and xy[pos[a]].tolist() != xy[pos[b]].tolist():
                return Chord(Point(*xy[pos[a]]), Point(*xy[pos[b]]))
    return None


@dataclass(frozen=True)
class ConsistencyReport:
    alpha: int
    oracle_chord: Chord | None
    status: str  # "consistent", "grid_too_coarse" or "hard_failure"

    @property
    def hard_failure(self) -> bool:
        return self.status == "hard_failure"

    def to_json(self) -> dict:
        return {
            "alpha": self.alpha,
            "oracle_chord": self.oracle_chord.to_json() if self.oracle_chord else None,
            "status": self.status,
        }


def cross_check(body: ConvexBody, config: OracleConfig | None = None) -> ConsistencyReport:
    """Compare the decision with the chord search.

    The chord search only semi-decides alpha = 2: a missing chord for an
    alpha-2 body means the grid is too coarse, while a chord found for an
    alpha-3 body is a hard failure.
    """
    config = config or OracleConfig()
    alpha = borsuk_number(body, config.eps_rel).alpha
    chord = brute_alpha2(body, config)
    if alpha == 3 and chord is not None:
        status = "hard_failure"
    elif alpha == 2 and chord is None:
        status = "grid_too_coarse"
    else:
        status = "consistent"
    return ConsistencyReport(alpha, chord, status)
