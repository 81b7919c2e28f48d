"""Floating-point checks for three equal circles through a common point.

Circle ``i`` has center ``O + r (cos t_i, sin t_i)`` and passes through ``O``.
Pairwise second intersections, their circumcircle, the tangent/side
collinearity and a few numeric probes on convex curves live here.  Points in
the collinearity test are homogeneous 3-vectors so parallel lines produce
ideal points rather than failures.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field

import numpy as np
from scipy import integrate, optimize

from .errors import Degenerate, NotConvex

ANGLE_TOL = 1e-9
JOHNSON_TOL = 1e-9
COLLINEAR_TOL = 1e-6
PAIRS = ((0, 1), (0, 2), (1, 2))


@dataclass(frozen=True)
class GeoConfig:
    r: float
    thetas: tuple[float, float, float]
    origin: tuple[float, float] = (0.0, 0.0)

    def __post_init__(self):
        thetas = tuple(float(t) for t in self.thetas)
        if len(thetas) != 3 or not all(math.isfinite(t) for t in thetas):
            raise ValueError("exactly three finite angles are required")
        r = float(self.r)
        if not (math.isfinite(r) and r > 0):
            raise ValueError("radius must be positive")
        object.__setattr__(self, "r", r)
        object.__setattr__(self, "thetas", thetas)
        object.__setattr__(self, "origin", tuple(float(x) for x in self.origin))

    @classmethod
    def from_degrees(cls, r, degrees, origin=(0.0, 0.0)) -> "GeoConfig":
        return cls(r, tuple(math.radians(d) for d in degrees), origin)

    def centers(self) -> list[np.ndarray]:
        o = np.array(self.origin)
        return [o + self.r * np.array([math.cos(t), math.sin(t)]) for t in self.thetas]

    def rotated(self, angle: float) -> "GeoConfig":
        """Rotate the whole picture about the coordinate origin."""
        c, s = math.cos(angle), math.sin(angle)
        ox, oy = self.origin
        return GeoConfig(self.r, tuple(t + angle for t in self.thetas), (c * ox - s * oy, s * ox + c * oy))

    def translated(self, dx: float, dy: float) -> "GeoConfig":
        return GeoConfig(self.r, self.thetas, (self.origin[0] + dx, self.origin[1] + dy))

    def to_dict(self) -> dict:
        return {"r": self.r, "thetas": list(self.thetas), "origin": list(self.origin)}


def _degenerate(msg: str, pair) -> Degenerate:
    err = Degenerate(msg)
    err.pair = list(pair)
    return err


def _angle_gap(a: float, b: float) -> float:
    d = (a - b) % (2 * math.pi)
    return min(d, 2 * math.pi - d)


def check_nondegenerate(cfg: GeoConfig, tol: float = ANGLE_TOL) -> None:
    """Raise :class:`Degenerate` when two circles coincide."""
    for i, j in PAIRS:
        if _angle_gap(cfg.thetas[i], cfg.thetas[j]) <= tol:
            raise _degenerate(f"circles {i} and {j} coincide", (i, j))


def tangent_pairs(cfg: GeoConfig, tol: float = ANGLE_TOL) -> list[list[int]]:
    """Pairs of circles touching at ``O``; their second intersection is ``O`` itself."""
    return [[i, j] for i, j in PAIRS if abs(_angle_gap(cfg.thetas[i], cfg.thetas[j]) - math.pi) <= tol]


def _reflect(p: np.ndarray, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Mirror image of ``p`` in the line through ``a`` and ``b``."""
    d = b - a
    foot = a + d * (np.dot(p - a, d) / np.dot(d, d))
    return 2 * foot - p


def second_intersections(cfg: GeoConfig) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Second intersection of circle pairs (0,1), (0,2), (1,2), in that order.

    Two circles meet at ``O`` and at the mirror image of ``O`` in their line of
    centers.  Circles touching at ``O`` give ``O`` back (a double point).
    """
    check_nondegenerate(cfg)
    o = np.array(cfg.origin)
    c = cfg.centers()
    return tuple(_reflect(o, c[i], c[j]) for i, j in PAIRS)


def circumcircle(a, b, c) -> tuple[np.ndarray, float]:
    ax, ay = a
    bx, by = b
    cx, cy = c
    d = 2 * (ax * (by - cy) + bx * (cy - ay) + cx * (ay - by))
    if d == 0:
        raise Degenerate("points are collinear")
    a2, b2, c2 = ax * ax + ay * ay, bx * bx + by * by, cx * cx + cy * cy
    ux = (a2 * (by - cy) + b2 * (cy - ay) + c2 * (ay - by)) / d
    uy = (a2 * (cx - bx) + b2 * (ax - cx) + c2 * (bx - ax)) / d
    center = np.array([ux, uy])
    radius = float(np.mean([np.linalg.norm(p - center) for p in (np.asarray(a), np.asarray(b), np.asarray(c))]))
    return center, radius


@dataclass
class GeoReport:
    config: GeoConfig
    points: tuple
    circumcenter: np.ndarray
    circumradius: float
    johnson_residual: float
    tangent_points: tuple = ()
    collinearity_residual: float | None = None
    extra: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        out = {
            "config": self.config.to_dict(),
            "points": {k: [float(x) for x in p] for k, p in zip("ABC", self.points)},
            "circumcenter": [float(x) for x in self.circumcenter],
            "circumradius": self.circumradius,
            "johnson_residual": self.johnson_residual,
        }
        if self.tangent_points:
            out["tangent_points"] = {k: [float(x) for x in p] for k, p in zip("PQR", self.tangent_points)}
            out["collinearity_residual"] = self.collinearity_residual
        out.update(self.extra)
        return out


def verify_johnson(cfg: GeoConfig) -> GeoReport:
    pts = second_intersections(cfg)
    center, radius = circumcircle(*pts)
    extra = {"tangent_pairs": tangent_pairs(cfg)}
    return GeoReport(cfg, pts, center, radius, abs(radius - cfg.r), extra=extra)


def _hom(p) -> np.ndarray:
    return np.array([p[0], p[1], 1.0])


def _unit(v: np.ndarray) -> np.ndarray:
    n = np.linalg.norm(v)
    if n == 0:
        raise Degenerate("lines coincide")
    return v / n


def tangent_points(cfg: GeoConfig) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Where the tangent at ``O`` to circle ``k`` meets the chord of circle ``k``.

    The chord joins the two second intersections lying on circle ``k``.  For
    circle 2 that is the side through the points of pairs (0,2) and (1,2), and
    likewise for the others.  Results are unit homogeneous vectors.
    """
    pts = second_intersections(cfg)
    on_circle = {0: (pts[0], pts[1]), 1: (pts[0], pts[2]), 2: (pts[1], pts[2])}
    o = np.array(cfg.origin)
    out = []
    for k, c in enumerate(cfg.centers()):
        n = c - o
        tangent = _unit(np.array([n[0], n[1], -np.dot(n, o)]))
        side = _unit(np.cross(_hom(on_circle[k][0]), _hom(on_circle[k][1])))
        out.append(_unit(np.cross(tangent, side)))
    return tuple(out)


def tangent_collinearity(cfg: GeoConfig) -> GeoReport:
    """Johnson data plus the determinant of the three unit homogeneous points."""
    report = verify_johnson(cfg)
    P, Q, R = tangent_points(cfg)
    report.tangent_points = (P, Q, R)
    report.collinearity_residual = float(abs(np.linalg.det(np.array([P, Q, R]))))
    return report


def lens_samples(cfg: GeoConfig, samples: int, seed: int = 0) -> np.ndarray:
    """Points of the three pairwise lenses plus their corners.

    Each lens gets ``samples`` uniform points by rejection from its bounding
    box, which is aligned with the line of centers.  A lens of two circles
    touching at ``O`` is the single point ``O``.
    """
    r = cfg.r
    centers = cfg.centers()
    rng = np.random.default_rng(seed)
    o = np.array(cfg.origin)
    got = [o[None, :], *(p[None, :] for p in second_intersections(cfg))]
    for i, j in PAIRS:
        ci, cj = centers[i], centers[j]
        delta = float(np.linalg.norm(cj - ci))
        half_w = max(r - delta / 2, 0.0)
        half_h = math.sqrt(max(r * r - delta * delta / 4, 0.0))
        u = (cj - ci) / delta
        v = np.array([-u[1], u[0]])
        mid = (ci + cj) / 2
        need = samples if half_w > 0 else 0
        while need > 0:
            m = max(2 * need, 256)
            batch = mid + np.outer(rng.uniform(-half_w, half_w, m), u) + np.outer(rng.uniform(-half_h, half_h, m), v)
            inside = (np.linalg.norm(batch - ci, axis=1) <= r) & (np.linalg.norm(batch - cj, axis=1) <= r)
            take = batch[inside][:need]
            got.append(take)
            need -= len(take)
    return np.vstack(got)


def disk_cover_check(cfg: GeoConfig, samples: int = 10_000, seed: int = 0) -> dict:
    """Is the union of pairwise lenses inside the radius ``r`` disk around the circumcenter?

    ``worst_margin`` is the least ``r - distance`` over the sampled points;
    negative means a point escaped.  The same margin is also reported for the
    three original disks as alternative covering candidates, since the
    circumcenter disk misses ``O`` once the centers crowd into a half-plane.
    """
    if samples < 0:
        raise ValueError("samples must be non-negative")
    if samples == 0:
        return {"contained": True, "worst_margin": math.inf, "worst_point": None, "samples": 0}
    report = verify_johnson(cfg)
    r = cfg.r
    pts = lens_samples(cfg, samples, seed)
    tol = -1e-12 * r
    candidates = {"circumcenter": report.circumcenter, **{f"disk{k}": c for k, c in enumerate(cfg.centers())}}
    margins = {}
    for name, center in candidates.items():
        m = r - np.linalg.norm(pts - center, axis=1)
        margins[name] = (float(m.min()), int(np.argmin(m)))
    worst, k = margins["circumcenter"]
    return {
        "contained": worst >= tol,
        "worst_margin": worst,
        "worst_point": [float(x) for x in pts[k]],
        "samples": samples,
        "candidate_margins": {name: m for name, (m, _) in margins.items()},
        "any_candidate_contains": any(m >= tol for m, _ in margins.values()),
    }


def _ellipse_probe(a: float, b: float) -> dict:
    if not (a >= b > 0):
        raise ValueError("ellipse needs a >= b > 0")
    L, _ = integrate.quad(lambda t: math.hypot(a * math.sin(t), b * math.cos(t)), 0, math.pi / 2, epsabs=0, epsrel=1e-13, limit=200)
    return {"curve": "ellipse", "L": 4 * L, "D": 2 * a, "d": 2 * b, "area": math.pi * a * b}


def _polygon_geometry(vertices):
    pts = np.array(vertices, dtype=float)
    if pts.ndim != 2 or pts.shape[1] != 2 or len(pts) < 3:
        raise NotConvex("a polygon needs at least three planar vertices")
    nxt = np.roll(pts, -1, axis=0)
    edges = nxt - pts
    cross = edges[:, 0] * np.roll(edges, -1, axis=0)[:, 1] - edges[:, 1] * np.roll(edges, -1, axis=0)[:, 0]
    scale = float(np.max(np.abs(pts))) or 1.0
    eps = 1e-12 * scale * scale
    if (cross < -eps).any() and (cross > eps).any():
        raise NotConvex("polygon turns both ways")
    turning = np.arctan2(cross, (edges * np.roll(edges, -1, axis=0)).sum(axis=1)).sum()
    if abs(abs(turning) - 2 * math.pi) > 1e-6:
        raise NotConvex("polygon is not simple")
    if turning < 0:
        pts = pts[::-1]
        nxt = np.roll(pts, -1, axis=0)
        edges = nxt - pts
    w = pts[:, 0] * nxt[:, 1] - nxt[:, 0] * pts[:, 1]
    area = w.sum() / 2
    if area <= eps:
        raise NotConvex("polygon has no interior")
    centroid = ((pts + nxt) * w[:, None]).sum(axis=0) / (6 * area)
    return pts, edges, area, centroid


def _chord_function(pts, edges, g):
    normals = np.stack([edges[:, 1], -edges[:, 0]], axis=1)
    normals /= np.linalg.norm(normals, axis=1)[:, None]
    offsets = ((pts - g) * normals).sum(axis=1)

    def ray(u):
        dots = normals @ u
        mask = dots > 1e-15
        return float(np.min(offsets[mask] / dots[mask]))

    def chord(phi):
        u = np.array([math.cos(phi), math.sin(phi)])
        return ray(u) + ray(-u)

    return chord


def _polygon_probe(vertices) -> dict:
    pts, edges, area, g = _polygon_geometry(vertices)
    chord = _chord_function(pts, edges, g)
    # chord length is convex between consecutive vertex directions
    breaks = sorted({math.atan2(*(v - g)[::-1]) % math.pi for v in pts})
    breaks.append(breaks[0] + math.pi)
    D = max(chord(b) for b in breaks)
    d = min(chord(b) for b in breaks)
    for lo, hi in zip(breaks, breaks[1:]):
        if hi - lo > 1e-12:
            res = optimize.minimize_scalar(chord, bounds=(lo, hi), method="bounded", options={"xatol": 1e-12})
            d = min(d, float(res.fun))
    L = float(np.linalg.norm(edges, axis=1).sum())
    return {"curve": "polygon", "L": L, "D": D, "d": d, "area": float(area), "centroid": [float(x) for x in g]}


def conjecture_probe(curve: dict) -> dict:
    """Perimeter/chord ratios and the quadratic ``x^2 - (L/2) x + A``.

    ``curve`` is ``{"ellipse": [a, b]}`` or ``{"polygon": [[x, y], ...]}``.
    ``D`` and ``d`` are the longest and shortest chords through the centroid.
    The result only reports data; ``ok`` is whether ``L/D <= pi <= L/d``.
    """
    if "ellipse" in curve:
        a, b = curve["ellipse"]
        out = _ellipse_probe(float(a), float(b))
    elif "polygon" in curve:
        out = _polygon_probe(curve["polygon"])
    else:
        raise ValueError("curve must be an ellipse or a polygon")
    L, D, d, A = out["L"], out["D"], out["d"], out["area"]
    out["ratio_low"] = L / D
    out["ratio_high"] = L / d
    rel = 1e-12
    out["ok"] = out["ratio_low"] <= math.pi * (1 + rel) and math.pi <= out["ratio_high"] * (1 + rel)
    disc = L * L / 4 - 4 * A
    roots = []
    if disc >= 0:
        s = math.sqrt(disc)
        roots = [(L / 2 - s) / 2, (L / 2 + s) / 2]
    out["quadratic"] = {"discriminant": disc, "roots": roots}
    return out


def random_config(rng: random.Random, min_gap: float = 0.05) -> GeoConfig:
    """Angles at least ``min_gap`` apart and away from antipodal pairs."""
    while True:
        thetas = tuple(rng.uniform(0, 2 * math.pi) for _ in range(3))
        gaps = [_angle_gap(thetas[i], thetas[j]) for i, j in PAIRS]
        if all(g > min_gap and abs(g - math.pi) > min_gap for g in gaps):
            r = math.exp(rng.uniform(math.log(0.1), math.log(10)))
            origin = (rng.uniform(-5, 5), rng.uniform(-5, 5))
            return GeoConfig(r, thetas, origin)


def fuzz_configs(trials: int, seed: int = 0) -> list[GeoConfig]:
    """One independent generator per index so any single config is reproducible."""
    return [random_config(random.Random(f"{seed}:{i}")) for i in range(trials)]


def fuzz(trials: int = 1000, seed: int = 0) -> dict:
    worst_j = worst_c = 0.0
    for cfg in fuzz_configs(trials, seed):
        rep = tangent_collinearity(cfg)
        worst_j = max(worst_j, rep.johnson_residual / cfg.r)
        worst_c = max(worst_c, rep.collinearity_residual)
    return {
        "trials": trials,
        "seed": seed,
        "max_relative_johnson_residual": worst_j,
        "max_collinearity_residual": worst_c,
    }
