"""Randomized verification of the width/diameter statements.

Each check runs `trials` independent random instances, counts violations
against its tolerance, and reports the worst signed violation (negative
while the property holds with slack) together with a serialized witness of
the worst case.

Determinism: trials are partitioned into fixed-size blocks and every block
draws from its own generator seeded by (seed, block index).  Results are
reduced in block order, so reports are byte-for-byte reproducible for a
given (seed, trials) regardless of the thread count.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .bodies import ConvexBody, GeometryError, convex_hull, diameter, diameter_of_extreme
from .shapes import quarter_disk, regular_odd_gon, reuleaux_odd_gon
from .sphere import dist_rows, right_hypotenuse, unit
from .width import brute_thickness, farthest_boundary_point, polar_dual, thickness

BLOCK_SIZE = 256

_ODD_NS = (3, 5, 7, 9, 11)
_REULEAUX_NS = (3, 5, 7)


@dataclass(frozen=True)
class VerificationReport:
    property_id: str
    trials: int
    failures: int
    worst_violation: float
    witness: dict
    seed: int
    tolerance: float

    @property
    def passed(self) -> bool:
        return self.failures == 0

    def to_dict(self) -> dict:
        return {
            "property": self.property_id,
            "trials": self.trials,
            "failures": self.failures,
            "worst_violation": self.worst_violation,
            "witness": self.witness,
            "seed": self.seed,
            "tolerance": self.tolerance,
        }


@dataclass
class _BlockResult:
    failures: int
    worst: float
    witness: dict | None


def _block_rng(seed: int, block: int) -> np.random.Generator:
    return np.random.default_rng([seed, block])


def _run_blocks(property_id, trials, seed, tolerance, threads, block_fn) -> VerificationReport:
    n_blocks = (trials + BLOCK_SIZE - 1) // BLOCK_SIZE
    sizes = [min(BLOCK_SIZE, trials - b * BLOCK_SIZE) for b in range(n_blocks)]

    def run(b):
        return block_fn(_block_rng(seed, b), sizes[b])

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(run, range(n_blocks)))
    else:
        results = [run(b) for b in range(n_blocks)]

    failures = sum(r.failures for r in results)
    worst = -np.inf
    witness: dict = {}
    for r in results:
        if r.witness is not None and r.worst > worst:
            worst = r.worst
            witness = r.witness
    if not np.isfinite(worst):
        worst = 0.0
    return VerificationReport(property_id, trials, failures, float(worst),
                              witness, seed, tolerance)


def _sample_sphere(rng, shape):
    v = rng.normal(size=shape + (3,))
    return v / np.sqrt(np.sum(v * v, axis=-1))[..., None]


def _frames_rows(p):
    """Right-handed tangent frames for a stack of unit vectors."""
    helper = np.zeros_like(p)
    helper[np.arange(len(p)), np.argmin(np.abs(p), axis=1)] = 1.0
    e1 = np.cross(helper, p)
    e1 /= np.sqrt(np.sum(e1 * e1, axis=1))[:, None]
    e2 = np.cross(p, e1)
    return e1, e2


def _cap_points(rng, center, radius, count):
    e1, e2 = _frames_rows(center[None, :])
    z = 1.0 - rng.uniform(size=count) * (1.0 - np.cos(radius))
    t = np.sqrt(np.maximum(0.0, 1.0 - z * z))
    phi = rng.uniform(0.0, 2.0 * np.pi, count)
    return (z[:, None] * center[None, :]
            + (t * np.cos(phi))[:, None] * e1 + (t * np.sin(phi))[:, None] * e2)


def random_convex_body(cap_radius: float, n_points: int, seed: int) -> ConvexBody:
    """Hull of uniform samples in a random spherical cap; deterministic per seed."""
    if not (0.0 < cap_radius < np.pi / 2):
        raise GeometryError("cap radius must lie in (0, pi/2)")
    if not (3 <= n_points <= 50):
        raise GeometryError("need between 3 and 50 points")
    rng = np.random.default_rng(seed)
    for _ in range(100):
        center = _sample_sphere(rng, ())
        pts = _cap_points(rng, center, cap_radius, n_points)
        try:
            return convex_hull(pts)
        except GeometryError:
            continue
    raise GeometryError("failed to draw a nondegenerate body in 100 attempts")


# ---------------------------------------------------------------------------
# Lemma: |qv| <= max(|qu|, |qz|) for u, v, z on a bounding semicircle


def check_lemma_max(trials: int, seed: int, tol: float = 1e-10, threads: int = 1) -> VerificationReport:
    """Random lunes of thickness at most pi/2; v on the arc uz of one bounding
    semicircle; q anywhere in the lune (rejection-sampled)."""

    def block(rng, m):
        g = _sample_sphere(rng, (m,))
        theta = rng.uniform(np.pi / 2, np.pi, m)
        # re-seed lunes whose rejection acceptance would fall below ~1%
        thin = (np.pi - theta) < 0.063
        if np.any(thin):
            theta[thin] = rng.uniform(np.pi / 2, np.pi - 0.063, int(thin.sum()))
        e1, e2 = _frames_rows(g)
        phi = rng.uniform(0.0, 2.0 * np.pi, m)
        h = (np.cos(theta)[:, None] * g
             + np.sin(theta)[:, None] * (np.cos(phi)[:, None] * e1 + np.sin(phi)[:, None] * e2))
        cq = h - np.sum(g * h, axis=1)[:, None] * g
        cq /= np.sqrt(np.sum(cq * cq, axis=1))[:, None]
        tq = np.cross(g, cq)

        au, az = rng.uniform(-np.pi / 2, np.pi / 2, (2, m))
        tau = rng.uniform(0.0, 1.0, m)
        av = au + tau * (az - au)
        u = np.cos(au)[:, None] * cq + np.sin(au)[:, None] * tq
        z = np.cos(az)[:, None] * cq + np.sin(az)[:, None] * tq
        v = np.cos(av)[:, None] * cq + np.sin(av)[:, None] * tq

        q = np.zeros((m, 3))
        pending = np.ones(m, dtype=bool)
        for _ in range(10000):
            idx = np.flatnonzero(pending)
            if idx.size == 0:
                break
            cand = _sample_sphere(rng, (idx.size, 8))
            ok = (np.einsum('mkj,mj->mk', cand, g[idx]) >= 0.0) \
                & (np.einsum('mkj,mj->mk', cand, h[idx]) >= 0.0)
            got = ok.any(axis=1)
            first = np.argmax(ok, axis=1)
            rows = idx[got]
            q[rows] = cand[got, first[got]]
            pending[rows] = False
        if np.any(pending):
            raise GeometryError("lune rejection sampler failed to terminate")

        dv = dist_rows(q, v)
        du = dist_rows(q, u)
        dz = dist_rows(q, z)
        viol = dv - np.maximum(du, dz)
        k = int(np.argmax(viol))
        witness = {
            "violation": float(viol[k]),
            "g": g[k].tolist(), "h": h[k].tolist(),
            "u": u[k].tolist(), "v": v[k].tolist(), "z": z[k].tolist(),
            "q": q[k].tolist(),
        }
        return _BlockResult(int(np.sum(viol > tol)), float(viol[k]), witness)

    return _run_blocks("lemma_max_distance_on_semicircle", trials, seed, tol, threads, block)


# ---------------------------------------------------------------------------
# Lemma: diam(extreme set) = diam for bodies of diameter <= pi/2


def check_diam_extreme(trials: int, seed: int, tol: float = 1e-9, threads: int = 1) -> VerificationReport:
    def block(rng, m):
        failures = 0
        worst = -np.inf
        witness = None
        for _ in range(m):
            body = None
            for _ in range(100):
                center = _sample_sphere(rng, ())
                radius = rng.uniform(0.15, np.pi / 4)
                k = int(rng.integers(4, 16))
                pts = _cap_points(rng, center, radius, k)
                try:
                    cand = convex_hull(pts)
                except GeometryError:
                    continue
                d = diameter(cand)
                if d.value <= np.pi / 2 + 1e-12:
                    body = cand
                    break
            if body is None:
                raise GeometryError("could not draw a body with diameter <= pi/2")
            de = diameter_of_extreme(body)
            viol = abs(d.value - de.value)
            if viol > tol:
                failures += 1
            if viol > worst:
                worst = viol
                witness = {
                    "violation": float(viol),
                    "diameter": d.value,
                    "diameter_of_extreme": de.value,
                    "vertices": np.round(body.vertices, 12).tolist(),
                }
        return _BlockResult(failures, worst, witness)

    return _run_blocks("lemma_extreme_points_attain_diameter", trials, seed, tol, threads, block)


# ---------------------------------------------------------------------------
# Theorem: diam(R) <= arccos(cos^2 thickness) for reduced R, with the
# equality case and the wide branch diam = thickness


def _reduced_candidate(rng, kind: int):
    if kind == 0:
        n = int(rng.choice(_ODD_NS))
        target = rng.uniform(0.05, np.pi / 2 - 0.05)
        return "regular_odd_gon", regular_odd_gon(n, target)
    if kind == 1:
        rho = rng.uniform(0.1, np.pi / 2)
        return "quarter_disk", quarter_disk(rho)
    n = int(rng.choice(_REULEAUX_NS))
    w = rng.uniform(0.3, np.pi - 0.3)
    return "reuleaux_odd_gon", reuleaux_odd_gon(n, w)


def check_main_theorem(trials: int, seed: int, threads: int = 1,
                       bound_slack: float = 0.0) -> VerificationReport:
    """Per candidate: excess of diam over arccos(cos^2 thickness) + 1e-9 when
    thickness < pi/2 (absolute mismatch within 1e-9 for quarter disks, which
    attain equality), |diam - thickness| - 1e-6 when thickness >= pi/2.

    `bound_slack` shifts the bound and exists so tests can confirm the check
    actually fails when the theorem is perturbed.
    """

    def block(rng, m):
        failures = 0
        worst = -np.inf
        witness = None
        findings = 0
        for j in range(m):
            kind, body = _reduced_candidate(rng, j % 3)
            delta = thickness(body).value
            diam = diameter(body).value
            if delta < np.pi / 2 - 1e-12:
                bound = right_hypotenuse(delta, delta) + bound_slack
                if kind == "quarter_disk":
                    viol = abs(diam - bound) - 1e-9
                else:
                    viol = diam - bound - 1e-9
                    if abs(diam - bound) <= 1e-7:
                        findings += 1  # near-equality off the quarter-disk case
            else:
                viol = abs(diam - delta) - 1e-6
            if viol > 0.0:
                failures += 1
            if viol > worst:
                worst = viol
                witness = {"kind": kind, "thickness": delta, "diameter": diam,
                           "violation": float(viol)}
        if witness is not None:
            witness["near_equality_findings"] = findings
        return _BlockResult(failures, worst, witness)

    return _run_blocks("theorem_diameter_bound", trials, seed, 0.0, threads, block)


def check_proposition(trials: int, seed: int, tol: float = 1e-7, threads: int = 1) -> VerificationReport:
    """Sign agreement of diam - pi/2 and thickness - pi/2 over the reduced
    families, including thickness exactly pi/2."""

    def block(rng, m):
        failures = 0
        worst = -np.inf
        witness = None
        for j in range(m):
            if j % 4 == 3:
                n = int(rng.choice(_ODD_NS))
                kind, body = "regular_odd_gon_pi2", regular_odd_gon(n, np.pi / 2)
            else:
                kind, body = _reduced_candidate(rng, j % 4)
            delta = thickness(body).value
            diam = diameter(body).value
            s1 = diam - np.pi / 2
            s2 = delta - np.pi / 2
            viol = min(max(s1, s2), max(-s1, -s2))
            if viol > tol:
                failures += 1
            if viol > worst:
                worst = viol
                witness = {"kind": kind, "thickness": delta, "diameter": diam,
                           "violation": float(viol)}
        return _BlockResult(failures, worst, witness)

    return _run_blocks("proposition_pi_half_signs", trials, seed, tol, threads, block)


# ---------------------------------------------------------------------------
# Cited inequalities and the duality oracle


def weaker_diameter_bound(delta: float) -> float:
    """The coarser classical estimate 2 arctan(sqrt(2) tan(delta/2))."""
    return float(2.0 * np.arctan(np.sqrt(2.0) * np.tan(delta / 2.0)))


def check_bounds_and_duality(trials: int, seed: int, threads: int = 1,
                             brute_samples: int = 1500) -> VerificationReport:
    """Random bodies: width_at <= diam + 1e-9 on sampled supporting
    hemispheres, thickness <= diam + 1e-9, and on a thinned subset agreement
    of thickness with the sampling oracle within 1e-3; plus the closed-form
    comparison arccos(cos^2 d) <= 2 arctan(sqrt2 tan(d/2)) on a grid."""

    def block(rng, m):
        failures = 0
        worst = -np.inf
        witness = None
        for j in range(m):
            fam = j % 4
            if fam in (0, 1):
                kind = "hull"
                center = _sample_sphere(rng, ())
                body = None
                for _ in range(100):
                    try:
                        body = convex_hull(_cap_points(rng, center, rng.uniform(0.2, 0.7),
                                                       int(rng.integers(4, 14))))
                        break
                    except GeometryError:
                        center = _sample_sphere(rng, ())
                if body is None:
                    raise GeometryError("could not draw a random body")
            elif fam == 2:
                kind = "quarter_disk"
                body = quarter_disk(rng.uniform(0.1, np.pi / 2))
            else:
                kind = "reuleaux_odd_gon"
                body = reuleaux_odd_gon(int(rng.choice(_REULEAUX_NS)), rng.uniform(0.3, np.pi - 0.3))
            dual = polar_dual(body, validate=False)
            delta = thickness(body, dual=dual).value
            diam = diameter(body).value
            viol = delta - diam - 1e-9
            for u in dual.body.boundary_sample(8):
                _, dfar = farthest_boundary_point(dual.body, u)
                viol = max(viol, (np.pi - dfar) - diam - 1e-9)
            if j % 64 == 0:
                gap = abs(delta - brute_thickness(body, brute_samples,
                                                  seed=int(rng.integers(2 ** 31))))
                viol = max(viol, gap - 1e-3)
            if viol > 0.0:
                failures += 1
            if viol > worst:
                worst = viol
                witness = {"kind": kind, "thickness": delta, "diameter": diam,
                           "violation": float(viol)}
        return _BlockResult(failures, worst, witness)

    report = _run_blocks("width_thickness_diameter_bounds", trials, seed, 0.0, threads, block)

    # closed-form comparison of the sharp and the coarse diameter bound
    grid = np.linspace(0.005, np.pi / 2 - 0.005, 1000)
    sharp = np.array([right_hypotenuse(d, d) for d in grid])
    coarse = np.array([weaker_diameter_bound(d) for d in grid])
    grid_excess = float(np.max(sharp - coarse))
    grid_fail = int(np.sum(sharp - coarse > 1e-12))
    witness = dict(report.witness)
    witness["bound_grid_worst_excess"] = grid_excess
    return VerificationReport(report.property_id, report.trials,
                              report.failures + grid_fail,
                              max(report.worst_violation, grid_excess if grid_fail else report.worst_violation),
                              witness, report.seed, report.tolerance)


SUITES = {
    "lemma1": lambda trials, seed, threads: check_lemma_max(trials, seed, threads=threads),
    "lemma2": lambda trials, seed, threads: check_diam_extreme(trials, seed, threads=threads),
    "theorem": lambda trials, seed, threads: check_main_theorem(trials, seed, threads=threads),
    "proposition": lambda trials, seed, threads: check_proposition(trials, seed, threads=threads),
    "bounds": lambda trials, seed, threads: check_bounds_and_duality(trials, seed, threads=threads),
}


def run_suite(name: str, trials: int, seed: int, threads: int = 1,
              bound_slack: float = 0.0) -> list[tuple[str, VerificationReport]]:
    """Run one named suite (or 'all'); returns (suite, report) pairs in a fixed order."""
    if name == "all":
        return [run_suite(s, trials, seed, threads, bound_slack)[0] for s in SUITES]
    if name not in SUITES:
        raise KeyError(name)
    if name == "theorem" and bound_slack:
        return [(name, check_main_theorem(trials, seed, threads=threads,
                                          bound_slack=bound_slack))]
    return [(name, SUITES[name](trials, seed, threads))]
