"""Formula-free convexity oracle on boundary image curves.

The membership scans all flow through f''/f' and Sf; this module never looks
at those. It samples f on circles |z| = r, walks the image polygon, and
checks that the omitted set could be convex by analyzing discrete turning:

  * complement-inside (interior pole): the curve must wind once negatively
    around the bounded omitted set. If the total turning has the wrong sign
    the topology itself is wrong and the defect is the whole wrong-sign
    turning mass; otherwise the defect is the largest single wrong-sign turn
    (discretization near flat arcs produces many vanishing ones, so a sum
    would punish exactly the extremal maps).
  * complement-outside, open curve (pole at z=1, an arc excluded): the
    traversal sign is inferred from the total and the defect is the largest
    minority-sign turn.
  * complement-outside, closed curve: a closed bounded image cannot omit a
    convex set at all, so the defect is |total turning| (~2pi), an
    unconditional rejection of pole-free specs.

Turning angles use atan2 of cross and dot products of successive edges, per
contiguous run of included angles; arcs near poles and samples that fail to
evaluate are excluded and reported, never bridged.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from . import margins as _margins
from .catalog import FamilySpec
from .errors import EmptyScanError, NonFiniteJetError, SampleExclusionError
from .margins import GridConfig

COMPLEMENT_INSIDE = "complement-inside"
COMPLEMENT_OUTSIDE = "complement-outside"
ORACLE_OK = "concave-consistent"
ORACLE_BAD = "not-concave-consistent"

DEFECT_TOL = 5e-2
_DEFAULT_RADII = (0.99, 0.999, 0.9999)
_DEFAULT_ANGLES = 4096


@dataclass(frozen=True)
class CurveSample:
    """Image of |z| = r under f, minus excluded arcs.

    included holds the surviving angle indices (theta_j = 2 pi j / n, strictly
    increasing), points the image values aligned with them. excluded_arcs are
    half-open angle intervals; an arc that straddles theta = 0 has its end
    beyond 2 pi. convexity_defect is computed at construction against the
    orientation the spec's pole placement dictates.
    """

    r: float
    n: int
    included: tuple[int, ...]
    points: tuple[complex, ...]
    excluded_arcs: tuple[tuple[float, float], ...]
    orientation: str
    convexity_defect: float

    @property
    def thetas(self) -> tuple[float, ...]:
        step = 2.0 * math.pi / self.n
        return tuple(step * j for j in self.included)


def natural_orientation(spec: FamilySpec) -> str:
    if any(abs(q) < 1.0 for q in spec.poles):
        return COMPLEMENT_INSIDE
    return COMPLEMENT_OUTSIDE


def boundary_curve(spec: FamilySpec, r: float, n: int,
                   epsilon: float = 0.05) -> CurveSample:
    """Sample f on |z| = r at n uniform angles, excluding pole neighborhoods."""
    r = float(r)
    if not (0.0 < r < 1.0):
        raise ValueError(f"r must lie in (0, 1), got {r!r}")
    if n < 64:
        raise ValueError("need at least 64 angles")
    step = 2.0 * math.pi / n
    obstacles = list(spec.poles)
    if spec.boundary_pole is not None:
        obstacles.append(spec.boundary_pole)

    included: list[int] = []
    points: list[complex] = []
    for j in range(n):
        z = r * cmath.exp(1j * (step * j))
        if any(abs(z - q) < epsilon for q in obstacles):
            continue
        try:
            w = spec.eval_jet(z).v0
        except (SampleExclusionError, NonFiniteJetError):
            continue
        included.append(j)
        points.append(w)
    if len(included) < 3:
        raise EmptyScanError("all arcs excluded; nothing to analyze")

    arcs = _excluded_arcs(included, n, step)
    orientation = natural_orientation(spec)
    curve = CurveSample(r, n, tuple(included), tuple(points), arcs,
                        orientation, 0.0)
    object.__setattr__(curve, "convexity_defect",
                       convexity_defect(curve, orientation))
    return curve


def _excluded_arcs(included, n, step):
    gone = sorted(set(range(n)) - set(included))
    if not gone:
        return ()
    runs = []
    run = [gone[0]]
    for j in gone[1:]:
        if j == run[-1] + 1:
            run.append(j)
        else:
            runs.append(run)
            run = [j]
    runs.append(run)
    # a run touching both ends is one arc straddling theta = 0
    if len(runs) > 1 and runs[0][0] == 0 and runs[-1][-1] == n - 1:
        first = runs.pop(0)
        runs[-1] = runs[-1] + [j + n for j in first]
    return tuple((step * run[0], step * (run[-1] + 1)) for run in runs)


def _runs_of_points(curve: CurveSample) -> tuple[list[list[complex]], bool]:
    """Contiguous included runs in cyclic order; closed iff nothing excluded."""
    idx, pts = curve.included, curve.points
    if len(idx) == curve.n:
        return [list(pts)], True
    runs, run = [], [pts[0]]
    for k in range(1, len(idx)):
        if idx[k] == idx[k - 1] + 1:
            run.append(pts[k])
        else:
            runs.append(run)
            run = [pts[k]]
    runs.append(run)
    # stitch the wrap-around: the tail run continues into the head run
    if len(runs) > 1 and idx[0] == 0 and idx[-1] == curve.n - 1:
        runs[-1].extend(runs.pop(0))
    return runs, False


def _collapse(points: list[complex]) -> list[complex]:
    scale = max(1.0, max(abs(w) for w in points))
    tol = 1e-15 * scale
    out = [points[0]]
    for w in points[1:]:
        if abs(w - out[-1]) > tol:
            out.append(w)
    return out


def _turns(points: list[complex], closed: bool) -> list[float]:
    pts = _collapse(points)
    if closed and len(pts) > 1 and abs(pts[0] - pts[-1]) <= 1e-15 * max(
            1.0, abs(pts[0])):
        pts.pop()
    m = len(pts)
    out = []
    ks = range(m) if closed else range(1, m - 1)
    for k in ks:
        a, b, c = pts[k - 1], pts[k], pts[(k + 1) % m]
        e1, e2 = b - a, c - b
        cross = e1.real * e2.imag - e1.imag * e2.real
        dot = e1.real * e2.real + e1.imag * e2.imag
        out.append(math.atan2(cross, dot))
    return out


def convexity_defect(curve: CurveSample, orientation: str) -> float:
    """Wrong-sign turning measure of the image curve; ~0 certifies that the
    omitted region is discretely convex under the declared orientation."""
    if orientation not in (COMPLEMENT_INSIDE, COMPLEMENT_OUTSIDE):
        raise ValueError(f"unknown orientation {orientation!r}")
    runs, closed = _runs_of_points(curve)
    turns: list[float] = []
    for run in runs:
        if len(run) >= 3:
            turns.extend(_turns(run, closed))
    if not turns:
        raise EmptyScanError("fewer than 3 usable points after exclusions")
    total = math.fsum(turns)

    if orientation == COMPLEMENT_INSIDE:
        expected = -1.0
    elif closed:
        # bounded closed image: its complement cannot be convex
        return abs(total)
    else:
        expected = 1.0 if total >= 0.0 else -1.0
    if expected * total < -math.pi:
        # winding has the wrong sign outright: count all wrong-sign mass
        return math.fsum(abs(t) for t in turns if t * expected < 0.0)
    return max((abs(t) for t in turns if t * expected < 0.0), default=0.0)


def oracle_concave(spec: FamilySpec, pole: str | None = None,
                   r_list: tuple[float, ...] = _DEFAULT_RADII, *,
                   n: int = _DEFAULT_ANGLES, defect_tol: float = DEFECT_TOL,
                   epsilon: float = 0.05) -> str:
    """Verdict from image-curve convexity at several radii.

    pole: "interior" or "boundary"; None derives it from the spec (interior
    wins when the spec has a pole inside the disk). Consistency needs every
    defect below defect_tol and no growth beyond a 0.2*defect_tol slack as
    r -> 1.
    """
    if pole is None:
        orientation = natural_orientation(spec)
    elif pole == "interior":
        orientation = COMPLEMENT_INSIDE
    elif pole == "boundary":
        orientation = COMPLEMENT_OUTSIDE
    else:
        raise ValueError(f"pole must be 'interior' or 'boundary', got {pole!r}")
    defects = [convexity_defect(boundary_curve(spec, r, n, epsilon), orientation)
               for r in r_list]
    ok = all(d < defect_tol for d in defects)
    slack = 0.2 * defect_tol
    ok = ok and all(b <= a + slack for a, b in zip(defects, defects[1:]))
    return ORACLE_OK if ok else ORACLE_BAD


def equality_scan(spec: FamilySpec, theorem: str,
                  grid: GridConfig | None = None, eq_tol: float = 1e-6, *,
                  alpha: float | None = None, p: float | None = None,
                  a: float | None = None) -> list[complex]:
    """Grid points where the margin vanishes to eq_tol: the empirical
    equality locus of the inequality."""
    report = _margins.scan(spec, theorem, grid, alpha=alpha, p=p, a=a,
                           keep_samples=True)
    assert report.samples is not None
    return [z for z, m in report.samples if abs(m) < eq_tol]


def real_axis_crossings(curve: CurveSample, atol: float = 1e-9) -> tuple[float, ...]:
    """Real-axis crossings of the curve: on-axis samples plus sign-change
    interpolations, per contiguous run. Sorted ascending."""
    runs, closed = _runs_of_points(curve)
    out: list[float] = []
    for run in runs:
        pts = run + [run[0]] if closed else run
        for k, w in enumerate(pts[:-1] if closed else pts):
            if abs(w.imag) <= atol:
                out.append(w.real)
        for wa, wb in zip(pts, pts[1:]):
            if abs(wa.imag) > atol and abs(wb.imag) > atol \
                    and (wa.imag > 0) != (wb.imag > 0):
                t = wa.imag / (wa.imag - wb.imag)
                out.append(wa.real + t * (wb.real - wa.real))
    return tuple(sorted(out))
