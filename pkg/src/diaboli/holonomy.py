"""Ground-state holonomy around closed loops in the (x, z) plane.

The Hamiltonian is real symmetric, so transporting the real ground
eigenvector once around a closed loop can only return it to plus or minus
itself.  The sign is computed discretely: solve for the ground vector at
each sample point, flip its sign whenever the overlap with the previous
vector is negative, and read the holonomy off the final overlap with the
starting vector.  A sign of -1 means the loop encloses a point where the
two lowest levels touch, which for these operators happens at the origin
exactly when the instance is soluble, so phase pi doubles as a solubility
oracle.

Segments whose endpoint vectors overlap weakly are bisected recursively
so the transport never jumps across an avoided crossing.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateOnLoop, OpenLoop, RefinementExhausted
from .eigensolver import Spectrum, eigen_arrowhead
from .hamiltonian import ParameterPoint, build
from .instance import ViolationDiagonal

GAP_FLOOR = 1e-9
OVERLAP_FLOOR = 0.5
REFINE_TRIGGER = 0.8
MAX_REFINE_DEPTH = 22
DEFAULT_SAMPLES_PER_EDGE = 64

_DEFAULT_WAYPOINTS = (
    (0.0, 1.0),
    (-1.0, 1.0),
    (-1.0, -1.0),
    (1.0, -1.0),
    (1.0, 1.0),
    (0.0, 1.0),
)


def _segment_hits_origin(a: ParameterPoint, b: ParameterPoint) -> bool:
    cross = a.x * b.z - a.z * b.x
    if cross != 0.0:
        return False
    if min(a.x, b.x) <= 0.0 <= max(a.x, b.x) and min(a.z, b.z) <= 0.0 <= max(a.z, b.z):
        return True
    return False


@dataclass(frozen=True)
class LoopPath:
    """Closed polyline of waypoints with a per-edge sampling density."""

    waypoints: tuple[ParameterPoint, ...]
    samples_per_edge: int = DEFAULT_SAMPLES_PER_EDGE

    def __post_init__(self) -> None:
        pts = tuple(
            p if isinstance(p, ParameterPoint) else ParameterPoint(float(p[0]), float(p[1]))
            for p in self.waypoints
        )
        if len(pts) < 2 or pts[0] != pts[-1]:
            raise OpenLoop("waypoint list must end exactly where it starts")
        if len({(p.x, p.z) for p in pts}) < 3:
            raise OpenLoop("need at least 3 distinct waypoints to enclose area")
        for a, b in zip(pts, pts[1:]):
            if _segment_hits_origin(a, b):
                raise ValueError("loop passes through (0, 0), where the spectrum can touch")
        if self.samples_per_edge < 1:
            raise ValueError("samples_per_edge must be at least 1")
        object.__setattr__(self, "waypoints", pts)

    @classmethod
    def default_rectangle(cls, samples_per_edge: int = DEFAULT_SAMPLES_PER_EDGE) -> "LoopPath":
        return cls(waypoints=_DEFAULT_WAYPOINTS, samples_per_edge=samples_per_edge)

    def sample_points(self) -> list[ParameterPoint]:
        """Uniform samples along each edge, waypoints included.

        An interior sample landing exactly on x = 0 is displaced half a
        grid step along its edge: the border coupling vanishes on that
        axis and a purely diagonal matrix with a repeated minimum would
        look degenerate even though the transported ground sheet crosses
        the axis continuously.  Edges lying on the axis are left alone.
        """

        s = self.samples_per_edge
        points = [self.waypoints[0]]
        for a, b in zip(self.waypoints, self.waypoints[1:]):
            for j in range(1, s + 1):
                t = j / s
                if j < s and a.x != b.x:
                    xj = a.x + (b.x - a.x) * t
                    if xj == 0.0:
                        t = (j + 0.5) / s
                points.append(ParameterPoint(a.x + (b.x - a.x) * t, a.z + (b.z - a.z) * t))
        return points


@dataclass(frozen=True)
class TransportStep:
    step: int
    x: float
    z: float
    e0: float
    e1: float
    overlap: float
    cumulative_sign: int


@dataclass(frozen=True)
class BerryResult:
    """Outcome of one transported loop."""

    phase: float  # 0.0 or pi
    holonomy_sign: int
    min_transport_overlap: float
    min_gap_on_loop: float
    refined_points: int
    log: tuple[TransportStep, ...] | None = None

    @property
    def phase_label(self) -> str:
        return "pi" if self.holonomy_sign < 0 else "0"

    def to_dict(self) -> dict:
        return {
            "phase": self.phase_label,
            "holonomy_sign": self.holonomy_sign,
            "min_transport_overlap": self.min_transport_overlap,
            "min_gap_on_loop": self.min_gap_on_loop,
            "refined_points": self.refined_points,
        }


class _Transport:
    """Sequential sign-aligned transport with recursive segment refinement."""

    def __init__(self, diag: ViolationDiagonal, variant: str, collect_log: bool) -> None:
        self.diag = diag
        self.variant = variant
        self.min_overlap = 1.0
        self.min_gap = math.inf
        self.refined = 0
        self.cum_sign = 1
        self.steps = 0
        self.log: list[TransportStep] | None = [] if collect_log else None
        self.point: ParameterPoint | None = None
        self.vector: np.ndarray | None = None

    def _solve(self, point: ParameterPoint) -> Spectrum:
        spec = eigen_arrowhead(build(self.diag, point, self.variant), want_ground_vector=True)
        if spec.gap01 <= GAP_FLOOR:
            raise DegenerateOnLoop(
                f"gap {spec.gap01:.3e} at (x={point.x:.6g}, z={point.z:.6g}) is below the floor"
            )
        if spec.gap01 < self.min_gap:
            self.min_gap = spec.gap01
        return spec

    def _record(self, point: ParameterPoint, spec: Spectrum, overlap: float) -> None:
        if self.log is not None:
            self.log.append(
                TransportStep(
                    step=self.steps,
                    x=point.x,
                    z=point.z,
                    e0=float(spec.eigenvalues[0]),
                    e1=float(spec.eigenvalues[1]),
                    overlap=overlap,
                    cumulative_sign=self.cum_sign,
                )
            )
        self.steps += 1

    def start(self, point: ParameterPoint) -> None:
        spec = self._solve(point)
        self.point = point
        self.vector = spec.ground_vector
        self._record(point, spec, 1.0)

    def advance(self, target: ParameterPoint, depth: int = 0) -> None:
        spec = self._solve(target)
        vector = spec.ground_vector
        overlap = float(self.vector @ vector)
        if abs(overlap) >= REFINE_TRIGGER or depth >= MAX_REFINE_DEPTH:
            if abs(overlap) < OVERLAP_FLOOR:
                raise RefinementExhausted(
                    f"overlap {overlap:.3f} near (x={target.x:.6g}, z={target.z:.6g}) "
                    f"still below {OVERLAP_FLOOR} at refinement depth {depth}"
                )
            if overlap < 0.0:
                vector = -vector
                self.cum_sign = -self.cum_sign
            if abs(overlap) < self.min_overlap:
                self.min_overlap = abs(overlap)
            self.point = target
            self.vector = vector
            self._record(target, spec, overlap)
            return
        midpoint = ParameterPoint(
            0.5 * (self.point.x + target.x), 0.5 * (self.point.z + target.z)
        )
        self.refined += 1
        self.advance(midpoint, depth + 1)
        self.advance(target, depth + 1)


def berry_phase(
    diag: ViolationDiagonal,
    variant: str = "unscaled",
    path: LoopPath | None = None,
    *,
    collect_log: bool = False,
) -> BerryResult:
    """Transport the ground vector around a closed loop and read off the sign."""

    if path is None:
        path = LoopPath.default_rectangle()
    points = path.sample_points()
    transport = _Transport(diag, variant, collect_log)
    transport.start(points[0])
    initial = transport.vector
    for target in points[1:]:
        transport.advance(target)
    closing = float(transport.vector @ initial)
    sign = 1 if closing > 0.0 else -1
    return BerryResult(
        phase=math.pi if sign < 0 else 0.0,
        holonomy_sign=sign,
        min_transport_overlap=transport.min_overlap,
        min_gap_on_loop=transport.min_gap,
        refined_points=transport.refined,
        log=tuple(transport.log) if transport.log is not None else None,
    )


def solubility(diag: ViolationDiagonal, variant: str = "unscaled") -> bool:
    """True when the default loop picks up phase pi (an enclosed level touching)."""

    return berry_phase(diag, variant).holonomy_sign < 0


def transport_csv(result: BerryResult) -> str:
    """CSV dump of a transport log collected with ``collect_log=True``."""

    if result.log is None:
        raise ValueError("berry_phase was run without collect_log=True")
    lines = ["step,x,z,e0,e1,overlap,cumulative_sign"]
    for row in result.log:
        lines.append(
            f"{row.step},{row.x:.17g},{row.z:.17g},{row.e0:.17g},{row.e1:.17g},"
            f"{row.overlap:.17g},{row.cumulative_sign}"
        )
    return "\n".join(lines) + "\n"
