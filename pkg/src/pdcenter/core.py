"""Points, metrics, diagrams and the diagonal projection."""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, NamedTuple, Sequence

import numpy as np

ATOL = 1e-9


class Point(NamedTuple):
    x: float
    y: float


class AugPoint(NamedTuple):
    """A point tagged with its color and whether it stands in for the diagonal."""

    pt: Point
    color: int
    on_diagonal: bool = False


@dataclass(frozen=True)
class Metric:
    """Ground metric on the plane: ``L2``, ``LInf`` or ``Lp`` with ``p >= 1``."""

    kind: str = "L2"
    p: float | None = None

    def __post_init__(self):
        if self.kind not in ("L2", "LInf", "Lp"):
            raise ValueError(f"unknown metric kind {self.kind!r}")
        if self.kind == "Lp":
            if self.p is None or not math.isfinite(self.p) or self.p < 1:
                raise ValueError("Lp metric needs a finite exponent p >= 1")

    @classmethod
    def l2(cls) -> Metric:
        return cls("L2")

    @classmethod
    def linf(cls) -> Metric:
        return cls("LInf")

    @classmethod
    def lp(cls, p: float) -> Metric:
        return cls("Lp", float(p))

    @property
    def _effective(self) -> str:
        if self.kind == "Lp" and self.p == 2:
            return "L2"
        return self.kind

    def pairwise(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        """Distance matrix between the rows of ``a`` (k, 2) and ``b`` (l, 2)."""
        a = np.asarray(a, dtype=float).reshape(-1, 2)
        b = np.asarray(b, dtype=float).reshape(-1, 2)
        dx = np.abs(a[:, None, 0] - b[None, :, 0])
        dy = np.abs(a[:, None, 1] - b[None, :, 1])
        kind = self._effective
        if kind == "L2":
            return np.sqrt(dx * dx + dy * dy)
        if kind == "LInf":
            return np.maximum(dx, dy)
        return (dx**self.p + dy**self.p) ** (1.0 / self.p)

    def __str__(self) -> str:
        return f"Lp({self.p:g})" if self.kind == "Lp" else self.kind


L2 = Metric.l2()
LINF = Metric.linf()


def dist_point(a, b, metric: Metric = L2) -> float:
    """Distance between two planar points under ``metric``."""
    return float(metric.pairwise(np.asarray(a, float), np.asarray(b, float))[0, 0])


def project_to_diagonal(p) -> Point:
    """Foot of the perpendicular from ``p`` onto the line y = x."""
    m = (float(p[0]) + float(p[1])) / 2.0
    return Point(m, m)


class Diagram:
    """A persistence diagram: an ordered multiset of (birth, death) points.

    The diagonal is implicit.  Construction does not validate; call
    :func:`validate_diagram` (or :meth:`checked`) to enforce death >= birth.
    """

    __slots__ = ("points",)

    def __init__(self, points: Iterable[Sequence[float]] | np.ndarray = ()):
        arr = np.array(points, dtype=float)
        if arr.size == 0:
            arr = np.zeros((0, 2))
        if arr.ndim != 2 or arr.shape[1] != 2:
            raise ValueError("diagram points must have shape (k, 2)")
        arr.setflags(write=False)
        self.points = arr

    @classmethod
    def checked(cls, points) -> Diagram:
        d = cls(points)
        problems = validate_diagram(d)
        if problems:
            raise ValueError("invalid diagram: " + "; ".join(problems))
        return d

    def __len__(self) -> int:
        return self.points.shape[0]

    def __iter__(self):
        return (Point(float(x), float(y)) for x, y in self.points)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Diagram):
            return NotImplemented
        return self.points.shape == other.points.shape and bool(np.all(self.points == other.points))

    def __repr__(self) -> str:
        return f"Diagram({[tuple(p) for p in self]})"


def validate_diagram(d) -> list[str]:
    """Return human-readable violations; an empty list means ``d`` is valid."""
    pts = d.points if isinstance(d, Diagram) else np.asarray(d, dtype=float).reshape(-1, 2)
    problems = []
    for i, (x, y) in enumerate(pts):
        if not (math.isfinite(x) and math.isfinite(y)):
            problems.append(f"index {i}: non-finite coordinate")
        elif y < x:
            problems.append(f"index {i}: death < birth")
    return problems


@dataclass(frozen=True, eq=False)
class AugmentedSet:
    """Colored points held as arrays; ``diag[k]`` marks a diagonal stand-in.

    Raw point sets are augmented sets with no diagonal members.
    """

    pts: np.ndarray
    diag: np.ndarray
    color: int = 1

    def __post_init__(self):
        pts = np.array(self.pts, dtype=float).reshape(-1, 2)
        diag = np.array(self.diag, dtype=bool).reshape(-1)
        if diag.shape[0] != pts.shape[0]:
            raise ValueError("diag flags must match the number of points")
        if np.any(pts[diag, 0] != pts[diag, 1]):
            raise ValueError("diagonal members must satisfy y == x")
        pts.setflags(write=False)
        diag.setflags(write=False)
        object.__setattr__(self, "pts", pts)
        object.__setattr__(self, "diag", diag)

    @classmethod
    def raw(cls, points, color: int = 1) -> AugmentedSet:
        pts = np.array(points, dtype=float).reshape(-1, 2)
        return cls(pts, np.zeros(pts.shape[0], bool), color)

    def __len__(self) -> int:
        return self.pts.shape[0]

    @property
    def points(self) -> list[AugPoint]:
        return [
            AugPoint(Point(float(x), float(y)), self.color, bool(g))
            for (x, y), g in zip(self.pts, self.diag)
        ]


def as_point_set(obj, color: int = 1) -> AugmentedSet:
    """Coerce a point sequence, array, Diagram or AugmentedSet."""
    if isinstance(obj, AugmentedSet):
        return obj
    if isinstance(obj, Diagram):
        return AugmentedSet.raw(obj.points, color)
    items = list(obj) if not isinstance(obj, np.ndarray) else obj
    if len(items) and isinstance(items[0], AugPoint):
        return AugmentedSet([a.pt for a in items], [a.on_diagonal for a in items], items[0].color)
    return AugmentedSet.raw(items, color)


def cost_matrix(a: AugmentedSet, b: AugmentedSet, metric: Metric = L2) -> np.ndarray:
    """Pairwise costs; two diagonal members are always at cost zero."""
    c = metric.pairwise(a.pts, b.pts)
    if a.diag.any() and b.diag.any():
        c[np.logical_and.outer(a.diag, b.diag)] = 0.0
    return c
