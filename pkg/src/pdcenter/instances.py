"""Deterministic fixture generators.

Random fixtures use SplitMix64 so every platform reproduces them bit for bit:

    state  <- (state + 0x9E3779B97F4A7C15) mod 2**64
    z      <- state
    z      <- (z xor (z >> 30)) * 0xBF58476D1CE4E5B9 mod 2**64
    z      <- (z xor (z >> 27)) * 0x94D049BB133111EB mod 2**64
    output <- z xor (z >> 31)

The seed is the initial state.  A uniform double is ``(output >> 11) * 2**-53``.
A random diagram point draws ``x`` then ``y`` as ``lo + (hi - lo) * u`` and
swaps them when ``y < x``; diagrams are filled one after another.

The gadget fixtures are small local pieces of the grid constructions used in
hardness reductions for the three-color problem: path segments with the two
other colors at the 1/3 and 2/3 positions of each unit edge, and a grid point
holding one point of every color.
"""
from __future__ import annotations

import math
from dataclasses import asdict, dataclass

import numpy as np

from .core import Diagram

_MASK = (1 << 64) - 1
THIRD = 1.0 / 3.0
KINDS = ("random", "tight", "gap", "figure2", "element_gadget", "triple_gadget", "wasserstein_gadget")


class SplitMix64:
    def __init__(self, seed: int):
        self.state = int(seed) & _MASK

    def next_u64(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & _MASK
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
        return z ^ (z >> 31)

    def uniform(self) -> float:
        return (self.next_u64() >> 11) * 2.0**-53


@dataclass(frozen=True)
class GenSpec:
    kind: str = "random"
    n: int = 3
    m: int = 2
    seed: int = 0
    bbox: tuple[float, float] = (0.0, 10.0)
    d: int = 2
    pull: bool = False

    def validate(self) -> list[str]:
        problems = []
        if self.kind not in KINDS:
            problems.append(f"unknown kind {self.kind!r}")
        if self.kind == "random":
            if self.n < 1:
                problems.append("n must be >= 1")
            if self.m < 2:
                problems.append("m must be >= 2")
            lo, hi = self.bbox
            if not (math.isfinite(lo) and math.isfinite(hi) and lo < hi):
                problems.append("bbox must be a finite interval lo < hi")
        if not 0 <= self.seed <= _MASK:
            problems.append("seed must fit in 64 unsigned bits")
        if self.kind == "element_gadget" and self.d < 2:
            problems.append("element gadget needs d >= 2")
        return problems

    def as_dict(self) -> dict:
        out = asdict(self)
        out["bbox"] = list(self.bbox)
        return out


def gen_random(spec: GenSpec) -> list[Diagram]:
    problems = spec.validate()
    if problems:
        raise ValueError("invalid spec: " + "; ".join(problems))
    rng = SplitMix64(spec.seed)
    lo, hi = spec.bbox
    out = []
    for _ in range(spec.m):
        pts = []
        for _ in range(spec.n):
            x = lo + (hi - lo) * rng.uniform()
            y = lo + (hi - lo) * rng.uniform()
            pts.append((x, y) if y >= x else (y, x))
        out.append(Diagram(pts))
    return out


def gen_tight() -> list[np.ndarray]:
    """Three single-point sets where the color-1 approximation is exactly twice optimal.

    Under L-infinity the color-1 center is at distance 1 from both other
    points while the box center (0.5, 0.5) reaches all three at 0.5.
    """
    return [np.array([[0.0, 0.0]]), np.array([[1.0, 0.0]]), np.array([[0.0, 1.0]])]


def gen_gap() -> list[np.ndarray]:
    """Collinear sets whose no-replacement optimum (2) is twice the with-replacement one (1).

    Every cluster contains a point at -1 and one at +1, so only the single
    copy of the origin covers a cluster at radius 1; reuse lets it cover both.
    """
    return [
        np.array([[0.0, 0.0], [-1.0, 0.0]]),
        np.array([[1.0, 0.0], [1.0, 0.0]]),
        np.array([[-1.0, 0.0], [-1.0, 0.0]]),
    ]


def gen_figure2() -> list[np.ndarray]:
    """Unit-circle instance with one set member at the circle center.

    The cluster holding the center point must pair it with two circle points,
    so no discrete center does better than radius 1 (L2); (0, 0) and (0, 1)
    achieve it.
    """
    return [
        np.array([[1.0, 0.0], [0.0, 0.0]]),
        np.array([[0.0, 1.0], [-1.0, 0.0]]),
        np.array([[0.0, -1.0], [0.6, 0.8]]),
    ]


def gen_element_gadget(d: int, absorber: str | None = None) -> list[np.ndarray]:
    """Straight element path with ``d`` color-1 grid points one unit apart.

    Each unit edge carries a color-2 point at 1/3 and a color-3 point at 2/3.
    With ``absorber=None`` the raw gadget is returned (3D + 1 points, D = d - 1;
    color 1 has one extra point).  ``"near"`` adds a color-3 and a color-2
    point at 1/3 and 2/3 below the first grid point, so that point can be
    covered from outside at radius 1/3; ``"far"`` puts the same pair far away.
    """
    if d < 2:
        raise ValueError("element gadget needs d >= 2")
    span = d - 1
    c1 = [(float(k), 0.0) for k in range(d)]
    c2 = [(k + THIRD, 0.0) for k in range(span)]
    c3 = [(k + 2 * THIRD, 0.0) for k in range(span)]
    if absorber == "near":
        c3.append((0.0, -THIRD))
        c2.append((0.0, -2 * THIRD))
    elif absorber == "far":
        depth = 10.0 * d
        c3.append((0.0, -depth))
        c2.append((0.0, -depth - THIRD))
    elif absorber is not None:
        raise ValueError(f"unknown absorber {absorber!r}")
    return [np.array(c, dtype=float).reshape(-1, 2) for c in (c1, c2, c3)]


def gen_triple_gadget(pull: bool) -> list[np.ndarray]:
    """A grid point holding one point of each color.

    ``pull=False`` is the triple alone: one cluster of radius 0.  ``pull=True``
    adds the three approach edges (along +x, +y and -x) whose 1/3 and 2/3
    points carry the two colors other than the one each edge pulls; the only
    radius-1/3 covers then split the triple across three clusters.
    """
    origin = (0.0, 0.0)
    if not pull:
        return [np.array([origin]) for _ in range(3)]
    c1 = [origin, (0.0, 2 * THIRD), (-THIRD, 0.0)]
    c2 = [origin, (THIRD, 0.0), (-2 * THIRD, 0.0)]
    c3 = [origin, (2 * THIRD, 0.0), (0.0, THIRD)]
    return [np.array(c) for c in (c1, c2, c3)]


def gen_wasserstein_gadget(length: int = 1) -> list[np.ndarray]:
    """Grid edges with two differently colored points at each midpoint.

    Cluster ``k`` is the color-1 grid point ``(k, 0)`` with the color-2 and
    color-3 points at ``(k + 1/2, 0)``: an axis-parallel interval of length
    1/2 whose best free center sits 1/4 from every member.
    """
    if length < 1:
        raise ValueError("length must be >= 1")
    c1 = [(float(k), 0.0) for k in range(length)]
    mid = [(k + 0.5, 0.0) for k in range(length)]
    return [np.array(c1), np.array(mid), np.array(mid)]


def diameter(points: np.ndarray) -> float:
    pts = np.asarray(points, float).reshape(-1, 2)
    if len(pts) < 2:
        return 0.0
    diff = pts[:, None, :] - pts[None, :, :]
    return float(np.sqrt((diff**2).sum(axis=2)).max())


def shift_from_diagonal(sets) -> list[Diagram]:
    """Translate all sets together (upwards) until each point is at L-infinity
    distance at least twice the union's diameter from the diagonal.

    The translation is by a whole number so grid coordinates stay exact
    wherever they were.
    """
    arrays = [np.asarray(s, float).reshape(-1, 2) for s in sets]
    union = np.concatenate(arrays) if arrays else np.zeros((0, 2))
    if len(union) == 0:
        raise ValueError("empty input")
    diam = diameter(union)
    need = 4.0 * diam if diam > 0 else 1.0
    shift = float(math.ceil(max(0.0, need - float((union[:, 1] - union[:, 0]).min()))))
    return [Diagram(a + np.array([0.0, shift])) for a in arrays]


def generate(spec: GenSpec) -> list[Diagram]:
    """Diagrams for any fixture kind; point-set fixtures go through the diagonal shift."""
    problems = spec.validate()
    if problems:
        raise ValueError("invalid spec: " + "; ".join(problems))
    if spec.kind == "random":
        return gen_random(spec)
    sets = {
        "tight": gen_tight,
        "gap": gen_gap,
        "figure2": gen_figure2,
        "element_gadget": lambda: gen_element_gadget(spec.d, "near"),
        "triple_gadget": lambda: gen_triple_gadget(spec.pull),
        "wasserstein_gadget": gen_wasserstein_gadget,
    }[spec.kind]()
    return shift_from_diagonal(sets)
