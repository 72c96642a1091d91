"""Projective geometry on the extended complex plane.

Points are stored in homogeneous coordinates (z : w), so the point at
infinity needs no special casing anywhere: it is simply (1 : 0).  Mobius
transformations act as 2x2 complex matrices on those coordinates.  All
equality questions are settled in the chordal metric (straight-line
distance between the images on the unit sphere), which is bounded by 2
and treats infinity like any other point.
"""

from __future__ import annotations

import cmath
import math
import re
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .errors import AmbiguousMatching, DegenerateMap, NearDegenerateTriple

#: Default chordal tolerance used for point and map comparisons.
DEFAULT_TOL = 1e-8

#: Modulus floor for the determinant of a normalized Mobius matrix.
DET_FLOOR = 1e-12


@dataclass(frozen=True)
class RiemannPoint:
    """A point of the Riemann sphere as a normalized pair (z : w).

    The point represented is z/w, with w == 0 meaning infinity.  On
    construction the pair is divided by its larger-modulus coordinate, so
    one coordinate is exactly 1 and the representative is canonical up to
    the remaining phase-free coordinate.
    """

    z: complex
    w: complex

    def __post_init__(self):
        z, w = complex(self.z), complex(self.w)
        az, aw = abs(z), abs(w)
        m = max(az, aw)
        if m == 0.0 or not math.isfinite(m):
            raise ValueError(f"({z}, {w}) does not define a point of the sphere")
        pivot = w if aw >= az else z
        object.__setattr__(self, "z", z / pivot)
        object.__setattr__(self, "w", w / pivot)

    @classmethod
    def from_value(cls, value: complex) -> "RiemannPoint":
        """Build a point from an ordinary complex number (or inf)."""
        if isinstance(value, (int, float)) and math.isinf(value):
            return cls(1.0, 0.0)
        value = complex(value)
        if cmath.isinf(value):
            return cls(1.0, 0.0)
        return cls(value, 1.0)

    @classmethod
    def infinity(cls) -> "RiemannPoint":
        return cls(1.0, 0.0)

    def is_infinity(self, tol: float = DEFAULT_TOL) -> bool:
        return chordal_distance(self, _INF) <= tol

    def value(self) -> complex:
        """The point as a complex number; complex infinity for (1 : 0)."""
        if self.w == 0:
            return complex("inf")
        return self.z / self.w

    def norm(self) -> float:
        """Euclidean norm of the homogeneous pair; in [1, sqrt(2)]."""
        return math.hypot(abs(self.z), abs(self.w))

    def to_sphere(self) -> tuple[float, float, float]:
        """Image on the unit sphere in R^3 (inverse stereographic)."""
        zw = self.z * self.w.conjugate()
        s = abs(self.z) ** 2 + abs(self.w) ** 2
        return (2.0 * zw.real / s, 2.0 * zw.imag / s,
                (abs(self.z) ** 2 - abs(self.w) ** 2) / s)

    @classmethod
    def from_sphere(cls, x1: float, x2: float, x3: float) -> "RiemannPoint":
        """Stereographic projection of a point of the unit sphere.

        Projects from the north pole (0, 0, 1), which maps to infinity.
        Chooses the better-conditioned homogeneous chart for each
        hemisphere, so the construction is total.
        """
        if x3 <= 0.0:
            return cls(complex(x1, x2), 1.0 - x3)
        return cls(1.0 + x3, complex(x1, -x2))

    def __str__(self) -> str:
        return point_to_str(self)


_INF = RiemannPoint(1.0, 0.0)


def chordal_distance(p: RiemannPoint, q: RiemannPoint) -> float:
    """Chordal distance between two sphere points; in [0, 2].

    Zero exactly when the points are projectively equal; 2 for antipodal
    pairs.  Equals the Euclidean distance between the sphere images.
    """
    cross = abs(p.z * q.w - q.z * p.w)
    return 2.0 * cross / (p.norm() * q.norm())


def points_close(p: RiemannPoint, q: RiemannPoint, tol: float = DEFAULT_TOL) -> bool:
    return chordal_distance(p, q) <= tol


def snap_point(p: RiemannPoint, eps: float = 1e-12) -> RiemannPoint:
    """Zero out homogeneous components below eps (relative).

    Turns numerically-computed images that are within eps of 0 or infinity
    into the exact points, which keeps orbit constructions tidy.
    """
    m = max(abs(p.z), abs(p.w))

    def clean(c: complex) -> complex:
        return complex(0.0 if abs(c.real) < eps * m else c.real,
                       0.0 if abs(c.imag) < eps * m else c.imag)

    return RiemannPoint(clean(p.z), clean(p.w))


@dataclass(frozen=True)
class MobiusMap:
    """The Mobius transformation z -> (a z + b) / (c z + d).

    Stored as a 2x2 complex matrix acting on homogeneous coordinates and
    normalized so its largest-modulus entry equals 1.  Two maps are equal
    exactly when their matrices agree up to a nonzero complex scalar.
    """

    a: complex
    b: complex
    c: complex
    d: complex

    def __post_init__(self):
        entries = (complex(self.a), complex(self.b), complex(self.c), complex(self.d))
        pivot = max(entries, key=abs)
        if abs(pivot) == 0.0 or not math.isfinite(abs(pivot)):
            raise DegenerateMap("matrix has no usable pivot entry")
        a, b, c, d = (e / pivot for e in entries)
        if abs(a * d - b * c) < DET_FLOOR:
            raise DegenerateMap(f"determinant {a * d - b * c} below floor")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "c", c)
        object.__setattr__(self, "d", d)

    @classmethod
    def identity(cls) -> "MobiusMap":
        return cls(1.0, 0.0, 0.0, 1.0)

    @classmethod
    def scaling(cls, factor: complex) -> "MobiusMap":
        return cls(factor, 0.0, 0.0, 1.0)

    def apply(self, p: RiemannPoint) -> RiemannPoint:
        return RiemannPoint(self.a * p.z + self.b * p.w,
                            self.c * p.z + self.d * p.w)

    def __call__(self, p: RiemannPoint) -> RiemannPoint:
        return self.apply(p)

    def compose(self, other: "MobiusMap") -> "MobiusMap":
        """Matrix product: (self.compose(other))(p) == self(other(p))."""
        return MobiusMap(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def inverse(self) -> "MobiusMap":
        return MobiusMap(self.d, -self.b, -self.c, self.a)

    def power(self, m: int) -> "MobiusMap":
        """m-th iterate by binary exponentiation; m may be negative."""
        if m < 0:
            return self.inverse().power(-m)
        result = MobiusMap.identity()
        base = self
        while m:
            if m & 1:
                result = result.compose(base)
            base = base.compose(base)
            m >>= 1
        return result

    def is_identity(self, tol: float = DEFAULT_TOL) -> bool:
        """Projective identity test (entries are O(1) after normalization)."""
        scale = max(abs(self.a), abs(self.d))
        return (abs(self.b) <= tol * scale and abs(self.c) <= tol * scale
                and abs(self.a - self.d) <= tol * scale)

    def matrix(self) -> np.ndarray:
        return np.array([[self.a, self.b], [self.c, self.d]], dtype=complex)

    def fixed_points(self) -> tuple[RiemannPoint, RiemannPoint]:
        """Fixed points as eigenvectors of the matrix.

        For an elliptic non-identity map these are the two rotation poles;
        a repeated fixed point is returned twice.
        """
        tr = self.a + self.d
        disc = cmath.sqrt((self.a - self.d) ** 2 + 4.0 * self.b * self.c)
        points = []
        for lam in ((tr + disc) / 2.0, (tr - disc) / 2.0):
            v1 = (self.b, lam - self.a)
            v2 = (lam - self.d, self.c)
            v = v1 if max(abs(v1[0]), abs(v1[1])) >= max(abs(v2[0]), abs(v2[1])) else v2
            points.append(RiemannPoint(*v))
        return points[0], points[1]


def maps_equal(f: MobiusMap, g: MobiusMap, tol: float = DEFAULT_TOL) -> bool:
    """Projective equality: f g^-1 is a scalar multiple of the identity."""
    return f.compose(g.inverse()).is_identity(tol)


def _matrix_to_zero_one_inf(p1: RiemannPoint, p2: RiemannPoint, p3: RiemannPoint) -> MobiusMap:
    # Rows annihilate p1 and p3; the middle point fixes the relative scale.
    kappa = p2.z * p3.w - p3.z * p2.w
    mu = p2.z * p1.w - p1.z * p2.w
    return MobiusMap(kappa * p1.w, -kappa * p1.z, mu * p3.w, -mu * p3.z)


def mobius_through_triple(src, dst, tol: float = DEFAULT_TOL) -> MobiusMap:
    """The unique Mobius map sending an ordered triple to an ordered triple.

    Raises NearDegenerateTriple when either triple has a pair of points
    within 2*tol of each other.
    """
    src = tuple(src)
    dst = tuple(dst)
    if len(src) != 3 or len(dst) != 3:
        raise ValueError("both triples must contain exactly three points")
    for triple in (src, dst):
        for i in range(3):
            for j in range(i + 1, 3):
                if chordal_distance(triple[i], triple[j]) <= 2.0 * tol:
                    raise NearDegenerateTriple(
                        f"points {triple[i]} and {triple[j]} are not separated")
    fwd = _matrix_to_zero_one_inf(*src)
    back = _matrix_to_zero_one_inf(*dst)
    return back.inverse().compose(fwd)


class PointSet:
    """A finite set of well-separated sphere points with a working tolerance.

    All pairwise chordal distances must exceed 2*tol, which makes
    tolerance-ball matching against the set unambiguous.
    """

    def __init__(self, points, tol: float = DEFAULT_TOL, _validate: bool = True):
        self.points: tuple[RiemannPoint, ...] = tuple(points)
        self.tol = float(tol)
        if _validate:
            self._check_separation()

    def _check_separation(self):
        n = len(self.points)
        if n < 2:
            return
        d = self.distance_matrix(self)
        d = d + 4.0 * np.eye(n)
        i, j = np.unravel_index(np.argmin(d), d.shape)
        if d[i, j] <= 2.0 * self.tol:
            raise AmbiguousMatching(
                f"points {self.points[i]} and {self.points[j]} are within "
                f"2*tol = {2.0 * self.tol} of each other")

    @property
    def n(self) -> int:
        return len(self.points)

    def __len__(self) -> int:
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def __repr__(self) -> str:
        inner = ", ".join(point_to_str(p) for p in self.points)
        return f"PointSet({{{inner}}}, tol={self.tol})"

    @cached_property
    def _arrays(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        z = np.array([p.z for p in self.points], dtype=complex)
        w = np.array([p.w for p in self.points], dtype=complex)
        nrm = np.sqrt(np.abs(z) ** 2 + np.abs(w) ** 2)
        return z, w, nrm

    def arrays(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """Homogeneous coordinates as (z, w, norm) ndarrays."""
        return self._arrays

    def distance_matrix(self, other: "PointSet") -> np.ndarray:
        z1, w1, n1 = self.arrays()
        z2, w2, n2 = other.arrays()
        cross = np.abs(z1[:, None] * w2[None, :] - z2[None, :] * w1[:, None])
        return 2.0 * cross / (n1[:, None] * n2[None, :])

    def apply_map(self, f: MobiusMap) -> "PointSet":
        return PointSet((f.apply(p) for p in self.points), tol=self.tol,
                        _validate=False)

    def index_of(self, p: RiemannPoint) -> int:
        """Index of the unique point within tol of p, or -1."""
        for i, q in enumerate(self.points):
            if chordal_distance(p, q) <= self.tol:
                return i
        return -1

    @classmethod
    def from_values(cls, values, tol: float = DEFAULT_TOL) -> "PointSet":
        return cls((RiemannPoint.from_value(v) for v in values), tol=tol)

    def to_json(self) -> list[str]:
        return [point_to_str(p) for p in self.points]

    @classmethod
    def from_json(cls, data, tol: float = DEFAULT_TOL) -> "PointSet":
        return cls((point_from_str(s) for s in data), tol=tol)


def set_equal(a: PointSet, b: PointSet) -> bool:
    """Whether two point sets agree up to tolerance-ball matching.

    True when the sets have the same size and nearest-neighbour matching
    pairs them off bijectively within tol.  Raises AmbiguousMatching if a
    point of one set lies within tol of two points of the other.
    """
    if a.n != b.n:
        return False
    tol = max(a.tol, b.tol)
    d = a.distance_matrix(b)
    hits = d <= tol
    per_row = hits.sum(axis=1)
    per_col = hits.sum(axis=0)
    if (per_row > 1).any() or (per_col > 1).any():
        raise AmbiguousMatching("tolerance balls overlap during set matching")
    return bool((per_row == 1).all())


# ---------------------------------------------------------------------------
# Serialization: finite points as "re+imi" decimals, infinity as "inf".


def format_complex(v: complex) -> str:
    return f"{v.real!r}{'+' if v.imag >= 0 else '-'}{abs(v.imag)!r}i"


def parse_complex(text: str) -> complex:
    """Parse "a+bi" style complex literals ("2", "2+1i", "-0.5-2e-3i")."""
    s = text.strip().replace(" ", "")
    if s.lower() in ("inf", "infinity"):
        return complex("inf")
    if not s:
        raise ValueError("empty complex literal")
    has_i = s[-1] in "iIjJ"
    body = s[:-1] if has_i else s
    if not has_i:
        return complex(float(body), 0.0)
    m = re.match(r"^(?P<re>[+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)?"
                 r"(?P<im>[+-](?:\d+\.?\d*|\.\d+)?(?:[eE][+-]?\d+)?)?$", body)
    if m is None:
        raise ValueError(f"cannot parse complex literal {text!r}")
    re_part, im_part = m.group("re"), m.group("im")
    if im_part is None:
        # purely imaginary, e.g. "2i" or "i"
        im_part, re_part = re_part or "+", None
    if im_part in ("+", "-"):
        im_part += "1"
    return complex(float(re_part) if re_part else 0.0, float(im_part))


def point_to_str(p: RiemannPoint) -> str:
    if p.w == 0:
        return "inf"
    return format_complex(p.value())


def point_from_str(text: str) -> RiemannPoint:
    return RiemannPoint.from_value(parse_complex(text))
