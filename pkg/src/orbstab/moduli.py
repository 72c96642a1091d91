"""The symmetric-group action on normalized point configurations.

A configuration of n marked points with three of them pinned at 0, 1 and
infinity is recorded by the remaining n-3 coordinates, a tuple in

    K_n = { (l_1, ..., l_{n-3}) : l_i != 0, 1 and pairwise distinct }.

Relabelling the marked points by a permutation and re-pinning the first
three induces a birational self-map of K_n.  This module evaluates that
action two independent ways -- directly from its definition via the
re-pinning Mobius map, and through closed-form rational expressions
obtained by splitting the permutation into a block part (which only
permutes coordinates and applies one of the six anharmonic maps) and a
coset representative built from at most three transpositions -- and
cross-checks the two on every call.
"""

from __future__ import annotations

import cmath
import itertools
import math
from dataclasses import dataclass

import numpy as np

from .errors import ClosedFormMismatch, EnumerationBoundExceeded
from .geometry import (DEFAULT_TOL, MobiusMap, PointSet, RiemannPoint,
                       chordal_distance, maps_equal, mobius_through_triple)
from .oracle import stabilizer

#: The anharmonic group: the six Mobius maps permuting {0, 1, inf}.
ANHARMONIC_GROUP = (
    MobiusMap.identity(),
    MobiusMap(-1.0, 1.0, 0.0, 1.0),   # 1 - z
    MobiusMap(0.0, 1.0, 1.0, 0.0),    # 1/z
    MobiusMap(1.0, 0.0, 1.0, -1.0),   # z/(z - 1)
    MobiusMap(1.0, -1.0, 1.0, 0.0),   # (z - 1)/z
    MobiusMap(0.0, -1.0, 1.0, -1.0),  # -1/(z - 1)
)

# The anharmonic map realizing each permutation a of the pinned slots
# (keyed by the images (a(1), a(2), a(3))): h sends the point in slot i
# to the value pinned at slot a(i).
_H_BY_SLOT_PERM = {
    (1, 2, 3): lambda z: z,
    (2, 1, 3): lambda z: 1.0 - z,
    (3, 2, 1): lambda z: 1.0 / z,
    (1, 3, 2): lambda z: z / (z - 1.0),
    (3, 1, 2): lambda z: (z - 1.0) / z,
    (2, 3, 1): lambda z: -1.0 / (z - 1.0),
}


@dataclass(frozen=True)
class Permutation:
    """A bijection of {1..n}, stored as the tuple of images of 1..n."""

    images: tuple[int, ...]

    def __post_init__(self):
        images = tuple(int(i) for i in self.images)
        if sorted(images) != list(range(1, len(images) + 1)):
            raise ValueError(f"{images} is not a permutation of 1..{len(images)}")
        object.__setattr__(self, "images", images)

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(tuple(range(1, n + 1)))

    @classmethod
    def transposition(cls, n: int, a: int, b: int) -> "Permutation":
        images = list(range(1, n + 1))
        images[a - 1], images[b - 1] = b, a
        return cls(tuple(images))

    @property
    def n(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i - 1]

    def compose(self, other: "Permutation") -> "Permutation":
        """(self.compose(other))(i) == self(other(i))."""
        return Permutation(tuple(self.images[j - 1] for j in other.images))

    def inverse(self) -> "Permutation":
        inv = [0] * self.n
        for i, j in enumerate(self.images, start=1):
            inv[j - 1] = i
        return Permutation(tuple(inv))

    def is_identity(self) -> bool:
        return all(self(i) == i for i in range(1, self.n + 1))

    def __str__(self) -> str:
        return "(" + " ".join(str(i) for i in self.images) + ")"


def all_permutations(n: int):
    for images in itertools.permutations(range(1, n + 1)):
        yield Permutation(images)


def random_permutation(n: int, rng: np.random.Generator) -> Permutation:
    images = np.arange(1, n + 1)
    rng.shuffle(images)
    return Permutation(tuple(int(i) for i in images))


@dataclass(frozen=True)
class LambdaTuple:
    """A point of K_n: the free coordinates of a normalized configuration."""

    values: tuple[complex, ...]
    tol: float = DEFAULT_TOL

    def __post_init__(self):
        values = tuple(complex(v) for v in self.values)
        object.__setattr__(self, "values", values)
        pts = [RiemannPoint.from_value(v) for v in values]
        fixed = [RiemannPoint.from_value(0.0), RiemannPoint.from_value(1.0),
                 RiemannPoint.infinity()]
        for i, p in enumerate(pts):
            for q in fixed:
                if chordal_distance(p, q) <= self.tol:
                    raise ValueError(
                        f"coordinate {i + 1} = {values[i]} collides with a "
                        "pinned point (0, 1 or infinity)")
            for j in range(i + 1, len(pts)):
                if chordal_distance(p, pts[j]) <= self.tol:
                    raise ValueError(
                        f"coordinates {i + 1} and {j + 1} coincide within "
                        "tolerance")

    @property
    def n(self) -> int:
        return len(self.values) + 3

    def marked_points(self) -> list[RiemannPoint]:
        """The full configuration (0, 1, inf, l_1, ..., l_{n-3})."""
        return ([RiemannPoint.from_value(0.0), RiemannPoint.from_value(1.0),
                 RiemannPoint.infinity()]
                + [RiemannPoint.from_value(v) for v in self.values])

    def point_set(self) -> PointSet:
        return PointSet(self.marked_points(), tol=self.tol)

    def to_json(self) -> dict:
        from .geometry import format_complex
        return {"n": self.n, "values": [format_complex(v) for v in self.values]}

    @classmethod
    def from_json(cls, data: dict) -> "LambdaTuple":
        from .geometry import parse_complex
        return cls(tuple(parse_complex(s) for s in data["values"]))


def tuple_deviation(a, b) -> float:
    """Componentwise chordal distance between two coordinate tuples."""
    return max(chordal_distance(RiemannPoint.from_value(x),
                                RiemannPoint.from_value(y))
               for x, y in zip(a, b))


def f_sigma(lam: LambdaTuple, sigma: Permutation) -> MobiusMap:
    """The re-pinning map: sends the points in slots sigma^-1(1), (2), (3)
    of the configuration to 0, 1 and infinity."""
    pts = lam.marked_points()
    inv = sigma.inverse()
    src = (pts[inv(1) - 1], pts[inv(2) - 1], pts[inv(3) - 1])
    dst = (RiemannPoint.from_value(0.0), RiemannPoint.from_value(1.0),
           RiemannPoint.infinity())
    return mobius_through_triple(src, dst, tol=lam.tol)


def g_sigma_definitional(lam: LambdaTuple, sigma: Permutation) -> tuple[complex, ...]:
    """The action straight from its definition: apply the re-pinning map to
    the reordered configuration and read off the free coordinates."""
    f = f_sigma(lam, sigma)
    pts = lam.marked_points()
    inv = sigma.inverse()
    out = []
    for slot in range(4, lam.n + 1):
        q = f.apply(pts[inv(slot) - 1])
        if abs(q.w) < 1e-14 * abs(q.z):
            raise ValueError(
                f"image coordinate for slot {slot} landed at infinity; "
                "the input left the domain of the action")
        out.append(q.value())
    return tuple(out)


def _coset_split(sigma: Permutation):
    """Split sigma as tau * v with v preserving {1,2,3} and {4..n}.

    tau is a product of at most three disjoint transpositions (slot, big
    index), one for each pinned slot whose preimage lies beyond 3; such
    products form a complete set of coset representatives.  Returns
    (slot_to_big, v).
    """
    n = sigma.n
    inv = sigma.inverse()
    marked = [i for i in (1, 2, 3) if inv(i) > 3]
    bigs = sorted(sigma(i) for i in (1, 2, 3) if sigma(i) > 3)
    tau = Permutation.identity(n)
    for slot, big in zip(marked, bigs):
        tau = tau.compose(Permutation.transposition(n, slot, big))
    v = tau.compose(sigma)  # tau is an involution, so tau^-1 sigma == tau sigma
    return dict(zip(marked, bigs)), v


def _apply_block_part(lam_values: tuple[complex, ...], v: Permutation):
    """The action of a block permutation: coordinate shuffle then one
    anharmonic map applied to every coordinate."""
    a_key = (v(1), v(2), v(3))
    h = _H_BY_SLOT_PERM[a_key]
    v_inv = v.inverse()
    return tuple(h(lam_values[v_inv(k + 3) - 4]) for k in range(1, len(lam_values) + 1))


def _apply_coset_part(mu: tuple[complex, ...], slot_to_big: dict[int, int]):
    """Closed forms for the coset representative tau on a tuple mu.

    One case per family of representatives; within each, the coordinates
    whose marked point moves into a pinned slot take their own expression.
    """
    m = len(mu)
    marked = tuple(sorted(slot_to_big))
    if not marked:
        return mu
    L = {s: mu[slot_to_big[s] - 4] for s in marked}
    out = list(mu)
    if marked == (1,):
        lp = L[1]
        for i in range(m):
            out[i] = -lp / (1.0 - lp) if i == slot_to_big[1] - 4 \
                else (mu[i] - lp) / (1.0 - lp)
    elif marked == (2,):
        lp = L[2]
        for i in range(m):
            out[i] = 1.0 / lp if i == slot_to_big[2] - 4 else mu[i] / lp
    elif marked == (3,):
        lp = L[3]
        for i in range(m):
            out[i] = 1.0 - lp if i == slot_to_big[3] - 4 \
                else mu[i] * (1.0 - lp) / (mu[i] - lp)
    elif marked == (1, 2):
        lp, lq = L[1], L[2]
        den = lq - lp
        for i in range(m):
            if i == slot_to_big[1] - 4:
                out[i] = -lp / den
            elif i == slot_to_big[2] - 4:
                out[i] = (1.0 - lp) / den
            else:
                out[i] = (mu[i] - lp) / den
    elif marked == (2, 3):
        lp, lq = L[2], L[3]
        num = lp - lq
        for i in range(m):
            if i == slot_to_big[2] - 4:
                out[i] = num / (lp * (1.0 - lq))
            elif i == slot_to_big[3] - 4:
                out[i] = num / lp
            else:
                out[i] = num * mu[i] / (lp * (mu[i] - lq))
    elif marked == (1, 3):
        lq, lp = L[1], L[3]
        for i in range(m):
            if i == slot_to_big[3] - 4:
                out[i] = (lp - 1.0) / (lq - 1.0)
            elif i == slot_to_big[1] - 4:
                out[i] = (lp - 1.0) * lq / ((lq - 1.0) * lp)
            else:
                out[i] = (lp - 1.0) * (mu[i] - lq) / ((lq - 1.0) * (mu[i] - lp))
    else:  # marked == (1, 2, 3)
        lp, lq, lr = L[1], L[2], L[3]
        c = (lq - lr) / (lq - lp)
        for i in range(m):
            if i == slot_to_big[1] - 4:
                out[i] = c * lp / lr
            elif i == slot_to_big[2] - 4:
                out[i] = c * (1.0 - lp) / (1.0 - lr)
            elif i == slot_to_big[3] - 4:
                out[i] = c
            else:
                out[i] = c * (mu[i] - lp) / (mu[i] - lr)
    return tuple(out)


def g_sigma_closed(lam: LambdaTuple, sigma: Permutation) -> tuple[complex, ...]:
    """The action via the closed forms: block part first, then the coset
    representative's rational expressions."""
    slot_to_big, v = _coset_split(sigma)
    mu = _apply_block_part(lam.values, v)
    return _apply_coset_part(mu, slot_to_big)


def g_sigma(lam: LambdaTuple, sigma: Permutation,
            tol: float | None = None) -> LambdaTuple:
    """Evaluate the action of sigma on a K_n point, both ways, and fail
    loudly if the definitional and closed-form paths disagree."""
    tol = lam.tol if tol is None else tol
    by_def = g_sigma_definitional(lam, sigma)
    by_form = g_sigma_closed(lam, sigma)
    dev = tuple_deviation(by_def, by_form)
    if dev > 10.0 * tol:
        raise ClosedFormMismatch(
            f"closed form and definition disagree by {dev} for sigma = {sigma}")
    return LambdaTuple(by_def, tol=lam.tol)


def random_lambda(n: int, rng: np.random.Generator,
                  margin: float = 0.05) -> LambdaTuple:
    """A generic K_n point with coordinates comfortably separated."""
    while True:
        values = [complex(rng.uniform(-2.0, 3.0), rng.uniform(-2.0, 2.0))
                  for _ in range(n - 3)]
        ok = all(abs(v) > margin and abs(v - 1.0) > margin for v in values)
        ok = ok and all(abs(a - b) > margin
                        for i, a in enumerate(values) for b in values[i + 1:])
        if ok:
            return LambdaTuple(tuple(values))


@dataclass
class GroupLawReport:
    n: int
    trials: int
    max_deviation: float
    tolerance: float
    faithful_total: int
    faithful_moved: int

    @property
    def passed(self) -> bool:
        law_ok = self.max_deviation < self.tolerance
        faith_ok = self.faithful_moved == self.faithful_total
        return law_ok and faith_ok

    def summary(self) -> str:
        return (f"group law at n={self.n}: {self.trials} trials, max deviation "
                f"{self.max_deviation:.3e} (tolerance {self.tolerance:.1e}); "
                f"faithfulness {self.faithful_moved}/{self.faithful_total} "
                f"non-identity actions move a generic point -> "
                f"{'PASS' if self.passed else 'FAIL'}")


def verify_group_law(n: int, trials: int = 200, rng_seed: int = 0,
                     tol: float = DEFAULT_TOL) -> GroupLawReport:
    """Numerically check that composing actions matches the composed
    permutation, and that non-identity permutations act non-trivially.

    For each trial, draws random sigma, pi and a random configuration and
    compares g_pi(g_sigma(lam)) with g_{pi sigma}(lam).  Faithfulness is
    checked exhaustively for n <= 6 and on samples above.
    """
    if n < 4:
        raise ValueError("the action needs n >= 4")
    rng = np.random.default_rng(rng_seed)
    max_dev = 0.0
    for _ in range(trials):
        lam = random_lambda(n, rng)
        sigma = random_permutation(n, rng)
        pi = random_permutation(n, rng)
        two_step = g_sigma(g_sigma(lam, sigma), pi)
        one_step = g_sigma(lam, pi.compose(sigma))
        max_dev = max(max_dev, tuple_deviation(two_step.values, one_step.values))

    moved = total = 0
    if n >= 5:
        lam = random_lambda(n, rng)
        perms = (all_permutations(n) if math.factorial(n) <= 720
                 else (random_permutation(n, rng) for _ in range(200)))
        for sigma in perms:
            if sigma.is_identity():
                continue
            total += 1
            if tuple_deviation(g_sigma(lam, sigma).values, lam.values) > 10.0 * tol:
                moved += 1
    return GroupLawReport(n=n, trials=trials, max_deviation=max_dev,
                          tolerance=10.0 * tol, faithful_total=total,
                          faithful_moved=moved)


def stabilizer_G_lambda(lam: LambdaTuple, method: str = "auto",
                        enumeration_bound: int = 8) -> list[Permutation]:
    """The permutations whose action fixes the given K_n point.

    ``method`` is "direct" (enumerate the symmetric group; factorial cost,
    guarded by ``enumeration_bound``), "oracle" (compute the Mobius
    stabilizer of the underlying point set and pull each element back to
    the permutation it induces on the marked points), or "auto".
    """
    n = lam.n
    if method == "auto":
        method = "direct" if n <= enumeration_bound else "oracle"
    if method == "direct":
        if n > enumeration_bound:
            raise EnumerationBoundExceeded(
                f"direct enumeration of S_{n} exceeds the bound "
                f"{enumeration_bound}")
        kept = []
        for sigma in all_permutations(n):
            if tuple_deviation(g_sigma_closed(lam, sigma), lam.values) <= lam.tol:
                kept.append(sigma)
        return kept
    if method != "oracle":
        raise ValueError(f"unknown method {method!r}")
    ps = lam.point_set()
    result = stabilizer(ps)
    kept = []
    for f in result.elements:
        images = []
        for p in ps.points:
            j = ps.index_of(f.apply(p))
            if j < 0:
                raise RuntimeError("stabilizer element does not permute the "
                                   "marked points; tolerance failure")
            images.append(j + 1)
        kept.append(Permutation(tuple(images)))
    return sorted(kept, key=lambda s: s.images)


@dataclass
class PhiReport:
    """Result of checking that sigma -> f_sigma is an isomorphism from the
    permutation stabilizer onto the Mobius stabilizer of the point set."""

    n: int
    order_G: int
    order_A: int
    stabilized: int
    hom_pairs: int
    hom_pairs_ok: int
    onto_ok: bool

    @property
    def passed(self) -> bool:
        return (self.order_G == self.order_A
                and self.stabilized == self.order_G
                and self.hom_pairs_ok == self.hom_pairs
                and self.onto_ok)

    def summary(self) -> str:
        return (f"isomorphism check at n={self.n}: |G_lambda| = {self.order_G}, "
                f"|A| = {self.order_A}; {self.stabilized}/{self.order_G} maps "
                f"stabilize the configuration; homomorphism pairs "
                f"{self.hom_pairs_ok}/{self.hom_pairs}; onto: {self.onto_ok} "
                f"-> {'PASS' if self.passed else 'FAIL'}")


def phi_check(lam: LambdaTuple, tol: float = 1e-7) -> PhiReport:
    """Verify bijectivity and the homomorphism property of sigma -> f_sigma
    between the two stabilizers of a configuration."""
    from .geometry import set_equal
    n = lam.n
    G = stabilizer_G_lambda(lam, method="direct" if n <= 8 else "oracle")
    ps = lam.point_set()
    A = stabilizer(ps)
    maps = {sigma.images: f_sigma(lam, sigma) for sigma in G}

    stabilized = sum(
        1 for f in maps.values() if set_equal(ps.apply_map(f), ps))
    hom_pairs = hom_ok = 0
    for sigma in G:
        for pi in G:
            hom_pairs += 1
            lhs = maps[pi.images].compose(maps[sigma.images])
            rhs = f_sigma(lam, pi.compose(sigma))
            if maps_equal(lhs, rhs, tol=tol):
                hom_ok += 1
    onto = all(
        any(maps_equal(f, g, tol=tol) for g in A.elements)
        for f in maps.values())
    return PhiReport(n=n, order_G=len(G), order_A=A.order,
                     stabilized=stabilized, hom_pairs=hom_pairs,
                     hom_pairs_ok=hom_ok, onto_ok=onto)


# ---------------------------------------------------------------------------
# Built-in configurations for the command-line checks.

def _normalize_to_lambda(values) -> LambdaTuple:
    """Send the first three of the given points to 0, 1, inf and return the
    remaining coordinates as a K_n point."""
    pts = [RiemannPoint.from_value(v) for v in values]
    f = mobius_through_triple(
        (pts[0], pts[1], pts[2]),
        (RiemannPoint.from_value(0.0), RiemannPoint.from_value(1.0),
         RiemannPoint.infinity()))
    return LambdaTuple(tuple(f.apply(p).value() for p in pts[3:]))


def preset_lambda(name: str) -> LambdaTuple:
    """Named example configurations: 'generic' (trivial stabilizer),
    'd5' (the regular pentagon; stabilizer of order 10) and 'z2' (the
    five-point antipodal configuration; stabilizer of order 2)."""
    if name == "generic":
        return LambdaTuple((2.0 + 1.0j, 5.0))
    if name == "d5":
        roots = [cmath.exp(2j * math.pi * k / 5.0) for k in range(5)]
        return _normalize_to_lambda(roots)
    if name == "z2":
        return _normalize_to_lambda([0.0, 1.0, 2.0, -1.0, -2.0])
    raise ValueError(f"unknown preset {name!r} (try generic, d5, z2)")
