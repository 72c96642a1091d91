"""Arithmetic classification of the possible Mobius stabilizers of an
n-point subset of the extended complex plane.

Given only the cardinality n, ``classify`` enumerates every group that can
occur as the stabilizer of some n-point set, each tagged with its component
index: the tuple counting how many orbits of each size class the set
decomposes into under that group.  The enumeration is pure integer
arithmetic over the orbit-size identities (e.g. an icosahedral-invariant
set has n = 12*v + 20*m + 30*e + 60*k), so it is exact, deterministic and
fast at any n.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InvalidCardinality

# Group kinds.  Dihedral and cyclic carry a parameter p; the order-4
# dihedral group (p = 2) is the Klein four-group K4 and the order-2 cyclic
# group is Z2 -- both are kept as kinds of their own because their orbit
# structure degenerates (several orbit families collapse to the same size).
A5 = "A5"
S4 = "S4"
A4 = "A4"
DIHEDRAL = "D"
K4 = "K4"
CYCLIC = "Z"
Z2 = "Z2"
TRIVIAL = "trivial"
INFINITE = "infinity"

#: Orbit sizes backing each slot of the component index, generic orbit last.
#: The A4 and K4 entries list a size more than once when several orbit
#: families share it (two tetrahedra; pole pair and the two root pairs).
ORBIT_SLOT_SIZES = {
    A5: (12, 20, 30, 60),
    S4: (6, 8, 12, 24),
    A4: (4, 6, 12),
    DIHEDRAL: (2, None, None),  # (poles, p, 2p); p filled per label
    K4: (2, 4),
    CYCLIC: (1, None),
    Z2: (1, 2),
}

#: Upper bound (inclusive) for each non-generic index slot.
INDEX_SLOT_RANGES = {
    A5: (1, 1, 1),
    S4: (1, 1, 1),
    A4: (2, 1),
    DIHEDRAL: (1, 2),
    K4: (3,),
    CYCLIC: (2,),
    Z2: (2,),
}


@dataclass(frozen=True)
class GroupLabel:
    """One of the finite (or infinite) Mobius group types.

    ``p`` is the rotation order for dihedral/cyclic labels and None
    otherwise.
    """

    kind: str
    p: int | None = None

    def __post_init__(self):
        if self.kind in (DIHEDRAL, CYCLIC):
            if self.p is None or self.p < 3:
                raise ValueError(f"{self.kind} label needs parameter p >= 3 "
                                 f"(p = 2 is {K4 if self.kind == DIHEDRAL else Z2})")
        elif self.p is not None:
            raise ValueError(f"{self.kind} label carries no parameter")

    @property
    def order(self) -> int:
        """Order of the abstract group; raises for the infinite label."""
        if self.kind == A5:
            return 60
        if self.kind == S4:
            return 24
        if self.kind == A4:
            return 12
        if self.kind == DIHEDRAL:
            return 2 * self.p
        if self.kind == K4:
            return 4
        if self.kind == CYCLIC:
            return self.p
        if self.kind == Z2:
            return 2
        if self.kind == TRIVIAL:
            return 1
        raise ValueError("the infinite stabilizer has no finite order")

    def orbit_sizes(self) -> tuple[int, ...]:
        """Orbit size per index slot, generic orbit last."""
        sizes = ORBIT_SLOT_SIZES[self.kind]
        if self.kind == DIHEDRAL:
            return (2, self.p, 2 * self.p)
        if self.kind == CYCLIC:
            return (1, self.p)
        return sizes

    def __str__(self) -> str:
        if self.kind == A5:
            return "A_5"
        if self.kind == S4:
            return "S_4"
        if self.kind == A4:
            return "A_4"
        if self.kind == DIHEDRAL:
            return f"D_{self.p}"
        if self.kind == K4:
            return "K_4"
        if self.kind == CYCLIC:
            return f"Z_{self.p}"
        if self.kind == Z2:
            return "Z_2"
        return self.kind


LABEL_A5 = GroupLabel(A5)
LABEL_S4 = GroupLabel(S4)
LABEL_A4 = GroupLabel(A4)
LABEL_K4 = GroupLabel(K4)
LABEL_Z2 = GroupLabel(Z2)
LABEL_TRIVIAL = GroupLabel(TRIVIAL)
LABEL_INFINITE = GroupLabel(INFINITE)


def dihedral(p: int) -> GroupLabel:
    """Dihedral label of rotation order p; K4 when p == 2."""
    return LABEL_K4 if p == 2 else GroupLabel(DIHEDRAL, p)


def cyclic(p: int) -> GroupLabel:
    """Cyclic label of order p; Z2 when p == 2."""
    return LABEL_Z2 if p == 2 else GroupLabel(CYCLIC, p)


@dataclass(frozen=True)
class ClassificationEntry:
    """A (group, component index) pair as emitted by the classifier."""

    label: GroupLabel
    index: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "index", tuple(int(i) for i in self.index))
        validate_index(self.label, self.index)

    def cardinality(self) -> int:
        return cardinality_of(self)

    def to_line(self) -> str:
        if self.label.kind == TRIVIAL:
            return "(0)"
        if self.label.kind == INFINITE:
            return "infinity"
        inner = ", ".join(str(i) for i in self.index)
        return f"{self.label}, ({inner})"

    def to_json(self) -> dict:
        out: dict = {"group": _JSON_GROUP[self.label.kind]}
        if self.label.kind in (DIHEDRAL, CYCLIC):
            out["p"] = self.label.p
        elif self.label.kind == Z2:
            out["p"] = 2
        out["index"] = list(self.index)
        return out

    def __str__(self) -> str:
        return self.to_line()


_JSON_GROUP = {
    A5: "A_5", S4: "S_4", A4: "A_4", DIHEDRAL: "D", K4: "K_4",
    CYCLIC: "Z", Z2: "Z", TRIVIAL: "trivial", INFINITE: "infinity",
}


def validate_index(label: GroupLabel, index: tuple[int, ...]) -> None:
    """Check the slot-range constraints of a component index."""
    kind = label.kind
    if kind in (TRIVIAL, INFINITE):
        if index != ():
            raise ValueError(f"{kind} entries carry an empty index")
        return
    ranges = INDEX_SLOT_RANGES[kind]
    if len(index) != len(ranges) + 1:
        raise ValueError(f"{label} index must have {len(ranges) + 1} slots, "
                         f"got {index}")
    for slot, (count, top) in enumerate(zip(index, ranges)):
        if not 0 <= count <= top:
            raise ValueError(f"{label} index slot {slot} out of range: {index}")
    if index[-1] < 0:
        raise ValueError(f"{label} generic-orbit count is negative: {index}")


def cardinality_of(entry: ClassificationEntry) -> int:
    """Number of points implied by an entry's orbit decomposition.

    Trivial and infinite entries impose no orbit-size identity, so they
    have no implied cardinality and raise ValueError.
    """
    if entry.label.kind in (TRIVIAL, INFINITE):
        raise ValueError(f"a bare {entry.label.kind} entry has no implied "
                         "cardinality; it only occurs attached to a query n")
    sizes = entry.label.orbit_sizes()
    return sum(s * c for s, c in zip(sizes, entry.index))


def classify(n: int) -> list[ClassificationEntry]:
    """All possible (stabilizer group, component index) pairs at size n.

    Output order is fixed: the polyhedral blocks (A5, S4, A4), dihedral
    labels with p running from n down to 3, K4, cyclic labels with p from
    n down to 3, Z2, and finally the trivial entry (present iff n >= 5).
    Sets with n <= 2 points have an infinite stabilizer.
    """
    if n < 1:
        raise InvalidCardinality(f"cardinality must be >= 1, got {n}")
    out: list[ClassificationEntry] = []
    emit = out.append

    if n <= 2:
        emit(ClassificationEntry(LABEL_INFINITE, ()))

    # A5 block: n = 12v + 20m + 30e + 60k with v, m, e in {0, 1}.
    k, r = divmod(n, 60)
    if r == 0 and k >= 1:
        emit(ClassificationEntry(LABEL_A5, (0, 0, 0, k)))
    if r == 12:
        emit(ClassificationEntry(LABEL_A5, (1, 0, 0, k)))
    if r == 20:
        emit(ClassificationEntry(LABEL_A5, (0, 1, 0, k)))
    if r == 30:
        emit(ClassificationEntry(LABEL_A5, (0, 0, 1, k)))
    if r == 32:
        emit(ClassificationEntry(LABEL_A5, (1, 1, 0, k)))
    if r == 42:
        emit(ClassificationEntry(LABEL_A5, (1, 0, 1, k)))
    if r == 50:
        emit(ClassificationEntry(LABEL_A5, (0, 1, 1, k)))
    if r == 2 and k >= 1:
        emit(ClassificationEntry(LABEL_A5, (1, 1, 1, k - 1)))

    # S4 block: n = 6v + 8m + 12e + 24k.
    k, r = divmod(n, 24)
    if r == 0 and k >= 1:
        emit(ClassificationEntry(LABEL_S4, (0, 0, 0, k)))
    if r == 6:
        emit(ClassificationEntry(LABEL_S4, (1, 0, 0, k)))
    if r == 8:
        emit(ClassificationEntry(LABEL_S4, (0, 1, 0, k)))
    if r == 12:
        emit(ClassificationEntry(LABEL_S4, (0, 0, 1, k)))
    if r == 14:
        emit(ClassificationEntry(LABEL_S4, (1, 1, 0, k)))
    if r == 18:
        emit(ClassificationEntry(LABEL_S4, (1, 0, 1, k)))
    if r == 20:
        emit(ClassificationEntry(LABEL_S4, (0, 1, 1, k)))
    if r == 2 and k >= 1:
        emit(ClassificationEntry(LABEL_S4, (1, 1, 1, k - 1)))

    # A4 block: n = 4v + 6e + 12k with v in {0, 1, 2}, e in {0, 1}.  The
    # indices (2,0,0), (0,1,0) and (2,1,0) are absorbed by S4 and never
    # emitted here.
    k, r = divmod(n, 12)
    if r == 0 and k >= 1:
        emit(ClassificationEntry(LABEL_A4, (0, 0, k)))
    if r == 4:
        emit(ClassificationEntry(LABEL_A4, (1, 0, k)))
    if r == 8 and k >= 1:
        emit(ClassificationEntry(LABEL_A4, (2, 0, k)))
    if r == 6 and k >= 1:
        emit(ClassificationEntry(LABEL_A4, (0, 1, k)))
    if r == 10:
        emit(ClassificationEntry(LABEL_A4, (1, 1, k)))
    if r == 2 and k >= 2:
        emit(ClassificationEntry(LABEL_A4, (2, 1, k - 1)))

    # Dihedral block: n = 2v + p(e + 2k).  (0,2,0) and (1,2,0) would have
    # stabilizer D_2p, and (1,1,0) at p = 4 is the octahedron (S4).
    for p in range(n, 2, -1):
        k = n // (2 * p)
        l = n // p - 2 * k
        r = n - 2 * p * k - p * l
        label = GroupLabel(DIHEDRAL, p)
        if k >= 1 and r == 0:
            emit(ClassificationEntry(label, (0, l, k)))
        if k >= 2 and r == 0 and l == 0:
            emit(ClassificationEntry(label, (0, 2, k - 1)))
        if k >= 1 and r == 2:
            emit(ClassificationEntry(label, (1, l, k)))
        if k >= 2 and r == 2 and l == 0:
            emit(ClassificationEntry(label, (1, 2, k - 1)))
        if k == 0 and r == 0 and l == 1:
            emit(ClassificationEntry(label, (0, 1, 0)))
        if k == 0 and r == 2 and l == 1 and p != 4:
            emit(ClassificationEntry(label, (1, 1, 0)))

    # K4 block: n = 2v + 4k with v in {0..3}; k >= 1 always (v orbits alone
    # have a larger stabilizer).
    k, r = divmod(n, 4)
    if k >= 1 and r == 0:
        emit(ClassificationEntry(LABEL_K4, (0, k)))
    if k >= 2 and r == 0:
        emit(ClassificationEntry(LABEL_K4, (2, k - 1)))
    if k >= 1 and r == 2:
        emit(ClassificationEntry(LABEL_K4, (1, k)))
    if k >= 2 and r == 2:
        emit(ClassificationEntry(LABEL_K4, (3, k - 1)))

    # Cyclic block: n = v + pk with v in {0, 1, 2}.  A single rotation
    # orbit (or two, or with both poles) is always dihedral-invariant, so
    # k <= 2 survives only with exactly one pole; (1,1) at p = 3 is the
    # tetrahedron.
    for p in range(n, 2, -1):
        k, r = divmod(n, p)
        label = GroupLabel(CYCLIC, p)
        if k >= 3 and r <= 2:
            emit(ClassificationEntry(label, (r, k)))
        if k == 2 and r == 1:
            emit(ClassificationEntry(label, (r, k)))
        if k == 1 and r == 1 and p != 3:
            emit(ClassificationEntry(label, (r, k)))

    # Z2 block: n = v + 2k.
    k, r = divmod(n, 2)
    if k >= 3:
        emit(ClassificationEntry(LABEL_Z2, (r, k)))
    if k >= 4 and r == 0:
        emit(ClassificationEntry(LABEL_Z2, (2, k - 1)))
    if k == 2 and r == 1:
        emit(ClassificationEntry(LABEL_Z2, (r, k)))

    if n >= 5:
        emit(ClassificationEntry(LABEL_TRIVIAL, ()))

    return out


def classify_lines(n: int) -> list[str]:
    """The classification as canonical text lines, one entry per line."""
    return [entry.to_line() for entry in classify(n)]


def cardinality_set(label: GroupLabel, n_max: int) -> set[int]:
    """All n <= n_max whose classification contains the given group."""
    if label.kind == INFINITE:
        raise ValueError("the infinite stabilizer has no cardinality set")
    out = set()
    for n in range(1, n_max + 1):
        if any(e.label == label for e in classify(n)):
            out.add(n)
    return out


def parse_entry(text: str) -> ClassificationEntry:
    """Parse an entry selector such as "Z_2,(1,2)", "D_7, (0, 1, 0)" or "(0)"."""
    s = text.strip()
    if s == "(0)":
        return ClassificationEntry(LABEL_TRIVIAL, ())
    if s.lower() == "infinity":
        return ClassificationEntry(LABEL_INFINITE, ())
    head, sep, tail = s.partition(",")
    if not sep:
        raise ValueError(f"cannot parse entry {text!r}")
    label = _parse_group_token(head.strip())
    tail = tail.strip()
    if not (tail.startswith("(") and tail.endswith(")")):
        raise ValueError(f"cannot parse index in entry {text!r}")
    index = tuple(int(part) for part in tail[1:-1].split(",") if part.strip())
    return ClassificationEntry(label, index)


def _parse_group_token(token: str) -> GroupLabel:
    if token == "A_5":
        return LABEL_A5
    if token == "S_4":
        return LABEL_S4
    if token == "A_4":
        return LABEL_A4
    if token == "K_4":
        return LABEL_K4
    if token.startswith("D_"):
        return dihedral(int(token[2:]))
    if token.startswith("Z_"):
        return cyclic(int(token[2:]))
    raise ValueError(f"unknown group token {token!r}")


def entry_from_json(data: dict) -> ClassificationEntry:
    group = data["group"]
    index = tuple(data.get("index", ()))
    if group == "trivial":
        return ClassificationEntry(LABEL_TRIVIAL, ())
    if group == "infinity":
        return ClassificationEntry(LABEL_INFINITE, ())
    if group == "D":
        return ClassificationEntry(dihedral(int(data["p"])), index)
    if group == "Z":
        return ClassificationEntry(cyclic(int(data["p"])), index)
    return ClassificationEntry(_parse_group_token(group), index)
