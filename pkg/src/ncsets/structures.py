"""The non-commuting structures M, Q and N and the UU_4(F_q) partition.

Points are triples of canonical field indices tagged with the structure kind.
For M and Q two points commute when det[[x1, y1], [x2, y2]] = z1 - z2; M is the
part of F_q^3 with y != 0.  N consists of pairs (x, y) with y != 0 (stored with
z = 0) and commutes when det[[x1, y1], [x2, y2]] = x1 - x2.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, NamedTuple, Sequence, TextIO

from . import unitriangular as ut
from .errors import FieldTooSmall, MixedKinds
from .gf import Field, parse_field
from .unitriangular import UTMatrix

KINDS = ("M", "Q", "N")


class Point3(NamedTuple):
    x: int
    y: int
    z: int
    kind: str = "Q"

    def coords(self) -> tuple[int, int, int]:
        return (self.x, self.y, self.z)

    def to_text(self) -> str:
        return f"{self.x},{self.y},{self.z}"


def point(x: int, y: int, z: int, kind: str = "Q") -> Point3:
    if kind not in KINDS:
        raise MixedKinds(f"unknown kind {kind!r}")
    if kind in ("M", "N") and y == 0:
        raise ValueError(f"{kind} points need y != 0")
    return Point3(x, y, z, kind)


def cc(F: Field, p1: Point3, p2: Point3) -> bool:
    """The commuting condition."""
    if p1.kind != p2.kind:
        raise MixedKinds(f"{p1.kind} vs {p2.kind}")
    d = F.sub(F.mul(p1.x, p2.y), F.mul(p1.y, p2.x))
    if p1.kind == "N":
        return d == F.sub(p1.x, p2.x)
    return d == F.sub(p1.z, p2.z)


def relation(F: Field) -> Callable[[Point3, Point3], bool]:
    return lambda a, b: cc(F, a, b)


@dataclass
class NCStructure:
    field: Field
    kind: str
    points: list[Point3]

    def relation(self) -> Callable[[Point3, Point3], bool]:
        return relation(self.field)

    def write(self, out: TextIO) -> None:
        """Line-per-point dump with a ``kind q modulus`` header."""
        out.write(f"{self.kind} {self.field.q} {self.field.modulus_index:x}\n")
        for p in self.points:
            out.write(p.to_text() + "\n")


def read_structure(text: str) -> NCStructure:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    kind, q, modhex = lines[0].split()
    F = parse_field(f"{_pr(int(q))}:{modhex}")
    pts = []
    for ln in lines[1:]:
        x, y, z = (int(v) for v in ln.split(","))
        pts.append(point(x, y, z, kind))
    return NCStructure(F, kind, pts)


def _pr(q: int) -> str:
    from .gf import _split_prime_power

    p, r = _split_prime_power(q)
    return f"{p}^{r}"


def structure_M(F: Field) -> NCStructure:
    return NCStructure(F, "M", [Point3(x, y, z, "M") for x in F.elements() for y in F.nonzero()
                                for z in F.elements()])


def structure_Q(F: Field) -> NCStructure:
    return NCStructure(F, "Q", [Point3(x, y, z, "Q") for x in F.elements() for y in F.elements()
                                for z in F.elements()])


def structure_N(F: Field) -> NCStructure:
    return NCStructure(F, "N", [Point3(x, y, 0, "N") for x in F.elements() for y in F.nonzero()])


def centralizer_of(F: Field, p: Point3, points: Sequence[Point3]) -> list[Point3]:
    return [r for r in points if cc(F, p, r)]


def centralizer_m10(F: Field, m: int) -> list[Point3]:
    """C(m, 1, 0) = {(m y + z, y, z)} inside M."""
    return [Point3(F.add(F.mul(m, y), z), y, z, "M") for y in F.nonzero() for z in F.elements()]


def iso_centralizer_to_N(F: Field, p: Point3) -> dict[Point3, Point3]:
    """Commuting-preserving bijection from C(p) in M onto N.

    For p = (x1, y1, z1) with x1 != 0 the map goes through C(x1*y1, 1, 0) by
    inverting (x, y, z) -> (x / y1, m y / x1, z1 + z); for x1 = 0 through
    C(0, 1, 0) by inverting (x, y, x) -> (x, y1 y, x y1 + z1).  The final step is
    (m y + z, y, z) -> (z, y).
    """
    x1, y1, z1 = p.x, p.y, p.z
    inv_y1 = F.inv(y1)
    out = {}
    for r in centralizer_of(F, p, structure_M(F).points):
        if x1:
            # preimage in C(m,1,0): (X y1, Y / y1, Z - z1); then (z, y)
            out[r] = Point3(F.sub(r.z, z1), F.mul(r.y, inv_y1), 0, "N")
        else:
            # preimage in C(0,1,0): (X, Y / y1, X); then (z, y) = (X, Y / y1)
            out[r] = Point3(r.x, F.mul(r.y, inv_y1), 0, "N")
    return out


def transport_M(F: Field, src: Point3, dst: Point3) -> Callable[[Point3], Point3]:
    """An automorphism of M sending src to dst.

    Uses g_p(x, y, z) = (x + p.x y, p.y y, p.y z + p.z), which sends (0, 1, 0) to p
    and multiplies both sides of the commuting condition by p.y; the result is
    g_dst composed with the inverse of g_src.
    """
    inv_sy = F.inv(src.y)

    def apply(p: Point3) -> Point3:
        y0 = F.mul(p.y, inv_sy)
        x0 = F.sub(p.x, F.mul(src.x, y0))
        z0 = F.mul(F.sub(p.z, src.z), inv_sy)
        return Point3(F.add(x0, F.mul(dst.x, y0)), F.mul(dst.y, y0),
                      F.add(F.mul(dst.y, z0), dst.z), p.kind)

    return apply


def abelian_decomposition_M(F: Field) -> list[list[Point3]]:
    """M as the disjoint union of the q(q-1) abelian sets {(x + c, a, a x) : x in F_q}."""
    return [[Point3(F.add(x, c), a, F.mul(a, x), "M") for x in F.elements()]
            for a in F.nonzero() for c in F.elements()]


def is_abelian(F: Field, pts: Sequence[Point3]) -> bool:
    return all(cc(F, a, b) for a, b in itertools.combinations(pts, 2))


def is_non_extendable_abelian(F: Field, part: Sequence[Point3], ambient: Sequence[Point3]) -> bool:
    members = set(part)
    return not any(all(cc(F, r, p) for p in part) for r in ambient if r not in members)


def _smallest_y(F: Field) -> int:
    for y in F.nonzero():
        if y != 1:
            return y
    raise FieldTooSmall("needs an element outside {0, 1}")


def construct_2q_set_M(F: Field) -> list[Point3]:
    """2q pairwise non-commuting points of M (q != 2).

    {(z, y, z)} + {(m + 1, 1, 1) : m != 1/y - 1} + {(1/y - 1, 1, 0)} with y the
    smallest element outside {0, 1}.
    """
    if F.q == 2:
        raise FieldTooSmall("the 2q construction needs q != 2")
    y = _smallest_y(F)
    t = F.sub(F.inv(y), 1)
    pts = [Point3(z, y, z, "M") for z in F.elements()]
    pts += [Point3(F.add(m, 1), 1, 1, "M") for m in F.elements() if m != t]
    pts.append(Point3(t, 1, 0, "M"))
    return pts


def construct_q_plus_1_in_centralizer(F: Field, m: int) -> list[Point3]:
    """q + 1 pairwise non-commuting points inside C(m, 1, 0)."""
    if F.q < 3:
        raise FieldTooSmall("needs q >= 3")
    y = _smallest_y(F)
    pts = [Point3(F.add(F.mul(m, y), z), y, z, "M") for z in F.elements()]
    pts.append(Point3(F.add(m, 1), 1, 1, "M"))
    return pts


# --- UU_4(F_q) -----------------------------------------------------------

PART_NAMES = ("N0", "N1", "N1anti", "N2", "N3", "N3anti")

# nonzero pattern of (a12, a23, a34) -> part
_PATTERN = {
    (True, True, True): "N0",
    (True, True, False): "N1",
    (False, True, True): "N1anti",
    (True, False, True): "N2",
    (True, False, False): "N3",
    (False, False, True): "N3anti",
}


def classify_uu4(a: UTMatrix) -> str:
    """Name of the part containing a, or "T4" when a12 = a34 = 0."""
    s = a.superdiagonal()
    return _PATTERN.get((s[0] != 0, s[1] != 0, s[2] != 0), "T4")


@dataclass
class Partition4:
    field: Field
    parts: dict[str, list[UTMatrix]]
    t4: list[UTMatrix]

    def blocks(self) -> dict[str, list[UTMatrix]]:
        """The four blocks of UU_4 \\ T_4 used by the blockwise assembly.

        They are not mutually non-commuting: E12 in N3 commutes with E34 in N3anti.
        """
        p = self.parts
        return {"N0": p["N0"], "N1+N3": p["N1"] + p["N3"],
                "N1anti+N3anti": p["N1anti"] + p["N3anti"], "N2": p["N2"]}


def partition_uu4(F: Field, group: Sequence[UTMatrix] | None = None) -> Partition4:
    if group is None:
        group = ut.enumerate_group(4, F)
    parts: dict[str, list[UTMatrix]] = {name: [] for name in PART_NAMES}
    t4 = []
    for a in group:
        name = classify_uu4(a)
        (t4 if name == "T4" else parts[name]).append(a)
    return Partition4(F, parts, t4)


def uu4(F: Field, values: dict[tuple[int, int], int]) -> UTMatrix:
    return UTMatrix.from_dict(4, F, values)


def t1_set(F: Field) -> list[UTMatrix]:
    """T_1 = {a in UU_4 : a34 = 0}."""
    return [a for a in ut.enumerate_group(4, F) if a[3, 4] == 0]


def t1_anti_set(F: Field) -> list[UTMatrix]:
    return [a for a in ut.enumerate_group(4, F) if a[1, 2] == 0]


def n2_representatives(F: Field) -> list[UTMatrix]:
    """X_N2: a12 = 1, a14 = a23 = 0, a34 != 0, a13 and a24 free."""
    return [uu4(F, {(1, 2): 1, (1, 3): x13, (2, 4): x24, (3, 4): x34})
            for x13 in F.elements() for x34 in F.nonzero() for x24 in F.elements()]


def n2_canonical(a: UTMatrix) -> UTMatrix:
    """The X_N2 representative of the centralizer class of a in N_2."""
    F = a.field
    if classify_uu4(a) != "N2":
        raise ValueError("matrix is not in N2")
    d = F.inv(a[1, 2])
    return uu4(F, {(1, 2): 1, (1, 3): F.mul(d, a[1, 3]), (2, 4): F.mul(d, a[2, 4]),
                   (3, 4): F.mul(d, a[3, 4])})


def psi(a: UTMatrix) -> Point3:
    """X_N2 representative -> point (x13, x34, x24) of M."""
    return Point3(a[1, 3], a[3, 4], a[2, 4], "M")


def psi_inverse(F: Field, p: Point3) -> UTMatrix:
    return uu4(F, {(1, 2): 1, (1, 3): p.x, (2, 4): p.z, (3, 4): p.y})


def psi_N2_to_M(F: Field) -> dict[UTMatrix, Point3]:
    return {a: psi(a) for a in n2_representatives(F)}


def n0_representatives(F: Field) -> list[UTMatrix]:
    """One element per commuting class of N_0: a12 = 1, a23 = s, a34 = t, a13 = c.

    Two such matrices commute iff (s, t, c) agree, so these q(q-1)^2 matrices
    are pairwise non-commuting.
    """
    return [uu4(F, {(1, 2): 1, (2, 3): s, (3, 4): t, (1, 3): c})
            for s in F.nonzero() for t in F.nonzero() for c in F.elements()]


def n1n3_representatives(F: Field) -> list[UTMatrix]:
    """q^2 pairwise non-commuting elements of N_1 + N_3.

    N_1 contributes a12 = 1, a23 = s != 0, a24 = c; N_3 contributes a12 = 1,
    a24 = c with a23 = 0.
    """
    return [uu4(F, {(1, 2): 1, (2, 3): s, (2, 4): c}) for s in F.elements() for c in F.elements()]


# --- the a23 != 0 / a23 = 0 split of UU_4 ------------------------------------

def a23_key(a: UTMatrix) -> tuple[int, int, int]:
    """(r, s, r w - s u) with r = a12/a23, s = a34/a23, u = a13/a23, w = a24/a23.

    Two elements with a23 != 0 commute exactly when their keys agree, so the
    key takes q^3 - q + 1 values and that is omega of the a23 != 0 part.
    """
    F = a.field
    d = F.inv(a[2, 3])
    r, s = F.mul(a[1, 2], d), F.mul(a[3, 4], d)
    u, w = F.mul(a[1, 3], d), F.mul(a[2, 4], d)
    return r, s, F.sub(F.mul(r, w), F.mul(s, u))


def a23_representatives(F: Field) -> list[UTMatrix]:
    """One element with a23 = 1 for each key value."""
    out = []
    for r in F.elements():
        for s in F.elements():
            if r == 0 and s == 0:
                out.append(uu4(F, {(2, 3): 1}))
                continue
            for k in F.elements():
                if r:
                    vals = {(2, 4): F.div(k, r)}
                else:
                    vals = {(1, 3): F.neg(F.div(k, s))}
                vals.update({(1, 2): r, (2, 3): 1, (3, 4): s})
                out.append(uu4(F, vals))
    return out


def t2_vector(a: UTMatrix) -> tuple[int, int, int, int]:
    """(a12, a13, a24, a34) of an element with a23 = 0."""
    return a[1, 2], a[1, 3], a[2, 4], a[3, 4]


def symplectic_form(F: Field, v: Sequence[int], w: Sequence[int]) -> int:
    """v1 w3 + v2 w4 - w1 v3 - w2 v4: the (1,4) entry of the commutator on a23 = 0."""
    return F.sub(F.add(F.mul(v[0], w[2]), F.mul(v[1], w[3])),
                 F.add(F.mul(w[0], v[2]), F.mul(w[1], v[3])))


def t2_points(F: Field, avoid_line: bool = True) -> list[UTMatrix]:
    """One element per commuting class of the noncentral a23 = 0 part.

    Classes are the projective points of F_q^4 (first nonzero coordinate of
    (a12, a13, a24, a34) equal to 1).  With ``avoid_line`` the points with
    a12 = a34 = 0 are left out; the rest fail to commute with every element
    having a23 != 0.
    """
    out = []
    for v in itertools.product(F.elements(), repeat=4):
        if not any(v) or next(c for c in v if c) != 1:
            continue
        if avoid_line and v[0] == 0 and v[3] == 0:
            continue
        out.append(uu4(F, {(1, 2): v[0], (1, 3): v[1], (2, 4): v[2], (3, 4): v[3]}))
    return out


def q_point_to_uu4(F: Field, p: Point3) -> UTMatrix:
    """(x, y, z) -> a12 = 1, a13 = x, a34 = y, a24 = z; on M this is the inverse of psi.

    Points commute in Q exactly when the images commute, including y = 0
    (images then lie in N_3).
    """
    return uu4(F, {(1, 2): 1, (1, 3): p.x, (2, 4): p.z, (3, 4): p.y})
