"""Lines in Q = F_q^3 and non-commuting sets built from unions of lines.

A line is {base + t * dir : t in F_q}.  Every line is either commuting (all
point pairs commute) or non-commuting (no pair does); it is commuting exactly
when a*y0 - b*x0 = c.

For two lines L_i, L_j the points L_i(s) and L_j(t) commute iff

    alpha + beta s + gamma t + delta s t = 0

with alpha = det[[x_i, y_i], [x_j, y_j]] - (z_i - z_j),
beta = det[[a_i, b_i], [x_j, y_j]] - c_i, gamma = c_j - det[[a_j, b_j], [x_i, y_i]],
delta = det[[a_i, b_i], [a_j, b_j]].  When alpha*delta = beta*gamma the left side
splits into univariate linear factors, so dropping at most one parameter value
per line removes every commuting cross pair.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field as dc_field
from typing import Iterable, Sequence, TextIO

from .clique import first_commuting_pair
from .errors import (BadTriple, CommutingLineInput, DegenerateDenominators, FactorizabilityFailed,
                     MinusThreeNotSquare, SingularMatrix, UnsupportedField)
from .gf import Field, minus_three_is_square, parse_field
from .structures import Point3, cc, relation

Vec3 = tuple[int, int, int]
Mat2 = tuple[tuple[int, int], tuple[int, int]]


@dataclass(frozen=True)
class Line:
    base: Vec3
    dir: Vec3

    def __post_init__(self):
        if self.dir == (0, 0, 0):
            raise ValueError("direction must be nonzero")

    def to_text(self) -> str:
        return ",".join(map(str, self.base)) + "|" + ",".join(map(str, self.dir))


def parse_line(text: str) -> Line:
    b, d = text.strip().split("|")
    return Line(tuple(int(v) for v in b.split(",")), tuple(int(v) for v in d.split(",")))


def line_from_ints(F: Field, base: Sequence[int], direction: Sequence[int]) -> Line:
    """Line whose coordinates are given as integers (mapped into the prime subfield)."""
    return Line(tuple(F.from_int(v) for v in base), tuple(F.from_int(v) for v in direction))


def point_at(F: Field, L: Line, t: int) -> Point3:
    (x0, y0, z0), (a, b, c) = L.base, L.dir
    return Point3(F.add(x0, F.mul(a, t)), F.add(y0, F.mul(b, t)), F.add(z0, F.mul(c, t)), "Q")


def points(F: Field, L: Line) -> list[Point3]:
    return [point_at(F, L, t) for t in F.elements()]


def canonical(F: Field, L: Line) -> Line:
    """Smallest point as base, direction scaled so its first nonzero coordinate is 1."""
    base = min(points(F, L)).coords()
    lead = next(v for v in L.dir if v)
    s = F.inv(lead)
    return Line(base, tuple(F.mul(s, v) for v in L.dir))


def same_line(F: Field, L1: Line, L2: Line) -> bool:
    return canonical(F, L1) == canonical(F, L2)


def line_defect(F: Field, L: Line) -> int:
    """c - (a y0 - b x0); zero exactly for commuting lines."""
    (x0, y0, _), (a, b, c) = L.base, L.dir
    return F.sub(c, F.det2(a, b, x0, y0))


def classify_line(F: Field, L: Line) -> str:
    return "Commuting" if line_defect(F, L) == 0 else "NonCommuting"


def is_commuting_line(F: Field, L: Line) -> bool:
    return line_defect(F, L) == 0


# --- GL_2 and affine actions -----------------------------------------------

def det_mat2(F: Field, A: Mat2) -> int:
    return F.det2(A[0][0], A[0][1], A[1][0], A[1][1])


def _apply2(F: Field, A: Mat2, x: int, y: int) -> tuple[int, int]:
    return (F.add(F.mul(A[0][0], x), F.mul(A[0][1], y)),
            F.add(F.mul(A[1][0], x), F.mul(A[1][1], y)))


def gl2_act(F: Field, A: Mat2, p: Point3) -> Point3:
    """A.(x, y, z) = (A (x, y)^t, det(A) z)."""
    d = det_mat2(F, A)
    if d == 0:
        raise SingularMatrix("matrix is not invertible")
    x, y = _apply2(F, A, p.x, p.y)
    return Point3(x, y, F.mul(d, p.z), p.kind)


def gl2_act_line(F: Field, A: Mat2, L: Line) -> Line:
    d = det_mat2(F, A)
    if d == 0:
        raise SingularMatrix("matrix is not invertible")
    bx, by = _apply2(F, A, L.base[0], L.base[1])
    dx, dy = _apply2(F, A, L.dir[0], L.dir[1])
    return Line((bx, by, F.mul(d, L.base[2])), (dx, dy, F.mul(d, L.dir[2])))


def translate(F: Field, u: int, v: int, p: Point3) -> Point3:
    """(x, y, z) -> (x + u, y + v, z + v x - u y); preserves the commuting condition."""
    return Point3(F.add(p.x, u), F.add(p.y, v), F.add(p.z, F.sub(F.mul(v, p.x), F.mul(u, p.y))),
                  p.kind)


def gl2_elements(F: Field) -> Iterable[Mat2]:
    for a, b, c, d in itertools.product(F.elements(), repeat=4):
        if F.det2(a, b, c, d):
            yield ((a, b), (c, d))


def restrict_to_M(F: Field, pts: Sequence[Point3], optimize: bool = True) -> tuple[list[Point3], dict]:
    """Move a non-commuting set of Q into M and drop the points with y = 0.

    With ``optimize`` an affine symmetry of Q is chosen first so that the new
    y-coordinate r0*x + r1*y + v vanishes on as few points as possible.
    Returns the M-points and a description of the transform used.
    """
    best = (sum(1 for p in pts if p.y == 0), (0, 1, 0))
    if optimize:
        for r0, r1, v in itertools.product(F.elements(), repeat=3):
            if r0 == 0 and r1 == 0:
                continue
            lost = sum(1 for p in pts if F.add(F.add(F.mul(r0, p.x), F.mul(r1, p.y)), v) == 0)
            if lost < best[0]:
                best = (lost, (r0, r1, v))
    r0, r1, v = best[1]
    A = ((1, 0), (r0, r1)) if r1 else ((0, 1), (r0, 0))
    out = []
    for p in pts:
        img = translate(F, 0, v, gl2_act(F, A, p))
        if img.y:
            out.append(Point3(img.x, img.y, img.z, "M"))
    return out, {"matrix": A, "shift_y": v, "dropped": len(pts) - len(out)}


# --- pairs of lines --------------------------------------------------------

def pair_coefficients(F: Field, Li: Line, Lj: Line) -> tuple[int, int, int, int]:
    """(alpha, beta, gamma, delta) of the bilinear cross-commuting equation."""
    (xi, yi, zi), (ai, bi, ci) = Li.base, Li.dir
    (xj, yj, zj), (aj, bj, cj) = Lj.base, Lj.dir
    alpha = F.sub(F.det2(xi, yi, xj, yj), F.sub(zi, zj))
    beta = F.sub(F.det2(ai, bi, xj, yj), ci)
    gamma = F.sub(cj, F.det2(aj, bj, xi, yi))
    delta = F.det2(ai, bi, aj, bj)
    return alpha, beta, gamma, delta


def factorizability_identity(F: Field, Li: Line, Lj: Line) -> bool:
    """(det[a_i b_i; x_j y_j] - c_i)(det[a_j b_j; x_i y_i] - c_j) = ((z_i - z_j) - det[x_i y_i; x_j y_j]) det[a_i b_i; a_j b_j]."""
    (xi, yi, zi), (ai, bi, ci) = Li.base, Li.dir
    (xj, yj, zj), (aj, bj, cj) = Lj.base, Lj.dir
    lhs = F.mul(F.sub(F.det2(ai, bi, xj, yj), ci), F.sub(F.det2(aj, bj, xi, yi), cj))
    rhs = F.mul(F.sub(F.sub(zi, zj), F.det2(xi, yi, xj, yj)), F.det2(ai, bi, aj, bj))
    return lhs == rhs


def _check_pair_input(F: Field, Li: Line, Lj: Line) -> None:
    for L in (Li, Lj):
        if is_commuting_line(F, L):
            raise CommutingLineInput(f"{L.to_text()} is a commuting line")
    if same_line(F, Li, Lj):
        raise ValueError("the two lines coincide")


def pair_factorizability(F: Field, Li: Line, Lj: Line) -> bool:
    """The factorizability identity with det[[a_i, b_i], [a_j, b_j]] != 0.

    A parallel pair (delta = 0) only qualifies when the cross equation has no
    solution at all (beta = gamma = 0, alpha != 0), so nothing has to be
    excluded; a parallel pair with beta or gamma nonzero is rejected.
    """
    _check_pair_input(F, Li, Lj)
    alpha, beta, gamma, delta = pair_coefficients(F, Li, Lj)
    if delta == 0:
        return beta == 0 and gamma == 0 and alpha != 0
    return factorizability_identity(F, Li, Lj)


def pair_admissible(F: Field, Li: Line, Lj: Line) -> bool:
    """Whether the cross-commuting equation is a product of univariate linear factors.

    Covers the non-degenerate case of :func:`pair_factorizability` and the
    parallel case delta = 0 where the equation depends on one parameter only or
    has no solution at all.
    """
    _check_pair_input(F, Li, Lj)
    alpha, beta, gamma, delta = pair_coefficients(F, Li, Lj)
    if (alpha, beta, gamma, delta) == (0, 0, 0, 0):
        return False
    return F.mul(alpha, delta) == F.mul(beta, gamma)


def pair_exclusions(F: Field, Li: Line, Lj: Line) -> tuple[set[int], set[int]]:
    """Parameter values to drop from L_i and L_j so no cross pair commutes."""
    alpha, beta, gamma, delta = pair_coefficients(F, Li, Lj)
    if F.mul(alpha, delta) != F.mul(beta, gamma) or (alpha, beta, gamma, delta) == (0, 0, 0, 0):
        raise FactorizabilityFailed(0, 1)
    if delta:
        return {F.neg(F.div(gamma, delta))}, {F.neg(F.div(beta, delta))}
    if beta and not gamma:
        return {F.neg(F.div(alpha, beta))}, set()
    if gamma and not beta:
        return set(), {F.neg(F.div(alpha, gamma))}
    return set(), set()


def cross_commuting_params(F: Field, Li: Line, Lj: Line) -> set[tuple[int, int]]:
    """All (t_i, t_j) solving the bilinear equation, found by solving for t_j row by row."""
    alpha, beta, gamma, delta = pair_coefficients(F, Li, Lj)
    out = set()
    for s in F.elements():
        lin = F.add(gamma, F.mul(delta, s))
        const = F.add(alpha, F.mul(beta, s))
        if lin:
            out.add((s, F.neg(F.div(const, lin))))
        elif const == 0:
            out.update((s, t) for t in F.elements())
    return out


# --- configurations of lines -------------------------------------------------

@dataclass
class LineConfig:
    lines: list[Line]
    excluded: list[set[int]]
    info: dict = dc_field(default_factory=dict)

    @property
    def m(self) -> int:
        return len(self.lines)

    def write(self, out: TextIO, F: Field) -> None:
        out.write(f"{self.m} {F.q} {F.modulus_index:x}\n")
        for L in self.lines:
            out.write(L.to_text() + "\n")
        for i, ex in enumerate(self.excluded):
            for t in sorted(ex):
                out.write(f"exclude {i} {t}\n")

    def to_text(self, F: Field) -> str:
        import io

        buf = io.StringIO()
        self.write(buf, F)
        return buf.getvalue()


def read_config(text: str) -> tuple[Field, LineConfig]:
    rows = [r for r in text.splitlines() if r.strip()]
    m_s, q_s, modhex = rows[0].split()
    m = int(m_s)
    from .gf import _split_prime_power

    p, r = _split_prime_power(int(q_s))
    F = parse_field(f"{p}^{r}:{modhex}")
    lines = [parse_line(row) for row in rows[1:1 + m]]
    excluded: list[set[int]] = [set() for _ in range(m)]
    for row in rows[1 + m:]:
        tag, i, t = row.split()
        if tag != "exclude":
            raise ValueError(f"unexpected row {row!r}")
        excluded[int(i)].add(int(t))
    return F, LineConfig(lines, excluded)


def config_from_lines(F: Field, lines: Sequence[Line], strict: bool = False) -> LineConfig:
    """Validate a family of lines and compute the parameter exclusions.

    ``strict`` demands :func:`pair_factorizability` for every pair; otherwise
    :func:`pair_admissible` suffices.
    """
    lines = list(lines)
    excluded: list[set[int]] = [set() for _ in lines]
    for i, j in itertools.combinations(range(len(lines)), 2):
        ok = (pair_factorizability if strict else pair_admissible)(F, lines[i], lines[j])
        if not ok:
            raise FactorizabilityFailed(i, j)
        ei, ej = pair_exclusions(F, lines[i], lines[j])
        excluded[i] |= ei
        excluded[j] |= ej
    if len(lines) == 1 and is_commuting_line(F, lines[0]):
        raise CommutingLineInput("single commuting line")
    return LineConfig(lines, excluded)


def build_config_set(F: Field, cfg: LineConfig) -> list[Point3]:
    """Union of the lines minus excluded parameters, validated pairwise non-commuting.

    Points shared by several lines are kept once.
    """
    seen: dict[Point3, int] = {}
    for i, (L, ex) in enumerate(zip(cfg.lines, cfg.excluded)):
        for t in F.elements():
            if t not in ex:
                seen.setdefault(point_at(F, L, t), i)
    pts = list(seen)
    bad = first_commuting_pair(pts, relation(F))
    if bad is not None:
        raise FactorizabilityFailed(seen[bad[0]], seen[bad[1]],
                                    f"points {bad[0].coords()} and {bad[1].coords()} commute")
    return pts


def size_floor(m: int, q: int) -> int:
    """mq minus the worst-case exclusions m(m-1) and intersection over-count m*C(m,2)."""
    return m * q - m * (m - 1) - m * (m * (m - 1) // 2)


# --- explicit constructions ---------------------------------------------------

def two_line_config(F: Field) -> LineConfig:
    """x = t, y = 1 + t, z = 2t and x = t, y = 2 + t, z = 1 + t: 2q points in any characteristic."""
    lines = [line_from_ints(F, (0, 1, 0), (1, 1, 2)), line_from_ints(F, (0, 2, 1), (1, 1, 1))]
    return config_from_lines(F, lines)


def two_line_config_M(F: Field) -> LineConfig:
    """x = 1 + t, y = 2, z = t and x = 2t, y = 1, z = 4t: 2q points inside M (odd q)."""
    if F.p == 2:
        raise UnsupportedField("needs odd characteristic")
    lines = [line_from_ints(F, (1, 2, 0), (1, 0, 1)), line_from_ints(F, (0, 1, 0), (2, 0, 4))]
    return config_from_lines(F, lines)


def three_line_config(F: Field) -> LineConfig:
    """Three parallel lines with direction (1, 1, *) giving at least 3q - 3 points."""
    if F.p == 2:
        raise UnsupportedField("needs odd characteristic")
    lines = [line_from_ints(F, (1, 1, 0), (1, 1, 1)),
             line_from_ints(F, (0, 1, 0), (1, 1, -1)),
             line_from_ints(F, (1, 0, 0), (1, 1, 0))]
    return config_from_lines(F, lines)


def construct_3line_plus_point(F: Field) -> list[Point3]:
    """3q - 2 pairwise non-commuting points: the three-line set plus one point of a commuting line.

    The extra point is (2, 5, -2) when 3 does not divide q, and (s, -1, -s) with s
    the smallest element outside F_3 otherwise.
    """
    if F.q <= 3 or F.p == 2:
        raise UnsupportedField("needs q > 3 and odd characteristic")
    pts = build_config_set(F, three_line_config(F))
    if F.p != 3:
        extra = Point3(F.from_int(2), F.from_int(5), F.from_int(-2), "Q")
    else:
        s = next(a for a in F.elements() if not F.in_prime_subfield(a))
        extra = Point3(s, F.from_int(-1), F.neg(s), "Q")
    if extra in pts or any(cc(F, extra, p) for p in pts):
        raise AssertionError(f"extension point {extra.coords()} commutes with the three-line set")
    return pts + [extra]


def _check_triple(F: Field, b1: int, b2: int, b3: int, r3: int, soft: bool = True) -> None:
    """Raise BadTriple naming the failed condition.

    The square and plane conditions only guarantee a usable root for b4; with
    ``soft=False`` they are skipped and the construction decides.
    """
    bs = (b1, b2, b3)
    if 0 in bs or len(set(bs)) < 3:
        raise BadTriple("b1, b2, b3 must be distinct and nonzero")
    if not soft:
        return
    for i, j, k in ((0, 1, 2), (1, 0, 2), (2, 0, 1)):
        if F.mul(bs[i], bs[i]) == F.mul(bs[j], bs[k]):
            raise BadTriple(f"b{i + 1}^2 = b{j + 1} b{k + 1}")
    two = F.from_int(2)
    for sgn in (r3, F.neg(r3)):
        plus, minus = F.add(1, sgn), F.sub(1, sgn)
        # b3(1 +- s) + b2(1 -+ s) = 2 b1 and its cyclic shifts
        for x, y, w in ((b3, b2, b1), (b1, b3, b2), (b2, b1, b3)):
            if F.add(F.mul(x, plus), F.mul(y, minus)) == F.mul(two, w):
                raise BadTriple("triple lies on one of the excluded planes")


def _four_line_solution(F: Field, b: tuple[int, int, int], r3: int, sign: int):
    b1, b2, b3 = b
    d12, d23, d31 = F.sub(b1, b2), F.sub(b2, b3), F.sub(b3, b1)
    sq = lambda v: F.mul(v, v)  # noqa: E731
    den = F.add(F.add(sq(d23), sq(d31)), sq(d12))
    if den == 0:
        return None
    num = F.add(F.add(F.mul(b1, sq(d23)), F.mul(b2, sq(d31))), F.mul(b3, sq(d12)))
    disc = F.mul(F.mul(F.mul(d12, d23), d31), r3)
    num = F.add(num, disc) if sign > 0 else F.sub(num, disc)
    b4 = F.div(num, den)
    if b4 in b or b4 == 0:
        return None
    A = F.div(F.sub(b1, b4), F.sub(b3, b1))
    B = F.div(F.sub(b2, b4), F.sub(b1, b2))
    C = F.div(F.sub(b3, b4), F.sub(b2, b3))
    z4 = None
    for top, bottom in ((F.sub(A, B), F.sub(F.mul(b3, A), F.mul(b1, B))),
                        (F.sub(A, C), F.sub(F.mul(b3, A), F.mul(b2, C)))):
        if bottom:
            z4 = F.div(top, bottom)
            break
    if z4 is None:
        return None
    xs = (F.inv(b3), F.inv(b1), F.inv(b2))
    x4 = None
    for bi, xi in zip(b, xs):
        d = F.sub(1, F.mul(bi, xi))
        if d:
            frac = F.div(F.mul(F.sub(z4, xi), F.sub(bi, b4)), d)
            x4 = F.div(F.sub(1, frac), b4)
            break
    if x4 is None:
        return None
    # the three equations (1 - b4 x4)(1 - bi xi) = (z4 - xi)(bi - b4) must all hold
    for bi, xi in zip(b, xs):
        if F.mul(F.sub(1, F.mul(b4, x4)), F.sub(1, F.mul(bi, xi))) != F.mul(F.sub(z4, xi), F.sub(bi, b4)):
            return None
    if z4 in xs:
        return None
    return b4, z4, x4, xs


def construct_4line(F: Field, b1: int | None = None, b2: int | None = None,
                    b3: int | None = None) -> LineConfig:
    """Four horizontal non-commuting lines whose union is almost non-commuting.

    Lines are x = x_i + t, y = 1 + b_i t, z = z_i with x_1 = 1/b3, x_2 = 1/b1,
    x_3 = 1/b2, z_i = x_i for i <= 3, and (b4, z4, x4) solved from the remaining
    factorizability equations; the "+" root for b4 is tried before the "-" root.
    Without a triple, the first one in index order meeting every condition is
    used, falling back to the first one for which the construction succeeds.  An explicit triple only has to be distinct and nonzero; the square
    and plane conditions are reported (as BadTriple) when both roots degenerate.
    """
    if F.p in (2, 3):
        raise UnsupportedField("needs characteristic other than 2 and 3")
    if not minus_three_is_square(F):
        raise MinusThreeNotSquare(f"-3 is not a square in F_{F.q}")
    r3 = F.sqrt(F.neg(F.from_int(3)))
    if b1 is None or b2 is None or b3 is None:
        # first triples meeting every condition, then any triple that works
        for strict in (True, False):
            for t in itertools.permutations(F.nonzero(), 3):
                try:
                    _check_triple(F, *t, r3, soft=strict)
                    return construct_4line(F, *t)
                except (BadTriple, DegenerateDenominators, FactorizabilityFailed, CommutingLineInput):
                    continue
        raise BadTriple(f"no admissible triple in F_{F.q}")
    b = (b1, b2, b3)
    _check_triple(F, b1, b2, b3, r3, soft=False)
    for sign in (1, -1):
        sol = _four_line_solution(F, b, r3, sign)
        if sol is None:
            continue
        b4, z4, x4, xs = sol
        lines = [Line((xi, 1, xi), (1, bi, 0)) for bi, xi in zip(b, xs)]
        lines.append(Line((x4, 1, z4), (1, b4, 0)))
        cfg = config_from_lines(F, lines, strict=True)
        cfg.info = {"b": (b1, b2, b3, b4), "z4": z4, "x4": x4, "sqrt_minus_3": r3,
                    "root": "+" if sign > 0 else "-"}
        build_config_set(F, cfg)
        return cfg
    _check_triple(F, b1, b2, b3, r3)
    raise DegenerateDenominators(f"both roots for b4 degenerate for triple {b}")


def format_line_equations(F: Field, L: Line) -> str:
    """``x=5+t,y=1+t,z=5`` style rendering (canonical indices as coefficients)."""
    parts = []
    for name, c0, c1 in zip("xyz", L.base, L.dir):
        if c1 == 0:
            parts.append(f"{name}={c0}")
            continue
        term = "t" if c1 == 1 else f"{c1}t"
        parts.append(f"{name}={term}" if c0 == 0 else f"{name}={c0}+{term}")
    return ",".join(parts)


# --- algebraic descriptions -----------------------------------------------------

LineData = tuple[int, int, int, int, int, int]  # (a, b, c, x, y, z)


@dataclass
class VmWitness:
    lines: list[LineData]
    U: int
    aux: dict[tuple[int, int], tuple[int, int, int, int]]


def det3(F: Field, m: Sequence[Sequence[int]]) -> int:
    (a, b, c), (d, e, f), (g, h, i) = m
    t1 = F.mul(a, F.det2(e, f, h, i))
    t2 = F.mul(b, F.det2(d, f, g, i))
    t3 = F.mul(c, F.det2(d, e, g, h))
    return F.add(F.sub(t1, t2), t3)


def _pair_minors(F: Field, li: LineData, lj: LineData) -> tuple[int, int, int, int]:
    ai, bi, ci, xi, yi, zi = li
    _, _, _, xj, yj, zj = lj
    p0 = (xi, yi, zi)
    p1 = (F.add(ai, xi), F.add(bi, yi), F.add(ci, zi))
    p2 = (xj, yj, zj)
    rows = (p0, p1, p2)
    return (det3(F, rows),
            det3(F, [(r[0], r[1], 1) for r in rows]),
            det3(F, [(r[0], r[2], 1) for r in rows]),
            det3(F, [(r[1], r[2], 1) for r in rows]))


def _line_data(L: Line) -> LineData:
    return (*L.dir, *L.base)


def _factor_eq(F: Field, li: LineData, lj: LineData) -> bool:
    return factorizability_identity(F, Line(li[3:], li[:3]), Line(lj[3:], lj[:3]))


def vm_membership(F: Field, w: VmWitness) -> bool:
    """Whether the witness satisfies the three families of equations defining V_m."""
    m = len(w.lines)
    for i, j in itertools.combinations(range(m), 2):
        if not _factor_eq(F, w.lines[i], w.lines[j]):
            return False
    prod = 1
    for a, b, c, x, y, z in w.lines:
        prod = F.mul(prod, F.sub(c, F.det2(a, b, x, y)))
    if F.mul(prod, w.U) != 1:
        return False
    for i, j in itertools.combinations(range(m), 2):
        minors = _pair_minors(F, w.lines[i], w.lines[j])
        vars_ = w.aux.get((i, j), (0, 0, 0, 0))
        term = 1
        for d, v in zip(minors, vars_):
            term = F.mul(term, F.sub(F.mul(d, v), 1))
        if term != 0:
            return False
    return True


def _rebase_off_others(F: Field, lines: Sequence[Line]) -> list[Line]:
    out = []
    all_pts = [set(points(F, L)) for L in lines]
    for i, L in enumerate(lines):
        others = set().union(*(s for k, s in enumerate(all_pts) if k != i)) if len(lines) > 1 else set()
        for t in F.elements():
            p = point_at(F, L, t)
            if p not in others:
                out.append(Line(p.coords(), L.dir))
                break
        else:
            out.append(L)
    return out


def assemble_vm_witness(F: Field, lines: Sequence[Line], rebase: bool = True) -> VmWitness:
    """Solve the auxiliary variables of V_m for a family of lines.

    Base points are first moved off the other lines; U inverts the product of
    line defects, and in each pair the first nonzero 3x3 minor gets its inverse.
    """
    if rebase:
        lines = _rebase_off_others(F, lines)
    data = [_line_data(L) for L in lines]
    prod = 1
    for a, b, c, x, y, z in data:
        prod = F.mul(prod, F.sub(c, F.det2(a, b, x, y)))
    U = F.inv(prod) if prod else 0
    aux = {}
    for i, j in itertools.combinations(range(len(data)), 2):
        minors = _pair_minors(F, data[i], data[j])
        vals = [0, 0, 0, 0]
        for k, d in enumerate(minors):
            if d:
                vals[k] = F.inv(d)
                break
        aux[(i, j)] = tuple(vals)
    return VmWitness(data, U, aux)


def rank(F: Field, rows: Sequence[Sequence[int]]) -> int:
    mat = [list(r) for r in rows]
    rk, ncols = 0, len(mat[0]) if mat else 0
    for col in range(ncols):
        piv = next((r for r in range(rk, len(mat)) if mat[r][col]), None)
        if piv is None:
            continue
        mat[rk], mat[piv] = mat[piv], mat[rk]
        inv = F.inv(mat[rk][col])
        for r in range(len(mat)):
            if r != rk and mat[r][col]:
                f = F.mul(mat[r][col], inv)
                mat[r] = [F.sub(v, F.mul(f, w)) for v, w in zip(mat[r], mat[rk])]
        rk += 1
    return rk


def om_membership(F: Field, data: Sequence[LineData]) -> bool:
    """Membership in O_m: non-commuting lines, pairwise rank >= 3, factorizability."""
    for a, b, c, x, y, z in data:
        if (a, b, c) == (0, 0, 0) or F.sub(c, F.det2(a, b, x, y)) == 0:
            return False
    for i, j in itertools.combinations(range(len(data)), 2):
        li, lj = data[i], data[j]
        rows = []
        for a, b, c, x, y, z in (li, lj):
            rows.append((x, y, z, 1))
            rows.append((F.add(a, x), F.add(b, y), F.add(c, z), 1))
        if rank(F, rows) < 3:
            return False
        if not _factor_eq(F, li, lj):
            return False
    return True


def gl2_act_data(F: Field, A: Mat2, d: LineData) -> LineData:
    """A.(a, b, c, x, y, z) = (A(a, b), det(A) c, A(x, y), det(A) z)."""
    det = det_mat2(F, A)
    if det == 0:
        raise SingularMatrix("matrix is not invertible")
    a, b = _apply2(F, A, d[0], d[1])
    x, y = _apply2(F, A, d[3], d[4])
    return (a, b, F.mul(det, d[2]), x, y, F.mul(det, d[5]))


# --- search ------------------------------------------------------------------------

def search_m_lines(F: Field, m: int, budget: int, seed: int = 0) -> LineConfig | None:
    """Look for m lines whose pairs all pass the admissibility test.

    Half of the budget goes to the horizontal ansatz (direction (1, b, 0), base
    (x, 1, z)), where z of each new line is solved from the first line and the
    other pairs are checked; the rest to fully random lines added one at a time.
    Every evaluated candidate line costs one unit of budget.  All randomness
    comes from ``random.Random(seed)``.
    """
    if m < 2 or budget < 1:
        raise ValueError("need m >= 2 and budget >= 1")
    rng = random.Random(seed)
    spent = 0
    structured_budget = budget // 2 if budget > 1 else 1

    def accept(lines: list[Line], cand: Line) -> bool:
        if is_commuting_line(F, cand):
            return False
        for L in lines:
            if same_line(F, L, cand) or not pair_admissible(F, L, cand):
                return False
        return True

    # structured branch: DFS over (b, x) for each new line
    while spent < structured_budget:
        b0, x0, z0 = rng.randrange(1, F.q), rng.randrange(F.q), rng.randrange(F.q)
        first = Line((x0, 1, z0), (1, b0, 0))
        spent += 1
        if is_commuting_line(F, first):
            continue
        stack = [first]
        cands = list(itertools.product(F.elements(), F.elements()))
        rng.shuffle(cands)
        progress = True
        while len(stack) < m and progress and spent < structured_budget:
            progress = False
            for b, x in cands:
                if spent >= structured_budget:
                    break
                spent += 1
                if b == b0:
                    continue
                # (1 - b0 x0)(1 - b x) = (z0 - z)(b - b0) fixes z
                lhs = F.mul(F.sub(1, F.mul(b0, x0)), F.sub(1, F.mul(b, x)))
                z = F.sub(z0, F.div(lhs, F.sub(b, b0)))
                cand = Line((x, 1, z), (1, b, 0))
                if accept(stack, cand):
                    stack.append(cand)
                    progress = True
                    break
        if len(stack) == m:
            cfg = config_from_lines(F, stack)
            cfg.info = {"branch": "structured", "spent": spent, "seed": seed}
            return cfg

    # random branch
    stack: list[Line] = []
    while spent < budget:
        spent += 1
        base = tuple(rng.randrange(F.q) for _ in range(3))
        d = tuple(rng.randrange(F.q) for _ in range(3))
        if d == (0, 0, 0):
            continue
        cand = Line(base, d)
        if accept(stack, cand):
            stack.append(cand)
            if len(stack) == m:
                cfg = config_from_lines(F, stack)
                cfg.info = {"branch": "random", "spent": spent, "seed": seed}
                return cfg
        elif stack and rng.random() < 1.0 / (F.q ** 2):
            stack.pop()
    return None


def enumerate_lines(F: Field) -> list[Line]:
    """Every line of F_q^3 once, in canonical form."""
    seen = set()
    out = []
    for base in itertools.product(F.elements(), repeat=3):
        for d in itertools.product(F.elements(), repeat=3):
            if d == (0, 0, 0) or next(v for v in d if v) != 1:
                continue
            L = canonical(F, Line(base, d))
            if L not in seen:
                seen.add(L)
                out.append(L)
    return out
