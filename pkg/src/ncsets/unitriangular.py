"""Unipotent upper-triangular matrices UU_n(F_q).

A :class:`UTMatrix` stores only the strict upper triangle as a flat tuple in
row-major order (a12, a13, ..., a1n, a23, ..., a_{n-1,n}).  Group enumeration is
lexicographic in that tuple, which fixes vertex numbering everywhere downstream.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field as dc_field
from functools import lru_cache
from typing import Iterable, Sequence

from .errors import DimensionMismatch, MixedFields, TooLarge, ZeroSuperdiagonal
from .gf import Field, parse_field

MAX_N = 8
ENUMERATION_LIMIT = 1 << 20


@lru_cache(maxsize=None)
def _layout(n: int) -> tuple[dict[tuple[int, int], int], tuple[tuple[int, int], ...]]:
    pos = {}
    keys = []
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            pos[(i, j)] = len(keys)
            keys.append((i, j))
    return pos, tuple(keys)


@lru_cache(maxsize=None)
def _commute_plan(n: int) -> tuple[tuple[tuple[int, int], ...], ...]:
    # for each (i, j) with j > i + 1, the flat index pairs (ik, kj) for i < k < j
    pos, _ = _layout(n)
    plan = []
    for i in range(1, n + 1):
        for j in range(i + 2, n + 1):
            plan.append(tuple((pos[(i, k)], pos[(k, j)]) for k in range(i + 1, j)))
    return tuple(plan)


def num_entries(n: int) -> int:
    return n * (n - 1) // 2


@dataclass(frozen=True)
class UTMatrix:
    """An n x n unipotent upper-triangular matrix over a finite field."""

    n: int
    field: Field = dc_field(repr=False)
    entries: tuple[int, ...]

    def __post_init__(self):
        if not 1 <= self.n <= MAX_N:
            raise ValueError(f"n must be in 1..{MAX_N}")
        if len(self.entries) != num_entries(self.n):
            raise ValueError(f"expected {num_entries(self.n)} entries, got {len(self.entries)}")

    @classmethod
    def from_dict(cls, n: int, field: Field, values: dict[tuple[int, int], int]) -> UTMatrix:
        pos, _ = _layout(n)
        ent = [0] * num_entries(n)
        for (i, j), v in values.items():
            ent[pos[(i, j)]] = v
        return cls(n, field, tuple(ent))

    @classmethod
    def from_superdiagonal(cls, field: Field, diag: Sequence[int]) -> UTMatrix:
        n = len(diag) + 1
        return cls.from_dict(n, field, {(i, i + 1): d for i, d in enumerate(diag, start=1)})

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        if i == j:
            return 1
        if j < i:
            return 0
        return self.entries[_layout(self.n)[0][(i, j)]]

    def superdiagonal(self) -> tuple[int, ...]:
        return tuple(self[i, i + 1] for i in range(1, self.n))

    def dense(self) -> list[list[int]]:
        return [[self[i, j] for j in range(1, self.n + 1)] for i in range(1, self.n + 1)]

    def is_identity(self) -> bool:
        return not any(self.entries)

    def to_text(self) -> str:
        return f"{self.n};{self.field.q};" + ",".join(str(e) for e in self.entries)


def parse_matrix(text: str, field: Field | None = None) -> UTMatrix:
    """Parse the ``n;q;a12,a13,...`` text format."""
    n_s, q_s, body = text.strip().split(";")
    n, q = int(n_s), int(q_s)
    if field is None:
        field = parse_field(q_s)
    elif field.q != q:
        raise MixedFields(f"matrix is over F_{q}, field is F_{field.q}")
    entries = tuple(int(v) for v in body.split(",")) if body else ()
    return UTMatrix(n, field, entries)


def _check(a: UTMatrix, b: UTMatrix) -> None:
    if a.n != b.n:
        raise DimensionMismatch(f"{a.n} vs {b.n}")
    if a.field != b.field:
        raise MixedFields(f"{a.field} vs {b.field}")


def identity(n: int, field: Field) -> UTMatrix:
    return UTMatrix(n, field, (0,) * num_entries(n))


def mul(a: UTMatrix, b: UTMatrix) -> UTMatrix:
    _check(a, b)
    F, n = a.field, a.n
    pos, keys = _layout(n)
    ae, be = a.entries, b.entries
    out = []
    for i, j in keys:
        s = F.add(ae[pos[(i, j)]], be[pos[(i, j)]])
        for k in range(i + 1, j):
            s = F.add(s, F.mul(ae[pos[(i, k)]], be[pos[(k, j)]]))
        out.append(s)
    return UTMatrix(n, F, tuple(out))


def inverse(a: UTMatrix) -> UTMatrix:
    """Inverse by back-substitution on a*b = I, one superdiagonal band at a time."""
    F, n = a.field, a.n
    pos, keys = _layout(n)
    ae = a.entries
    be = [0] * len(keys)
    for d in range(1, n):
        for i in range(1, n - d + 1):
            j = i + d
            # 0 = a_ij + b_ij + sum_{i<k<j} a_ik b_kj
            s = ae[pos[(i, j)]]
            for k in range(i + 1, j):
                s = F.add(s, F.mul(ae[pos[(i, k)]], be[pos[(k, j)]]))
            be[pos[(i, j)]] = F.neg(s)
    return UTMatrix(n, F, tuple(be))


def commutes(a: UTMatrix, b: UTMatrix) -> bool:
    """Determinant-sum criterion: for all i < j, sum_k det[[a_ik, b_ik], [a_kj, b_kj]] = 0."""
    _check(a, b)
    F = a.field
    ae, be = a.entries, b.entries
    add, mul_, sub = F.add, F.mul, F.sub
    for terms in _commute_plan(a.n):
        s = 0
        for ik, kj in terms:
            s = add(s, sub(mul_(ae[ik], be[kj]), mul_(be[ik], ae[kj])))
        if s:
            return False
    return True


def phi(a: UTMatrix) -> UTMatrix:
    """The involutive anti-automorphism (phi A)_ij = a_{n-j+1, n-i+1}."""
    n = a.n
    return UTMatrix.from_dict(n, a.field, {(i, j): a[n - j + 1, n - i + 1]
                                           for i in range(1, n + 1) for j in range(i + 1, n + 1)})


def group_order(n: int, field: Field) -> int:
    return field.q ** num_entries(n)


def enumerate_group(n: int, field: Field, limit: int = ENUMERATION_LIMIT) -> list[UTMatrix]:
    """All of UU_n(F_q), lexicographic in the flat entry tuple."""
    if group_order(n, field) > limit:
        raise TooLarge(f"|UU_{n}(F_{field.q})| = {group_order(n, field)} exceeds {limit}")
    return [UTMatrix(n, field, e) for e in itertools.product(range(field.q), repeat=num_entries(n))]


def random_matrix(n: int, field: Field, rng: random.Random) -> UTMatrix:
    return UTMatrix(n, field, tuple(rng.randrange(field.q) for _ in range(num_entries(n))))


def has_nonzero_superdiagonal(a: UTMatrix) -> bool:
    return all(a.superdiagonal())


def s0_set(n: int, field: Field) -> list[UTMatrix]:
    """Elements of UU_n(F_q) whose superdiagonal entries are all nonzero."""
    return [a for a in enumerate_group(n, field) if has_nonzero_superdiagonal(a)]


def centralizer(a: UTMatrix, ambient: Iterable[UTMatrix]) -> list[UTMatrix]:
    return [b for b in ambient if commutes(a, b)]


@dataclass
class CentralizerClass:
    representative: UTMatrix
    members: list[UTMatrix]
    class_id: int


def centralizer_classes(s: Sequence[UTMatrix], ambient: Sequence[UTMatrix]) -> list[CentralizerClass]:
    """Partition s by equality of centralizers inside ambient.

    Centralizers are encoded as bitsets over ambient and used as dict keys, so
    hash collisions are resolved by full comparison.  Classes are numbered by
    their smallest member index in s; the representative is that member.
    """
    buckets: dict[int, list[UTMatrix]] = {}
    for x in s:
        mask = 0
        for k, y in enumerate(ambient):
            if commutes(x, y):
                mask |= 1 << k
        buckets.setdefault(mask, []).append(x)
    return [CentralizerClass(members[0], members, cid) for cid, members in enumerate(buckets.values())]


def conjugate_to_superdiagonal_form(x: UTMatrix) -> tuple[UTMatrix, UTMatrix]:
    """Return (xt, u) with xt the superdiagonal part of x and u^-1 x u = xt.

    Solves x u = u xt band by band.  In band e the unknowns are u_{i,i+e}; the
    equation at (i, i+e+1) reads

        x_{i,i+1} u_{i+1,i+e+1} = x_{i+e,i+e+1} u_{i,i+e} - x_{i,i+e+1}
                                   - sum_{i+1<k<i+e+1} x_{ik} u_{k,i+e+1}

    so fixing u_{1,1+e} = 0 determines the rest of the band.
    """
    if not has_nonzero_superdiagonal(x):
        raise ZeroSuperdiagonal("all superdiagonal entries must be nonzero")
    F, n = x.field, x.n
    xt = UTMatrix.from_superdiagonal(F, x.superdiagonal()) if n > 1 else x
    u: dict[tuple[int, int], int] = {}

    def U(i, j):
        return 1 if i == j else u.get((i, j), 0)

    for e in range(1, n - 1):
        u[(1, 1 + e)] = 0
        for i in range(1, n - e):
            j = i + e + 1
            rhs = F.sub(F.mul(x[j - 1, j], U(i, j - 1)), x[i, j])
            for k in range(i + 2, j):
                rhs = F.sub(rhs, F.mul(x[i, k], U(k, j)))
            u[(i + 1, j)] = F.div(rhs, x[i, i + 1])
    return xt, UTMatrix.from_dict(n, F, u)


def first_row_parametrization(xt: UTMatrix, first_row: Sequence[int]) -> UTMatrix:
    """Element of C(xt) with the given first row (y_12, ..., y_1n).

    For xt with only a nonzero superdiagonal the centralizer is parametrised by
    y_ik = y_{1,k-i+1} * prod_{l=1}^{i-1} x_{k-i+l, k-i+l+1} / x_{l, l+1}.
    """
    F, n = xt.field, xt.n
    vals = {}
    for k in range(2, n + 1):
        vals[(1, k)] = first_row[k - 2]
    for i in range(2, n + 1):
        for k in range(i + 1, n + 1):
            v = vals[(1, k - i + 1)]
            for l in range(1, i):
                v = F.mul(v, F.div(xt[k - i + l, k - i + l + 1], xt[l, l + 1]))
            vals[(i, k)] = v
    return UTMatrix.from_dict(n, F, vals)


def assert_abelian_centralizer(x: UTMatrix, sample: int | None = None, seed: int = 0) -> bool:
    """Check that C(x) is abelian and matches the first-row parametrisation.

    C(x) is taken over the whole group when it can be enumerated; otherwise it is
    built as u C(xt) u^-1 from the parametrisation and ``sample`` random pairs are
    checked.  Returns True iff every check passes.
    """
    if not has_nonzero_superdiagonal(x):
        raise ZeroSuperdiagonal("abelian-centralizer check needs a nonzero superdiagonal")
    F, n = x.field, x.n
    xt, u = conjugate_to_superdiagonal_form(x)
    uinv = inverse(u)
    param = {first_row_parametrization(xt, row)
             for row in itertools.product(range(F.q), repeat=n - 1)}
    if len(param) != F.q ** (n - 1):
        return False
    if not all(commutes(y, xt) for y in param):
        return False
    conj = [mul(mul(u, y), uinv) for y in param]
    if group_order(n, F) <= ENUMERATION_LIMIT // 16:
        group = enumerate_group(n, F)
        if set(centralizer(xt, group)) != param:
            return False
        if set(centralizer(x, group)) != set(conj):
            return False
    elif not all(commutes(y, x) for y in conj):
        return False
    if sample is None:
        members = list(conj)
        for a, b in itertools.combinations(members, 2):
            if not commutes(a, b):
                return False
        return True
    rng = random.Random(seed)
    for _ in range(sample):
        if not commutes(rng.choice(conj), rng.choice(conj)):
            return False
    return True
