"""Exact arithmetic in F_q, q = p^r.

Elements are represented by their canonical index in ``range(q)``: for a prime
field the residue itself, for an extension field the coefficient vector of the
polynomial representative read as a base-p integer (constant term is the least
significant digit).  Hot paths in the rest of the package work directly on these
ints through the :class:`Field` methods; :class:`FieldElement` wraps an index
with operator overloading for interactive use.

Extension fields use exp/log tables plus a Zech-logarithm table for addition, so
every operation is a couple of list lookups.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from functools import lru_cache

from .errors import DivisionByZero, FieldTooLarge, MixedFields, NotIrreducible, NotPrime

MAX_Q = 1 << 20


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def _prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


# --- polynomials over F_p, coefficient lists with constant term first ---

def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mod(a: list[int], m: list[int], p: int) -> list[int]:
    a = _trim(list(a))
    dm = len(m) - 1
    inv_lead = pow(m[-1], p - 2, p)
    while len(a) - 1 >= dm:
        c = a[-1] * inv_lead % p
        shift = len(a) - 1 - dm
        for i, mc in enumerate(m):
            a[shift + i] = (a[shift + i] - c * mc) % p
        _trim(a)
    return a


def _poly_mulmod(a: list[int], b: list[int], m: list[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return _poly_mod(out, m, p)


def _poly_gcd(a: list[int], b: list[int], p: int) -> list[int]:
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, _poly_mod(a, b, p)
    return a


def _poly_sub(a: list[int], b: list[int], p: int) -> list[int]:
    n = max(len(a), len(b))
    a = a + [0] * (n - len(a))
    b = b + [0] * (n - len(b))
    return _trim([(x - y) % p for x, y in zip(a, b)])


def is_irreducible(modulus: list[int], p: int) -> bool:
    """Irreducibility of a monic polynomial over F_p.

    Uses the distinct-degree test: f of degree r is irreducible iff
    gcd(f, x^(p^k) - x) = 1 for every 1 <= k <= r // 2.
    """
    r = len(modulus) - 1
    if r < 1:
        return False
    if r == 1:
        return True
    x = [0, 1]
    xp = x
    for _ in range(r // 2):
        # xp <- xp^p mod f
        acc, base, e = [1], xp, p
        while e:
            if e & 1:
                acc = _poly_mulmod(acc, base, modulus, p)
            base = _poly_mulmod(base, base, modulus, p)
            e >>= 1
        xp = acc
        g = _poly_gcd(modulus, _poly_sub(xp, x, p), p)
        if len(g) > 1:
            return False
    return True


def _index_to_poly(k: int, p: int, r: int) -> list[int]:
    out = []
    for _ in range(r):
        k, d = divmod(k, p)
        out.append(d)
    return out


def _poly_to_index(c: list[int], p: int) -> int:
    k = 0
    for d in reversed(c):
        k = k * p + d
    return k


def smallest_irreducible(p: int, r: int) -> list[int]:
    """Lexicographically smallest monic irreducible of degree r over F_p.

    Coefficient lists are compared constant term first.
    """
    if r == 1:
        return [0, 1]
    for low in itertools.product(range(p), repeat=r):
        cand = list(low) + [1]
        if cand[0] == 0:
            continue
        if is_irreducible(cand, p):
            return cand
    raise NotIrreducible(f"no irreducible polynomial of degree {r} over F_{p}")  # pragma: no cover


class Field:
    """The finite field F_q with q = p^r, defined by a monic irreducible modulus."""

    def __init__(self, p: int, r: int, modulus: list[int]):
        self.p = p
        self.r = r
        self.modulus = tuple(modulus)
        self.q = p**r
        q = self.q
        if r == 1:
            self._inv = [0] + [pow(a, p - 2, p) for a in range(1, p)]
            self._neg = [(-a) % p for a in range(p)]
            return
        mod = list(modulus)
        g = self._find_generator(mod)
        exp = [0] * (2 * (q - 1))
        log = [0] * q
        cur = [1]
        gpoly = _index_to_poly(g, p, r)
        for e in range(q - 1):
            idx = _poly_to_index(cur, p)
            exp[e] = idx
            log[idx] = e
            cur = _poly_mulmod(cur, gpoly, mod, p)
        for e in range(q - 1, 2 * (q - 1)):
            exp[e] = exp[e - (q - 1)]
        neg = [_poly_to_index([(-d) % p for d in _index_to_poly(a, p, r)], p) for a in range(q)]
        # zech[d] = log(1 + g^d), or -1 when 1 + g^d = 0
        zech = [0] * (q - 1)
        for d in range(q - 1):
            digits = _index_to_poly(exp[d], p, r)
            digits[0] = (digits[0] + 1) % p
            s = _poly_to_index(digits, p)
            zech[d] = -1 if s == 0 else log[s]
        self.generator = g
        self._exp, self._log, self._neg, self._zech = exp, log, neg, zech

    def _find_generator(self, mod: list[int]) -> int:
        p, r, q = self.p, self.r, self.q
        factors = _prime_factors(q - 1)
        for g in range(2, q):
            gp = _index_to_poly(g, p, r)
            ok = True
            for f in factors:
                acc, base, e = [1], gp, (q - 1) // f
                while e:
                    if e & 1:
                        acc = _poly_mulmod(acc, base, mod, p)
                    base = _poly_mulmod(base, base, mod, p)
                    e >>= 1
                if acc == [1]:
                    ok = False
                    break
            if ok:
                return g
        raise AssertionError("multiplicative group has no generator")  # pragma: no cover

    # identity / hashing ---------------------------------------------------

    def __eq__(self, other):
        return isinstance(other, Field) and (self.p, self.r, self.modulus) == (
            other.p, other.r, other.modulus)

    def __hash__(self):
        return hash((self.p, self.r, self.modulus))

    def __repr__(self):
        return f"Field({self.describe()})"

    @property
    def modulus_index(self) -> int:
        return _poly_to_index(list(self.modulus), self.p)

    def describe(self) -> str:
        """Descriptor string ``p^r:modhex``."""
        return f"{self.p}^{self.r}:{self.modulus_index:x}"

    def modulus_str(self) -> str:
        terms = []
        for i in range(len(self.modulus) - 1, -1, -1):
            c = self.modulus[i]
            if c == 0:
                continue
            mono = "1" if i == 0 else ("x" if i == 1 else f"x^{i}")
            terms.append(mono if c == 1 and i > 0 else (f"{c}" if i == 0 else f"{c}{mono}"))
        return " + ".join(terms)

    # element helpers ------------------------------------------------------

    def elements(self) -> range:
        return range(self.q)

    def nonzero(self) -> range:
        return range(1, self.q)

    def from_int(self, k: int) -> int:
        """Image of the integer k in the prime subfield."""
        return k % self.p

    def element(self, rep: int) -> FieldElement:
        if not 0 <= rep < self.q:
            raise ValueError(f"index {rep} out of range for F_{self.q}")
        return FieldElement(self, rep)

    def in_prime_subfield(self, a: int) -> bool:
        return a < self.p

    # arithmetic on canonical indices -------------------------------------

    def add(self, a: int, b: int) -> int:
        if self.r == 1:
            return (a + b) % self.p
        if a == 0:
            return b
        if b == 0:
            return a
        la = self._log[a]
        z = self._zech[(self._log[b] - la) % (self.q - 1)]
        if z < 0:
            return 0
        return self._exp[la + z]

    def neg(self, a: int) -> int:
        return self._neg[a]

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self._neg[b])

    def mul(self, a: int, b: int) -> int:
        if self.r == 1:
            return a * b % self.p
        if a == 0 or b == 0:
            return 0
        return self._exp[self._log[a] + self._log[b]]

    def inv(self, a: int) -> int:
        if a == 0:
            raise DivisionByZero("inverse of zero")
        if self.r == 1:
            return self._inv[a]
        return self._exp[(self.q - 1 - self._log[a]) % (self.q - 1)]

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            a, e = self.inv(a), -e
        if e == 0:
            return 1
        if a == 0:
            return 0
        if self.r == 1:
            return pow(a, e, self.p)
        return self._exp[(self._log[a] * e) % (self.q - 1)]

    def det2(self, a: int, b: int, c: int, d: int) -> int:
        """Determinant of [[a, b], [c, d]]."""
        return self.sub(self.mul(a, d), self.mul(b, c))

    def is_square(self, a: int) -> bool:
        if a == 0 or self.p == 2:
            return True
        if self.r == 1:
            return pow(a, (self.p - 1) // 2, self.p) == 1
        return self._log[a] % 2 == 0

    def sqrt(self, a: int) -> int | None:
        """A square root of a, the one with the smaller index; None if a is a non-square."""
        if a == 0:
            return 0
        if not self.is_square(a):
            return None
        if self.r == 1:
            if self.p == 2:
                return a
            s = _tonelli_shanks(a, self.p)
            return min(s, self.p - s)
        if self.p == 2:
            # Frobenius is bijective: the unique root is a^(q/2)
            return self._exp[(self._log[a] * (self.q // 2)) % (self.q - 1)]
        s = self._exp[self._log[a] // 2]
        return min(s, self._neg[s])


def _tonelli_shanks(a: int, p: int) -> int:
    if p % 4 == 3:
        return pow(a, (p + 1) // 4, p)
    s, qq = 0, p - 1
    while qq % 2 == 0:
        qq //= 2
        s += 1
    z = 2
    while pow(z, (p - 1) // 2, p) != p - 1:
        z += 1
    m, c, t, r = s, pow(z, qq, p), pow(a, qq, p), pow(a, (qq + 1) // 2, p)
    while t != 1:
        i, t2 = 0, t
        while t2 != 1:
            t2 = t2 * t2 % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        m, c, t, r = i, b * b % p, t * b * b % p, r * b % p
    return r


@dataclass(frozen=True)
class FieldElement:
    """An element of a specific field, with arithmetic operators."""

    field: Field
    rep: int

    def _other(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise MixedFields(f"{self.field} vs {other.field}")
            return other.rep
        if isinstance(other, int):
            return self.field.from_int(other)
        return NotImplemented

    def _wrap(self, rep: int) -> FieldElement:
        return FieldElement(self.field, rep)

    def __add__(self, other):
        b = self._other(other)
        return self._wrap(self.field.add(self.rep, b))

    __radd__ = __add__

    def __sub__(self, other):
        return self._wrap(self.field.sub(self.rep, self._other(other)))

    def __rsub__(self, other):
        return self._wrap(self.field.sub(self._other(other), self.rep))

    def __mul__(self, other):
        return self._wrap(self.field.mul(self.rep, self._other(other)))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return self._wrap(self.field.div(self.rep, self._other(other)))

    def __rtruediv__(self, other):
        return self._wrap(self.field.div(self._other(other), self.rep))

    def __neg__(self):
        return self._wrap(self.field.neg(self.rep))

    def __pow__(self, e: int):
        return self._wrap(self.field.pow(self.rep, e))

    def inverse(self) -> FieldElement:
        return self._wrap(self.field.inv(self.rep))

    def is_square(self) -> bool:
        return self.field.is_square(self.rep)

    def sqrt(self) -> FieldElement | None:
        s = self.field.sqrt(self.rep)
        return None if s is None else self._wrap(s)

    def __bool__(self):
        return self.rep != 0

    def __int__(self):
        return self.rep

    def __repr__(self):
        return f"FieldElement({self.rep} in F_{self.field.q})"


def _check_pair(a: FieldElement, b: FieldElement) -> None:
    if a.field != b.field:
        raise MixedFields(f"{a.field} vs {b.field}")


def add(a: FieldElement, b: FieldElement) -> FieldElement:
    _check_pair(a, b)
    return a + b


def sub(a: FieldElement, b: FieldElement) -> FieldElement:
    _check_pair(a, b)
    return a - b


def mul(a: FieldElement, b: FieldElement) -> FieldElement:
    _check_pair(a, b)
    return a * b


def neg(a: FieldElement) -> FieldElement:
    return -a


def inv(a: FieldElement) -> FieldElement:
    return a.inverse()


def sqrt(a: FieldElement) -> FieldElement | None:
    return a.sqrt()


def is_square(a: FieldElement) -> bool:
    return a.is_square()


@lru_cache(maxsize=64)
def _cached_field(p: int, r: int, modulus: tuple[int, ...]) -> Field:
    return Field(p, r, list(modulus))


def make_field(p: int, r: int = 1, modulus: list[int] | None = None) -> Field:
    """Build F_{p^r}.

    Without a modulus, degree 1 uses ``x`` and higher degrees the
    lexicographically smallest monic irreducible (constant term compared first).
    Fields are cached, so equal arguments return the same object.
    """
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if r < 1:
        raise ValueError("extension degree must be >= 1")
    if p**r > MAX_Q:
        raise FieldTooLarge(f"q = {p}^{r} exceeds 2^20")
    if modulus is None:
        modulus = smallest_irreducible(p, r)
    else:
        modulus = [c % p for c in modulus]
        if len(modulus) != r + 1 or modulus[-1] != 1:
            raise NotIrreducible(f"modulus must be monic of degree {r}")
        if not is_irreducible(modulus, p):
            raise NotIrreducible(f"{modulus} is reducible over F_{p}")
    return _cached_field(p, r, tuple(modulus))


_DESCRIPTOR = re.compile(r"^\s*(\d+)(?:\^(\d+))?(?::([0-9a-fA-F]+))?\s*$")


def parse_field(desc: str | int) -> Field:
    """Parse ``p``, ``p^r`` or ``p^r:modhex``; a bare prime power like ``9`` is also accepted.

    ``modhex`` is the coefficient list of the modulus read as a base-p integer,
    written in hex, e.g. ``2^2:7`` is x^2 + x + 1.
    """
    if isinstance(desc, int):
        desc = str(desc)
    m = _DESCRIPTOR.match(desc)
    if not m:
        raise ValueError(f"bad field descriptor {desc!r}")
    base = int(m.group(1))
    if m.group(2) is not None:
        p, r = base, int(m.group(2))
    else:
        p, r = _split_prime_power(base)
    modulus = None
    if m.group(3) is not None:
        k = int(m.group(3), 16)
        modulus = _index_to_poly(k, p, r + 1)
        if _poly_to_index(modulus, p) != k:
            raise NotIrreducible(f"modulus {m.group(3)} has degree > {r}")
    return make_field(p, r, modulus)


def _split_prime_power(q: int) -> tuple[int, int]:
    for p in range(2, q + 1):
        if q % p == 0:
            r, n = 0, q
            while n % p == 0:
                n //= p
                r += 1
            if n != 1:
                raise NotPrime(f"{q} is not a prime power")
            if not is_prime(p):  # pragma: no cover - smallest divisor is prime
                raise NotPrime(f"{q} is not a prime power")
            return p, r
    raise NotPrime(f"{q} is not a prime power")


def field_of_order(q: int) -> Field:
    p, r = _split_prime_power(q)
    return make_field(p, r)


def minus_three_is_square(field: Field) -> bool:
    """Whether -3 is a square in the field (always true in characteristic 3, where -3 = 0)."""
    return field.is_square(field.neg(field.from_int(3)))
