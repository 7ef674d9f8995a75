"""Small finite fields GF(q) backed by log/antilog tables.

Elements are encoded as integers 0..q-1 whose base-p digits are the
polynomial coefficients (lowest degree first).
"""

from __future__ import annotations

from functools import lru_cache

from .errors import ConstructionError

MAX_ORDER = 32


def prime_power(q: int) -> tuple[int, int] | None:
    """Return (p, e) with q = p**e, or None."""
    if q < 2:
        return None
    p = next(d for d in range(2, q + 1) if q % d == 0)
    e, r = 0, q
    while r % p == 0:
        r //= p
        e += 1
    return (p, e) if r == 1 else None


def is_prime_power(q: int) -> bool:
    return prime_power(q) is not None


def _poly_mulmod(a, b, mod, p):
    # coefficient lists, lowest first; mod is monic
    prod = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                prod[i + j] = (prod[i + j] + x * y) % p
    deg = len(mod) - 1
    for i in range(len(prod) - 1, deg - 1, -1):
        c = prod[i]
        if c:
            for j in range(deg + 1):
                prod[i - deg + j] = (prod[i - deg + j] - c * mod[j]) % p
    out = prod[:deg] + [0] * max(0, deg - len(prod))
    return out


def _is_irreducible(mod, p):
    deg = len(mod) - 1
    # no roots and no factor of degree <= deg/2; brute force is fine for q <= 32
    for d in range(1, deg // 2 + 1):
        for code in range(p ** d):
            f = [(code // p**i) % p for i in range(d)] + [1]
            if _poly_divides(f, mod, p):
                return False
    return True


def _poly_divides(f, g, p):
    g = list(g)
    df = len(f) - 1
    inv = pow(f[-1], p - 2, p)
    for i in range(len(g) - 1, df - 1, -1):
        c = g[i] * inv % p
        if c:
            for j in range(df + 1):
                g[i - df + j] = (g[i - df + j] - c * f[j]) % p
    return not any(g[:df])


class GF:
    """Arithmetic tables for GF(q)."""

    def __init__(self, q: int):
        pe = prime_power(q)
        if pe is None:
            raise ConstructionError(f"{q} is not a prime power")
        if q > MAX_ORDER:
            raise ConstructionError(f"GF({q}) exceeds the supported order {MAX_ORDER}")
        self.q = q
        self.p, self.e = pe
        p, e = pe
        self.modulus = None
        if e > 1:
            for code in range(p**e):
                mod = [(code // p**i) % p for i in range(e)] + [1]
                if mod[0] and _is_irreducible(mod, p):
                    self.modulus = mod
                    break
        self.add_table = [[self._add(a, b) for b in range(q)] for a in range(q)]
        self.exp, self.log = self._build_logs()
        self.neg_table = [self.sub(0, a) for a in range(q)]

    def _digits(self, a):
        return [(a // self.p**i) % self.p for i in range(self.e)]

    def _undigits(self, ds):
        return sum(d * self.p**i for i, d in enumerate(ds))

    def _add(self, a, b):
        return self._undigits([(x + y) % self.p for x, y in zip(self._digits(a), self._digits(b))])

    def _slow_mul(self, a, b):
        if self.e == 1:
            return a * b % self.p
        return self._undigits(_poly_mulmod(self._digits(a), self._digits(b), self.modulus, self.p))

    def _build_logs(self):
        q = self.q
        for g in range(2 if q > 2 else 1, q):
            exp = [1]
            x = 1
            for _ in range(q - 2):
                x = self._slow_mul(x, g)
                exp.append(x)
            if len(set(exp)) == q - 1:
                log = [None] * q
                for i, v in enumerate(exp):
                    log[v] = i
                return exp, log
        raise ConstructionError(f"no primitive element found for GF({q})")  # pragma: no cover

    def add(self, a: int, b: int) -> int:
        return self.add_table[a][b]

    def sub(self, a: int, b: int) -> int:
        for c in range(self.q):
            if self.add_table[b][c] == a:
                return c
        raise AssertionError("unreachable")  # pragma: no cover

    def neg(self, a: int) -> int:
        return self.neg_table[a]

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return self.exp[(self.log[a] + self.log[b]) % (self.q - 1)]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of 0")
        return self.exp[(-self.log[a]) % (self.q - 1)]

    def elements(self) -> range:
        return range(self.q)


@lru_cache(maxsize=None)
def gf(q: int) -> GF:
    return GF(q)
