"""The finite field F_q, q = p^f, with elements encoded as integers.

An element is the integer ``sum(d_i * p**i)`` whose base-``p`` digits
``d_i`` are the coefficients of its residue polynomial modulo the field's
modulus.  Thus ``0`` and ``1`` are the additive and multiplicative
identities and, for ``f = 1``, codes coincide with residues mod ``p``.
All element operations accept and return numpy integer arrays.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import cached_property, lru_cache

import numpy as np
from sympy import factorint, isprime
from sympy.polys.domains import ZZ
from sympy.polys.galoistools import gf_irreducible_p

from ..errors import NotPrime, ParameterOutOfRange, TooLarge

__all__ = ["FqField", "make_field", "parse_field", "MAX_ORDER", "TABLE_LIMIT"]

MAX_ORDER = 2**20
# full q x q addition / multiplication tables are built up to this order
TABLE_LIMIT = 1024


def _poly_mulmod(a: list[int], b: list[int], modulus: tuple[int, ...], p: int) -> list[int]:
    """Product of two residues (low-to-high digit lists) modulo a monic polynomial."""
    f = len(modulus) - 1
    prod = [0] * (2 * f - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                prod[i + j] = (prod[i + j] + ai * bj) % p
    for k in range(len(prod) - 1, f - 1, -1):
        c = prod[k]
        if c:
            for j in range(f + 1):
                prod[k - f + j] = (prod[k - f + j] - c * modulus[j]) % p
    return prod[:f]


def _is_irreducible(modulus: tuple[int, ...], p: int) -> bool:
    # galoistools wants high-to-low coefficients
    return bool(gf_irreducible_p([ZZ(c) for c in reversed(modulus)], p, ZZ))


@dataclass(frozen=True)
class FqField:
    """F_q with a fixed monic irreducible modulus.

    ``modulus`` lists coefficients from the constant term up to the leading
    1, so ``(1, 1, 0, 0, 1)`` is ``x^4 + x + 1``.
    """

    p: int
    f: int
    modulus: tuple

    @property
    def q(self) -> int:
        return self.p**self.f

    @property
    def order(self) -> int:
        return self.q

    def __repr__(self) -> str:
        return f"FqField(p={self.p}, f={self.f}, modulus={self.modulus_str()})"

    def __str__(self) -> str:
        return f"F_{self.q}" if self.f == 1 else f"F_{self.p}^{self.f}"

    def label(self) -> str:
        return f"{self.p}^{self.f}" if self.f > 1 else str(self.p)

    def modulus_str(self) -> str:
        terms = []
        for i in range(len(self.modulus) - 1, -1, -1):
            c = self.modulus[i]
            if not c:
                continue
            mono = "1" if i == 0 else ("x" if i == 1 else f"x^{i}")
            terms.append(mono if c == 1 and i else f"{c}" if not i else f"{c}*{mono}")
        return " + ".join(terms)

    # ---- element encoding ------------------------------------------------

    def digits(self, a) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        return (a[..., None] // self.p ** np.arange(self.f)) % self.p

    def from_digits(self, d) -> np.ndarray:
        d = np.asarray(d, dtype=np.int64)
        return (d % self.p) @ (self.p ** np.arange(self.f))

    def from_int(self, k) -> np.ndarray:
        """Image of integers under Z -> F_q."""
        return np.asarray(k, dtype=np.int64) % self.p

    def elements(self) -> np.ndarray:
        return np.arange(self.q, dtype=np.int64)

    # ---- tables ----------------------------------------------------------

    @cached_property
    def _exp_log(self) -> tuple[np.ndarray, np.ndarray, int]:
        q, p = self.q, self.p
        if self.f == 1:
            from ..generators import primitive_root

            g = primitive_root(p, guard=MAX_ORDER)
            exp = np.empty(q - 1, dtype=np.int64)
            v = 1
            for k in range(q - 1):
                exp[k] = v
                v = v * g % p
        else:
            g, exp = self._primitive_element_powers()
        log = np.full(q, -1, dtype=np.int64)
        log[exp] = np.arange(q - 1)
        return exp, log, int(exp[1] if q > 2 else 1)

    def _primitive_element_powers(self) -> tuple[int, np.ndarray]:
        q, p = self.q, self.p
        primes = list(factorint(q - 1))

        def power(d, e):
            result, base = [1] + [0] * (self.f - 1), list(d)
            while e:
                if e & 1:
                    result = _poly_mulmod(result, base, self.modulus, p)
                base = _poly_mulmod(base, base, self.modulus, p)
                e >>= 1
            return result

        one = [1] + [0] * (self.f - 1)
        for g in range(2, q):
            d = [int(v) for v in self.digits(g)]
            if all(power(d, (q - 1) // ell) != one for ell in primes):
                break
        else:  # pragma: no cover
            raise AssertionError("no primitive element found")
        exp = np.empty(q - 1, dtype=np.int64)
        cur = one
        weights = [p**i for i in range(self.f)]
        for k in range(q - 1):
            exp[k] = sum(c * w for c, w in zip(cur, weights))
            cur = _poly_mulmod(cur, d, self.modulus, p)
        return g, exp

    @property
    def exp_table(self) -> np.ndarray:
        return self._exp_log[0]

    @property
    def log_table(self) -> np.ndarray:
        return self._exp_log[1]

    @property
    def generator(self) -> int:
        """The multiplicative generator used for the log tables."""
        return self._exp_log[2]

    @cached_property
    def neg_table(self) -> np.ndarray:
        return self.from_digits(-self.digits(self.elements()))

    @cached_property
    def inv_table(self) -> np.ndarray:
        """``inv_table[a]`` is ``1/a``; ``inv_table[0]`` is 0 by convention."""
        exp, log, _ = self._exp_log
        inv = np.zeros(self.q, dtype=np.int64)
        nz = np.arange(1, self.q)
        inv[nz] = exp[(-log[nz]) % (self.q - 1)]
        return inv

    @cached_property
    def tables(self) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
        """(add, mul, neg, inv) as int32 arrays for the compiled kernels."""
        if self.q > TABLE_LIMIT:
            raise TooLarge(f"q={self.q} exceeds the table limit {TABLE_LIMIT}")
        el = self.elements()
        add = self.add(el[:, None], el[None, :]).astype(np.int32)
        mul = self.mul(el[:, None], el[None, :]).astype(np.int32)
        return add, mul, self.neg_table.astype(np.int32), self.inv_table.astype(np.int32)

    # ---- arithmetic ------------------------------------------------------

    def add(self, a, b) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if self.f == 1:
            return (a + b) % self.p
        if self.p == 2:
            return a ^ b
        return self.from_digits(self.digits(a) + self.digits(b))

    def neg(self, a) -> np.ndarray:
        return self.neg_table[np.asarray(a, dtype=np.int64)]

    def sub(self, a, b) -> np.ndarray:
        return self.add(a, self.neg(b))

    def mul(self, a, b) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if self.f == 1:
            return (a * b) % self.p
        exp, log, _ = self._exp_log
        a, b = np.broadcast_arrays(a, b)
        out = np.zeros(a.shape, dtype=np.int64)
        nz = (a != 0) & (b != 0)
        out[nz] = exp[(log[a[nz]] + log[b[nz]]) % (self.q - 1)]
        return out

    def inv(self, a) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        if (a == 0).any():
            raise ZeroDivisionError("inverse of zero in a finite field")
        return self.inv_table[a]

    def power(self, a: int, e: int) -> int:
        if a == 0:
            return 0 if e else 1
        exp, log, _ = self._exp_log
        return int(exp[(log[a] * e) % (self.q - 1)])

    def element_order(self, a: int) -> int:
        """Multiplicative order of a nonzero element."""
        if a == 0:
            raise ZeroDivisionError("zero has no multiplicative order")
        from math import gcd

        return (self.q - 1) // gcd(int(self.log_table[a]), self.q - 1)


@lru_cache(maxsize=None)
def make_field(p: int, f: int = 1) -> FqField:
    """F_{p^f} with the lexicographically least monic irreducible modulus.

    Candidates ``x^f + c_{f-1} x^{f-1} + ... + c_0`` are ordered by the
    integer ``sum(c_i p^i)``; e.g. ``make_field(2, 4)`` uses ``x^4 + x + 1``.
    """
    p, f = int(p), int(f)
    if not isprime(p):
        raise NotPrime(f"{p} is not prime")
    if f < 1:
        raise ParameterOutOfRange(f"extension degree must be >= 1, got {f}")
    if p**f > MAX_ORDER:
        raise TooLarge(f"{p}^{f} exceeds {MAX_ORDER}")
    if f == 1:
        return FqField(p, 1, (0, 1))
    for code in range(p**f):
        low = tuple((code // p**i) % p for i in range(f))
        modulus = low + (1,)
        if low[0] and _is_irreducible(modulus, p):
            return FqField(p, f, modulus)
    raise AssertionError("unreachable: irreducible polynomials exist in every degree")


_FIELD_RE = re.compile(r"^\s*(\d+)\s*(?:\^\s*(\d+))?\s*$")


def parse_field(text) -> FqField:
    """Parse ``"p"``, ``"p^f"`` or a prime power ``"q"`` such as ``"4"``."""
    m = _FIELD_RE.match(str(text))
    if not m:
        raise ParameterOutOfRange(f"cannot parse field {text!r}; use p or p^f")
    base, exp = int(m.group(1)), m.group(2)
    if exp is not None:
        return make_field(base, int(exp))
    if base < 2:
        raise NotPrime(f"{base} is not a prime power")
    fac = factorint(base)
    if len(fac) != 1:
        raise NotPrime(f"{base} is not a prime power")
    (p, f), = fac.items()
    return make_field(int(p), int(f))
