"""Small finite fields F_q with lookup tables, for exhaustive torus counts.

Elements are encoded as integers 0..q-1 (base-p digits of the polynomial
representative); 0 is zero and 1 is one.
"""

from functools import lru_cache
from itertools import product

import numpy as np

from .errors import ZetaError


def prime_power(q: int) -> tuple[int, int]:
    """Return (p, k) with q = p^k, or raise."""
    if q < 2:
        raise ZetaError(f"{q} is not a prime power")
    p = next(d for d in range(2, q + 1) if q % d == 0)
    k, r = 0, q
    while r % p == 0:
        r //= p
        k += 1
    if r != 1:
        raise ZetaError(f"{q} is not a prime power")
    return p, k


def is_prime(p: int) -> bool:
    return p >= 2 and all(p % d for d in range(2, int(p**0.5) + 1))


def _digits(x, p, k):
    return [(x // p**i) % p for i in range(k)]


def _undigits(ds, p):
    return sum(d * p**i for i, d in enumerate(ds))


class FiniteField:
    """F_q with exp/log tables built from a primitive polynomial."""

    def __init__(self, q: int):
        p, k = prime_power(q)
        self.q, self.p, self.k = q, p, k
        self.exp, self.log = self._tables()
        digs = np.array([_digits(x, p, k) for x in range(q)], dtype=np.int64)
        pw = np.array([p**i for i in range(k)], dtype=np.int64)
        self.add = ((digs[:, None, :] + digs[None, :, :]) % p) @ pw

    def _tables(self):
        p, k, q = self.p, self.k, self.q
        if k == 1:
            for g in range(1, p):
                seen, x = [], 1
                for _ in range(p - 1):
                    seen.append(x)
                    x = x * g % p
                if len(set(seen)) == p - 1:
                    exp = np.array(seen, dtype=np.int64)
                    break
        else:
            for tail in product(range(p), repeat=k):
                exp = self._powers_of_x(tail)
                if exp is not None:
                    break
        log = np.zeros(q, dtype=np.int64)
        log[exp] = np.arange(q - 1)
        return exp, log

    def _powers_of_x(self, tail):
        # x^k = -(tail . (1, x, ..., x^{k-1}))
        p, k, q = self.p, self.k, self.q
        cur = [0] * k
        cur[0] = 1
        out = []
        for _ in range(q - 1):
            out.append(_undigits(cur, p))
            top = cur[-1]
            cur = [0] + cur[:-1]
            cur = [(c - top * t) % p for c, t in zip(cur, tail)]
        if len(set(out)) != q - 1 or _undigits(cur, p) != 1:
            return None
        return np.array(out, dtype=np.int64)

    def from_int(self, c: int) -> int:
        return int(c % self.p)

    def mul(self, a, b):
        return 0 if a == 0 or b == 0 else int(self.exp[(self.log[a] + self.log[b]) % (self.q - 1)])


@lru_cache(maxsize=None)
def field(q: int) -> FiniteField:
    return FiniteField(q)


def torus_log_chunks(n: int, q: int, chunk: int = 1 << 20):
    """Yield arrays of shape (m, n) of discrete logs covering (F_q^*)^n."""
    total = (q - 1) ** n
    for start in range(0, total, chunk):
        idx = np.arange(start, min(start + chunk, total), dtype=np.int64)
        cols = []
        for _ in range(n):
            cols.append(idx % (q - 1))
            idx = idx // (q - 1)
        yield np.stack(cols, axis=1) if n else np.zeros((len(idx), 0), dtype=np.int64)


def eval_on_torus(ff: FiniteField, terms, logs):
    """Values of sum c*x^m at torus points given by their discrete logs."""
    q = ff.q
    acc = np.zeros(len(logs), dtype=np.int64)
    for m, c in terms:
        cm = ff.from_int(c)
        if cm == 0:
            continue
        e = (int(ff.log[cm]) + logs @ np.array(m, dtype=np.int64)) % (q - 1)
        acc = ff.add[acc, ff.exp[e]]
    return acc
