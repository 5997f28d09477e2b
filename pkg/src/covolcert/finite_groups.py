"""Orders of SL_n(F_q) and indices of its parabolic subgroups.

A standard parabolic subgroup P of SL_n(F_q) is given by a composition
n = n_1 + ... + n_k (the sizes of its diagonal blocks).  Its index equals
the number of partial flags 0 < V_1 < ... < V_{k-1} < F_q^n with
dim V_i = n_1 + ... + n_i, i.e. the Gaussian multinomial coefficient.
``brute_force_flag_count`` counts these flags directly and serves as an
independent check of the closed form.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce
from itertools import combinations, product
from operator import mul
from typing import Iterator

from covolcert.errors import SizeLimitExceeded

# largest q^(n*n) the brute-force enumeration accepts by default (n = 4, q = 3)
DEFAULT_SIZE_LIMIT = 3**16


def _prod(values) -> int:
    return reduce(mul, values, 1)


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    i = 2
    while i * i <= p:
        if p % i == 0:
            return False
        i += 1
    return True


def is_prime_power(q: int) -> bool:
    if q < 2:
        return False
    p = next(d for d in range(2, q + 1) if q % d == 0)
    while q % p == 0:
        q //= p
    return q == 1


def _check_q(q: int) -> None:
    if not is_prime_power(q):
        raise ValueError(f"q = {q} is not a prime power")


@dataclass(frozen=True)
class Composition:
    """Block sizes n_1, ..., n_k of a standard parabolic subgroup of SL_n."""

    parts: tuple[int, ...]

    def __post_init__(self) -> None:
        parts = tuple(self.parts)
        if not parts or any(not isinstance(x, int) or x < 1 for x in parts):
            raise ValueError(f"a composition needs positive integer parts, got {self.parts!r}")
        object.__setattr__(self, "parts", parts)

    @property
    def n(self) -> int:
        return sum(self.parts)

    @property
    def proper(self) -> bool:
        """Whether the parabolic subgroup is proper (at least two blocks)."""
        return len(self.parts) >= 2

    def reversed(self) -> "Composition":
        return Composition(self.parts[::-1])

    @classmethod
    def borel(cls, n: int) -> "Composition":
        return cls((1,) * n)

    @classmethod
    def parse(cls, text: str) -> "Composition":
        """Read ``"2,1"`` or ``"(2,1)"``."""
        body = text.strip().strip("()[]")
        return cls(tuple(int(x) for x in body.split(",") if x.strip()))

    def __str__(self) -> str:
        return "(" + ",".join(map(str, self.parts)) + ")"


def compositions(n: int) -> Iterator[Composition]:
    """All 2^(n-1) compositions of n."""
    if n < 1:
        raise ValueError("n >= 1")
    for mask in range(1 << (n - 1)):
        parts, run = [], 1
        for i in range(n - 1):
            if mask >> i & 1:
                parts.append(run)
                run = 1
            else:
                run += 1
        parts.append(run)
        yield Composition(tuple(parts))


def order_gl(n: int, q: int) -> int:
    _check_q(q)
    return _prod(q**n - q**j for j in range(n))


def order_sl(n: int, q: int) -> int:
    """|SL_n(F_q)| = prod_{j<n} (q^n - q^j) / (q - 1)."""
    if n < 1:
        raise ValueError("n >= 1")
    return order_gl(n, q) // (q - 1)


def _unipotent_exponent(c: Composition) -> int:
    n = c.n
    twice = n * n - sum(x * x for x in c.parts)
    return twice // 2


def parabolic_order(c: Composition, q: int) -> int:
    """|P| = prod_i |GL_{n_i}(F_q)| q^((n^2 - sum n_i^2)/2) / (q - 1)."""
    _check_q(q)
    levi = _prod(order_gl(x, q) for x in c.parts)
    return levi * q ** _unipotent_exponent(c) // (q - 1)


def parabolic_index(c: Composition, q: int) -> int:
    """[SL_n(F_q) : P] = prod_{j<=n} (q^j - 1) / prod_i prod_{j<=n_i} (q^j - 1)."""
    _check_q(q)
    num = _prod(q**j - 1 for j in range(1, c.n + 1))
    den = _prod(q**j - 1 for x in c.parts for j in range(1, x + 1))
    quotient, rem = divmod(num, den)
    if rem:
        raise ArithmeticError("Gaussian multinomial is not integral")  # cannot happen
    return quotient


def parabolic_index_lower(c: Composition, q: int) -> int:
    """The lower bound q^((n^2 - sum n_i^2)/2) on the index."""
    _check_q(q)
    return q ** _unipotent_exponent(c)


def _subspaces(n: int, d: int, q: int) -> list[frozenset[tuple[int, ...]]]:
    """All d-dimensional subspaces of F_q^n (q prime), each as its set of vectors.

    Subspaces are generated from their reduced row echelon bases, one basis
    per subspace: choose the pivot columns, then fill the non-pivot entries
    to the right of each pivot freely.
    """
    out = []
    for pivots in combinations(range(n), d):
        free = [(i, j) for i, c in enumerate(pivots) for j in range(c + 1, n) if j not in pivots]
        for fill in product(range(q), repeat=len(free)):
            rows = [[0] * n for _ in range(d)]
            for i, c in enumerate(pivots):
                rows[i][c] = 1
            for (i, j), v in zip(free, fill):
                rows[i][j] = v
            span = set()
            for coeffs in product(range(q), repeat=d):
                span.add(tuple(sum(a * r[j] for a, r in zip(coeffs, rows)) % q for j in range(n)))
            out.append(frozenset(span))
    return out


def brute_force_flag_count(c: Composition, q: int, size_limit: int = DEFAULT_SIZE_LIMIT) -> int:
    """Count partial flags of type ``c`` in F_q^n by enumerating subspaces (q prime)."""
    if not _is_prime(q):
        raise ValueError(f"brute-force enumeration needs a prime q, got {q}")
    n = c.n
    if q ** (n * n) > size_limit:
        raise SizeLimitExceeded(f"q^(n^2) = {q}^{n * n} exceeds the limit {size_limit}")
    dims, acc = [], 0
    for x in c.parts[:-1]:
        acc += x
        dims.append(acc)
    if not dims:
        return 1
    # counts[V] = number of flags ending in V at the current dimension
    counts = {v: 1 for v in _subspaces(n, dims[0], q)}
    for d in dims[1:]:
        nxt = {}
        for w in _subspaces(n, d, q):
            total = sum(k for v, k in counts.items() if v <= w)
            if total:
                nxt[w] = total
        counts = nxt
    return sum(counts.values())
