"""Exact evaluation of the Ramsey-type constant towers.

Every formula here is nondecreasing in each argument, so values are computed
with saturating integer arithmetic: once an intermediate result would need
more than ``max_bits`` bits it becomes :data:`HUGE`, a marker that compares
greater than every integer. Results that are ints are exact.

Ramsey numbers default to the binomial upper bound
``R(p, q) = C(p + q - 2, p - 1)`` (the solution of
``R(p, q) <= R(p-1, q) + R(p, q-1)`` with ``R(1, q) = R(p, 1) = 1``).
``ramsey="exact"`` uses :func:`ramsey_exact` instead, which only works for
tiny arguments.
"""

from __future__ import annotations

import math
from functools import total_ordering

from .detection import is_isomorphic
from .errors import ContractError
from .graph import Graph

DEFAULT_MAX_BITS = 1 << 16


@total_ordering
class _Huge:
    __slots__ = ()

    def __eq__(self, other: object) -> bool:
        return isinstance(other, _Huge)

    def __lt__(self, other: object) -> bool:
        if isinstance(other, (_Huge, int)):
            return False
        return NotImplemented

    def __gt__(self, other: object) -> bool:
        if isinstance(other, int):
            return True
        if isinstance(other, _Huge):
            return False
        return NotImplemented

    def __hash__(self) -> int:
        return hash("HUGE")

    def __repr__(self) -> str:
        return "HUGE"


HUGE = _Huge()
Value = "int | _Huge"


def is_huge(x: object) -> bool:
    return isinstance(x, _Huge)


def format_value(x: int | _Huge, max_bits: int = DEFAULT_MAX_BITS) -> str:
    return f">2^{max_bits}" if is_huge(x) else str(x)


class Constants:
    """Evaluator bound to a Ramsey variant and a saturation size."""

    def __init__(self, ramsey: str = "upper", max_bits: int = DEFAULT_MAX_BITS):
        if ramsey not in ("upper", "exact"):
            raise ContractError(f"unknown Ramsey variant {ramsey!r}")
        self.ramsey = ramsey
        self.max_bits = max_bits

    # saturating primitives
    def _cap(self, x: int) -> int | _Huge:
        return HUGE if x.bit_length() > self.max_bits else x

    def _add(self, *xs):
        if any(is_huge(x) for x in xs):
            return HUGE
        return self._cap(sum(xs))

    def _mul(self, a, b):
        if a == 0 or b == 0:
            return 0
        if is_huge(a) or is_huge(b):
            return HUGE
        return self._cap(a * b)

    def _pow(self, a, e):
        if e == 0 or a == 1:
            return 1
        if a == 0:
            return 0
        if is_huge(a) or is_huge(e):
            return HUGE
        if e * math.log2(a) > self.max_bits + 1:
            return HUGE
        return self._cap(a ** e)

    def _binom(self, n: int, k: int):
        k = min(k, n - k)
        if k < 0:
            return 0
        if k == 0:
            return 1
        # C(n, k) >= (n / k) ** k >= 2 ** k because n >= 2k here, and
        # log2(n / k) >= bitlen(n) - 1 - bitlen(k).
        per_factor = max(1, n.bit_length() - 1 - k.bit_length())
        if k > self.max_bits or k * per_factor > self.max_bits + 1:
            return HUGE
        return self._cap(math.comb(n, k))

    @staticmethod
    def _check(*xs) -> None:
        for x in xs:
            if not is_huge(x) and (not isinstance(x, int) or x < 1):
                raise ContractError(f"constant arguments must be positive integers, got {x!r}")

    # the constants
    def R(self, p, q):
        """Ramsey number: any graph on this many vertices has an independent
        ``p``-set or a ``q``-clique (under the chosen variant)."""
        self._check(p, q)
        if p == 1 or q == 1:
            return 1
        if p == 2:
            return q
        if q == 2:
            return p
        if self.ramsey == "exact":
            if is_huge(p) or is_huge(q):
                raise ContractError("exact Ramsey numbers are unavailable for huge arguments")
            return ramsey_exact(p, q)
        if is_huge(p) or is_huge(q):
            return HUGE
        return self._binom(p + q - 2, p - 1)

    def R_upper(self, p, q):
        return Constants("upper", self.max_bits).R(p, q)

    def R_iter(self, i, a, b):
        """``R^0(a, b) = R(a, b)``, ``R^i(a, b) = R(R^{i-1}(a, b), b)``."""
        if is_huge(i) or (isinstance(i, int) and i >= 0):
            pass
        else:
            raise ContractError("iteration count must be a non-negative integer")
        self._check(a, b)
        x = self.R(a, b)
        step = 0
        while is_huge(i) or step < i:
            nxt = self.R(x, b)
            if nxt == x or is_huge(nxt):
                # A fixed point repeats forever; HUGE stays HUGE.
                return nxt
            x = nxt
            step += 1
        return x

    def P(self, r, m):
        """Pigeonhole number ``r(m - 1) + 1``."""
        self._check(r, m)
        if m == 1:
            return 1
        if is_huge(r) or is_huge(m):
            return HUGE
        return self._cap(r * (m - 1) + 1)

    def C(self, a, b):
        """``2 P(a^r, b)`` with ``r = P(a^b, b)``."""
        self._check(a, b)
        r = self.P(self._pow(a, b), b)
        return self._mul(2, self.P(self._pow(a, r), b))

    def q(self, r, p):
        return self.R(r, self.C(self._mul(r, p), p))

    def c(self, r, p):
        return self.R_iter(self.q(r, p), r, self.C(p, p))

    def d(self, r, p):
        return self._add(self.c(r, p), self.q(r, p))

    def m(self, r, p):
        return self.R(self.d(r, p), self._mul(2, p))

    def b(self, p):
        """``binom(m, 2) p + (m - 2) + R(3, C(p, p))`` with ``m = m(p, p)``."""
        self._check(p)
        mm = self.m(p, p)
        pairs = HUGE if is_huge(mm) else self._binom(mm, 2)
        extra = HUGE if is_huge(mm) else mm - 2
        return self._add(self._mul(pairs, p), extra, self.R(3, self.C(p, p)))

    def deg(self, b):
        """Torso degree threshold ``2(b - 1)(b - 2)``."""
        self._check(b)
        if is_huge(b):
            return HUGE
        return self._cap(2 * (b - 1) * (b - 2))

    def delete(self, k, p):
        """``(3p + 1) R(k, C(3p + 1, p))``."""
        self._check(k, p)
        tp = self._add(self._mul(3, p), 1)
        return self._mul(tp, self.R(k, self.C(tp, p)))


_ARITY = {"R": 2, "R_upper": 2, "R_exact": 2, "R_iter": 3, "P": 2, "C": 2,
          "q": 2, "c": 2, "d": 2, "m": 2, "b": 1, "deg": 1, "delete": 2}


def evaluate(name: str, args: list[int], ramsey: str = "upper", max_bits: int = DEFAULT_MAX_BITS):
    """Evaluate constant ``name`` (``R``, ``R_exact``, ``R_iter``, ``P``, ``C``,
    ``q``, ``c``, ``d``, ``m``, ``b``, ``deg``, ``delete``) at ``args``."""
    if name not in _ARITY:
        raise ContractError(f"unknown constant {name!r}; choose from {sorted(_ARITY)}")
    if len(args) != _ARITY[name]:
        raise ContractError(f"{name} takes {_ARITY[name]} argument(s), got {len(args)}")
    if name == "R_exact":
        return ramsey_exact(*args)
    ev = Constants(ramsey, max_bits)
    return getattr(ev, name)(*args)


# --- exact Ramsey numbers ----------------------------------------------------

def _has_clique(rows: list[int], cand: int, size: int) -> bool:
    if size == 0:
        return True
    while cand:
        if bin(cand).count("1") < size:
            return False
        v = (cand & -cand).bit_length() - 1
        cand &= ~(1 << v)
        if _has_clique(rows, cand & rows[v], size - 1):
            return True
    return False


def _invariant(rows: list[int]) -> tuple:
    degs = [bin(r).count("1") for r in rows]
    return tuple(sorted((degs[v], tuple(sorted(degs[w] for w in range(len(rows)) if rows[v] >> w & 1)))
                        for v in range(len(rows))))


def ramsey_exact(p: int, q: int) -> int:
    """Exact ``R(p, q)`` by exhaustive search up to isomorphism.

    Graphs with no independent ``p``-set and no ``q``-clique are grown one
    vertex at a time (the property is hereditary, so every such graph on
    ``n + 1`` vertices extends one on ``n``) until none survive. Only
    ``min(p, q) <= 2`` or ``p + q <= 7`` are supported.
    """
    for x in (p, q):
        if not isinstance(x, int) or x < 1:
            raise ContractError("Ramsey arguments must be positive integers")
    if min(p, q) == 1:
        return 1
    if p == 2:
        return q
    if q == 2:
        return p
    if p + q > 7:
        raise ContractError(f"exhaustive R({p},{q}) is beyond desk-scale search (supported: p + q <= 7)")

    level: list[list[int]] = [[]]
    n = 0
    while level:
        buckets: dict[tuple, list[Graph]] = {}
        for rows in level:
            full = (1 << n) - 1
            for nb in range(1 << n):
                if _has_clique(rows, nb, q - 1):
                    continue
                comp = [full & ~r & ~(1 << v) for v, r in enumerate(rows)]
                if _has_clique(comp, full & ~nb, p - 1):
                    continue
                new = [r | ((nb >> v & 1) << n) for v, r in enumerate(rows)] + [nb]
                bucket = buckets.setdefault(_invariant(new), [])
                cand = Graph.from_rows(new)
                if not any(is_isomorphic(cand, h) for h in bucket):
                    bucket.append(cand)
        level = [list(h.rows) for bucket in buckets.values() for h in bucket]
        n += 1
    return n
