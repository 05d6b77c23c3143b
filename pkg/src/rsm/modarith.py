"""Injective modular arithmetic kernel.

Residues are plain ints constrained to ``0 <= x < q``.  Every operator
checks its operand ranges because those ranges are exactly the side
conditions that make the operators injective in their first argument:

* ``mod_add(x, y, q)`` and ``mod_sub(x, y, q)`` need ``0 <= x, y < q``,
* ``mod_mul(x, y, q)`` needs ``0 <= x < q`` and ``1 <= y < q``, and is a
  bijection in ``x`` exactly when ``gcd(y, q) = 1``.

Out-of-range operands raise :class:`~rsm.errors.OperandOutOfRange`; an
uninvertible multiplier raises :class:`~rsm.errors.NonCoprimeModulus` (only
when an inverse is actually requested).

Intermediate products are computed on Python's unbounded ints before
reduction, so ``d * q`` fitting in the 64-bit word is enough to keep every
*stored* value inside the word; nothing wraps silently.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

from .errors import NonCoprimeModulus, OperandOutOfRange, WordOverflow

WORD_MIN = -(2**63)
WORD_MAX = 2**63 - 1


def _check_modulus(q: int) -> None:
    if q < 1:
        raise OperandOutOfRange(f"modulus must be positive, got {q}")


def _check_residue(v: int, q: int, what: str = "operand") -> None:
    if not 0 <= v < q:
        raise OperandOutOfRange(f"{what} {v} outside [0, {q})")


def mod_add(x: int, y: int, q: int) -> int:
    """(x + y) mod q, injective in x for fixed y."""
    _check_modulus(q)
    _check_residue(x, q)
    _check_residue(y, q)
    return (x + y) % q


def mod_sub(x: int, y: int, q: int) -> int:
    """(x - y) mod q, normalized into [0, q); inverse of mod_add in x."""
    _check_modulus(q)
    _check_residue(x, q)
    _check_residue(y, q)
    return (x - y) % q


def mod_mul(x: int, y: int, q: int) -> int:
    """(x * y) mod q with 1 <= y < q; bijective in x iff gcd(y, q) = 1."""
    _check_modulus(q)
    _check_residue(x, q)
    if not 1 <= y < q:
        raise OperandOutOfRange(f"multiplier {y} outside [1, {q})")
    return (x * y) % q


def _ext_gcd(a: int, b: int) -> tuple[int, int, int]:
    # Returns (g, u, v) with u*a + v*b = g = gcd(a, b).
    u0, u1 = 1, 0
    v0, v1 = 0, 1
    while b:
        k, r = divmod(a, b)
        a, b = b, r
        u0, u1 = u1, u0 - k * u1
        v0, v1 = v1, v0 - k * v1
    return a, u0, v0


def mod_inv(y: int, q: int) -> int:
    """The z with (y * z) mod q = 1, by extended gcd."""
    _check_modulus(q)
    if not 1 <= y < q:
        raise OperandOutOfRange(f"operand {y} outside [1, {q})")
    g, u, _ = _ext_gcd(y, q)
    if g != 1:
        raise NonCoprimeModulus(f"gcd({y}, {q}) = {g}, no inverse mod {q}")
    return u % q


def mod_pow(b: int, n: int, q: int) -> int:
    """b**n mod q by n successive modular multiplications.

    Deliberately linear in n so the step count matches a counted loop of
    single multiplications; square-and-multiply would be faster but is out
    of scope here.
    """
    _check_modulus(q)
    _check_residue(b, q, "base")
    if n < 0:
        raise OperandOutOfRange(f"exponent must be non-negative, got {n}")
    acc = 1 % q
    for _ in range(n):
        acc = (acc * b) % q
    return acc


@dataclass
class OpCounter:
    """Mutable tally of elementary kernel operations."""

    count: int = 0

    def bump(self, n: int = 1) -> None:
        self.count += n


@dataclass(frozen=True)
class ModContext:
    """A validated (modulus, radix) pair for hashing.

    Construction enforces 0 < d < q, gcd(d, q) = 1, and d*q inside the
    64-bit word.  When ``ops`` is set, the hashing operations below bump it
    once per elementary modular operation, which is how tests measure that
    the rolling update costs a fixed number of operations.
    """

    q: int
    d: int
    ops: OpCounter | None = field(default=None, compare=False)

    def __post_init__(self) -> None:
        if self.q < 1 or self.d < 1:
            raise OperandOutOfRange(f"need positive modulus and radix, got q={self.q} d={self.d}")
        if not self.d < self.q:
            raise OperandOutOfRange(f"radix {self.d} must be smaller than modulus {self.q}")
        if math.gcd(self.d, self.q) != 1:
            raise NonCoprimeModulus(f"gcd({self.d}, {self.q}) != 1")
        if self.d * self.q > WORD_MAX:
            raise WordOverflow(f"d*q = {self.d * self.q} does not fit the 64-bit word")

    def _bump(self, n: int) -> None:
        if self.ops is not None:
            self.ops.bump(n)


@dataclass(frozen=True)
class SubstringView:
    """A half-open digit window ``x[start:stop]`` over radix-d symbols."""

    x: Sequence[int]
    start: int
    stop: int

    def __post_init__(self) -> None:
        if not 0 <= self.start <= self.stop <= len(self.x):
            raise OperandOutOfRange(
                f"window [{self.start}, {self.stop}) outside array of length {len(self.x)}"
            )


def _check_digit(v: int, d: int) -> None:
    if not 0 <= v < d:
        raise OperandOutOfRange(f"digit {v} outside [0, {d})")


def horner_hash(view: SubstringView, ctx: ModContext) -> int:
    """Polynomial hash of the window by Horner's rule, mod ctx.q.

    Two kernel operations per digit: shift the accumulator by one radix-d
    position, then add the incoming low-order digit.
    """
    acc = 0
    for k in range(view.start, view.stop):
        digit = view.x[k]
        _check_digit(digit, ctx.d)
        acc = mod_mul(acc, ctx.d, ctx.q)
        acc = mod_add(acc, digit, ctx.q)
    ctx._bump(2 * (view.stop - view.start))
    return acc


def precomputed_factor(m: int, ctx: ModContext) -> int:
    """d**(m-1) mod q, the weight of a window's high-order digit."""
    if m < 1:
        raise OperandOutOfRange(f"window length must be positive, got {m}")
    ctx._bump(m - 1)
    return mod_pow(ctx.d, m - 1, ctx.q)


def roll_update(t: int, old_digit: int, new_digit: int, h: int, ctx: ModContext) -> int:
    """Hash of the next window from the hash t of the current one.

    Cancels the outgoing high-order digit (weight h = d**(m-1)), shifts by
    one radix position, and adds the incoming digit, all mod q.  Injective
    in t because gcd(d, q) = 1; always exactly four kernel operations,
    independent of the window length.
    """
    q = ctx.q
    _check_digit(old_digit, ctx.d)
    _check_digit(new_digit, ctx.d)
    if not 1 <= h < q:
        raise OperandOutOfRange(f"precomputed factor {h} outside [1, {q})")
    acc = mod_sub(t, mod_mul(old_digit, h, q), q)
    acc = mod_mul(acc, ctx.d, q)
    acc = mod_add(acc, new_digit, q)
    ctx._bump(4)
    return acc


def roll_update_inverse(t_next: int, old_digit: int, new_digit: int, h: int, ctx: ModContext) -> int:
    """Exact inverse of :func:`roll_update` in its first argument."""
    q = ctx.q
    _check_digit(old_digit, ctx.d)
    _check_digit(new_digit, ctx.d)
    if not 1 <= h < q:
        raise OperandOutOfRange(f"precomputed factor {h} outside [1, {q})")
    acc = mod_sub(t_next, new_digit, q)
    acc = mod_mul(acc, mod_inv(ctx.d, q), q)
    acc = mod_add(acc, mod_mul(old_digit, h, q), q)
    ctx._bump(5)
    return acc
