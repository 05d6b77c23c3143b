"""Abstract syntax of the reversible language.

Nodes are frozen dataclasses; statement lists are tuples, so a parsed
program is immutable and safe to share between concurrent runs.  Source
locations are attached for diagnostics but excluded from equality, which
is what makes the pretty-print/parse round trip a structural identity.

Update statements carry one of four operators: ``+=``, ``-=``, ``*=`` and
``*=inv``.  The last one multiplies by the modular inverse of the operand;
it only arises from program inversion and is spelled ``x *= inv(e) mod q``
in concrete syntax so that inverted programs remain parseable source.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Union

Loc = tuple[int, int]


def _loc_field() -> Loc | None:
    return field(default=None, compare=False, repr=False)  # type: ignore[return-value]


# --------------------------------------------------------------------------
# Expressions


@dataclass(frozen=True)
class IntLit:
    value: int
    loc: Loc | None = _loc_field()


@dataclass(frozen=True)
class Var:
    name: str
    loc: Loc | None = _loc_field()


@dataclass(frozen=True)
class Index:
    array: str
    index: "Expression"
    loc: Loc | None = _loc_field()


@dataclass(frozen=True)
class Top:
    stack: str
    loc: Loc | None = _loc_field()


@dataclass(frozen=True)
class Binary:
    op: str  # one of + - * = != <
    left: "Expression"
    right: "Expression"
    loc: Loc | None = _loc_field()


@dataclass(frozen=True)
class Pow:
    """b ^ n; legal only as the whole right-hand side of a modular += or -=."""

    base: "Expression"
    exponent: "Expression"
    loc: Loc | None = _loc_field()


Expression = Union[IntLit, Var, Index, Top, Binary, Pow]
LValue = Union[Var, Index]

COMPARISON_OPS = ("=", "!=", "<")
ARITH_OPS = ("+", "-", "*")


# --------------------------------------------------------------------------
# Statements


@dataclass(frozen=True)
class Update:
    target: LValue
    op: str  # += -= *= *=inv
    rhs: Expression
    modulus: str | None = None
    loc: Loc | None = _loc_field()


@dataclass(frozen=True)
class IfFi:
    test: Expression
    then_body: tuple["Statement", ...]
    else_body: tuple["Statement", ...]
    assertion: Expression
    loc: Loc | None = _loc_field()


@dataclass(frozen=True)
class FromUntil:
    entry: Expression
    body: tuple["Statement", ...]
    exit: Expression
    loc: Loc | None = _loc_field()


@dataclass(frozen=True)
class Iterate:
    """Counted loop; ``down=True`` is the descending form (``downto``).

    An ascending loop runs zero iterations when start > stop; a descending
    one when start < stop.  The two forms are each other's inverses.
    """

    counter: str
    start: Expression
    stop: Expression
    body: tuple["Statement", ...]
    down: bool = False
    loc: Loc | None = _loc_field()


@dataclass(frozen=True)
class LocalDelocal:
    name: str
    init: Expression
    body: tuple["Statement", ...]
    final: Expression
    loc: Loc | None = _loc_field()


@dataclass(frozen=True)
class Call:
    target: str
    args: tuple[Expression, ...]
    loc: Loc | None = _loc_field()


@dataclass(frozen=True)
class Uncall:
    target: str
    args: tuple[Expression, ...]
    loc: Loc | None = _loc_field()


@dataclass(frozen=True)
class Push:
    target: LValue
    stack: str
    loc: Loc | None = _loc_field()


@dataclass(frozen=True)
class Pop:
    target: LValue
    stack: str
    loc: Loc | None = _loc_field()


Statement = Union[Update, IfFi, FromUntil, Iterate, LocalDelocal, Call, Uncall, Push, Pop]


# --------------------------------------------------------------------------
# Procedures and programs


@dataclass(frozen=True)
class Param:
    name: str
    kind: str  # int | array | stack
    loc: Loc | None = _loc_field()


@dataclass(frozen=True)
class Procedure:
    name: str
    params: tuple[Param, ...]
    body: tuple[Statement, ...]
    loc: Loc | None = _loc_field()


@dataclass(frozen=True)
class Program:
    procedures: tuple[Procedure, ...]

    def procedure(self, name: str) -> Procedure:
        for proc in self.procedures:
            if proc.name == name:
                return proc
        raise KeyError(name)

    def names(self) -> tuple[str, ...]:
        return tuple(p.name for p in self.procedures)


def expr_names(expr: Expression) -> set[str]:
    """Every identifier mentioned anywhere in an expression."""
    match expr:
        case IntLit():
            return set()
        case Var(name=n):
            return {n}
        case Index(array=a, index=i):
            return {a} | expr_names(i)
        case Top(stack=s):
            return {s}
        case Binary(left=l, right=r):
            return expr_names(l) | expr_names(r)
        case Pow(base=b, exponent=e):
            return expr_names(b) | expr_names(e)
    raise TypeError(f"not an expression: {expr!r}")
