"""Point-free morphism expressions.

Compositions are kept flat: ``comp`` never builds a ``Comp`` that contains
another ``Comp`` or an identity, so grouping never survives construction.
The parser produces ``Name``/``Call`` nodes; ``resolve`` turns them into
naturals, factorizers and functor applications.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Union


@dataclass(frozen=True, slots=True)
class Id:
    pass


@dataclass(frozen=True, slots=True)
class Comp:
    parts: tuple  # left to right: parts[0] is applied last


@dataclass(frozen=True, slots=True)
class Nat:
    name: str


@dataclass(frozen=True, slots=True)
class Fact:
    name: str
    args: tuple = ()


@dataclass(frozen=True, slots=True)
class Func:
    name: str
    args: tuple = ()


@dataclass(frozen=True, slots=True)
class MVar:
    """Morphism variable; library-level only, there is no surface syntax."""
    name: str


@dataclass(frozen=True, slots=True)
class Name:
    """Unresolved identifier straight from the parser."""
    name: str


@dataclass(frozen=True, slots=True)
class Call:
    """Unresolved ``name(args)`` straight from the parser."""
    name: str
    args: tuple


Expr = Union[Id, Comp, Nat, Fact, Func, MVar, Name, Call]

ID = Id()


def comp(*parts: Expr) -> Expr:
    flat: list = []
    for p in parts:
        if isinstance(p, Comp):
            flat.extend(p.parts)
        elif not isinstance(p, Id):
            flat.append(p)
    if not flat:
        return ID
    if len(flat) == 1:
        return flat[0]
    return Comp(tuple(flat))


def factors(e: Expr) -> tuple:
    """The flat factor list of ``e`` (empty for the identity)."""
    if isinstance(e, Id):
        return ()
    if isinstance(e, Comp):
        return e.parts
    return (e,)


def subterms(e: Expr) -> Iterator[Expr]:
    yield e
    if isinstance(e, Comp):
        for p in e.parts:
            yield from subterms(p)
    elif isinstance(e, (Fact, Func, Call)):
        for a in e.args:
            yield from subterms(a)


def format_expr(e: Expr) -> str:
    match e:
        case Id():
            return "id"
        case Comp(parts):
            return ".".join(format_expr(p) for p in parts)
        case Nat(name) | MVar(name) | Name(name):
            return name
        case Fact(name, args) | Func(name, args) | Call(name, args):
            if not args:
                return name
            return f"{name}({','.join(format_expr(a) for a in args)})"
    raise TypeError(f"not an expression: {e!r}")


def format_canonical(c: tuple, empty: str = "id") -> str:
    """A canonical element is a factor tuple; the trailing identity is implicit."""
    if not c:
        return empty
    return ".".join(format_expr(f) for f in c)
