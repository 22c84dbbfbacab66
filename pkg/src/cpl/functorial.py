"""Functorial expressions: the type language of CPL.

A closed functorial expression ``λ(X1..Xn).E`` denotes an n-ary functor.
Variables are binder-local indices; names such as ``*a`` only appear when
printing.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterator, Mapping, Sequence, Union

from .errors import CPLError, UnificationError
from .variance import CO, FREE, Varity, varity_product


@dataclass(frozen=True, slots=True)
class FVar:
    index: int

    def __str__(self) -> str:
        return f"X{self.index}"


@dataclass(frozen=True, slots=True)
class FApp:
    name: str
    args: tuple = ()

    def __str__(self) -> str:
        if not self.args:
            return self.name
        return f"{self.name}({','.join(map(str, self.args))})"


FExpr = Union[FVar, FApp]


@dataclass(frozen=True, slots=True)
class Closed:
    """``λ(X0..X{arity-1}).body``."""
    arity: int
    body: FExpr

    def __post_init__(self):
        bad = [i for i in variables(self.body) if not 0 <= i < self.arity]
        if bad:
            raise CPLError(f"unbound variable X{bad[0]} in closed expression of arity {self.arity}")

    def __str__(self) -> str:
        binder = ",".join(f"X{i}" for i in range(self.arity))
        return f"λ({binder}).{self.body}"


def fapp(name: str, *args: FExpr) -> FApp:
    return FApp(name, tuple(args))


def projection(n: int, i: int) -> Closed:
    """``λ(X0..X{n-1}).Xi``."""
    return Closed(n, FVar(i))


def walk(e: FExpr) -> Iterator[FExpr]:
    yield e
    if isinstance(e, FApp):
        for a in e.args:
            yield from walk(a)


def variables(e: FExpr) -> list[int]:
    """Variable indices in first-occurrence order, without repeats."""
    seen: dict[int, None] = {}
    for node in walk(e):
        if isinstance(node, FVar):
            seen.setdefault(node.index)
    return list(seen)


def occurs(index: int, e: FExpr) -> bool:
    return any(isinstance(n, FVar) and n.index == index for n in walk(e))


def functor_names(e: FExpr) -> set[str]:
    return {n.name for n in walk(e) if isinstance(n, FApp)}


def map_vars(e: FExpr, f: Callable[[int], FExpr]) -> FExpr:
    if isinstance(e, FVar):
        return f(e.index)
    if not e.args:
        return e
    return FApp(e.name, tuple(map_vars(a, f) for a in e.args))


def subst_body(e: FExpr, images: Sequence[FExpr]) -> FExpr:
    return map_vars(e, lambda i: images[i])


def substitute(k: Closed, ls: Sequence[Closed], arity: int | None = None) -> Closed:
    """``K[L1..Ln]``: replace variable i of ``k`` by the body of ``ls[i]``."""
    if len(ls) != k.arity:
        raise CPLError(f"substitution expects {k.arity} expressions, got {len(ls)}")
    arities = {l.arity for l in ls}
    if len(arities) > 1:
        raise CPLError("substituted expressions must share one binder")
    if arities:
        m = arities.pop()
        if arity is not None and arity != m:
            raise CPLError(f"substitution target arity {arity} does not match {m}")
    elif arity is None:
        m = 0
    else:
        m = arity
    return Closed(m, subst_body(k.body, [l.body for l in ls]))


def compose_substitutions(ls: Sequence[Closed], ms: Sequence[Closed]) -> tuple[Closed, ...]:
    """``L∘M``: the substitution sending variable i to ``L_i[M]``."""
    return tuple(substitute(l, ms) for l in ls)


def canonical(k: Closed) -> Closed:
    """Renumber variables by first occurrence; unused ones go last."""
    order = variables(k.body)
    order += [i for i in range(k.arity) if i not in order]
    rank = {old: new for new, old in enumerate(order)}
    return Closed(k.arity, map_vars(k.body, lambda i: FVar(rank[i])))


def equivalent(k: Closed, l: Closed) -> bool:
    """Equality up to a renaming of bound variables."""
    return k.arity == l.arity and canonical(k) == canonical(l)


def variance_of(k: Closed, varities: Mapping[str, Varity]) -> Varity:
    """Varity of the functor denoted by ``k``, computed bottom-up."""
    def go(e: FExpr) -> Varity:
        if isinstance(e, FVar):
            return tuple(CO if i == e.index else FREE for i in range(k.arity))
        if e.name not in varities:
            raise CPLError(f"unknown functor '{e.name}'")
        declared = varities[e.name]
        if len(declared) != len(e.args):
            raise CPLError(f"functor '{e.name}' expects {len(declared)} arguments, got {len(e.args)}")
        return varity_product(declared, [go(a) for a in e.args], width=k.arity)
    return go(k.body)


# -- first-order unification -------------------------------------------------

class Unifier:
    """Triangular substitution over integer-indexed variables.

    Shared by ``unify`` on closed expressions and by type inference, which
    allocates variables from one counter per inference run.
    """

    def __init__(self):
        self.bindings: dict[int, FExpr] = {}

    def resolve(self, e: FExpr) -> FExpr:
        """Shallow: follow variable bindings at the root only."""
        while isinstance(e, FVar) and e.index in self.bindings:
            e = self.bindings[e.index]
        return e

    def apply(self, e: FExpr) -> FExpr:
        e = self.resolve(e)
        if isinstance(e, FVar) or not e.args:
            return e
        return FApp(e.name, tuple(self.apply(a) for a in e.args))

    def _occurs(self, index: int, e: FExpr) -> bool:
        e = self.resolve(e)
        if isinstance(e, FVar):
            return e.index == index
        return any(self._occurs(index, a) for a in e.args)

    def unify(self, a: FExpr, b: FExpr) -> None:
        """Unify in place; raises ``UnificationError`` and leaves earlier
        bindings in place on failure (callers copy first if they need to
        roll back)."""
        stack = [(a, b)]
        while stack:
            x, y = stack.pop()
            x, y = self.resolve(x), self.resolve(y)
            if isinstance(x, FVar) and isinstance(y, FVar) and x.index == y.index:
                continue
            if isinstance(x, FVar):
                self._bind(x.index, y)
            elif isinstance(y, FVar):
                self._bind(y.index, x)
            elif x.name != y.name or len(x.args) != len(y.args):
                raise UnificationError(x, y, self)
            else:
                stack.extend(reversed(list(zip(x.args, y.args))))

    def _bind(self, index: int, e: FExpr) -> None:
        if self._occurs(index, e):
            raise UnificationError(FVar(index), e, self, cyclic=True)
        self.bindings[index] = e

    def copy(self) -> Unifier:
        u = Unifier()
        u.bindings = dict(self.bindings)
        return u


def unify(k: Closed, l: Closed) -> tuple[tuple[Closed, ...], tuple[Closed, ...]]:
    """Most general unifier of two closed expressions with disjoint scopes.

    Returns substitutions ``(σK, σL)`` over a common binder with
    ``substitute(k, σK) == substitute(l, σL)``.  Variables of ``k`` are bound
    first; the target binder is ordered by first occurrence across the
    images of k's variables, then l's.
    """
    n, m = k.arity, l.arity
    shifted = map_vars(l.body, lambda i: FVar(n + i))
    u = Unifier()
    u.unify(k.body, shifted)
    images = [u.apply(FVar(i)) for i in range(n + m)]
    order: dict[int, None] = {}
    for img in images:
        for v in variables(img):
            order.setdefault(v)
    rank = {old: new for new, old in enumerate(order)}
    p = len(rank)
    closed = [Closed(p, map_vars(img, lambda i: FVar(rank[i]))) for img in images]
    return tuple(closed[:n]), tuple(closed[n:])


def is_instance(general: Closed, specific: Closed) -> bool:
    """True when ``specific ≡ general[K1..Kn]`` for some K's (one-way match)."""
    table: dict[int, FExpr] = {}

    def match(g: FExpr, s: FExpr) -> bool:
        if isinstance(g, FVar):
            if g.index in table:
                return table[g.index] == s
            table[g.index] = s
            return True
        if not isinstance(s, FApp) or s.name != g.name or len(s.args) != len(g.args):
            return False
        return all(match(a, b) for a, b in zip(g.args, s.args))

    return match(general.body, specific.body)


# -- printing -----------------------------------------------------------------

def star_name(n: int) -> str:
    """0 -> *a, 25 -> *z, 26 -> *a1, ..."""
    letter = chr(ord("a") + n % 26)
    return f"*{letter}" if n < 26 else f"*{letter}{n // 26}"


def format_fexpr(e: FExpr, names: Mapping[int, str] | Callable[[int], str] | None = None) -> str:
    if names is None:
        lookup = star_name
    elif callable(names):
        lookup = names
    else:
        lookup = names.__getitem__
    def go(x: FExpr) -> str:
        if isinstance(x, FVar):
            return lookup(x.index)
        if not x.args:
            return x.name
        return f"{x.name}({','.join(go(a) for a in x.args)})"
    return go(e)
