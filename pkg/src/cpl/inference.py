"""Name resolution, most-general type inference and functor expansion.

Inference allocates integer object variables from one counter per call and
solves constraints with a single ``Unifier``.  This is the classic
constraint-based presentation of the most-general-annotation algorithm:
every rule introduces fresh variables and unifies, so the final
substitution is most general by construction.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import count
from typing import Mapping, Sequence, Union

from .environment import Environment, ObjectInfo
from .errors import CPLTypeError, UnboundNameError, UnificationError
from .functorial import FApp, FExpr, FVar, Unifier, format_fexpr, map_vars, subst_body, variables
from .morphism import (ID, Call, Comp, Expr, Fact, Func, Id, MVar, Name, Nat, comp,
                       format_expr)
from .variance import CONTRA, FIXED

# -- resolution ----------------------------------------------------------------


def resolve(e: Expr, env: Environment, extra: Mapping[str, Expr] | None = None) -> Expr:
    """Turn parser ``Name``/``Call`` nodes into primitives, inlining lets."""
    extra = extra or {}

    def go(x: Expr) -> Expr:
        match x:
            case Name("id"):
                return ID
            case Name(n):
                if n in extra:
                    return extra[n]
                if n in env.definitions:
                    return env.definitions[n].expr
                if n in env.naturals:
                    return Nat(n)
                if n in env.factorizers:
                    return _fact(n, ())
                if n in env.objects:
                    return _func(n, ())
                raise UnboundNameError(f"unknown name '{n}'")
            case Call(n, args):
                resolved = tuple(go(a) for a in args)
                if n in env.factorizers:
                    return _fact(n, resolved)
                if n in env.objects:
                    return _func(n, resolved)
                if n in extra or env.is_bound(n):
                    raise CPLTypeError(f"'{n}' cannot be applied to arguments")
                raise UnboundNameError(f"unknown name '{n}'")
            case Comp(parts):
                return comp(*(go(p) for p in parts))
            case Fact(n, args):
                return Fact(n, tuple(go(a) for a in args))
            case Func(n, args):
                return Func(n, tuple(go(a) for a in args))
            case _:
                return x

    def _fact(n: str, args: tuple) -> Fact:
        want = len(env.owner_of_factorizer(n).decl.components)
        if len(args) != want:
            raise CPLTypeError(f"factorizer '{n}' expects {want} arguments, got {len(args)}")
        return Fact(n, args)

    def _func(n: str, args: tuple) -> Func:
        want = env.obj(n).decl.arity
        if len(args) != want:
            raise CPLTypeError(f"functor '{n}' expects {want} arguments, got {len(args)}")
        return Func(n, args)

    return go(e)


# -- annotated expressions -------------------------------------------------------


@dataclass(frozen=True, slots=True)
class AId:
    annotation: FExpr


@dataclass(frozen=True, slots=True)
class AComp:
    parts: tuple


@dataclass(frozen=True, slots=True)
class ANat:
    name: str
    annotations: tuple


@dataclass(frozen=True, slots=True)
class AFact:
    name: str
    annotations: tuple
    args: tuple


@dataclass(frozen=True, slots=True)
class AFunc:
    name: str
    args: tuple


@dataclass(frozen=True, slots=True)
class AVar:
    name: str


Annotated = Union[AId, AComp, ANat, AFact, AFunc, AVar]


def skeleton(a: Annotated) -> Expr:
    """Erase annotations."""
    match a:
        case AId():
            return ID
        case AComp(parts):
            return comp(*(skeleton(p) for p in parts))
        case ANat(name, _):
            return Nat(name)
        case AFact(name, _, args):
            return Fact(name, tuple(skeleton(x) for x in args))
        case AFunc(name, args):
            return Func(name, tuple(skeleton(x) for x in args))
        case AVar(name):
            return MVar(name)
    raise TypeError(a)


def map_annotations(a: Annotated, f) -> Annotated:
    match a:
        case AId(k):
            return AId(f(k))
        case AComp(parts):
            return AComp(tuple(map_annotations(p, f) for p in parts))
        case ANat(name, ks):
            return ANat(name, tuple(f(k) for k in ks))
        case AFact(name, ks, args):
            return AFact(name, tuple(f(k) for k in ks), tuple(map_annotations(x, f) for x in args))
        case AFunc(name, args):
            return AFunc(name, tuple(map_annotations(x, f) for x in args))
    return a


def annotation_exprs(a: Annotated):
    match a:
        case AId(k):
            yield k
        case ANat(_, ks):
            yield from ks
        case AFact(_, ks, args):
            yield from ks
            for x in args:
                yield from annotation_exprs(x)
        case AComp(parts) | AFunc(_, parts):
            for x in parts:
                yield from annotation_exprs(x)


@dataclass(frozen=True)
class MorphismType:
    """``dom -> cod`` over the binder ``0..arity-1``; ``rho`` types morphism variables."""
    arity: int
    dom: FExpr
    cod: FExpr
    rho: Mapping[str, tuple[FExpr, FExpr]] = field(default_factory=dict)

    def __str__(self) -> str:
        return format_type(self)


def format_type(t: MorphismType) -> str:
    return f"{format_fexpr(t.dom)} -> {format_fexpr(t.cod)}"


@dataclass(frozen=True)
class Typing:
    annotated: Annotated
    type: MorphismType

    @property
    def expr(self) -> Expr:
        return skeleton(self.annotated)


# -- inference ---------------------------------------------------------------------


class _Inferrer:
    def __init__(self, env: Environment):
        self.env = env
        self.u = Unifier()
        self.counter = count()
        self.rho: dict[str, tuple[FExpr, FExpr]] = {}

    def fresh(self) -> FVar:
        return FVar(next(self.counter))

    def unify(self, a: FExpr, b: FExpr, what: str) -> None:
        try:
            self.u.unify(a, b)
        except UnificationError as err:
            kind = "occurs check failed" if err.cyclic else "type mismatch"
            raise CPLTypeError(
                f"{kind} in {what}: {format_fexpr(self.u.apply(a))} "
                f"vs {format_fexpr(self.u.apply(b))}") from None

    @staticmethod
    def schema(e: FExpr, self_image: FExpr, params: Sequence[FExpr]) -> FExpr:
        return subst_body(e, [self_image, *params])

    def infer(self, e: Expr) -> tuple[Annotated, FExpr, FExpr]:
        match e:
            case Id():
                x = self.fresh()
                return AId(x), x, x
            case Comp(parts):
                typed = [self.infer(p) for p in parts]
                for i in range(len(parts) - 1):
                    self.unify(typed[i + 1][2], typed[i][1],
                               f"composition {format_expr(parts[i])} . {format_expr(parts[i + 1])}")
                return AComp(tuple(t[0] for t in typed)), typed[-1][1], typed[0][2]
            case Nat(name):
                info, j = self.env.owner_of_natural(name)
                params = [self.fresh() for _ in info.decl.params]
                whole = FApp(info.name, tuple(params))
                c = info.decl.components[j]
                return (ANat(name, tuple(params)),
                        self.schema(c.dom, whole, params),
                        self.schema(c.cod, whole, params))
            case Fact(name, args):
                info = self.env.owner_of_factorizer(name)
                z = self.fresh()
                params = [self.fresh() for _ in info.decl.params]
                whole = FApp(info.name, tuple(params))
                typed_args = []
                for k, (c, arg) in enumerate(zip(info.decl.components, args)):
                    a, d, cd = self.infer(arg)
                    where = f"argument {k + 1} of {name}"
                    self.unify(d, self.schema(c.dom, z, params), where)
                    self.unify(cd, self.schema(c.cod, z, params), where)
                    typed_args.append(a)
                node = AFact(name, (z, *params), tuple(typed_args))
                if info.side == "right":
                    return node, z, whole
                return node, whole, z
            case Func(name, args):
                info = self.env.obj(name)
                doms, cods, typed_args = [], [], []
                for k, (v, arg) in enumerate(zip(info.varity, args)):
                    a, d, cd = self.infer(arg)
                    typed_args.append(a)
                    where = f"argument {k + 1} of functor {name}"
                    if v is CONTRA:
                        d, cd = cd, d
                    elif v is FIXED:
                        self.unify(d, cd, where)
                    doms.append(d)
                    cods.append(cd)
                return AFunc(name, tuple(typed_args)), FApp(name, tuple(doms)), FApp(name, tuple(cods))
            case MVar(name):
                if name not in self.rho:
                    self.rho[name] = (self.fresh(), self.fresh())
                d, cd = self.rho[name]
                return AVar(name), d, cd
        raise CPLTypeError(f"cannot type unresolved expression {format_expr(e)}")


def infer(e: Expr, env: Environment, *, dom: FExpr | None = None) -> Typing:
    """Most general annotation and type of a resolved expression.

    ``dom`` optionally pins the domain (e.g. the terminal object for
    elements).  Variables in the result are renumbered so that index order
    equals creation order, type variables first.
    """
    inf = _Inferrer(env)
    annotated, d, cd = inf.infer(e)
    if dom is not None:
        inf.unify(d, dom, "element domain")
    u = inf.u
    d, cd = u.apply(d), u.apply(cd)
    rho = {n: (u.apply(a), u.apply(b)) for n, (a, b) in inf.rho.items()}
    annotated = map_annotations(annotated, u.apply)
    type_vars = set(variables(FApp("", (d, cd))))
    for a, b in rho.values():
        type_vars |= set(variables(FApp("", (a, b))))
    other = set()
    for k in annotation_exprs(annotated):
        other |= set(variables(k)) - type_vars
    rank = {v: i for i, v in enumerate(sorted(type_vars) + sorted(other))}
    ren = lambda x: map_vars(x, lambda i: FVar(rank[i]))
    t = MorphismType(
        arity=len(rank),
        dom=ren(d),
        cod=ren(cd),
        rho={n: (ren(a), ren(b)) for n, (a, b) in rho.items()},
    )
    return Typing(map_annotations(annotated, ren), t)


def same_type(s: MorphismType, t: MorphismType) -> bool:
    """Equality up to a renaming of object variables."""
    from .functorial import Closed, equivalent
    arity = max(s.arity, t.arity)
    return equivalent(Closed(arity, FApp("->", (s.dom, s.cod))),
                      Closed(arity, FApp("->", (t.dom, t.cod))))


def type_instance(general: MorphismType, specific: MorphismType) -> bool:
    from .functorial import Closed, is_instance
    return is_instance(Closed(general.arity, FApp("->", (general.dom, general.cod))),
                       Closed(specific.arity, FApp("->", (specific.dom, specific.cod))))


# -- functors as morphisms -----------------------------------------------------------


def build(e: FExpr, images: Mapping[int, Expr], env: Environment, terminal: bool) -> Expr:
    """The morphism ``E[f/X]``: variable i acts as ``images[i]`` (identity if absent).

    In terminal mode a constant object with no components (the terminal or
    initial object) acts as its factorizer, the unique morphism into or out
    of it; otherwise constants act as the identity.
    """
    if isinstance(e, FVar):
        return images.get(e.index, ID)
    info = env.obj(e.name)
    if not e.args:
        if terminal and not info.decl.components:
            return Fact(info.decl.factorizer, ())
        return ID
    hs = [build(a, images, env, terminal) for a in e.args]
    if all(h == ID for h in hs):
        return ID
    return functor_morphism(e.name, hs, env, terminal)


def functor_morphism(name: str, hs: Sequence[Expr], env: Environment, terminal: bool = False) -> Expr:
    """``F(h1..hn)`` written with F's factorizer, naturals and smaller functors."""
    info = env.obj(name)
    if all(h == ID for h in hs):
        return ID
    images = {0: ID, **{k + 1: h for k, h in enumerate(hs)}}
    args = tuple(
        comp(build(c.cod, images, env, terminal), Nat(c.name), build(c.dom, images, env, terminal))
        for c in info.decl.components
    )
    return Fact(info.decl.factorizer, args)


def expand_functors(e: Expr, env: Environment) -> Expr:
    """Replace every functor application by its factorizer form."""
    match e:
        case Comp(parts):
            return comp(*(expand_functors(p, env) for p in parts))
        case Fact(name, args):
            return Fact(name, tuple(expand_functors(a, env) for a in args))
        case Func(name, args):
            return functor_morphism(name, [expand_functors(a, env) for a in args], env, terminal=False)
    return e
