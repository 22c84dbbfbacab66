"""Object declarations and the environment they extend.

In every component expression of a declaration, variable 0 is the
self-reference (the object being declared) and variables 1..n are its
parameters.
"""
from __future__ import annotations

from dataclasses import dataclass, field, replace
from functools import reduce
from typing import Mapping

from .errors import DeclarationError
from .functorial import Closed, FApp, FExpr, FVar, functor_names, occurs, variance_of
from .variance import CO, CONTRA, FREE, Variance, Varity, lub_varity, lub_variance, scale_varity

LEFT = "left"
RIGHT = "right"
SELF = 0


@dataclass(frozen=True, slots=True)
class Component:
    name: str
    dom: FExpr
    cod: FExpr


@dataclass(frozen=True, slots=True)
class ObjectDeclaration:
    side: str
    name: str
    params: tuple[str, ...]
    factorizer: str
    components: tuple[Component, ...]

    @property
    def arity(self) -> int:
        return len(self.params)

    def closed(self, e: FExpr) -> Closed:
        return Closed(self.arity + 1, e)


@dataclass(frozen=True, slots=True)
class ObjectInfo:
    decl: ObjectDeclaration
    varity: Varity
    unconditioned: bool
    # parameter position (0-based) -> index of its projection component
    productive: Mapping[int, int]

    @property
    def side(self) -> str:
        return self.decl.side

    @property
    def name(self) -> str:
        return self.decl.name


@dataclass(frozen=True, slots=True)
class Definition:
    name: str
    expr: object
    dom: object = None
    cod: object = None


@dataclass(frozen=True)
class Environment:
    objects: Mapping[str, ObjectInfo] = field(default_factory=dict)
    naturals: Mapping[str, tuple[str, int]] = field(default_factory=dict)
    factorizers: Mapping[str, str] = field(default_factory=dict)
    definitions: Mapping[str, Definition] = field(default_factory=dict)
    order: tuple[str, ...] = ()

    @property
    def varities(self) -> dict[str, Varity]:
        return {name: info.varity for name, info in self.objects.items()}

    def is_bound(self, name: str) -> bool:
        return (name in self.objects or name in self.naturals
                or name in self.factorizers or name in self.definitions)

    def obj(self, name: str) -> ObjectInfo:
        return self.objects[name]

    def owner_of_natural(self, name: str) -> tuple[ObjectInfo, int]:
        owner, j = self.naturals[name]
        return self.objects[owner], j

    def owner_of_factorizer(self, name: str) -> ObjectInfo:
        return self.objects[self.factorizers[name]]

    def declare(self, decl: ObjectDeclaration) -> Environment:
        return declare_object(decl, self)

    def define(self, d: Definition) -> Environment:
        if self.is_bound(d.name):
            raise DeclarationError(f"'{d.name}' is already defined")
        return replace(self, definitions={**self.definitions, d.name: d})


def check_productive(e: FExpr, target: int, env: Environment) -> bool:
    """Is ``e`` productive in variable ``target``?

    Either ``e`` is the variable itself, or ``e = P(.., Ek, ..)`` where ``P``
    is productive in slot k, ``Ek`` is productive in ``target`` and no other
    argument mentions ``target``.
    """
    if isinstance(e, FVar):
        return e.index == target
    holders = [k for k, a in enumerate(e.args) if occurs(target, a)]
    if len(holders) != 1:
        return False
    k = holders[0]
    info = env.objects.get(e.name)
    if info is None or k not in info.productive:
        return False
    return check_productive(e.args[k], target, env)


def check_unconditioned(decl: ObjectDeclaration) -> bool:
    if decl.side != RIGHT:
        return False
    return not any(occurs(SELF, c.cod) for c in decl.components)


def productive_slots(decl: ObjectDeclaration, env: Environment) -> dict[int, int]:
    """Parameters in which a right object is productive, with their projections."""
    if decl.side != RIGHT or not check_unconditioned(decl):
        return {}
    slots = {}
    for p in range(decl.arity):
        var = p + 1
        if any(occurs(var, c.dom) for c in decl.components):
            continue
        holders = [j for j, c in enumerate(decl.components) if occurs(var, c.cod)]
        if len(holders) != 1:
            continue
        j = holders[0]
        comp = decl.components[j]
        if comp.dom != FVar(SELF):
            continue
        if check_productive(comp.cod, var, env):
            slots[p] = j
    return slots


def declared_varity(decl: ObjectDeclaration, env: Environment) -> Varity:
    """Parameter varity of the declared functor.

    Left: lub over components of ``s ∨ −•s'``; right: ``−•s ∨ s'``, where s
    and s' are the parameter varities of the domain and codomain.
    """
    varities = env.varities
    acc: Varity = tuple(FREE for _ in decl.params)
    for c in decl.components:
        s = variance_of(decl.closed(c.dom), varities)[1:]
        s2 = variance_of(decl.closed(c.cod), varities)[1:]
        if decl.side == LEFT:
            term = lub_varity(s, scale_varity(CONTRA, s2))
        else:
            term = lub_varity(scale_varity(CONTRA, s), s2)
        acc = lub_varity(acc, term)
    return acc


def _resolve_names(decl: ObjectDeclaration, env: Environment) -> None:
    names = [decl.name, decl.factorizer] + [c.name for c in decl.components]
    seen = set()
    for n in names:
        if n in seen:
            raise DeclarationError(f"'{n}' is declared twice in object '{decl.name}'")
        seen.add(n)
        if env.is_bound(n):
            raise DeclarationError(f"'{n}' is already defined")
    if len(set(decl.params)) != len(decl.params):
        raise DeclarationError(f"duplicate parameter in object '{decl.name}'")
    for c in decl.components:
        for side in (c.dom, c.cod):
            for node in _apps(side):
                if node.name == decl.name:
                    raise DeclarationError(
                        f"'{decl.name}' must appear without arguments inside its own declaration")
                info = env.objects.get(node.name)
                if info is None:
                    raise DeclarationError(f"unknown functor '{node.name}' in component '{c.name}'")
                if info.decl.arity != len(node.args):
                    raise DeclarationError(
                        f"functor '{node.name}' expects {info.decl.arity} arguments, got {len(node.args)}")
            decl.closed(side)  # raises on out-of-range variables


def _apps(e: FExpr):
    if isinstance(e, FApp):
        yield e
        for a in e.args:
            yield from _apps(a)


def _check_variance(decl: ObjectDeclaration, env: Environment) -> None:
    varities = env.varities
    for c in decl.components:
        v = variance_of(decl.closed(c.dom), varities)[SELF]
        v2 = variance_of(decl.closed(c.cod), varities)[SELF]
        for where, var in (("domain", v), ("codomain", v2)):
            if var not in (CO, FREE):
                raise DeclarationError(
                    f"'{decl.name}' must be covariant or free in the {where} of '{c.name}' "
                    f"(found {var})")
        if lub_variance(v, v2) is not CO:
            raise DeclarationError(f"'{c.name}' does not mention '{decl.name}' covariantly")


def _check_computable(decl: ObjectDeclaration, env: Environment) -> None:
    for c in decl.components:
        if decl.side == LEFT and c.cod != FVar(SELF):
            raise DeclarationError(
                f"left object '{decl.name}' is not computable: "
                f"the codomain of '{c.name}' must be '{decl.name}' itself")
        if decl.side == RIGHT and not check_productive(c.dom, SELF, env):
            raise DeclarationError(
                f"right object '{decl.name}' is not computable: "
                f"the domain of '{c.name}' is not productive in '{decl.name}'")


def declare_object(decl: ObjectDeclaration, env: Environment) -> Environment:
    """Validate ``decl`` and return the extended environment.

    ``env`` itself is never modified, so a rejected declaration leaves the
    caller's environment as it was.
    """
    if decl.side not in (LEFT, RIGHT):
        raise DeclarationError(f"unknown object side '{decl.side}'")
    _resolve_names(decl, env)
    _check_variance(decl, env)
    _check_computable(decl, env)
    varity = declared_varity(decl, env)
    info = ObjectInfo(
        decl=decl,
        varity=varity,
        unconditioned=check_unconditioned(decl),
        productive=productive_slots(decl, env),
    )
    naturals = dict(env.naturals)
    for j, c in enumerate(decl.components):
        naturals[c.name] = (decl.name, j)
    return replace(
        env,
        objects={**env.objects, decl.name: info},
        naturals=naturals,
        factorizers={**env.factorizers, decl.factorizer: decl.name},
        order=env.order + (decl.name,),
    )


def describe(info: ObjectInfo) -> str:
    """The echo line printed after a successful declaration."""
    from .variance import format_varity
    return f"{info.side} object {info.name}{format_varity(info.varity)} defined"
