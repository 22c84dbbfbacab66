"""The lazy and full reduction machines for elements.

A machine configuration is a stack of pending factors (the top of the stack
is the rightmost factor, applied first) and a canonical element, a tuple of
factors whose trailing identity is implicit.  Every step applies exactly one
rule; ``_rule_for`` checks that the premises of exactly one rule match.

Constant objects with no components (the terminal and initial objects) act
as their factorizer only when a left factorizer is unfolded, which is where
the trailing ``!`` of results such as ``s.s.0.!`` comes from.  Everywhere
else they act as the identity, which denotes the same morphism.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from .environment import RIGHT, SELF, Environment, ObjectInfo
from .errors import FuelExhausted, StuckError
from .functorial import FApp, FExpr, FVar, occurs, subst_body
from .inference import build
from .morphism import ID, Comp, Expr, Fact, Func, Id, MVar, Nat, comp, factors, format_canonical, format_expr

DEFAULT_FUEL = 1_000_000

Canonical = tuple


@dataclass(frozen=True, slots=True)
class TraceRecord:
    step: int
    depth: int
    expr: str
    canonical: str

    def __str__(self) -> str:
        depth = f"[{self.depth}]" if self.depth else ""
        return f"{self.step}{depth}:{self.expr}*{self.canonical}"


def to_expr(c: Canonical) -> Expr:
    return comp(*c)


class Machine:
    """One reduction run: shared step counter, fuel and trace sink."""

    def __init__(self, env: Environment, fuel: int = DEFAULT_FUEL,
                 trace: Callable[[TraceRecord], None] | None = None, full: bool = False):
        self.env = env
        self.fuel = fuel
        self.trace = trace
        self.full = full
        self.steps = 0

    # -- bookkeeping ---------------------------------------------------------

    def _emit(self, depth: int, stack: list, c: Canonical, explicit_id: bool = False) -> None:
        if self.steps >= self.fuel:
            raise FuelExhausted(self.fuel)
        if self.trace is not None:
            canon = format_canonical(c, "id" if explicit_id else "")
            self.trace(TraceRecord(self.steps, depth, format_canonical(tuple(stack), ""), canon))
        self.steps += 1

    def _rule_for(self, f: Expr, c: Canonical) -> str:
        """Name of the unique rule whose premises match; stuck otherwise."""
        env = self.env
        head = c[0] if c else None
        candidates = []
        if isinstance(f, Id):
            candidates.append("IDENT")
        if isinstance(f, Comp):
            candidates.append("COMP")
        if isinstance(f, Nat) and f.name in env.naturals:
            owner, _ = env.owner_of_natural(f.name)
            candidates.append("R-NAT" if owner.side == RIGHT else "L-NAT")
        if isinstance(f, Fact) and f.name in env.factorizers:
            owner = env.owner_of_factorizer(f.name)
            if owner.side == RIGHT:
                if self.full and owner.unconditioned:
                    candidates.append("C-FACT")
                else:
                    candidates.append("R-FACT")
            elif isinstance(head, Nat) and env.naturals.get(head.name, ("",))[0] == owner.name:
                candidates.append("L-FACT")
        if len(candidates) != 1:
            shown = format_canonical(c)
            raise StuckError(
                f"{len(candidates)} rules apply to {format_expr(f)} against {shown}: {candidates}")
        return candidates[0]

    # -- the machine ---------------------------------------------------------

    def run(self, e: Expr, c: Canonical = (), depth: int = 0) -> Canonical:
        stack = list(factors(e))
        explicit_id = False
        self._emit(depth, stack, c)
        while stack:
            f = stack.pop()
            rule = self._rule_for(f, c)
            match rule:
                case "IDENT":
                    pass
                case "COMP":
                    stack.extend(f.parts)
                case "L-NAT" | "R-FACT":
                    c = (f,) + c
                case "L-FACT":
                    owner = self.env.owner_of_factorizer(f.name)
                    _, j = self.env.naturals[c[0].name]
                    comp_j = owner.decl.components[j]
                    pushed = comp(f.args[j], build(comp_j.dom, {SELF: f}, self.env, terminal=True))
                    stack.extend(factors(pushed))
                    c = c[1:]
                case "R-NAT":
                    owner, j = self.env.owner_of_natural(f.name)
                    comp_j = owner.decl.components[j]
                    if self.full:
                        psi, c = self._full_locate(c, comp_j.dom, owner)
                    else:
                        psi, c = self.project(c, comp_j.dom, owner, depth + 1)
                    pushed = comp(build(comp_j.cod, {SELF: psi}, self.env, terminal=False), psi.args[j])
                    stack.extend(factors(pushed))
                case "C-FACT":
                    c = (self._saturate(f, c, depth + 1),)
            explicit_id = rule == "R-NAT" and not c
            self._emit(depth, stack, c, explicit_id)
        return c

    def project(self, c: Canonical, e: FExpr, target: ObjectInfo, depth: int) -> tuple[Fact, Canonical]:
        """Split ``c`` as ``E[ψ(..)/R] . c''`` for ``E`` productive in ``R``."""
        env = self.env
        if isinstance(e, FVar):
            if e.index != SELF:
                raise StuckError(f"projection reached parameter X{e.index}")
            head = c[0] if c else None
            if not (isinstance(head, Fact) and head.name == target.decl.factorizer):
                raise StuckError(
                    f"expected {target.decl.factorizer}(..) at the head of {format_canonical(c)}")
            return head, c[1:]
        slot, info, j = _productive_step(e, env)
        head = c[0] if c else None
        if not (isinstance(head, Fact) and head.name == info.decl.factorizer):
            raise StuckError(f"expected {info.decl.factorizer}(..) at the head of {format_canonical(c)}")
        rest = c[1:]
        inner = self.run(head.args[j], rest, depth)
        next_e = subst_body(info.decl.components[j].cod, [e, *e.args])
        psi, residual = self.project(inner, next_e, target, depth + 1)
        tail = to_expr(rest)
        args = tuple(
            to_expr(residual) if k == j
            else comp(a, build(info.decl.components[k].dom, {SELF: tail}, env, terminal=False))
            for k, a in enumerate(head.args))
        return psi, (Fact(head.name, args),)

    # -- full evaluation -----------------------------------------------------

    def _saturate(self, f: Fact, p: Canonical, depth: int) -> Fact:
        """Push the unconditioned element ``p`` into every argument of ``f``."""
        info = self.env.owner_of_factorizer(f.name)
        px = to_expr(p)
        args = []
        for c, a in zip(info.decl.components, f.args):
            if c.dom == FVar(SELF):
                args.append(to_expr(self.run(a, p, depth)))
            else:
                args.append(comp(a, build(c.dom, {SELF: px}, self.env, terminal=False)))
        return Fact(f.name, tuple(args))

    def _full_locate(self, p: Canonical, e: FExpr, target: ObjectInfo) -> tuple[Fact, Canonical]:
        """Find ``ψ_R`` along the path of ``R`` in ``e`` and remove it from ``p``."""
        if isinstance(e, FVar):
            head = p[0] if p else None
            if not (isinstance(head, Fact) and head.name == target.decl.factorizer):
                raise StuckError(
                    f"expected {target.decl.factorizer}(..) at the head of {format_canonical(p)}")
            return head, p[1:]
        slot, info, j = _productive_step(e, self.env)
        head = p[0] if p else None
        if not (isinstance(head, Fact) and head.name == info.decl.factorizer):
            raise StuckError(f"expected {info.decl.factorizer}(..) at the head of {format_canonical(p)}")
        next_e = subst_body(info.decl.components[j].cod, [e, *e.args])
        psi, inner = self._full_locate(factors(head.args[j]), next_e, target)
        args = tuple(to_expr(inner) if k == j else a for k, a in enumerate(head.args))
        return psi, (Fact(head.name, args),) + p[1:]


def _productive_step(e: FApp, env: Environment) -> tuple[int, ObjectInfo, int]:
    """The unique argument of ``e`` holding the self-reference and its projection."""
    slots = [k for k, a in enumerate(e.args) if occurs(SELF, a)]
    info = env.objects.get(e.name)
    if len(slots) != 1 or info is None or slots[0] not in info.productive:
        raise StuckError(f"{e} is not productive in the self-reference")
    return slots[0], info, info.productive[slots[0]]


def _check_input(e: Expr) -> None:
    for f in _walk(e):
        if isinstance(f, (Func, MVar)):
            raise StuckError(f"cannot reduce {format_expr(f)}: expand functors and close the term first")


def _walk(e: Expr):
    yield e
    if isinstance(e, Comp):
        for p in e.parts:
            yield from _walk(p)
    elif isinstance(e, (Fact, Func)):
        for a in e.args:
            yield from _walk(a)


def reduce_lazy(e: Expr, env: Environment, c: Canonical = (), *, fuel: int = DEFAULT_FUEL,
                trace: Callable[[TraceRecord], None] | None = None) -> Canonical:
    """Reduce ``⟨e, c⟩`` to a canonical element."""
    _check_input(e)
    return Machine(env, fuel, trace).run(e, tuple(c))


def reduce_full(e: Expr, env: Environment, p: Canonical = (), *, fuel: int = DEFAULT_FUEL,
                trace: Callable[[TraceRecord], None] | None = None) -> Canonical:
    """Reduce ``⟨e, p⟩`` to an unconditioned canonical element."""
    _check_input(e)
    return Machine(env, fuel, trace, full=True).run(e, tuple(p))


def project(c: Canonical, e: FExpr, target: str, env: Environment, *, fuel: int = DEFAULT_FUEL,
            trace: Callable[[TraceRecord], None] | None = None) -> tuple[Fact, Canonical]:
    """Stand-alone projection ``⟨c, E, R⟩ ⤳ ⟨ψ_R(..), c''⟩``."""
    return Machine(env, fuel, trace).project(tuple(c), e, env.obj(target), 1)
