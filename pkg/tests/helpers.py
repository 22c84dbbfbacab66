"""Shared test utilities: type parsing, a typing verifier, trailing-! erasure."""
import re

from cpl.functorial import FApp, FVar, subst_body
from cpl.inference import AComp, AFact, AFunc, AId, ANat, AVar, MorphismType, same_type
from cpl.morphism import Comp, Fact, comp
from cpl.syntax import Parser
from cpl.variance import CONTRA, FIXED


def parse_type(text: str) -> MorphismType:
    """Read ``DOM -> COD`` with ``*x`` object variables."""
    names = sorted(set(re.findall(r"\*(\w+)", text)))
    scope = {f"V_{n}": k for k, n in enumerate(names)}
    p = Parser(re.sub(r"\*(\w+)", r"V_\1", text))
    dom = p.fexpr(scope)
    p.expect("->")
    cod = p.fexpr(scope)
    return MorphismType(len(names), dom, cod)


def has_type(t: MorphismType, text: str) -> bool:
    return same_type(t, parse_type(text))


class Ill(Exception):
    pass


def derive(a, env, rho=None):
    """Recompute a type from annotations alone, checking every rule."""
    rho = rho or {}
    match a:
        case AId(k):
            return k, k
        case AComp(parts):
            types = [derive(p, env, rho) for p in parts]
            for outer, inner in zip(types, types[1:]):
                if inner[1] != outer[0]:
                    raise Ill("composition")
            return types[-1][0], types[0][1]
        case ANat(name, params):
            info, j = env.owner_of_natural(name)
            whole = FApp(info.name, tuple(params))
            c = info.decl.components[j]
            return subst_body(c.dom, [whole, *params]), subst_body(c.cod, [whole, *params])
        case AFact(name, annos, args):
            info = env.owner_of_factorizer(name)
            z, params = annos[0], list(annos[1:])
            for c, arg in zip(info.decl.components, args):
                if derive(arg, env, rho) != (subst_body(c.dom, [z, *params]), subst_body(c.cod, [z, *params])):
                    raise Ill(f"argument of {name}")
            whole = FApp(info.name, tuple(params))
            return (z, whole) if info.side == "right" else (whole, z)
        case AFunc(name, args):
            info = env.obj(name)
            doms, cods = [], []
            for v, arg in zip(info.varity, args):
                d, c = derive(arg, env, rho)
                if v is CONTRA:
                    d, c = c, d
                elif v is FIXED and d != c:
                    raise Ill("fixed slot")
                doms.append(d)
                cods.append(c)
            return FApp(name, tuple(doms)), FApp(name, tuple(cods))
        case AVar(name):
            return rho[name]
    raise Ill(repr(a))


def strip_terminal(e):
    """Erase ``!`` at the end of element chains; ``!`` on the terminal object is its identity."""
    match e:
        case Comp(parts):
            parts = [strip_terminal(p) for p in parts]
            while len(parts) > 1 and parts[-1] == Fact("!"):
                parts.pop()
            return comp(*parts)
        case Fact(name, args):
            return Fact(name, tuple(strip_terminal(x) for x in args))
    return e
