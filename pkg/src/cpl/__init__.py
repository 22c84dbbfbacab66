"""An interpreter for a categorical programming language.

Data types are declared as left or right objects; point-free morphism
expressions are typed by unification and evaluated by a lazy and a full
reduction machine.
"""
from .environment import Component, Environment, ObjectDeclaration, declare_object
from .errors import (CPLError, CPLSyntaxError, CPLTypeError, DeclarationError, FuelExhausted,
                     StuckError, UnificationError)
from .inference import expand_functors, infer, resolve
from .reducer import reduce_full, reduce_lazy
from .repl import Runner, Session, exec_command, parse_command

__all__ = [
    "CPLError", "CPLSyntaxError", "CPLTypeError", "Component", "DeclarationError",
    "Environment", "FuelExhausted", "ObjectDeclaration", "Runner", "Session", "StuckError",
    "UnificationError", "declare_object", "exec_command", "expand_functors", "infer",
    "parse_command", "reduce_full", "reduce_lazy", "resolve",
]
