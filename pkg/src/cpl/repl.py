"""Commands, session state and the interactive loop."""
from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass, field, replace
from importlib import resources
from pathlib import Path
from typing import Callable, Iterable, TextIO, Union

from .environment import RIGHT, Definition, Environment, ObjectDeclaration, describe
from .errors import CPLError, CPLSyntaxError, CPLTypeError
from .functorial import FApp
from .inference import expand_functors, format_type, infer, resolve
from .morphism import Expr, format_canonical, format_expr
from .reducer import DEFAULT_FUEL, TraceRecord, reduce_full, reduce_lazy, to_expr
from .syntax import Parser

PROMPT = "cpl>"
CONTINUATION = "| "
BANNER = "Categorical Programming Language"
TYPE_INDENT = "    : "


# -- commands ------------------------------------------------------------------


@dataclass(frozen=True)
class Declare:
    decl: ObjectDeclaration


@dataclass(frozen=True)
class Let:
    name: str
    expr: Expr


@dataclass(frozen=True)
class Edit:
    body: Union[Declare, Let]


@dataclass(frozen=True)
class Show:
    expr: Expr


@dataclass(frozen=True)
class Simp:
    expr: Expr
    full: bool = False


@dataclass(frozen=True)
class Set:
    option: str
    value: str


@dataclass(frozen=True)
class Quit:
    pass


@dataclass(frozen=True)
class LoadFile:
    path: str


Command = Union[Edit, Declare, Let, Show, Simp, Set, Quit, LoadFile]


def parse_command(text: str, line: int = 1) -> Command:
    """Parse one complete command (an edit buffer includes its ``;``)."""
    words = text.split(None, 1)
    if words and words[0] == "load":
        path = words[1].strip().rstrip(";").strip() if len(words) > 1 else ""
        if not path:
            raise CPLSyntaxError("expected a file path", line, len(text.rstrip()) + 1)
        return LoadFile(path)
    p = Parser(text, line)
    word = p.tok.text if p.tok.kind == "ident" else ""
    match word:
        case "edit":
            p.i += 1
            body = _let_or_declaration(p)
            p.end()
            return Edit(body)
        case "left" | "right" | "let":
            body = _let_or_declaration(p)
            p.end()
            return body
        case "show":
            p.i += 1
            e = p.expr()
            p.end()
            return Show(e)
        case "simp":
            p.i += 1
            full = p.tok.text == "full" and p.peek().kind != "eof" and p.peek().text not in ".;"
            if full:
                p.i += 1
            e = p.expr()
            p.end()
            return Simp(e, full)
        case "set":
            p.i += 1
            option = p.ident("option name")
            value = p.ident("option value")
            p.end()
            return Set(option, value)
        case "quit" | "exit":
            p.i += 1
            p.end()
            return Quit()
    raise p.error("expected a command (edit, let, show, simp, set, load, quit)")


def _let_or_declaration(p: Parser) -> Union[Declare, Let]:
    if p.accept("let"):
        name = p.ident("definition name")
        p.expect("=")
        return Let(name, p.expr())
    return Declare(p.declaration())


# -- session ---------------------------------------------------------------------


@dataclass(frozen=True)
class Session:
    env: Environment = field(default_factory=Environment)
    it: Expr | None = None
    trace: bool = False
    fuel: int = DEFAULT_FUEL
    done: bool = False


@dataclass(frozen=True)
class Outcome:
    session: Session
    output: tuple[str, ...]


def _extra(session: Session) -> dict[str, Expr]:
    return {} if session.it is None else {"it": session.it}


def terminal_object(env: Environment) -> str:
    for name in env.order:
        d = env.obj(name).decl
        if d.side == RIGHT and not d.params and not d.components:
            return name
    raise CPLTypeError("no terminal object is declared (declare a right object with no components)")


def exec_command(cmd: Command, session: Session,
                 on_trace: Callable[[str], None] | None = None) -> Outcome:
    """Run one command.  On error the exception propagates and ``session`` is untouched."""
    env = session.env
    match cmd:
        case Edit(body):
            return exec_command(body, session, on_trace)
        case Declare(decl):
            env2 = env.declare(decl)
            return Outcome(replace(session, env=env2), (describe(env2.obj(decl.name)),))
        case Let(name, e):
            if name == "it":
                raise CPLTypeError("'it' is reserved for the last result")
            resolved = resolve(e, env, _extra(session))
            t = infer(resolved, env).type
            env2 = env.define(Definition(name, resolved, t.dom, t.cod))
            return Outcome(replace(session, env=env2), (f"{name} : {format_type(t)} defined",))
        case Show(e):
            t = infer(resolve(e, env, _extra(session)), env).type
            return Outcome(session, (format_expr(e), TYPE_INDENT + format_type(t)))
        case Simp(e, full):
            resolved = resolve(e, env, _extra(session))
            t = infer(resolved, env, dom=FApp(terminal_object(env))).type
            expanded = expand_functors(resolved, env)
            lines: list[str] = []

            def sink(rec: TraceRecord) -> None:
                if on_trace is not None:
                    on_trace(str(rec))
                else:
                    lines.append(str(rec))

            reduce = reduce_full if full else reduce_lazy
            result = reduce(expanded, env, fuel=session.fuel, trace=sink if session.trace else None)
            lines += [format_canonical(result), TYPE_INDENT + format_type(t)]
            return Outcome(replace(session, it=to_expr(result)), tuple(lines))
        case Set("trace", value):
            if value not in ("on", "off"):
                raise CPLTypeError(f"trace must be 'on' or 'off', not '{value}'")
            return Outcome(replace(session, trace=value == "on"), ())
        case Set(option, _):
            raise CPLTypeError(f"unknown option '{option}'")
        case Quit():
            return Outcome(replace(session, done=True), ())
        case LoadFile(path):
            runner = Runner(session)
            runner.run_file(Path(path))
            if runner.errors:
                raise CPLError(f"{runner.errors} error(s) while loading {path}: "
                               + "; ".join(runner.diagnostics))
            return Outcome(runner.session, tuple(runner.output))
    raise CPLTypeError(f"unknown command {cmd!r}")


# -- line assembly and driving -----------------------------------------------------


class CommandReader:
    """Groups input lines into complete command texts.

    ``edit`` and bare ``left``/``right`` declarations collect lines until one
    contains ``;``.  Every other non-blank line is a command on its own.
    """

    def __init__(self):
        self.buffer: list[str] = []
        self.start = 0

    @property
    def pending(self) -> bool:
        return bool(self.buffer)

    def feed(self, line: str, lineno: int) -> tuple[str, int] | None:
        stripped = line.strip()
        if not self.buffer:
            if not stripped or stripped.startswith("#"):
                return None
            word = stripped.split(None, 1)[0]
            if word in ("edit", "left", "right") and ";" not in stripped:
                self.buffer = [line]
                self.start = lineno
                return None
            return line, lineno
        self.buffer.append(line)
        if ";" in line:
            text = "\n".join(self.buffer)
            self.buffer = []
            return text, self.start
        return None

    def flush(self) -> tuple[str, int] | None:
        if not self.buffer:
            return None
        text = "\n".join(self.buffer)
        self.buffer = []
        return text, self.start


class Runner:
    """Feeds lines through parse/exec, collecting output and diagnostics."""

    def __init__(self, session: Session | None = None,
                 out: Callable[[str], None] | None = None,
                 err: Callable[[str], None] | None = None,
                 source: str = "<input>"):
        self.session = session or Session()
        self.output: list[str] = []
        self.diagnostics: list[str] = []
        self._out = out
        self._err = err
        self.source = source
        self.reader = CommandReader()

    @property
    def errors(self) -> int:
        return len(self.diagnostics)

    def emit(self, line: str) -> None:
        self.output.append(line)
        if self._out is not None:
            self._out(line)

    def diagnose(self, message: str) -> None:
        self.diagnostics.append(message)
        if self._err is not None:
            self._err(message)

    def execute(self, text: str, lineno: int = 1) -> None:
        try:
            cmd = parse_command(text, lineno)
            outcome = exec_command(cmd, self.session,
                                   on_trace=self.emit if self._out is not None else None)
        except CPLError as err:
            self.diagnose(f"{self.source}:{lineno}: error: {err}")
            return
        except RecursionError:
            self.diagnose(f"{self.source}:{lineno}: error: expression nests too deeply")
            return
        self.session = outcome.session
        for line in outcome.output:
            self.emit(line)

    def feed(self, line: str, lineno: int) -> None:
        ready = self.reader.feed(line, lineno)
        if ready is not None:
            self.execute(*ready)

    def finish(self) -> None:
        leftover = self.reader.flush()
        if leftover is not None:
            self.execute(*leftover)

    def run_lines(self, lines: Iterable[str]) -> None:
        for n, line in enumerate(lines, 1):
            if self.session.done:
                break
            self.feed(line.rstrip("\n"), n)
        self.finish()

    def run_text(self, text: str) -> None:
        self.run_lines(text.splitlines())

    def run_file(self, path: Path) -> None:
        previous = self.source
        self.source = str(path)
        try:
            text = path.read_text(encoding="utf-8")
        except OSError as err:
            self.diagnose(f"{path}: error: {err.strerror or err}")
        else:
            self.run_text(text)
        finally:
            self.source = previous


def bundled(name: str) -> str:
    return resources.files("cpl").joinpath("data", name).read_text(encoding="utf-8")


def interact(runner: Runner, stdin: TextIO, stdout: TextIO) -> None:
    tty = stdin.isatty()
    if tty:
        print(BANNER, file=stdout)
    lineno = 0
    while not runner.session.done:
        if tty:
            stdout.write(CONTINUATION if runner.reader.pending else PROMPT)
            stdout.flush()
        line = stdin.readline()
        if not line:
            break
        lineno += 1
        runner.feed(line.rstrip("\n"), lineno)
    runner.finish()


def main(argv: list[str] | None = None) -> int:
    ap = argparse.ArgumentParser(prog="cpl", description="Interpreter for categorical data types.")
    ap.add_argument("files", nargs="*", help="command scripts to load before the prompt")
    ap.add_argument("--no-repl", action="store_true", help="exit after loading the files")
    ap.add_argument("--fuel", type=int, default=DEFAULT_FUEL, help="maximum reduction steps")
    ap.add_argument("--prelude", action="store_true", help="load the bundled standard objects first")
    args = ap.parse_args(argv)
    if args.fuel <= 0:
        ap.error("--fuel must be positive")

    runner = Runner(Session(fuel=args.fuel),
                    out=lambda s: print(s, flush=True),
                    err=lambda s: print(s, file=sys.stderr, flush=True))
    if args.prelude:
        runner.source = "<prelude>"
        runner.run_text(bundled("prelude.cpl"))
        runner.source = "<input>"
    for f in args.files:
        runner.run_file(Path(f))
        if runner.session.done:
            break
    if not args.no_repl and not runner.session.done:
        runner.source = "<stdin>"
        interact(runner, sys.stdin, sys.stdout)
    return 1 if runner.errors else 0
