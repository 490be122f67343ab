"""The ``ivp`` command and its interactive loop.

Answers go to standard output, one per line.  The effective lambda-cut
header and the fixpoint iteration report go to standard error, so the
answer text can be piped and compared directly.
"""

from __future__ import annotations

import argparse
import os
import sys
from typing import Optional, TextIO

from .engine import ENGINES, model_answers
from .errors import IVPError, InvalidInterval, LexError, ParseError
from .fixpoint import herbrand, least_model, model_lines
from .interval import Interval, parse_interval
from .parser import parse_goal, parse_program
from .resolution import solve
from .swam import compile_program, compile_query, disassemble, run
from .swam.instructions import block_ranges
from .terms import Program

__all__ = ["main", "Repl", "Session"]

EXIT_ANSWERS, EXIT_NONE, EXIT_ERROR = 0, 1, 2


def depth_bound_from_env() -> int:
    value = os.environ.get("IVP_DEPTH_BOUND", "3")
    try:
        bound = int(value)
    except ValueError:
        raise IVPError(f"IVP_DEPTH_BOUND must be a non-negative integer, got {value!r}") from None
    if bound < 0:
        raise IVPError(f"IVP_DEPTH_BOUND must be a non-negative integer, got {value!r}")
    return bound


class Session:
    """A loaded program plus the settings that queries run under."""

    def __init__(self, program: Optional[Program] = None, *, engine: str = "wam",
                 lambda_cut: Optional[Interval] = None, depth_limit: Optional[int] = None,
                 depth_bound: int = 3):
        self.engine = engine
        self.lambda_override = lambda_cut
        self.depth_limit = depth_limit
        self.depth_bound = depth_bound
        self.load(program or Program())

    def load(self, program: Program) -> None:
        # everything derived from the previous program is dropped here
        self.program = program
        self._image = None
        self._model = None

    @property
    def lambda_cut(self) -> Interval:
        if self.lambda_override is not None:
            return self.lambda_override
        return self.program.lambda_cut

    @property
    def image(self):
        if self._image is None:
            self._image = compile_program(self.program)
        return self._image

    def model(self):
        if self._model is None:
            space = herbrand(self.program, self.depth_bound)
            model, n = least_model(self.program, space)
            self._model = (model, space, n)
        return self._model

    def answers(self, goal_text: str):
        goal = parse_goal(goal_text)
        if self.engine == "sld":
            return solve(self.program, goal, lambda_cut=self.lambda_cut, depth_limit=self.depth_limit)
        if self.engine == "wam":
            return run(compile_query(goal, self.image), self.lambda_cut, depth_limit=self.depth_limit)
        model, space, _ = self.model()
        return iter(model_answers(model, space, goal, self.lambda_cut))

    def code_listing(self, key: Optional[tuple] = None) -> str:
        image = self.image
        if key is None:
            return disassemble(image)
        ranges = block_ranges(image)
        if key not in ranges:
            raise IVPError(f"no code for {key[0]}/{key[1]}")
        return disassemble(image, ranges[key])


def _read_program(path: str) -> Program:
    try:
        with open(path, encoding="utf-8") as fh:
            source = fh.read()
    except OSError as exc:
        raise IVPError(f"cannot read {path}: {exc.strerror}") from None
    try:
        return parse_program(source)
    except (LexError, ParseError, InvalidInterval) as exc:
        raise IVPError(f"{path}:{exc}") from None


def _interval_arg(text: str) -> Interval:
    try:
        return parse_interval(text)
    except InvalidInterval as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _nonneg(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        n = -1
    if n < 0:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {text!r}")
    return n


def _parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="ivp", description="Interval-valued fuzzy logic programs.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("run", help="answer a goal", epilog=(
        "An interval written after a body atom is a threshold guard: the degree of that "
        "atom's own sub-derivation must dominate it, otherwise the branch fails. Guards "
        "never raise a degree, so an answer is at most the meet of the facts it uses."))
    p.add_argument("file")
    p.add_argument("-q", "--query", required=True, help="goal text, e.g. 'p(X)'")
    p.add_argument("--all", action="store_true", help="print every answer, not just the first")
    p.add_argument("--engine", choices=ENGINES, default="wam")
    p.add_argument("--lambda-cut", type=_interval_arg, help="threshold such as '[0.5,0.5]'")
    p.add_argument("--depth-limit", type=_nonneg)

    p = sub.add_parser("compile", help="show compiled code")
    p.add_argument("file")
    p.add_argument("--dump-code", action="store_true", help="print the disassembly")
    p.add_argument("-q", "--query", help="also compile this goal")

    p = sub.add_parser("model", help="print the least Herbrand model")
    p.add_argument("file")
    p.add_argument("--full", action="store_true", help="include atoms at [0.0,0.0]")

    p = sub.add_parser("repl", help="interactive session")
    p.add_argument("file", nargs="?")
    return ap


def main(argv: Optional[list] = None, stdout: TextIO = None, stderr: TextIO = None,
         stdin: TextIO = None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        args = _parser().parse_args(argv)
    except SystemExit as exc:
        return EXIT_ERROR if exc.code else EXIT_ANSWERS
    try:
        if args.command == "run":
            return _cmd_run(args, stdout, stderr)
        if args.command == "compile":
            return _cmd_compile(args, stdout)
        if args.command == "model":
            return _cmd_model(args, stdout, stderr)
        session = Session(_read_program(args.file) if args.file else None,
                          depth_bound=depth_bound_from_env())
        Repl(session, stdin or sys.stdin, stdout).loop()
        return EXIT_ANSWERS
    except IVPError as exc:
        print(f"ivp: error: {exc}", file=stderr)
        return EXIT_ERROR


def _cmd_run(args, stdout, stderr) -> int:
    session = Session(_read_program(args.file), engine=args.engine, lambda_cut=args.lambda_cut,
                      depth_limit=args.depth_limit, depth_bound=depth_bound_from_env())
    print(f"% lambda-cut {session.lambda_cut}", file=stderr)
    try:
        answers = session.answers(args.query)
    except (LexError, ParseError, InvalidInterval) as exc:
        raise IVPError(f"query:{exc}") from None
    count = 0
    for answer in answers:
        print(answer, file=stdout)
        count += 1
        if not args.all:
            break
    if count == 0:
        print("no", file=stdout)
    if getattr(answers, "incomplete", False):
        print("% depth limit reached; answers may be incomplete", file=stderr)
    return EXIT_ANSWERS if count else EXIT_NONE


def _cmd_compile(args, stdout) -> int:
    program = _read_program(args.file)
    image = compile_program(program)
    if args.query:
        try:
            image = compile_query(parse_goal(args.query), image)
        except (LexError, ParseError, InvalidInterval) as exc:
            raise IVPError(f"query:{exc}") from None
    if args.dump_code:
        stdout.write(disassemble(image))
    else:
        print(f"{len(image.instructions)} instructions, {len(image.labels)} predicates", file=stdout)
    return EXIT_ANSWERS


def _cmd_model(args, stdout, stderr) -> int:
    session = Session(_read_program(args.file), depth_bound=depth_bound_from_env())
    model, space, n = session.model()
    print(f"% fixpoint reached at iteration {n}", file=stderr)
    for line in model_lines(model, space, full=args.full):
        print(line, file=stdout)
    return EXIT_ANSWERS


class Repl:
    """Line-oriented loop: ``:``-commands or goals; ``;`` asks for the next answer."""

    PROMPT = "?- "

    def __init__(self, session: Optional[Session] = None, stdin: TextIO = None, stdout: TextIO = None):
        self.session = session or Session(depth_bound=depth_bound_from_env())
        self.stdin = stdin or sys.stdin
        self.stdout = stdout or sys.stdout

    def say(self, text: str) -> None:
        print(text, file=self.stdout)

    def loop(self) -> None:
        while True:
            self.stdout.write(self.PROMPT)
            self.stdout.flush()
            line = self.stdin.readline()
            if not line:
                self.say("")
                return
            if not self.handle(line.strip()):
                return

    def handle(self, line: str) -> bool:
        """Process one input line; False ends the session."""
        if not line:
            return True
        try:
            if line.startswith(":"):
                return self._command(line)
            self._goal(line)
        except IVPError as exc:
            self.say(f"error: {exc}")
        return True

    def _command(self, line: str) -> bool:
        name, _, rest = line.partition(" ")
        rest = rest.strip()
        s = self.session
        if name in (":quit", ":q"):
            return False
        if name == ":load":
            s.load(_read_program(rest))
            self.say(f"loaded {rest}")
        elif name == ":lambda":
            s.lambda_override = parse_interval(rest)
            self.say(f"lambda-cut {s.lambda_cut}")
        elif name == ":engine":
            if rest not in ENGINES:
                raise IVPError(f"unknown engine {rest!r}; choose from {', '.join(ENGINES)}")
            s.engine = rest
            self.say(f"engine {rest}")
        elif name == ":model":
            model, space, n = s.model()
            for text in model_lines(model, space):
                self.say(text)
            self.say(f"% fixpoint reached at iteration {n}")
        elif name == ":code":
            key = None
            if rest:
                pname, _, arity = rest.rpartition("/")
                if not pname or not arity.isdigit():
                    raise IVPError(f"expected name/arity, got {rest!r}")
                key = (pname, int(arity))
            self.stdout.write(s.code_listing(key))
        else:
            raise IVPError(f"unknown command {name}")
        return True

    def _goal(self, text: str) -> None:
        answers = iter(self.session.answers(text))
        answer = next(answers, None)
        if answer is None:
            self.say("no")
            return
        while answer is not None:
            self.stdout.write(f"{answer} ")
            self.stdout.flush()
            reply = self.stdin.readline().strip()
            if reply != ";":
                self.say("")
                if reply:
                    # anything but ";" ends the enumeration and is read as fresh input
                    self.handle(reply)
                return
            self.say("")
            answer = next(answers, None)
            if answer is None:
                self.say("no")


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
