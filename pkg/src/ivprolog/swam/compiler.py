"""Compile programs and goals to SWAM code.

Each predicate becomes one block.  Its first instruction sets the clause
degree: ``trust_me`` for a single clause, otherwise a
``try_me_else``/``retry_me_else``/``trust_me`` chain carrying each
alternative's annotation.  Rule variables live in permanent ``Y`` registers,
fact variables in temporary ``X`` registers and query variables in ``Q``
registers.  Nested head terms are unified in pre-order so weak unification
meets symbol degrees in the same order as the reference resolver.
"""

from __future__ import annotations

from typing import Union

from ..errors import CompileError
from ..interval import TOP
from ..parser import parse_goal
from ..proximity import ProximityTable
from ..terms import Atom, Clause, Compound, Constant, Goal, Program, Variable
from .instructions import CodeImage, Instr

__all__ = ["compile_program", "compile_query"]


class _ClauseCompiler:
    def __init__(self, var_prefix: str):
        self.code: list[Instr] = []
        self.var_prefix = var_prefix
        self.vars: dict[Variable, str] = {}
        self.n_temps = 0
        self.n_perm = 0

    def emit(self, op: str, *args) -> None:
        self.code.append(Instr(op, args))

    def temp(self) -> str:
        r = f"X{self.n_temps}"
        self.n_temps += 1
        return r

    def perm(self) -> str:
        r = f"Y{self.n_perm}"
        self.n_perm += 1
        return r

    def new_var_reg(self, v: Variable) -> str:
        reg = self.perm() if self.var_prefix == "Y" else self.temp()
        self.vars[v] = reg
        return reg

    def get(self, term, reg: str) -> None:
        if isinstance(term, Variable):
            if term in self.vars:
                self.emit("get_value", self.vars[term], reg)
            else:
                self.emit("get_variable", self.new_var_reg(term), reg)
        elif isinstance(term, Constant):
            self.emit("get_constant", term.name, reg)
        else:
            self.emit("get_structure", (term.functor, term.arity), reg)
            slots = [self.temp() for _ in term.args]
            for s in slots:
                self.emit("unify_variable", s)
            for sub, s in zip(term.args, slots):
                self.get(sub, s)

    def put(self, term, reg: str) -> None:
        if isinstance(term, Variable):
            if term in self.vars:
                self.emit("put_value", self.vars[term], reg)
            else:
                self.emit("put_variable", self.new_var_reg(term), reg)
        elif isinstance(term, Constant):
            self.emit("put_constant", term.name, reg)
        else:
            slots = []
            for sub in term.args:
                s = self.temp()
                self.put(sub, s)
                slots.append(s)
            self.emit("put_structure", (term.functor, term.arity), reg)
            for s in slots:
                self.emit("unify_value", s)


def _compile_clause(clause: Clause) -> list[Instr]:
    if clause.is_fact:
        cc = _ClauseCompiler("X")
        for i, arg in enumerate(clause.head.args):
            cc.get(arg, f"A{i}")
        cc.emit("proceed")
        return cc.code
    cc = _ClauseCompiler("Y")
    cc.emit("allocate")
    for i, arg in enumerate(clause.head.args):
        cc.get(arg, f"A{i}")
    for atom, guard in zip(clause.body, clause.guards):
        slot = cc.perm() if guard is not None else None
        if slot:
            cc.emit("open_guard", slot)
        for i, arg in enumerate(atom.args):
            cc.put(arg, f"A{i}")
        cc.emit("call", atom.key)
        if slot:
            cc.emit("close_guard", guard, slot)
    cc.emit("deallocate")
    cc.emit("proceed")
    return cc.code


def compile_program(program: Program, *, strict: bool = False) -> CodeImage:
    """Compile every predicate block; ``strict`` rejects calls to undefined predicates."""
    defined = set(program.predicates())
    if strict:
        table = ProximityTable.from_program(program)
        for c in program.clauses:
            for atom in c.body:
                name, arity = atom.key
                if atom.key not in defined and not any(
                        (p, arity) in defined for p in table.partners(name)):
                    raise CompileError(f"call to undefined predicate {name}/{arity} in {c}")
    code: list[Instr] = []
    labels: dict[tuple[str, int], int] = {}
    for key in program.predicate_order():
        clauses = program.clauses_for(key)
        labels[key] = len(code)
        pending = None  # index of the try/retry whose target is the next clause
        for i, clause in enumerate(clauses):
            if pending is not None:
                op, _, deg = code[pending].op, *code[pending].args
                code[pending] = Instr(op, (len(code), deg))
                pending = None
            if len(clauses) == 1 or i == len(clauses) - 1:
                code.append(Instr("trust_me", (clause.annotation,)))
            else:
                pending = len(code)
                code.append(Instr("try_me_else" if i == 0 else "retry_me_else", (-1, clause.annotation)))
            code.extend(_compile_clause(clause))
    return CodeImage(tuple(code), labels, None, ProximityTable.from_program(program))


def compile_query(goal: Union[Goal, str], image: CodeImage) -> CodeImage:
    """Append (or replace) the query block and point the entry at it."""
    if isinstance(goal, str):
        goal = parse_goal(goal)
    code = list(image.instructions[:image.program_size])
    entry = len(code)
    cc = _ClauseCompiler("Q")
    cc.emit("trust_me", TOP)
    for i, v in enumerate(goal.variables()):
        reg = f"Q{i}"
        cc.vars[v] = reg
        cc.emit("create_variable", reg, v.name)
    for atom in goal.atoms:
        for i, arg in enumerate(atom.args):
            cc.put(arg, f"A{i}")
        cc.emit("call", atom.key)
    cc.emit("halt")
    code.extend(cc.code)
    return CodeImage(tuple(code), image.labels, entry, image.proximity)
