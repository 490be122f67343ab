"""The abstract machine.

State follows the classic WAM layout, with Python containers standing in
for memory areas:

* ``heap``: list of cells ``('REF', a)``, ``('CON', c)``, ``('STR', a)`` and
  ``('FUN', f, n)``; an unbound variable is a ``REF`` cell pointing at itself;
* argument and temporary registers in one dict, permanent registers in
  environment frames, query registers on the machine;
* a choice-point stack whose frames save the registers, the trail mark, the
  heap top, the next alternative and the degree register;
* the degree register ``D``, which only ever decreases along a branch, and a
  second register ``G`` that holds the degree of the innermost guarded
  sub-derivation.

A mismatch between distinct constants, functors or predicate names consults
the proximity table and, on a hit, meets the proximity degree into ``D``.
Every update of ``D`` is followed by the lambda-cut test.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, Optional

from ..answers import Answer, AnswerStream, canonical_bindings
from ..errors import MachineFault
from ..interval import BOTTOM, TOP, Interval, get_tnorm
from ..terms import Compound, Constant, Variable
from .instructions import CodeImage

__all__ = ["Machine", "run", "ChoicePoint", "MachineStats"]


@dataclass(slots=True)
class _Frame:
    prev: Optional["_Frame"]
    cp: int
    y: dict = field(default_factory=dict)


@dataclass(slots=True)
class ChoicePoint:
    kind: str  # "clause", "dispatch" or "sentinel"
    ident: int
    regs: dict
    env: Optional[_Frame]
    env_depth: int
    cp: int
    heap_top: int
    trail_top: int
    degree: Interval
    guard_degree: Interval
    depth: int
    next: int = -1  # clause alternative address
    alternatives: list = field(default_factory=list)  # dispatch: [(addr, degree), ...]


@dataclass
class MachineStats:
    heap: int
    trail: int
    choice_points: int
    environments: int


class _Fail(Exception):
    pass


class _Halt(Exception):
    pass


class Machine:
    """One execution of a code image; iterate :meth:`answers` for results.

    With ``trace=True`` the machine records ``events``: ``("enter", addr, D)``
    after each clause entry, ``("push", id, D)`` when a choice point is
    created and ``("restore", id, D)`` right after one is restored.
    """

    def __init__(self, image: CodeImage, lambda_cut: Interval = BOTTOM, *,
                 depth_limit: Optional[int] = None, occurs_check: bool = False,
                 tnorm: str = "min", trace: bool = False):
        if image.query_entry is None:
            raise MachineFault("image has no query block")
        image.validate()
        self.image = image
        self.code = image.instructions
        self.table = image.proximity
        self.lam = lambda_cut
        self.depth_limit = depth_limit
        self.occurs_check = occurs_check
        self.t = get_tnorm(tnorm)
        self.trace = trace
        self.events: list = []
        self.incomplete = False
        self.baseline: Optional[MachineStats] = None
        self._dispatch_cache: dict = {}
        self._reset()

    def _reset(self) -> None:
        self.heap: list = []
        self.trail: list = []
        self.regs: dict = {}
        self.q: dict = {}
        self.q_names: list = []
        self.env: Optional[_Frame] = None
        self.env_depth = 0
        self.stack: list[ChoicePoint] = []
        self.D = TOP
        self.G = TOP
        self.pc = self.image.query_entry
        self.cp = -1
        self.depth = 0
        self.mode_read = False
        self.s = 0
        self._cp_ids = 0
        self._sentinel = False

    # statistics

    def sizes(self) -> MachineStats:
        return MachineStats(len(self.heap), len(self.trail), len(self.stack), self.env_depth)

    # heap helpers

    def _new_var(self) -> int:
        a = len(self.heap)
        self.heap.append(("REF", a))
        return a

    def deref(self, a: int) -> int:
        heap = self.heap
        while True:
            cell = heap[a]
            if cell[0] == "REF" and cell[1] != a:
                a = cell[1]
            else:
                return a

    def _unbound(self, a: int) -> bool:
        cell = self.heap[a]
        return cell[0] == "REF" and cell[1] == a

    def _bind(self, a: int, cell: tuple) -> None:
        self.heap[a] = cell
        self.trail.append(a)

    def _occurs(self, v: int, a: int) -> bool:
        todo = [a]
        while todo:
            x = self.deref(todo.pop())
            if x == v:
                return True
            cell = self.heap[x]
            if cell[0] == "STR":
                _, _, n = self.heap[cell[1]]
                todo.extend(range(cell[1] + 1, cell[1] + 1 + n))
        return False

    def _bind_var(self, v: int, other: int) -> None:
        if self.occurs_check and self._occurs(v, other):
            raise _Fail
        self._bind(v, ("REF", other))

    def _degrade(self, x: Interval) -> None:
        self.D = self.t(self.D, x)
        self.G = self.t(self.G, x)
        if not self.D >= self.lam:
            raise _Fail

    def _symbol_degree(self, a: str, b: str) -> Interval:
        d = self.table.degree(a, b)
        if d is None:
            raise _Fail
        return d

    def unify(self, a: int, b: int) -> None:
        heap = self.heap
        acc = TOP
        todo = [(a, b)]
        while todo:
            x, y = todo.pop()
            x, y = self.deref(x), self.deref(y)
            if x == y:
                continue
            cx, cy = heap[x], heap[y]
            ux = cx[0] == "REF"
            uy = cy[0] == "REF"
            if ux and uy:
                # younger variable points at the older one
                if x < y:
                    self._bind_var(y, x)
                else:
                    self._bind_var(x, y)
            elif ux:
                self._bind_var(x, y)
            elif uy:
                self._bind_var(y, x)
            elif cx[0] == "CON" and cy[0] == "CON":
                if cx[1] != cy[1]:
                    acc = self.t(acc, self._symbol_degree(cx[1], cy[1]))
            elif cx[0] == "STR" and cy[0] == "STR":
                _, f, n = heap[cx[1]]
                _, g, m = heap[cy[1]]
                if n != m:
                    raise _Fail
                if f != g:
                    acc = self.t(acc, self._symbol_degree(f, g))
                # reversed so arguments are processed left to right
                for i in range(n, 0, -1):
                    todo.append((cx[1] + i, cy[1] + i))
            else:
                raise _Fail
        if acc != TOP:
            self._degrade(acc)

    # registers

    def _get(self, reg: str) -> int:
        try:
            if reg[0] == "Y":
                return self.env.y[reg]
            if reg[0] == "Q":
                return self.q[reg]
            return self.regs[reg]
        except (KeyError, AttributeError):
            raise MachineFault(f"{self.pc:02d}: register {reg} is unset") from None

    def _set(self, reg: str, a) -> None:
        if reg[0] == "Y":
            if self.env is None:
                raise MachineFault(f"{self.pc:02d}: {reg} without an environment")
            self.env.y[reg] = a
        elif reg[0] == "Q":
            self.q[reg] = a
        else:
            self.regs[reg] = a

    # choice points

    def _push(self, kind: str, **extra) -> ChoicePoint:
        self._cp_ids += 1
        cp = ChoicePoint(kind, self._cp_ids, dict(self.regs), self.env, self.env_depth, self.cp,
                         len(self.heap), len(self.trail), self.D, self.G, self.depth, **extra)
        self.stack.append(cp)
        if self.trace:
            self.events.append(("push", cp.ident, self.D))
        return cp

    def _restore(self, cp: ChoicePoint) -> None:
        heap = self.heap
        for a in self.trail[cp.trail_top:]:
            if a < cp.heap_top:
                heap[a] = ("REF", a)
        del self.trail[cp.trail_top:]
        del heap[cp.heap_top:]
        self.regs = dict(cp.regs)
        self.env = cp.env
        self.env_depth = cp.env_depth
        self.cp = cp.cp
        self.D = cp.degree
        self.G = cp.guard_degree
        self.depth = cp.depth
        if self.trace:
            self.events.append(("restore", cp.ident, self.D))

    def _backtrack(self) -> bool:
        """Resume the newest alternative; False when none is left."""
        while self.stack:
            cp = self.stack[-1]
            self._restore(cp)
            try:
                if cp.kind == "sentinel":
                    self.stack.pop()
                    return False
                if cp.kind == "dispatch":
                    addr, degree = cp.alternatives.pop(0)
                    if not cp.alternatives:
                        self.stack.pop()
                    self.pc = addr
                    self._degrade(degree)
                    return True
                here = cp.next
                ins = self.code[here]
                if ins.op == "retry_me_else":
                    cp.next, ann = ins.args
                elif ins.op == "trust_me":
                    (ann,) = ins.args
                    self.stack.pop()
                else:
                    raise MachineFault(f"{here:02d}: alternative is not retry_me_else/trust_me")
                self.pc = here + 1
                self._enter(ann)
                return True
            except _Fail:
                continue
        return False

    def _enter(self, ann: Interval) -> None:
        self._degrade(ann)
        if self.trace:
            self.events.append(("enter", self.pc - 1, self.D))

    def _dispatch(self, key) -> list:
        alts = self._dispatch_cache.get(key)
        if alts is None:
            name, arity = key
            labels = self.image.labels
            alts = []
            if key in labels:
                alts.append((labels[key], TOP))
            partners = []
            for other, degree in self.table.partners(name).items():
                addr = labels.get((other, arity))
                if addr is not None:
                    partners.append((addr, degree))
            alts.extend(sorted(partners, key=lambda p: p[0]))
            self._dispatch_cache[key] = alts
        return alts

    # main loop

    def answers(self) -> Iterator[Answer]:
        while True:
            try:
                self._execute()
            except _Halt:
                yield self._answer()
            if not self._backtrack():
                return

    def _answer(self) -> Answer:
        names = [name for _, name in self.q_names]
        terms = [self.read(self.q[reg]) for reg, _ in self.q_names]
        return Answer(canonical_bindings(names, terms), self.D)

    def read(self, a: int):
        """Decode the term stored at heap address ``a``."""
        a = self.deref(a)
        cell = self.heap[a]
        if cell[0] == "REF":
            return Variable(f"_H{a}")
        if cell[0] == "CON":
            return Constant(cell[1])
        if cell[0] == "STR":
            _, f, n = self.heap[cell[1]]
            return Compound(f, tuple(self.read(cell[1] + i) for i in range(1, n + 1)))
        raise MachineFault(f"unexpected cell {cell} at {a}")

    def _execute(self) -> None:
        """Run until halt (raises _Halt) or failure with no way forward (returns)."""
        while True:
            try:
                self._run_until_fail()
            except _Fail:
                if not self._backtrack():
                    return
                continue

    def _run_until_fail(self) -> None:
        code = self.code
        while True:
            pc = self.pc
            if not 0 <= pc < len(code):
                raise MachineFault(f"program counter {pc} outside the image")
            ins = code[pc]
            op, args = ins.op, ins.args
            self.pc = pc + 1
            if op == "trust_me":
                self._enter(args[0])
            elif op == "try_me_else":
                self._push("clause", next=args[0])
                self._enter(args[1])
            elif op == "retry_me_else":
                raise MachineFault(f"{pc:02d}: retry_me_else reached by fall-through")
            elif op == "allocate":
                self.env = _Frame(self.env, self.cp)
                self.env_depth += 1
            elif op == "deallocate":
                if self.env is None:
                    raise MachineFault(f"{pc:02d}: deallocate without an environment")
                self.cp = self.env.cp
                self.env = self.env.prev
                self.env_depth -= 1
            elif op == "get_variable":
                self._set(args[0], self._get(args[1]))
            elif op == "get_value":
                self.unify(self._get(args[0]), self._get(args[1]))
            elif op == "get_constant":
                self._get_constant(args[0], self._get(args[1]))
            elif op == "get_structure":
                self._get_structure(args[0], self._get(args[1]))
            elif op == "unify_variable":
                if self.mode_read:
                    self._set(args[0], self.s)
                    self.s += 1
                else:
                    self._set(args[0], self._new_var())
            elif op == "unify_value":
                if self.mode_read:
                    self.unify(self._get(args[0]), self.s)
                    self.s += 1
                else:
                    self.heap.append(("REF", self._get(args[0])))
            elif op == "put_variable":
                a = self._new_var()
                self._set(args[0], a)
                self._set(args[1], a)
            elif op == "put_value":
                self._set(args[1], self._get(args[0]))
            elif op == "put_constant":
                a = len(self.heap)
                self.heap.append(("CON", args[0]))
                self._set(args[1], a)
            elif op == "put_structure":
                f, n = args[0]
                a = len(self.heap)
                self.heap.append(("STR", a + 1))
                self.heap.append(("FUN", f, n))
                self._set(args[1], a)
                self.mode_read = False
            elif op == "create_variable":
                a = self._new_var()
                self._set(args[0], a)
                self.q_names.append((args[0], args[1]))
            elif op == "call":
                self._call(args[0])
            elif op == "proceed":
                self.pc = self.cp
            elif op == "halt":
                raise _Halt
            elif op == "open_guard":
                self._set(args[0], self.G)
                self.G = TOP
            elif op == "close_guard":
                g, slot = args
                if not self.G >= g:
                    raise _Fail
                self.G = self.t(self._get(slot), self.G)
            else:
                raise MachineFault(f"{pc:02d}: unknown opcode {op}")

    def _call(self, key) -> None:
        if not self._sentinel:
            self._sentinel = True
            self.baseline = self.sizes()
            self._push("sentinel")
        if self.depth_limit is not None and self.depth >= self.depth_limit:
            self.incomplete = True
            raise _Fail
        alts = self._dispatch(key)
        if not alts:
            raise _Fail
        self.cp = self.pc
        self.depth += 1
        if len(alts) > 1:
            self._push("dispatch", alternatives=list(alts[1:]))
        addr, degree = alts[0]
        self.pc = addr
        if degree != TOP:
            self._degrade(degree)

    def _get_constant(self, c: str, a: int) -> None:
        a = self.deref(a)
        cell = self.heap[a]
        if cell[0] == "REF":
            self._bind(a, ("CON", c))
        elif cell[0] == "CON":
            if cell[1] != c:
                self._degrade(self._symbol_degree(c, cell[1]))
        else:
            raise _Fail

    def _get_structure(self, functor, a: int) -> None:
        f, n = functor
        a = self.deref(a)
        cell = self.heap[a]
        if cell[0] == "REF":
            p = len(self.heap)
            self.heap.append(("FUN", f, n))
            self._bind(a, ("STR", p))
            self.mode_read = False
        elif cell[0] == "STR":
            _, g, m = self.heap[cell[1]]
            if m != n:
                raise _Fail
            if g != f:
                self._degrade(self._symbol_degree(f, g))
            self.s = cell[1] + 1
            self.mode_read = True
        else:
            raise _Fail


def run(image: CodeImage, lambda_cut: Interval = BOTTOM, *, depth_limit: Optional[int] = None,
        occurs_check: bool = False, tnorm: str = "min") -> AnswerStream:
    """Lazily enumerate answers by executing ``image`` from its query entry."""
    machine = Machine(image, lambda_cut, depth_limit=depth_limit,
                      occurs_check=occurs_check, tnorm=tnorm)
    stream = AnswerStream(iter(()))

    def gen():
        for answer in machine.answers():
            stream.incomplete = machine.incomplete
            yield answer
        stream.incomplete = machine.incomplete

    stream._gen = gen()
    stream.machine = machine
    return stream
