"""Instruction set, code images and the textual listing format.

A listing has one instruction per line::

    00:good_player:trust_me [1.0,1.0]
    01:            allocate
    04:            call coordinate (11)

i.e. a two-digit address, the block label on the first line of each
predicate block, the opcode and its operands.  Proximity equations of the
image follow the instructions in source syntax.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Optional

from ..errors import MachineFault
from ..interval import Interval, parse_interval
from ..parser import parse_program
from ..proximity import ProximityTable

__all__ = ["Instr", "CodeImage", "OPCODES", "disassemble", "assemble", "label_names", "block_ranges"]

# opcode -> operand kinds
OPCODES: dict[str, tuple[str, ...]] = {
    "trust_me": ("degree",),
    "try_me_else": ("addr", "degree"),
    "retry_me_else": ("addr", "degree"),
    "allocate": (),
    "deallocate": (),
    "get_variable": ("reg", "reg"),
    "get_value": ("reg", "reg"),
    "get_constant": ("const", "reg"),
    "get_structure": ("functor", "reg"),
    "unify_variable": ("reg",),
    "unify_value": ("reg",),
    "put_variable": ("reg", "reg"),
    "put_value": ("reg", "reg"),
    "put_constant": ("const", "reg"),
    "put_structure": ("functor", "reg"),
    "create_variable": ("reg", "name"),
    "call": ("pred",),
    "proceed": (),
    "halt": (),
    # guarded body atoms: stash the running degree, later check and restore it
    "open_guard": ("reg",),
    "close_guard": ("degree", "reg"),
}

QUERY_LABEL = "query"


@dataclass(frozen=True, slots=True)
class Instr:
    op: str
    args: tuple = ()

    def __post_init__(self):
        kinds = OPCODES.get(self.op)
        if kinds is None:
            raise MachineFault(f"unknown opcode {self.op!r}")
        if len(kinds) != len(self.args):
            raise MachineFault(f"{self.op} takes {len(kinds)} operands, got {len(self.args)}")


@dataclass(frozen=True)
class CodeImage:
    instructions: tuple
    labels: dict  # (name, arity) -> address
    query_entry: Optional[int] = None
    proximity: ProximityTable = field(default_factory=ProximityTable)

    @property
    def program_size(self) -> int:
        return len(self.instructions) if self.query_entry is None else self.query_entry

    def validate(self) -> None:
        n = len(self.instructions)
        for key, addr in self.labels.items():
            if not 0 <= addr < n:
                raise MachineFault(f"label {key} points outside the image")
        for i, ins in enumerate(self.instructions):
            if ins.op in ("try_me_else", "retry_me_else") and not 0 <= ins.args[0] < n:
                raise MachineFault(f"{i:02d}: {ins.op} target outside the image")
        if self.query_entry is not None and not 0 <= self.query_entry < n:
            raise MachineFault("query entry outside the image")


def label_names(image: CodeImage) -> dict[tuple[str, int], str]:
    """Printable block labels: bare names where the name has a single arity."""
    arities: dict[str, int] = {}
    for name, _ in image.labels:
        arities[name] = arities.get(name, 0) + 1
    out = {}
    for key in image.labels:
        name, arity = key
        bare = arities[name] == 1 and name != QUERY_LABEL
        out[key] = name if bare else f"{name}/{arity}"
    return out


def block_ranges(image: CodeImage) -> dict[tuple[str, int], range]:
    """Address range of each predicate's code block."""
    starts = sorted((addr, key) for key, addr in image.labels.items())
    out = {}
    for i, (addr, key) in enumerate(starts):
        end = starts[i + 1][0] if i + 1 < len(starts) else image.program_size
        out[key] = range(addr, end)
    return out


def _format_operand(kind: str, value, image: CodeImage, names: dict) -> str:
    if kind == "degree":
        return str(value)
    if kind == "addr":
        return f"({value:02d})"
    if kind == "functor":
        return f"{value[0]}/{value[1]}"
    if kind == "pred":
        addr = image.labels.get(value)
        if addr is None:
            return f"{value[0]}/{value[1]} (--)"
        return f"{names[value]} ({addr:02d})"
    return str(value)


def _format(ins: Instr, image: CodeImage, names: dict) -> str:
    ops = [_format_operand(k, v, image, names) for k, v in zip(OPCODES[ins.op], ins.args)]
    return " ".join([ins.op, *ops])


def disassemble(image: CodeImage, addresses: Optional[range] = None) -> str:
    names = label_names(image)
    at = {addr: names[key] for key, addr in image.labels.items()}
    if image.query_entry is not None:
        at[image.query_entry] = QUERY_LABEL
    width = max((len(s) for s in at.values()), default=0) + 1
    lines = []
    for addr in (addresses if addresses is not None else range(len(image.instructions))):
        text = _format(image.instructions[addr], image, names)
        label = at.get(addr)
        if label is not None:
            lines.append(f"{addr:02d}:{label}:{text}")
        else:
            lines.append(f"{addr:02d}:{' ' * width}{text}")
    if addresses is None:
        lines.extend(f"{e.left}~{e.right}={e.degree}." for e in image.proximity.equations())
    return "\n".join(lines) + "\n"


_LINE_RE = re.compile(r"^(\d+):(.*)$")
_OPERAND_RE = re.compile(r"\[[^\]]*\]|\([^)]*\)|\S+")


def _parse_functor(text: str) -> tuple[str, int]:
    name, _, arity = text.rpartition("/")
    if not name or not arity.isdigit():
        raise MachineFault(f"bad functor {text!r}")
    return name, int(arity)


def assemble(text: str) -> CodeImage:
    """Rebuild a :class:`CodeImage` from :func:`disassemble` output."""
    rows = []  # (addr, label or None, op, operand tokens)
    extra = []
    for raw in text.splitlines():
        if not raw.strip() or raw.lstrip().startswith("%"):
            continue
        m = _LINE_RE.match(raw)
        if m is None:
            extra.append(raw)
            continue
        addr, rest = int(m.group(1)), m.group(2)
        label = None
        head = rest.split(None, 1)[0] if rest.strip() else ""
        if rest[:1] and not rest[:1].isspace() and ":" in head:
            label, rest = rest.split(":", 1)
        tokens = _OPERAND_RE.findall(rest)
        if not tokens:
            raise MachineFault(f"line {addr:02d} has no opcode")
        if addr != len(rows):
            raise MachineFault(f"expected address {len(rows):02d}, found {addr:02d}")
        rows.append((addr, label, tokens[0], tokens[1:]))

    block_labels = {row[0]: row[1] for row in rows if row[1] is not None}
    query_entry = next((a for a, lab in block_labels.items() if lab == QUERY_LABEL), None)
    label_keys: dict[str, tuple[str, int]] = {}
    labels: dict[tuple[str, int], int] = {}
    for addr, lab in block_labels.items():
        if lab == QUERY_LABEL:
            continue
        key = _parse_functor(lab) if "/" in lab else (lab, _infer_arity(rows, addr))
        label_keys[lab] = key
        labels[key] = addr

    instructions = []
    for addr, _, op, ops in rows:
        kinds = OPCODES.get(op)
        if kinds is None:
            raise MachineFault(f"{addr:02d}: unknown opcode {op!r}")
        if op == "call":
            pred = ops[0]
            args = (label_keys[pred] if pred in label_keys else _parse_functor(pred),)
        else:
            if len(ops) != len(kinds):
                raise MachineFault(f"{addr:02d}: {op} expects {len(kinds)} operands")
            args = tuple(_parse_operand(k, v) for k, v in zip(kinds, ops))
        instructions.append(Instr(op, args))

    table = ProximityTable(parse_program("\n".join(extra)).proximities) if extra else ProximityTable()
    image = CodeImage(tuple(instructions), labels, query_entry, table)
    image.validate()
    return image


def _parse_operand(kind: str, token: str):
    if kind == "degree":
        return parse_interval(token)
    if kind == "addr":
        return int(token.strip("()"))
    if kind == "functor":
        return _parse_functor(token)
    return token


def _infer_arity(rows, start: int) -> int:
    # Clause heads emit exactly one get_* per argument register, first.
    regs = set()
    for _, _, op, ops in rows[start:]:
        if op in ("call", "proceed", "open_guard") or op.startswith("put_"):
            break
        if op.startswith("get_") and ops[1].startswith("A"):
            regs.add(ops[1])
    return len(regs)
