"""Compiler and abstract machine for interval-valued fuzzy programs."""

from .compiler import compile_program, compile_query
from .instructions import OPCODES, CodeImage, Instr, assemble, block_ranges, disassemble, label_names
from .machine import ChoicePoint, Machine, MachineStats, run

compile = compile_program

__all__ = [
    "compile", "compile_program", "compile_query", "CodeImage", "Instr", "OPCODES",
    "assemble", "disassemble", "label_names", "block_ranges", "Machine", "MachineStats",
    "ChoicePoint", "run",
]
