"""Tiny reference machine for exact, desk-scale complexity estimates.

The machine is deliberately small so that *every* program up to a modest
length can be enumerated and executed.  Its full definition (also in
``docs/reference_machine.md``):

Tapes
    One append-only binary output tape, initially empty, and one read-only
    auxiliary input tape holding the conditioning string (empty when the
    estimate is unconditional).

Programs
    Finite bit strings, decoded left to right into instructions:

    ========  ============  =================================================
    opcode    name          effect
    ========  ============  =================================================
    ``00``    WRITE0        append ``0`` to the output
    ``01``    WRITE1        append ``1`` to the output
    ``10``    DOUBLE        append a copy of the entire current output
    ``110``   LITERAL       append all remaining program bits, then halt
    ``111``   COPY_AUX      append the entire auxiliary tape
    ========  ============  =================================================

    Trailing bits that cannot complete an instruction (a lone bit, or a
    dangling ``11``) are padding and are ignored.

Halting
    A program halts when its instruction stream is exhausted or after
    LITERAL.  Executing one instruction costs one step, plus one step per
    output bit appended.  A run that exceeds its step budget, or whose
    output grows past ``max_output``, is treated as non-halting.

Enumeration order
    Canonical order is by program length, then lexicographic with
    ``0 < 1``; the empty program comes first.  The complexity of a state is
    the length of the first program in canonical order that halts with
    output exactly equal to the state.

Every string has a program (LITERAL gives length ``len(x) + 3``), so
enumeration with ``max_len >= len(x) + 3`` always succeeds.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator

from .errors import EnumerationBudgetExceeded, ValidationError

#: Step budget per program during enumeration; programs not halting within
#: the budget are treated as non-halting.
DEFAULT_STEP_BUDGET = 10_000

#: Hard ceilings keeping exhaustive enumeration desk-scale.
MAX_STATE_BITS = 16
MAX_PROGRAM_BITS = 20


@dataclass(frozen=True)
class RunResult:
    output: str | None  # None when treated as non-halting
    steps: int
    halted: bool


class ReferenceMachine:
    """The append-only five-instruction machine defined in the module docs."""

    def __init__(self, step_budget: int = DEFAULT_STEP_BUDGET):
        if step_budget < 1:
            raise ValidationError(f"step budget must be >= 1, got {step_budget}")
        self.step_budget = step_budget

    def run(self, program: str, aux: str = "", max_output: int = 1 << 16) -> RunResult:
        """Execute ``program`` with ``aux`` on the auxiliary tape."""
        _check_bits(program, "program")
        _check_bits(aux, "aux")
        parts: list[str] = []
        out_len = 0
        steps = 0
        pos = 0
        n = len(program)
        while pos < n:
            if n - pos == 1:
                break  # lone trailing bit: padding
            op = program[pos:pos + 2]
            if op == "11":
                if n - pos < 3:
                    break  # dangling "11": padding
                op = program[pos:pos + 3]
                pos += 3
            else:
                pos += 2

            if op == "00":
                parts.append("0")
                appended = 1
            elif op == "01":
                parts.append("1")
                appended = 1
            elif op == "10":
                chunk = "".join(parts)
                parts = [chunk, chunk]
                appended = out_len
            elif op == "110":
                rest = program[pos:]
                parts.append(rest)
                appended = len(rest)
                pos = n
            else:  # "111"
                parts.append(aux)
                appended = len(aux)

            out_len += appended
            steps += 1 + appended
            if steps > self.step_budget or out_len > max_output:
                return RunResult(output=None, steps=steps, halted=False)
        return RunResult(output="".join(parts), steps=steps, halted=True)

    def programs(self, max_len: int) -> Iterator[str]:
        """All programs of length <= max_len in canonical order."""
        yield ""
        for length in range(1, max_len + 1):
            for bits in itertools.product("01", repeat=length):
                yield "".join(bits)

    def shortest_program(self, target: str, max_len: int, aux: str = "") -> str:
        """First program in canonical order producing ``target`` exactly.

        Raises :class:`EnumerationBudgetExceeded` when no program of length
        <= max_len halts on ``target`` within the step budget.
        """
        _check_bits(target, "target")
        _check_bits(aux, "aux")
        if len(target) > MAX_STATE_BITS:
            raise ValidationError(
                f"target has {len(target)} bits; exact enumeration is limited to "
                f"{MAX_STATE_BITS}"
            )
        if not (0 <= max_len <= MAX_PROGRAM_BITS):
            raise ValidationError(
                f"max_len must be in [0, {MAX_PROGRAM_BITS}], got {max_len}"
            )
        cap = len(target)  # output only ever grows, so longer outputs can't match
        for program in self.programs(max_len):
            result = self.run(program, aux=aux, max_output=cap)
            if result.halted and result.output == target:
                return program
        raise EnumerationBudgetExceeded(target, max_len, self.step_budget)

    def complexity_table(self, max_len: int, aux: str = "") -> dict[str, int]:
        """Map each producible state to the length of its shortest program.

        One sweep over all programs of length <= max_len in canonical order;
        the first producer of each output wins, so the table agrees exactly
        with :meth:`shortest_program` for every contained state.
        """
        if not (0 <= max_len <= MAX_PROGRAM_BITS):
            raise ValidationError(
                f"max_len must be in [0, {MAX_PROGRAM_BITS}], got {max_len}"
            )
        table: dict[str, int] = {}
        for program in self.programs(max_len):
            result = self.run(program, aux=aux, max_output=MAX_STATE_BITS)
            if result.halted and result.output not in table:
                table[result.output] = len(program)
        return table


#: Shared machine instance used by the complexity estimators.
DEFAULT_MACHINE = ReferenceMachine()


@lru_cache(maxsize=65536)
def cached_shortest_length(target: str, max_len: int, aux: str = "") -> int:
    """Memoized shortest-program length on the default machine."""
    return len(DEFAULT_MACHINE.shortest_program(target, max_len, aux=aux))


def _check_bits(s: str, label: str) -> None:
    if s.strip("01") != "":
        raise ValidationError(f"{label} must contain only '0'/'1', got {s!r}")
