"""Reference machine semantics and enumeration tests."""

import pytest

from wpi import EnumerationBudgetExceeded, ReferenceMachine, ValidationError
from wpi.machine import DEFAULT_MACHINE


class TestExecution:
    def test_writes(self):
        assert DEFAULT_MACHINE.run("0001").output == "01"

    def test_double(self):
        # write 0, write 1, double twice: 01 -> 0101 -> 01010101
        assert DEFAULT_MACHINE.run("00011010").output == "01010101"

    def test_literal_takes_rest_and_halts(self):
        assert DEFAULT_MACHINE.run("1101011").output == "1011"

    def test_literal_with_empty_rest(self):
        assert DEFAULT_MACHINE.run("110").output == ""

    def test_copy_aux(self):
        assert DEFAULT_MACHINE.run("111", aux="1010").output == "1010"
        assert DEFAULT_MACHINE.run("11100", aux="11").output == "110"

    def test_empty_program_outputs_empty(self):
        assert DEFAULT_MACHINE.run("").output == ""

    def test_trailing_padding_ignored(self):
        assert DEFAULT_MACHINE.run("000").output == "0"  # lone trailing bit
        assert DEFAULT_MACHINE.run("0011").output == "0"  # dangling extended opcode

    def test_step_accounting(self):
        # 2 instructions, 2 bits appended: 4 steps
        assert DEFAULT_MACHINE.run("0001").steps == 4

    def test_step_budget_means_non_halting(self):
        tiny = ReferenceMachine(step_budget=3)
        result = tiny.run("00011010")
        assert not result.halted
        assert result.output is None

    def test_output_cap_means_non_halting(self):
        result = DEFAULT_MACHINE.run("00101010", max_output=3)
        assert not result.halted

    def test_rejects_non_binary(self):
        with pytest.raises(ValidationError):
            DEFAULT_MACHINE.run("01x")


class TestEnumeration:
    def test_empty_state_has_zero_complexity(self):
        assert DEFAULT_MACHINE.shortest_program("", 5) == ""

    def test_single_bits(self):
        assert DEFAULT_MACHINE.shortest_program("0", 5) == "00"
        assert DEFAULT_MACHINE.shortest_program("1", 5) == "01"

    def test_known_four_bit_values(self):
        expected = {"0000": 6, "0101": 6, "1010": 6, "1111": 6}
        for bits in (f"{i:04b}" for i in range(16)):
            program = DEFAULT_MACHINE.shortest_program(bits, 10)
            assert len(program) == expected.get(bits, 7)

    def test_canonical_order_prefers_first_witness(self):
        # both "000010" (write0 double double) and "000010"... the canonical
        # winner for 0000 is the length-6 doubling program
        assert DEFAULT_MACHINE.shortest_program("0000", 10) == "000010"

    def test_budget_exhaustion_is_typed(self):
        with pytest.raises(EnumerationBudgetExceeded) as info:
            DEFAULT_MACHINE.shortest_program("0110100110010110", 4)
        assert info.value.max_len == 4
        assert info.value.bits == "0110100110010110"

    def test_table_agrees_with_per_state_search(self):
        table = DEFAULT_MACHINE.complexity_table(9)
        for bits, k in table.items():
            if len(bits) <= 6:
                assert len(DEFAULT_MACHINE.shortest_program(bits, 9)) == k

    def test_rejects_oversized_state(self):
        with pytest.raises(ValidationError):
            DEFAULT_MACHINE.shortest_program("0" * 17, 20)

    def test_rejects_oversized_budget(self):
        with pytest.raises(ValidationError):
            DEFAULT_MACHINE.shortest_program("0", 21)

    def test_aux_tape_enables_short_conditional_programs(self):
        assert DEFAULT_MACHINE.shortest_program("1011", 10, aux="1011") == "111"
        # x extends y: copy aux then write
        assert DEFAULT_MACHINE.shortest_program("10111", 10, aux="1011") == "11101"
