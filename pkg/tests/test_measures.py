"""Resource measures: axioms, graphs, bounds, and cost discrimination."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from traitbench.machine import strings_up_to
from traitbench.measures import (
    MEASURES,
    BoundCheckKind,
    ComposedBound,
    ConstantBound,
    LinearBound,
    TableBound,
    WitnessSearchError,
    broken_step_counter,
    check_blum_axioms,
    discriminating_witness,
    parse_bound,
    pigeonhole_step_bound,
    space_measure,
    time_measure,
    usage_within_bound,
)
from traitbench.transforms import delay_inject
from util import canonical_machines


class TestTimeMeasure:
    def test_defined_exactly_on_halting_output_runs(self, echo, looper, eraser):
        time = time_measure()
        assert time.evaluate(echo, "ab", 100) == 1
        assert time.evaluate(echo, "", 100) is None  # halts, but no output
        assert time.evaluate(looper, "a", 100) is None
        assert time.evaluate(eraser, "ab", 100) is None

    def test_graph_accepts_only_the_exact_cost(self, echo):
        time = time_measure()
        assert time.graph_decide(echo, "ab", 1)
        assert not time.graph_decide(echo, "ab", 0)
        assert not time.graph_decide(echo, "ab", 2)

    def test_graph_rejects_everywhere_for_undefined_pairs(self, eraser):
        time = time_measure()
        assert not any(time.graph_decide(eraser, "a", n) for n in range(8))


class TestSpaceMeasure:
    def test_counts_scanned_cells(self, echo, eraser):
        space = space_measure()
        assert space.evaluate(echo, "ab", 100) == 1
        assert space.evaluate(eraser, "ab", 100) is None  # undefined output
        assert space.evaluate(echo, "a", 100) == 1

    def test_graph_decides_without_fuel(self, echo, looper):
        space = space_measure()
        assert space.graph_decide(echo, "ab", 1)
        assert not space.graph_decide(echo, "ab", 2)
        # The looper never halts; the graph must still terminate and reject.
        assert not any(space.graph_decide(looper, "a", n) for n in range(4))

    def test_graph_detects_tight_cycles(self):
        from traitbench.enumeration import decode

        # decode(0) crawls left forever over blanks: an infinite run whose
        # scanned-cell count still grows, caught by the visited-cells abort.
        space = space_measure()
        m = decode(0)
        assert not any(space.graph_decide(m, "a", n) for n in range(3))

    def test_pigeonhole_bound_grows_with_input_length(self, echo):
        assert pigeonhole_step_bound(echo, 0) < pigeonhole_step_bound(echo, 2)

    @given(canonical_machines(max_states=4, max_sigma=2, max_extras=0), st.integers(0, 2))
    @settings(max_examples=30, deadline=None)
    def test_graph_agrees_with_fueled_evaluation(self, m, n):
        # Wherever the fueled evaluator defines a value, the fuel-free graph
        # must accept exactly that value.
        space = space_measure()
        sigma = m.input_alphabet[0] * n
        value = space.evaluate(m, sigma, 300)
        if value is not None and value <= 4:
            assert space.graph_decide(m, sigma, value)
            assert not space.graph_decide(m, sigma, value + 1)


class TestBlumCheck:
    def test_fixtures_pass_both_axioms(self, echo, looper, eraser, marker):
        machines = {0: echo, 1: looper, 2: eraser, 3: marker}
        for name in ("time", "space"):
            report = check_blum_axioms(
                MEASURES[name](),
                machines,
                lambda m: strings_up_to(m.input_alphabet, 1),
                100,
            )
            assert report.violations == ()
            assert report.pairs_checked == 12

    def test_broken_counter_fails_axiom_one(self, looper):
        report = check_blum_axioms(
            broken_step_counter(),
            {0: looper},
            lambda m: strings_up_to(m.input_alphabet, 1),
            50,
        )
        assert any(v.axiom == 1 for v in report.violations)

    def test_rows_use_the_fixed_schema(self, looper):
        report = check_blum_axioms(
            broken_step_counter(),
            {0: looper},
            lambda m: ["a"],
            50,
        )
        assert report.rows()
        assert set(report.rows()[0]) == {"machine_index", "input", "measure", "value", "verdict"}


class TestBounds:
    def test_constant(self):
        bound = parse_bound("7")
        assert isinstance(bound, ConstantBound)
        assert bound(0) == bound(100) == 7

    def test_identity_and_linear(self):
        assert parse_bound("n")(5) == 5
        bound = parse_bound("2n+3")
        assert isinstance(bound, LinearBound)
        assert bound(4) == 11

    def test_table_with_default(self):
        bound = parse_bound("table:1,2;default=9")
        assert isinstance(bound, TableBound)
        assert (bound(0), bound(1), bound(5)) == (1, 2, 9)

    def test_composition_applies_right_then_left(self):
        bound = parse_bound("n+1@2n")
        assert isinstance(bound, ComposedBound)
        assert bound(3) == 7

    def test_describe_round_trips_through_parse(self):
        for text in ("7", "n", "2n+3", "n+1@2n"):
            bound = parse_bound(text)
            assert parse_bound(bound.describe())(13) == bound(13)

    def test_garbage_rejected(self):
        for text in ("", "n^2", "2x+1", "table:"):
            with pytest.raises(ValueError):
                parse_bound(text)


class TestUsageWithinBound:
    def test_echo_stays_in_bounds(self, echo):
        verdict = usage_within_bound(echo, time_measure(), parse_bound("n+5"), 2, 100)
        assert verdict.kind is BoundCheckKind.IN_BOUNDS

    def test_undefined_inputs_do_not_block_in_bounds(self, echo):
        # echo computes nothing on the empty input, yet that input cannot
        # push it out of a time bound.
        verdict = usage_within_bound(echo, time_measure(), parse_bound("1"), 2, 100)
        assert verdict.kind is BoundCheckKind.IN_BOUNDS

    def test_everywhere_undefined_machine_is_inconclusive(self, eraser):
        verdict = usage_within_bound(eraser, time_measure(), parse_bound("n+5"), 2, 100)
        assert verdict.kind is BoundCheckKind.INCONCLUSIVE

    def test_fuel_exhaustion_is_inconclusive(self, looper):
        verdict = usage_within_bound(looper, time_measure(), parse_bound("n+5"), 2, 50)
        assert verdict.kind is BoundCheckKind.INCONCLUSIVE

    def test_violation_names_the_first_offending_input(self, echo):
        slow = delay_inject(echo, 10)
        verdict = usage_within_bound(slow, time_measure(), parse_bound("n+5"), 2, 100)
        assert verdict.kind is BoundCheckKind.VIOLATES
        assert verdict.witness == "a"

    def test_evidence_lists_every_tested_input(self, echo):
        verdict = usage_within_bound(echo, time_measure(), parse_bound("n+5"), 1, 100)
        assert [sigma for sigma, _ in verdict.evidence] == ["", "a", "b"]


class TestDiscriminatingWitness:
    def test_finds_a_strictly_costlier_equivalent(self, echo):
        for make in (time_measure, space_measure):
            measure = make()
            witness = discriminating_witness(measure, echo, trials=3, max_len=2, fuel=200)
            assert witness.delay == 2
            for sigma, base, raised in witness.evidence:
                assert raised > base

    def test_witness_rows_pair_base_and_raised_costs(self, echo):
        witness = discriminating_witness(time_measure(), echo, 3, 1, 200)
        rows = witness.rows("time")
        verdicts = {r["verdict"] for r in rows}
        assert verdicts == {"base", f"delayed+{witness.delay}"}

    def test_undefined_everywhere_machine_rejected(self, looper):
        with pytest.raises(ValueError):
            discriminating_witness(time_measure(), looper, 3, 1, 50)

    def test_exhausted_budget_raises_search_error(self, echo):
        with pytest.raises(WitnessSearchError):
            discriminating_witness(time_measure(), echo, trials=0, max_len=1, fuel=100)
