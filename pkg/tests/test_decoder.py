from hypothesis import given, settings, strategies as st

from dpic import (
    Schedule,
    Transmission,
    build_instance,
    build_schedule,
    decode_trace,
    initial_knowledge,
    peel,
    simulate_payloads,
    span_decodable,
)
from conftest import GOLDEN_TRACE, sweep_params


def empty_schedule(instance):
    return Schedule(instance=instance, transmissions=(), levels=())


def test_golden_trace(golden):
    instance, schedule = golden
    trace = decode_trace(instance, schedule)
    assert [list(row) for row in trace.rows] == GOLDEN_TRACE


def test_peel_golden_rows(golden):
    instance, schedule = golden
    decoded, _ = peel(instance, schedule, 1)
    assert decoded == {10, 16, 13, 23, 19, 24, 26, 27, 28}
    decoded, _ = peel(instance, schedule, 9)
    assert decoded == {50}


def test_peel_empty_schedule():
    instance = build_instance(9, 7, 3)
    decoded, row = peel(instance, empty_schedule(instance), 3)
    assert decoded == set()
    assert row == []


def test_span_golden_rows(golden):
    instance, schedule = golden
    assert span_decodable(instance, schedule, 6) == {50, 61, 64, 65}
    assert span_decodable(instance, schedule, 3) == {5, 23, 19, 24, 26, 27, 28}


def test_span_single_unknown_xor():
    # client 1 of (2, 5, 2) holds [1, 5]; a lone {5, 8} broadcast from
    # client 2 reveals exactly x8
    instance = build_instance(2, 5, 2)
    schedule = Schedule(
        instance=instance,
        transmissions=(
            Transmission(
                transmitter=2,
                support=frozenset({5, 8}),
                level=1,
                phase="base2",
                slot=1,
            ),
        ),
        levels=(),
    )
    assert span_decodable(instance, schedule, 1) == {8}


def test_trace_small_instance():
    instance = build_instance(3, 4, 2)
    schedule = build_schedule(instance)
    trace = decode_trace(instance, schedule)
    for row in trace.rows:
        assert any(cell is not None for cell in row)
    # single level, client at position i gains C - (i - 1) messages
    assert [sum(c is not None for c in row) for row in trace.rows] == [3, 2, 1]


def test_trace_empty_schedule():
    instance = build_instance(3, 4, 2)
    trace = decode_trace(instance, empty_schedule(instance))
    assert all(cell is None for row in trace.rows for cell in row)


def test_oracle_equivalence_sweep(sweep_schedules):
    for instance, schedule in sweep_schedules:
        for client in range(1, instance.clients + 1):
            decoded, _ = peel(instance, schedule, client)
            assert decoded == span_decodable(instance, schedule, client)


def test_attribution_soundness(sweep_schedules):
    for instance, schedule in sweep_schedules:
        trace = decode_trace(instance, schedule)
        for client, row in enumerate(trace.rows, start=1):
            side = initial_knowledge(instance, client)
            seen = set()
            for cell, tx in zip(row, schedule.transmissions):
                if cell is not None:
                    assert cell in tx.support
                    assert cell not in side
                    assert cell not in seen
                    seen.add(cell)


@settings(max_examples=25, deadline=None)
@given(st.sampled_from(sweep_params()), st.data())
def test_monotonicity_under_prefixes(params, data):
    instance = build_instance(*params)
    schedule = build_schedule(instance)
    cut = data.draw(st.integers(0, len(schedule.transmissions)))
    client = data.draw(st.integers(1, instance.clients))
    prefix = schedule.transmissions[:cut]
    partial = span_decodable(instance, schedule, client, transmissions=prefix)
    full = span_decodable(instance, schedule, client)
    assert partial <= full


def test_simulate_payloads_golden(golden):
    instance, schedule = golden
    assert simulate_payloads(instance, schedule, bits=8, seed=7)
    assert simulate_payloads(instance, schedule, bits=8, seed=1234)


def test_simulate_payloads_minimum_width():
    instance = build_instance(3, 4, 2)
    schedule = build_schedule(instance)
    assert simulate_payloads(instance, schedule, bits=1, seed=0)
