import pytest

from vcstream.errors import MemoryBudgetExceeded, MeterUnderflow
from vcstream.meters import MemoryMeter, MeteredSet, PassMeter, words_for_bits


def test_pass_meter_counts():
    m = PassMeter()
    m.increment()
    m.increment()
    assert m.passes == 2


def test_memory_meter_peak_and_balance():
    m = MemoryMeter()
    m.allocate(5)
    m.allocate(3)
    m.release(4)
    assert m.live_words == 4
    assert m.peak_words == 8
    m.release(4)
    assert m.live_words == 0


def test_budget_enforced():
    m = MemoryMeter(budget_words=4)
    m.allocate(4)
    with pytest.raises(MemoryBudgetExceeded):
        m.allocate(1)


def test_underflow_detected():
    m = MemoryMeter()
    m.allocate(1)
    with pytest.raises(MeterUnderflow):
        m.release(2)


def test_scope_restores_on_error():
    m = MemoryMeter()
    with pytest.raises(RuntimeError):
        with m.scope(7):
            assert m.live_words == 7
            raise RuntimeError("boom")
    assert m.live_words == 0
    assert m.peak_words == 7


def test_metered_set():
    m = MemoryMeter()
    s = MeteredSet(m, [1, 2])
    s.add(3)
    s.add(3)  # no double charge
    assert m.live_words == 3
    s.discard(1)
    assert m.live_words == 2
    s.close()
    assert m.live_words == 0


def test_words_for_bits():
    assert words_for_bits(0) == 0
    assert words_for_bits(1) == 1
    assert words_for_bits(64) == 1
    assert words_for_bits(65) == 2
