"""Tests for node fan-out"""
import threading

from app.utils.parallel import map_nodes


def test_sequential_by_default():
    assert map_nodes(lambda x: x * x, [1, 2, 3], max_workers=1) == [1, 4, 9]


def test_pool_preserves_order():
    items = list(range(200))
    assert map_nodes(lambda x: 3 * x + 1, items, max_workers=8) == [3 * x + 1 for x in items]


def test_pool_runs_off_the_main_thread():
    seen = set()

    def record(x):
        seen.add(threading.get_ident())
        return x

    map_nodes(record, list(range(32)), max_workers=4)
    assert threading.get_ident() not in seen


def test_empty_input():
    assert map_nodes(lambda x: x, [], max_workers=4) == []
