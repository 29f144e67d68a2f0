"""Polyline paths: constructors, winding, serialization."""

import cmath
import math

import pytest

from monodromy_lab.paths import Path


def test_segment():
    p = Path.segment(0.0, 1.0 + 1j)
    assert p.vertices == (0.0, 1.0 + 1j)
    assert p.length == pytest.approx(math.sqrt(2.0))


def test_loop_starts_and_ends_at_base():
    p = Path.loop(1.0, 0.25, 2)
    assert p.vertices[0] == 0.25
    assert p.vertices[-1] == 0.25


def test_loop_winding_number_by_argument_summation():
    for turns in (1, 2, 3, -1, -2):
        p = Path.loop(1.0 + 0.5j, 0.2, turns)
        assert p.winding_number(1.0 + 0.5j) == turns
        assert p.winding_number(5.0) == 0


def test_loop_chord_angle_bound():
    p = Path.loop(0.0, 1.0, 1)
    angles = []
    for a, b in zip(p.vertices[:-1], p.vertices[1:]):
        angles.append(abs(cmath.phase(b / a)))
    assert max(angles) <= math.radians(20.0) + 1e-9


def test_consecutive_vertices_distinct():
    with pytest.raises(ValueError):
        Path((1.0, 1.0, 2.0))


def test_min_distance():
    p = Path.segment(0.0, 2.0)
    assert p.min_distance(1.0 + 0.5j) == pytest.approx(0.5)
    assert p.min_distance(-1.0) == pytest.approx(1.0)


def test_json_roundtrip():
    p = Path.loop(1.0, 0.5 + 0.25j, 1)
    q = Path.from_json(p.to_json())
    assert q.vertices == p.vertices


def test_reversed():
    p = Path((0.0, 1.0, 1.0 + 1j))
    assert p.reversed().vertices == (1.0 + 1j, 1.0, 0.0)
