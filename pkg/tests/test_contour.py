"""Marching-squares contour extraction on analytic fields with known level
sets."""

import math

import numpy as np
import pytest

from spincollapse.contour import marching_squares


def _grid(f, n=128, lo=-2.0, hi=2.0):
    xs = np.linspace(lo, hi, n + 1)
    ys = np.linspace(lo, hi, n + 1)
    vals = f(xs[:, None], ys[None, :])
    return vals, xs, ys


class TestMarchingSquares:
    def test_circle_is_one_closed_loop(self):
        vals, xs, ys = _grid(lambda x, y: x * x + y * y - 1.0)
        polys = marching_squares(vals, xs, ys)
        assert len(polys) == 1
        poly = polys[0]
        assert poly[0] == poly[-1]  # closed
        for x, y in poly:
            assert math.hypot(x, y) == pytest.approx(1.0, abs=2e-3)

    def test_line_is_one_open_polyline(self):
        vals, xs, ys = _grid(lambda x, y: x - 0.25 + 0.0 * y)
        polys = marching_squares(vals, xs, ys)
        assert len(polys) == 1
        poly = polys[0]
        assert poly[0] != poly[-1]
        for x, _ in poly:
            assert x == pytest.approx(0.25, abs=1e-9)

    def test_two_components(self):
        vals, xs, ys = _grid(
            lambda x, y: ((x - 1.0) ** 2 + y ** 2 - 0.16)
            * ((x + 1.0) ** 2 + y ** 2 - 0.16) / 4.0)
        # product of two circle fields is positive outside both and inside
        # both; its zero set is the union of the two circles
        polys = marching_squares(vals, xs, ys)
        assert len(polys) == 2

    def test_empty_level_set(self):
        vals, xs, ys = _grid(lambda x, y: x * x + y * y + 1.0)
        assert marching_squares(vals, xs, ys) == []

    def test_vertices_interpolate_the_zero(self):
        vals, xs, ys = _grid(lambda x, y: np.sin(x) + np.cos(y) - 0.3,
                             n=256)
        polys = marching_squares(vals, xs, ys)
        assert polys
        for poly in polys:
            for x, y in poly:
                assert abs(math.sin(x) + math.cos(y) - 0.3) < 5e-4

    def test_deterministic(self):
        vals, xs, ys = _grid(lambda x, y: np.sin(3 * x) * np.cos(2 * y) - 0.1)
        a = marching_squares(vals, xs, ys)
        b = marching_squares(vals.copy(), xs.copy(), ys.copy())
        assert a == b
