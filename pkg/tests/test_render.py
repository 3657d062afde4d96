import re
from fractions import Fraction

import pytest

from lineops.arrangements import Arrangement, ArrangementError, make_arrangement
from lineops.catalog import build
from lineops.fields import QQ
from lineops.render import RenderSpec, render_svg

F = QQ()


def seg_coords(svg):
    out = []
    for m in re.finditer(r'<line class="[^"]*" x1="([-\d.]+)" y1="([-\d.]+)" '
                         r'x2="([-\d.]+)" y2="([-\d.]+)"', svg):
        out.append(tuple(float(v) for v in m.groups()))
    return out


def test_triangle_two_visible_segments():
    tri, _ = make_arrangement([(1, 0, 0), (0, 1, 0), (0, 0, 1)], F)
    result = render_svg([tri], RenderSpec(mark_points=False))
    assert len(seg_coords(result.svg)) == 2  # z = 0 invisible on this chart
    assert result.omitted == (1,)


def test_grid6_segments_and_marks():
    grid = build("grid6")
    result = render_svg([grid], RenderSpec())
    assert len(seg_coords(result.svg)) == 6
    assert result.svg.count('circle class="mark"') == 9  # the affine doubles
    assert result.omitted == (0,)


def test_empty_arrangement_is_valid_svg():
    result = render_svg([Arrangement(F)], RenderSpec())
    assert result.svg.startswith("<?xml")
    assert "</svg>" in result.svg
    assert not seg_coords(result.svg)


def test_determinism():
    layers = [build("grid6"), build("complete-quadrilateral")]
    a = render_svg(layers, RenderSpec())
    b = render_svg(layers, RenderSpec())
    assert a.svg == b.svg


def test_clipping_soundness():
    spec = RenderSpec(size=500)
    arr = build("parallel-pairs6")
    result = render_svg([arr], spec)
    x0, x1, y0, y1 = [float(v) for v in spec.window]
    scale = spec.size / (x1 - x0)
    height = (y1 - y0) * scale
    for ax, ay, bx, by in seg_coords(result.svg):
        for x, y in ((ax, ay), (bx, by)):
            assert -1e-6 <= x <= spec.size + 1e-6
            assert -1e-6 <= y <= height + 1e-6


def test_number_field_chart():
    arr = build("polygonal", n=10)  # over Q(2cos(2pi/5))
    result = render_svg([arr], RenderSpec(root_index=1, mark_points=False))
    assert len(seg_coords(result.svg)) >= 8


def test_non_real_field_rejected():
    dh = build("dual-hesse")
    with pytest.raises(ArrangementError):
        render_svg([dh], RenderSpec())


def test_bad_window():
    with pytest.raises(ArrangementError):
        RenderSpec(window=(Fraction(1), Fraction(1), Fraction(0), Fraction(2)))
    with pytest.raises(ArrangementError):
        RenderSpec(chart="w")
