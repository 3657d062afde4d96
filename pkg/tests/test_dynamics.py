import json
from fractions import Fraction
from itertools import combinations

import pytest

from lineops.arrangements import (Arrangement, ArrangementError,
                                  make_arrangement, profile, sel_at_least,
                                  sel_exact)
from lineops.catalog import build
from lineops.dynamics import (apply_operator, dual_spec, lambda_spec,
                              orbit_over_finite_field, run_sequence,
                              trace_table, trace_to_json, union_of_steps)
from lineops.fields import GF, QQ
from lineops.projective import join, point

F = QQ()
L2 = lambda_spec(sel_at_least(2), sel_at_least(2))


def test_quadrilateral_run():
    cq = build("complete-quadrilateral")
    tr = run_sequence(L2, cq, max_steps=3, profile_budget=100)
    # the reference table ends this sequence at 1471; two independent
    # exact computations give 1741 (kept here as the regression value)
    assert tr.counts() == [6, 9, 25, 1741]
    assert tr.verdict.kind == "budget_steps"
    assert tr.steps[1].profile.as_dict() == {2: 6, 3: 4, 4: 3}
    assert tr.steps[2].profile.as_dict() == {2: 60, 3: 24, 4: 3, 6: 10}
    assert tr.steps[3].profile is None  # beyond the profile budget
    assert tr.steps[2].h == Fraction(-239, 97)
    # strict growth on the first steps (divergent real case)
    for i in range(3):
        assert set(tr.arrangement(i).lines) < set(tr.arrangement(i + 1).lines)


def test_pencil_extinguishes():
    pencil, _ = make_arrangement([(1, k, 0) for k in range(4)], F)
    tr = run_sequence(L2, pencil)
    assert tr.verdict.kind == "extinguished" and tr.verdict.length == 1
    empty_start = run_sequence(L2, Arrangement(F))
    assert empty_start.verdict.kind == "extinguished"
    assert empty_start.verdict.length == 0


def test_fixed_point_verdict():
    dh = build("dual-hesse")
    tr = run_sequence(lambda_spec(sel_at_least(3), sel_at_least(3)), dh)
    assert tr.verdict.kind == "fixed" and tr.verdict.at_step == 0
    assert tr.counts() == [9, 9]


def test_flashing_cycle_verdict():
    f0 = build("flashing3")
    tr = run_sequence(lambda_spec(sel_exact(2), sel_exact(3)), f0)
    assert tr.verdict.kind == "cycle"
    assert (tr.verdict.preperiod, tr.verdict.period) == (0, 2)
    u = union_of_steps(tr, 0, 1)
    assert len(u) == 9 and profile(u).as_dict() == {2: 6, 3: 10}
    assert union_of_steps(tr, 1, 1) == tr.arrangement(1)
    with pytest.raises(ArrangementError):
        union_of_steps(tr, 0, 99)


def test_budget_lines():
    cq = build("complete-quadrilateral")
    tr = run_sequence(L2, cq, max_steps=10, max_lines=100, profile_budget=50)
    assert tr.verdict.kind == "budget_lines"
    assert tr.counts()[-1] == 1741


def test_budget_validation():
    with pytest.raises(ArrangementError):
        run_sequence(L2, Arrangement(F), max_steps=0)


def test_operator_chain_apply():
    arr = build("flashing3")
    chain = (lambda_spec(sel_exact(3), sel_exact(2)), dual_spec(sel_exact(2)))
    # composition applies right-to-left
    step = apply_operator(dual_spec(sel_exact(2)), arr)
    assert apply_operator(chain, arr) == apply_operator(
        lambda_spec(sel_exact(3), sel_exact(2)), step)


def test_orbit_finite_plane_fixed():
    fp = build("finite-plane", q=3)
    assert orbit_over_finite_field(L2, fp) == (0, 1)


def test_orbit_quadrilateral_char2():
    G2 = GF(2)
    pts = [point(G2, 1, 0, 0), point(G2, 0, 1, 0), point(G2, 0, 0, 1),
           point(G2, 1, 1, 1)]
    cq2 = Arrangement(G2, [join(a, b) for a, b in combinations(pts, 2)])
    # the diagonal points are collinear in characteristic 2, so the
    # (>=2, >=3) operator produces the Fano plane, then stays there
    op = lambda_spec(sel_at_least(2), sel_at_least(3))
    assert orbit_over_finite_field(op, cq2) == (1, 1)
    assert apply_operator(op, cq2) == build("finite-plane", q=2)


def test_orbit_extinction_is_period_one():
    G2 = GF(2)
    two, _ = make_arrangement([(1, 0, 0), (0, 1, 0)], G2)
    assert orbit_over_finite_field(L2, two) == (1, 1)


def test_orbit_requires_finite_field():
    with pytest.raises(ArrangementError):
        orbit_over_finite_field(L2, build("complete-quadrilateral"))


def test_trace_export():
    tr = run_sequence(L2, build("complete-quadrilateral"), max_steps=2)
    doc = trace_to_json(tr)
    assert doc["steps"][0]["lines"] == 6
    assert doc["steps"][1]["t"] == {"2": 6, "3": 4, "4": 3}
    assert doc["steps"][1]["H"] == "-27/13"
    assert doc["verdict"]["kind"] == "budget_steps"
    json.dumps(doc)
    table = trace_table(tr)
    assert "t4" in table.splitlines()[0]
    assert table.strip().endswith("verdict: budget_steps")


def test_lemma28_gate_runs_on_every_step():
    # growth from 6 lines under (>=2, >=3) respects 6 >= 2*3
    tr = run_sequence(lambda_spec(sel_at_least(2), sel_at_least(3)),
                      build("parallel-pairs6"), max_steps=2)
    assert tr.counts()[:3] == [6, 10, 13]
