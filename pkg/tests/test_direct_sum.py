import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from krein_csym.csymmetry import verify_c_symmetry
from krein_csym.direct_sum import (DirectSumSpec, build_truncation, check_unboundedness,
                                   unboundedness_table)
from krein_csym.exceptions import GammaCritical
from krein_csym.point_interaction import SymmetricGrid, build_model
from krein_csym.transition import c_from_transition

SMALL = SymmetricGrid(L=20.0, N=8)


def test_single_block_reduces_to_model():
    tr = build_truncation(DirectSumSpec((4.0,), SMALL))
    ks, a, c, t = tr.dense()
    m = build_model(SMALL, 4.0)
    assert np.array_equal(a, m.A) and np.array_equal(c, m.C) and np.array_equal(t, m.T)
    assert np.array_equal(ks.J, m.P)
    assert tr.norm_C() == pytest.approx(3.0) and tr.norm_T() == pytest.approx(0.5)


@pytest.mark.parametrize("m, norm_t, norm_c", [(10, 20 / 21, 41), (100, 200 / 201, 401)])
def test_closed_forms(m, norm_t, norm_c):
    tr = build_truncation(DirectSumSpec.from_rule("above", m))
    assert tr.norm_T() == pytest.approx(norm_t, abs=1e-12)
    assert tr.norm_C() == pytest.approx(norm_c, rel=1e-12)
    assert tr.cond_F() == pytest.approx(norm_c ** 2, rel=1e-9)
    assert tr.verify().passed


def test_rejects_critical_and_empty():
    with pytest.raises(GammaCritical):
        DirectSumSpec((1.0, 2.0))
    with pytest.raises(ValueError):
        DirectSumSpec(())
    with pytest.raises(ValueError):
        DirectSumSpec((-1.0,))


def test_blockwise_equals_dense():
    tr = build_truncation(DirectSumSpec((0.5, 3.0, 1.5, 2.2), SMALL))
    ks, a, c, t = tr.dense()
    dense = verify_c_symmetry(ks, a, c).report
    blocks = tr.verify()
    assert dense.passed and blocks.passed
    assert dense.norm_C == pytest.approx(blocks.norm_C, rel=1e-12)
    assert dense.positivity_margin == pytest.approx(blocks.positivity_margin, rel=1e-12)
    assert dense.involution_defect == pytest.approx(blocks.involution_defect, rel=1e-6, abs=1e-15)
    assert dense.commutation_defect == pytest.approx(blocks.commutation_defect, rel=1e-6, abs=1e-15)
    # the block C equals J (I - T)(I + T)^-1 of the block T
    assert np.allclose(c_from_transition(ks, t).C, c, atol=1e-10)


def test_threads_do_not_change_blocks():
    spec = DirectSumSpec.from_rule("above", 6, SMALL)
    a = build_truncation(spec, threads=1)
    b = build_truncation(spec, threads=4)
    assert all(np.array_equal(x, y) for x, y in zip(a.A, b.A))


@pytest.mark.parametrize("rule", ["above", "below"])
def test_unboundedness_table(rule):
    rows = unboundedness_table(rule, [5, 10, 20])
    check_unboundedness(rows)
    if rule == "above":
        assert [r.norm_C for r in rows] == pytest.approx([21, 41, 81], rel=1e-12)
        assert [r.cond_F for r in rows] == pytest.approx([441, 1681, 6561], rel=1e-9)


def test_table_callable_rule():
    rows = unboundedness_table(lambda i: 2 + 2.0 ** -i, [1, 2, 3])
    check_unboundedness(rows)
    assert [r.norm_C for r in rows] == pytest.approx([9, 17, 33], rel=1e-12)


def test_check_unboundedness_rejects_bounded():
    rows = unboundedness_table(lambda i: 3.0, [1, 2])
    with pytest.raises(AssertionError):
        check_unboundedness(rows)


@given(st.lists(st.floats(0.0, 10.0).filter(lambda g: abs(g - 2) > 0.05), min_size=1, max_size=6))
def test_bounded_regime(gs):
    tr = build_truncation(DirectSumSpec(tuple(gs), SymmetricGrid(L=5.0, N=4)))
    bound = (max(gs) + 2) / min(abs(g - 2) for g in gs)
    assert tr.norm_C() <= bound * (1 + 1e-12)
    assert tr.verify().passed
