import math

import pytest
from hypothesis import given, settings, strategies as st

from augsparse.splitting import (FAMILIES, SplittingSpec, ValidationError, check_scb, evaluate,
                                 materialize_gscb, materialize_scb, mirror_gscb, parse_spec, scb_from_values)

CATALOG = [SplittingSpec("clique"), SplittingSpec("linear"), SplittingSpec("dlinear", 2.0),
           SplittingSpec("dlinear", 5.0), SplittingSpec("sqrt"), SplittingSpec("power", 0.3),
           SplittingSpec("power", 1.0), SplittingSpec("aon")]


def test_evaluate_examples():
    assert evaluate(SplittingSpec("clique"), 4, 1) == 3
    assert evaluate(SplittingSpec("linear"), 5, 0) == 0
    assert evaluate(SplittingSpec("dlinear", 2.0), 10, 4) == 2


def test_evaluate_domain_errors():
    with pytest.raises(ValueError):
        evaluate(SplittingSpec("clique"), 4, 5)
    with pytest.raises(ValueError):
        evaluate(SplittingSpec("custom", penalties=(0, 1)), 4, 1)


def test_materialize_examples():
    assert materialize_scb(SplittingSpec("clique"), 4).w == (0, 3, 4)
    w = materialize_scb(SplittingSpec("aon"), 6)
    assert (w.r, w.w) == (3, (0, 1, 1, 1))
    w = materialize_scb(SplittingSpec("sqrt"), 9)
    assert w.r == 4
    assert w.w == pytest.approx([0, 1, math.sqrt(2), math.sqrt(3), 2], rel=1e-15)


def test_singleton_and_zero_functions():
    w = materialize_scb(SplittingSpec("clique"), 1)
    assert w.r == 0 and w.w == (0.0,)
    z = scb_from_values([0, 0, 0])
    assert z.is_zero


def test_gscb_examples():
    assert materialize_gscb([0, 3, 4, 3, 0]).k == 4
    assert materialize_gscb([2, 3, 3, 2]).w == (2, 3, 3, 2)
    with pytest.raises(ValidationError) as exc:
        materialize_gscb([0, 1, 3])
    assert exc.value.index == 1


def test_custom_validation_names_first_bad_index():
    with pytest.raises(ValidationError) as exc:
        check_scb([0, 1, 3, 4])
    assert exc.value.index == 1
    with pytest.raises(ValidationError) as exc:
        check_scb([0, 2, 3, 2.5])
    assert exc.value.index == 3
    with pytest.raises(ValidationError) as exc:
        check_scb([1, 2])
    assert exc.value.index == 0


def test_spec_parameter_checks():
    with pytest.raises(ValueError):
        SplittingSpec("dlinear", 0.5)
    with pytest.raises(ValueError):
        SplittingSpec("power", 1.5)
    with pytest.raises(ValueError):
        SplittingSpec("clique", weight=-1)
    with pytest.raises(ValueError):
        SplittingSpec("nope")


def test_parse_spec_grammar():
    assert parse_spec(["clique"]) == SplittingSpec("clique")
    assert parse_spec("weight 2.5 dlinear 3".split()) == SplittingSpec("dlinear", 3.0, 2.5)
    assert parse_spec("all-or-nothing".split()).family == "aon"
    assert parse_spec("custom 0 1 1.5".split()).penalties == (0.0, 1.0, 1.5)
    for bad in (["sqrt", "2"], ["power"], [], ["weight"]):
        with pytest.raises(ValueError):
            parse_spec(bad)


@pytest.mark.parametrize("spec", CATALOG, ids=lambda s: str(s).replace(" ", "-"))
def test_catalog_materializes_valid_scb(spec):
    for k in range(1, 65):
        w = materialize_scb(spec, k)
        assert w.w[0] == 0
        for j in range(1, w.r):
            assert 2 * w.w[j] >= w.w[j - 1] + w.w[j + 1] - 1e-12 * max(1, w.w[j])
        assert all(b >= a for a, b in zip(w.w[1:], w.w[2:]))


@settings(max_examples=200, deadline=None)
@given(st.sampled_from(CATALOG), st.integers(1, 50), st.data(),
       st.floats(0.01, 100, allow_nan=False))
def test_symmetry_and_scaling(spec, k, data, c):
    i = data.draw(st.integers(0, k))
    assert evaluate(spec, k, i) == evaluate(spec, k, k - i)
    assert evaluate(spec.with_weight(c), k, i) == pytest.approx(c * evaluate(spec, k, i), rel=1e-12, abs=0)


def test_mirror_covers_full_range():
    g = mirror_gscb(SplittingSpec("clique"), 4)
    assert g.w == (0, 3, 4, 3, 0)


def test_spec_string_roundtrip():
    for spec in CATALOG + [SplittingSpec("custom", weight=2.0, penalties=(0, 1, 1.5))]:
        assert parse_spec(str(spec).split()) == spec
    assert set(FAMILIES) >= {s.family for s in CATALOG}
