import json
from itertools import combinations

import pytest
from hypothesis import given, settings, strategies as st

from logcoh.arrangements import build_generic_pair
from logcoh.exactalg import QQ
from logcoh.fixtures import GOOD_PAIRS, cp2_cubic, get_pair, p2_lines3_broken
from logcoh.graded import AlgebraMap
from logcoh.pairdata import (ParseError, StratumData, dual_complex, dumps_pair, load_pair,
                             pair_from_json, pair_to_json, validate)

GROUND = {"basis": [{"name": "1", "deg": 0}], "unit": 0, "mult": [[0, 0, [[0, 1]]]]}
CIRCLE = {"basis": [{"name": "1", "deg": 0}, {"name": "e", "deg": 1}], "unit": 0,
          "mult": [[0, 0, [[0, 1]]], [0, 1, [[1, 1]]], [1, 0, [[1, 1]]]]}


def minimal_obj():
    return {"schema": "ncpair/1", "k": 1, "dim": 1, "kappa": [1], "pole_orders": [1],
            "strata": [{"I": [], "components": 1, "ring": GROUND},
                       {"I": [1], "components": 1, "ring": CIRCLE}],
            "restrictions": [{"from": [], "to": [1], "matrix": [[1], [0]]}],
            "flags": {}}


def test_minimal_file_parses():
    p = load_pair(json.dumps(minimal_obj()))
    assert p.k == 1 and len(p.strata) == 2
    assert validate(p).ok


def test_missing_restriction_is_a_parse_error():
    obj = minimal_obj()
    obj["restrictions"] = []
    with pytest.raises(ParseError, match="missing restriction"):
        pair_from_json(obj)


def test_parse_errors_carry_location():
    with pytest.raises(ParseError, match="line"):
        load_pair("{\n  \"schema\": ")
    obj = minimal_obj()
    obj["schema"] = "ncpair/2"
    with pytest.raises(ParseError, match="schema"):
        pair_from_json(obj)
    obj = minimal_obj()
    del obj["strata"][1]["ring"]
    with pytest.raises(ParseError, match=r"strata\[1\]"):
        pair_from_json(obj)


def test_pants_fixture_strata():
    p = build_generic_pair(1, 3)
    assert p.k == 3
    assert p.nonempty_strata == [(), (1,), (2,), (3,)]
    assert validate(p).ok


@pytest.mark.parametrize("name", GOOD_PAIRS)
def test_shipped_fixtures_validate(name):
    assert validate(get_pair(name)).failures == []


def test_broken_fixture_fails_validation():
    rep = validate(p2_lines3_broken())
    assert not rep.ok
    assert any("not unital" in m or "functoriality" in m for m in rep.failures)


def test_non_multiplicative_restriction_is_reported():
    p = build_generic_pair(2, 3)
    f = p.restrictions[((), (1,))]
    images = [dict(im) for im in f.images]
    top = f.source.index("b2*b3")
    images[top] = {k: 2 * c for k, c in images[top].items()}
    p.restrictions[((), (1,))] = AlgebraMap(f.source, f.target, images)
    bad = validate(p).failures
    assert any("not multiplicative" in m for m in bad)
    assert any(m.startswith("functoriality") for m in bad)


def test_non_unital_restriction_is_reported():
    p = cp2_cubic()
    f = p.restrictions[((), (1,))]
    images = list(f.images)
    images[f.source.unit] = {}
    p.restrictions[((), (1,))] = AlgebraMap(f.source, f.target, images)
    assert any("not unital" in m for m in validate(p).failures)


def test_closure_failure():
    p = build_generic_pair(2, 3)
    del p.strata[(2,)]
    p.restrictions = {ik: f for ik, f in p.restrictions.items() if (2,) not in ik}
    assert any(m.startswith("closure") for m in validate(p).failures)


def test_component_count_checked():
    p = cp2_cubic()
    s = p.strata[(1,)]
    p.strata[(1,)] = StratumData(s.I, 2, s.ring)
    assert any("components" in m for m in validate(p).failures)


def test_degree_bound_checked():
    obj = minimal_obj()
    obj["strata"][1]["ring"] = {"basis": [{"name": "1", "deg": 0}, {"name": "z", "deg": 3}],
                                "unit": 0, "mult": [[0, 0, [[0, 1]]], [0, 1, [[1, 1]]], [1, 0, [[1, 1]]]]}
    obj["restrictions"][0]["matrix"] = [[1], [0]]
    p = pair_from_json(obj)
    assert any("degree" in m for m in validate(p).failures)


def test_dual_complex_examples():
    assert dual_complex(build_generic_pair(1, 3)).faces == {(), (1,), (2,), (3,)}
    faces = dual_complex(build_generic_pair(2, 3)).faces
    assert faces == {I for r in range(3) for I in combinations((1, 2, 3), r)}
    assert dual_complex(cp2_cubic()).faces == {(), (1,)}


@pytest.mark.parametrize("name", GOOD_PAIRS)
def test_dual_complex_downward_closed(name):
    assert dual_complex(get_pair(name)).is_closed()


@pytest.mark.parametrize("name", ["cp2_cubic", "pants_n1", "p2_lines4", "x_equals_c"])
def test_round_trip(name):
    p = get_pair(name)
    text = dumps_pair(p)
    q = load_pair(text)
    assert dumps_pair(q) == text
    assert pair_to_json(q) == pair_to_json(p)


@settings(max_examples=15)
@given(st.integers(1, 2), st.integers(0, 3))
def test_generic_pairs_validate(n, extra):
    p = build_generic_pair(n, n + 1 + extra, QQ)
    assert validate(p).ok
    assert dual_complex(p).is_closed()
