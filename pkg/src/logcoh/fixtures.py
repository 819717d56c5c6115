"""Built-in example data: pairs, arrangements and filtered complexes."""
from __future__ import annotations

import json
from functools import lru_cache

from .arrangements import boolean_arrangement, build_generic_pair
from .exactalg import QQ
from .graded import AlgebraMap, algebra_from_table, exterior_algebra, ground_algebra
from .pairdata import NCPairData, StratumData, dumps_pair
from .specseq import named_complex


class UnknownFixture(KeyError):
    pass


def cp2_cubic(field=QQ) -> NCPairData:
    """CP^2 with a smooth cubic E; the open stratum is the circle bundle of degree 9 over E."""
    HX = algebra_from_table([("1", 0), ("x", 2), ("y", 2)], [], field)
    SD = algebra_from_table(
        [("1", 0), ("a", 1), ("b", 1), ("A", 2), ("B", 2), ("V", 3)],
        [("a", "B", {"V": 1}), ("b", "A", {"V": -1})], field)
    one = field.one
    r = AlgebraMap(HX, SD, [{0: one}, {3: one}, {4: one}])
    strata = {(): StratumData((), 1, HX), (1,): StratumData((1,), 1, SD)}
    flags = {"anticanonical": True, "effective_classes": [[3]], "fano": True,
             "pi2_omega_zero": False, "same_line_bundle": [3]}
    return NCPairData(k=1, dim=2, kappa=[3], pole_orders=[1], strata=strata,
                      restrictions={((), (1,)): r}, flags=flags, h1_relations=[[3]],
                      field=field, name="CP2 minus a smooth cubic")


def x_equals_c(field=QQ) -> NCPairData:
    """P^1 with the point at infinity; the volume form has a pole of order 2 there."""
    X = ground_algebra(field)
    S = exterior_algebra([("e1", 1)], field)
    r = AlgebraMap(X, S, [{0: field.one}])
    strata = {(): StratumData((), 1, X), (1,): StratumData((1,), 1, S)}
    flags = {"anticanonical": False, "effective_classes": [[1]], "fano": True,
             "pi2_omega_zero": False, "same_line_bundle": [1]}
    return NCPairData(k=1, dim=1, kappa=[1], pole_orders=[2], strata=strata,
                      restrictions={((), (1,)): r}, flags=flags, h1_relations=[[1]],
                      field=field, name="P1 minus a point (X = C)")


def p2_lines3_broken(field=QQ) -> NCPairData:
    """p2_lines3 with the restriction from D_1 to D_12 replaced by zero."""
    p = build_generic_pair(2, 3, field, check=False)
    key = ((1,), (1, 2))
    f = p.restrictions[key]
    p.restrictions[key] = AlgebraMap(f.source, f.target, [{} for _ in range(f.source.dim)])
    p.name = "P2 minus 3 generic lines, restriction D1 -> D12 zeroed"
    return p


PAIRS = {
    "cp2_cubic": cp2_cubic,
    "pants_n1": lambda field=QQ: build_generic_pair(1, 3, field),
    "pants_n2": lambda field=QQ: build_generic_pair(2, 4, field),
    "pants_n3": lambda field=QQ: build_generic_pair(3, 5, field),
    "p2_lines3": lambda field=QQ: build_generic_pair(2, 3, field),
    "p2_lines4": lambda field=QQ: build_generic_pair(2, 4, field),
    "p2_lines5": lambda field=QQ: build_generic_pair(2, 5, field),
    "p2_lines6": lambda field=QQ: build_generic_pair(2, 6, field),
    "x_equals_c": x_equals_c,
    "p2_lines3_broken": p2_lines3_broken,
}

ARRANGEMENTS = {f"boolean_{n}": (lambda n=n: boolean_arrangement(n)) for n in range(1, 6)}
ARRANGEMENTS["boolean_n"] = lambda: boolean_arrangement(3)

COMPLEXES = {"dx_eq_y": "dx_eq_y", "d2_only": "d2_only", "exterior_xy": "exterior_xy"}

# pairs whose strata are all connected and whose restrictions are honest algebra maps
GOOD_PAIRS = [n for n in PAIRS if n != "p2_lines3_broken"]


def catalog() -> list[str]:
    return sorted(set(PAIRS) | set(ARRANGEMENTS) | set(COMPLEXES))


def kind_of(name: str) -> str:
    if name in PAIRS:
        return "pair"
    if name in ARRANGEMENTS:
        return "arrangement"
    if name in COMPLEXES:
        return "complex"
    raise UnknownFixture(name)


@lru_cache(maxsize=None)
def _pair_cached(name: str) -> NCPairData:
    return PAIRS[name]()


def get_pair(name: str, field=QQ) -> NCPairData:
    if name not in PAIRS:
        raise UnknownFixture(name)
    if field == QQ:
        return _pair_cached(name)
    return PAIRS[name](field)


def fixture_text(name: str) -> str:
    """Byte-stable file contents of a named fixture."""
    kind = kind_of(name)
    if kind == "pair":
        return dumps_pair(PAIRS[name]())
    if kind == "arrangement":
        obj = ARRANGEMENTS[name]().to_json()
    else:
        obj = named_complex(COMPLEXES[name]).to_json()
    return json.dumps(obj, indent=1, sort_keys=True) + "\n"
