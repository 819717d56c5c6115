"""Acceptance criteria, one test each, with a printed PASS/FAIL line.

Run standalone with ``python tests/test_acceptance.py`` or through pytest;
pytest repeats the summary lines at the end of the session.
"""
import random
import sys
import time
from contextlib import contextmanager

import pytest

from logcoh.arrangements import (boolean_arrangement, build_generic_pair, generic_central,
                                 mirror_hochschild, orlik_solomon, os_poincare_bruteforce,
                                 projective_complement, sr_jacobian_isomorphism)
from logcoh.criteria import ESTABLISHED, check_easycor, classify_pair, resolve_p2_arrangement
from logcoh.exactalg import QQ, NotAPrime, PrimeField, sparse_rank
from logcoh.fixtures import GOOD_PAIRS, cp2_cubic, get_pair, p2_lines3_broken
from logcoh.graded import algebra_from_table, gysin_circle_bundle, poincare_polynomial
from logcoh.logring import build_log_ring, check_finite_generation, hilbert_table, stanley_reisner
from logcoh.pairdata import validate
from logcoh.specseq import (page, page_cohomology_dims, page_product, random_filtered_complex,
                            random_filtered_dga, stable_page_index, total_cohomology)

RESULTS: list[str] = []


@contextmanager
def criterion(n: int, title: str, budget: float | None):
    start = time.perf_counter()
    try:
        yield
        elapsed = time.perf_counter() - start
        if budget is not None:
            assert elapsed < budget, f"took {elapsed:.2f}s, budget {budget}s"
    except BaseException as exc:
        elapsed = time.perf_counter() - start
        line = f"criterion {n} FAIL ({elapsed:.2f}s) {title}: {str(exc).splitlines()[0] if str(exc) else type(exc).__name__}"
        RESULTS.append(line)
        print(line)
        raise
    line = f"criterion {n} PASS ({elapsed:.2f}s) {title}"
    RESULTS.append(line)
    print(line)


def test_criterion_1_cp2_minus_cubic():
    with criterion(1, "CP2 minus a smooth cubic", 1.0):
        E = algebra_from_table([("1", 0), ("a", 1), ("b", 1), ("p", 2)], [("a", "b", {"p": 1})])
        assert [g.rank for g in gysin_circle_bundle(E, {E.index("p"): 9})] == [1, 2, 2, 1]
        T = hilbert_table(build_log_ring(cp2_cubic(), 9))
        got = {w: T.column(w, [0, 1, 2, 3]) for w in (0, 3, 6, 9)}
        want = {0: [1, 2, 2, 0], 3: [1, 2, 2, 1], 6: [1, 2, 2, 1], 9: [1, 2, 2, 1]}
        assert got == want, f"columns {got}"


def test_criterion_2_sr_jacobian():
    with criterion(2, "Stanley-Reisner ring versus Jacobian ring", 5.0):
        for n in (1, 2, 3):
            ok, wit = sr_jacobian_isomorphism(n)
            assert ok, f"n={n}: {wit}"
            assert len(wit["sr_hilbert"]) >= 7 and wit["sr_hilbert"] == wit["jacobian_hilbert"]


def test_criterion_3_mirror_hochschild():
    with criterion(3, "mirror Hochschild cohomology", 30.0):
        for m in (3, 4):
            rep = mirror_hochschild(m, 4)
            sr = stanley_reisner(build_generic_pair(m - 2, m)).weight_dims(4)
            assert {w: d for w, d in rep.h0.items()} == {w: sr.get(w, 0) for w in range(5)}
            b1 = poincare_polynomial(projective_complement(generic_central(m, m - 1)))[1]
            assert rep.h1[0] == b1 == m - 1


def test_criterion_4_verdicts():
    with criterion(4, "degeneration and classification verdicts", 1.0):
        assert check_easycor([3]).status == ESTABLISHED
        for k in (3, 4, 5):
            v = classify_pair({"k": k, "dim": 2, "same_line_bundle": [1] * k})
            assert v["topological"].established == (k >= 3)
            assert v["multiplicatively_topological"].established == (k >= 5)
        res = resolve_p2_arrangement([[1, t, t * t] for t in range(6)])
        assert res.topological.established and res.multiplicatively_topological.established


def _total_dims(C):
    """dim H^n from plain ranks of d, ignoring the filtration."""
    out = {}
    for n in C.degrees():
        cells = [i for i, b in enumerate(C.basis) if b.deg == n]
        prev = [i for i, b in enumerate(C.basis) if b.deg == n - 1]
        out[n] = len(cells) - sparse_rank(C.d[i] for i in cells) - sparse_rank(C.d[i] for i in prev)
    return out


def test_criterion_5_spectral_sequence_engine():
    with criterion(5, "spectral sequence engine properties", 60.0):
        with pytest.raises(NotAPrime):
            PrimeField(1007)
        fields = [QQ, PrimeField(1009)]
        failures = []
        for seed in range(200):
            field = fields[seed % 2]
            C = random_filtered_complex(random.Random(seed), field, max_dim=30, max_spread=5)
            assert C.dim <= 30 and C.spread() <= 5
            s = stable_page_index(C)
            pages = [page(C, r) for r in range(s + 1)]
            Einf = pages[-1].dims()
            H = total_cohomology(C)
            if Einf != {k: v for k, v in H.gr.items() if v}:
                failures.append(f"seed {seed}: E_inf != gr H")
            plain = _total_dims(C)
            for n in C.degrees():
                if sum(d for (p, q), d in Einf.items() if p + q == n) != plain[n]:
                    failures.append(f"seed {seed}: total dim in degree {n}")
            for P, Pn in zip(pages, pages[1:]):
                if {k: v for k, v in page_cohomology_dims(P).items() if v} != Pn.dims():
                    failures.append(f"seed {seed}: page {P.r + 1} != H(page {P.r})")
        for seed in range(50):
            C = random_filtered_dga(random.Random(10_000 + seed), fields[seed % 2], max_dim=30, max_spread=5)
            for r in range(stable_page_index(C) + 1):
                if page_product(C, r).leibniz_failures:
                    failures.append(f"dga seed {seed}: Leibniz on page {r}")
        assert failures == [], failures[:5]


def test_criterion_6_orlik_solomon():
    with criterion(6, "Orlik-Solomon against brute force", 10.0):
        for n in range(1, 6):
            a = boolean_arrangement(n)
            assert orlik_solomon(a).poincare() == os_poincare_bruteforce(a)
        for k in range(1, 7):
            a = generic_central(k, 2)
            assert orlik_solomon(a).poincare() == os_poincare_bruteforce(a)
        assert poincare_polynomial(projective_complement(generic_central(3, 2))) == [1, 2]
        assert poincare_polynomial(projective_complement(generic_central(4, 3))) == [1, 3, 3]


def test_criterion_7_finite_generation():
    with criterion(7, "finite generation", 5.0):
        for name in GOOD_PAIRS:
            p = get_pair(name)
            assert validate(p).ok
            for W in range(7):
                fg = check_finite_generation(build_log_ring(p, W, require_valid=False))
                assert fg.ok, f"{name} W={W}: {fg.witness}"
        assert not check_finite_generation(build_log_ring(p2_lines3_broken(), 6, require_valid=False)).ok


def test_criterion_8_algebra_laws():
    with criterion(8, "log ring algebra laws", None):
        bad = []
        for name in GOOD_PAIRS:
            L = build_log_ring(get_pair(name), 6)
            bad += L.associativity_violations() + L.commutativity_violations() + L.weight_violations()
        assert bad == [], bad[:5]


if __name__ == "__main__":
    tests = [f for n, f in sorted(globals().items()) if n.startswith("test_criterion_")]
    failed = 0
    for t in tests:
        try:
            t()
        except BaseException:
            failed += 1
    sys.exit(1 if failed else 0)
