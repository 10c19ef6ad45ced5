"""Acceptance gate: one test per shipped criterion, one PASS/FAIL line each.

The heavy lifting lives in concavemaps.verify; this file only surfaces the
results so a plain pytest run documents the contract. The suite runs once
per session (the twelfth criterion reruns the core internally to check
byte-identical reporting).
"""

import pytest

from concavemaps import verify


@pytest.fixture(scope="session")
def results():
    criteria, _bundle = verify.run_all()
    return {r.name: r for r in criteria}


def show(results, name):
    res = results[name]
    word = "PASS" if res.passed else "FAIL"
    print(f"{word}  {res.name}: {res.detail}")
    assert res.passed, f"{res.name}: {res.detail}"


def test_c01_thm1_equality_halfplane(results):
    show(results, "thm1-equality-halfplane")


def test_c02_thm1_rejects_identity(results):
    show(results, "thm1-rejects-identity")


def test_c03_corollary_sharp_cubic(results):
    show(results, "corollary-sharp-cubic")


def test_c04_co0_equality_locus(results):
    show(results, "co0-equality-locus")


def test_c05_thm3_equality_cubic(results):
    show(results, "thm3-equality-cubic")


def test_c06_thm2_origin_equality(results):
    show(results, "thm2-origin-equality")


def test_c07_thm4_scans_and_p0_reduction(results):
    show(results, "thm4-scans-and-p0-reduction")


def test_c08_omitted_segment_crossings(results):
    show(results, "omitted-segment-crossings")


def test_c09_oracle_classifier_agreement(results):
    show(results, "oracle-classifier-agreement")


def test_c10_jets_match_closed_forms(results):
    show(results, "jets-match-closed-forms")


def test_c11_schwarz_self_map_bounds(results):
    show(results, "schwarz-self-map-bounds")


def test_c12_byte_identical_reports(results):
    show(results, "byte-identical-reports")
