"""The thirteen acceptance criteria, one test each.

Every test records a ``criterion N: PASS|FAIL|NOT ATTAINED ...`` line; the
lines are printed in the terminal summary, and also when this file is run
directly with ``python tests/test_acceptance.py``.
"""

import pytest

from fraisse import verify


@pytest.fixture
def record(acceptance_log):
    def write(number: int, title: str, passed: bool, detail: str, status: str | None = None) -> None:
        status = status or ("PASS" if passed else "FAIL")
        line = f"criterion {number}: {status} {title} ({detail})"
        acceptance_log.append(line)
        print(line)

    return write


def test_01_measure_counts(record):
    r = verify.measure_counts()
    ok = r["pass"] and r["seconds"] < 10
    record(1, "measure counts", ok, f"counts {r['counts']} in {r['seconds']} s")
    assert ok


def test_02_reference_table(record):
    r = verify.appendix_a()
    ok = r["pass"] and r["seconds"] < 60
    record(2, "n=2 table with supports", ok, f"{r['matched']}/{r['total']} rows matched in {r['seconds']} s")
    assert ok, r["mismatches"]


def test_03_worked_example(record):
    r = verify.example_4_2()
    record(3, "eight-color worked example", r["pass"], f"s = {r['s']}, A = {r['A']}, det = {r['det']}")
    assert r["pass"], r["checks"]


def test_04_closed_formula_values(record):
    r = verify.intro_values()
    vals = ", ".join(f"{v['closed_formula']}/{v['chain']}" for v in r["values"])
    record(4, "closed formula and chain evaluation", r["pass"], f"formula/chain values {vals}")
    assert r["pass"]


def test_05_subclass_counts(record):
    r = verify.counts()
    ok = r["pass"] and r["seconds"] < 60
    record(5, "subclass and induced counts", ok, f"f = {list(r['f_values'].values())}, induced = {list(r['induced'].values())}")
    assert ok


def test_06_relation_soundness(record):
    r = verify.relations()
    per = r["per_n"]
    detail = "; ".join(
        f"n={n}: {v['linear_failures']}+{v['quadratic_failures']} family failures, "
        f"{v['axiom_identities']} axiom identities up to {v['axiom_max_leaves']} leaves, {v['axiom_failures']} failures"
        for n, v in per.items()
    )
    record(6, "relation and axiom soundness", r["pass"], detail)
    assert r["pass"]


def test_07_derived_relations(record):
    r = verify.derived_relations()
    detail = "; ".join(
        f"n={n}: {v['derived']} derived, rank {v['rank_derived']} = {v['rank_families']}, "
        f"{v['families_found_literally']}/{v['family_instances']} literal"
        for n, v in r["per_n"].items()
    )
    record(7, "derived relations equal the families", r["pass"], detail)
    assert r["pass"]


def test_08_dyadic_values(record):
    r = verify.dyadic_values()
    record(8, "values are 0 or signed powers of two", r["pass"], f"{r['evaluations']} evaluations")
    assert r["pass"], r["violations"]


def test_09_regularity(record):
    r = verify.regularity()
    record(9, "regularity landscape", r["pass"], f"regular {r['regular']}, {r['witness_checks']} witness searches")
    assert r["pass"], r["missing_witnesses"]


def test_10_category_laws(record):
    r = verify.category_laws()
    detail = (
        f"identity {r['identity_checked']} checks on objects up to 3 leaves, "
        f"associativity exhaustive up to {r['assoc_exhaustive_leaves']} leaf ({r['assoc_checked']} checks) "
        f"plus {r['assoc_samples']} seeded samples up to {r['assoc_sampled_leaves']} leaves, "
        f"failures {r['identity_failures']}/{r['trace_failures']}/{r['assoc_failures']}/{r['assoc_sample_failures']}"
    )
    if not r["pass"]:
        record(10, "category laws", False, detail)
        pytest.fail(detail)
    if not r["exhaustive"]:
        record(10, "category laws", False, detail + "; exhaustive associativity needs about 1.4e10 triples per measure", "NOT ATTAINED")
        pytest.xfail("exhaustive associativity on objects with 3 leaves is out of reach")
    record(10, "category laws", True, detail)


def test_11_semisimplicity(record):
    r = verify.semisimplicity()
    record(11, "nondegenerate trace forms", r["pass"], f"{r['objects']} objects in {r['seconds']} s")
    assert r["pass"]


def test_12_growth(record):
    r = verify.growth()
    dims = {m: v["dimension"] for m, v in r["end_dimensions"].items()}
    record(12, "growth", r["pass"], f"top summands {list(r['summand_counts'].values())}, dim End {dims}")
    assert r["pass"]


def test_13_automorphisms(record):
    r = verify.automorphisms()
    record(13, "automorphism counts", r["pass"], f"{r['checked']} structures against the permutation oracle")
    assert r["pass"], r["violations"]


if __name__ == "__main__":
    import sys

    sys.exit(pytest.main([__file__, "-q"]))
