import pytest

from algebra.errors import OrderCapExceeded, SpecError
from models.spec_file import AnalysisOptions
from utils.analyzer import InvariantAnalyzer, analyze, merge_options
from utils.spec_parser import load_fixture


@pytest.fixture(scope="module")
def sw_report():
    return analyze(load_fixture("shank_wehlau"))


@pytest.fixture(scope="module")
def main_p2_report():
    return analyze(load_fixture("example_main_p2"))


def test_merge_options_overrides_only_given_values():
    base = AnalysisOptions(gprime=["tau"], coset="sigma", degree_cap=5)
    merged = merge_options(base, AnalysisOptions(order_cap=10))
    assert merged.gprime == ["tau"]
    assert merged.coset == "sigma"
    assert merged.degree_cap == 5
    assert merged.order_cap == 10
    assert merge_options(base, None) is base


def test_merge_options_new_subgroup_drops_coset():
    base = AnalysisOptions(gprime=["tau"], coset="sigma")
    merged = merge_options(base, AnalysisOptions(gprime=["sigma"]))
    assert merged.gprime == ["sigma"]
    assert merged.coset is None


def test_shank_wehlau_report(sw_report):
    assert sw_report.status == "ok"
    assert not sw_report.cap_exhausted
    assert sw_report.group.order == 4
    assert sw_report.invariant_generators.degrees == [1, 1, 2, 2]
    assert sw_report.invariant_generators.certified
    assert sw_report.different_s_over_r.factored == "(x1)^1 * (x3)^1"
    assert sw_report.series.orders == [1, 2, 4]
    assert len(sw_report.stages) == 1


def test_shank_wehlau_stage(sw_report):
    stage = sw_report.stages[0]
    assert stage.label == "G / G'"
    assert stage.sigma == "sigma"
    assert stage.different_a_over_r.factored == "(x3)^1"
    assert stage.different_a_over_r.support_matches
    assert stage.split.is_split
    assert stage.split.d_min == 1
    assert stage.split.witness == "x4"
    assert stage.split.witness_trace == "x3"
    assert stage.special_formula.status == "agree"
    assert stage.orbit_witness.status == "found"
    assert stage.ramif1.s_over_a_over_r == ["x3"]
    lines = stage.different_s_over_r.lines
    assert [(l.line, l.inertia_order, l.decomposition_order) for l in lines] == [("x1", 2, 4), ("x3", 2, 4)]


def test_non_transvection_subgroup_is_flagged():
    report = analyze(load_fixture("shank_wehlau_h"))
    stage = report.stages[0]
    assert stage.split.is_split
    assert stage.split.d_min == 2
    assert stage.special_formula.status == "not_applicable"
    # B = S^<στ> is a hypersurface, not a polynomial ring
    assert not stage.a_generators.certified
    assert report.status == "uncertified"
    assert not report.cap_exhausted
    assert report.uncertified


def test_trivial_group_report():
    report = analyze(load_fixture("trivial"))
    assert report.status == "ok"
    assert report.group.order == 1
    assert report.group.beta is None
    assert report.different_s_over_r.factored == "1"
    assert report.stages == []
    assert report.series.orders == [1]


def test_series_mode_main_example(main_p2_report):
    report = main_p2_report
    assert report.group.order == 16
    assert report.series.betas == [1, 1, 1, 3]
    assert [s.label for s in report.stages] == ["G_1 / G_0", "G_2 / G_1", "G_3 / G_2", "G_4 / G_3"]
    assert all(s.orbit_witness.status == "skipped" for s in report.stages[:-1])
    last = report.stages[-1]
    assert last.prime_order == 8
    assert last.different_a_over_r.degree == 2
    assert last.split.is_split
    assert last.split.d_min == 2
    assert last.special_formula.status == "agree"
    assert last.orbit_witness.status == "none"
    assert last.orbit_witness.no_linear_orbit_witness
    assert "beta" in last.different_a_over_r.factored


def test_explicit_subgroup_override():
    report = analyze(load_fixture("shank_wehlau"), AnalysisOptions(gprime=["sigma"]))
    stage = report.stages[0]
    assert stage.sigma == "tau"
    assert stage.different_a_over_r.factored == "(x1)^1"
    assert stage.split.is_split


def test_subgroup_of_wrong_index_is_a_spec_error():
    with pytest.raises(SpecError) as excinfo:
        analyze(load_fixture("shank_wehlau"), AnalysisOptions(gprime=["1"]))
    assert excinfo.value.location == "options.gprime"


def test_order_cap_is_enforced():
    with pytest.raises(OrderCapExceeded):
        analyze(load_fixture("example_main_p2"), AnalysisOptions(order_cap=4))


def test_exhaustion_cap_marks_report():
    options = AnalysisOptions(exhaustion_cap=1, full_field=True)
    report = analyze(load_fixture("stong_p2"), options)
    assert report.cap_exhausted
    assert report.status == "uncertified"
    assert report.stages[0].orbit_witness.status == "uncertified"


def test_recomputed_on_every_run():
    spec = load_fixture("shank_wehlau")
    first = InvariantAnalyzer(spec).run()
    second = InvariantAnalyzer(spec).run()
    assert first == second
