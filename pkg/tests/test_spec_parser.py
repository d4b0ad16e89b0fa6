import pytest

from algebra.errors import SpecError
from utils.spec_parser import (
    fixture_path,
    list_fixtures,
    load_spec,
    parse_spec,
    resolve_spec,
)

SIMPLE = """
name = "simple"
n = 2

[field]
p = 3

[generators]
rho = [[1, 0], [1, 1]]
"""


def _spec(generators: str, header: str = "[field]\np = 2\n", extra: str = "") -> str:
    return f'variables = ["x1", "x2", "x3"]\n{header}\n{extra}\n[generators]\n{generators}\n'


def test_parse_simple_spec():
    spec = parse_spec(SIMPLE)
    assert spec.name == "simple"
    assert spec.variables == ["x1", "x2"]
    assert spec.n == 2
    resolved = resolve_spec(spec)
    assert resolved.group().order == 3


def test_shank_wehlau_fixture(shank_wehlau):
    assert shank_wehlau.ring.names == ("x1", "x2", "x3", "x4")
    assert shank_wehlau.group().order == 4
    assert shank_wehlau.spec.options.gprime == ["tau"]


def test_stong_bindings(stong_p3):
    field = stong_p3.field
    assert stong_p3.scalars["omega"] == field([0, 1, 0])
    assert stong_p3.scalars["mu"] == field([0, 0, 1])
    assert stong_p3.group().order == 27


def test_subfield_bindings(example_main_p2):
    field = example_main_p2.field
    assert field.degree_of(example_main_p2.scalars["alpha"]) == 2
    assert field.degree_of(example_main_p2.scalars["beta"]) == 3
    names = example_main_p2.scalar_names
    assert names[example_main_p2.scalars["beta"].code] == "beta"


def test_non_unitriangular_generator_names_generator_and_row():
    text = _spec("bad = [[1, 1, 0], [0, 1, 0], [0, 0, 1]]")
    with pytest.raises(SpecError) as excinfo:
        parse_spec(text)
    assert excinfo.value.location == "generators.bad[1]"
    assert "gx1 = x1" in str(excinfo.value)


def test_reducible_modulus_is_rejected():
    text = _spec("g = [[1, 0, 0], [1, 1, 0], [0, 0, 1]]", header="[field]\np = 2\nk = 2\nmodulus = [1, 0, 1]\n")
    with pytest.raises(SpecError) as excinfo:
        parse_spec(text)
    assert excinfo.value.location == "field.modulus"


def test_malformed_field_block():
    with pytest.raises(SpecError) as excinfo:
        parse_spec(_spec("", header="[field]\nk = 2\n"))
    assert excinfo.value.location.startswith("field")
    with pytest.raises(SpecError):
        parse_spec(_spec("", header="[field]\np = 6\n"))


def test_undefined_scalar():
    text = _spec('g = [[1, 0, 0], ["beta", 1, 0], [0, 0, 1]]')
    with pytest.raises(SpecError) as excinfo:
        parse_spec(text)
    assert excinfo.value.location == "generators.g[2]"


def test_negated_scalar_entry():
    text = _spec(
        'g = [[1, 0, 0], ["-a", 1, 0], [0, 0, 1]]',
        header="[field]\np = 3\n",
        extra="[scalars]\na = 1\n",
    )
    resolved = resolve_spec(parse_spec(text))
    x1, x2, _ = resolved.ring.gens
    assert resolved.generators["g"].act(x2) == x2 - x1


def test_wrong_row_count():
    with pytest.raises(SpecError) as excinfo:
        parse_spec(_spec("g = [[1, 0, 0], [0, 1, 0]]"))
    assert excinfo.value.location == "generators.g"
    with pytest.raises(SpecError) as excinfo:
        parse_spec(_spec("g = [[1, 0, 0], [0, 1], [0, 0, 1]]"))
    assert excinfo.value.location == "generators.g[2]"


def test_toml_syntax_error():
    with pytest.raises(SpecError) as excinfo:
        parse_spec("[field\np = 2\n")
    assert "TOML" in str(excinfo.value)


def test_variables_and_n_must_agree():
    with pytest.raises(SpecError):
        parse_spec('n = 2\nvariables = ["x", "y", "z"]\n[field]\np = 2\n')
    with pytest.raises(SpecError):
        parse_spec("[field]\np = 2\n")


def test_unknown_word_in_options():
    text = _spec("g = [[1, 0, 0], [1, 1, 0], [0, 0, 1]]", extra='[options]\ngprime = ["h"]\n')
    with pytest.raises(SpecError) as excinfo:
        parse_spec(text)
    assert excinfo.value.location == "options"


def test_words(shank_wehlau):
    tau = shank_wehlau.generators["tau"]
    sigma = shank_wehlau.generators["sigma"]
    assert shank_wehlau.word("sigma*tau") == sigma.compose(tau)
    assert shank_wehlau.word("tau^2").is_identity()
    assert shank_wehlau.word("1").is_identity()
    with pytest.raises(SpecError):
        shank_wehlau.word("sigma+tau")


def test_bundled_fixtures():
    names = list_fixtures()
    for expected in ("shank_wehlau", "shank_wehlau_h", "stong_p2", "stong_p3",
                     "example_main_p2", "example_main_p3", "trivial"):
        assert expected in names
    with pytest.raises(SpecError):
        fixture_path("../spec")


def test_load_spec_missing_file(tmp_path):
    with pytest.raises(SpecError):
        load_spec(str(tmp_path / "missing.toml"))


def test_load_spec_from_file(tmp_path):
    path = tmp_path / "simple.toml"
    path.write_text(SIMPLE, encoding="utf-8")
    assert load_spec(str(path)).name == "simple"
