import pytest

from llhyst.specio import (
    ExperimentSpec,
    SpecError,
    expand_spec,
    load_preset,
    parse_spec,
    preset_names,
    preset_text,
    serialize_spec,
)

MINIMAL = """
system = "linear-spring"

[input]
amplitude = 1.0
shape = "sine"
omega = 1.0
"""


class TestParse:
    def test_minimal_document(self):
        spec = parse_spec(MINIMAL)
        assert spec.system == "linear-spring"
        assert spec.single_omega() == 1.0

    def test_comments_are_allowed(self):
        parse_spec("# a note\n" + MINIMAL)

    def test_unknown_top_level_key(self):
        with pytest.raises(SpecError):
            parse_spec(MINIMAL + "\n[forcing]\nkind = 1\n")

    def test_unknown_system(self):
        with pytest.raises(SpecError):
            parse_spec('system = "spinner"\n')

    def test_missing_system(self):
        with pytest.raises(SpecError):
            parse_spec('name = "x"\n')

    def test_invalid_toml(self):
        with pytest.raises(SpecError):
            parse_spec("system = linear-spring")

    def test_increasing_sweep_rejected(self):
        with pytest.raises(SpecError):
            parse_spec(MINIMAL + "\n[sweep]\nomegas = [0.1, 1.0]\n")

    def test_probe_only_for_field_systems(self):
        with pytest.raises(SpecError):
            parse_spec(MINIMAL + "\n[probe]\nx = 0.6\nchannel = 1\n")

    def test_spectrum_requires_linear_field_system(self):
        with pytest.raises(SpecError):
            parse_spec(MINIMAL + "\n[spectrum]\nmax_mode = 3\n")

    def test_bad_parameter_key(self):
        with pytest.raises(SpecError):
            parse_spec('system = "linear-spring"\n[params]\nnu = 0.02\n')

    def test_missing_omega_for_simulate(self):
        spec = parse_spec('system = "linear-spring"\n')
        with pytest.raises(SpecError):
            spec.single_omega()


class TestRoundTrip:
    def test_serialize_parse_identity_on_presets(self):
        for name in preset_names():
            spec = load_preset(name)
            again = parse_spec(serialize_spec(spec))
            assert again == spec, name

    def test_expand_is_idempotent(self):
        for name in preset_names():
            spec = expand_spec(load_preset(name))
            assert expand_spec(spec) == spec


class TestExpand:
    def test_defaults_filled_in(self):
        spec = expand_spec(parse_spec(MINIMAL))
        assert spec.params == {"c": 15.0, "k": 1.0}
        assert spec.integrator["discard_periods"] == 2
        assert spec.integrator["samples_per_period"] == 2000
        assert spec.outputs == {"csv": True, "plot": False}

    def test_nonlinear_field_gets_projection_default(self):
        spec = expand_spec(parse_spec('system = "ll-nonlinear"\n'))
        assert spec.integrator["project"] is False
        assert spec.probe == {"x": 0.6, "channel": 1}

    def test_user_values_win(self):
        spec = expand_spec(parse_spec(
            'system = "ll-nonlinear"\n[integrator]\nproject = true\n'))
        assert spec.integrator["project"] is True


class TestPresets:
    def test_expected_names_present(self):
        names = preset_names()
        for fig in ("fig3", "fig4", "fig5", "fig6", "fig7"):
            assert fig in names
            for letter in "abcd":
                assert fig + letter in names
        assert "spectrum" in names

    def test_all_presets_parse_and_expand(self):
        for name in preset_names():
            expand_spec(load_preset(name))

    def test_single_run_presets_pin_omega(self):
        assert load_preset("fig3a").single_omega() == 1.0
        assert load_preset("fig5d").single_omega() == 0.001

    def test_sweep_presets_use_standard_ladder(self):
        for fig in ("fig3", "fig4", "fig5", "fig6", "fig7"):
            assert load_preset(fig).sweep == [1.0, 0.1, 0.01, 0.001]

    def test_unknown_preset(self):
        with pytest.raises(SpecError):
            preset_text("fig99")

    def test_preset_documents_carry_comments(self):
        assert preset_text("fig5d").startswith("#")


class TestSerialize:
    def test_field_for_field_equality(self):
        spec = ExperimentSpec(
            system="ll-linear",
            params={"nu": 0.02, "L": 1.0, "n": 41, "a": [1.0, 0.0, 0.0]},
            input={"amplitude": 0.001, "shape": "cosine", "channel": 1},
            initial={"z0": [1.0, 0.0, 0.0]},
            sweep=[1.0, 0.5, 0.25],
            probe={"x": 0.6, "channel": 1},
            integrator={"discard_periods": 2, "samples_per_period": 2000},
            outputs={"csv": True, "plot": True},
            name="custom",
        )
        assert parse_spec(serialize_spec(spec)) == spec

    def test_floats_keep_shortest_representation(self):
        spec = parse_spec(MINIMAL)
        spec.input["omega"] = 0.001
        text = serialize_spec(spec)
        assert "omega = 0.001" in text
