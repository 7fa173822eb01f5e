import json

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from synthecg.errors import ConfigError, DegenerateRangeError
from synthecg.params import (
    ParameterSpace,
    WaveRanges,
    default_space,
    dump_space,
    load_space,
    sample_draw,
    scale_range,
    space_from_json_dict,
    space_to_json_dict,
)


class TestScaleRange:
    def test_identity_at_c1(self):
        assert scale_range(0.05, 0.2, 1.0) == (0.05, 0.2)

    def test_c2_shifts_both_limits_by_weighted_d(self):
        lo, hi = scale_range(0.05, 0.2, 2.0)
        # d = 0.15 * 1 * 0.05 / 0.25 = 0.03
        assert lo == pytest.approx(0.02, abs=1e-15)
        assert hi == pytest.approx(0.23, abs=1e-15)

    def test_zero_lower_limit_stays_pinned(self):
        for c in (0.0, 1.0, 2.0, 3.0):
            lo, hi = scale_range(0.0, 0.17e-3, c)
            assert lo == 0.0
            assert hi == pytest.approx(c * 0.17e-3)

    def test_negative_range_scales_by_magnitude(self):
        lo, hi = scale_range(-0.2, -0.05, 2.0)
        assert (lo, hi) == pytest.approx((-0.23, -0.02), abs=1e-15)

    def test_large_c_can_invert_a_negative_wave(self):
        lo, hi = scale_range(-0.2, -0.05, 4.0)
        # magnitude lower limit crosses zero: inverted polarity is allowed
        assert hi > 0.0
        assert lo < 0.0

    def test_constant_is_never_scaled(self):
        assert scale_range(0.28, 0.28, 3.0) == (0.28, 0.28)
        assert scale_range(0.0, 0.0, 3.0) == (0.0, 0.0)

    def test_mixed_sign_range_rejected(self):
        with pytest.raises(DegenerateRangeError):
            scale_range(-0.1, 0.1, 2.0)

    def test_negative_c_rejected(self):
        with pytest.raises(ConfigError):
            scale_range(0.05, 0.2, -1.0)

    def test_proportional_mode_collapses_at_c0(self):
        lo, hi = scale_range(0.05, 0.2, 0.0, mode="proportional")
        assert lo == pytest.approx(hi)
        mid_lo, mid_hi = scale_range(0.05, 0.2, 2.0, mode="proportional")
        assert mid_hi - mid_lo == pytest.approx(2 * 0.15)

    @given(
        lo=st.floats(0.01, 1.0),
        width=st.floats(0.001, 2.0),
        c1=st.floats(0.0, 5.0),
        c2=st.floats(0.0, 5.0),
        mode=st.sampled_from(["symmetric", "proportional"]),
    )
    @settings(max_examples=200, deadline=None)
    def test_width_monotone_in_c(self, lo, width, c1, c2, mode):
        if c1 > c2:
            c1, c2 = c2, c1
        a1, b1 = scale_range(lo, lo + width, c1, mode)
        a2, b2 = scale_range(lo, lo + width, c2, mode)
        assert (b2 - a2) - (b1 - a1) >= -1e-12


class TestDefaultSpace:
    def test_table_values(self):
        space = default_space()
        assert space.waves["t"].amplitude == (0.1, 0.6)
        assert space.waves["t"].width == (0.085, 0.21)
        assert space.waves["t"].delay == (0.2, 0.25)
        assert space.waves["t"].asymmetry == (1.0, 3.0)
        assert space.waves["p"].amplitude == (0.05, 0.2)
        assert space.waves["p"].width == (0.065, 0.085)
        assert space.waves["p"].delay == (-0.18, -0.12)
        assert space.waves["q"].amplitude == (-0.2, -0.05)
        assert space.waves["r"].amplitude == (0.8, 1.2)
        assert space.waves["r"].width == (0.06, 0.085)
        assert space.waves["r"].delay == (0.0, 0.0)
        assert space.waves["s"].delay == (0.03, 0.05)
        assert space.rr.mu == (0.75, 1.0)
        assert space.rr.breathing_freq == 0.28
        assert space.rr.breathing_coupling == 0.1
        assert space.noise.sigma == (0.0, 0.17e-3)
        assert space.noise.alpha == (0.0, 0.67)
        assert space.noise.rho == (0.0, 4e-3)
        assert space.sampling_rate == 250.0

    def test_c1_scaled_ranges_reproduce_the_table(self):
        ranges = default_space().scaled_ranges()
        assert ranges["p.amplitude"] == (0.05, 0.2)
        assert ranges["t.width"] == (0.085, 0.21)
        assert ranges["rr.mu"] == (0.75, 1.0)
        assert ranges["noise.rho"] == (0.0, 4e-3)

    def test_r_ranges_never_scale_without_override(self):
        for c in (0.0, 1.0, 2.0, 3.0):
            ranges = default_space().with_scale(c).scaled_ranges()
            assert ranges["r.amplitude"] == (0.8, 1.2)
            assert ranges["r.width"] == (0.06, 0.085)

    def test_r_override_flag_scales_r(self):
        from dataclasses import replace

        space = replace(default_space().with_scale(2.0), scale_r_wave=True)
        lo, hi = space.scaled_ranges()["r.amplitude"]
        assert (lo, hi) != (0.8, 1.2)

    def test_noise_lower_limits_zero_under_any_c(self):
        for c in (0.0, 0.5, 1.0, 2.0, 3.0):
            ranges = default_space().with_scale(c).scaled_ranges()
            for name in ("noise.sigma", "noise.alpha", "noise.rho"):
                assert ranges[name][0] == 0.0


class TestSampleDraw:
    def test_same_seed_identical(self):
        space = default_space()
        assert sample_draw(space, 123) == sample_draw(space, 123)

    def test_different_seeds_differ(self):
        space = default_space()
        assert sample_draw(space, 1) != sample_draw(space, 2)

    def test_coverage_of_p_amplitude(self):
        space = default_space()
        values = np.array([sample_draw(space, s).waves["p"].amplitude for s in range(10_000)])
        assert values.min() >= 0.05
        assert values.max() <= 0.2
        assert (values.max() - values.min()) / 0.15 > 0.95

    def test_draw_lies_inside_scaled_ranges(self):
        space = default_space().with_scale(3.0)
        ranges = space.scaled_ranges()
        for seed in range(200):
            draw = sample_draw(space, seed)
            for w, wp in draw.waves.items():
                lo, hi = ranges[f"{w}.amplitude"]
                assert lo - 1e-12 <= wp.amplitude <= hi + 1e-12
                lo, hi = ranges[f"{w}.delay"]
                assert lo - 1e-12 <= wp.delay <= hi + 1e-12
            lo, hi = ranges["rr.mu"]
            assert lo <= draw.mu <= hi

    def test_rho_post_multiplied_by_alpha_squared(self):
        space = default_space()
        rho_hi = space.noise.rho[1]
        for seed in range(100):
            draw = sample_draw(space, seed)
            # after the alpha^2 attenuation rho can never exceed hi * alpha^2
            assert draw.rho <= rho_hi * draw.alpha**2 + 1e-18

    def test_proportional_c0_draws_are_constant(self):
        from dataclasses import replace

        # scale_r_wave so the r exemption does not keep its nominal variance
        space = replace(
            default_space(), scaling_mode="proportional", scale_r_wave=True
        ).with_scale(0.0)
        baseline = sample_draw(space, 99)
        for s in range(5):
            draw = sample_draw(space, s)
            assert draw.waves == baseline.waves
            assert draw.mu == baseline.mu
        assert baseline.sigma == 0.0 and baseline.rho == 0.0

    def test_c0_keeps_nominal_r_variance_without_override(self):
        from dataclasses import replace

        space = replace(default_space(), scaling_mode="proportional").with_scale(0.0)
        amps = {sample_draw(space, s).waves["r"].amplitude for s in range(5)}
        assert len(amps) > 1

    def test_midpoint_draw(self):
        draw = default_space().midpoint_draw()
        assert draw.waves["p"].amplitude == pytest.approx(0.125)
        assert draw.mu == pytest.approx(0.875)


class TestValidationAndSerialization:
    def test_degenerate_range_rejected_at_validation(self):
        space = default_space()
        bad = dict(space.waves)
        bad["q"] = WaveRanges(amplitude=(-0.1, 0.1), width=(0.03, 0.08), delay=(-0.05, -0.03), asymmetry=1.0)
        with pytest.raises(DegenerateRangeError):
            ParameterSpace(waves=bad, rr=space.rr, noise=space.noise).validate()

    def test_nonzero_noise_floor_rejected(self):
        from dataclasses import replace

        from synthecg.params import NoiseRanges

        space = replace(default_space(), noise=NoiseRanges(sigma=(1e-5, 2e-4)))
        with pytest.raises(ConfigError):
            space.validate()

    def test_json_round_trip(self, tmp_path):
        space = default_space().with_scale(2.5)
        path = tmp_path / "space.json"
        dump_space(space, path)
        assert load_space(path) == space

    def test_json_keys_mirror_table_names(self):
        doc = space_to_json_dict(default_space())
        assert set(doc["waves"]["t"]) == {"a", "b", "d", "m"}
        assert doc["rr"]["f_b"] == 0.28
        assert doc["noise"]["rho"] == [0.0, 4e-3]
        assert doc["waves"]["r"]["d"] == 0.0  # constants collapse to scalars

    def test_malformed_document_rejected(self):
        with pytest.raises(ConfigError):
            space_from_json_dict({"waves": {"p": {"a": [0.05]}}})

    def test_json_is_loadable_text(self, tmp_path):
        path = tmp_path / "space.json"
        dump_space(default_space(), path)
        json.loads(path.read_text())
