import numpy as np
import pytest

from synthecg.artefacts import (
    CATEGORIES,
    POWERLINE_FREQ,
    ArtefactBank,
    augment,
    compose_artefact,
    load_bank,
)
from synthecg.dataio import write_array, write_vector
from synthecg.errors import ConfigError

L = 1000


def test_zero_multipliers_leave_segment_unchanged(bank):
    seg = np.linspace(-1, 1, L)
    art = compose_artefact(L, bank.bw[:L], 0.0, bank.ma[:L], 0.0, 0.0, 0.0)
    np.testing.assert_array_equal(seg + art, seg)


def test_bw_only_on_zero_input_is_scaled_window_plus_powerline(bank):
    k = 2.5
    art = compose_artefact(L, bank.bw[100 : 100 + L], k, None, 0.0, 0.3, 1.0)
    t = np.arange(L) / 250.0
    expected = k * bank.bw[100 : 100 + L] + 0.3 * np.sin(2 * np.pi * POWERLINE_FREQ * t + 1.0)
    np.testing.assert_allclose(art, expected, atol=1e-12)


def test_category_frequencies_are_uniform(bank):
    # replicate the category selector's first draw
    counts = {c: 0 for c in CATEGORIES}
    for seed in range(10_000):
        rng = np.random.default_rng(np.random.SeedSequence(seed))
        counts[CATEGORIES[rng.integers(0, len(CATEGORIES))]] += 1
    for c in CATEGORIES:
        assert counts[c] / 10_000 == pytest.approx(1 / 3, abs=0.02)


def test_artefact_is_independent_of_the_segment(bank):
    seg = np.sin(np.linspace(0, 20, L))
    seg = seg / np.max(np.abs(seg))
    for seed in (0, 1, 2, 3):
        with_seg = augment(seg, bank, seed) - seg
        on_zero = augment(np.zeros(L), bank, seed)
        np.testing.assert_allclose(with_seg, on_zero, atol=1e-12)


def test_powerline_energy_concentrates_at_its_bin(bank):
    art = compose_artefact(L, None, 0.0, None, 0.0, 0.4, 0.77)
    spectrum = np.abs(np.fft.rfft(art)) ** 2
    bin_60 = int(round(POWERLINE_FREQ * L / 250.0))
    window = spectrum[bin_60 - 1 : bin_60 + 2].sum()
    assert window / spectrum.sum() > 0.95


def test_deterministic_per_seed(bank):
    seg = np.zeros(L)
    np.testing.assert_array_equal(augment(seg, bank, 42), augment(seg, bank, 42))
    assert not np.array_equal(augment(seg, bank, 42), augment(seg, bank, 43))


def test_unnormalized_segment_rejected(bank):
    with pytest.raises(ConfigError):
        augment(np.full(L, 2.0), bank, 0)


def test_short_record_rejected():
    bank = ArtefactBank(bw=np.zeros(L - 1), ma=np.zeros(2 * L))
    with pytest.raises(ConfigError):
        bank.validate(L)


def test_wrong_sampling_rate_rejected(tmp_path):
    write_array(tmp_path / "bw.f32", np.zeros(2 * L), sampling_rate=360.0)
    write_array(tmp_path / "ma.f32", np.zeros(2 * L), sampling_rate=360.0)
    bank = load_bank(tmp_path)
    with pytest.raises(ConfigError):
        bank.validate(L)


def test_missing_record_rejected(tmp_path):
    write_array(tmp_path / "bw.f32", np.zeros(2 * L), sampling_rate=250.0)
    with pytest.raises(ConfigError):
        load_bank(tmp_path)


def test_csv_bank_loads(tmp_path):
    write_vector(tmp_path / "bw.csv", np.ones(2 * L) * 0.1)
    write_vector(tmp_path / "ma.csv", np.ones(2 * L) * 0.2)
    bank = load_bank(tmp_path)
    bank.validate(L)
    assert bank.sampling_rate == 250.0
    out = augment(np.zeros(L), bank, 5)
    assert out.shape == (L,)
