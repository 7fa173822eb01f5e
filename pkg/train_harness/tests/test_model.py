import numpy as np
import pytest

from rpeak_harness.model import build_model


@pytest.fixture(scope="module")
def model(tf):
    tf.keras.utils.set_random_seed(0)
    return build_model()


def test_output_matches_input_length(model):
    x = np.zeros((2, 1000, 1), dtype=np.float32)
    y = model.predict(x, verbose=0)
    assert y.shape == (2, 1000, 1)


def test_untrained_outputs_are_probabilities(model):
    rng = np.random.default_rng(0)
    x = rng.uniform(-1, 1, (3, 1000, 1)).astype(np.float32)
    y = model.predict(x, verbose=0)
    assert np.all(y > 0.0) and np.all(y < 1.0)


def test_bce_vanishes_for_confident_correct_outputs(model, tf):
    y_true = tf.zeros((1, 1000, 1))
    y_pred = tf.fill((1, 1000, 1), 1e-6)
    loss = float(tf.keras.losses.binary_crossentropy(y_true, y_pred).numpy().mean())
    assert loss == pytest.approx(0.0, abs=1e-5)


def test_parameter_count_is_logged_scale(model):
    # two stacked 64-unit bidirectional layers plus the sigmoid head
    assert 100_000 < model.count_params() < 200_000
