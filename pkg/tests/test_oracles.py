"""Tests for reference convolutions and data signals"""
import numpy as np
import pytest

from app.exceptions import OracleFailureError
from app.models.run_config import SignalId, SymbolSpec
from app.oracles.convolution_oracle import has_oracle, oracle_convolution
from app.oracles.signals import make_signal, monomial, t5exp, zero

TIMES = np.array([0.0, 0.25, 1.0, 2.0, 3.5])
STEP = monomial(power=0)


class TestSignals:
    def test_t5exp_is_causal(self):
        g = t5exp(rate=2.0, amplitude=3.0)
        np.testing.assert_array_equal(g(np.array([-1.0, 0.0])), [0.0, 0.0])
        assert g(np.array(1.5)) == pytest.approx(3.0 * 1.5 ** 5 * np.exp(-3.0))

    def test_heaviside(self):
        np.testing.assert_array_equal(STEP(np.array([-0.1, 0.0, 2.0])), [0.0, 1.0, 1.0])

    def test_zero_keeps_shape(self):
        assert zero()(np.ones((3, 2))).shape == (3, 2)

    def test_factory(self):
        g = make_signal(SignalId.MONOMIAL, power=2, amplitude=0.5)
        assert g(np.array(2.0)) == pytest.approx(2.0)
        assert make_signal("zero")(np.array(1.0)) == 0.0


class TestOracle:
    @pytest.mark.parametrize("text,expected", [
        ("resolvent:c=-1", lambda t: 1.0 - np.exp(-t)),
        ("oscillator:c=2", lambda t: (1.0 - np.cos(2.0 * t)) / 4.0),
        ("antiderivative", lambda t: t),
        ("power:alpha=-1", lambda t: t),
        ("abel", lambda t: 2.0 * np.sqrt(t / np.pi)),
        ("power:alpha=-0.5", lambda t: 2.0 * np.sqrt(t / np.pi)),
    ])
    def test_heaviside_response(self, text, expected):
        values = oracle_convolution(SymbolSpec.parse(text), STEP, TIMES)
        np.testing.assert_allclose(values, expected(TIMES), rtol=1e-10, atol=1e-14)

    def test_antiderivative_of_ramp(self):
        values = oracle_convolution(SymbolSpec.parse("antiderivative"), monomial(power=1), TIMES)
        np.testing.assert_allclose(values, TIMES ** 2 / 2, rtol=1e-10)

    def test_delay_and_identity(self, hump):
        delayed = oracle_convolution(SymbolSpec.parse("delay:t0=0.5"), hump, TIMES)
        np.testing.assert_allclose(delayed, hump(TIMES - 0.5))
        np.testing.assert_allclose(oracle_convolution(SymbolSpec.parse("identity"), hump, TIMES), hump(TIMES))

    def test_value_at_origin_is_zero(self, hump):
        assert oracle_convolution(SymbolSpec.parse("oscillator:c=1"), hump, [0.0])[0] == 0.0

    def test_unregistered_kernel(self, hump):
        spec = SymbolSpec.parse("power:alpha=2")
        assert not has_oracle(spec)
        with pytest.raises(OracleFailureError):
            oracle_convolution(spec, hump, TIMES)

    def test_registry(self):
        for text in ("resolvent:c=-1", "oscillator:c=1", "abel", "antiderivative", "delay:t0=1", "identity"):
            assert has_oracle(SymbolSpec.parse(text))
