"""Tests for the symbol library and the symbol registry"""
import numpy as np
import pytest

from app.cq import symbols
from app.exceptions import InvalidArgumentError, SingularSymbolError
from app.models.run_config import SymbolId, SymbolSpec
from app.services.symbol_registry import build_symbol

POINTS = [1.0, 0.5 + 2.0j, 3.0 - 1.0j, 0.01 + 10.0j]


class TestClosedForms:
    def test_resolvent(self):
        f = symbols.resolvent(-1.0)
        for s in POINTS:
            assert f.scalar(s) == pytest.approx(1.0 / (s + 1.0), rel=1e-15)
        assert f.conjugate_symmetric

    def test_resolvent_at_its_pole(self):
        f = symbols.resolvent(0.5)
        with pytest.raises(SingularSymbolError) as exc:
            f(0.5)
        assert exc.value.s == 0.5

    def test_complex_resolvent_is_not_conjugate_symmetric(self):
        assert not symbols.resolvent(-1.0 + 2.0j).conjugate_symmetric

    def test_oscillator(self):
        f = symbols.oscillator(2.0)
        for s in POINTS:
            assert f.scalar(s) == pytest.approx(1.0 / (s * s + 4.0), rel=1e-14)

    def test_oscillator_rejects_non_positive_frequency(self):
        with pytest.raises(InvalidArgumentError):
            symbols.oscillator(0.0)

    def test_power_uses_principal_branch(self):
        f = symbols.power(0.5)
        value = f.scalar(1j)
        assert value == pytest.approx(np.exp(1j * np.pi / 4), rel=1e-14)

    def test_delay(self):
        f = symbols.delay(0.3)
        assert f.scalar(2.0 + 1.0j) == pytest.approx(np.exp(-(2.0 + 1.0j) * 0.3), rel=1e-14)
        with pytest.raises(InvalidArgumentError):
            symbols.delay(-1.0)

    def test_identity_and_constant(self):
        np.testing.assert_array_equal(symbols.identity(3)(1.0 + 1.0j), np.eye(3))
        f = symbols.constant([[1.0, 2.0], [3.0, 4.0]])
        assert f.dims == (2, 2)
        assert f.conjugate_symmetric

    @pytest.mark.parametrize("f", [
        symbols.resolvent(-2.0),
        symbols.oscillator(1.0),
        symbols.power(-0.5),
        symbols.delay(1.0),
    ], ids=["resolvent", "oscillator", "abel", "delay"])
    def test_conjugate_symmetry_holds(self, f):
        for s in POINTS:
            np.testing.assert_allclose(f(np.conj(s)), np.conj(f(s)), rtol=1e-14)


class TestSymbolWrapper:
    def test_scalar_results_become_1x1(self):
        f = symbols.Symbol(lambda s: 2 * s)
        assert f(1.5).shape == (1, 1)

    def test_wrong_shape_is_rejected(self):
        f = symbols.Symbol(lambda s: np.ones(3), dims=(1, 1), name="bad")
        with pytest.raises(InvalidArgumentError):
            f(1.0)

    def test_invalid_dims(self):
        with pytest.raises(InvalidArgumentError):
            symbols.Symbol(lambda s: s, dims=(0, 1))

    def test_evaluate_many_keeps_order(self):
        f = symbols.resolvent(-1.0)
        values = f.evaluate_many(POINTS, max_workers=4)
        assert values.shape == (len(POINTS), 1, 1)
        for value, s in zip(values, POINTS):
            assert value[0, 0] == pytest.approx(1.0 / (s + 1.0))

    def test_evaluate_many_empty(self):
        assert symbols.identity(2).evaluate_many([]).shape == (0, 2, 2)


class TestCombinators:
    def test_compose_multiplies_pointwise(self):
        f = symbols.compose(symbols.power(0.5), symbols.power(0.5))
        for s in POINTS:
            assert f.scalar(s) == pytest.approx(s, rel=1e-14)
        assert f.bound.mu == pytest.approx(1.0)

    def test_compose_dimension_mismatch(self):
        with pytest.raises(InvalidArgumentError):
            symbols.compose(symbols.identity(2), symbols.identity(3))

    def test_scalar_symbol_is_not_broadcast(self):
        with pytest.raises(InvalidArgumentError):
            symbols.compose(symbols.constant([[1.0, 2.0], [0.0, 3.0]]), symbols.resolvent(-1.0))

    def test_inverse(self):
        f = symbols.inverse(symbols.resolvent(-1.0))
        assert f.scalar(2.0) == pytest.approx(3.0)

    def test_inverse_of_singular_matrix(self):
        f = symbols.inverse(symbols.constant([[1.0, 1.0], [1.0, 1.0]]))
        with pytest.raises(SingularSymbolError):
            f(1.0)

    def test_inverse_needs_square(self):
        with pytest.raises(InvalidArgumentError):
            symbols.inverse(symbols.constant([[1.0, 2.0]]))

    def test_scaled_argument(self):
        f = symbols.scaled_argument(symbols.resolvent(-1.0), 2.0)
        assert f.scalar(4.0) == pytest.approx(1.0 / 3.0)
        with pytest.raises(InvalidArgumentError):
            symbols.scaled_argument(f, 0.0)


class TestRegistry:
    def test_parse_and_build(self):
        spec = SymbolSpec.parse("resolvent:c=-1")
        assert spec.kind == SymbolId.RESOLVENT
        assert spec.label() == "resolvent:c=-1"
        assert build_symbol(spec).scalar(1.0) == pytest.approx(0.5)

    @pytest.mark.parametrize("text,s,expected", [
        ("oscillator:c=1", 2.0, 0.2),
        ("power:alpha=2", 3.0, 9.0),
        ("abel", 4.0, 0.5),
        ("antiderivative", 4.0, 0.25),
        ("identity", 7.0, 1.0),
    ])
    def test_library_entries(self, text, s, expected):
        assert build_symbol(SymbolSpec.parse(text)).scalar(s) == pytest.approx(expected)

    def test_unknown_parameter(self):
        with pytest.raises(InvalidArgumentError):
            build_symbol(SymbolSpec.parse("oscillator:c=1,q=2"))

    def test_malformed_parameter(self):
        with pytest.raises(ValueError):
            SymbolSpec.parse("oscillator:c")

    def test_unknown_symbol(self):
        with pytest.raises(ValueError):
            SymbolSpec.parse("laplace")
