"""Tests for the scheme interface and factory"""
import numpy as np
import pytest

from app.cq import symbols
from app.cq.multistep_cq import contour_radius
from app.exceptions import InvalidArgumentError
from app.models.scheme import SchemeId, SchemeKind, SolveMethod
from app.schemes.multistep_scheme import MultistepScheme
from app.schemes.runge_kutta_scheme import RungeKuttaScheme
from app.schemes.scheme_factory import SchemeFactory


def rel_err(a, b):
    return np.max(np.abs(a - b)) / np.max(np.abs(b))


class TestFactory:
    def test_dispatch(self):
        assert isinstance(SchemeFactory.get_scheme("bdf2"), MultistepScheme)
        assert isinstance(SchemeFactory.get_scheme(SchemeId.RADAU3), RungeKuttaScheme)

    @pytest.mark.parametrize("scheme_id", ["be", "radau3"])
    def test_oversampling_reaches_the_engine(self, scheme_id):
        scheme = SchemeFactory.get_scheme(scheme_id, oversampling=3)
        assert scheme.oversampling == 3
        table = scheme.weights(symbols.resolvent(-1.0), 0.1, 15)
        assert table.radius == pytest.approx(contour_radius(15, table.eps, 3), rel=1e-14)

    def test_unknown_scheme(self):
        with pytest.raises(InvalidArgumentError):
            SchemeFactory.get_scheme("gauss")

    def test_catalogue(self):
        infos = {info.id: info for info in SchemeFactory.available()}
        assert len(infos) == len(SchemeId)
        assert infos[SchemeId.BE].order == 1
        assert infos[SchemeId.TR].a_stable
        assert not infos[SchemeId.BDF4].a_stable
        assert infos[SchemeId.RADAU3].kind == SchemeKind.RUNGE_KUTTA
        assert infos[SchemeId.RADAU3].stages == 2
        assert infos[SchemeId.LOBATTO4].stage_order == 2
        assert infos[SchemeId.BDF2].stage_order is None

    def test_eps_is_passed_through(self):
        scheme = SchemeFactory.get_scheme("be", eps=1e-10)
        table = scheme.weights(symbols.identity(1), 0.1, 8)
        assert table.eps == 1e-10


class TestMultistepScheme:
    def test_grids(self):
        scheme = SchemeFactory.get_scheme("bdf2")
        np.testing.assert_allclose(scheme.sample_times(0.5, 3), [0.0, 0.5, 1.0, 1.5])
        np.testing.assert_allclose(scheme.step_times(0.5, 3), scheme.sample_times(0.5, 3))

    def test_paths_agree(self, hump):
        scheme = SchemeFactory.get_scheme("bdf2")
        f = symbols.resolvent(-1.0)
        samples = scheme.sample(hump, 0.1, 63)
        fast = scheme.forward(f, 0.1, samples, SolveMethod.ALL_STEPS)
        marching = scheme.forward(f, 0.1, samples, SolveMethod.MOT)
        assert rel_err(fast, marching) <= 1e-7
        for method in SolveMethod:
            back = scheme.solve(f, 0.1, marching, method=method, block=8)
            assert rel_err(back, samples) <= 1e-6

    def test_forward_has_no_look_ahead(self):
        scheme = SchemeFactory.get_scheme("be")
        with pytest.raises(InvalidArgumentError):
            scheme.forward(symbols.identity(1), 0.1, np.ones(5), SolveMethod.LOOK_AHEAD)


class TestRungeKuttaScheme:
    def test_grids(self):
        scheme = SchemeFactory.get_scheme("radau3")
        assert scheme.sample_times(0.3, 4).shape == (5, 2)
        np.testing.assert_allclose(scheme.step_times(0.5, 2), [0.5, 1.0, 1.5])

    def test_paths_agree(self, hump):
        scheme = SchemeFactory.get_scheme("lobatto4")
        f = symbols.oscillator(1.0)
        samples = scheme.sample(hump, 0.1, 40)
        fast = scheme.forward(f, 0.1, samples, SolveMethod.ALL_STEPS)
        marching = scheme.forward(f, 0.1, samples, SolveMethod.MOT)
        assert fast.shape == marching.shape == (41, 3)
        assert rel_err(fast, marching) <= 1e-6

    def test_vector_samples_keep_their_layout(self, rng, diagonal_resolvent):
        scheme = SchemeFactory.get_scheme("radau3")
        f = symbols.compose(symbols.identity(2), diagonal_resolvent)
        samples = rng.standard_normal((11, 2, 2))
        marching = scheme.forward(f, 0.2, samples, SolveMethod.MOT)
        fast = scheme.forward(f, 0.2, samples, SolveMethod.ALL_STEPS)
        assert marching.shape == (11, 2, 2)
        assert rel_err(fast, marching) <= 1e-6
        back = scheme.solve(f, 0.2, marching, method=SolveMethod.MOT)
        assert rel_err(back, samples) <= 1e-10

    def test_step_values_are_last_stage(self, hump):
        scheme = SchemeFactory.get_scheme("radau3")
        stages = scheme.forward(symbols.identity(1), 0.1, scheme.sample(hump, 0.1, 9))
        np.testing.assert_allclose(scheme.step_values(stages), hump(0.1 * np.arange(1, 11)), atol=1e-7)

    def test_no_look_ahead_for_equations(self):
        scheme = SchemeFactory.get_scheme("radau3")
        with pytest.raises(InvalidArgumentError):
            scheme.solve(symbols.identity(1), 0.1, np.ones((5, 2)), method=SolveMethod.LOOK_AHEAD)
