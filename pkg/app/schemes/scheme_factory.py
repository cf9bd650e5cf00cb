"""Factory to create the time discretization for a scheme id"""
from typing import List, Optional
import logging

from app.cq.multistep_cq import get_delta
from app.cq.rk_cq import get_tableau
from app.exceptions import InvalidArgumentError
from app.models.scheme import SchemeId, SchemeInfo
from app.schemes.base_scheme import BaseScheme
from app.schemes.multistep_scheme import MultistepScheme
from app.schemes.runge_kutta_scheme import RungeKuttaScheme

logger = logging.getLogger(__name__)

RUNGE_KUTTA_IDS = {SchemeId.RADAU3, SchemeId.LOBATTO4}


class SchemeFactory:
    """Factory for creating schemes from their ids"""

    @staticmethod
    def get_scheme(scheme_id, eps: Optional[float] = None, oversampling: Optional[int] = None) -> BaseScheme:
        """
        Get the scheme for an id.

        Args:
            scheme_id: be | bdf2 | tr | bdf3..bdf6 | radau3 | lobatto4
            eps: Contour accuracy parameter
            oversampling: Contour nodes per step

        Returns:
            Scheme instance

        Raises:
            InvalidArgumentError: If the id is unknown
        """
        try:
            scheme_id = SchemeId(scheme_id)
        except ValueError:
            raise InvalidArgumentError(
                f"unknown scheme {scheme_id!r}; expected one of {[s.value for s in SchemeId]}"
            )

        logger.debug(f"Creating scheme {scheme_id.value}")
        if scheme_id in RUNGE_KUTTA_IDS:
            return RungeKuttaScheme(get_tableau(scheme_id.value), eps, oversampling)
        return MultistepScheme(get_delta(scheme_id.value), eps, oversampling)

    @staticmethod
    def available() -> List[SchemeInfo]:
        """Descriptions of every scheme"""
        return [SchemeFactory.get_scheme(scheme_id).info() for scheme_id in SchemeId]
