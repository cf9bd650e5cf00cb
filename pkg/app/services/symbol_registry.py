"""Build library symbols from run configuration ids"""
import logging

from app.cq import symbols
from app.cq.symbols import Symbol
from app.exceptions import InvalidArgumentError
from app.models.run_config import SymbolId, SymbolSpec

logger = logging.getLogger(__name__)


def build_symbol(spec: SymbolSpec) -> Symbol:
    """
    Instantiate the symbol described by ``spec``.

    Raises:
        InvalidArgumentError: Unknown parameters for the symbol
    """
    params = dict(spec.params)

    def take(name: str, default: float) -> float:
        return float(params.pop(name, default))

    kind = spec.kind
    if kind == SymbolId.RESOLVENT:
        symbol = symbols.resolvent(take("c", 0.0))
    elif kind == SymbolId.OSCILLATOR:
        symbol = symbols.oscillator(take("c", 1.0))
    elif kind == SymbolId.POWER:
        symbol = symbols.power(take("alpha", 1.0))
    elif kind == SymbolId.ABEL:
        symbol = symbols.power(-0.5)
    elif kind == SymbolId.ANTIDERIVATIVE:
        symbol = symbols.power(-1.0)
    elif kind == SymbolId.DELAY:
        symbol = symbols.delay(take("t0", 0.0))
    else:
        symbol = symbols.identity(int(take("d", 1)))

    if params:
        raise InvalidArgumentError(f"unknown parameters {sorted(params)} for symbol {kind.value}")
    logger.debug(f"Built symbol {symbol.name} from {spec.label()}")
    return symbol
