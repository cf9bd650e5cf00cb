"""Convolution weight API endpoints"""
from typing import Optional

from fastapi import APIRouter, HTTPException
from pydantic import BaseModel, Field
import logging

from app.exceptions import CQError
from app.models.run_config import RunConfig, SymbolSpec
from app.models.scheme import SchemeId
from app.services.weights_service import weights_payload

logger = logging.getLogger(__name__)
router = APIRouter(prefix="/api/weights", tags=["weights"])

MAX_API_STEPS = 4096


class WeightsRequest(BaseModel):
    """Schema for a weight computation"""
    scheme: SchemeId = SchemeId.BDF2
    symbol: str = Field("resolvent:c=-1", description="name:key=value,... symbol description")
    kappa: float = Field(0.1, gt=0)
    steps: int = Field(32, ge=1, le=MAX_API_STEPS)
    eps: Optional[float] = Field(None, gt=0, lt=1)
    oversampling: Optional[int] = Field(None, ge=1, le=8)


@router.post("")
def compute_weights(request: WeightsRequest):
    """Compute CQ weights ω_0..ω_N (block weights for Runge-Kutta schemes)"""
    try:
        cfg = RunConfig(
            scheme=request.scheme,
            symbol=SymbolSpec.parse(request.symbol),
            kappa=request.kappa,
            steps=request.steps,
            eps=request.eps,
            oversampling=request.oversampling,
        )
        return weights_payload(cfg)

    except CQError as e:
        logger.error(f"Weight computation rejected: {e}")
        raise HTTPException(status_code=400, detail=f"{e.category}: {e}")
    except ValueError as e:
        logger.error(f"Invalid weight request: {e}")
        raise HTTPException(status_code=400, detail=f"invalid-argument: {e}")
    except Exception as e:
        logger.error(f"Error computing weights: {e}")
        raise HTTPException(status_code=500, detail=str(e))
