"""Convergence study API endpoints"""
from fastapi import APIRouter, HTTPException
import logging

from app.exceptions import CQError
from app.models.report import ConvergenceReport
from app.models.run_config import RunConfig
from app.services.convergence_service import run_convergence

logger = logging.getLogger(__name__)
router = APIRouter(prefix="/api/convergence", tags=["convergence"])


@router.post("", response_model=ConvergenceReport)
def convergence_study(cfg: RunConfig):
    """Run a κ-halving study against the reference convolution"""
    try:
        return run_convergence(cfg, write_csv=False)

    except CQError as e:
        logger.error(f"Convergence study rejected: {e}")
        raise HTTPException(status_code=400, detail=f"{e.category}: {e}")
    except Exception as e:
        logger.error(f"Error running convergence study: {e}")
        raise HTTPException(status_code=500, detail=str(e))
