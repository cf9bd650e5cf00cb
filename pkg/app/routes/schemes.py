"""Scheme catalogue API endpoints"""
from fastapi import APIRouter, HTTPException
import logging

from app.schemes.scheme_factory import SchemeFactory

logger = logging.getLogger(__name__)
router = APIRouter(prefix="/api/schemes", tags=["schemes"])


@router.get("")
async def list_schemes():
    """List every time discretization with its kind, order and A-stability"""
    try:
        schemes = [info.model_dump(mode="json") for info in SchemeFactory.available()]
        return {"schemes": schemes, "total": len(schemes)}
    except Exception as e:
        logger.error(f"Error listing schemes: {e}")
        raise HTTPException(status_code=500, detail=str(e))
