"""Special functions"""
from app.special.bessel_k import evaluate_k0_k1, k0, k1

__all__ = ["evaluate_k0_k1", "k0", "k1"]
