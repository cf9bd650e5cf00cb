"""Time discretizations behind a common interface"""
from app.schemes.base_scheme import BaseScheme
from app.schemes.scheme_factory import SchemeFactory

__all__ = ["BaseScheme", "SchemeFactory"]
