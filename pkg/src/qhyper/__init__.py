"""Exact p-adic quantum algebra kernel for U_q(sl2), its double and SL_q(2)."""

from .scalars import QParams

__version__ = "0.1.0"
__all__ = ["QParams"]
