"""Set comparison and finite-depth verification."""

from .hausdorff import hausdorff, set_match

__all__ = ["hausdorff", "set_match"]
