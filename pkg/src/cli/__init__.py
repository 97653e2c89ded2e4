"""
Command-line surface for vopkit
gen | check | classical
"""

__all__ = []
