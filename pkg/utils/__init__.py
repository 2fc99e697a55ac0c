"""
Utility modules for seqentropy.

Contains:
- numbers: exact/float number handling and output formatting
- parallel: ordered row-level worker pool
"""

from .numbers import parse_number, format_number, mod1
from .parallel import ordered_map

__all__ = ['parse_number', 'format_number', 'mod1', 'ordered_map']
