"""
Evaluation harness for reproduced values.

This module provides tools for:
- Verifying reproduction tables against their closed forms
- Per-quantity deviation summaries
"""

from eval.reproduction_reports import summarize_reproduction, verify_reproduction

__all__ = [
    'summarize_reproduction',
    'verify_reproduction',
]
