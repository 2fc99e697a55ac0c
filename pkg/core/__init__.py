"""
Core modules for seqentropy.

Contains:
- orchestrator: Run dispatcher behind the CLI commands
- run_config: JSON run config loading and validation
- models: Result data models
- errors: Custom exceptions
"""

# Import only what's needed to avoid circular imports
from . import models
from . import errors

# Users should import directly: from core.orchestrator import Orchestrator

__all__ = ['models', 'errors']
