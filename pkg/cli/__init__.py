"""
CLI module for seqentropy.

Provides the `seqent` command-line interface (python -m cli.seqent).
"""
