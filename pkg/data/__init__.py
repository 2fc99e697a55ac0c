"""
Packaged run configurations (data/configs/*.json).

The CLI resolves a bare --config name such as ``example61-top`` against this
directory; see core.run_config for the schema.
"""
