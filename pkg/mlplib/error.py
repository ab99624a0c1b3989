"""
Application-defined exceptions.

This file is part of mlp.
"""

class MlpError(Exception):
    pass


class ConfigError(MlpError):
    """Bad settings file or command line value."""


class ParamError(MlpError):
    """Ranking parameters violating their constraints."""


class CorpusError(MlpError):
    """Input corpus that cannot be read at all."""


class GoldFormatError(MlpError):
    """Gold standard file not respecting its schema."""
