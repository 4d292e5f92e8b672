"""Shared exception types."""


class ConfigError(ValueError):
    """A configuration file or scenario parameter is invalid.

    The message names the offending key or field so command-line users can
    fix the file without reading a traceback.
    """
