"""Bidirectional English-emoji translation toolkit."""

__version__ = "0.1.0"
