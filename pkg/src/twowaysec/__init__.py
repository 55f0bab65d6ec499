"""Secrecy rate regions for two-way wiretap channels."""

__version__ = "0.1.0"
