"""Exact verification of truncated q-hypergeometric supercongruences."""

__version__ = "0.1.0"
