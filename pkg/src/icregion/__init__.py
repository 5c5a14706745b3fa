"""Exact inner and outer rate-region bounds for multi-sender index coding."""
__version__ = "0.1.0"
