"""Verification toolkit for GHZ-type nonlocal games and the communication
complexity tasks built on them."""

__version__ = "0.1.0"
