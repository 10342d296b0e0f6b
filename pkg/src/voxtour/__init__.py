"""Conversational scene orchestration for multiscale molecular tours."""

__version__ = "0.1.0"
