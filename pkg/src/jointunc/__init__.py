"""Entropic and majorization uncertainty for a noisy joint qubit measurement."""

__version__ = "0.1.0"
