"""Exact quantum-logic toolkit."""
