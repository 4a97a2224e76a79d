"""Contradiction analysis for Gherkin-style high-level requirements."""

__version__ = "0.1.0"
