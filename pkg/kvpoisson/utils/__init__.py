"""Utility functions for the KV-Poisson workbench."""
