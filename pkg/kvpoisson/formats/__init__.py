"""Algebra input files and run reports."""
