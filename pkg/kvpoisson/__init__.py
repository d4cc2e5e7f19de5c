"""KV-Poisson workbench - exact audits, cohomology and classification of small bilinear algebras."""

__version__ = '0.1.0'
