"""Exact linear algebra, structure-constant algebras and their classification."""
