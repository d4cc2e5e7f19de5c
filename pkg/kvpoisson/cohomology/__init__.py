"""Chevalley-Eilenberg and Koszul-Vinberg cochain complexes."""
