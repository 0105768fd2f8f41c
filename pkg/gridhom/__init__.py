"""Combinatorial grid homology engine."""
