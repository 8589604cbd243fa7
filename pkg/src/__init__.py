"""Möbius gyrovector geometry and Menelaus-type identity verification."""

__version__ = "1.0.0"
