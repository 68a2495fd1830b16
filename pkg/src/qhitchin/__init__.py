"""Multiplicative Hitchin sections, q-characters and Sklyanin geometry in exact arithmetic."""
