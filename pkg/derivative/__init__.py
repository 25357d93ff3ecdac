"""Carathéodory differentiability: slope functions, their checks, combinators and worked cases."""
