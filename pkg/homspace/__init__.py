"""Hom(G; H): homomorphism trees, probe sets, the bounded sup metric and its laws."""
