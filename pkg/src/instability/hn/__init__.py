"""Harder-Narasimhan calculus on finite subobject lattices."""
