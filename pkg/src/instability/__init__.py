"""Exact instability computations: fans, numerical invariants, Kempf optima, stratifications, HN filtrations."""
