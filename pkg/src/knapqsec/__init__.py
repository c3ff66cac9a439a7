"""Knapsack problems over Z_r under a simulated quantum attack, Chor-Rivest, and parameter audits."""

__version__ = "0.1.0"
