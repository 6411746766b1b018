"""
L2-Alexander torsion toolkit.

This package computes L2-Alexander torsion functions of knots and finitely presented
3-manifold groups for abelian coefficient systems, where the Fuglede-Kadison determinant
reduces to Mahler measures.
"""

__version__ = "0.1.0"
