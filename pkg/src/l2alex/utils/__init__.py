"""
Utility modules for the L2-Alexander torsion toolkit.
"""
