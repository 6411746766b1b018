"""
Data models for the L2-Alexander torsion toolkit.
"""
