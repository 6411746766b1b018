"""
Service modules: group rings, Fox calculus, Laurent polynomials, Mahler measures,
torsion functions and the end-to-end pipelines.
"""
