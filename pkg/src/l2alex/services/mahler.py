import logging
import math
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from typing import List, Sequence

import numpy as np

from ..models.reports import MahlerValue
from .laurent import LaurentMatrix, LaurentPoly, det, kappa_scale, one_var_roots

logger = logging.getLogger(__name__)

UNDERFLOW = 1e-300
SKIP_FRACTION = 1e-3
CHUNK_POINTS = 1 << 16


def _exact_value(value) -> MahlerValue:
    return MahlerValue(value=float(value), err=0.0, method="jensen")


def mahler_binomial(p: LaurentPoly):
    """
    Exact m(a z^j + b z^k) = max(|a|, |b|) for one-variable binomials (and |c| for monomials).

    Returns None for anything with more than two terms.
    """
    if p.nvars > 1 or len(p.terms) > 2:
        return None
    return max(abs(c) for c in p.terms.values())


def mahler_jensen(p: LaurentPoly, root_tol: float = 1e-12) -> MahlerValue:
    """
    Mahler measure of a one-variable Laurent polynomial via Jensen's formula.

    m(p) = |C| * prod max(1, |a_i|), with the error bound propagated from the certified
    root radii. Monomials and binomials are evaluated exactly. m(0) = 0.
    """
    if p.nvars > 1:
        raise ValueError(f"mahler_jensen needs one variable, got {p.nvars}")
    if p.is_zero():
        return MahlerValue(value=0.0, err=0.0, method="jensen", note="zero polynomial")
    exact = mahler_binomial(p)
    if exact is not None:
        return _exact_value(exact)

    roots = one_var_roots(p, root_tol)
    log_value = math.log(roots.leading_abs)
    rel_err = 0.0
    for modulus, mult, err in zip(roots.moduli, roots.multiplicities, roots.errors):
        if modulus > 1:
            log_value += mult * math.log(modulus)
        if err:
            rel_err += mult * math.log1p(err / max(1.0, modulus - err))

    if roots.product_exact is not None and roots.moduli:
        product = sum(m * math.log(r) for r, m in zip(roots.moduli, roots.multiplicities))
        expected = math.log(float(Fraction(roots.product_exact)))
        if abs(product - expected) > 1e-9 * max(1.0, abs(expected)):
            logger.warning(f"Root moduli product deviates from the exact value: "
                           f"log {product:.12f} vs {expected:.12f}")

    value = math.exp(log_value)
    return MahlerValue(value=value, err=value * math.expm1(rel_err), method="jensen")


def _grid(n: int) -> np.ndarray:
    return 2.0 * np.pi * (np.arange(n) + 0.5) / n


def _chunk_log_sum(p: LaurentPoly, n: int, start: int, stop: int):
    """Sum of log|p| over flat grid indices [start, stop) of the n^k grid; returns (sum, skipped)."""
    k = p.nvars
    flat = np.arange(start, stop)
    theta = _grid(n)
    angles = np.empty((flat.size, k))
    rest = flat
    for dim in range(k - 1, -1, -1):
        angles[:, dim] = theta[rest % n]
        rest = rest // n
    values = np.abs(p.evaluate_on_torus(angles))
    keep = values >= UNDERFLOW
    return float(np.sum(np.log(values[keep]))), int(flat.size - np.count_nonzero(keep))


def _pairwise(values: List[float]) -> float:
    while len(values) > 1:
        paired = [values[i] + values[i + 1] for i in range(0, len(values) - 1, 2)]
        if len(values) % 2:
            paired.append(values[-1])
        values = paired
    return values[0] if values else 0.0


def _log_mean(p: LaurentPoly, n: int, workers: int):
    total = n ** p.nvars
    bounds = [(s, min(s + CHUNK_POINTS, total)) for s in range(0, total, CHUNK_POINTS)]
    if workers > 1 and len(bounds) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(lambda b: _chunk_log_sum(p, n, *b), bounds))
    else:
        parts = [_chunk_log_sum(p, n, *b) for b in bounds]
    skipped = sum(s for _, s in parts)
    counted = total - skipped
    if counted == 0:
        return float("-inf"), skipped, total
    return _pairwise([s for s, _ in parts]) / counted, skipped, total


def mahler_quadrature(p: LaurentPoly, points_per_dim: int = 1024, workers: int = 1) -> MahlerValue:
    """
    Mahler measure by the trapezoidal rule on the k-torus.

    Args:
        p: Nonzero Laurent polynomial
        points_per_dim: Grid size per torus dimension, a power of two
        workers: Threads for chunk evaluation; the reduction order does not depend on it

    Returns:
        MahlerValue whose err is the Richardson-style difference between the N and N/2 grids
    """
    if points_per_dim < 2 or points_per_dim & (points_per_dim - 1):
        raise ValueError(f"points_per_dim must be a power of two >= 2, got {points_per_dim}")
    if p.is_zero():
        return MahlerValue(value=0.0, err=0.0, method="quadrature", note="zero polynomial")
    if p.is_monomial():
        return MahlerValue(value=float(abs(next(iter(p.terms.values())))), err=0.0, method="quadrature")

    fine, skipped, total = _log_mean(p, points_per_dim, workers)
    coarse, _, _ = _log_mean(p, points_per_dim // 2, workers)
    value = math.exp(fine) if fine != float("-inf") else 0.0
    coarse_value = math.exp(coarse) if coarse != float("-inf") else 0.0
    low_confidence = skipped > SKIP_FRACTION * total
    if skipped:
        logger.debug(f"Quadrature skipped {skipped} of {total} points")
    if low_confidence:
        logger.warning(f"Low-confidence quadrature: {skipped} of {total} grid points underflowed")
    return MahlerValue(
        value=value,
        err=abs(value - coarse_value),
        method="quadrature",
        skipped=skipped,
        low_confidence=low_confidence,
        note="err is a grid-comparison heuristic",
    )


def drop_constant_variables(p: LaurentPoly) -> LaurentPoly:
    """Remove variables whose exponent is the same on every term; m(p) does not change."""
    varying = [i for i in range(p.nvars) if len({e[i] for e in p.terms}) > 1]
    if len(varying) == p.nvars:
        return p
    return LaurentPoly(len(varying), {tuple(e[i] for i in varying): c for e, c in p.terms.items()})


def mahler(p: LaurentPoly, points_per_dim: int = 1024, root_tol: float = 1e-12, workers: int = 1) -> MahlerValue:
    """Jensen when at most one variable actually occurs, quadrature otherwise."""
    p = drop_constant_variables(p)
    if p.nvars <= 1:
        if p.nvars == 0:
            return _exact_value(abs(p.terms.get((), 0)))
        return mahler_jensen(p, root_tol)
    return mahler_quadrature(p, points_per_dim, workers)


def fk_det_abelian(m: LaurentMatrix, psi: Sequence[int], t, points_per_dim: int = 1024,
                   root_tol: float = 1e-12, workers: int = 1) -> MahlerValue:
    """
    Regular Fuglede-Kadison determinant m(det(kappa(M, psi, t))) over a free abelian group.

    The determinant is taken symbolically first; a vanishing determinant gives 0.
    """
    if not m.is_square():
        raise ValueError(f"fk_det_abelian needs a square matrix, got {m.rows}x{m.cols}")
    d = det(m)
    if d.is_zero():
        return MahlerValue(value=0.0, err=0.0, method="jensen", note="determinant vanishes")
    return mahler(kappa_scale(d, psi, t), points_per_dim, root_tol, workers)


def induce_index_d(p: LaurentPoly, d: int) -> LaurentMatrix:
    """
    Matrix of multiplication by p on Z[z^{+-1}] as a free module of rank d over Z[w^{+-1}], w = z^d.

    Basis 1, z, ..., z^(d-1); column j holds the coordinates of p * z^j.
    """
    if d < 2:
        raise ValueError(f"Index must be at least 2, got {d}")
    if p.nvars != 1:
        raise ValueError("induce_index_d is defined for one-variable polynomials")
    cells = [[dict() for _ in range(d)] for _ in range(d)]
    for (e,), c in p.terms.items():
        for j in range(d):
            q, r = divmod(e + j, d)
            cells[r][j][(q,)] = cells[r][j].get((q,), 0) + c
    return LaurentMatrix([[LaurentPoly(1, cell) for cell in row] for row in cells], 1, cols=d)


def det22(t) -> MahlerValue:
    """m(det [[1, -t z], [1, -1]]) = max(1, t)."""
    z = LaurentPoly.monomial((1,))
    one = LaurentPoly.constant(1)
    m = LaurentMatrix([[one, -z], [one, -one]], 1)
    return fk_det_abelian(m, (1,), t)
