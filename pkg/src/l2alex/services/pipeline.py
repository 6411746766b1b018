import logging
import math
from fractions import Fraction
from itertools import combinations
from typing import Any, Callable, Dict, Iterable, List, Optional, Sequence, Tuple, Union

import numpy as np
import sympy

from ..models.config import CliConfig
from ..models.inputs import PDInput
from ..models.reports import (
    BasicCaseReport,
    DegreeReport,
    FiberedCertificate,
    MahlerValue,
    NormEntry,
    NormReport,
    ProbeCheck,
    TorsionReport,
    UnknotVerdict,
)
from ..utils.errors import PresentationError, SingularSelectionError
from .fox import (
    FreeGroupEndo,
    Presentation,
    jacobian,
    mapping_torus_matrices,
    monodromy_jacobian,
    punctured_mapping_torus_matrices,
    torus_chain_complex,
    torus_presentation,
    wirtinger_from_pd,
)
from .groupring import GroupRingElem, GroupRingMatrix, HomToZk, Word, growth_rate_upper
from .laurent import (
    LaurentMatrix,
    LaurentPoly,
    alexander_normalize,
    det,
    exact_div,
    kappa_scale,
    newton_width,
    one_var_roots,
)
from .mahler import fk_det_abelian, induce_index_d, mahler
from .torsionfn import (
    Factor,
    MaxMonomialFn,
    degree,
    equivalent,
    inverse,
    is_monic,
    multiply,
    normalize_r,
    power,
    product,
    symmetry_exponent,
    symmetry_parity_ok,
)

logger = logging.getLogger(__name__)

KnotInput = Union[Presentation, PDInput]

UNKNOT_CAVEAT = ("abelian coefficients only give a necessary condition: every knot with "
                 "trivial Alexander polynomial passes this test")
DEGREE_CAVEAT = "deg tau = deg Delta - 1 for the abelian coefficient system"
PROBE_TOL = 1e-9


def _config(config: Optional[CliConfig]) -> CliConfig:
    return config if config is not None else CliConfig()


def _ratio(num: MahlerValue, den: MahlerValue) -> MahlerValue:
    if num.value == 0:
        return MahlerValue(value=0.0, err=0.0, method=num.method, note="torsion vanishes")
    value = num.value / den.value
    rel = num.err / num.value + den.err / den.value
    method = "quadrature" if "quadrature" in (num.method, den.method) else "jensen"
    return MahlerValue(value=value, err=value * rel, method=method,
                       skipped=num.skipped + den.skipped,
                       low_confidence=num.low_confidence or den.low_confidence)


class TorsionHandle:
    """
    A computed torsion function: an exact max-monomial form, a sampler, or both.
    """

    def __init__(
        self,
        exact: Optional[MaxMonomialFn] = None,
        sampler: Optional[Callable[[float], MahlerValue]] = None,
        degree_certificate: Optional[DegreeReport] = None,
        provenance: Optional[Dict[str, Any]] = None,
    ):
        if exact is None and sampler is None:
            raise ValueError("A torsion handle needs an exact form or a sampler")
        self.exact = exact
        self.sampler = sampler
        self.degree_certificate = degree_certificate
        self.provenance = provenance or {}

    def value_at(self, t: float) -> Tuple[float, float]:
        if self.exact is not None:
            return self.exact.evaluate(t), 0.0
        result = self.sampler(t)
        return result.value, result.err

    def check_consistency(self, probes: int = 16, tmin: float = 0.05, tmax: float = 20.0) -> bool:
        """When both forms exist, sampled values must match the exact one within their err."""
        if self.exact is None or self.sampler is None:
            return True
        for t in np.geomspace(tmin, tmax, probes):
            sampled = self.sampler(float(t))
            expected = self.exact.evaluate(float(t))
            if abs(sampled.value - expected) > max(3 * sampled.err, 1e-6 * max(1.0, expected)):
                logger.warning(f"Handle mismatch at t={t:.4g}: {sampled.value} vs {expected}")
                return False
        return True


def _select_square(m: LaurentMatrix, size: int, axis: str, preferred: Optional[Sequence[int]],
                   label: str) -> Tuple[List[int], LaurentPoly]:
    """Pick `size` rows (axis "rows") or columns of m whose square minor is nonzero."""
    count = m.rows if axis == "rows" else m.cols

    def minor(idx):
        sub = m.select_rows(idx) if axis == "rows" else m.select_cols(idx)
        return det(sub)

    if preferred is not None:
        idx = list(preferred)
        if len(idx) != size:
            raise SingularSelectionError(f"Selection {label} must have {size} indices", selection=label)
        d = minor(idx)
        if not d.is_zero():
            return idx, d
        logger.warning(f"Selection {label}={idx} is singular, searching alternatives")
    for idx in combinations(range(count), size):
        d = minor(list(idx))
        if not d.is_zero():
            return list(idx), d
    raise SingularSelectionError(f"No admissible selection {label} of size {size}", selection=label)


def tau_two_term(
    a: LaurentMatrix,
    b: LaurentMatrix,
    psi: Sequence[int],
    t,
    rows: Optional[Sequence[int]] = None,
    config: Optional[CliConfig] = None,
) -> MahlerValue:
    """
    Torsion of 0 -> R^k --B--> R^(k+l) --A--> R^l -> 0 as det(B(L)) / det(A(L)).

    A(L) keeps the rows of A indexed by L, B(L) deletes the columns of B indexed by L.

    Args:
        a: (k+l) x l matrix
        b: k x (k+l) matrix (may have no rows)
        psi: Twist direction
        t: Positive parameter
        rows: Preferred L; other selections are tried in index order when it is singular
        config: Numerical settings

    Raises:
        SingularSelectionError: when every A(L) is singular
    """
    cfg = _config(config)
    l = a.cols
    if b.rows and b.cols != a.rows:
        raise ValueError(f"Incompatible shapes: B is {b.rows}x{b.cols}, A is {a.rows}x{a.cols}")
    chosen, _ = _select_square(a, l, "rows", rows, "L")
    a_l = a.select_rows(chosen)
    b_l = b.delete_cols(chosen) if b.rows else LaurentMatrix([], a.nvars, cols=0)
    kwargs = dict(points_per_dim=cfg.quad_points, root_tol=cfg.root_tol, workers=cfg.quad_workers)
    num = fk_det_abelian(b_l, psi, t, **kwargs)
    den = fk_det_abelian(a_l, psi, t, **kwargs)
    return _ratio(num, den)


def tau_three_term(
    c: LaurentMatrix,
    b: LaurentMatrix,
    a: LaurentMatrix,
    psi: Sequence[int],
    t,
    cols: Optional[Sequence[int]] = None,
    rows: Optional[Sequence[int]] = None,
    config: Optional[CliConfig] = None,
) -> MahlerValue:
    """
    Torsion of 0 -> R^c3 --C--> R^c2 --B--> R^c1 --A--> R^c0 -> 0.

    J selects c3 columns of C (the same rows are deleted from B), L selects c0 rows of A
    (the same columns are deleted from B); the value is det B(J, L) / (det A(L) det C(J)).
    """
    cfg = _config(config)
    if c.cols != b.rows or b.cols != a.rows:
        raise ValueError("Boundary matrices do not compose")
    if b.rows - c.rows != b.cols - a.cols:
        raise ValueError("The complex must have Euler characteristic zero")
    j_idx, _ = _select_square(c, c.rows, "cols", cols, "J")
    l_idx, _ = _select_square(a, a.cols, "rows", rows, "L")
    kwargs = dict(points_per_dim=cfg.quad_points, root_tol=cfg.root_tol, workers=cfg.quad_workers)
    middle = fk_det_abelian(b.delete_rows(j_idx).delete_cols(l_idx), psi, t, **kwargs)
    first = fk_det_abelian(c.select_cols(j_idx), psi, t, **kwargs)
    last = fk_det_abelian(a.select_rows(l_idx), psi, t, **kwargs)
    partial = _ratio(middle, first)
    return _ratio(partial, last)


def _knot_presentation(knot: KnotInput) -> Presentation:
    if isinstance(knot, PDInput):
        return wirtinger_from_pd(knot)
    return knot


def _deleted_column(p: Presentation, weights: Sequence) -> int:
    for i, w in enumerate(weights):
        if w != 0:
            return i
    raise SingularSelectionError("No generator has nonzero weight; nothing to delete", selection="column")


def _rank_one_phi(p: Presentation) -> HomToZk:
    if p.phi is None or p.phi.rank != 1:
        raise PresentationError("Knot torsion needs a marked map to Z on the presentation")
    return p.phi


def alexander_determinant(p: Presentation, h: HomToZk, column: int) -> LaurentPoly:
    """det of the abelianized Fox matrix with one generator column deleted."""
    if not p.is_deficiency_one():
        raise PresentationError(f"Expected a deficiency-one presentation, got {p.rank} generators "
                                f"and {len(p.relators)} relators")
    jac = LaurentMatrix.from_group_ring(jacobian(p), h)
    return det(jac.delete_col(column))


def max_monomial_from_poly(p: LaurentPoly, root_tol: float = 1e-12) -> MaxMonomialFn:
    """t -> m(p(tz)) = |C| t^m prod max(|a_i|, t) for a one-variable p."""
    if p.is_zero():
        return MaxMonomialFn.zero_fn()
    roots = one_var_roots(p, root_tol)
    c = Fraction(roots.leading_exact) if roots.leading_exact is not None else roots.leading_abs
    factors = [Factor(m, k) for m, k in zip(roots.moduli, roots.multiplicities)]
    shadow = Fraction(roots.product_exact) if roots.product_exact is not None else None
    return MaxMonomialFn(c, roots.shift, factors, product_exact=shadow)


def _knot_torsion(p: Presentation, root_tol: float) -> Tuple[MaxMonomialFn, LaurentPoly]:
    phi = _rank_one_phi(p)
    weights = [img[0] for img in phi.images]
    column = _deleted_column(p, weights)
    delta = alexander_determinant(p, phi, column)
    logger.debug(f"Alexander determinant with column {p.generators[column]} deleted: {delta.format()}")
    if delta.is_zero():
        return MaxMonomialFn.zero_fn(), delta
    torsion = multiply(max_monomial_from_poly(delta, root_tol),
                       inverse(MaxMonomialFn.max_one_power(weights[column])))
    return torsion, delta


def tau_knot_abelianization(knot: KnotInput, config: Optional[CliConfig] = None) -> MaxMonomialFn:
    """
    Torsion of a knot for the abelianization, C * prod max(|a_i|, t) * max(1, t^phi(g_i))^-1.

    The representative with r = 0 is returned.
    """
    cfg = _config(config)
    torsion, _ = _knot_torsion(_knot_presentation(knot), cfg.root_tol)
    return normalize_r(torsion)


def alexander_polynomial(knot: KnotInput) -> LaurentPoly:
    """Delta_K, shifted to trailing exponent 0 with positive leading coefficient."""
    p = _knot_presentation(knot)
    phi = _rank_one_phi(p)
    weights = [img[0] for img in phi.images]
    column = _deleted_column(p, weights)
    delta = alexander_determinant(p, phi, column)
    if delta.is_zero():
        return delta
    # remove the (1 - z^w) factor of the deleted generator when w != 1
    w = abs(weights[column])
    if w != 1:
        delta = exact_div(delta * LaurentPoly.from_coeffs([1, -1]),
                          LaurentPoly.from_coeffs([1] + [0] * (w - 1) + [-1]))
    return alexander_normalize(delta)


def li_zhang(knot: KnotInput, config: Optional[CliConfig] = None) -> MaxMonomialFn:
    """The abelian part of the L2-Alexander invariant: torsion times max(1, t)."""
    return multiply(tau_knot_abelianization(knot, config), MaxMonomialFn.max_one(1))


def tau_torus_knot(p: int, q: int) -> MaxMonomialFn:
    torus_presentation(p, q)
    return MaxMonomialFn.max_one((p - 1) * (q - 1) - 1)


def tau_iterated_torus(genus: int) -> MaxMonomialFn:
    """max(1, t)^(2 genus - 1) for knots built from the unknot by cabling and connected sums."""
    if genus < 0:
        raise ValueError(f"Genus must be nonnegative, got {genus}")
    return MaxMonomialFn.max_one(2 * genus - 1)


def tau_graph_manifold(x) -> MaxMonomialFn:
    if x < 0:
        raise ValueError(f"Thurston norm must be nonnegative, got {x}")
    return MaxMonomialFn.max_one(x)


def jsj_product(parts: Iterable[MaxMonomialFn]) -> MaxMonomialFn:
    return product(parts)


def tau_torus_complex(h: HomToZk, psi: Sequence[int], t, config: Optional[CliConfig] = None) -> MahlerValue:
    """Torsion of the 2-torus complex for the abelian map h on <x, y>; always 1."""
    b, a = torus_chain_complex()
    return tau_two_term(LaurentMatrix.from_group_ring(a, h), LaurentMatrix.from_group_ring(b, h),
                        psi, t, config=config)


def _spectral_radius(matrix: Sequence[Sequence[int]]) -> float:
    if not matrix:
        return 0.0
    return float(np.max(np.abs(np.linalg.eigvals(np.asarray(matrix, dtype=float)))))


def tau_fibered(
    f: FreeGroupEndo,
    chi: int,
    k_max: int = 32,
    config: Optional[CliConfig] = None,
) -> FiberedCertificate:
    """
    Certificate for a fibered class with monodromy f on the fiber group F_n.

    The torsion is 1 below 1/T and t^x above T, where x = -chi and T bounds the growth
    rate of mu * A with A the monodromy Jacobian. The shape is probed at 1/(2T) and 2T on
    the bordered-fiber complex and on the three-term complex of the closed mapping torus.
    """
    cfg = _config(config)
    if k_max < 1:
        raise ValueError("k_max must be at least 1")
    if chi >= 0:
        logger.info(f"chi = {chi} >= 0: graph-manifold case, torsion is 1")
        return FiberedCertificate(x=0, t_upper=1.0, k_used=1,
                                  representative="1 for all t (chi >= 0, graph-manifold case)")

    x = -chi
    n = f.rank
    mu = Word.generator(n)
    logger.info(f"Fibered certificate: rank {n}, x = {x}, k_max = {k_max}")
    growth = growth_rate_upper(monodromy_jacobian(f).left_word(mu), k_max, cfg.max_terms)
    t_upper = max(1.0, growth.upper)

    # class phi: fiber generators -> 0, stable letter -> 1
    phi = HomToZk([[0]] * n + [[1]])
    b2, b1 = punctured_mapping_torus_matrices(f)
    a_mat = LaurentMatrix.from_group_ring(b1, phi)
    b_mat = LaurentMatrix.from_group_ring(b2, phi)
    closed = [LaurentMatrix.from_group_ring(m, phi) for m in mapping_torus_matrices(f)]
    probes: List[ProbeCheck] = []
    closed_checks: List[ProbeCheck] = []
    for t, low in ((1.0 / (2.0 * t_upper), True), (2.0 * t_upper, False)):
        expected = 1.0 if low else t ** (n - 1)
        value = tau_two_term(a_mat, b_mat, (1,), t, rows=[n], config=cfg)
        ok = abs(value.value - expected) <= PROBE_TOL * max(1.0, expected) + value.err
        probes.append(ProbeCheck(t=t, value=value.value, expected=expected, ok=ok))

        # the closed complex divides det(id - mu A) by max(1, t) twice
        expected = 1.0 if low else t ** (n - 2)
        value = tau_three_term(*closed, (1,), t, cols=[0], rows=[n], config=cfg)
        ok = abs(value.value - expected) <= PROBE_TOL * max(1.0, expected) + value.err
        closed_checks.append(ProbeCheck(t=t, value=value.value, expected=expected, ok=ok))

    return FiberedCertificate(
        x=x,
        t_upper=t_upper,
        k_used=growth.k_used,
        representative=f"1 on (0, {1.0 / t_upper:.6g}), t^{x} on ({t_upper:.6g}, inf)",
        abelian_lower=_spectral_radius(f.abelianized()),
        growth=growth,
        entropy_estimates=f.growth_estimates(min(k_max, 12)),
        probes=probes,
        closed_checks=closed_checks,
        sanity_ok=all(p.ok for p in probes + closed_checks),
    )


def _integer_det(m: Sequence[Sequence[int]]) -> int:
    return int(sympy.Matrix(m).det())


def basiccase_check(p: Sequence[Sequence[int]], q: Sequence[Sequence[int]], t_grid: Sequence[float],
                    k_max: int = 32, config: Optional[CliConfig] = None) -> BasicCaseReport:
    """
    Check that f(t) = m(det(P - t z Q)) is 1 below 1/T and t^n above T, T from z Q P^-1.
    """
    cfg = _config(config)
    n = len(p)
    if any(len(row) != n for row in p) or len(q) != n or any(len(row) != n for row in q):
        raise ValueError("P and Q must be square matrices of equal size")
    if abs(_integer_det(p)) != 1 or abs(_integer_det(q)) != 1:
        raise ValueError("P and Q must be invertible over Z (determinant +-1)")

    qp = sympy.Matrix(q) * sympy.Matrix(p).inv()
    z = Word.generator(0)
    grm = GroupRingMatrix([[GroupRingElem.from_word(z, int(qp[i, j])) for j in range(n)]
                           for i in range(n)], cols=n)
    t_hat = max(1.0, growth_rate_upper(grm, k_max, cfg.max_terms).upper)

    zpoly = LaurentPoly.monomial((1,))
    m = LaurentMatrix([[LaurentPoly.constant(1, p[i][j]) - zpoly.scale(q[i][j]) for j in range(n)]
                       for i in range(n)], 1)
    values, failures = [], []
    low_ok = high_ok = True
    for t in t_grid:
        value = fk_det_abelian(m, (1,), t, root_tol=cfg.root_tol).value
        values.append(value)
        if t < 1.0 / t_hat and abs(value - 1.0) > PROBE_TOL:
            low_ok = False
            failures.append(t)
        elif t > t_hat and abs(value - t ** n) > PROBE_TOL * t ** n:
            high_ok = False
            failures.append(t)
    return BasicCaseReport(n=n, t_hat=t_hat, grid=list(t_grid), values=values,
                           low_ok=low_ok, high_ok=high_ok, failures=failures)


def _direction_degrees(d: LaurentPoly, psi: Sequence, w) -> DegreeReport:
    dots = [sum(a * b for a, b in zip(psi, e)) for e in d.terms]
    deg0 = min(dots) - min(w, 0)
    deg_inf = max(dots) - max(w, 0)
    return DegreeReport(deg0=float(deg0), deg_inf=float(deg_inf), deg=float(deg_inf - deg0),
                        monomial_in_limit=True, window="exact Newton-polytope widths")


def tau_multivar(p: Presentation, psi: Sequence[int], config: Optional[CliConfig] = None) -> TorsionHandle:
    """
    Torsion for the abelian map of the presentation twisted in direction psi.

    The degree certificate comes from Newton-polytope widths; the sampler evaluates Mahler
    measures by quadrature (or exactly in rank one).
    """
    cfg = _config(config)
    h = p.abelianization_map()
    if not h.kills(p.relators):
        raise PresentationError("The abelian map does not kill the relators")
    if len(psi) != h.rank:
        raise ValueError(f"psi has length {len(psi)}, the abelian map has rank {h.rank}")
    weights = h.compose_linear(psi)
    column = _deleted_column(p, weights)
    w = weights[column]
    d = alexander_determinant(p, h, column)
    provenance = {"generators": list(p.generators), "psi": list(psi),
                  "deleted_column": p.generators[column]}
    if d.is_zero():
        zero = MaxMonomialFn.zero_fn()
        return TorsionHandle(exact=zero, degree_certificate=degree(zero), provenance=provenance)

    # 1 - t^w z^h(g): a binomial, Mahler measure max(1, t^w)
    correction = MaxMonomialFn.max_one_power(w)

    def sampler(t: float) -> MahlerValue:
        value = mahler(kappa_scale(d, psi, t), cfg.quad_points, cfg.root_tol, cfg.quad_workers)
        scale = correction.evaluate(t)
        return MahlerValue(value=value.value / scale, err=value.err / scale, method=value.method,
                           skipped=value.skipped, low_confidence=value.low_confidence)

    exact = None
    if h.rank == 1:
        exact = multiply(max_monomial_from_poly(d.substitute([[psi[0]]]), cfg.root_tol), inverse(correction))
    handle = TorsionHandle(exact=exact, sampler=sampler, degree_certificate=_direction_degrees(d, psi, w),
                           provenance=provenance)
    if exact is not None:
        provenance["consistent"] = handle.check_consistency()
    return handle


def _statement(direction: Sequence[int], deg) -> str:
    return f"x_N({tuple(direction)}) >= {deg}"


def alexander_norm_from_poly(d: LaurentPoly, directions: Sequence[Sequence[int]],
                             corrections: Optional[Sequence[int]] = None) -> NormReport:
    """
    Newton-polytope widths of d over the given directions, with norm-axiom checks.

    corrections[i] is the weight of the deleted generator for direction i; the torsion
    degree is width - |weight|.
    """
    if d.is_zero():
        entries = [NormEntry(direction=list(v), statement="no lower bound (torsion vanishes)")
                   for v in directions]
        return NormReport(entries=entries, vanishes=True)
    entries = []
    for i, v in enumerate(directions):
        width = newton_width(d, v)
        deg = width - abs(corrections[i]) if corrections is not None else width
        entries.append(NormEntry(direction=list(v), width=int(width), degree=float(deg),
                                 statement=_statement(v, deg)))
    homogeneous = all(newton_width(d, [2 * c for c in v]) == 2 * newton_width(d, v) for v in directions)
    triangle = all(
        newton_width(d, [a + b for a, b in zip(u, v)]) <= newton_width(d, u) + newton_width(d, v)
        for u, v in combinations(directions, 2)
    )
    return NormReport(entries=entries, vanishes=False, homogeneous=homogeneous, triangle=triangle)


def alexander_norm_report(p: Presentation, directions: Sequence[Sequence[int]]) -> NormReport:
    """Torsion degree per direction and the Thurston-norm lower bound it gives."""
    h = p.abelianization_map()
    if not h.kills(p.relators):
        raise PresentationError("The abelian map does not kill the relators")
    entries = []
    vanishes = False
    widths: Dict[int, LaurentPoly] = {}
    for v in directions:
        weights = h.compose_linear(v)
        column = _deleted_column(p, weights)
        if column not in widths:
            widths[column] = alexander_determinant(p, h, column)
        d = widths[column]
        if d.is_zero():
            vanishes = True
            entries.append(NormEntry(direction=list(v), statement="no lower bound (torsion vanishes)"))
            continue
        width = newton_width(d, v)
        deg = width - abs(weights[column])
        entries.append(NormEntry(direction=list(v), width=int(width), degree=float(deg),
                                 statement=_statement(v, deg)))
    if vanishes:
        return NormReport(entries=entries, vanishes=True)
    any_d = next(iter(widths.values()))
    check = alexander_norm_from_poly(any_d, directions)
    return NormReport(entries=entries, homogeneous=check.homogeneous, triangle=check.triangle)


def unknot_necessary_test(knot: KnotInput, config: Optional[CliConfig] = None) -> UnknotVerdict:
    torsion = tau_knot_abelianization(knot, config)
    if equivalent(torsion, MaxMonomialFn.max_one(-1)):
        return UnknotVerdict(verdict="consistent-with-unknot", caveat=UNKNOT_CAVEAT)
    return UnknotVerdict(verdict="not-unknot")


def finite_cover_power(f: MaxMonomialFn, d: int) -> MaxMonomialFn:
    """Torsion of the d-fold cyclic cover for the pulled-back class: f^d."""
    if d < 1:
        raise ValueError(f"Cover degree must be positive, got {d}")
    return power(f, d)


def finite_cover_check(p: LaurentPoly, d: int, t_values: Sequence[float],
                       config: Optional[CliConfig] = None) -> List[ProbeCheck]:
    """
    Compare m(det of the index-d induced matrix) with m(p)^d after the twist by t.
    """
    cfg = _config(config)
    induced = induce_index_d(p, d)
    single = LaurentMatrix([[p]], 1)
    checks = []
    for t in t_values:
        lhs = fk_det_abelian(induced, (d,), t, root_tol=cfg.root_tol).value
        rhs = fk_det_abelian(single, (1,), t, root_tol=cfg.root_tol).value ** d
        ok = abs(lhs - rhs) <= PROBE_TOL * max(1.0, abs(rhs))
        checks.append(ProbeCheck(t=float(t), value=lhs, expected=rhs, ok=ok))
    return checks


def torsion_report(
    torsion: MaxMonomialFn,
    coefficient_system: str,
    alexander: Optional[LaurentPoly] = None,
    certificates: Optional[Dict[str, Any]] = None,
    caveats: Optional[List[str]] = None,
    verdict: Optional[UnknotVerdict] = None,
) -> TorsionReport:
    """Assemble the JSON torsion report for an exact torsion function."""
    caveats = list(caveats or [])
    deg = degree(torsion)
    k = symmetry_exponent(torsion) if not torsion.zero else None
    parity = None
    if k is not None and math.isfinite(deg.deg):
        parity = symmetry_parity_ok(torsion, torsion.exponent_sum)
    if alexander is not None:
        caveats.append(DEGREE_CAVEAT)
    return TorsionReport(
        coefficient_system=coefficient_system,
        exact=torsion.to_json(),
        display=torsion.display(),
        degree=deg,
        monic=is_monic(torsion) if not torsion.zero else None,
        symmetry_exponent=float(k) if k is not None else None,
        symmetry_parity_ok=parity,
        alexander_polynomial=alexander.format() if alexander is not None else None,
        certificates=certificates or {},
        caveats=caveats,
        verdict=verdict,
    )
