import logging
import re
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

import mpmath
import numpy as np
import sympy

from ..models.reports import RootData
from ..utils.errors import ExponentOverflowError, ParseError, ZeroPolynomialError
from .groupring import GroupRingElem, GroupRingMatrix, HomToZk

logger = logging.getLogger(__name__)

Exponent = Tuple[int, ...]
Coeff = Union[Fraction, float]

EXPONENT_LIMIT = 10 ** 6
RESERVED_NAMES = frozenset({"t"})

_NAME = re.compile(r"^([A-Za-z][A-Za-z0-9_]*)(?:\^(-?\d+))?$")


def _coerce(value) -> Coeff:
    if isinstance(value, float):
        return value
    return Fraction(value)


def _fmt_coeff(c: Coeff) -> str:
    if isinstance(c, Fraction) and c.denominator == 1:
        return str(c.numerator)
    return str(c)


class LaurentPoly:
    """
    Multivariable Laurent polynomial with exact rational (or, after a real twist, float)
    coefficients. Zero coefficients are never stored.
    """

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: Optional[Dict[Exponent, Coeff]] = None):
        self.nvars = nvars
        clean: Dict[Exponent, Coeff] = {}
        for exp, coeff in (terms or {}).items():
            exp = tuple(int(e) for e in exp)
            if len(exp) != nvars:
                raise ValueError(f"Exponent {exp} does not have {nvars} entries")
            if any(abs(e) > EXPONENT_LIMIT for e in exp):
                raise ExponentOverflowError(f"Exponent {exp} exceeds {EXPONENT_LIMIT} in absolute value")
            coeff = _coerce(coeff)
            if coeff != 0:
                clean[exp] = clean.get(exp, 0) + coeff
                if clean[exp] == 0:
                    del clean[exp]
        self.terms = clean

    @classmethod
    def zero(cls, nvars: int) -> "LaurentPoly":
        return cls(nvars)

    @classmethod
    def constant(cls, nvars: int, value=1) -> "LaurentPoly":
        return cls(nvars, {(0,) * nvars: value})

    @classmethod
    def monomial(cls, exponent: Sequence[int], coeff=1) -> "LaurentPoly":
        return cls(len(exponent), {tuple(exponent): coeff})

    @classmethod
    def from_coeffs(cls, coeffs: Sequence, shift: int = 0) -> "LaurentPoly":
        """One-variable polynomial sum_i coeffs[i] z^(shift + i)."""
        return cls(1, {(shift + i,): c for i, c in enumerate(coeffs)})

    def is_zero(self) -> bool:
        return not self.terms

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def is_exact(self) -> bool:
        return all(isinstance(c, Fraction) for c in self.terms.values())

    def support(self) -> List[Exponent]:
        return sorted(self.terms)

    def monomial_content(self) -> Exponent:
        """Coordinatewise minimum exponent over the support."""
        if not self.terms:
            return (0,) * self.nvars
        return tuple(min(e[i] for e in self.terms) for i in range(self.nvars))

    def shift(self, by: Sequence[int]) -> "LaurentPoly":
        return LaurentPoly(self.nvars, {tuple(a + b for a, b in zip(e, by)): c
                                        for e, c in self.terms.items()})

    def _check(self, other: "LaurentPoly") -> None:
        if other.nvars != self.nvars:
            raise ValueError(f"Variable count mismatch: {self.nvars} vs {other.nvars}")

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        self._check(other)
        terms = dict(self.terms)
        for e, c in other.terms.items():
            terms[e] = terms.get(e, 0) + c
        return LaurentPoly(self.nvars, terms)

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other: "LaurentPoly") -> "LaurentPoly":
        return self + (-other)

    def __mul__(self, other: "LaurentPoly") -> "LaurentPoly":
        self._check(other)
        terms: Dict[Exponent, Coeff] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                key = tuple(a + b for a, b in zip(e1, e2))
                terms[key] = terms.get(key, 0) + c1 * c2
        return LaurentPoly(self.nvars, terms)

    def scale(self, scalar) -> "LaurentPoly":
        scalar = _coerce(scalar)
        return LaurentPoly(self.nvars, {e: c * scalar for e, c in self.terms.items()})

    def power(self, n: int) -> "LaurentPoly":
        if n < 0:
            if not self.is_monomial():
                raise ValueError("Only monomials have inverses in the Laurent ring")
            (e, c), = self.terms.items()
            inverse = LaurentPoly(self.nvars, {tuple(-x for x in e): 1 / c})
            return inverse.power(-n)
        result = LaurentPoly.constant(self.nvars)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def substitute(self, images: Sequence[Sequence[int]]) -> "LaurentPoly":
        """
        Apply the monomial map z_i -> w^images[i] into a ring with len(images[0]) variables.
        """
        k = len(images[0]) if images else 0
        terms: Dict[Exponent, Coeff] = {}
        for e, c in self.terms.items():
            key = tuple(sum(e[i] * images[i][j] for i in range(self.nvars)) for j in range(k))
            terms[key] = terms.get(key, 0) + c
        return LaurentPoly(k, terms)

    def evaluate(self, points: np.ndarray) -> np.ndarray:
        """
        Evaluate at complex points, an array of shape (N, nvars) or a single point.
        """
        pts = np.atleast_2d(np.asarray(points, dtype=complex))
        if not self.terms:
            return np.zeros(pts.shape[0], dtype=complex)
        exps = np.array(list(self.terms.keys()), dtype=float)
        coeffs = np.array([float(c) for c in self.terms.values()], dtype=complex)
        # prod_i z_i^e_i via logs is unsafe at 0; use explicit powers
        monos = np.prod(pts[:, None, :] ** exps[None, :, :], axis=2)
        return monos @ coeffs

    def evaluate_on_torus(self, angles: np.ndarray) -> np.ndarray:
        """Values at z = exp(i * angles), angles of shape (N, nvars)."""
        if not self.terms:
            return np.zeros(angles.shape[0], dtype=complex)
        exps = np.array(list(self.terms.keys()), dtype=float)
        coeffs = np.array([float(c) for c in self.terms.values()], dtype=complex)
        return np.exp(1j * (angles @ exps.T)) @ coeffs

    # one-variable helpers

    def _require_univariate(self) -> None:
        if self.nvars != 1:
            raise ValueError(f"Expected a one-variable polynomial, got {self.nvars} variables")

    def coefficients(self) -> Tuple[int, List[Coeff]]:
        """(m, [a_0, ..., a_d]) with p = z^m * sum a_i z^i and a_0, a_d nonzero."""
        self._require_univariate()
        if not self.terms:
            raise ZeroPolynomialError("The zero polynomial has no coefficient list")
        lo = min(e[0] for e in self.terms)
        hi = max(e[0] for e in self.terms)
        return lo, [self.terms.get((lo + i,), Fraction(0)) for i in range(hi - lo + 1)]

    def span(self) -> int:
        shift, coeffs = self.coefficients()
        return len(coeffs) - 1

    def __eq__(self, other) -> bool:
        return isinstance(other, LaurentPoly) and self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.nvars, frozenset(self.terms.items())))

    def __repr__(self) -> str:
        return f"LaurentPoly({self.format()})"

    def format(self, names: Optional[Sequence[str]] = None) -> str:
        if not self.terms:
            return "0"
        if names is None:
            names = ["z"] if self.nvars == 1 else [f"z{i + 1}" for i in range(self.nvars)]
        parts = []
        for e in sorted(self.terms, reverse=True):
            c = self.terms[e]
            factors = []
            for name, k in zip(names, e):
                if k == 1:
                    factors.append(name)
                elif k:
                    factors.append(f"{name}^{k}")
            mono = "*".join(factors)
            if not mono:
                parts.append(_fmt_coeff(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append(f"-{mono}")
            else:
                parts.append(f"{_fmt_coeff(c)}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")


def parse_poly(text: str, names: Optional[Sequence[str]] = None) -> Tuple[LaurentPoly, List[str]]:
    """
    Parse polynomial text such as "3*x^2*y^-1 - 2 + x".

    Args:
        text: Sum of terms; each term a product of rational numbers and name^int factors
        names: Variable order; inferred in order of appearance when omitted

    Returns:
        The polynomial and the variable names used
    """
    body = text.replace(" ", "").replace("^-", "^~")
    if not body:
        raise ParseError("Empty polynomial")
    chunks = [c for c in re.split(r"(?=[+-])", body) if c]
    parsed: List[Tuple[Fraction, Dict[str, int]]] = []
    order: List[str] = list(names) if names is not None else []
    for chunk in chunks:
        sign = -1 if chunk[0] == "-" else 1
        chunk = chunk.lstrip("+-")
        if not chunk:
            raise ParseError(f"Dangling sign in {text!r}")
        coeff = Fraction(sign)
        powers: Dict[str, int] = {}
        for factor in chunk.split("*"):
            factor = factor.replace("^~", "^-")
            if not factor:
                raise ParseError(f"Empty factor in {text!r}")
            match = _NAME.match(factor)
            if match:
                name = match.group(1)
                if name in RESERVED_NAMES:
                    raise ParseError(f"Variable name {name!r} is reserved")
                if name not in order:
                    if names is not None:
                        raise ParseError(f"Unknown variable {name!r} in {text!r}")
                    order.append(name)
                powers[name] = powers.get(name, 0) + int(match.group(2) or 1)
            else:
                try:
                    coeff *= Fraction(factor)
                except (ValueError, ZeroDivisionError):
                    raise ParseError(f"Malformed factor {factor!r} in {text!r}")
        parsed.append((coeff, powers))
    if not order:
        order = ["z"]
    terms: Dict[Exponent, Fraction] = {}
    for coeff, powers in parsed:
        key = tuple(powers.get(name, 0) for name in order)
        terms[key] = terms.get(key, 0) + coeff
    return LaurentPoly(len(order), terms), order


def alexander_normalize(p: LaurentPoly) -> LaurentPoly:
    """Shift to trailing exponent 0 and make the leading coefficient positive (display only)."""
    if p.is_zero():
        return p
    shift, coeffs = p.coefficients()
    if coeffs[-1] < 0:
        coeffs = [-c for c in coeffs]
    return LaurentPoly.from_coeffs(coeffs)


def abelianize(e: GroupRingElem, h: HomToZk) -> LaurentPoly:
    """Send each word w to z^h(w), keeping coefficients."""
    terms: Dict[Exponent, Fraction] = {}
    for word, coeff in e.terms.items():
        key = h.of_word(word)
        terms[key] = terms.get(key, 0) + coeff
    return LaurentPoly(h.rank, terms)


def kappa_scale(p: LaurentPoly, psi: Sequence[int], t) -> LaurentPoly:
    """
    Twist c z^a -> c t^(psi . a) z^a.

    A float t is converted to the rational it represents so the result stays exact.
    """
    if len(psi) != p.nvars:
        raise ValueError(f"psi has length {len(psi)}, polynomial has {p.nvars} variables")
    base = t if isinstance(t, Fraction) else Fraction(t)
    if base <= 0:
        raise ValueError(f"t must be positive, got {t}")
    terms: Dict[Exponent, Coeff] = {}
    for e, c in p.terms.items():
        weight = sum(a * b for a, b in zip(psi, e))
        if isinstance(weight, int) or (isinstance(weight, Fraction) and weight.denominator == 1):
            terms[e] = c * base ** int(weight)
        else:
            terms[e] = float(c) * float(base) ** float(weight)
    return LaurentPoly(p.nvars, terms)


def exact_div(a: LaurentPoly, d: LaurentPoly) -> LaurentPoly:
    """
    Quotient a / d when it exists in the Laurent ring.

    Quotient exponents are confined to [min_a - min_d, max_a - max_d] per coordinate;
    leaving that box means d does not divide a.
    """
    if d.is_zero():
        raise ZeroDivisionError("Division by the zero polynomial")
    if a.is_zero():
        return LaurentPoly.zero(a.nvars)
    k = a.nvars
    lo = [min(e[i] for e in a.terms) - min(e[i] for e in d.terms) for i in range(k)]
    hi = [max(e[i] for e in a.terms) - max(e[i] for e in d.terms) for i in range(k)]
    lead_d = max(d.terms)
    cd = d.terms[lead_d]
    rem: Dict[Exponent, Coeff] = dict(a.terms)
    quot: Dict[Exponent, Coeff] = {}
    while rem:
        lead = max(rem)
        mono = tuple(x - y for x, y in zip(lead, lead_d))
        if any(m < l or m > h for m, l, h in zip(mono, lo, hi)):
            raise ArithmeticError("Polynomial division is not exact")
        c = rem[lead] / cd
        quot[mono] = c
        for e, v in d.terms.items():
            key = tuple(x + y for x, y in zip(mono, e))
            value = rem.get(key, 0) - c * v
            if value == 0:
                rem.pop(key, None)
            else:
                rem[key] = value
        rem.pop(lead, None)
    return LaurentPoly(k, quot)


class LaurentMatrix:
    """
    Dense matrix of Laurent polynomials in a common number of variables.
    """

    __slots__ = ("rows", "cols", "nvars", "entries")

    def __init__(self, entries: Sequence[Sequence[LaurentPoly]], nvars: int, cols: Optional[int] = None):
        self.entries: Tuple[Tuple[LaurentPoly, ...], ...] = tuple(tuple(r) for r in entries)
        self.nvars = nvars
        self.rows = len(self.entries)
        self.cols = len(self.entries[0]) if self.rows else (cols or 0)
        for row in self.entries:
            if len(row) != self.cols:
                raise ValueError("LaurentMatrix rows must have equal length")
            if any(p.nvars != nvars for p in row):
                raise ValueError(f"Every entry must have {nvars} variables")

    @classmethod
    def identity(cls, n: int, nvars: int) -> "LaurentMatrix":
        one, zero = LaurentPoly.constant(nvars), LaurentPoly.zero(nvars)
        return cls([[one if i == j else zero for j in range(n)] for i in range(n)], nvars, cols=n)

    @classmethod
    def from_rational(cls, rows: Sequence[Sequence], nvars: int = 1) -> "LaurentMatrix":
        return cls([[LaurentPoly.constant(nvars, v) for v in row] for row in rows], nvars,
                   cols=len(rows[0]) if rows else 0)

    @classmethod
    def from_group_ring(cls, m: GroupRingMatrix, h: HomToZk) -> "LaurentMatrix":
        return cls([[abelianize(e, h) for e in row] for row in m.entries], h.rank, cols=m.cols)

    def __getitem__(self, index: Tuple[int, int]) -> LaurentPoly:
        i, j = index
        return self.entries[i][j]

    def is_square(self) -> bool:
        return self.rows == self.cols

    def submatrix(self, rows: Iterable[int], cols: Iterable[int]) -> "LaurentMatrix":
        rows, cols = list(rows), list(cols)
        return LaurentMatrix([[self.entries[i][j] for j in cols] for i in rows], self.nvars, cols=len(cols))

    def select_rows(self, rows: Iterable[int]) -> "LaurentMatrix":
        return self.submatrix(rows, range(self.cols))

    def select_cols(self, cols: Iterable[int]) -> "LaurentMatrix":
        return self.submatrix(range(self.rows), cols)

    def delete_col(self, j: int) -> "LaurentMatrix":
        return self.select_cols([c for c in range(self.cols) if c != j])

    def delete_rows(self, rows: Iterable[int]) -> "LaurentMatrix":
        drop = set(rows)
        return self.select_rows([r for r in range(self.rows) if r not in drop])

    def delete_cols(self, cols: Iterable[int]) -> "LaurentMatrix":
        drop = set(cols)
        return self.select_cols([c for c in range(self.cols) if c not in drop])

    def transpose(self) -> "LaurentMatrix":
        return LaurentMatrix([[self.entries[i][j] for i in range(self.rows)] for j in range(self.cols)],
                             self.nvars, cols=self.rows)

    def map(self, fn) -> "LaurentMatrix":
        return LaurentMatrix([[fn(p) for p in row] for row in self.entries], self.nvars, cols=self.cols)

    def __matmul__(self, other: "LaurentMatrix") -> "LaurentMatrix":
        if self.cols != other.rows:
            raise ValueError(f"Shape mismatch: {self.rows}x{self.cols} @ {other.rows}x{other.cols}")
        out = []
        for i in range(self.rows):
            row = []
            for j in range(other.cols):
                acc = LaurentPoly.zero(self.nvars)
                for k in range(self.cols):
                    if self.entries[i][k].terms and other.entries[k][j].terms:
                        acc = acc + self.entries[i][k] * other.entries[k][j]
                row.append(acc)
            out.append(row)
        return LaurentMatrix(out, self.nvars, cols=other.cols)

    def kappa_scale(self, psi: Sequence[int], t) -> "LaurentMatrix":
        return self.map(lambda p: kappa_scale(p, psi, t))

    def det(self) -> LaurentPoly:
        return det(self)

    def __eq__(self, other) -> bool:
        return isinstance(other, LaurentMatrix) and self.entries == other.entries

    def __repr__(self) -> str:
        return f"LaurentMatrix({self.rows}x{self.cols}, nvars={self.nvars})"


def det(m: LaurentMatrix) -> LaurentPoly:
    """
    Exact determinant by fraction-free (Bareiss) elimination.

    Each row is first multiplied by the inverse of its monomial content so that entries
    are ordinary polynomials; the removed unit is multiplied back at the end.
    """
    if not m.is_square():
        raise ValueError(f"det needs a square matrix, got {m.rows}x{m.cols}")
    n, k = m.rows, m.nvars
    if n == 0:
        return LaurentPoly.constant(k)

    unit = [0] * k
    work: List[List[LaurentPoly]] = []
    for row in m.entries:
        nonzero = [p for p in row if not p.is_zero()]
        if not nonzero:
            return LaurentPoly.zero(k)
        content = [min(p.monomial_content()[i] for p in nonzero) for i in range(k)]
        unit = [u + c for u, c in zip(unit, content)]
        work.append([p.shift([-c for c in content]) for p in row])

    sign = 1
    prev = LaurentPoly.constant(k)
    for col in range(n - 1):
        pivot = next((r for r in range(col, n) if not work[r][col].is_zero()), None)
        if pivot is None:
            return LaurentPoly.zero(k)
        if pivot != col:
            work[col], work[pivot] = work[pivot], work[col]
            sign = -sign
        p = work[col][col]
        for i in range(col + 1, n):
            for j in range(col + 1, n):
                value = work[i][j] * p - work[i][col] * work[col][j]
                work[i][j] = exact_div(value, prev)
            work[i][col] = LaurentPoly.zero(k)
        prev = p

    result = work[n - 1][n - 1]
    if sign < 0:
        result = -result
    return result.shift(unit)


def newton_width(p: LaurentPoly, psi: Sequence) -> Union[int, Fraction, float]:
    """
    max over support pairs of psi . (a - b), the width of the Newton polytope in direction psi.
    """
    if p.is_zero():
        raise ZeroPolynomialError("The zero polynomial has no Newton polytope")
    if len(psi) != p.nvars:
        raise ValueError(f"psi has length {len(psi)}, polynomial has {p.nvars} variables")
    values = [sum(a * b for a, b in zip(psi, e)) for e in p.terms]
    return max(values) - min(values)


def _initial_roots(coeffs: Sequence[float]) -> List[complex]:
    roots = [complex(r) for r in np.roots(np.asarray(coeffs, dtype=float))]
    # Aberth needs pairwise distinct starting points
    seen: List[complex] = []
    for idx, r in enumerate(roots):
        while any(abs(r - s) < 1e-12 for s in seen):
            r = r + complex(1e-6 * (idx + 1), 1e-6)
        seen.append(r)
    return seen


def _aberth(coeffs: List, start: List[complex], tol, max_iter: int = 500) -> List:
    """Simultaneous Aberth-Ehrlich iteration on mpmath numbers, coefficients high to low."""
    z = [mpmath.mpc(r) for r in start]
    n = len(z)
    for _ in range(max_iter):
        largest = mpmath.mpf(0)
        for i in range(n):
            val, der = mpmath.polyval(coeffs, z[i], derivative=True)
            if val == 0:
                continue
            if der == 0:
                ratio = val
            else:
                ratio = val / der
            acc = mpmath.fsum(1 / (z[i] - z[j]) for j in range(n) if j != i)
            denom = 1 - ratio * acc
            step = ratio / denom if denom != 0 else ratio
            z[i] -= step
            largest = max(largest, abs(step) / max(1, abs(z[i])))
        if largest < tol:
            break
    # Newton polish
    for i in range(n):
        for _ in range(3):
            val, der = mpmath.polyval(coeffs, z[i], derivative=True)
            if der == 0 or val == 0:
                break
            z[i] -= val / der
    return z


def _inclusion_radii(coeffs: List, z: List) -> List[float]:
    """n |p(z_i)| / |a_n prod_{j != i} (z_i - z_j)|: the disks contain all roots."""
    n = len(z)
    lead = coeffs[0]
    radii = []
    for i in range(n):
        denom = lead
        for j in range(n):
            if j != i:
                denom *= z[i] - z[j]
        val = mpmath.polyval(coeffs, z[i])
        radii.append(float(n * abs(val) / abs(denom)) if denom != 0 else float("inf"))
    return radii


def _squarefree_factor_roots(factor: List[Fraction], root_tol: float) -> Tuple[List[float], List[float]]:
    """Moduli and certified errors for the roots of one square-free factor (high to low)."""
    degree = len(factor) - 1
    if degree == 1:
        return [float(abs(Fraction(factor[1]) / Fraction(factor[0])))], [0.0]
    with mpmath.workdps(60):
        mp_coeffs = [mpmath.mpf(c.numerator) / c.denominator for c in factor]
        start = _initial_roots([float(c) for c in factor])
        z = _aberth(mp_coeffs, start, mpmath.mpf(10) ** -40)
        radii = _inclusion_radii(mp_coeffs, z)
        moduli = [float(abs(r)) for r in z]
    if max(radii) > root_tol:
        logger.debug(f"Root inclusion radius {max(radii):.3e} exceeds tolerance {root_tol:.1e}")
    return moduli, radii


def one_var_roots(p: LaurentPoly, root_tol: float = 1e-12) -> RootData:
    """
    Factor p = C z^m prod (z - a_i) and return |C|, m and the root moduli |a_i|.

    Multiplicities come from an exact square-free decomposition when the coefficients are
    rational; otherwise roots closer than 1e-8 are clustered. Each modulus carries a
    certified inclusion radius, and prod |a_i| is also returned exactly as
    |trailing / leading|.
    """
    if p.is_zero():
        raise ZeroPolynomialError("one_var_roots needs a nonzero polynomial")
    shift, coeffs = p.coefficients()
    lead, trail = coeffs[-1], coeffs[0]
    exact = p.is_exact()
    leading_exact = str(abs(lead)) if exact else None
    product_exact = str(abs(Fraction(trail) / Fraction(lead))) if exact else None

    moduli: List[float] = []
    mults: List[int] = []
    errors: List[float] = []
    if len(coeffs) > 1:
        if exact:
            z = sympy.Symbol("z")
            poly = sympy.Poly([sympy.Rational(c.numerator, c.denominator) for c in reversed(coeffs)], z)
            _, factors = sympy.sqf_list(poly)
            for factor, mult in factors:
                high_first = [Fraction(int(c.p), int(c.q)) for c in factor.all_coeffs()]
                if len(high_first) < 2:
                    continue
                mods, errs = _squarefree_factor_roots(high_first, root_tol)
                moduli.extend(mods)
                errors.extend(errs)
                mults.extend([mult] * len(mods))
        else:
            with mpmath.workdps(30):
                high_first = [mpmath.mpf(float(c)) for c in reversed(coeffs)]
                start = _initial_roots([float(c) for c in reversed(coeffs)])
                z = _aberth(high_first, start, mpmath.mpf(10) ** -25)
                clusters: List[Tuple[complex, int]] = []
                for r in z:
                    rc = complex(r)
                    for idx, (centre, count) in enumerate(clusters):
                        if abs(rc - centre) < 1e-8:
                            clusters[idx] = (centre, count + 1)
                            break
                    else:
                        clusters.append((rc, 1))
            for centre, count in clusters:
                moduli.append(abs(centre))
                mults.append(count)
                errors.append(1e-8 if count > 1 else 1e-12)

    logger.debug(f"one_var_roots: degree {len(coeffs) - 1}, {len(moduli)} distinct roots")
    return RootData(
        leading_abs=float(abs(lead)),
        leading_exact=leading_exact,
        shift=shift,
        moduli=moduli,
        multiplicities=mults,
        errors=errors,
        product_exact=product_exact,
    )
