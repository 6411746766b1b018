import json
import logging
import math
from fractions import Fraction
from typing import Any, Dict, Iterable, List, NamedTuple, Optional, Protocol, Sequence, Tuple, Union

import numpy as np
import pandas as pd

from ..models.reports import DegreeReport
from ..utils.errors import ParseError

logger = logging.getLogger(__name__)

Real = Union[Fraction, float]

MERGE_TOL = 1e-9
SNAP_TOL = 1e-9


def as_real(value) -> Real:
    """Ints and Fractions become Fractions; floats stay floats."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, np.integer)):
        return Fraction(int(value))
    if isinstance(value, str):
        return Fraction(value)
    return float(value)


def _encode(value: Optional[Real]):
    if value is None:
        return None
    if isinstance(value, Fraction):
        return str(value)
    return float(value)


def _decode(value) -> Optional[Real]:
    if value is None:
        return None
    if isinstance(value, str):
        try:
            return Fraction(value)
        except ValueError:
            raise ParseError(f"Malformed rational {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    return float(value)


def _close(a: Real, b: Real, tol: float = MERGE_TOL) -> bool:
    if isinstance(a, Fraction) and isinstance(b, Fraction):
        return a == b
    return abs(float(a) - float(b)) <= tol * max(1.0, abs(float(a)), abs(float(b)))


def _fmt(value: Real) -> str:
    if isinstance(value, Fraction):
        return str(value.numerator) if value.denominator == 1 else f"{value.numerator}/{value.denominator}"
    if float(value).is_integer():
        return str(int(value))
    return f"{value:.12g}"


def _real_pow(base: Real, exponent: Real) -> Optional[Real]:
    """base^exponent, exact when both are rational and the exponent is integral."""
    if isinstance(base, Fraction) and isinstance(exponent, Fraction) and exponent.denominator == 1:
        return base ** int(exponent)
    return None


class Factor(NamedTuple):
    """max(c, t)^e with an optional exact rational shadow of c."""
    c: float
    e: Real
    exact: Optional[Fraction] = None


class Sampleable(Protocol):
    def value_at(self, t: float) -> Tuple[float, float]:
        ...


class MaxMonomialFn:
    """
    The function t -> C * t^r * prod max(c_i, t)^e_i on t > 0, or the zero function.

    Factors are kept canonical: sorted breakpoints, breakpoints within relative 1e-9
    merged, breakpoints within 1e-9 of 1 snapped to 1, zero exponents dropped.
    product_exact, when known, is prod c_i^e_i as an exact rational.
    """

    __slots__ = ("zero", "C", "r", "factors", "product_exact")

    def __init__(self, C: Real = Fraction(1), r: Real = Fraction(0), factors: Iterable = (),
                 product_exact: Optional[Fraction] = None, zero: bool = False):
        self.zero = zero
        if zero:
            self.C, self.r, self.factors, self.product_exact = Fraction(0), Fraction(0), (), None
            return
        C = as_real(C)
        if C <= 0:
            raise ValueError(f"C must be positive, got {C}")
        self.C = C
        self.r = as_real(r)
        self.factors: Tuple[Factor, ...] = self._canonical(factors)
        if product_exact is None:
            product_exact = self._exact_product()
        self.product_exact = product_exact

    @staticmethod
    def _canonical(raw: Iterable) -> Tuple[Factor, ...]:
        items: List[Factor] = []
        for f in raw:
            f = Factor(*f) if not isinstance(f, Factor) else f
            c, e, exact = float(f.c), as_real(f.e), f.exact
            if c <= 0:
                raise ValueError(f"Breakpoints must be positive, got {c}")
            if exact is None and abs(c - 1.0) <= SNAP_TOL:
                exact = Fraction(1)
            if exact is not None:
                exact = Fraction(exact)
                c = float(exact)
            items.append(Factor(c, e, exact))
        items.sort(key=lambda f: f.c)
        merged: List[Factor] = []
        for f in items:
            if merged and abs(f.c - merged[-1].c) <= MERGE_TOL * max(f.c, merged[-1].c):
                last = merged[-1]
                merged[-1] = Factor(last.c, last.e + f.e, last.exact if last.exact is not None else f.exact)
            else:
                merged.append(f)
        return tuple(f for f in merged if f.e != 0)

    def _exact_product(self) -> Optional[Fraction]:
        product = Fraction(1)
        for f in self.factors:
            if f.exact is None:
                return None
            term = _real_pow(f.exact, f.e)
            if term is None:
                return None
            product *= term
        return product

    @classmethod
    def zero_fn(cls) -> "MaxMonomialFn":
        return cls(zero=True)

    @classmethod
    def one(cls) -> "MaxMonomialFn":
        return cls()

    @classmethod
    def max_one(cls, exponent: Real = Fraction(1)) -> "MaxMonomialFn":
        """max(1, t)^exponent."""
        return cls(factors=[Factor(1.0, as_real(exponent), Fraction(1))])

    @classmethod
    def max_one_power(cls, s: Real) -> "MaxMonomialFn":
        """max(1, t^s) = max(1, t)^|s| * t^min(s, 0)."""
        s = as_real(s)
        if s == 0:
            return cls.one()
        return cls(r=min(s, 0 * s), factors=[Factor(1.0, abs(s), Fraction(1))])

    @property
    def exponent_sum(self) -> Real:
        return sum((f.e for f in self.factors), Fraction(0))

    def breakpoint_product(self) -> float:
        if self.product_exact is not None:
            return float(self.product_exact)
        return math.exp(sum(float(f.e) * math.log(f.c) for f in self.factors))

    def is_zero(self) -> bool:
        return self.zero

    def __call__(self, t):
        return self.evaluate(t)

    def evaluate(self, t):
        """Value at t > 0; accepts scalars or numpy arrays."""
        arr = np.asarray(t, dtype=float)
        if self.zero:
            out = np.zeros_like(arr)
        else:
            log = math.log(float(self.C)) + float(self.r) * np.log(arr)
            for f in self.factors:
                log = log + float(f.e) * np.log(np.maximum(f.c, arr))
            out = np.exp(log)
        return float(out) if np.ndim(out) == 0 else out

    def value_at(self, t: float) -> Tuple[float, float]:
        return self.evaluate(t), 0.0

    def __eq__(self, other) -> bool:
        if not isinstance(other, MaxMonomialFn):
            return NotImplemented
        if self.zero or other.zero:
            return self.zero == other.zero
        return _close(self.r, other.r) and equivalent(self, other)

    def __repr__(self) -> str:
        return f"MaxMonomialFn({self.display()})"

    def display(self) -> str:
        if self.zero:
            return "0"
        parts = []
        if self.C != 1:
            parts.append(_fmt(self.C))
        if self.r != 0:
            parts.append(f"t^{_fmt(self.r)}")
        for f in self.factors:
            c = _fmt(f.exact) if f.exact is not None else _fmt(f.c)
            parts.append(f"max({c},t)^{_fmt(f.e)}")
        return " * ".join(parts) if parts else "1"

    def to_json(self) -> Dict[str, Any]:
        if self.zero:
            return {"zero": True}
        return {
            "zero": False,
            "C": _encode(self.C),
            "r": _encode(self.r),
            "factors": [{"c": f.c, "c_exact": _encode(f.exact), "e": _encode(f.e)} for f in self.factors],
            "product_exact": _encode(self.product_exact),
            "display": self.display(),
        }

    @classmethod
    def from_json(cls, data: Union[str, Dict[str, Any]]) -> "MaxMonomialFn":
        if isinstance(data, str):
            try:
                data = json.loads(data)
            except json.JSONDecodeError as e:
                raise ParseError(f"Invalid torsion JSON: {e}")
        if data.get("zero"):
            return cls.zero_fn()
        try:
            factors = [Factor(float(f["c"]), _decode(f["e"]), _decode(f.get("c_exact")))
                       for f in data.get("factors", [])]
            return cls(_decode(data["C"]), _decode(data.get("r", "0")), factors,
                       product_exact=_decode(data.get("product_exact")))
        except (KeyError, TypeError) as e:
            raise ParseError(f"Malformed torsion JSON: {e}")


def equivalent(f: MaxMonomialFn, g: MaxMonomialFn) -> bool:
    """f = t^r g for some r: same constant, breakpoints and exponents."""
    if f.zero or g.zero:
        return f.zero and g.zero
    if not _close(f.C, g.C) or len(f.factors) != len(g.factors):
        return False
    for a, b in zip(f.factors, g.factors):
        if not _close(a.c, b.c) or not _close(a.e, b.e):
            return False
    return True


def degree(f: Union[MaxMonomialFn, "SampledFn"]) -> DegreeReport:
    if isinstance(f, SampledFn):
        return f.degree()
    if f.zero:
        return DegreeReport(deg0=math.inf, deg_inf=-math.inf, deg=-math.inf)
    total = f.exponent_sum
    return DegreeReport(
        deg0=float(f.r),
        deg_inf=float(f.r + total),
        deg=float(total),
        monomial_in_limit=True,
        monic=is_monic(f),
    )


def is_monic(f: MaxMonomialFn) -> bool:
    """Limit constants C (at infinity) and C * prod c_i^e_i (at 0) both equal one."""
    if f.zero:
        return False
    if isinstance(f.C, Fraction) and f.product_exact is not None:
        return f.C == 1 and f.C * f.product_exact == 1
    if not _close(f.C, 1):
        return False
    return abs(math.log(float(f.C)) + math.log(f.breakpoint_product())) <= MERGE_TOL


def _matches_inverse(factors: Sequence[Factor]) -> bool:
    remaining = list(factors)
    while remaining:
        f = remaining.pop(0)
        if f.exact is not None and f.exact == 1 or abs(f.c - 1.0) <= SNAP_TOL:
            continue
        target = 1.0 / f.c
        partner = next((i for i, g in enumerate(remaining)
                        if _close(g.c, target) and _close(g.e, f.e)), None)
        if partner is None:
            return False
        remaining.pop(partner)
    return True


def symmetry_exponent(f: MaxMonomialFn) -> Optional[Real]:
    """
    k with f(1/t) = t^k f(t) for all t, when it exists.

    Requires the breakpoint multiset to be invariant under c -> 1/c; then k = -2r - sum e.
    """
    if f.zero:
        return None
    if not _matches_inverse(f.factors):
        return None
    return -2 * f.r - f.exponent_sum


def symmetry_parity_ok(f: MaxMonomialFn, x: Real) -> Optional[bool]:
    """Whether the symmetry exponent is congruent to x mod 2 (None when not integral)."""
    k = symmetry_exponent(f)
    if k is None:
        return None
    k, x = as_real(k), as_real(x)
    if isinstance(k, Fraction) and isinstance(x, Fraction):
        if k.denominator != 1 or x.denominator != 1:
            return None
        return (k - x) % 2 == 0
    diff = float(k) - float(x)
    if abs(diff - round(diff)) > MERGE_TOL:
        return None
    return round(diff) % 2 == 0


def multiply(f: MaxMonomialFn, g: MaxMonomialFn) -> MaxMonomialFn:
    if f.zero or g.zero:
        return MaxMonomialFn.zero_fn()
    shadow = None
    if f.product_exact is not None and g.product_exact is not None:
        shadow = f.product_exact * g.product_exact
    return MaxMonomialFn(f.C * g.C, f.r + g.r, f.factors + g.factors, product_exact=shadow)


def product(parts: Iterable[MaxMonomialFn]) -> MaxMonomialFn:
    result = MaxMonomialFn.one()
    for part in parts:
        result = multiply(result, part)
    return result


def reparam_power(f: MaxMonomialFn, rho) -> MaxMonomialFn:
    """t -> f(t^rho), using max(c, t^rho)^e = max(c^(1/rho), t)^(rho e)."""
    rho = as_real(rho)
    if rho <= 0:
        raise ValueError(f"rho must be positive, got {rho}")
    if f.zero:
        return f
    factors = []
    for fac in f.factors:
        exact = None
        if fac.exact is not None:
            if fac.exact == 1:
                exact = Fraction(1)
            elif isinstance(rho, Fraction) and rho.numerator == 1:
                exact = fac.exact ** rho.denominator
        factors.append(Factor(fac.c ** (1.0 / float(rho)), rho * fac.e, exact))
    return MaxMonomialFn(f.C, rho * f.r, factors, product_exact=f.product_exact)


def reflect(f: MaxMonomialFn) -> MaxMonomialFn:
    """t -> f(1/t) = C P t^(-r - sum e) prod max(1/c, t)^e with P = prod c^e."""
    if f.zero:
        return f
    if f.product_exact is not None and isinstance(f.C, Fraction):
        constant = f.C * f.product_exact
        shadow = 1 / f.product_exact
    else:
        constant = float(f.C) * f.breakpoint_product()
        shadow = None
    factors = [Factor(1.0 / fac.c, fac.e, 1 / fac.exact if fac.exact is not None else None)
               for fac in f.factors]
    return MaxMonomialFn(constant, -f.r - f.exponent_sum, factors, product_exact=shadow)


def power(f: MaxMonomialFn, d: int) -> MaxMonomialFn:
    """Pointwise d-th power."""
    if d < 0:
        raise ValueError(f"power needs d >= 0, got {d}")
    if f.zero:
        return f if d else MaxMonomialFn.one()
    shadow = f.product_exact ** d if f.product_exact is not None else None
    return MaxMonomialFn(f.C ** d, f.r * d, [Factor(x.c, x.e * d, x.exact) for x in f.factors],
                         product_exact=shadow)


def inverse(f: MaxMonomialFn) -> MaxMonomialFn:
    """Pointwise reciprocal 1/f."""
    if f.zero:
        raise ZeroDivisionError("The zero function has no reciprocal")
    shadow = 1 / f.product_exact if f.product_exact is not None else None
    return MaxMonomialFn(1 / f.C, -f.r, [Factor(x.c, -x.e, x.exact) for x in f.factors],
                         product_exact=shadow)


def normalize_r(f: MaxMonomialFn) -> MaxMonomialFn:
    """The representative of f's class with r = 0."""
    if f.zero:
        return f
    return MaxMonomialFn(f.C, Fraction(0), f.factors, product_exact=f.product_exact)


def _fit(logt: np.ndarray, logv: np.ndarray):
    n = logt.size
    mean_t, mean_v = logt.mean(), logv.mean()
    sxx = float(np.sum((logt - mean_t) ** 2))
    slope = float(np.sum((logt - mean_t) * (logv - mean_v)) / sxx)
    intercept = mean_v - slope * mean_t
    resid = logv - (intercept + slope * logt)
    stderr = math.sqrt(float(np.sum(resid ** 2)) / (n - 2) / sxx) if n > 2 else 0.0
    return slope, float(intercept), stderr, float(np.max(np.abs(resid)))


class SampledFn:
    """
    Function values on a log-spaced t grid, with per-point error estimates.
    """

    def __init__(self, t: Sequence[float], value: Sequence[float], err: Optional[Sequence[float]] = None):
        self.t = np.asarray(t, dtype=float)
        self.value = np.asarray(value, dtype=float)
        self.err = np.zeros_like(self.t) if err is None else np.asarray(err, dtype=float)
        if self.t.shape != self.value.shape or self.t.shape != self.err.shape:
            raise ValueError("t, value and err must have equal length")
        if np.any(self.t <= 0) or np.any(np.diff(self.t) <= 0):
            raise ValueError("t must be positive and strictly increasing")
        if np.any(self.value < 0):
            raise ValueError("Sampled values must be nonnegative")

    def __len__(self) -> int:
        return int(self.t.size)

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame({"t": self.t, "value": self.value, "err": self.err})

    def to_csv(self, path=None) -> Optional[str]:
        return self.to_frame().to_csv(path, index=False)

    @classmethod
    def from_csv(cls, path) -> "SampledFn":
        frame = pd.read_csv(path)
        missing = {"t", "value", "err"} - set(frame.columns)
        if missing:
            raise ParseError(f"CSV is missing columns {sorted(missing)}")
        return cls(frame["t"], frame["value"], frame["err"])

    def to_json(self) -> Dict[str, Any]:
        return {"rows": self.to_frame().to_dict(orient="records")}

    def degree(self) -> DegreeReport:
        """
        Least-squares slopes of log value against log t over the first and last quartile.
        """
        positive = self.value > 0
        if not np.any(positive):
            return DegreeReport(deg0=math.inf, deg_inf=-math.inf, deg=-math.inf)
        t, v = self.t[positive], self.value[positive]
        window = max(2, t.size // 4)
        logt, logv = np.log(t), np.log(v)
        s0, i0, e0, r0 = _fit(logt[:window], logv[:window])
        s1, i1, e1, r1 = _fit(logt[-window:], logv[-window:])
        return DegreeReport(
            deg0=s0,
            deg_inf=s1,
            deg=s1 - s0,
            monomial_in_limit=max(r0, r1) < 1e-6,
            monic=abs(i0) < 1e-6 and abs(i1) < 1e-6,
            stderr0=e0,
            stderr_inf=e1,
            window=f"first/last {window} of {t.size} points",
        )


def sample(f: Sampleable, tmin: float, tmax: float, n: int) -> SampledFn:
    """Evaluate on a log-spaced grid of n points in [tmin, tmax]."""
    if not 0 < tmin < tmax:
        raise ValueError(f"Need 0 < tmin < tmax, got {tmin}, {tmax}")
    if n < 2:
        raise ValueError(f"Need at least two samples, got {n}")
    grid = np.geomspace(tmin, tmax, n)
    if isinstance(f, MaxMonomialFn):
        return SampledFn(grid, f.evaluate(grid))
    pairs = [f.value_at(float(t)) for t in grid]
    return SampledFn(grid, [v for v, _ in pairs], [e for _, e in pairs])
