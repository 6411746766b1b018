from typing import Any, Dict, List, Literal, Optional
from pydantic import BaseModel, ConfigDict, Field, model_validator


class GrowthRateReport(BaseModel):
    """
    Upper bounds for the growth rate h(A) of a square group-ring matrix.
    """
    model_config = ConfigDict(frozen=True)

    values: List[float] = Field(..., description="(||A^k||_1)^(1/k) bounds for k = 1..k_max")
    sources: List[str] = Field(..., description="exact, majorant or submultiplicative per k")
    running_min: List[float] = Field(..., description="Running minimum of the bounds (nonincreasing)")

    @property
    def upper(self) -> float:
        return self.running_min[-1]

    @property
    def k_used(self) -> int:
        """Smallest k attaining the final running minimum."""
        return self.values.index(self.running_min[-1]) + 1


class RootData(BaseModel):
    """
    Root moduli of a one-variable Laurent polynomial C * z^m * prod (z - a_i).
    """
    model_config = ConfigDict(frozen=True)

    leading_abs: float = Field(..., description="|C|, absolute leading coefficient")
    leading_exact: Optional[str] = Field(None, description="|C| as an exact rational")
    shift: int = Field(..., description="m, the trailing exponent")
    moduli: List[float] = Field(default_factory=list, description="Root moduli, one per distinct root")
    multiplicities: List[int] = Field(default_factory=list, description="Multiplicity per modulus entry")
    errors: List[float] = Field(default_factory=list, description="Certified absolute error per modulus")
    product_exact: Optional[str] = Field(None, description="prod |a_i| = |trailing / leading| exactly")

    @property
    def degree(self) -> int:
        return sum(self.multiplicities)


class MahlerValue(BaseModel):
    """
    A Mahler measure (or regular Fuglede-Kadison determinant) with an error estimate.
    """
    model_config = ConfigDict(frozen=True)

    value: float = Field(..., ge=0.0, description="The measure")
    err: float = Field(0.0, ge=0.0, description="Error estimate; 0 for exact Jensen evaluations")
    method: Literal["jensen", "quadrature"] = Field("jensen", description="Evaluation route")
    skipped: int = Field(0, description="Quadrature points skipped because |p| underflowed")
    low_confidence: bool = Field(False, description="More than 0.1% of the grid was skipped")
    note: Optional[str] = Field(None, description="Free-form remark")

    @model_validator(mode="before")
    @classmethod
    def _clamp_err(cls, data):
        # value - err >= 0
        if isinstance(data, dict) and "err" in data and "value" in data:
            if data["err"] > data["value"]:
                data = {**data, "err": data["value"]}
        return data


class DegreeReport(BaseModel):
    """
    Degrees of a function R+ -> [0, inf) at 0 and at infinity.
    """
    model_config = ConfigDict(frozen=True, ser_json_inf_nan="constants")

    deg0: float = Field(..., description="Degree at 0 (+inf for the zero function)")
    deg_inf: float = Field(..., description="Degree at infinity (-inf for the zero function)")
    deg: float = Field(..., description="deg_inf - deg_0, or -inf when undefined")
    monomial_in_limit: bool = Field(False, description="Monomial in the limit at both ends")
    monic: bool = Field(False, description="Both limit constants equal one")
    stderr0: Optional[float] = Field(None, description="Slope standard error at 0 (sampled only)")
    stderr_inf: Optional[float] = Field(None, description="Slope standard error at infinity (sampled only)")
    window: Optional[str] = Field(None, description="Regression window used for sampled estimates")


class ProbeCheck(BaseModel):
    """One probe evaluation used to sanity-check a certificate."""
    model_config = ConfigDict(frozen=True)

    t: float
    value: float
    expected: float
    ok: bool


class FiberedCertificate(BaseModel):
    """
    Certificate for the two-regime shape of the torsion of a fibered class.
    """
    model_config = ConfigDict(frozen=True)

    x: int = Field(..., description="Thurston norm -chi(fiber), supplied explicitly")
    t_upper: float = Field(..., ge=1.0, description="Certified upper bound for the entropy window")
    k_used: int = Field(..., description="Power attaining the bound")
    representative: str = Field(..., description="Shape of the representative outside the window")
    abelian_lower: float = Field(1.0, description="Spectral radius of the abelianized monodromy action")
    growth: Optional[GrowthRateReport] = None
    entropy_estimates: List[float] = Field(default_factory=list,
                                           description="max_i len(f^m(g_i))^(1/m) for m = 1, 2, ...")
    probes: List[ProbeCheck] = Field(default_factory=list, description="Bordered-fiber complex at 1/(2T) and 2T")
    closed_checks: List[ProbeCheck] = Field(default_factory=list,
                                            description="Three-term mapping-torus complex at the same t")
    sanity_ok: bool = True
    unverified: str = Field("continuity and convexity on [1/T, T] are not verified",
                            description="Region the certificate says nothing about")


class BasicCaseReport(BaseModel):
    """
    Check of det(P - t z Q) = 1 below 1/T and t^n above T.
    """
    model_config = ConfigDict(frozen=True)

    n: int
    t_hat: float
    grid: List[float]
    values: List[float]
    low_ok: bool
    high_ok: bool
    failures: List[float] = Field(default_factory=list)


class NormEntry(BaseModel):
    """Degree of the torsion in one direction and the Thurston-norm statement it implies."""
    model_config = ConfigDict(frozen=True)

    direction: List[int]
    width: Optional[int] = None
    degree: Optional[float] = None
    statement: str


class NormReport(BaseModel):
    """Alexander-norm degrees over a list of directions with norm-axiom checks."""
    model_config = ConfigDict(frozen=True)

    entries: List[NormEntry]
    vanishes: bool = False
    homogeneous: bool = True
    triangle: bool = True


class UnknotVerdict(BaseModel):
    """Necessary-condition unknot test with the abelian coefficient system."""
    model_config = ConfigDict(frozen=True)

    verdict: Literal["consistent-with-unknot", "not-unknot"]
    caveat: Optional[str] = None


class TorsionReport(BaseModel):
    """
    JSON torsion report emitted by the pipelines and the CLI.
    """
    model_config = ConfigDict(frozen=True, ser_json_inf_nan="constants")

    coefficient_system: str = Field(..., description="Which gamma the torsion was computed for")
    exact: Optional[Dict[str, Any]] = Field(None, description="Exact max-monomial form")
    display: Optional[str] = Field(None, description="Human readable exact form")
    degree: Optional[DegreeReport] = None
    monic: Optional[bool] = None
    symmetry_exponent: Optional[float] = None
    symmetry_parity_ok: Optional[bool] = None
    alexander_polynomial: Optional[str] = None
    certificates: Dict[str, Any] = Field(default_factory=dict)
    caveats: List[str] = Field(default_factory=list)
    verdict: Optional[UnknotVerdict] = None
