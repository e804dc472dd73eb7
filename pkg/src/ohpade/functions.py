"""Analytic test functions with declared singularities.

Functions are finite sums of primitive terms: poles ``c / (z - a)^k``,
polynomials, exponentials ``c exp(l z)``, logarithms ``c log(a - z)`` and
branch powers ``c (a - z)^g`` (principal branches, cut along
``a + [0, inf)``).  Every term declares its singularities, so radius
computations and contour placement never need numerical singularity hunting.
Terms also expose exact Maclaurin coefficients, which drive the classical
(Taylor-based) solver used as an oracle on the circle.
"""

from __future__ import annotations

import dataclasses
import math
from math import comb

import numpy as np

from .domain import ConformalMap, Domain
from .errors import ParameterError, UnsupportedInputError


@dataclasses.dataclass(frozen=True)
class Singularity:
    location: complex
    kind: str  # "pole" | "branch"
    order: int = 0  # pole order; 0 for branch points


def _c(value) -> complex:
    return complex(value)


def _fmt(value: complex) -> list[float]:
    return [float(np.real(value)), float(np.imag(value))]


def _z(z) -> np.ndarray:
    """Coerce to a complex array, preserving extended precision inputs."""
    arr = np.asarray(z)
    if arr.dtype.kind != "c":
        arr = arr.astype(complex)
    return arr


def _parse_c(value) -> complex:
    if isinstance(value, (list, tuple)):
        if len(value) != 2:
            raise ParameterError(f"complex values serialize as [re, im], got {value!r}")
        return complex(float(value[0]), float(value[1]))
    return complex(value)


@dataclasses.dataclass(frozen=True)
class PoleTerm:
    """``coeff / (z - a)^order``."""

    a: complex
    order: int = 1
    coeff: complex = 1.0

    def __post_init__(self):
        if self.order < 1:
            raise ParameterError("pole order must be at least 1")
        object.__setattr__(self, "a", _c(self.a))
        object.__setattr__(self, "coeff", _c(self.coeff))

    def __call__(self, z):
        return self.coeff / (_z(z) - self.a) ** self.order

    def singularities(self):
        return [Singularity(self.a, "pole", self.order)]

    def taylor(self, upto: int) -> np.ndarray:
        # 1/(z-a)^k = (-1)^k a^(-k) sum_t C(t+k-1, k-1) (z/a)^t
        k = self.order
        t = np.arange(upto + 1)
        binom = np.array([comb(tt + k - 1, k - 1) for tt in t], dtype=float)
        return self.coeff * (-1.0) ** k * binom * self.a ** (-(k + t.astype(float)))

    def to_config(self):
        return {"pole": {"a": _fmt(self.a), "order": self.order, "coeff": _fmt(self.coeff)}}


@dataclasses.dataclass(frozen=True)
class PolyTerm:
    """Polynomial with monomial coefficients ``coeffs[j] z^j``."""

    coeffs: tuple

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(_c(c) for c in self.coeffs))
        if len(self.coeffs) == 0:
            raise ParameterError("polynomial needs at least one coefficient")

    def __call__(self, z):
        arr = _z(z)
        out = np.zeros_like(arr)
        for c in reversed(self.coeffs):
            out = out * arr + c
        return out

    def singularities(self):
        return []

    def taylor(self, upto: int) -> np.ndarray:
        out = np.zeros(upto + 1, dtype=complex)
        upper = min(upto + 1, len(self.coeffs))
        out[:upper] = self.coeffs[:upper]
        return out

    def to_config(self):
        return {"poly": {"coeffs": [_fmt(c) for c in self.coeffs]}}


@dataclasses.dataclass(frozen=True)
class ExpTerm:
    """``coeff exp(rate z)`` (entire)."""

    rate: complex = 1.0
    coeff: complex = 1.0

    def __post_init__(self):
        object.__setattr__(self, "rate", _c(self.rate))
        object.__setattr__(self, "coeff", _c(self.coeff))

    def __call__(self, z):
        return self.coeff * np.exp(self.rate * _z(z))

    def singularities(self):
        return []

    def taylor(self, upto: int) -> np.ndarray:
        out = np.empty(upto + 1, dtype=complex)
        term = self.coeff + 0j
        for t in range(upto + 1):
            out[t] = term
            term = term * self.rate / (t + 1)
        return out

    def to_config(self):
        return {"exp": {"lambda": _fmt(self.rate), "coeff": _fmt(self.coeff)}}


@dataclasses.dataclass(frozen=True)
class LogTerm:
    """``coeff log(a - z)``, principal branch (cut ``a + [0, inf)``)."""

    a: complex
    coeff: complex = 1.0

    def __post_init__(self):
        object.__setattr__(self, "a", _c(self.a))
        object.__setattr__(self, "coeff", _c(self.coeff))

    def __call__(self, z):
        return self.coeff * np.log(self.a - _z(z))

    def singularities(self):
        return [Singularity(self.a, "branch")]

    def taylor(self, upto: int) -> np.ndarray:
        # log(a - z) = log a - sum_{t>=1} z^t / (t a^t)
        out = np.empty(upto + 1, dtype=complex)
        out[0] = np.log(complex(self.a))
        t = np.arange(1, upto + 1, dtype=float)
        out[1:] = -(self.a ** (-t)) / t
        return self.coeff * out

    def to_config(self):
        return {"log": {"a": _fmt(self.a), "coeff": _fmt(self.coeff)}}


@dataclasses.dataclass(frozen=True)
class PowTerm:
    """``coeff (a - z)^gamma``, principal branch (cut ``a + [0, inf)``)."""

    a: complex
    gamma: float
    coeff: complex = 1.0

    def __post_init__(self):
        object.__setattr__(self, "a", _c(self.a))
        object.__setattr__(self, "coeff", _c(self.coeff))
        object.__setattr__(self, "gamma", float(self.gamma))

    def __call__(self, z):
        return self.coeff * (self.a - _z(z)) ** self.gamma

    def singularities(self):
        if self.gamma >= 0 and float(self.gamma).is_integer():
            return []
        return [Singularity(self.a, "branch")]

    def taylor(self, upto: int) -> np.ndarray:
        # (a - z)^g = a^g sum_t C(g, t) (-1/a)^t z^t with generalized binomials
        out = np.empty(upto + 1, dtype=complex)
        lead = complex(self.a) ** self.gamma
        binom = 1.0
        for t in range(upto + 1):
            out[t] = lead * binom * (-1.0 / self.a) ** t
            binom = binom * (self.gamma - t) / (t + 1)
        return self.coeff * out

    def to_config(self):
        return {"pow": {"a": _fmt(self.a), "gamma": self.gamma, "coeff": _fmt(self.coeff)}}


_TERM_TYPES = {"pole": PoleTerm, "poly": PolyTerm, "exp": ExpTerm, "log": LogTerm, "pow": PowTerm}


@dataclasses.dataclass(frozen=True)
class AnalyticFunction:
    """Finite sum of primitive terms; immutable and vectorized."""

    terms: tuple
    label: str = ""

    def __post_init__(self):
        object.__setattr__(self, "terms", tuple(self.terms))
        if len(self.terms) == 0:
            raise ParameterError("a function needs at least one term")

    def __call__(self, z):
        arr = _z(z)
        out = np.zeros_like(arr)
        for term in self.terms:
            out = out + term(arr)
        return out

    # -- singular structure -------------------------------------------------

    def singularities(self) -> list[Singularity]:
        """Declared singularities, poles merged by location."""
        poles: dict[complex, tuple[int, complex]] = {}
        branches: dict[complex, Singularity] = {}
        for term in self.terms:
            for s in term.singularities():
                if s.kind == "pole":
                    order, coeff = poles.get(s.location, (0, 0.0))
                    poles[s.location] = (max(order, s.order), coeff)
                else:
                    branches[s.location] = s
        out = [Singularity(a, "pole", order) for a, (order, _) in poles.items()]
        out.extend(branches.values())
        out.sort(key=lambda s: (s.location.real, s.location.imag))
        return out

    def rho0(self, cmap: ConformalMap) -> float:
        """Index of the largest canonical domain avoiding all singularities."""
        sings = self.singularities()
        if not sings:
            return math.inf
        return float(min(np.asarray(cmap.abs_phi(s.location)) for s in sings))

    def polynomial_degree(self) -> int:
        """Degree of the polynomial part (-1 if absent)."""
        deg = -1
        for term in self.terms:
            if isinstance(term, PolyTerm):
                deg = max(deg, len(term.coeffs) - 1)
        return deg

    # -- exact series and rational structure --------------------------------

    def taylor(self, upto: int) -> np.ndarray:
        """Maclaurin coefficients ``0 .. upto`` (exact formulas per term)."""
        for s in self.singularities():
            if abs(s.location) == 0:
                raise ParameterError("Maclaurin series undefined: singularity at the origin")
        out = np.zeros(upto + 1, dtype=complex)
        for term in self.terms:
            out += term.taylor(upto)
        return out

    def is_rational(self) -> bool:
        return all(isinstance(t, (PoleTerm, PolyTerm)) for t in self.terms)

    def rational_parts(self):
        """Polynomial coefficients and principal parts ``{a: {order: coeff}}``.

        Raises ``UnsupportedInputError`` for non-rational functions; used by
        the exact polynomial-independence test.
        """
        if not self.is_rational():
            raise UnsupportedInputError("rational structure requested for a non-rational function")
        poly = [0j]
        principal: dict[complex, dict[int, complex]] = {}
        for term in self.terms:
            if isinstance(term, PolyTerm):
                if len(term.coeffs) > len(poly):
                    poly.extend([0j] * (len(term.coeffs) - len(poly)))
                for j, c in enumerate(term.coeffs):
                    poly[j] += c
            else:
                parts = principal.setdefault(term.a, {})
                parts[term.order] = parts.get(term.order, 0j) + term.coeff
        return poly, principal

    def check_analytic_on(self, domain: Domain, margin: float = 1e-9):
        """Raise unless every declared singularity lies strictly outside ``E``."""
        cmap = ConformalMap(domain)
        for s in self.singularities():
            if float(np.asarray(cmap.abs_phi(s.location))) <= 1.0 + margin:
                raise ParameterError(
                    f"singularity at {s.location} does not lie outside the domain"
                )

    # -- serialization ------------------------------------------------------

    def to_config(self) -> dict:
        return {"sum": [t.to_config() for t in self.terms]}

    @classmethod
    def from_config(cls, cfg: dict, label: str = "") -> "AnalyticFunction":
        if not isinstance(cfg, dict):
            raise ParameterError(f"function config must be a dict, got {cfg!r}")
        entries = cfg["sum"] if "sum" in cfg else [cfg]
        terms = []
        for entry in entries:
            if not isinstance(entry, dict) or len(entry) != 1:
                raise ParameterError(f"each term must be a single-key dict, got {entry!r}")
            (kind, body), = entry.items()
            if kind not in _TERM_TYPES:
                raise ParameterError(f"unknown term kind {kind!r}")
            terms.append(_term_from_config(kind, body))
        return cls(terms=tuple(terms), label=label)


def _term_from_config(kind: str, body: dict):
    if kind == "pole":
        return PoleTerm(
            a=_parse_c(body["a"]),
            order=int(body.get("order", 1)),
            coeff=_parse_c(body.get("coeff", 1.0)),
        )
    if kind == "poly":
        return PolyTerm(coeffs=tuple(_parse_c(c) for c in body["coeffs"]))
    if kind == "exp":
        return ExpTerm(rate=_parse_c(body.get("lambda", 1.0)), coeff=_parse_c(body.get("coeff", 1.0)))
    if kind == "log":
        return LogTerm(a=_parse_c(body["a"]), coeff=_parse_c(body.get("coeff", 1.0)))
    return PowTerm(
        a=_parse_c(body["a"]), gamma=float(body["gamma"]), coeff=_parse_c(body.get("coeff", 1.0))
    )


# -- convenience constructors ----------------------------------------------


def pole(a, order: int = 1, coeff=1.0) -> AnalyticFunction:
    return AnalyticFunction(terms=(PoleTerm(a=a, order=order, coeff=coeff),))


def from_terms(*terms, label: str = "") -> AnalyticFunction:
    flat = []
    for t in terms:
        if isinstance(t, AnalyticFunction):
            flat.extend(t.terms)
        else:
            flat.append(t)
    return AnalyticFunction(terms=tuple(flat), label=label)
