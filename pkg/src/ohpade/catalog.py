"""Benchmark systems with hand-derived ground truth.

Every quantitative claim an entry makes (limit denominator, pole radii,
predicted rate, capture targets) is stated in its ``note`` as a short
derivation from first principles: locate the singularities, evaluate the
exterior map, and take the governing ratio.  The test suite recomputes each
derivable number independently, so the catalog is data, not authority.

Pole moduli within one entry are kept equal where exact recovery is tested:
that keeps the direction spread of the defining matrix independent of the
order ``n``, so roundoff in the coefficients does not get amplified as the
entries decay.
"""

from __future__ import annotations

import dataclasses
import math

from .basis import MeasureSpec, circle_measure, interval_measure
from .domain import ConformalMap
from .errors import ParameterError
from .functions import AnalyticFunction, ExpTerm, LogTerm, PoleTerm, PolyTerm, PowTerm, from_terms
from .poles import GroundTruth, SystemPoleSpec, predicted_theta
from .solver import FunctionSystem, MultiIndex

PHI_15 = 1.5 + math.sqrt(1.25)
PHI_2 = 2.0 + math.sqrt(3.0)
PHI_3 = 3.0 + math.sqrt(8.0)


@dataclasses.dataclass(frozen=True)
class CatalogEntry:
    """One benchmark system: measure, functions, expectations, derivation."""

    entry_id: str
    title: str
    measure: MeasureSpec
    system: FunctionSystem
    truth: GroundTruth
    note: str
    tags: tuple = ()
    default_n_range: tuple = (10, 30)
    m_star: int | None = None
    capture_targets: tuple = ()
    capture_rate_bound: float | None = None

    @property
    def cmap(self) -> ConformalMap:
        return ConformalMap(self.measure.domain)

    @property
    def is_complete(self) -> bool:
        return self.truth.total_order == self.system.multi_index.total

    @property
    def theta(self) -> float | None:
        """Predicted denominator rate; None when the ground truth is partial."""
        if not self.is_complete:
            return None
        return predicted_theta(self.truth, self.cmap, require_total=self.system.multi_index.total)


@dataclasses.dataclass(frozen=True)
class RadiusCase:
    """A function whose largest domain of holomorphy is known in closed form."""

    case_id: str
    measure: MeasureSpec
    fn: AnalyticFunction
    rho_true: float
    note: str


def _sys(functions, m) -> FunctionSystem:
    return FunctionSystem(functions=tuple(functions), multi_index=MultiIndex(tuple(m)))


def _build_entries() -> dict:
    circle = circle_measure()
    cheb = interval_measure("chebyshev")

    entries = [
        CatalogEntry(
            entry_id="circle_theta06",
            title="single function, one tracked pole, rate 0.6 on the circle",
            measure=circle,
            system=_sys(
                [from_terms(PoleTerm(a=1.2), PoleTerm(a=2.0), label="F1")],
                (1,),
            ),
            truth=GroundTruth(
                poles=(SystemPoleSpec(xi=1.2, tau=1, rho_list=(2.0,)),),
                q_exact=(-1.2, 1.0),
                rho_star=((0, 0, 2.0),),
            ),
            note=(
                "F = 1/(z-1.2) + 1/(z-2) has simple poles at 1.2 and 2 only. "
                "With denominator degree 1 the weight polynomials are scalars, "
                "so the pole budget of one is spent on the nearest pole 1.2, and "
                "F stays meromorphic with one pole exactly up to |z| = 2. On the "
                "unit circle the exterior map is the identity, giving rate "
                "|1.2| / 2 = 0.6 for the denominator error and limit "
                "denominator z - 1.2. Approximation of F itself converges on "
                "compact sets at max(1, |z|) / 2."
            ),
            tags=("rate", "circle"),
            default_n_range=(5, 30),
        ),
        CatalogEntry(
            entry_id="interval_theta",
            title="single function, one tracked pole, Joukowski rate on [-1, 1]",
            measure=cheb,
            system=_sys(
                [from_terms(PoleTerm(a=1.5), PoleTerm(a=3.0), label="F1")],
                (1,),
            ),
            truth=GroundTruth(
                poles=(SystemPoleSpec(xi=1.5, tau=1, rho_list=(PHI_3,)),),
                q_exact=(-1.5, 1.0),
                rho_star=((0, 0, PHI_3),),
            ),
            note=(
                "F = 1/(z-1.5) + 1/(z-3) on [-1, 1]. The exterior map is "
                "phi(t) = t + sqrt(t-1)sqrt(t+1), so phi(1.5) = 1.5 + "
                "sqrt(1.25) ~= 2.618034 and phi(3) = 3 + sqrt(8) ~= 5.828427. "
                "The single-pole budget goes to 1.5; meromorphy with one pole "
                "extends to the level curve through 3, hence rate "
                "phi(1.5)/phi(3) ~= 0.449183 and limit denominator z - 1.5."
            ),
            tags=("rate", "interval"),
            default_n_range=(5, 30),
        ),
        CatalogEntry(
            entry_id="interval_mixed",
            title="pole plus logarithmic branch point on [-1, 1]",
            measure=cheb,
            system=_sys(
                [from_terms(PoleTerm(a=1.6), LogTerm(a=3.0), label="F1")],
                (1,),
            ),
            truth=GroundTruth(
                poles=(SystemPoleSpec(xi=1.6, tau=1, rho_list=(PHI_3,)),),
                q_exact=(-1.6, 1.0),
                rho_star=((0, 0, PHI_3),),
            ),
            note=(
                "F = 1/(z-1.6) + log(3-z) on [-1, 1]: one pole at 1.6 and a "
                "branch point at 3. No polynomial multiple removes the branch "
                "point, so meromorphy with one pole stops at the level curve "
                "through 3: rate phi(1.6)/phi(3) = (1.6+sqrt(1.56))/(3+sqrt(8)) "
                "~= 0.488811 and limit denominator z - 1.6."
            ),
            tags=("rate", "interval", "branch"),
            default_n_range=(5, 30),
        ),
        CatalogEntry(
            entry_id="rational_exact",
            title="two rational components, three poles, exact recovery",
            measure=circle,
            system=_sys(
                [
                    from_terms(
                        PoleTerm(a=1.25, coeff=2.0), PoleTerm(a=-1.25), label="F1"
                    ),
                    from_terms(PoleTerm(a=1.25j), label="F2"),
                ],
                (2, 1),
            ),
            truth=GroundTruth(
                poles=(
                    SystemPoleSpec(xi=-1.25, tau=1, rho_list=(math.inf,)),
                    SystemPoleSpec(xi=1.25, tau=1, rho_list=(math.inf,)),
                    SystemPoleSpec(xi=1.25j, tau=1, rho_list=(math.inf,)),
                ),
                q_exact=(1.953125j, -1.5625, -1.25j, 1.0),
                exact_from=4,
                rho_star=((0, 0, math.inf), (1, 0, math.inf)),
            ),
            note=(
                "F1 = 2/(z-1.25) + 1/(z+1.25), F2 = 1/(z-1.25j), orders (2, 1): "
                "three simple poles, all of modulus 1.25, matching the total "
                "budget of 3. Every component is rational, so suitable "
                "combinations are entire apart from the poles (all radii "
                "infinite, rate 0) and the limit denominator is exactly "
                "(z-1.25)(z+1.25)(z-1.25j) = z^3 - 1.25j z^2 - 1.5625 z + "
                "1.953125j. Multiplying out, z^k Q F_i is a polynomial of "
                "degree <= 3, so its coefficients of index >= 4 vanish and "
                "recovery is exact from n = 4 on. Unequal residues keep the "
                "order-0 coefficients nonzero, avoiding structural rank drops "
                "at small n."
            ),
            tags=("exact", "circle", "d2"),
            default_n_range=(10, 40),
        ),
        CatalogEntry(
            entry_id="quad_exact",
            title="two rational components, four poles, exact recovery",
            measure=circle,
            system=_sys(
                [
                    from_terms(
                        PoleTerm(a=1.25, coeff=2.0), PoleTerm(a=-1.25), label="F1"
                    ),
                    from_terms(
                        PoleTerm(a=1.25j), PoleTerm(a=-1.25j, coeff=2.0), label="F2"
                    ),
                ],
                (2, 2),
            ),
            truth=GroundTruth(
                poles=(
                    SystemPoleSpec(xi=-1.25, tau=1, rho_list=(math.inf,)),
                    SystemPoleSpec(xi=1.25, tau=1, rho_list=(math.inf,)),
                    SystemPoleSpec(xi=-1.25j, tau=1, rho_list=(math.inf,)),
                    SystemPoleSpec(xi=1.25j, tau=1, rho_list=(math.inf,)),
                ),
                q_exact=(-2.44140625, 0.0, 0.0, 0.0, 1.0),
                exact_from=5,
                rho_star=((0, 0, math.inf), (1, 0, math.inf)),
            ),
            note=(
                "F1 = 2/(z-1.25) + 1/(z+1.25), F2 = 1/(z-1.25j) + 2/(z+1.25j), "
                "orders (2, 2): four simple poles at the fourth roots of "
                "1.25^4 scaled, all of modulus 1.25. The limit denominator is "
                "(z^2-1.5625)(z^2+1.5625) = z^4 - 2.44140625; z^k Q F_i has "
                "degree <= 4, so recovery is exact from n = 5 on and the rate "
                "is 0."
            ),
            tags=("exact", "circle", "d2"),
            default_n_range=(10, 40),
        ),
        CatalogEntry(
            entry_id="circle_theta_d2",
            title="two components, distinct tracked poles, rate 0.7",
            measure=circle,
            system=_sys(
                [
                    from_terms(PoleTerm(a=1.2), PoleTerm(a=2.0), label="F1"),
                    from_terms(PoleTerm(a=-1.4), PoleTerm(a=2.0), label="F2"),
                ],
                (1, 1),
            ),
            truth=GroundTruth(
                poles=(
                    SystemPoleSpec(xi=-1.4, tau=1, rho_list=(2.0,)),
                    SystemPoleSpec(xi=1.2, tau=1, rho_list=(2.0,)),
                ),
                q_exact=(-1.68, 0.2, 1.0),
                rho_star=((0, 0, 2.0), (1, 0, 2.0)),
            ),
            note=(
                "F1 = 1/(z-1.2) + 1/(z-2) and F2 = 1/(z+1.4) + 1/(z-2) with "
                "orders (1, 1). Taking one component alone (the other weight "
                "zero) shows 1.2 and -1.4 are system poles whose meromorphy "
                "radius is capped by the shared pole at 2. The limit "
                "denominator is (z-1.2)(z+1.4) = z^2 + 0.2 z - 1.68 and the "
                "rate is max(1.2, 1.4)/2 = 0.7."
            ),
            tags=("rate", "circle", "d2"),
            default_n_range=(5, 30),
        ),
        CatalogEntry(
            entry_id="circle_shared_d2",
            title="two components sharing a pole, exact recovery",
            measure=circle,
            system=_sys(
                [
                    from_terms(PoleTerm(a=1.5), label="F1"),
                    from_terms(PoleTerm(a=1.5), PoleTerm(a=-2.0), label="F2"),
                ],
                (1, 1),
            ),
            truth=GroundTruth(
                poles=(
                    SystemPoleSpec(xi=-2.0, tau=1, rho_list=(math.inf,)),
                    SystemPoleSpec(xi=1.5, tau=1, rho_list=(math.inf,)),
                ),
                q_exact=(-3.0, 0.5, 1.0),
                exact_from=2,
                rho_star=((0, 0, math.inf), (1, 0, math.inf)),
            ),
            note=(
                "F1 = 1/(z-1.5), F2 = 1/(z-1.5) + 1/(z+2), orders (1, 1). F1 "
                "exhibits the pole 1.5 with no other singularity; the "
                "combination F2 - F1 = 1/(z+2) isolates -2. Both radii are "
                "infinite, the limit denominator is (z-1.5)(z+2) = "
                "z^2 + 0.5 z - 3, and Q F_i are polynomials of degree <= 1, so "
                "recovery is exact from n = 2 on."
            ),
            tags=("exact", "circle", "d2", "shared"),
            default_n_range=(5, 30),
        ),
        CatalogEntry(
            entry_id="dup_pair",
            title="duplicated function: non-unique by construction",
            measure=circle,
            system=_sys(
                [
                    from_terms(PoleTerm(a=2.0), label="F1"),
                    from_terms(PoleTerm(a=2.0), label="F2"),
                ],
                (1, 1),
            ),
            truth=GroundTruth(
                poles=(SystemPoleSpec(xi=2.0, tau=1, rho_list=(math.inf,)),),
                q_exact=None,
                unique=False,
            ),
            note=(
                "F1 = F2 = 1/(z-2). The two defining rows are identical, so "
                "the matrix has rank <= 1 and the nullspace dimension is at "
                "least 2 for every order: the solver must flag non-uniqueness "
                "throughout. The weights v1 = 1, v2 = -1 give the zero "
                "function, so the pair is polynomially dependent, and only "
                "one system pole (at 2) exists against a budget of 2."
            ),
            tags=("degenerate", "circle"),
            default_n_range=(10, 30),
        ),
        CatalogEntry(
            entry_id="poly_dep_subtle",
            title="dependence through a polynomial remainder",
            measure=circle,
            system=_sys(
                [
                    from_terms(PoleTerm(a=2.0), label="F1"),
                    from_terms(PolyTerm(coeffs=(1.0,)), PoleTerm(a=2.0, coeff=2.0), label="F2"),
                ],
                (1, 1),
            ),
            truth=GroundTruth(
                poles=(SystemPoleSpec(xi=2.0, tau=1, rho_list=(math.inf,)),),
                q_exact=None,
                unique=False,
            ),
            note=(
                "F1 = 1/(z-2) and F2 = z/(z-2) = 1 + 2/(z-2). The combination "
                "-2 F1 + F2 = 1 is a nonzero polynomial, so the pair is "
                "polynomially dependent even though neither weighted sum "
                "vanishes: dependence includes polynomial outputs, not just "
                "zero. Consequently row 2 equals 2 x row 1 plus the "
                "coefficient sequence of a constant, which vanishes for "
                "n >= 3, and the solver reports non-uniqueness from there on."
            ),
            tags=("degenerate", "circle", "independence"),
            default_n_range=(10, 30),
        ),
        CatalogEntry(
            entry_id="entire_exp",
            title="entire function: no stabilizing zero",
            measure=circle,
            system=_sys([from_terms(ExpTerm(), label="F1")], (1,)),
            truth=GroundTruth(poles=(), q_exact=None, unique=True),
            note=(
                "F = exp(z) has no singularity, so there is no system pole to "
                "attract the denominator zero. Exactly, the order-n zero sits "
                "at [zF]_n / [F]_n = (1/(n-1)!) / (1/n!) = n: it runs off to "
                "infinity instead of stabilizing. Once 1/n! falls below "
                "arithmetic noise the computed location is noise-driven; "
                "either way it moves by far more than 0.1 between successive "
                "windows, which is the pole-free signature."
            ),
            tags=("entire", "circle", "inverse"),
            default_n_range=(5, 30),
        ),
        CatalogEntry(
            entry_id="incomplete_log",
            title="underdetermined capture through a branch point",
            measure=circle,
            system=_sys(
                [from_terms(PoleTerm(a=1.5), LogTerm(a=3.0), label="F1")],
                (2,),
            ),
            truth=GroundTruth(
                poles=(SystemPoleSpec(xi=1.5, tau=1, rho_list=(3.0,)),),
                q_exact=None,
                unique=False,
            ),
            note=(
                "F = 1/(z-1.5) + log(3-z) on the circle with degree budget "
                "m = 2 but only m* = 1 vanishing condition. F has exactly one "
                "pole inside |z| < 3 (the branch point), so the largest disk "
                "of meromorphy with one pole has radius 3 and one zero of "
                "every representative converges to 1.5 at rate 1.5/3 = 0.5; "
                "the spare zero is unconstrained. The nullspace dimension is "
                "m + 1 - m* = 2 throughout."
            ),
            tags=("incomplete", "circle"),
            default_n_range=(10, 30),
            m_star=1,
            capture_targets=(1.5,),
            capture_rate_bound=0.5,
        ),
        CatalogEntry(
            entry_id="incomplete_rational",
            title="underdetermined capture, rational target",
            measure=circle,
            system=_sys([from_terms(PoleTerm(a=2.0), label="F1")], (2,)),
            truth=GroundTruth(
                poles=(SystemPoleSpec(xi=2.0, tau=1, rho_list=(math.inf,)),),
                q_exact=None,
                unique=False,
            ),
            note=(
                "F = 1/(z-2) with m = 2, m* = 1: the single condition "
                "[QF]_n = 0 reads Q(2) * 2^(-n-1) = 0 for n >= deg Q, so the "
                "nullspace is exactly the multiples of (z-2) (dimension 2) "
                "and every representative carries a zero at 2 up to roundoff: "
                "capture is exact at finite n. With m = m* = 2 the two rows "
                "are proportional (F has fewer poles than conditions), the "
                "solver flags non-uniqueness, and Q F is a polynomial, so the "
                "coefficient stream [QF]_n dies off identically."
            ),
            tags=("incomplete", "circle", "exact"),
            default_n_range=(10, 30),
            m_star=1,
            capture_targets=(2.0,),
            capture_rate_bound=None,
        ),
    ]
    return {e.entry_id: e for e in entries}


ENTRIES = _build_entries()

RADIUS_CASES = (
    RadiusCase(
        case_id="radius_circle_pole",
        measure=circle_measure(),
        fn=from_terms(PoleTerm(a=2.0), label="pole2"),
        rho_true=2.0,
        note=(
            "1/(z-2) on the circle: coefficients are exactly -2^(-n-1), a "
            "pure geometric sequence, so the fitted slope recovers radius 2."
        ),
    ),
    RadiusCase(
        case_id="radius_interval_pole",
        measure=interval_measure("chebyshev"),
        fn=from_terms(PoleTerm(a=2.0), label="pole2"),
        rho_true=PHI_2,
        note=(
            "1/(z-2) on [-1, 1]: the expansion coefficients decay exactly "
            "like phi(2)^(-n) with phi(2) = 2 + sqrt(3) ~= 3.732051."
        ),
    ),
    RadiusCase(
        case_id="radius_interval_branch",
        measure=interval_measure("chebyshev"),
        fn=from_terms(PowTerm(a=3.0, gamma=-0.75), label="branch3"),
        rho_true=PHI_3,
        note=(
            "(3-z)^(-3/4) on [-1, 1]: an algebraic branch point at 3, "
            "coefficients ~ phi(3)^(-n) n^(-1/4) with phi(3) = 3 + sqrt(8) "
            "~= 5.828427. The slowly varying n^(-1/4) factor biases the "
            "least-squares slope by about 1 percent over the fit window, "
            "well inside the 5 percent acceptance band (a logarithmic "
            "singularity's 1/n factor would bias it by about 10 percent)."
        ),
    ),
)


def get_entry(entry_id: str) -> CatalogEntry:
    try:
        return ENTRIES[entry_id]
    except KeyError:
        raise ParameterError(
            f"unknown catalog entry {entry_id!r}; choose from {', '.join(sorted(ENTRIES))}"
        ) from None


def catalog_rows():
    """Summary rows for listings: id, sizes, weight, expectations."""
    rows = []
    for entry in ENTRIES.values():
        theta = entry.theta
        rows.append(
            {
                "entry_id": entry.entry_id,
                "d": entry.system.size,
                "m": list(entry.system.multi_index),
                "weight": entry.measure.weight,
                "theta": theta,
                "unique_expected": entry.truth.unique,
                "m_star": entry.m_star,
                "tags": list(entry.tags),
                "title": entry.title,
            }
        )
    return rows


def distinct_functions():
    """Every distinct component function shipped with the catalog.

    Functions are distinct by their term structure; labels are ignored.
    """
    seen: dict[tuple, AnalyticFunction] = {}
    for entry in ENTRIES.values():
        for fn in entry.system.functions:
            seen.setdefault(fn.terms, fn)
    for case in RADIUS_CASES:
        seen.setdefault(case.fn.terms, case.fn)
    return list(seen.values())
