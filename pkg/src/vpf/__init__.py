"""Exact vector partition functions: partial fractions, chambers and quasipolynomials."""
from importlib.resources import files

from .errors import *  # noqa: F401,F403
from .laurent import LaurentPoly
from .genfunc import (
    DenominatorFactor,
    FractionSum,
    GeneratingFraction,
    Relation,
    elongation_numerator,
    parse_fraction_sum_latex,
    power_two_term_split,
    series_truncate,
    substitute_fraction_sum,
    szenes_vergne,
    szenes_vergne_elongated,
    two_term_split,
    two_term_split_double,
)
from .pfd import (
    ClassicalOrder,
    MinAbsCoefficient,
    NonBrokenCircuit,
    PfdResult,
    Strategy,
    choose_relation,
    classical_decompose,
    decompose,
)
from .quasi import (
    BasicQuasiNumber,
    QuasiNumber,
    QuasiPolynomial,
    bernoulli_sum,
    floor_interpolate,
    from_lattice_shift,
    possible_period,
    quasipoly_equal,
    shift_expand,
    tau_bernoulli,
    tau_eval,
    tau_mul,
)
from .geometry import ChamberComplex, Cone, chambers, cone_contains, interior_point
from .rootsys import RootSystem, kostant_input, minimal_relation, positive_roots
from .evaluate import (
    ChamberFormula,
    brion_vergne_term,
    chamber_formulas,
    dual_basis,
    verify_chamber,
    vpf_bruteforce,
    vpf_quasipoly,
)

__version__ = "0.1.0"

TABLE_SYSTEMS = ("A2", "A3", "A4", "B2", "B3", "C2", "C3", "G2")


def reference_table(name: str) -> FractionSum:
    """Reference decomposition of a Kostant generating function shipped as LaTeX."""
    text = files("vpf").joinpath("data", "tables", f"{name}.tex").read_text()
    return parse_fraction_sum_latex(text, int(name[1:]))
