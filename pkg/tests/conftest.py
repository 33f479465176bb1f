"""Shared fixtures: reusable audit contexts and frozen reference values.

The pinned strings below were produced by doubled-precision runs of this
package (512 bits for series-based constants, 384 bits for quadrature
moments), truncated to 50 digits.  Each value was cross-checked against an
independent 320 bit run before freezing, so they are safe oracles for the
default 256 bit working precision.
"""

from fractions import Fraction

import pytest

from stieltjes_audit import AuditContext, XReal, as_xreal

PINS = {
    "gamma_0": "5.7721566490153286060651209008240243104215933593992e-01",
    "gamma_1": "-7.2815845483676724860586375874901319137736338334338e-02",
    "gamma_2": "-9.6903631928723184845303860352125293590658061013407e-03",
    "gamma_3": "2.0538344203033458661600465427533842857158044454106e-03",
    "zeta_2": "1.6449340668482264364724151666460251892189499012068e+00",
    "zeta_3": "1.2020569031595942853997381615114499907649862923405e+00",
    "zeta_prime_2": "-9.3754825431584375370257409456786497789786028861483e-01",
    "zeta_prime_minus_1": "-1.6542114370045092921391966024278064276403638033520e-01",
    "gamma_deriv_2": "1.9781119906559451107907913030012694158783670414564e+00",
    "gamma_deriv_3": "-5.4448744564853177340993610041376506895716686944354e+00",
    "gamma_deriv_4": "2.3561474084025604496073127056524420408653768313363e+01",
    "eta_0": "-5.7721566490153286060651209008240243104215933593992e-01",
    "eta_1": "1.8754623284036522459720338460544158838394446358095e-01",
    "eta_2": "-5.1688632033192893802008223083604163445398816548950e-02",
    "eta_3": "1.4751658825453744064580236814375510362641849020081e-02",
    "li_half": "-3.7867104306108797672720718463656098055123404097821e-01",
    "dilog_half": "5.8224052646501250590265632015968010874419847480613e-01",
    "b5_combo": "5.1708384088836329255133812622333006999210634659250e-01",
    "b10_combo": "1.4546320952042070462539122207911950478899666352073e+00",
    "b11_sum": "8.6320680168943923779403191964697820354780349520359e-01",
    "gamma1_prime_1": "7.0738581253238268276984107207816021132108961259197e-01",
    "d_0": "5.7721566490153286060651209008240243104215933593992e-01",
    "d_1": "2.6036207832404194945778976048034290752168080191529e-01",
    "d_2": "1.0480459714108383169679670424273196783108312476174e+00",
    "d_3": "2.6960266846422805340199552595726969343130473698722e+00",
    "d_4": "1.1906215030978990409964072361803868228390388972779e+01",
    "d_5": "5.8961012672550938694772826466148928079416070413355e+01",
    "d_6": "3.5813500141779862233330375348065545617246113547762e+02",
}


def pinned(name: str, prec: int = 320) -> XReal:
    return XReal(PINS[name], prec)


def within(x, ref, tol) -> bool:
    """|x - ref| <= tol, with tol given as a float or a decimal string."""
    t = as_xreal(Fraction(str(tol)) if not isinstance(tol, Fraction) else tol, 320)
    return abs(as_xreal(x, 320) - as_xreal(ref, 320)) <= t


def matches_pin(x, name: str) -> bool:
    """Agreement with a frozen 50-digit string, at the string's own resolution."""
    ref = pinned(name)
    slack = as_xreal(Fraction(1, 10 ** 47), 320) * max(abs(ref), as_xreal(1, 320))
    return abs(as_xreal(x, 320) - ref) <= slack


@pytest.fixture(scope="session")
def ctx256():
    # one shared context so cached quadratures amortize across the suite
    return AuditContext(256)


@pytest.fixture(scope="session")
def pins():
    return {k: XReal(v, 320) for k, v in PINS.items()}
