"""padiclab: exact desk-scale p-adic semilinear algebra.

Modules
-------
padic       truncated p-adic integers, log/exp, q-analogues
gskel       the (cocycle, character) group model and its decompositions
gf          finite fields and F_p-linear algebra
witt        truncated Witt vectors, laws from ghost components
series      truncated (Laurent) series, Newton polygons, Weierstrass
            preparation, the operators lambda and N_nabla
perfseries  fractional-exponent series and the semilinear solvers
phimod      etale phi-modules, lattices, heights
galrep      the constructive mod-p functor and unramified round trips
taumod      the two-variable Galois action and tau-commutation checks
logtrunc    truncated operator logarithms and their congruences
ramif       Herbrand transforms and explicit ramification bounds
cli         batch command surface (JSON/CSV), property suites
"""

from . import (errors, galrep, gf, gskel, logtrunc, padic, perfseries,
               phimod, ramif, rings, series, taumod, witt)

__all__ = [
    "errors", "galrep", "gf", "gskel", "logtrunc", "padic",
    "perfseries", "phimod", "ramif", "rings", "series", "taumod", "witt",
]

__version__ = "0.1.0"
