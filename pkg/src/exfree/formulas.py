"""Closed-form predictions and degree thresholds, evaluated as exact rationals.

Everything here is a pure function of small integer/rational inputs. Binomials
of rational arguments use the falling-factorial form, so even non-integer
arguments stay in Fraction arithmetic; nothing rounds through floats.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb, factorial

from .errors import PatternSyntaxError
from .graphs import as_fraction

Rat = int | float | str | Fraction


def binom_frac(x: Fraction, t: int) -> Fraction:
    """Generalized binomial C(x, t) = x (x-1) ... (x-t+1) / t! for rational x."""
    if t < 0:
        raise PatternSyntaxError("binomial needs t >= 0")
    num = Fraction(1)
    for i in range(t):
        num *= x - i
    return num / factorial(t)


def aes_threshold(k: int) -> Fraction:
    """Minimum-degree fraction 1 - 3/(3k-4) above which a graph with no
    k-clique is forced to be (k-1)-colorable (Andrasfai-Erdos-Sos bound)."""
    if k < 3:
        raise PatternSyntaxError("aes_threshold needs k >= 3")
    return 1 - Fraction(3, 3 * k - 4)


def es_threshold(k: int) -> Fraction:
    """Degree fraction 1 - 2/(2k-3): below this, k-clique-free graphs that are
    not (k-1)-colorable still exist (Erdos-Simonovits regime)."""
    if k < 3:
        raise PatternSyntaxError("es_threshold needs k >= 3")
    return 1 - Fraction(2, 2 * k - 3)


def predict_ex_clique(n: Rat, k: int, m: int) -> Fraction:
    """Leading term C(k-1, m) * (n/(k-1))^m for the maximum number of
    m-cliques in a graph avoiding a forbidden graph of chromatic number k."""
    if m < 1 or k <= m:
        raise PatternSyntaxError("predict_ex_clique needs k > m >= 1")
    nf = as_fraction(n)
    if nf < 0:
        raise PatternSyntaxError("predict_ex_clique needs n >= 0")
    return comb(k - 1, m) * (nf / (k - 1)) ** m


def predict_ex_blowup(n: Rat, m: int, t: int) -> Fraction:
    """Leading term C(n/m, t)^m for the maximum number of copies of the
    t-blow-up of an m-clique when an (m+1)-chromatic graph is forbidden."""
    if m < 1 or t < 1:
        raise PatternSyntaxError("predict_ex_blowup needs m >= 1, t >= 1")
    nf = as_fraction(n)
    if nf < 0:
        raise PatternSyntaxError("predict_ex_blowup needs n >= 0")
    return binom_frac(nf / m, t) ** m


def partition_lower_clique(n: Rat, k: int, m: int, eps: Rat) -> Fraction:
    """Random-partition lower bound (1 - (m(m-1)/2) eps) * C(k-1,m) (n/(k-1))^m."""
    e = as_fraction(eps)
    return (1 - Fraction(m * (m - 1), 2) * e) * predict_ex_clique(n, k, m)


def partition_lower_blowup(n: Rat, m: int, t: int, eps: Rat, c: Rat) -> Fraction:
    """Random-partition lower bound (1 - c eps) * n^(mt) / (t! m^t)^m."""
    if m < 1 or t < 1:
        raise PatternSyntaxError("partition_lower_blowup needs m >= 1, t >= 1")
    nf = as_fraction(n)
    return (1 - as_fraction(c) * as_fraction(eps)) * nf ** (m * t) / Fraction(
        (factorial(t) * m**t) ** m
    )


def removal_bound_clique(n_j: Rat, k: int, m: int) -> tuple[Fraction, Fraction]:
    """Per-step bound on m-cliques lost when peeling a low-degree vertex.

    Returns (bound, delta) with
      delta = 1 - ((k-1) (1 - 3/(3k-4)) / (k-2))^(m-1)
      bound = n_j^(m-1) * C(k-1, m) * m / (k-1)^m * (1 - delta).
    delta > 0 for every k > m >= 2, which is the whole point: a vertex below
    the degree threshold removes strictly fewer cliques than it later adds
    back when re-inserted into a balanced partition.
    """
    if m < 2 or k <= m:
        raise PatternSyntaxError("removal_bound_clique needs k > m >= 2")
    inner = Fraction(k - 1, k - 2) * (1 - Fraction(3, 3 * k - 4))
    delta = 1 - inner ** (m - 1)
    nf = as_fraction(n_j)
    bound = nf ** (m - 1) * comb(k - 1, m) * Fraction(m, (k - 1) ** m) * (1 - delta)
    return bound, delta


def sparse_copy_bound(n_i: Rat, d: Rat, m: int, t: int) -> Fraction:
    """Copies of an (m-1)-blow-up cone through a degree-d vertex in the sparse
    regime: (n_i - d)^(t-1)/(t-1)! * (d^t / ((m-1)^t t!))^(m-1)."""
    if m < 2 or t < 1:
        raise PatternSyntaxError("sparse_copy_bound needs m >= 2, t >= 1")
    nf, df = as_fraction(n_i), as_fraction(d)
    return (nf - df) ** (t - 1) / factorial(t - 1) * (
        df**t / Fraction((m - 1) ** t * factorial(t))
    ) ** (m - 1)


def sparse_density_poly(n_i: Rat, m: int, t: int, d: Rat) -> Fraction:
    """The degree polynomial f(d) = d^(t(m-1)) (n_i - d)^(t-1) whose maximum
    on [0, n_i] locates the worst-case degree for sparse copy counts."""
    nf, df = as_fraction(n_i), as_fraction(d)
    return df ** (t * (m - 1)) * (nf - df) ** (t - 1)


def f_maximizer(n_i: Rat, m: int, t: int) -> Fraction:
    """Argmax of sparse_density_poly: beta = (1 - (t-1)/(tm-1)) * n_i.

    f is nondecreasing on [0, beta]; check_f_monotone samples that claim.
    """
    if m < 2 or t < 1:
        raise PatternSyntaxError("f_maximizer needs m >= 2, t >= 1")
    return (1 - Fraction(t - 1, t * m - 1)) * as_fraction(n_i)


def check_f_monotone(n_i: Rat, m: int, t: int, samples: int = 16) -> bool:
    """Sample f at rationals 0 = d_0 < ... < d_s = beta and confirm it never decreases."""
    beta = f_maximizer(n_i, m, t)
    prev = None
    for i in range(samples + 1):
        d = beta * Fraction(i, samples)
        val = sparse_density_poly(n_i, m, t, d)
        if prev is not None and val < prev:
            return False
        prev = val
    return True


def removal_bound_blowup(n_i: Rat, m: int, t: int) -> tuple[Fraction, Fraction]:
    """Per-step bound on blow-up copies lost when peeling a low-degree vertex.

    Returns (bound, ratio) where
      bound = n_i^(mt-1) * (3/(3m-1))^(t-1) * (1 - 3/(3m-1))^(t(m-1))
              / ((t-1)! (m-1)^(t(m-1)) (t!)^(m-1))
    and ratio compares the bound against the re-insertion gain scale
    mt/(m^(tm) (t!)^m) * n_i^(mt-1); ratio < 1 is the slack that makes the
    peel-and-rebuild exchange profitable. Requires m >= 3: at m = 2 the
    factored comparison is not valid and the argument needs the clique route.
    At t = 1 the bound coincides exactly with removal_bound_clique(n, m+1, m).
    """
    if m < 3:
        raise PatternSyntaxError("removal_bound_blowup needs m >= 3 (use the clique bound for m=2)")
    if t < 1:
        raise PatternSyntaxError("removal_bound_blowup needs t >= 1")
    nf = as_fraction(n_i)
    a = Fraction(3, 3 * m - 1)
    bound = (
        nf ** (m * t - 1)
        * a ** (t - 1)
        * (1 - a) ** (t * (m - 1))
        / (factorial(t - 1) * (m - 1) ** (t * (m - 1)) * factorial(t) ** (m - 1))
    )
    scale = nf ** (m * t - 1) * Fraction(m * t, m ** (t * m) * factorial(t) ** m)
    ratio = bound / scale
    return bound, ratio


def removal_bound_mixed(n: Rat, k: int, m: int, t: int) -> Fraction:
    """Leading factor C(k-1,m) * mt / ((k-1)^m (t! m^(t-1))^m) * n^(mt-1).

    Reduces to the clique bound scale at t = 1 and to the blow-up gain scale
    at k = m + 1; for general (k, t) pairs it is exposed for inspection but
    has no independent verification here.
    """
    if m < 1 or t < 1 or k <= m:
        raise PatternSyntaxError("removal_bound_mixed needs k > m >= 1, t >= 1")
    nf = as_fraction(n)
    return (
        comb(k - 1, m)
        * Fraction(m * t, (k - 1) ** m * (factorial(t) * m ** (t - 1)) ** m)
        * nf ** (m * t - 1)
    )
