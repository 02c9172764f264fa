"""Exact rational arithmetic helpers: square testing, integer square roots,
rational root extraction, and text parsing.

Every quantity in this package is a `fractions.Fraction` (aliased `Rat`),
which already keeps the canonical form gcd(|num|, den) = 1, den >= 1.
No floating point is used anywhere.
"""

from fractions import Fraction
from math import isqrt, lcm

import sympy

Rat = Fraction

_SYMPY_X = sympy.symbols("x")


def int_sqrt(n: int) -> tuple[int, bool]:
    """Return (floor(sqrt(n)), n is a perfect square). Rejects n < 0."""
    if n < 0:
        raise ValueError("int_sqrt of negative integer %d" % n)
    r = isqrt(n)
    return r, r * r == n


def is_square(r: Rat) -> tuple[bool, Rat | None]:
    """Decide whether r is the square of a rational.

    Returns (True, sqrt) with sqrt >= 0 when it is, (False, None) otherwise.
    Only integer square roots are taken; the constant may have hundreds of
    digits, so nothing is ever factored.
    """
    r = Fraction(r)
    if r < 0:
        return False, None
    sn, ok = int_sqrt(r.numerator)
    if not ok:
        return False, None
    sd, ok = int_sqrt(r.denominator)
    if not ok:
        return False, None
    return True, Fraction(sn, sd)


def poly_eval(coeffs: list[Rat], x: Rat) -> Rat:
    """Evaluate a polynomial given by ascending coefficients [c0, c1, ...]."""
    acc = Fraction(0)
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def poly_degree(coeffs: list[Rat]) -> int:
    """Degree of the polynomial, -1 for the zero polynomial."""
    for i in range(len(coeffs) - 1, -1, -1):
        if coeffs[i] != 0:
            return i
    return -1


def rational_roots(coeffs: list[Rat]) -> list[Rat]:
    """All rational roots of a nonzero polynomial, ascending, without
    multiplicity.

    Coefficients are ascending: coeffs[k] multiplies x^k.  Zero roots are
    stripped first; the rest come from exact factorization of the cleared
    integer polynomial, so arbitrarily large coefficients are fine (no
    integer is ever factored, only the polynomial).
    """
    deg = poly_degree(coeffs)
    if deg == -1:
        raise ValueError("rational_roots of the zero polynomial")
    original = [Fraction(c) for c in coeffs[: deg + 1]]

    roots = set()
    work = list(original)
    while work[0] == 0:
        roots.add(Fraction(0))
        work = work[1:]

    if len(work) > 1:
        denlcm = lcm(*(c.denominator for c in work))
        ints = [int(c * denlcm) for c in work]
        poly = sympy.Poly(list(reversed(ints)), _SYMPY_X, domain="QQ")
        for root in poly.ground_roots():
            roots.add(Fraction(root.p, root.q))

    out = sorted(roots)
    for r in out:
        assert poly_eval(original, r) == 0
    return out


def parse_rat(text: str) -> Rat:
    """Parse 'p', '-p' or 'p/q'; non-canonical input is reduced."""
    s = text.strip().replace("−", "-")
    try:
        return Fraction(s)
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError("malformed rational %r" % text) from exc


def format_rat(r: Rat) -> str:
    """Canonical text form: 'p' when the denominator is 1, else 'p/q'."""
    r = Fraction(r)
    if r.denominator == 1:
        return str(r.numerator)
    return "%d/%d" % (r.numerator, r.denominator)


def parse_rat_list(text: str, expect: int | None = None) -> list[Rat]:
    """Parse a comma-separated rational list, optionally of fixed length."""
    parts = [p for p in text.split(",") if p.strip() != ""]
    vals = [parse_rat(p) for p in parts]
    if expect is not None and len(vals) != expect:
        raise ValueError("expected %d rationals, got %d in %r" % (expect, len(vals), text))
    return vals
