"""Rational D(q)-tuples: verification, quadruple-to-quintuple extension
through the divisibility-by-2 criterion, four parametric quadruple families
with closed-form fifth elements, and the regular extension available when
the D-constant is a rational square.

A D(q)-m-tuple is a set of m distinct nonzero rationals whose pairwise
products shifted by q are all rational squares.  Each family below pairs a
one-parameter polynomial quadruple with an auxiliary curve r^2 = rhs(t):
whenever t is the abscissa of a rational point of that curve, the
closed-form fifth element really does extend the evaluated quadruple.
"""

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterator, Optional

from . import ptsearch
from .descent import delta_certificate, is_double
from .exactnum import Rat, format_rat, is_square, poly_degree, poly_eval
from .qmodel import QPoint, QuarticCurve
from .ptsearch import SearchConfig


@dataclass(frozen=True)
class DTuple:
    """q plus the elements of a rational D(q)-m-tuple candidate."""

    q: Rat
    elements: tuple[Rat, ...]

    def __init__(self, q, elements):
        object.__setattr__(self, "q", Fraction(q))
        object.__setattr__(self, "elements", tuple(Fraction(a) for a in elements))
        if self.q == 0:
            raise ValueError("q must be nonzero")
        if len(self.elements) < 2:
            raise ValueError("a D(q)-tuple needs at least two elements")
        if any(a == 0 for a in self.elements):
            raise ValueError("elements must be nonzero")
        if len(set(self.elements)) != len(self.elements):
            raise ValueError("elements must be distinct")


@dataclass(frozen=True)
class VerifyResult:
    ok: bool
    witnesses: dict[tuple[int, int], Rat]
    failed: Optional[tuple[int, int]] = None


def verify(tup: DTuple) -> VerifyResult:
    """Check a_i a_j + q is a square for all i < j (1-based indices in the
    report); witnesses are the nonnegative exact roots."""
    witnesses = {}
    for i, j in combinations(range(len(tup.elements)), 2):
        sq, root = is_square(tup.elements[i] * tup.elements[j] + tup.q)
        if not sq:
            return VerifyResult(False, witnesses, (i + 1, j + 1))
        witnesses[(i + 1, j + 1)] = root
    return VerifyResult(True, witnesses)


# -- quadruple -> quintuple through the 2-divisibility criterion -------------


@dataclass(frozen=True)
class Extension:
    fifth: Rat
    provenance: str


def extension_curve(q: Rat, quad) -> tuple[QuarticCurve, QPoint]:
    """The curve y^2 = (a1 x + q)...(a4 x + q) with base point (0, q^2)."""
    q = Fraction(q)
    C = QuarticCurve.from_factors([(Fraction(a), q) for a in quad])
    return C, QPoint(0, q * q)


def extend_quadruple(q: Rat, quad, search_height: int = 24,
                     doubling_budget: int = 3,
                     threads: int = 1) -> list[Extension]:
    """All fifth elements found for the D(q)-quadruple ``quad``.

    Candidate points on the extension curve come from a height-bounded
    search plus group-law combinations of the first found points; a
    candidate abscissa is emitted when the point is twice a rational point,
    its square class is trivial, and the enlarged tuple re-verifies.
    An empty list is a normal outcome.
    """
    q = Fraction(q)
    quad = [Fraction(a) for a in quad]
    base_check = verify(DTuple(q, quad))
    if not base_check.ok:
        raise ValueError("not a D(%s)-quadruple: pair %s fails"
                         % (format_rat(q), base_check.failed))

    C, base = extension_curve(q, quad)
    cfg = SearchConfig(height=search_height, budget=doubling_budget,
                       threads=threads)
    found = ptsearch.search_rhs(list(reversed(C.coeffs())), cfg)
    candidates: list[tuple[QPoint, str]] = []
    for t, r in found:
        for v in ((r,) if r == 0 else (r, -r)):
            candidates.append((QPoint(t, v), "search"))
    seeds = [P for P, _ in candidates if P != base][:2]
    for P in ptsearch.generate(C, seeds, cfg, base=base):
        candidates.append((P, "group law from %d seed(s)" % len(seeds)))

    out: list[Extension] = []
    seen: set[Rat] = set()
    for P, provenance in candidates:
        x5 = P.u
        if x5 == 0 or x5 in quad or x5 in seen:
            continue
        ok, _ = is_double(C, base, P)
        if not ok:
            continue
        delta_sq, fifth = delta_certificate(C, base, P)
        if not delta_sq:
            continue
        assert verify(DTuple(q, quad + [fifth])).ok
        seen.add(fifth)
        out.append(Extension(fifth, provenance))
    return out


# -- the four parametric families --------------------------------------------


def _pmul(p, q):
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        for j, b in enumerate(q):
            out[i + j] += Fraction(a) * Fraction(b)
    return tuple(out)


def _padd(p, q):
    n = max(len(p), len(q))
    return tuple((Fraction(p[i]) if i < len(p) else Fraction(0))
                 + (Fraction(q[i]) if i < len(q) else Fraction(0))
                 for i in range(n))


def _pscale(s, p):
    return tuple(Fraction(s) * Fraction(c) for c in p)


@dataclass(frozen=True)
class FamilySpec:
    """A parametric quadruple with closed-form fifth element.

    All polynomials are ascending coefficient tuples in the parameter t.
    ``fifth`` is fifth_num / fifth_den; ``aux_rhs`` is the right-hand side
    of the curve r^2 = aux_rhs(t) whose rational points mark the t at which
    the fifth element really extends the quadruple.
    """

    name: str
    quadruple: tuple[tuple[Rat, ...], ...]
    q_poly: tuple[Rat, ...]
    fifth_num: tuple[Rat, ...]
    fifth_den: tuple[Rat, ...]
    aux_rhs: tuple[Rat, ...]


def _thm2() -> FamilySpec:
    den = _pmul(_pscale(32, (0, 1)), _pmul((232,), (1,)) )  # placeholder
    # 1369 + 32 t (232 + t (419 + 252 t))
    den = tuple(a + b for a, b in zip(
        (Fraction(1369), Fraction(0), Fraction(0), Fraction(0)),
        _pmul((0, 32), (232, 419, 252))))
    num = _pscale(-4, _pmul(_pmul((1, 2), (7, 13)), (13, 22)))
    return FamilySpec(
        name="thm2",
        quadruple=((0, 1), (8, 16), (14, 25), (20, 36)),
        q_poly=(9, 16),
        fifth_num=num,
        fifth_den=den,
        aux_rhs=den,
    )


def _thm3i() -> FamilySpec:
    # -1 + 32 t (13 + t (529 + 5148 t))
    den = tuple(a + b for a, b in zip(
        (Fraction(-1), Fraction(0), Fraction(0), Fraction(0)),
        _pmul((0, 32), (13, 529, 5148))))
    num = _pscale(-4, _pmul(_pmul((2, 37), (3, 58)), (5, 82)))
    return FamilySpec(
        name="thm3i",
        quadruple=((0, 4), (8, 144), (1, 25), (3, 49)),
        q_poly=(1, 16),
        fifth_num=num,
        fifth_den=den,
        aux_rhs=den,
    )


def _thm3ii() -> FamilySpec:
    # 96721 + 16 t (6521 + 2342 t + 280 t^2); gate multiplies in 16 t + 49
    den = tuple(a + b for a, b in zip(
        (Fraction(96721), Fraction(0), Fraction(0), Fraction(0)),
        _pmul((0, 16), (6521, 2342, 280))))
    num = _pscale(4, _pmul(_pmul((1, 2), (13, 5)), _pmul((27, 10), (49, 16))))
    return FamilySpec(
        name="thm3ii",
        quadruple=((0, 1), (26, 9), (12, 4), (40, 16)),
        q_poly=(49, 16),
        fifth_num=num,
        fifth_den=den,
        aux_rhs=_pmul(den, (49, 16)),
    )


def _thm3iii() -> FamilySpec:
    # 324 + 8 t (62 + t (31 + 5 t)); gate is (81 + 2 t (...)) * (9 + 4 t)
    inner = tuple(a + b for a, b in zip(
        (Fraction(81), Fraction(0), Fraction(0), Fraction(0)),
        _pmul((0, 2), (62, 31, 5))))
    den = _pscale(4, inner)
    num = _pmul(_pmul((2, 1), (9, 4)), _pmul((8, 5), (14, 5)))
    return FamilySpec(
        name="thm3iii",
        quadruple=((0, 1), (-1, Fraction(1, 4)), (5, Fraction(9, 4)), (8, 4)),
        q_poly=(9, 4),
        fifth_num=num,
        fifth_den=den,
        aux_rhs=_pmul(inner, (9, 4)),
    )


FAMILIES: dict[str, FamilySpec] = {
    spec.name: spec for spec in (_thm2(), _thm3i(), _thm3ii(), _thm3iii())
}


class DegenerateParameter(ValueError):
    """The family is not defined (as a D(q)-tuple) at this t."""


def family_fifth(name: str, t: Rat) -> tuple[list[Rat], Rat, Rat]:
    """Evaluate a family at t: (quadruple, q, fifth element).

    Raises DegenerateParameter when an element vanishes or collides, q or a
    denominator vanishes, or the fifth element is zero or repeats an
    element.  Passing the square gate is *not* required here; callers that
    need a verified quintuple run verify() on the result.
    """
    spec = FAMILIES.get(name)
    if spec is None:
        raise ValueError("unknown family %r (have: %s)"
                         % (name, ", ".join(sorted(FAMILIES))))
    t = Fraction(t)
    quad = [poly_eval(list(p), t) for p in spec.quadruple]
    q = poly_eval(list(spec.q_poly), t)
    if q == 0:
        raise DegenerateParameter("q vanishes at t = %s" % format_rat(t))
    if any(a == 0 for a in quad):
        raise DegenerateParameter("zero element at t = %s" % format_rat(t))
    if len(set(quad)) != 4:
        raise DegenerateParameter("repeated element at t = %s" % format_rat(t))
    den = poly_eval(list(spec.fifth_den), t)
    if den == 0:
        raise DegenerateParameter("fifth-element denominator vanishes at t = %s"
                                  % format_rat(t))
    fifth = poly_eval(list(spec.fifth_num), t) / den
    if fifth == 0:
        raise DegenerateParameter("fifth element vanishes at t = %s"
                                  % format_rat(t))
    if fifth in quad:
        raise DegenerateParameter("fifth element repeats the quadruple at t = %s"
                                  % format_rat(t))
    return quad, q, fifth


def _height(t: Rat) -> int:
    return max(abs(t.numerator), t.denominator)


def family_enumerate(name: str, height: int, max_results: int,
                     budget: int = 5, threads: int = 1
                     ) -> Iterator[tuple[Rat, DTuple]]:
    """Stream verified quintuples (t, tuple) for a family.

    Rational points on the auxiliary curve are found by height-bounded
    search, multiplied out by the group law (through a Weierstrass model
    for a cubic right-hand side, through the quartic machinery for a
    quartic one), and the resulting t values are tried in ascending
    (height, sign, value) order.
    """
    spec = FAMILIES.get(name)
    if spec is None:
        raise ValueError("unknown family %r (have: %s)"
                         % (name, ", ".join(sorted(FAMILIES))))
    cfg = SearchConfig(height=height, budget=budget, threads=threads)
    rhs = list(spec.aux_rhs)
    found = ptsearch.search_rhs(rhs, cfg)
    ts = {t for t, _ in found}

    deg = poly_degree(rhs)
    if deg == 3:
        model = ptsearch.cubic_to_weierstrass(rhs)
        seeds = [model.to_curve(t, r) for t, r in found]
        for P in ptsearch.generate(model.curve, seeds, cfg):
            if not P.is_identity:
                ts.add(model.from_curve(P)[0])
    elif deg == 4:
        aux = QuarticCurve(*reversed(rhs))
        base = QPoint(0, aux.const_sqrt())
        seeds = [QPoint(t, r) for t, r in found if QPoint(t, r) != base][:2]
        for P in ptsearch.generate(aux, seeds, cfg, base=base):
            ts.add(P.u)
    else:
        raise ValueError("auxiliary right-hand side must have degree 3 or 4")

    emitted = 0
    for t in sorted(ts, key=lambda t: (_height(t), t < 0, t)):
        if emitted >= max_results:
            return
        try:
            quad, q, fifth = family_fifth(name, t)
        except DegenerateParameter:
            continue
        tup = DTuple(q, quad + [fifth])
        if not verify(tup).ok:
            continue
        emitted += 1
        yield t, tup


# -- regular extension for a square D-constant --------------------------------


def regular_extension(qr: Rat, quad) -> tuple[Rat, Rat]:
    """The two closed-form fifth elements of a D(qr^2)-quadruple.

    With y_ij the nonnegative roots of x_i x_j + qr^2 and P = x1 x2 x3 x4,
    both sign choices of
        qr^3 (+-2 y12 y13 y14 y23 y24 y34 + qr P s1 + 2 qr^3 e3 + qr^5 s1)
        / (P - qr^4)^2
    are returned (s1 the element sum, e3 the sum of triple products).
    Requires P != qr^4.
    """
    qr = Fraction(qr)
    xs = [Fraction(a) for a in quad]
    if len(xs) != 4:
        raise ValueError("expected a quadruple")
    res = verify(DTuple(qr * qr, xs))
    if not res.ok:
        raise ValueError("not a D((%s)^2)-quadruple: pair %s fails"
                         % (format_rat(qr), res.failed))
    prod = xs[0] * xs[1] * xs[2] * xs[3]
    if prod == qr ** 4:
        raise ValueError("element product equals qr^4; the formula degenerates")
    ybig = Fraction(1)
    for w in res.witnesses.values():
        ybig *= w
    s1 = sum(xs)
    e3 = (xs[0] * xs[1] * xs[2] + xs[0] * xs[1] * xs[3]
          + xs[0] * xs[2] * xs[3] + xs[1] * xs[2] * xs[3])
    B = (prod - qr ** 4) ** 2
    tail = qr * prod * s1 + 2 * qr ** 3 * e3 + qr ** 5 * s1
    plus = qr ** 3 * (2 * ybig + tail) / B
    minus = qr ** 3 * (-2 * ybig + tail) / B
    return plus, minus
