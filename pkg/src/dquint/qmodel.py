"""Quartic models y^2 = a*x^4 + b*x^3 + c*x^2 + d*x + e: invariants, two
Jacobian constructions, the birational maps to and from the Jacobian, and
the group law transferred to the quartic through them.

Two explicit maps are provided.  The first needs a nonzero square constant
term e = q^2 and sends (0, q) to the identity; the second needs a depressed
monic quartic and sends the point at infinity inf+ to the identity.  Both
handle their exceptional points through closed, explicit tables -- never a
silent limit.
"""

from dataclasses import dataclass
from fractions import Fraction

from .exactnum import Rat, format_rat, is_square, parse_rat, parse_rat_list
from .wmodel import EPoint, IDENTITY, WeierstrassCurve


class ExceptionalPointError(ValueError):
    """A birational map was evaluated where it has no affine value."""


@dataclass(frozen=True)
class LinearFactor:
    """f(x) = a*x + b with a != 0."""

    a: Rat
    b: Rat

    def __post_init__(self):
        object.__setattr__(self, "a", Fraction(self.a))
        object.__setattr__(self, "b", Fraction(self.b))
        if self.a == 0:
            raise ValueError("linear factor needs a nonzero leading coefficient")

    def __call__(self, x: Rat) -> Rat:
        return self.a * x + self.b

    @property
    def root(self) -> Rat:
        return -self.b / self.a

    def __repr__(self):
        return "(%s,%s)" % (format_rat(self.a), format_rat(self.b))


class QPoint:
    """Affine point (u, v) on a quartic model, or one of inf+ / inf-."""

    __slots__ = ("u", "v", "inf")

    def __init__(self, u: Rat | None = None, v: Rat | None = None, inf: int = 0):
        if inf not in (-1, 0, 1):
            raise ValueError("inf must be -1, 0 or +1")
        if inf != 0:
            if u is not None or v is not None:
                raise ValueError("a point at infinity has no affine coordinates")
            self.u = None
            self.v = None
        else:
            if u is None or v is None:
                raise ValueError("affine QPoint needs both coordinates")
            self.u = Fraction(u)
            self.v = Fraction(v)
        self.inf = inf

    @classmethod
    def inf_plus(cls) -> "QPoint":
        return cls(inf=+1)

    @classmethod
    def inf_minus(cls) -> "QPoint":
        return cls(inf=-1)

    @property
    def is_infinite(self) -> bool:
        return self.inf != 0

    def __eq__(self, other):
        if not isinstance(other, QPoint):
            return NotImplemented
        return (self.u, self.v, self.inf) == (other.u, other.v, other.inf)

    def __hash__(self):
        return hash((self.u, self.v, self.inf))

    def __repr__(self):
        if self.inf > 0:
            return "inf+"
        if self.inf < 0:
            return "inf-"
        return "(%s, %s)" % (format_rat(self.u), format_rat(self.v))


INF_PLUS = QPoint.inf_plus()
INF_MINUS = QPoint.inf_minus()


class QuarticCurve:
    """y^2 = a*x^4 + b*x^3 + c*x^2 + d*x + e with nonzero discriminant.

    A degree drop (a = 0, cubic right-hand side) is allowed as long as the
    discriminant stays nonzero.  An optional factorization into four linear
    factors unlocks the descent criterion; it must multiply out to the
    stated coefficients exactly.
    """

    def __init__(self, a, b, c, d, e, factors=None, allow_singular: bool = False):
        self.a = Fraction(a)
        self.b = Fraction(b)
        self.c = Fraction(c)
        self.d = Fraction(d)
        self.e = Fraction(e)

        a, b, c, d, e = self.a, self.b, self.c, self.d, self.e
        self.inv_i = 12 * a * e - 3 * b * d + c * c
        self.inv_j = (72 * a * c * e - 27 * a * d * d - 27 * b * b * e
                      + 9 * b * c * d - 2 * c ** 3)
        self.c4 = 16 * self.inv_i
        self.c6 = 32 * self.inv_j
        self.disc = (self.c4 ** 3 - self.c6 ** 2) / 1728
        if self.disc == 0 and not allow_singular:
            raise ValueError("singular quartic model (disc = 0)")

        self.factors = None
        if factors is not None:
            facs = [f if isinstance(f, LinearFactor) else LinearFactor(*f)
                    for f in factors]
            if len(facs) != 4:
                raise ValueError("expected exactly 4 linear factors")
            roots = [f.root for f in facs]
            if len(set(roots)) != 4:
                raise ValueError("linear factors must have distinct roots")
            if _expand(facs) != (a, b, c, d, e):
                raise ValueError("factors do not multiply out to the quartic")
            self.factors = facs

    @classmethod
    def from_factors(cls, factors, allow_singular: bool = False) -> "QuarticCurve":
        facs = [f if isinstance(f, LinearFactor) else LinearFactor(*f)
                for f in factors]
        if len(facs) != 4:
            raise ValueError("expected exactly 4 linear factors")
        a, b, c, d, e = _expand(facs)
        return cls(a, b, c, d, e, factors=facs, allow_singular=allow_singular)

    # -- basic queries -------------------------------------------------------

    def rhs(self, x: Rat) -> Rat:
        x = Fraction(x)
        return (((self.a * x + self.b) * x + self.c) * x + self.d) * x + self.e

    def contains(self, P: QPoint) -> bool:
        if P.is_infinite:
            sq, root = is_square(self.a)
            return sq and root != 0
        return P.v * P.v == self.rhs(P.u)

    def _require(self, P: QPoint):
        if not self.contains(P):
            raise ValueError("point %r is not on %r" % (P, self))

    def invariants(self) -> tuple[Rat, Rat, Rat, Rat, Rat]:
        """(I, J, c4, c6, disc)."""
        return (self.inv_i, self.inv_j, self.c4, self.c6, self.disc)

    def coeffs(self) -> tuple[Rat, Rat, Rat, Rat, Rat]:
        return (self.a, self.b, self.c, self.d, self.e)

    def factor_values(self, x: Rat) -> list[Rat]:
        if self.factors is None:
            raise ValueError("curve carries no factorization")
        return [f(x) for f in self.factors]

    # -- Jacobians ------------------------------------------------------------

    def jacobian_short(self) -> WeierstrassCurve:
        """y^2 = x^3 - 27*c4*x - 54*c6."""
        return WeierstrassCurve(0, 0, 0, -27 * self.c4, -54 * self.c6)

    def const_sqrt(self) -> Rat:
        """The positive square root q of the constant term, when it exists."""
        sq, q = is_square(self.e)
        if not sq or q == 0:
            raise ValueError(
                "phi1 inapplicable: constant term %s is not a nonzero square"
                % format_rat(self.e))
        return q

    def jacobian_long(self) -> WeierstrassCurve:
        """The Jacobian reached by the square-constant-term map.

        With e = q^2 (q > 0): a1 = d/q, a2 = c - d^2/(4q^2), a3 = 2qb,
        a4 = -4q^2 a, a6 = a2*a4.
        """
        q = self.const_sqrt()
        a1 = self.d / q
        a2 = self.c - self.d ** 2 / (4 * q * q)
        a3 = 2 * q * self.b
        a4 = -4 * q * q * self.a
        return WeierstrassCurve(a1, a2, a3, a4, a2 * a4)

    # -- the square-constant-term map -----------------------------------------

    def phi1(self, P: QPoint) -> EPoint:
        """Map C -> Jacobian; (0, q) goes to the identity."""
        q = self.const_sqrt()
        self._require(P)
        if P.is_infinite:
            raise ExceptionalPointError(
                "phi1 is not defined at %r (point at infinity)" % P)
        u, v = P.u, P.v
        E = self.jacobian_long()
        if u == 0:
            if v == q:
                return IDENTITY
            # (0, -q): the inverse map sends x = -a2 to u = 0; the y-choice
            # below is pinned by exact sampling against the long equation.
            R = EPoint(-E.a2, E.a1 * E.a2 - E.a3)
            assert E.contains(R)
            return R
        d, c = self.d, self.c
        x = (2 * q * (v + q) + d * u) / (u * u)
        y = (4 * q * q * (v + q) + 2 * q * (d * u + c * u * u)
             - d * d * u * u / (2 * q)) / (u ** 3)
        R = EPoint(x, y)
        assert E.contains(R)
        return R

    def phi1_inv(self, P: EPoint) -> QPoint:
        """Inverse of phi1; the identity goes back to (0, q)."""
        q = self.const_sqrt()
        E = self.jacobian_long()
        E._require(P)
        if P.is_identity:
            return QPoint(0, q)
        if P == EPoint(-E.a2, E.a1 * E.a2 - E.a3):
            return QPoint(0, -q)
        if P.y == 0:
            raise ExceptionalPointError(
                "phi1_inv is not defined at %r (maps to a point at infinity)" % P)
        d, c = self.d, self.c
        u = (2 * q * (P.x + c) - d * d / (2 * q)) / P.y
        v = -q + u * (u * P.x - d) / (2 * q)
        R = QPoint(u, v)
        self._require(R)
        return R

    # -- the depressed-monic map ----------------------------------------------

    def _phi2_params(self) -> tuple[Rat, Rat, Rat, Rat, Rat]:
        if self.a != 1 or self.b != 0:
            raise ValueError("phi2 needs a monic quartic with zero cubic term"
                             " (shift first)")
        ap = -self.c / 6
        bp = -self.d / 8
        cp = self.e
        A = -(cp + 3 * ap * ap) / 4
        B = bp * bp - ap ** 3 - A * ap
        return ap, bp, cp, A, B

    def jacobian_phi2(self) -> WeierstrassCurve:
        """w^2 = v^3 + A*v + B, the Jacobian reached by the phi2 map."""
        _, _, _, A, B = self._phi2_params()
        return WeierstrassCurve(0, 0, 0, A, B)

    def phi2(self, P: QPoint) -> EPoint:
        """Map C -> Jacobian; inf+ goes to the identity, inf- to (a, b)."""
        ap, bp, _, _, _ = self._phi2_params()
        self._require(P)
        E = self.jacobian_phi2()
        if P.inf > 0:
            return IDENTITY
        if P.inf < 0:
            R = EPoint(ap, bp)
            assert E.contains(R)
            return R
        x, y = P.u, P.v
        v = (x * x + y - ap) / 2
        w = (x ** 3 + x * y - 3 * ap * x - 2 * bp) / 2
        R = EPoint(v, w)
        assert E.contains(R)
        return R

    def phi2_inv(self, P: EPoint) -> QPoint:
        """Inverse of phi2, with the closed exceptional table."""
        ap, bp, cp, _, _ = self._phi2_params()
        E = self.jacobian_phi2()
        E._require(P)
        if P.is_identity:
            return INF_PLUS
        if P == EPoint(ap, bp):
            return INF_MINUS
        if P.x == ap:
            # the remaining point above v = a is (a, -b); its preimage is the
            # single affine intersection of y = 3a - x^2 with the quartic
            x = (cp - 9 * ap * ap) / (8 * bp)
            R = QPoint(x, 3 * ap - x * x)
            self._require(R)
            return R
        x = (P.y + bp) / (P.x - ap)
        R = QPoint(x, 2 * P.x + ap - x * x)
        self._require(R)
        return R

    # -- coordinate shift ------------------------------------------------------

    def shift(self, s: Rat, allow_singular: bool = False) -> "QuarticCurve":
        """Substitute x -> x + s; a point (u, v) moves to (u - s, v).

        A factored curve stays factored: a*x + b becomes a*x + (a*s + b).
        """
        s = Fraction(s)
        a, b, c, d, e = self.coeffs()
        new = (
            a,
            b + 4 * a * s,
            c + 3 * b * s + 6 * a * s * s,
            d + 2 * c * s + 3 * b * s * s + 4 * a * s ** 3,
            e + d * s + c * s * s + b * s ** 3 + a * s ** 4,
        )
        facs = None
        if self.factors is not None:
            facs = [LinearFactor(f.a, f.a * s + f.b) for f in self.factors]
        return QuarticCurve(*new, factors=facs, allow_singular=allow_singular)

    def shift_point(self, P: QPoint, s: Rat) -> QPoint:
        """Transport a point of this curve onto self.shift(s)."""
        if P.is_infinite:
            return P
        return QPoint(P.u - Fraction(s), P.v)

    def depressed(self) -> tuple["QuarticCurve", Rat]:
        """Kill the cubic term: returns (self.shift(s), s) with s = -b/(4a)."""
        if self.a == 0:
            raise ValueError("cannot depress a degenerate (cubic) model")
        s = -self.b / (4 * self.a)
        return self.shift(s), s

    # -- transferred group law --------------------------------------------------

    def add_on_quartic(self, base: QPoint, Q1: QPoint, Q2: QPoint) -> QPoint:
        """Group sum of Q1 and Q2 with `base` as the identity.

        An affine base routes through the square-constant-term map (shifting
        the identity on the Jacobian side when base != (0, q)); base inf+
        routes through the depressed-monic map.
        """
        if base.is_infinite:
            if base.inf < 0:
                raise ValueError("only inf+ is supported as an infinite base")
            E = self.jacobian_phi2()
            s = E.add(self.phi2(Q1), self.phi2(Q2))
            return self.phi2_inv(s)
        E = self.jacobian_long()
        pb = self.phi1(base)
        s = E.sub(E.add(self.phi1(Q1), self.phi1(Q2)), pb)
        return self.phi1_inv(s)

    def double_on_quartic(self, base: QPoint, Q: QPoint) -> QPoint:
        return self.add_on_quartic(base, Q, Q)

    def mul_on_quartic(self, base: QPoint, n: int, Q: QPoint) -> QPoint:
        """n-fold sum of Q under the base-point group law."""
        if base.is_infinite:
            if base.inf < 0:
                raise ValueError("only inf+ is supported as an infinite base")
            E = self.jacobian_phi2()
            return self.phi2_inv(E.mul(n, self.phi2(Q)))
        E = self.jacobian_long()
        pb = self.phi1(base)
        s = E.add(E.mul(n, E.sub(self.phi1(Q), pb)), pb)
        return self.phi1_inv(s)

    def __eq__(self, other):
        if not isinstance(other, QuarticCurve):
            return NotImplemented
        return self.coeffs() == other.coeffs()

    def __hash__(self):
        return hash(self.coeffs())

    def __repr__(self):
        if self.factors is not None:
            return "QuarticCurve%s" % "".join(repr(f) for f in self.factors)
        return "QuarticCurve(%s)" % ",".join(format_rat(v) for v in self.coeffs())


def _expand(facs: list[LinearFactor]) -> tuple[Rat, ...]:
    coeffs = [Fraction(1)]
    for f in facs:
        nxt = [Fraction(0)] * (len(coeffs) + 1)
        for i, c in enumerate(coeffs):
            nxt[i] += c * f.b
            nxt[i + 1] += c * f.a
        coeffs = nxt
    # ascending -> (a, b, c, d, e)
    return tuple(reversed(coeffs))


def parse_quartic(text: str) -> QuarticCurve:
    """Parse '(a1,b1)(a2,b2)(a3,b3)(a4,b4)' or 'a,b,c,d,e'."""
    s = text.strip()
    if s.startswith("("):
        parts = [p for p in s.replace(")", ")|").split("|") if p.strip()]
        facs = []
        for p in parts:
            p = p.strip()
            if not (p.startswith("(") and p.endswith(")")):
                raise ValueError("malformed factored quartic %r" % text)
            facs.append(tuple(parse_rat_list(p[1:-1], expect=2)))
        if len(facs) != 4:
            raise ValueError("factored quartic needs 4 factors, got %d" % len(facs))
        return QuarticCurve.from_factors(facs)
    vals = parse_rat_list(s, expect=5)
    return QuarticCurve(*vals)


def parse_qpoint(text: str) -> QPoint:
    """Parse 'u,v', 'inf+' or 'inf-'."""
    s = text.strip()
    if s == "inf+":
        return INF_PLUS
    if s == "inf-":
        return INF_MINUS
    u, v = parse_rat_list(s, expect=2)
    return QPoint(u, v)


def format_qpoint(P: QPoint) -> str:
    if P.inf > 0:
        return "inf+"
    if P.inf < 0:
        return "inf-"
    return "%s,%s" % (format_rat(P.u), format_rat(P.v))
