"""Long Weierstrass curves over Q with exact group law, 2-torsion, and a
division-polynomial halving routine.

Everything is a `Fraction`; points either lie on the curve exactly or are
rejected.  The halving routine is deliberately independent of the quartic
descent criterion: it solves the doubling relation for x, recovers y from
the curve equation, and keeps only candidates whose exact re-doubling
reproduces the input point.
"""

from fractions import Fraction

from .exactnum import Rat, format_rat, is_square, rational_roots


class EPoint:
    """The identity or an affine point (x, y) on a long Weierstrass curve."""

    __slots__ = ("x", "y")

    def __init__(self, x: Rat | None = None, y: Rat | None = None):
        if (x is None) != (y is None):
            raise ValueError("EPoint needs both coordinates or neither")
        self.x = None if x is None else Fraction(x)
        self.y = None if y is None else Fraction(y)

    @property
    def is_identity(self) -> bool:
        return self.x is None

    def __eq__(self, other):
        if not isinstance(other, EPoint):
            return NotImplemented
        return self.x == other.x and self.y == other.y

    def __hash__(self):
        return hash((self.x, self.y))

    def __repr__(self):
        if self.is_identity:
            return "O"
        return "(%s, %s)" % (format_rat(self.x), format_rat(self.y))


IDENTITY = EPoint()


class WeierstrassCurve:
    """y^2 + a1*x*y + a3*y = x^3 + a2*x^2 + a4*x + a6 over Q.

    Derived b-invariants, c4/c6, discriminant and j are computed at
    construction.  Singular equations are rejected unless
    ``allow_singular=True``; the group operations always refuse them.
    """

    def __init__(self, a1, a2, a3, a4, a6, allow_singular: bool = False):
        self.a1 = Fraction(a1)
        self.a2 = Fraction(a2)
        self.a3 = Fraction(a3)
        self.a4 = Fraction(a4)
        self.a6 = Fraction(a6)

        a1, a2, a3, a4, a6 = self.a1, self.a2, self.a3, self.a4, self.a6
        self.b2 = a1 * a1 + 4 * a2
        self.b4 = 2 * a4 + a1 * a3
        self.b6 = a3 * a3 + 4 * a6
        self.b8 = (a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4
                   + a2 * a3 * a3 - a4 * a4)
        assert 4 * self.b8 == self.b2 * self.b6 - self.b4 * self.b4
        self.c4 = self.b2 * self.b2 - 24 * self.b4
        self.c6 = -self.b2 ** 3 + 36 * self.b2 * self.b4 - 216 * self.b6
        self.disc = (-self.b2 * self.b2 * self.b8 - 8 * self.b4 ** 3
                     - 27 * self.b6 * self.b6 + 9 * self.b2 * self.b4 * self.b6)
        assert 1728 * self.disc == self.c4 ** 3 - self.c6 ** 2
        if self.disc == 0 and not allow_singular:
            raise ValueError("singular Weierstrass equation (disc = 0)")
        self.j = None if self.disc == 0 else self.c4 ** 3 / self.disc

    # -- membership ---------------------------------------------------------

    def contains(self, P: EPoint) -> bool:
        if P.is_identity:
            return True
        x, y = P.x, P.y
        return (y * y + self.a1 * x * y + self.a3 * y
                == x ** 3 + self.a2 * x * x + self.a4 * x + self.a6)

    def _require(self, P: EPoint):
        if not self.contains(P):
            raise ValueError("point %r is not on %r" % (P, self))
        if self.disc == 0:
            raise ValueError("group law refused on a singular curve")

    # -- group law ----------------------------------------------------------

    def neg(self, P: EPoint) -> EPoint:
        self._require(P)
        if P.is_identity:
            return IDENTITY
        return EPoint(P.x, -P.y - self.a1 * P.x - self.a3)

    def add(self, P: EPoint, Q: EPoint) -> EPoint:
        self._require(P)
        self._require(Q)
        if P.is_identity:
            return Q
        if Q.is_identity:
            return P
        x1, y1, x2, y2 = P.x, P.y, Q.x, Q.y
        if x1 == x2:
            if y1 + y2 + self.a1 * x1 + self.a3 == 0:
                return IDENTITY
            # tangent line at P (= Q here)
            lam = ((3 * x1 * x1 + 2 * self.a2 * x1 + self.a4 - self.a1 * y1)
                   / (2 * y1 + self.a1 * x1 + self.a3))
        else:
            lam = (y2 - y1) / (x2 - x1)
        nu = y1 - lam * x1
        x3 = lam * lam + self.a1 * lam - self.a2 - x1 - x2
        y3 = -(lam + self.a1) * x3 - nu - self.a3
        return EPoint(x3, y3)

    def sub(self, P: EPoint, Q: EPoint) -> EPoint:
        return self.add(P, self.neg(Q))

    def mul(self, n: int, P: EPoint) -> EPoint:
        self._require(P)
        if n < 0:
            return self.neg(self.mul(-n, P))
        acc = IDENTITY
        addend = P
        while n:
            if n & 1:
                acc = self.add(acc, addend)
            n >>= 1
            if n:
                addend = self.add(addend, addend)
        return acc

    # -- 2-division ---------------------------------------------------------

    def two_torsion(self) -> list[EPoint]:
        """Rational points T != O with 2T = O, at most three of them."""
        if self.disc == 0:
            raise ValueError("2-torsion refused on a singular curve")
        xs = rational_roots([self.b6, 2 * self.b4, self.b2, Fraction(4)])
        pts = [EPoint(x, -(self.a1 * x + self.a3) / 2) for x in xs]
        for T in pts:
            assert self.contains(T)
        return pts

    def halves(self, P: EPoint) -> list[EPoint]:
        """All rational R with 2R = P, deterministically ordered.

        The x-coordinates solve the quartic obtained from the duplication
        law; y is recovered from the curve equation and each candidate is
        kept only if its exact doubling equals P.
        """
        self._require(P)
        if P.is_identity:
            return [IDENTITY] + self.two_torsion()
        xp = P.x
        # numerator(x(2R)) - x(P) * denominator(x(2R)) = 0
        coeffs = [
            -self.b8 - xp * self.b6,
            -2 * self.b6 - xp * 2 * self.b4,
            -self.b4 - xp * self.b2,
            Fraction(0) - xp * 4,
            Fraction(1),
        ]
        out = []
        for x in rational_roots(coeffs):
            # y^2 + (a1 x + a3) y - (x^3 + a2 x^2 + a4 x + a6) = 0
            b = self.a1 * x + self.a3
            sq, root = is_square(b * b + 4 * (x ** 3 + self.a2 * x * x
                                              + self.a4 * x + self.a6))
            if not sq:
                continue
            for y in {(-b + root) / 2, (-b - root) / 2}:
                R = EPoint(x, y)
                if self.contains(R) and self.add(R, R) == P:
                    out.append(R)
        out.sort(key=lambda R: (R.x, R.y))
        return out

    # -- misc ---------------------------------------------------------------

    def coeffs(self) -> tuple[Rat, Rat, Rat, Rat, Rat]:
        return (self.a1, self.a2, self.a3, self.a4, self.a6)

    def __eq__(self, other):
        if not isinstance(other, WeierstrassCurve):
            return NotImplemented
        return self.coeffs() == other.coeffs()

    def __hash__(self):
        return hash(self.coeffs())

    def __repr__(self):
        return "WeierstrassCurve(%s)" % ",".join(format_rat(a) for a in self.coeffs())


def parse_epoint(text: str) -> EPoint:
    """Parse 'O' or 'x,y'."""
    s = text.strip()
    if s in ("O", "o", "id", "identity"):
        return IDENTITY
    from .exactnum import parse_rat_list

    x, y = parse_rat_list(s, expect=2)
    return EPoint(x, y)


def format_epoint(P: EPoint) -> str:
    if P.is_identity:
        return "O"
    return "%s,%s" % (format_rat(P.x), format_rat(P.y))
