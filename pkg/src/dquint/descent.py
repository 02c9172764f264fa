"""Divisibility-by-2 on factored quartic models.

A rational point Q on y^2 = f1(x) f2(x) f3(x) f4(x) is twice a rational
point (for the group law with identity (x0, y0)) exactly when every product
fi(x0) fj(x0) fi(x(Q)) fj(x(Q)) is a rational square.  This module decides
that criterion, produces square-class certificates, and derives from it the
rational-4-torsion test on curves of the shape v^2 = prod(ki*u + 1).

Wherever the criterion's rational maps vanish (x(Q) hits a factor root or
the base abscissa), the decision falls back to the independent
division-polynomial halving oracle on the Jacobian.
"""

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .exactnum import Rat, format_rat, is_square
from .qmodel import QPoint, QuarticCurve
from .wmodel import EPoint, WeierstrassCurve

PAIRS = tuple(combinations(range(4), 2))


@dataclass
class SquareClassCert:
    """Outcome of the six pairwise square tests at one point.

    ``pair_values`` maps (i, j) with i < j (0-based) to
    (value, is_square, witness or None).  ``delta`` is f1(x(Q)), the
    representative of the common square class; ``z`` is filled only when the
    four factor values decompose as delta * z_i^2 with rational z_i.
    """

    pair_values: dict[tuple[int, int], tuple[Rat, bool, Rat | None]]
    delta: Rat
    z: list[Rat] | None = None

    def all_square(self) -> bool:
        return all(flag for (_, flag, _) in self.pair_values.values())

    def to_lines(self) -> list[str]:
        out = []
        for (i, j), (val, flag, wit) in sorted(self.pair_values.items()):
            line = "g%d%d = %s %s" % (i + 1, j + 1, format_rat(val),
                                      "square" if flag else "non-square")
            if wit is not None:
                line += " sqrt=%s" % format_rat(wit)
            out.append(line)
        out.append("delta = %s" % format_rat(self.delta))
        if self.z is not None:
            out.append("z = %s" % ",".join(format_rat(z) for z in self.z))
        return out

    def to_obj(self) -> dict:
        return {
            "pairs": [
                {"i": i + 1, "j": j + 1, "value": format_rat(val),
                 "square": flag,
                 "sqrt": None if wit is None else format_rat(wit)}
                for (i, j), (val, flag, wit) in sorted(self.pair_values.items())
            ],
            "delta": format_rat(self.delta),
            "z": None if self.z is None else [format_rat(z) for z in self.z],
        }


def _factored(C: QuarticCurve) -> QuarticCurve:
    if C.factors is None:
        raise ValueError("the criterion needs the factored form of the quartic")
    return C


def gij(C: QuarticCurve, x0: Rat, xq: Rat, i: int, j: int) -> Rat:
    """f_i(x0) f_j(x0) f_i(xq) f_j(xq), exact (0-based i, j)."""
    _factored(C)
    x0, xq = Fraction(x0), Fraction(xq)
    for x in (x0, xq):
        if not is_square(C.rhs(x))[0]:
            raise ValueError("%s is not the abscissa of a rational point"
                             % format_rat(x))
    fi, fj = C.factors[i], C.factors[j]
    if fi(x0) == 0 or fj(x0) == 0:
        raise ValueError("base abscissa lies on a factor root")
    return fi(x0) * fj(x0) * fi(xq) * fj(xq)


def _as_affine(P: QPoint, what: str) -> QPoint:
    if P.is_infinite:
        raise ValueError("%s must be an affine point" % what)
    return P


def oracle_is_double(C: QuarticCurve, base: QPoint, Q: QPoint) -> bool:
    """Independent decision via the halving oracle on the Jacobian.

    The curve is shifted so the base abscissa moves to 0 (making the
    constant term the square y0^2), pushed through the square-constant map,
    and the image of Q (translated so the base is the identity) is halved.
    """
    base = _as_affine(base, "base")
    Q = _as_affine(Q, "Q")
    C._require(base)
    C._require(Q)
    if base.v == 0:
        raise ValueError("base must not be a 2-torsion point of the model")
    shifted = C.shift(base.u)
    E = shifted.jacobian_long()
    pb = shifted.phi1(C.shift_point(base, base.u))
    target = E.sub(shifted.phi1(C.shift_point(Q, base.u)), pb)
    return bool(E.halves(target))


def is_double(C: QuarticCurve, base: QPoint, Q: QPoint
              ) -> tuple[bool, SquareClassCert | None]:
    """Decide Q in 2C(Q) for the group law with `base` as identity.

    Returns (verdict, certificate); the certificate is None when the
    criterion does not apply at Q (a factor vanishes there, or Q shares the
    base abscissa) and the halving oracle decided instead.
    """
    _factored(C)
    base = _as_affine(base, "base")
    Q = _as_affine(Q, "Q")
    C._require(base)
    C._require(Q)
    x0, xq = base.u, Q.u
    base_vals = C.factor_values(x0)
    if any(v == 0 for v in base_vals):
        raise ValueError("base abscissa lies on a factor root")
    q_vals = C.factor_values(xq)
    if xq == x0 or any(v == 0 for v in q_vals):
        return oracle_is_double(C, base, Q), None

    pair_values = {}
    flags = {}
    for i, j in PAIRS:
        val = base_vals[i] * base_vals[j] * q_vals[i] * q_vals[j]
        sq, wit = is_square(val)
        pair_values[(i, j)] = (val, sq, wit)
        flags[(i, j)] = sq
    # three of the six tests determine the rest; cross-check the redundancy
    for i, j, k in combinations(range(4), 3):
        if flags[(i, j)] and flags[(i, k)]:
            assert flags[(j, k)], "inconsistent square classes at pair (%d,%d)" % (j, k)

    delta = q_vals[0]
    cert = SquareClassCert(pair_values, delta)
    verdict = all(flags.values())
    if verdict and all(is_square(base_vals[i] * base_vals[j])[0] for i, j in PAIRS):
        z = [Fraction(1)]
        for i in (1, 2, 3):
            sq, w = is_square(q_vals[0] * q_vals[i])
            assert sq, "pair squares plus base squares force f1*fi square"
            z.append(w / abs(q_vals[0]))
        assert all(delta * z[i] ** 2 == q_vals[i] for i in range(4))
        cert.z = z
    return verdict, cert


def is_double_inf_base(C: QuarticCurve, Q: QPoint) -> bool:
    """The criterion with the base at inf+ (identity at infinity).

    Requires the product of the factor slopes -- the leading coefficient --
    to be a nonzero rational square, so that the infinite points are
    rational.  Pairs become a_i a_j f_i(x(Q)) f_j(x(Q)).
    """
    _factored(C)
    Q = _as_affine(Q, "Q")
    C._require(Q)
    lead_sq, alpha = is_square(C.a)
    if not lead_sq or alpha == 0:
        raise ValueError("inf-base criterion needs a nonzero square leading"
                         " coefficient, got %s" % format_rat(C.a))
    q_vals = C.factor_values(Q.u)
    if any(v == 0 for v in q_vals):
        return _oracle_is_double_inf(C, Q, alpha)
    for i, j in PAIRS:
        val = C.factors[i].a * C.factors[j].a * q_vals[i] * q_vals[j]
        if not is_square(val)[0]:
            return False
    return True


def _oracle_is_double_inf(C: QuarticCurve, Q: QPoint, alpha: Rat) -> bool:
    # scale to a monic model (v -> v/alpha), depress, and use the map that
    # sends inf+ to the identity
    monic = QuarticCurve(1, C.b / C.a, C.c / C.a, C.d / C.a, C.e / C.a)
    dep, s = monic.depressed()
    Qm = dep.shift_point(QPoint(Q.u, Q.v / alpha), s)
    E = dep.jacobian_phi2()
    return bool(E.halves(dep.phi2(Qm)))


def delta_certificate(C: QuarticCurve, base: QPoint, Q: QPoint
                      ) -> tuple[bool, Rat]:
    """Square test of the common class delta_Q, plus the extension candidate.

    Requires all products f_i(x0) f_j(x0) to be squares; then, for a point
    already known to be a double, delta_Q is a square exactly when f_1(x(Q))
    is, and x(Q) is the candidate fifth element.
    """
    _factored(C)
    base = _as_affine(base, "base")
    Q = _as_affine(Q, "Q")
    base_vals = C.factor_values(base.u)
    for i, j in PAIRS:
        if not is_square(base_vals[i] * base_vals[j])[0]:
            raise ValueError("delta certificate needs all f_i(x0) f_j(x0)"
                             " to be squares")
    delta = C.factors[0](Q.u)
    return is_square(delta)[0], Q.u


# -- rational 4-torsion on v^2 = prod(k_i u + 1) -----------------------------


def _check_k(k) -> list[Rat]:
    ks = [Fraction(v) for v in k]
    if len(ks) != 4:
        raise ValueError("expected exactly 4 slopes")
    if any(v == 0 for v in ks):
        raise ValueError("slopes must be nonzero")
    if len(set(ks)) != 4:
        raise ValueError("slopes must be pairwise distinct")
    return ks


def k_curve(k) -> QuarticCurve:
    """The model v^2 = (k1 u + 1)(k2 u + 1)(k3 u + 1)(k4 u + 1)."""
    ks = _check_k(k)
    return QuarticCurve.from_factors([(v, 1) for v in ks])


def has_rational_4_torsion(k) -> tuple[bool, str | None]:
    """Whether the model of k_curve(k) has a rational point of order 4.

    Checks, in this fixed order, whether both members of one of the pairings
      (i)   (k1-k3)(k2-k4) and (k1-k2)(k3-k4)
      (ii)  (k2-k3)(k1-k4) and (k1-k2)(k4-k3)
      (iii) (k3-k2)(k1-k4) and (k1-k3)(k4-k2)
    are rational squares; returns the first satisfied label, or None.
    """
    k1, k2, k3, k4 = _check_k(k)
    conditions = (
        ("i", (k1 - k3) * (k2 - k4), (k1 - k2) * (k3 - k4)),
        ("ii", (k2 - k3) * (k1 - k4), (k1 - k2) * (k4 - k3)),
        ("iii", (k3 - k2) * (k1 - k4), (k1 - k3) * (k4 - k2)),
    )
    for label, p, q in conditions:
        if is_square(p)[0] and is_square(q)[0]:
            return True, label
    return False, None


@dataclass(frozen=True)
class TorsionPreimage:
    torsion: EPoint
    preimage: QPoint | None
    note: str | None = None


def two_torsion_preimages(k) -> list[TorsionPreimage]:
    """The three 2-torsion points of the Jacobian of k_curve(k) in closed
    form, with their quartic preimages (or a note when the pairing
    denominator vanishes)."""
    k1, k2, k3, k4 = _check_k(k)
    C = k_curve((k1, k2, k3, k4))
    E = C.jacobian_long()

    def point(x, y):
        P = EPoint(x, y)
        assert E.contains(P) and E.add(P, P).is_identity
        return P

    p2 = point(-k1 * k4 - k2 * k3,
               (k1 * k1 * k4 - k1 * k2 * k3 - k1 * k2 * k4 - k1 * k3 * k4
                + k1 * k4 * k4 + k2 * k2 * k3 + k2 * k3 * k3 - k2 * k3 * k4) / 2)
    p3 = point(-k1 * k3 - k2 * k4,
               (k1 * k1 * k3 - k1 * k2 * k3 - k1 * k2 * k4 + k1 * k3 * k3
                - k1 * k3 * k4 + k2 * k2 * k4 - k2 * k3 * k4 + k2 * k4 * k4) / 2)
    p4 = point(-k1 * k2 - k3 * k4,
               (k1 * k1 * k2 + k1 * k2 * k2 - k1 * k2 * k3 - k1 * k2 * k4
                - k1 * k3 * k4 - k2 * k3 * k4 + k3 * k3 * k4 + k3 * k4 * k4) / 2)

    specs = (
        (p2, k2 * k3 - k1 * k4, k1 - k2 - k3 + k4,
         -((k1 - k2) * (k1 - k3) * (k2 - k4) * (k3 - k4))),
        (p3, k1 * k3 - k2 * k4, -k1 + k2 - k3 + k4,
         (k1 - k2) * (k2 - k3) * (k1 - k4) * (k3 - k4)),
        (p4, k1 * k2 - k3 * k4, -k1 - k2 + k3 + k4,
         (k1 - k3) * (-k2 + k3) * (k1 - k4) * (k2 - k4)),
    )
    out = []
    for P, den, unum, vnum in specs:
        if den == 0:
            out.append(TorsionPreimage(P, None, "pairing denominator vanishes"))
            continue
        pre = QPoint(unum / den, vnum / (den * den))
        assert C.contains(pre)
        assert C.phi1(pre) == P
        out.append(TorsionPreimage(P, pre))
    return out


def four_torsion_oracle(k) -> bool:
    """Oracle restatement: some 2-torsion point of the Jacobian is itself
    twice a rational point."""
    E = k_curve(k).jacobian_long()
    return any(E.halves(T) for T in E.two_torsion())
