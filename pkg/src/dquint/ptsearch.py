"""Height-bounded rational point search on y^2 = polynomial right-hand
sides, the scaling map from a cubic right-hand side to a Weierstrass model,
and group-law generation of further points from found seeds.

Abscissas are enumerated as reduced fractions m/n with |m|, n <= height, so
every candidate is tested exactly once.  The search space can be split over
worker processes (the DQ_THREADS environment variable, surfaced through
``SearchConfig.threads``); results are merged back into the canonical
(denominator, numerator) order either way.
"""

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .exactnum import Rat, is_square, poly_degree, poly_eval
from .qmodel import QPoint, QuarticCurve
from .wmodel import EPoint, IDENTITY, WeierstrassCurve


@dataclass(frozen=True)
class SearchConfig:
    """height bounds |numerator| and denominator of searched abscissas;
    budget caps |m|, |n| in m*P1 + n*P2 generator combinations."""

    height: int = 20
    budget: int = 3
    threads: int = 1

    def __post_init__(self):
        if self.height < 1:
            raise ValueError("height must be >= 1")
        if self.budget < 0:
            raise ValueError("budget must be >= 0")
        if self.threads < 1:
            raise ValueError("threads must be >= 1")


def _scan(coeffs: list[Rat], dens: list[int], height: int) -> list[tuple[Rat, Rat]]:
    out = []
    for n in dens:
        for m in range(-height, height + 1):
            if gcd(abs(m), n) != 1:
                continue
            t = Fraction(m, n)
            val = poly_eval(coeffs, t)
            if val < 0:
                continue
            sq, root = is_square(val)
            if sq:
                out.append((t, root))
    return out


def search_rhs(rhs: list[Rat], cfg: SearchConfig) -> list[tuple[Rat, Rat]]:
    """All (t, r), r >= 0, with r^2 = rhs(t) and t = m/n reduced,
    |m|, n <= cfg.height; ascending by (n, m).

    ``rhs`` is given by ascending coefficients.
    """
    if poly_degree(rhs) == -1:
        raise ValueError("search needs a nonzero polynomial")
    coeffs = [Fraction(c) for c in rhs]
    dens = list(range(1, cfg.height + 1))
    if cfg.threads > 1:
        chunks = [dens[i::cfg.threads] for i in range(cfg.threads)]
        with ProcessPoolExecutor(max_workers=cfg.threads) as pool:
            parts = pool.map(_scan, [coeffs] * len(chunks), chunks,
                             [cfg.height] * len(chunks))
        found = [p for part in parts for p in part]
    else:
        found = _scan(coeffs, dens, cfg.height)
    found.sort(key=lambda tr: (tr[0].denominator, tr[0].numerator))
    return found


@dataclass(frozen=True)
class CubicModel:
    """Weierstrass model of r^2 = cubic(t) with its point transport."""

    curve: WeierstrassCurve
    lead: Rat

    def to_curve(self, t: Rat, r: Rat) -> EPoint:
        P = EPoint(self.lead * Fraction(t), self.lead * Fraction(r))
        if not self.curve.contains(P):
            raise ValueError("(%s, %s) does not satisfy the cubic" % (t, r))
        return P

    def from_curve(self, P: EPoint) -> tuple[Rat, Rat]:
        if P.is_identity:
            raise ValueError("the identity has no affine (t, r) preimage")
        return P.x / self.lead, P.y / self.lead


def cubic_to_weierstrass(rhs: list[Rat]) -> CubicModel:
    """Scale r^2 = c3 t^3 + c2 t^2 + c1 t + c0 into
    Y^2 = X^3 + c2 X^2 + c1 c3 X + c0 c3^2 via (t, r) -> (c3 t, c3 r).

    Raises on c3 = 0; a singular right-hand side is rejected by the
    Weierstrass constructor.
    """
    if poly_degree(rhs) != 3:
        raise ValueError("cubic_to_weierstrass needs degree exactly 3")
    c0, c1, c2, c3 = (Fraction(c) for c in rhs[:4])
    curve = WeierstrassCurve(0, c2, 0, c1 * c3, c0 * c3 * c3)
    return CubicModel(curve, c3)


def generate(curve, seeds, cfg: SearchConfig, base: QPoint | None = None):
    """Yield the nonzero combinations m*P1 + n*P2 (|m|, |n| <= cfg.budget)
    of up to two seed points, deduplicated, each exactly on the curve.

    ``curve`` is a WeierstrassCurve (group law used directly) or a
    QuarticCurve (law transferred through the square-constant-term map;
    ``base`` is then the identity point).  Combinations that land on points
    the quartic map cannot represent are skipped.
    """
    if isinstance(curve, WeierstrassCurve):
        yield from _generate_weierstrass(curve, list(seeds), cfg)
    elif isinstance(curve, QuarticCurve):
        if base is None:
            raise ValueError("generating on a quartic model needs a base point")
        yield from _generate_quartic(curve, base, list(seeds), cfg)
    else:
        raise TypeError("unsupported curve context %r" % type(curve))


def _multiples(add, neg, identity, P, budget):
    out = {0: identity}
    acc = identity
    for m in range(1, budget + 1):
        acc = add(acc, P)
        out[m] = acc
        out[-m] = neg(acc)
    return out


def _combos(add, neg, identity, gens, budget):
    m1 = _multiples(add, neg, identity, gens[0], budget)
    m2 = (_multiples(add, neg, identity, gens[1], budget)
          if len(gens) > 1 else {0: identity})
    seen = {identity}
    for m in range(-budget, budget + 1):
        for n in sorted(m2):
            q = add(m1[m], m2[n])
            if q not in seen:
                seen.add(q)
                yield q


def _generate_weierstrass(E: WeierstrassCurve, seeds, cfg):
    for P in seeds:
        if not E.contains(P):
            raise ValueError("seed %r is not on the curve" % (P,))
    gens = [P for P in seeds if not P.is_identity][:2]
    if not gens:
        return
    for P in _combos(E.add, E.neg, IDENTITY, gens, cfg.budget):
        assert E.contains(P)
        yield P


def _generate_quartic(C: QuarticCurve, base: QPoint, seeds, cfg):
    E = C.jacobian_long()
    pb = C.phi1(base)
    images = []
    for P in seeds:
        if not C.contains(P):
            raise ValueError("seed %r is not on the curve" % (P,))
        if P.is_infinite:
            raise ValueError("infinite seeds are not supported here")
        images.append(E.sub(C.phi1(P), pb))
    gens = [P for P in images if not P.is_identity][:2]
    if not gens:
        return
    from .qmodel import ExceptionalPointError

    for P in _combos(E.add, E.neg, IDENTITY, gens, cfg.budget):
        try:
            Q = C.phi1_inv(E.add(P, pb))
        except ExceptionalPointError:
            continue
        assert C.contains(Q)
        yield Q
