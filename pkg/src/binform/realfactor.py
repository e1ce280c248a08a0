"""Factorization of real binary forms into lines and definite quadratics.

Over the reals a binary form splits, up to sign and a positive constant, as

    f = +- L_1^a1 * ... * L_l^al * Q_1^b1 * ... * Q_k^bk

with pairwise non-proportional linear forms L_i and pairwise non-proportional
positive definite quadratic forms Q_j.  This module computes that structure
exactly where it can (real roots via Sturm sequences on the dehomogenization)
and with certified enclosures where it cannot (quadratic coefficients, which
live over the reals).  Certification of a conjugate root pair uses the bound
|z - root| <= n |w(z)| / |w'(z)|, evaluated in outward-rounded interval
arithmetic, so every enclosure is a mathematical statement, not a hope.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

import mpmath
from mpmath import iv, mp

from .errors import NotRefinedError
from .polyring import (
    HomogeneousForm,
    UnivariatePoly,
    gcd_univariate,
    squarefree_decomposition,
)

_DEFAULT_EPS = 1e-12
_MAX_PREC_BITS = 1 << 14


# ---------------------------------------------------------------------------
# Sturm machinery

def _sturm_chain(u: UnivariatePoly) -> list[UnivariatePoly]:
    chain = [u, u.derivative()]
    while not chain[-1].is_zero and chain[-1].degree >= 1:
        _, r = chain[-2].divmod(chain[-1])
        if r.is_zero:
            break
        chain.append(-r)
    return [c for c in chain if not c.is_zero]


def _variations(chain: list[UnivariatePoly], t: Fraction) -> int:
    signs = []
    for c in chain:
        v = c(t)
        if v != 0:
            signs.append(1 if v > 0 else -1)
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def _count_roots(chain, a: Fraction, b: Fraction) -> int:
    return _variations(chain, a) - _variations(chain, b)


def _cauchy_bound(u: UnivariatePoly) -> Fraction:
    lead = abs(u.coeffs[-1])
    if len(u.coeffs) == 1:
        return Fraction(1)
    return 1 + max(abs(c) for c in u.coeffs[:-1]) / lead


def _nonroot_point(u: UnivariatePoly, a: Fraction, b: Fraction) -> Fraction:
    """A point strictly inside (a, b) where u does not vanish."""
    span = b - a
    m = a + span / 2
    j = 2
    while u(m) == 0:
        m = a + span * Fraction(2 ** (j - 1) + 1, 2**j)
        j += 1
        if j > 64:
            raise ArithmeticError("could not find a non-root split point")
    return m


@dataclass(frozen=True)
class IsolatedRoot:
    """One real root of a squarefree rational polynomial.

    The open interval (lo, hi) contains exactly one root of ``poly``;
    neither endpoint is a root and the endpoint signs differ.
    """

    poly: UnivariatePoly
    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        if not (self.lo < self.hi):
            raise ValueError("empty isolation interval")
        va, vb = self.poly(self.lo), self.poly(self.hi)
        if va == 0 or vb == 0 or (va > 0) == (vb > 0):
            raise ValueError("interval endpoints must straddle a single root")

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def mid(self) -> Fraction:
        return (self.lo + self.hi) / 2

    @property
    def approx(self) -> float:
        return float(self.mid)

    def refine(self, eps: float) -> "IsolatedRoot":
        """Bisect until the interval is narrower than eps."""
        target = Fraction(eps)
        if self.width < target:
            return self
        lo, hi, u = self.lo, self.hi, self.poly
        slo = 1 if u(lo) > 0 else -1
        while hi - lo >= target:
            mid = (lo + hi) / 2
            v = u(mid)
            if v == 0:
                # the root is rational; shrink symmetrically around it
                w = (hi - lo) / 8
                while 2 * w >= target:
                    w /= 8
                lo, hi = mid - w, mid + w
                break
            if (v > 0) == (slo > 0):
                lo = mid
            else:
                hi = mid
        return IsolatedRoot(u, lo, hi)

    def contains(self, t: Fraction) -> bool:
        return self.lo < t < self.hi


def isolate_real_roots(u: UnivariatePoly) -> list[IsolatedRoot]:
    """Exact isolation of all real roots, sorted increasing.

    Multiple roots are reduced away first; the returned intervals refer to
    the squarefree part of u.
    """
    if u.is_zero or u.degree < 1:
        return []
    g = gcd_univariate(u, u.derivative())
    w = u.div_exact(g).primitive()[0] if g.degree > 0 else u.primitive()[0]
    if w.degree < 1:
        return []
    chain = _sturm_chain(w)
    bound = _cauchy_bound(w)
    out: list[IsolatedRoot] = []

    def split(a: Fraction, b: Fraction, count: int):
        if count == 0:
            return
        if count == 1:
            out.append(IsolatedRoot(w, a, b))
            return
        m = _nonroot_point(w, a, b)
        left = _count_roots(chain, a, m)
        split(a, m, left)
        split(m, b, count - left)

    # the Cauchy bound is strict, so neither endpoint is a root
    split(-bound, bound, _count_roots(chain, -bound, bound))
    out.sort(key=lambda r: r.mid)
    return out


# ---------------------------------------------------------------------------
# certified conjugate pairs

def _mpf_to_fraction(x) -> Fraction:
    x = mpmath.mpf(x)
    if not mp.isfinite(x):
        raise ArithmeticError("non-finite interval endpoint")
    sign, man, exp, _ = x._mpf_
    if man == 0:
        return Fraction(0)
    v = Fraction(-man if sign else man)
    return v * 2**exp if exp >= 0 else v / 2**-exp


def _iv_abs_hi(x):
    # upper endpoint of |x|, outward rounded by the iv context
    return abs(x).b


def _iv_abs_lo(x):
    return abs(x).a


def _iv_complex_horner(int_coeffs_high: list[int], zr, zi):
    """Evaluate an integer polynomial at the complex interval (zr, zi)."""
    wr, wi = iv.mpf(0), iv.mpf(0)
    for c in int_coeffs_high:
        wr, wi = wr * zr - wi * zi + iv.mpf(c), wr * zi + wi * zr
    return wr, wi


def _disc_radius(w_int_high: list[int], dw_int_high: list[int], zeta):
    """Rigorous radius so that disc(zeta, radius) contains a root of w.

    Uses |zeta - root| <= n |w(zeta)| / |w'(zeta)| with outward-rounded
    interval evaluation; raises when the derivative bound degenerates.
    """
    n = len(w_int_high) - 1
    zr, zi = iv.mpf(mp.re(zeta)), iv.mpf(mp.im(zeta))
    wr, wi = _iv_complex_horner(w_int_high, zr, zi)
    dr, di = _iv_complex_horner(dw_int_high, zr, zi)
    num = abs(wr) + abs(wi)                         # >= |w(zeta)| interval
    den_lo = max(_iv_abs_lo(dr), _iv_abs_lo(di))    # <= |w'(zeta)|
    if den_lo == 0:
        raise ArithmeticError("derivative enclosure straddles zero")
    ratio = iv.mpf(n) * num / iv.mpf(den_lo)
    return mp.mpf(ratio.b) * mp.mpf("1.0000000001")


def _int_high(u: UnivariatePoly) -> list[int]:
    part, _ = u.primitive()
    return [c.numerator for c in reversed(part.coeffs)]


def _derive_int(high: list[int]) -> list[int]:
    # derivative of the SAME integer scaling; an independently normalized
    # derivative would skew Newton steps and the disc radius
    n = len(high) - 1
    return [c * (n - i) for i, c in enumerate(high[:-1])]


@dataclass(frozen=True)
class QuadraticFactor:
    """Positive definite factor x^2 + b*x*y + c*y^2 with certified bounds.

    The true coefficients lie in [b_lo, b_hi] and [c_lo, c_hi]; (mu, nu) is
    a float approximation of the root pair mu +- i*nu of the dehomogenized
    layer, nu > 0.  ``layer`` is the exact squarefree polynomial the pair
    certifies against, which is what refinement reuses.
    """

    layer: UnivariatePoly
    b_lo: Fraction
    b_hi: Fraction
    c_lo: Fraction
    c_hi: Fraction
    beta: int
    mu: float
    nu: float

    def __post_init__(self):
        if self.beta < 1:
            raise ValueError("multiplicity must be >= 1")
        if not (self.b_lo <= self.b_hi and self.c_lo <= self.c_hi):
            raise ValueError("inverted enclosure")
        if self.c_lo <= 0:
            raise NotRefinedError("cannot certify positivity of c")
        # definiteness: sup(b^2) < inf(4c)
        if max(self.b_lo**2, self.b_hi**2) >= 4 * self.c_lo:
            raise NotRefinedError("cannot certify b^2 - 4c < 0 at this width")

    @property
    def a(self) -> Fraction:
        return Fraction(1)

    @property
    def b_mid(self) -> Fraction:
        return (self.b_lo + self.b_hi) / 2

    @property
    def c_mid(self) -> Fraction:
        return (self.c_lo + self.c_hi) / 2

    @property
    def width(self) -> Fraction:
        return max(self.b_hi - self.b_lo, self.c_hi - self.c_lo)

    def coefficients_float(self) -> tuple[float, float, float]:
        return (1.0, float(self.b_mid), float(self.c_mid))

    def gram_matrix(self) -> list[list[float]]:
        """[[a, b/2], [b/2, c]] as floats; positive definite."""
        b = float(self.b_mid)
        return [[1.0, b / 2.0], [b / 2.0, float(self.c_mid)]]

    def overlaps(self, other: "QuadraticFactor") -> bool:
        b_apart = self.b_hi < other.b_lo or other.b_hi < self.b_lo
        c_apart = self.c_hi < other.c_lo or other.c_hi < self.c_lo
        return not (b_apart or c_apart)


@dataclass(frozen=True)
class LinearFactor:
    """Linear factor with multiplicity; root is None for the axis factor x,
    otherwise the factor is y - t*x with t the enclosed root."""

    root: Optional[IsolatedRoot]
    alpha: int

    def __post_init__(self):
        if self.alpha < 1:
            raise ValueError("multiplicity must be >= 1")

    @property
    def is_axis(self) -> bool:
        return self.root is None

    def line_direction(self) -> tuple[float, float]:
        """A direction vector of the zero line of the factor."""
        if self.is_axis:
            return (0.0, 1.0)
        return (1.0, self.root.approx)

    def ray_angles(self) -> tuple[float, float]:
        """Angles of the two antipodal rays of the line, in [0, 2*pi)."""
        dx, dy = self.line_direction()
        a = math.atan2(dy, dx) % (2 * math.pi)
        return (a, (a + math.pi) % (2 * math.pi))


@dataclass(frozen=True)
class FactorizationStructure:
    """Certified multiplicative structure of a binary form."""

    form: HomogeneousForm
    sign: int
    linear: tuple[LinearFactor, ...]
    quadratic: tuple[QuadraticFactor, ...]

    def __post_init__(self):
        total = sum(lf.alpha for lf in self.linear) \
            + 2 * sum(qf.beta for qf in self.quadratic)
        if total != self.form.degree:
            raise ValueError(
                f"multiplicities sum to {total}, degree is {self.form.degree}")
        if self.sign not in (-1, 1):
            raise ValueError("sign must be +1 or -1")

    @property
    def l(self) -> int:
        return len(self.linear)

    @property
    def k(self) -> int:
        return len(self.quadratic)

    @property
    def degree(self) -> int:
        return self.form.degree

    def max_width(self) -> Fraction:
        widths = [lf.root.width for lf in self.linear if not lf.is_axis]
        widths += [qf.width for qf in self.quadratic]
        return max(widths, default=Fraction(0))

    def is_separated(self) -> bool:
        """All enclosures pairwise disjoint, so factors are provably distinct."""
        roots = [lf.root for lf in self.linear if not lf.is_axis]
        for i in range(len(roots)):
            for j in range(i + 1, len(roots)):
                if not (roots[i].hi < roots[j].lo or roots[j].hi < roots[i].lo):
                    return False
        for i in range(len(self.quadratic)):
            for j in range(i + 1, len(self.quadratic)):
                if self.quadratic[i].overlaps(self.quadratic[j]):
                    return False
        return True

    def reconstruction_gap(self) -> float:
        """Distance between f and the expanded certified factor product.

        The enclosed factors are multiplied out in conservative
        midpoint-radius arithmetic and matched to f at its largest
        coefficient.  The result is the worst distance from a coefficient
        of f to the corresponding product enclosure, relative to f's
        largest coefficient; it shrinks as the enclosures are refined.
        """
        prod = [(1.0, 0.0)]  # coefficient balls, index = y-exponent
        for lf in self.linear:
            if lf.is_axis:
                fac = [(1.0, 0.0), (0.0, 0.0)]      # the form x
            else:
                t = _ball_from_bounds(float(lf.root.lo), float(lf.root.hi))
                fac = [(-t[0], t[1]), (1.0, 0.0)]   # y - t*x
            for _ in range(lf.alpha):
                prod = _ball_mul_poly(prod, fac)
        for qf in self.quadratic:
            b = _ball_from_bounds(float(qf.b_lo), float(qf.b_hi))
            c = _ball_from_bounds(float(qf.c_lo), float(qf.c_hi))
            fac = [(1.0, 0.0), b, c]                # x^2 + b*x*y + c*y^2
            for _ in range(qf.beta):
                prod = _ball_mul_poly(prod, fac)
        p = self.form.degree
        assert len(prod) == p + 1
        f_coeffs = [float(cv) for cv in self.form.coefficients()]
        imax = max(range(p + 1), key=lambda i: abs(f_coeffs[i]))
        pm, pr = prod[imax]
        if abs(pm) <= pr:
            return math.inf
        lam = f_coeffs[imax] / (self.sign * pm)
        gap = 0.0
        norm = abs(f_coeffs[imax])
        for i in range(p + 1):
            m, r = prod[i]
            target = self.sign * lam * m
            rad = abs(lam) * r + 1e-15 * (abs(target) + 1.0)
            gap = max(gap, max(0.0, abs(f_coeffs[i] - target) - rad) / norm)
        return gap


def _ball_from_bounds(lo: float, hi: float) -> tuple[float, float]:
    m = 0.5 * (lo + hi)
    return (m, 0.5 * (hi - lo) + 1e-16 * (abs(m) + 1.0))


def _ball_add(x, y):
    m = x[0] + y[0]
    return (m, x[1] + y[1] + 1e-16 * (abs(m) + 1.0))


def _ball_mul(x, y):
    m = x[0] * y[0]
    r = abs(x[0]) * y[1] + abs(y[0]) * x[1] + x[1] * y[1] + 1e-16 * (abs(m) + 1.0)
    return (m, r)


def _ball_mul_poly(a: list, b: list) -> list:
    out = [(0.0, 0.0)] * (len(a) + len(b) - 1)
    for i, xa in enumerate(a):
        for j, xb in enumerate(b):
            out[i + j] = _ball_add(out[i + j], _ball_mul(xa, xb))
    return out


def dehomogenize(f: HomogeneousForm) -> tuple[UnivariatePoly, int]:
    """(f(1, t), multiplicity of the factor x).

    f(x, y) = x^x_mult * x^(deg g) * g(y/x) with g the returned polynomial.
    """
    if f.is_zero:
        raise ValueError("zero marker cannot be dehomogenized")
    g = f.dehomogenized()
    return g, f.degree - g.degree


def _certify_pairs(w: UnivariatePoly, n_pairs: int, beta: int,
                   eps: float) -> list[QuadraticFactor]:
    """Certified enclosures for every conjugate root pair of the squarefree
    layer w, each returned as a normalized quadratic factor."""
    if n_pairs == 0:
        return []
    real_roots = isolate_real_roots(w)
    if (w.degree - len(real_roots)) != 2 * n_pairs:
        raise ArithmeticError("real/complex root count mismatch")
    prec = max(80, int(-math.log2(max(eps, 1e-300))) + 60)
    last = None
    while prec <= _MAX_PREC_BITS:
        try:
            return _certify_pairs_at(w, real_roots, n_pairs, beta, eps, prec)
        except (ArithmeticError, NotRefinedError) as exc:
            last = exc
            prec *= 2
    raise NotRefinedError(f"certification failed at eps={eps}: {last}")


def _certify_pairs_at(w, real_roots, n_pairs, beta, eps, prec):
    w_high = _int_high(w)
    dw_high = _derive_int(w_high)
    saved_iv_prec = iv.prec
    try:
        iv.prec = prec
        with mp.workprec(prec):
            wp = [mp.mpf(c) for c in w_high]
            dwp = [mp.mpf(c) for c in dw_high]

            # deflate polished real roots, find the remaining complex roots
            deflated = wp
            for r in real_roots:
                rr = r.refine(2.0 ** (-min(60, prec // 2)))
                z = (mp.mpf(rr.lo.numerator) / rr.lo.denominator
                     + mp.mpf(rr.hi.numerator) / rr.hi.denominator) / 2
                for _ in range(6):
                    dz = mp.polyval(dwp, z)
                    if dz == 0:
                        break
                    z = z - mp.polyval(wp, z) / dz
                deflated = _deflate_real(deflated, z)
            if len(deflated) - 1 != 2 * n_pairs:
                raise ArithmeticError("deflation lost degree")
            try:
                roots = mp.polyroots(deflated, maxsteps=100, extraprec=max(60, prec // 2))
            except Exception as exc:  # mpmath NoConvergence, keep retry loop alive
                raise ArithmeticError(f"polyroots: {exc}")
            cand = [mp.mpc(z) for z in roots if mp.im(z) > 0]
            if len(cand) != n_pairs:
                raise ArithmeticError("conjugate pairing failed")

            discs = []
            for z in cand:
                for _ in range(4):      # polish against the exact layer
                    dz = mp.polyval(dwp, z)
                    if dz == 0:
                        break
                    z = z - mp.polyval(wp, z) / dz
                rad = _disc_radius(w_high, dw_high, z)
                if not rad < mp.im(z):  # disc must stay strictly above the axis
                    raise NotRefinedError("disc touches the real axis")
                discs.append((z, rad))
            for i in range(len(discs)):
                for j in range(i + 1, len(discs)):
                    zi, ri = discs[i]
                    zj, rj = discs[j]
                    if not abs(zi - zj) > 4 * (ri + rj):
                        raise NotRefinedError("discs not separated")
            # Each disc sits strictly above the axis, its mirror strictly
            # below, real roots are accounted for exactly by Sturm, and the
            # discs are pairwise disjoint; since the counts add up to deg w,
            # every disc holds exactly one root.
            return [_pair_from_disc(w, z, rad, beta, eps) for z, rad in discs]
    finally:
        iv.prec = saved_iv_prec


def _pair_from_disc(w, z, rad, beta, eps) -> QuadraticFactor:
    re_iv = iv.mpf([mp.re(z) - rad, mp.re(z) + rad])
    im_iv = iv.mpf([mp.im(z) - rad, mp.im(z) + rad])
    big_c = re_iv**2 + im_iv**2
    b_iv = (-2 * re_iv) / big_c
    c_iv = 1 / big_c
    b_lo, b_hi = _mpf_to_fraction(b_iv.a), _mpf_to_fraction(b_iv.b)
    c_lo, c_hi = _mpf_to_fraction(c_iv.a), _mpf_to_fraction(c_iv.b)
    if max(b_hi - b_lo, c_hi - c_lo) > Fraction(eps):
        raise NotRefinedError("enclosure wider than eps")
    return QuadraticFactor(layer=w, b_lo=b_lo, b_hi=b_hi, c_lo=c_lo, c_hi=c_hi,
                           beta=beta, mu=float(mp.re(z)), nu=float(mp.im(z)))


def _deflate_real(coeffs_high, r):
    # synthetic division by (t - r); the remainder is dropped, r is a
    # polished root so it is far below working precision anyway
    out = [coeffs_high[0]]
    for c in coeffs_high[1:-1]:
        out.append(c + out[-1] * r)
    return out


def factor_form(f: HomogeneousForm, eps: float = _DEFAULT_EPS) -> FactorizationStructure:
    """Factor a binary form into lines and definite quadratics.

    The linear factors come out exactly (axis factor plus Sturm-isolated
    roots); quadratic factors carry certified coefficient enclosures of
    width at most eps.  Factors are ordered deterministically: the axis
    first, then roots by increasing midpoint; quadratics by root location.
    """
    if f.is_zero:
        raise ValueError("cannot factor the zero marker")
    if f.degree < 1:
        raise ValueError("cannot factor a constant")
    g, x_mult = dehomogenize(f)
    sign = 1 if g.coeffs[-1] > 0 else -1

    linear: list[LinearFactor] = []
    quadratic: list[QuadraticFactor] = []
    if x_mult:
        linear.append(LinearFactor(None, x_mult))
    if g.degree >= 1:
        for w, m in squarefree_decomposition(g):
            roots = isolate_real_roots(w)
            for r in roots:
                linear.append(LinearFactor(r.refine(eps), m))
            n_pairs = (w.degree - len(roots)) // 2
            quadratic.extend(_certify_pairs(w, n_pairs, m, eps))

    linear.sort(key=lambda lf: (not lf.is_axis,
                                lf.root.approx if lf.root else 0.0))
    quadratic.sort(key=lambda qf: (qf.mu, qf.nu))
    fs = FactorizationStructure(form=f, sign=sign,
                                linear=tuple(linear), quadratic=tuple(quadratic))
    guard = 0
    while not fs.is_separated():
        eps /= 16
        fs = refine(fs, eps)
        guard += 1
        if guard > 40:
            raise NotRefinedError("could not separate factor enclosures")
    return fs


def refine(fs: FactorizationStructure, eps: float) -> FactorizationStructure:
    """Shrink every enclosure below eps; counts and ordering are preserved."""
    linear = tuple(
        lf if lf.is_axis else LinearFactor(lf.root.refine(eps), lf.alpha)
        for lf in fs.linear)
    quadratic = tuple(_refine_pair(qf, eps) for qf in fs.quadratic)
    return FactorizationStructure(form=fs.form, sign=fs.sign,
                                  linear=linear, quadratic=quadratic)


def _refine_pair(qf: QuadraticFactor, eps: float) -> QuadraticFactor:
    if qf.width <= Fraction(eps):
        return qf
    w = qf.layer
    w_high = _int_high(w)
    dw_high = _derive_int(w_high)
    prec = max(80, int(-math.log2(max(eps, 1e-300))) + 60)
    last = None
    while prec <= _MAX_PREC_BITS:
        saved_iv_prec = iv.prec
        try:
            iv.prec = prec
            with mp.workprec(prec):
                wp = [mp.mpf(c) for c in w_high]
                dwp = [mp.mpf(c) for c in dw_high]
                z = mp.mpc(qf.mu, qf.nu)
                for _ in range(max(6, prec // 16)):
                    dz = mp.polyval(dwp, z)
                    if dz == 0:
                        break
                    z = z - mp.polyval(wp, z) / dz
                rad = _disc_radius(w_high, dw_high, z)
                if not rad < mp.im(z):
                    raise NotRefinedError("disc touches the real axis")
                new = _pair_from_disc(w, z, rad, qf.beta, eps)
                if not new.overlaps(qf):
                    raise NotRefinedError("refinement drifted to another root")
                return new
        except (ArithmeticError, NotRefinedError) as exc:
            last = exc
            prec *= 2
        finally:
            iv.prec = saved_iv_prec
    raise NotRefinedError(f"refinement failed to reach eps={eps}: {last}")
