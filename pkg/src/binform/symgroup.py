"""Orientation-preserving linear symmetries of a real binary form.

The group of interest is the set of h in GL+(2, R) with f(h z) = f(z).
Its shape depends only on the factor counts (l, k):

    (1, 0)          shear family in coordinates where the line is y = 0
    (2, 0)          diagonal scaling family, finite part inside Z_4
    (0, 1)          conjugated rotation circle
    (0, k >= 2)     finite cyclic, found through quadratic transport
    (l >= 1, l + 2k >= 3)  finite cyclic of order dividing 2l, found
                    through cyclic ray shifts

Two independent routes are provided for the finite cases: a structured
solver (transport families and ray combinatorics plus Newton refinement)
and a brute-force parameter scan over SL(2, R); tests play them against
each other.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Union

import numpy as np

from .errors import (
    NotFiniteOrderError,
    NotPositiveDefiniteError,
    NotRefinedError,
    ToleranceTooLooseError,
    UnclassifiableCountsError,
)
from .mat2 import Mat2
from .polyring import HomogeneousForm
from .realfactor import FactorizationStructure, factor_form, refine

_DEDUPE_TOL = 1e-6


# ---------------------------------------------------------------------------
# composition residuals (float path)

def _compose_entries(fc: list[float], a: float, b: float, c: float, d: float) -> list[float]:
    p = len(fc) - 1
    pow1: list[list[float]] = [[1.0]]
    pow2: list[list[float]] = [[1.0]]
    for _ in range(p):
        prev = pow1[-1]
        new = [0.0] * (len(prev) + 1)
        for i, v in enumerate(prev):
            new[i] += v * a
            new[i + 1] += v * b
        pow1.append(new)
        prev = pow2[-1]
        new = [0.0] * (len(prev) + 1)
        for i, v in enumerate(prev):
            new[i] += v * c
            new[i + 1] += v * d
        pow2.append(new)
    out = [0.0] * (p + 1)
    for i in range(p + 1):
        ci = fc[i]
        if ci == 0.0:
            continue
        u, v = pow1[p - i], pow2[i]
        for s, cu in enumerate(u):
            if cu:
                for t, cv in enumerate(v):
                    out[s + t] += ci * cu * cv
    return out


def invariance_residual(f: HomogeneousForm, h: Mat2) -> float:
    """Max-abs coefficient distance between f o h and f, both scaled to
    unit max norm.  Zero (to rounding) exactly on symmetries."""
    fc = f.float_coeffs()
    a, b, c, d = (float(e) for e in h.entries())
    comp = _compose_entries(fc, a, b, c, d)
    mf = max(abs(v) for v in fc)
    mc = max(abs(v) for v in comp)
    if mc == 0.0:
        return math.inf
    return max(abs(x / mc - y / mf) for x, y in zip(comp, fc))


def _raw_residual(fn: list[float], entries) -> float:
    comp = _compose_entries(fn, *entries)
    return max(abs(x - y) for x, y in zip(comp, fn))


def _polish_element(fn: list[float], entries: tuple[float, float, float, float]):
    """Gauss-Newton on the coefficient defect over the four matrix entries.

    fn is f scaled to unit max norm; symmetries are isolated zeros of the
    defect in the finite cases, so this converges quadratically."""
    x = np.array(entries, dtype=float)

    def defect(v):
        return np.array(_compose_entries(fn, *v)) - np.array(fn)

    best = x.copy()
    best_r = float(np.max(np.abs(defect(x))))
    for _ in range(12):
        e = defect(x)
        r = float(np.max(np.abs(e)))
        if r < best_r:
            best, best_r = x.copy(), r
        if r < 1e-15:
            break
        jac = np.empty((len(e), 4))
        for j in range(4):
            dx = np.zeros(4)
            dx[j] = 1e-7
            jac[:, j] = (defect(x + dx) - defect(x - dx)) / 2e-7
        step, *_ = np.linalg.lstsq(jac, e, rcond=None)
        x = x - step
    e = defect(x)
    r = float(np.max(np.abs(e)))
    if r < best_r:
        best, best_r = x, r
    return tuple(float(v) for v in best), best_r


# ---------------------------------------------------------------------------
# positive definite transport

def _spd_roots(M: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """(M^(1/2), M^(-1/2)) of a symmetric positive definite 2x2 matrix."""
    M = np.asarray(M, dtype=float)
    if M.shape != (2, 2) or abs(M[0, 1] - M[1, 0]) > 1e-12 * (1 + abs(M[0, 1])):
        raise NotPositiveDefiniteError("matrix is not symmetric")
    w, V = np.linalg.eigh(M)
    if w[0] <= 0:
        raise NotPositiveDefiniteError("matrix is not positive definite")
    s = np.sqrt(w)
    return (V * s) @ V.T, (V / s) @ V.T


def _rot(theta: float) -> np.ndarray:
    c, s = math.cos(theta), math.sin(theta)
    return np.array([[c, -s], [s, c]])


@dataclass(frozen=True)
class TransportFamily:
    """All orientation-preserving h with h^T B h = lam * A, lam > 0.

    Parametrized as member(theta, lam) = sqrt(lam) * B^(-1/2) R(theta)
    A^(1/2); the determinant is coupled to the scale by
    det h = lam * sqrt(det A / det B).
    """

    A: tuple[tuple[float, float], tuple[float, float]]
    B: tuple[tuple[float, float], tuple[float, float]]
    _sqrt_A: np.ndarray = field(repr=False)
    _inv_sqrt_B: np.ndarray = field(repr=False)

    def member(self, theta: float, lam: float = 1.0) -> Mat2:
        if lam <= 0:
            raise ValueError("scale must be positive")
        m = math.sqrt(lam) * (self._inv_sqrt_B @ _rot(theta) @ self._sqrt_A)
        return Mat2.approx(m[0, 0], m[0, 1], m[1, 0], m[1, 1])

    def member_det(self, lam: float = 1.0) -> float:
        a = np.asarray(self.A)
        b = np.asarray(self.B)
        return lam * math.sqrt(np.linalg.det(a) / np.linalg.det(b))


def quadratic_transport(A, B) -> TransportFamily:
    """Family of orientation-preserving maps taking the quadratic with Gram
    matrix B to a positive multiple of the one with Gram matrix A (so that
    Q_B(h z) = lam * Q_A(z))."""
    A = np.asarray(A, dtype=float)
    B = np.asarray(B, dtype=float)
    sqrt_A, _ = _spd_roots(A)
    _, inv_sqrt_B = _spd_roots(B)
    return TransportFamily(
        A=((A[0, 0], A[0, 1]), (A[1, 0], A[1, 1])),
        B=((B[0, 0], B[0, 1]), (B[1, 0], B[1, 1])),
        _sqrt_A=sqrt_A,
        _inv_sqrt_B=inv_sqrt_B,
    )


# ---------------------------------------------------------------------------
# permutation bookkeeping

@dataclass(frozen=True)
class PermCandidate:
    """A permutation of the linear factors (sigma) and of the quadratic
    factors (tau), both 0-indexed images, preserving multiplicities."""

    sigma: tuple[int, ...]
    tau: tuple[int, ...]

    def validate(self, fs: FactorizationStructure) -> None:
        if sorted(self.sigma) != list(range(fs.l)) or sorted(self.tau) != list(range(fs.k)):
            raise ValueError("not a permutation")
        for i, j in enumerate(self.sigma):
            if fs.linear[i].alpha != fs.linear[j].alpha:
                raise ValueError("linear multiplicity not preserved")
        for i, j in enumerate(self.tau):
            if fs.quadratic[i].beta != fs.quadratic[j].beta:
                raise ValueError("quadratic multiplicity not preserved")


def induced_permutation(h: Mat2, fs: FactorizationStructure,
                        tol: float = 1e-6) -> PermCandidate:
    """Which factor goes where under h; raises ValueError if the matching
    is not a clean multiplicity-preserving bijection at this tolerance."""
    hf = h.to_float()
    dirs = []
    for lf in fs.linear:
        dx, dy = lf.line_direction()
        n = math.hypot(dx, dy)
        dirs.append((dx / n, dy / n))
    sigma = []
    for dx, dy in dirs:
        ix, iy = hf.apply(dx, dy)
        n = math.hypot(ix, iy)
        match = [j for j, (ex, ey) in enumerate(dirs)
                 if abs(ix * ey - iy * ex) / n < tol]
        if len(match) != 1:
            raise ValueError("line image matches none or several factors")
        sigma.append(match[0])
    H = np.array([[float(hf.a), float(hf.b)], [float(hf.c), float(hf.d)]])
    mats = [np.array(qf.gram_matrix()) for qf in fs.quadratic]
    tau = []
    for M in mats:
        S = H.T @ M @ H
        match = []
        for j, T in enumerate(mats):
            lam = np.trace(S @ np.linalg.inv(T)) / 2
            if lam > 0 and np.max(np.abs(S - lam * T)) / np.max(np.abs(S)) < tol:
                match.append(j)
        if len(match) != 1:
            raise ValueError("quadratic image matches none or several factors")
        tau.append(match[0])
    cand = PermCandidate(tuple(sigma), tuple(tau))
    cand.validate(fs)
    return cand


# ---------------------------------------------------------------------------
# group payloads

@dataclass(frozen=True)
class ShearFamily:
    """Symmetries of +- L^p: in coordinates where L = y the identity
    component is (x, y) -> (a x + b y, y) with a > 0; for even p the group
    has a second component, the negatives of the first."""

    normalizer: Mat2
    parity: str                      # "even" or "odd" multiplicity of L
    case_label: str = "A"

    def member(self, a: float, b: float) -> Mat2:
        if a <= 0:
            raise ValueError("the identity component needs a > 0")
        n = self.normalizer.to_float()
        return n @ Mat2.approx(a, b, 0.0, 1.0) @ n.inverse()

    def component_count(self) -> int:
        return 2 if self.parity == "even" else 1

    def contains_minus_id(self) -> bool:
        return self.parity == "even"


@dataclass(frozen=True)
class DiagonalFamily:
    """Symmetries of +- L1^a1 L2^a2: in coordinates sending the lines to
    the axes the identity component is diag(e^(a2 t), e^(-a1 t)); the
    finite part is a subgroup of the quarter-turn group Z_4."""

    normalizer: Mat2
    alpha_x: int                     # exponent carried by x after normalizing
    alpha_y: int
    quarter_turn_in_group: bool
    case_label: str = "B"

    def member(self, t: float) -> Mat2:
        n = self.normalizer.to_float()
        d = Mat2.approx(math.exp(self.alpha_y * t), 0.0,
                        0.0, math.exp(-self.alpha_x * t))
        return n @ d @ n.inverse()

    def quarter_turn(self) -> Mat2:
        n = self.normalizer.to_float()
        return n @ Mat2.approx(0.0, -1.0, 1.0, 0.0) @ n.inverse()

    def contains_minus_id(self) -> bool:
        return (self.alpha_x + self.alpha_y) % 2 == 0


@dataclass(frozen=True)
class RotationFamily:
    """Symmetries of +- Q^b: the circle N SO(2) N^(-1) where N normalizes
    Q to the round quadratic x^2 + y^2."""

    normalizer: Mat2
    case_label: str = "C"

    def member(self, theta: float) -> Mat2:
        n = self.normalizer.to_float()
        return n @ Mat2.rotation(theta) @ n.inverse()

    def contains_minus_id(self) -> bool:
        return True


@dataclass(frozen=True)
class FiniteCyclicGroup:
    """Finite cyclic symmetry group; generator has the smallest positive
    rotation angle and residual is the worst verified member residual."""

    n: int
    generator: Mat2
    residual: float
    elements: tuple[Mat2, ...]
    case_label: str = "E"

    def contains_minus_id(self, tol: float = 1e-6) -> bool:
        minus = Mat2.approx(-1.0, 0.0, 0.0, -1.0)
        return any(e.dist(minus) < tol for e in self.elements)

    def order_of_generator(self, tol: float = 1e-9) -> int:
        return finite_order_of(self.generator, max_n=4 * self.n + 8, tol=max(tol, 1e-9))


SymmetryGroup = Union[ShearFamily, DiagonalFamily, RotationFamily, FiniteCyclicGroup]


# ---------------------------------------------------------------------------
# dispatch

def _exact_slope(root) -> Optional[object]:
    """Fraction slope when the defining layer is linear, else None."""
    w = root.poly
    if w.degree == 1:
        t = -w.coeffs[0] / w.coeffs[1]
        if root.contains(t) or t == root.lo or t == root.hi:
            return t
    return None


def _line_column(lf):
    """Direction of the factor's zero line: exact Fractions when available."""
    if lf.is_axis:
        return (Fraction(0), Fraction(1))
    t = _exact_slope(lf.root)
    if t is not None:
        return (Fraction(1), t)
    return (1.0, lf.root.approx)


def symmetry_group(f: HomogeneousForm, fs: Optional[FactorizationStructure] = None,
                   tol: float = 1e-9, eps: float = 1e-14) -> SymmetryGroup:
    """Identify the linear symmetry group of f.

    The factorization is refined to enclosure width eps first; tol is the
    residual below which a candidate matrix counts as verified.
    """
    if fs is None:
        fs = factor_form(f, eps=eps)
    elif fs.max_width() > Fraction(eps):
        fs = refine(fs, eps)
    if not fs.is_separated():
        raise NotRefinedError("factor enclosures overlap; refine first")
    l, k = fs.l, fs.k
    if (l, k) == (1, 0):
        return _case_single_line(fs)
    if (l, k) == (2, 0):
        return _case_two_lines(f, fs, tol)
    if (l, k) == (0, 1):
        return _case_one_definite(fs)
    if l == 0 and k >= 2:
        return _finite_group(f, fs, tol, label="D")
    if l >= 1 and l + 2 * k >= 3:
        return _finite_group(f, fs, tol, label="E")
    raise UnclassifiableCountsError(f"no case for (l, k) = ({l}, {k})")


def _mat_from_columns(col1, col2) -> Mat2:
    exact = all(isinstance(v, (int, Fraction)) for v in (*col1, *col2))
    a, c = col1
    b, d = col2
    det = a * d - b * c
    if det == 0:
        raise ValueError("degenerate column pair")
    if det < 0:
        a, c = -a, -c
    if exact:
        return Mat2.exact(a, b, c, d)
    return Mat2.approx(a, b, c, d)


def _case_single_line(fs: FactorizationStructure) -> ShearFamily:
    lf = fs.linear[0]
    if lf.is_axis:
        n = Mat2.exact(0, 1, -1, 0)           # sends the line x = 0 to y = 0
    else:
        t = _exact_slope(lf.root)
        if t is not None:
            n = Mat2.exact(1, 0, t, 1)
        else:
            n = Mat2.approx(1.0, 0.0, lf.root.approx, 1.0)
    parity = "even" if lf.alpha % 2 == 0 else "odd"
    return ShearFamily(normalizer=n, parity=parity)


def _case_two_lines(f: HomogeneousForm, fs: FactorizationStructure,
                    tol: float) -> DiagonalFamily:
    lf1, lf2 = fs.linear
    n = _mat_from_columns(_line_column(lf2), _line_column(lf1))
    group = DiagonalFamily(normalizer=n, alpha_x=lf1.alpha, alpha_y=lf2.alpha,
                           quarter_turn_in_group=False)
    qt = group.quarter_turn()
    if invariance_residual(f, qt) < tol:
        group = DiagonalFamily(normalizer=n, alpha_x=lf1.alpha, alpha_y=lf2.alpha,
                               quarter_turn_in_group=True)
    return group


def _case_one_definite(fs: FactorizationStructure) -> RotationFamily:
    M = np.array(fs.quadratic[0].gram_matrix())
    _, inv_sqrt = _spd_roots(M)
    n = Mat2.approx(inv_sqrt[0, 0], inv_sqrt[0, 1], inv_sqrt[1, 0], inv_sqrt[1, 1])
    return RotationFamily(normalizer=n)


# ---------------------------------------------------------------------------
# the finite cases

def _finite_group(f: HomogeneousForm, fs: FactorizationStructure,
                  tol: float, label: str) -> FiniteCyclicGroup:
    p = f.degree
    fc = f.float_coeffs()
    mf = max(abs(v) for v in fc)
    fn = [v / mf for v in fc]

    found: list[tuple[tuple[float, float, float, float], float]] = []

    def try_candidate(entries) -> None:
        a, b, c, d = entries
        if abs(a * d - b * c) < 1e-12:
            return
        polished, r = _polish_element(fn, entries)
        if r < tol:
            found.append((polished, r))

    try_candidate((1.0, 0.0, 0.0, 1.0))
    if p % 2 == 0:
        try_candidate((-1.0, 0.0, 0.0, -1.0))

    if fs.l == 0:
        _candidates_quadratic(f, fs, fn, try_candidate)
    elif fs.l == 1:
        _candidates_line_plus_quadratic(f, fs, fn, try_candidate)
    else:
        _candidates_ray_shift(f, fs, fn, try_candidate)

    cap = 4 * max(2 * fs.l, 2 * sum(q.beta for q in fs.quadratic), 16)
    elems, worst = _close_group(found, fn, tol, cap)
    elems.sort(key=lambda e: (round(e[0].polar_angle(), 9),) + tuple(
        round(float(v), 9) for v in e[0].entries()))
    mats = tuple(e[0] for e in elems)
    n = len(mats)
    if n == 1:
        gen = mats[0]
    else:
        gen = next(m for m in mats if m.dist(Mat2.approx(1, 0, 0, 1)) > _DEDUPE_TOL)
    return FiniteCyclicGroup(n=n, generator=gen, residual=worst,
                             elements=mats, case_label=label)


def _close_group(found, fn, tol, cap):
    """Dedupe verified elements and close them under multiplication."""
    elems: list[tuple[Mat2, float]] = []

    def add(entries, r) -> bool:
        m = Mat2.approx(*entries)
        for e, _ in elems:
            if e.dist(m) < _DEDUPE_TOL:
                return False
        elems.append((m, r))
        return True

    for entries, r in found:
        add(entries, r)
        if len(elems) > cap:
            raise ToleranceTooLooseError(
                f"more than {cap} distinct verified elements; tol admits noise")
    changed = True
    while changed:
        changed = False
        snapshot = list(elems)
        for m1, _ in snapshot:
            for m2, _ in snapshot:
                prod = m1 @ m2
                entries = tuple(float(v) for v in prod.entries())
                polished, r = _polish_element(fn, entries)
                if r < tol and add(polished, r):
                    changed = True
                    if len(elems) > cap:
                        raise ToleranceTooLooseError(
                            f"closure exceeded {cap} elements; tol admits noise")
    worst = max(r for _, r in elems)
    return elems, worst


def _candidates_quadratic(f, fs, fn, try_candidate):
    """Case of k >= 2 definite factors and no lines: transport the first
    quadratic onto each compatible target, pin the rotation angle by
    proportionality on the second, fix the scale from f itself."""
    p = f.degree
    mats = [np.array(qf.gram_matrix()) for qf in fs.quadratic]
    betas = [qf.beta for qf in fs.quadratic]
    second = 1
    _, t_inv_sqrt_all = zip(*(_spd_roots(M) for M in mats))
    for t1, M_t1 in enumerate(mats):
        if betas[t1] != betas[0]:
            continue
        fam = quadratic_transport(M_t1, mats[0])
        for t2 in range(len(mats)):
            if t2 == t1 or betas[t2] != betas[second]:
                continue
            Ti = t_inv_sqrt_all[t2]
            M2 = mats[second]

            def gfun(theta):
                h = fam.member(theta, 1.0)
                H = np.array([[float(h.a), float(h.b)], [float(h.c), float(h.d)]])
                W = Ti @ (H.T @ M2 @ H) @ Ti
                return np.array([W[0, 1], W[0, 0] - W[1, 1]])

            for seed in [j * math.pi / 8 for j in range(8)]:
                theta = _newton_scalar(gfun, seed)
                if theta is None:
                    continue
                h1 = fam.member(theta, 1.0)
                scaled = _fix_scale(fn, h1, p)
                if scaled is not None:
                    try_candidate(scaled)


def _candidates_line_plus_quadratic(f, fs, fn, try_candidate):
    """One line, k >= 1 quadratics: intersect the transport family of the
    first quadratic with the constraint that the line maps to itself."""
    p = f.degree
    lf = fs.linear[0]
    dx, dy = lf.line_direction()
    nrm = math.hypot(dx, dy)
    u = (dx / nrm, dy / nrm)
    mats = [np.array(qf.gram_matrix()) for qf in fs.quadratic]
    betas = [qf.beta for qf in fs.quadratic]
    for t1, M_t1 in enumerate(mats):
        if betas[t1] != betas[0]:
            continue
        fam = quadratic_transport(M_t1, mats[0])

        def gfun(theta):
            h = fam.member(theta, 1.0)
            ix, iy = h.apply(u[0], u[1])
            return np.array([ix * u[1] - iy * u[0]])

        for seed in [j * math.pi / 8 for j in range(8)]:
            theta = _newton_scalar(gfun, seed)
            if theta is None:
                continue
            h1 = fam.member(theta, 1.0)
            scaled = _fix_scale(fn, h1, p)
            if scaled is not None:
                try_candidate(scaled)


def _candidates_ray_shift(f, fs, fn, try_candidate):
    """l >= 2 lines: symmetries permute the 2l zero rays by a cyclic shift
    that preserves multiplicities; two ray images pin the matrix up to two
    positive scalars found by Newton on two coefficients of f."""
    rays = []
    for idx, lf in enumerate(fs.linear):
        dx, dy = lf.line_direction()
        nrm = math.hypot(dx, dy)
        for sgn in (1.0, -1.0):
            ux, uy = sgn * dx / nrm, sgn * dy / nrm
            rays.append((math.atan2(uy, ux) % (2 * math.pi), (ux, uy), lf.alpha))
    rays.sort(key=lambda r: r[0])
    m = len(rays)
    pattern = [r[2] for r in rays]
    V = np.array([[rays[0][1][0], rays[1][1][0]],
                  [rays[0][1][1], rays[1][1][1]]])
    Vinv = np.linalg.inv(V)
    target = np.array(fn)

    for s in range(m):
        if any(pattern[(i + s) % m] != pattern[i] for i in range(m)):
            continue
        W = np.array([[rays[s][1][0], rays[(1 + s) % m][1][0]],
                      [rays[s][1][1], rays[(1 + s) % m][1][1]]])

        def defect(ab):
            mu, nu = math.exp(ab[0]), math.exp(ab[1])
            H = W @ np.diag([mu, nu]) @ Vinv
            comp = _compose_entries(fn, H[0, 0], H[0, 1], H[1, 0], H[1, 1])
            return np.array(comp) - target

        for seed in [(0.0, 0.0), (0.4, -0.4), (-0.4, 0.4), (0.25, 0.25)]:
            ab = _newton_2d(defect, np.array(seed))
            if ab is None:
                continue
            mu, nu = math.exp(ab[0]), math.exp(ab[1])
            H = W @ np.diag([mu, nu]) @ Vinv
            try_candidate((H[0, 0], H[0, 1], H[1, 0], H[1, 1]))


def _newton_scalar(gfun, seed, iters=40):
    th = float(seed)
    for _ in range(iters):
        g = gfun(th)
        d = (gfun(th + 1e-7) - gfun(th - 1e-7)) / 2e-7
        denom = float(d @ d)
        if denom < 1e-30:
            return None
        step = float(d @ g) / denom
        th -= step
        if abs(step) < 1e-13:
            break
    g = gfun(th)
    if float(np.max(np.abs(g))) < 1e-7:
        return th
    return None


def _newton_2d(defect, seed, iters=40):
    x = np.asarray(seed, dtype=float)
    for _ in range(iters):
        e = defect(x)
        jac = np.empty((len(e), 2))
        for j in range(2):
            dx = np.zeros(2)
            dx[j] = 1e-7
            jac[:, j] = (defect(x + dx) - defect(x - dx)) / 2e-7
        try:
            step, *_ = np.linalg.lstsq(jac, e, rcond=None)
        except np.linalg.LinAlgError:
            return None
        x = x - step
        if float(np.max(np.abs(step))) < 1e-13:
            break
        if float(np.max(np.abs(x))) > 50:
            return None
    if float(np.max(np.abs(defect(x)))) < 1e-7:
        return x
    return None


def _fix_scale(fn, h1: Mat2, p: int):
    """Rescale a projective candidate so f o h = f on the nose; None when
    the sign cannot be repaired."""
    a, b, c, d = (float(v) for v in h1.entries())
    comp = _compose_entries(fn, a, b, c, d)
    denom = sum(v * v for v in fn)
    kappa = sum(u * v for u, v in zip(comp, fn)) / denom
    if abs(kappa) < 1e-12:
        return None
    if p % 2 == 0:
        if kappa <= 0:
            return None
        s = kappa ** (-1.0 / p)
    else:
        s = math.copysign(abs(kappa) ** (-1.0 / p), kappa)
    return (s * a, s * b, s * c, s * d)


# ---------------------------------------------------------------------------
# order computation and the brute-force oracle

def finite_order_of(h: Mat2, max_n: int = 64, tol: float = 1e-9) -> int:
    """Smallest n >= 1 with h^n = id, with determinant renormalization per
    step to keep rounding from compounding."""
    ident = Mat2.approx(1.0, 0.0, 0.0, 1.0)
    acc = h.to_float()
    for n in range(1, max_n + 1):
        det = float(acc.det())
        if det <= 0:
            raise NotFiniteOrderError("determinant lost positivity")
        acc = acc.scale(det ** -0.5)
        if acc.dist(ident) < tol:
            return n
        acc = acc @ h.to_float()
    raise NotFiniteOrderError(f"no order up to {max_n} at tol {tol}")


def _mat_array(m: Mat2) -> np.ndarray:
    a, b, c, d = (float(v) for v in m.entries())
    return np.array([[a, b], [c, d]])


def _compose_batch(fc: np.ndarray, A, B, C, D) -> np.ndarray:
    n = A.shape[0]
    p = len(fc) - 1
    pow1 = [np.ones((n, 1))]
    pow2 = [np.ones((n, 1))]
    for _ in range(p):
        prev = pow1[-1]
        new = np.zeros((n, prev.shape[1] + 1))
        new[:, :-1] += prev * A[:, None]
        new[:, 1:] += prev * B[:, None]
        pow1.append(new)
        prev = pow2[-1]
        new = np.zeros((n, prev.shape[1] + 1))
        new[:, :-1] += prev * C[:, None]
        new[:, 1:] += prev * D[:, None]
        pow2.append(new)
    out = np.zeros((n, p + 1))
    for i in range(p + 1):
        if fc[i] == 0.0:
            continue
        u, v = pow1[p - i], pow2[i]
        for s in range(u.shape[1]):
            us = fc[i] * u[:, s]
            for t in range(v.shape[1]):
                out[:, s + t] += us * v[:, t]
    return out


def _scan_span(fs: FactorizationStructure) -> float:
    """Half-width of the log-singular-value axis, from how badly conditioned
    the factor geometry is; finite symmetries live inside this box."""
    s = 1.5
    for qf in fs.quadratic:
        w = np.linalg.eigvalsh(np.array(qf.gram_matrix()))
        s = max(s, 0.5 * math.log(w[1] / w[0]) + 1.0)
    angles = sorted(a for lf in fs.linear for a in lf.ray_angles())
    if len(angles) >= 2:
        gaps = [b - a for a, b in zip(angles, angles[1:])]
        gaps.append(2 * math.pi - angles[-1] + angles[0])
        gap = min(g for g in gaps if g > 1e-9)
        s = max(s, math.log(1.0 / math.sin(min(gap, math.pi / 2))) + 1.5)
    return min(s, 6.0)


def oracle_scan(f: HomogeneousForm, resolution: int = 64,
                tol: float = 1e-9) -> list[Mat2]:
    """Brute-force search for all symmetries in SL(2, R).

    Grids h = R(phi) diag(e^s, e^-s) R(psi), refines every grid-local
    minimum of the invariance residual by Gauss-Newton, keeps the verified
    ones.  Independent of the structured solver; it shares nothing with it
    beyond polynomial composition.
    """
    if resolution < 64:
        raise ValueError("resolution must be at least 64")
    fs = factor_form(f, eps=1e-12)
    l, k = fs.l, fs.k
    finite = (l == 0 and k >= 2) or (l >= 1 and l + 2 * k >= 3)
    if not finite:
        raise ValueError("the scan only makes sense for the finite cases")
    span = _scan_span(fs)
    fc = np.array(f.float_coeffs())
    fn = fc / np.max(np.abs(fc))

    phis = np.linspace(0.0, 2 * math.pi, resolution, endpoint=False)
    psis = np.linspace(0.0, 2 * math.pi, resolution, endpoint=False)
    ns = max(9, resolution // 4) | 1
    svals = np.linspace(-span, span, ns)

    PH, SS, PS = np.meshgrid(phis, svals, psis, indexing="ij")
    ph, ss, ps = PH.ravel(), SS.ravel(), PS.ravel()
    cph, sph, cps, sps = np.cos(ph), np.sin(ph), np.cos(ps), np.sin(ps)
    es, esi = np.exp(ss), np.exp(-ss)
    A = cph * es * cps - sph * esi * sps
    B = -cph * es * sps - sph * esi * cps
    C = sph * es * cps + cph * esi * sps
    D = -sph * es * sps + cph * esi * cps
    comp = _compose_batch(fn, A, B, C, D)
    mc = np.max(np.abs(comp), axis=1)
    mc[mc == 0.0] = np.inf
    resid = np.max(np.abs(comp / mc[:, None] - fn[None, :]), axis=1)
    R = resid.reshape(PH.shape)

    neighbors = []
    for axis, periodic in ((0, True), (1, False), (2, True)):
        for shift in (1, -1):
            rolled = np.roll(R, shift, axis=axis)
            if not periodic:
                sl = [slice(None)] * 3
                sl[axis] = 0 if shift == 1 else -1
                rolled[tuple(sl)] = np.inf
            neighbors.append(rolled)
    is_min = np.ones_like(R, dtype=bool)
    for nb in neighbors:
        is_min &= R <= nb
    cand_idx = np.argwhere(is_min)
    scores = R[is_min]
    order = np.argsort(scores, kind="stable")
    cand_idx = cand_idx[order]

    def h_of(params):
        phi, s, psi = params
        return _rot(phi) @ np.diag([math.exp(s), math.exp(-s)]) @ _rot(psi)

    def defect(params):
        m = h_of(params)
        comp = _compose_entries(list(fn), m[0, 0], m[0, 1], m[1, 0], m[1, 1])
        return np.array(comp) - fn

    # The angle split is redundant where s = 0 (only phi + psi matters), so
    # many grid minima carry the same matrix; drop those before refining.
    starts: list[tuple[np.ndarray, np.ndarray]] = []
    for (i, j, kk) in cand_idx:
        x = np.array([phis[i], svals[j], psis[kk]])
        m = h_of(x)
        if any(np.max(np.abs(m - pm)) < 1e-9 for _, pm in starts):
            continue
        starts.append((x, m))
        if len(starts) >= 600:
            break

    out: list[Mat2] = []
    for x, m0 in starts:
        if any(np.max(np.abs(m0 - _mat_array(e))) < 1e-7 for e in out):
            continue
        x = x.copy()
        for it in range(30):
            e = defect(x)
            worst = np.max(np.abs(e))
            if worst < 1e-15:
                break
            if it >= 6 and worst > 0.5:
                break
            jac = np.empty((len(e), 3))
            for col in range(3):
                dx = np.zeros(3)
                dx[col] = 1e-7
                jac[:, col] = (defect(x + dx) - defect(x - dx)) / 2e-7
            step, *_ = np.linalg.lstsq(jac, e, rcond=None)
            if np.max(np.abs(step)) > 1.0:
                step = step / np.max(np.abs(step))
            x = x - step
            if np.max(np.abs(step)) < 1e-14:
                break
        if np.max(np.abs(defect(x))) >= tol:
            continue
        m = h_of(x)
        cand = Mat2.approx(m[0, 0], m[0, 1], m[1, 0], m[1, 1])
        if all(cand.dist(e) >= _DEDUPE_TOL for e in out):
            out.append(cand)
    out.sort(key=lambda e: (round(e.polar_angle(), 9),) + tuple(
        round(float(v), 9) for v in e.entries()))
    return out
