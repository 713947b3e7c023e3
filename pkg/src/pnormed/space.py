"""Finite-dimensional p-normed spaces with computable, certified norms.

The workhorse representation is a ball generated by finitely many rational
points: its gauge is an exact finite minimization (support enumeration), so
operator norms from such spaces reduce to finitely many gauge evaluations.
Norms that are not finitely generated (restrictions, max-products, the
Euclidean norm) stay symbolic and evaluate to certified intervals.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Optional, Sequence

from .arith import (
    DEFAULT_PREC,
    Interval,
    Matrix,
    PExponent,
    Q,
    Vector,
    interval_p_pow,
    interval_root,
    p_pow,
    pexp,
    q,
    qvec,
    root_pow,
    vec_is_zero,
    vec_scale,
    vec_sub,
)
from .errors import CertificationError, DimensionMismatch, PnormedError, ResourceSignal


def unit_vector(dim: int, i: int) -> Vector:
    return tuple(Q(1) if j == i else Q(0) for j in range(dim))


def _sign_normalize(v: Vector) -> Vector:
    for x in v:
        if x != 0:
            return v if x > 0 else vec_scale(-1, v)
    return v


@dataclass(frozen=True)
class Ball:
    """The p-convex hull of finitely many rational generators, as a norm.

    Generators must be nonzero and span the ambient space, otherwise the
    gauge is not a p-norm.  Exact duplicates, sign flips and scalar multiples
    of magnitude <= 1 of another generator are dropped at construction.
    """

    dim: int
    p: PExponent
    gens: tuple[Vector, ...]

    def __post_init__(self):
        gens = []
        for g in self.gens:
            g = qvec(g)
            if len(g) != self.dim:
                raise DimensionMismatch(f"generator of length {len(g)} in dimension {self.dim}")
            if vec_is_zero(g):
                raise PnormedError("zero vector is not a valid generator")
            gens.append(g)
        kept: list[Vector] = []
        for g in gens:
            redundant = False
            for i, h in enumerate(kept):
                c = _scalar_multiple(g, h)
                if c is None:
                    continue
                if abs(c) <= 1:
                    redundant = True
                else:
                    kept[i] = g
                    redundant = True
                break
            if not redundant:
                kept.append(g)
        object.__setattr__(self, "gens", tuple(kept))
        if self.dim > 0:
            if Matrix.from_cols(self.gens).rank() != self.dim:
                raise PnormedError("generators do not span the ambient space")

    def canonical_key(self):
        gens = sorted(_sign_normalize(g) for g in self.gens)
        return (self.dim, self.p.value, tuple(gens))


def _scalar_multiple(g: Vector, h: Vector) -> Optional[Fraction]:
    """c with g = c*h, or None."""
    c = None
    for a, b in zip(g, h):
        if b == 0:
            if a != 0:
                return None
            continue
        r = a / b
        if c is None:
            c = r
        elif c != r:
            return None
    for a, b in zip(g, h):
        if c is not None and a != c * b:
            return None
    return c


def lp_ball(dim: int, p) -> Ball:
    """The unit ball of l_p^dim (hull of the coordinate unit vectors)."""
    return Ball(dim, pexp(p), tuple(unit_vector(dim, i) for i in range(dim)))


@dataclass(frozen=True)
class Decomposition:
    """A witnessing decomposition x = sum coeffs[i] * gens[indices[i]]."""

    indices: tuple[int, ...]
    coeffs: tuple[Fraction, ...]
    cost: Interval

    def reconstruct(self, ball: Ball, dim: int) -> Vector:
        x = tuple(Q(0) for _ in range(dim))
        for i, c in zip(self.indices, self.coeffs):
            x = tuple(a + c * b for a, b in zip(x, ball.gens[i]))
        return x


@lru_cache(maxsize=None)
def _supports(m: int, n: int) -> tuple[tuple[int, ...], ...]:
    out = []
    for size in range(1, n + 1):
        out.extend(itertools.combinations(range(m), size))
    return tuple(out)


def _support_solution(ball: Ball, support: tuple[int, ...], x: Vector) -> Optional[tuple[Fraction, ...]]:
    """Coefficients on an independent support reaching x, else None.

    Inline Gaussian elimination on the augmented system; rejects supports
    with dependent columns (their minima are covered by smaller supports).
    """
    size = len(support)
    if size == 1:
        c = _scalar_multiple(x, ball.gens[support[0]])
        return None if c is None else (c,)
    n = ball.dim
    rows = [[ball.gens[j][i] for j in support] + [x[i]] for i in range(n)]
    pivot_row = 0
    pivot_cols = []
    for c in range(size):
        pr = None
        for i in range(pivot_row, n):
            if rows[i][c] != 0:
                pr = i
                break
        if pr is None:
            return None  # dependent columns
        rows[pivot_row], rows[pr] = rows[pr], rows[pivot_row]
        pv = rows[pivot_row][c]
        rows[pivot_row] = [v / pv for v in rows[pivot_row]]
        for i in range(n):
            if i != pivot_row and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[pivot_row])]
        pivot_cols.append(c)
        pivot_row += 1
    for i in range(pivot_row, n):
        if rows[i][size] != 0:
            return None  # inconsistent
    return tuple(rows[r][size] for r in range(size))


def gauge(ball: Ball, x: Sequence, prec: int = DEFAULT_PREC) -> tuple[Interval, Decomposition]:
    """Exact gauge of the generated ball at a rational point.

    Minimizes (sum |coeff|^p)^(1/p) over decompositions of x into generators.
    On each orthant piece of the affine solution set the cost is concave, so
    the minimum sits at a vertex, which is supported on linearly independent
    generators; enumerating those supports is therefore exhaustive.  Supports
    are scanned in lexicographic order and the first minimal cost wins.
    """
    x = qvec(x)
    if len(x) != ball.dim:
        raise DimensionMismatch(f"point of length {len(x)} in dimension {ball.dim}")
    return _gauge_cached(ball, x, prec)


@lru_cache(maxsize=200_000)
def _gauge_cached(ball: Ball, x: Vector, prec: int) -> tuple[Interval, Decomposition]:
    if vec_is_zero(x):
        return Interval.zero(), Decomposition((), (), Interval.zero())
    p = ball.p
    candidates: list[tuple[tuple[int, ...], tuple[Fraction, ...], Interval]] = []
    for support in _supports(len(ball.gens), ball.dim):
        sol = _support_solution(ball, support, x)
        if sol is None:
            continue
        cost_p = Interval.zero()
        for c in sol:
            cost_p = cost_p + p_pow(abs(c), p, prec)
        candidates.append((support, sol, cost_p))
    if not candidates:
        raise PnormedError("point is outside the span of the generators")
    min_hi = min(c[2].hi for c in candidates)
    live = [c for c in candidates if c[2].lo <= min_hi]
    for round_prec in (prec * 4, prec * 16, prec * 64):
        if all(c[2].width == 0 for c in live) or len(live) == 1:
            break
        refined = []
        for support, sol, _ in live:
            cost_p = Interval.zero()
            for c in sol:
                cost_p = cost_p + p_pow(abs(c), p, round_prec)
            refined.append((support, sol, cost_p))
        live = refined
        min_hi = min(c[2].hi for c in live)
        live = [c for c in live if c[2].lo <= min_hi]
    lo = min(c[2].lo for c in live)
    hi = min(c[2].hi for c in live)
    value = interval_root(Interval(lo, hi), p, prec)
    support, sol, cost_p = min(live, key=lambda c: (c[2].hi, c[0]))
    witness_cost = interval_root(cost_p, p, prec)
    return value, Decomposition(support, sol, witness_cost)


# ---------------------------------------------------------------------------
# Norm expressions
# ---------------------------------------------------------------------------


class Norm:
    """A p-norm on Q^dim, evaluable to a certified interval at rational points."""

    dim: int
    p: PExponent

    def eval(self, x: Sequence, prec: int = DEFAULT_PREC) -> Interval:
        raise NotImplementedError

    def coord_bounds(self) -> tuple[Fraction, ...]:
        """Per-coordinate rational upper bounds over the unit ball."""
        raise NotImplementedError

    @property
    def ball(self) -> Optional[Ball]:
        return None


@dataclass(frozen=True)
class BallNorm(Norm):
    _ball: Ball

    @property
    def dim(self) -> int:
        return self._ball.dim

    @property
    def p(self) -> PExponent:
        return self._ball.p

    @property
    def ball(self) -> Ball:
        return self._ball

    def eval(self, x, prec: int = DEFAULT_PREC) -> Interval:
        return gauge(self._ball, x, prec)[0]

    def coord_bounds(self):
        if self.dim == 0:
            return ()
        return tuple(max(abs(g[i]) for g in self._ball.gens) for i in range(self.dim))


def ball_norm(dim_or_ball, p=None, gens=None) -> BallNorm:
    if isinstance(dim_or_ball, Ball):
        return BallNorm(dim_or_ball)
    return BallNorm(Ball(dim_or_ball, pexp(p), tuple(qvec(g) for g in gens)))


def lp_norm(dim: int, p) -> BallNorm:
    return BallNorm(lp_ball(dim, p))


@dataclass(frozen=True)
class RestrictNorm(Norm):
    """Pull-back ||x|| = |f(x)| of an ambient norm along an injective map."""

    matrix: Matrix
    inner: Norm

    def __post_init__(self):
        if self.matrix.rows != self.inner.dim:
            raise DimensionMismatch("restriction matrix does not target the inner space")
        if self.matrix.cols > 0 and self.matrix.rank() != self.matrix.cols:
            raise PnormedError("restriction map must be injective")

    @property
    def dim(self) -> int:
        return self.matrix.cols

    @property
    def p(self) -> PExponent:
        return self.inner.p

    def eval(self, x, prec: int = DEFAULT_PREC) -> Interval:
        return self.inner.eval(self.matrix.apply(x), prec)

    def coord_bounds(self):
        if self.dim == 0:
            return ()
        ft = self.matrix.transpose()
        pinv = (ft @ self.matrix).inverse() @ ft
        inner_bounds = self.inner.coord_bounds()
        return tuple(
            sum((abs(pinv.entries[i][j]) * inner_bounds[j] for j in range(self.inner.dim)), Q(0))
            for i in range(self.dim)
        )


@dataclass(frozen=True)
class MaxNorm(Norm):
    """Direct product with ||(x, y)|| = max(|x|_left, |y|_right)."""

    left: Norm
    right: Norm

    @property
    def dim(self) -> int:
        return self.left.dim + self.right.dim

    @property
    def p(self) -> PExponent:
        return pexp(min(self.left.p.value, self.right.p.value))

    def split(self, x: Sequence) -> tuple[Vector, Vector]:
        x = qvec(x)
        if len(x) != self.dim:
            raise DimensionMismatch("point does not match the product dimension")
        return x[: self.left.dim], x[self.left.dim :]

    def eval(self, x, prec: int = DEFAULT_PREC) -> Interval:
        a, b = self.split(x)
        left = self.left.eval(a, prec) if self.left.dim else Interval.zero()
        right = self.right.eval(b, prec) if self.right.dim else Interval.zero()
        return left.max_with(right)

    def coord_bounds(self):
        return self.left.coord_bounds() + self.right.coord_bounds()


@dataclass(frozen=True)
class EuclideanNorm(Norm):
    """The l_2 norm; gallery use only (the only irrational-geometry norm)."""

    dim: int

    @property
    def p(self) -> PExponent:
        return pexp(1)

    def eval(self, x, prec: int = DEFAULT_PREC) -> Interval:
        x = qvec(x)
        if len(x) != self.dim:
            raise DimensionMismatch("point does not match the Euclidean dimension")
        s = sum((c * c for c in x), Q(0))
        return root_pow(s, 1, 2, prec)

    def coord_bounds(self):
        return tuple(Q(1) for _ in range(self.dim))


@dataclass(frozen=True)
class TwistNorm(Norm):
    """||y|| = inf { (|x|_left^p + (1+eps)^p |z|_right^p)^(1/p) : y = f(x) + z }.

    Kept symbolic only when a child is not finitely generated; with two
    generated children the construction is converted eagerly by twist_norm(),
    since linear images commute with p-convex hulls.
    """

    f: Matrix
    eps: Fraction
    left: Norm
    right: Norm

    def __post_init__(self):
        if self.f.cols != self.left.dim or self.f.rows != self.right.dim:
            raise DimensionMismatch("twist map shape mismatch")
        if q(self.eps) < 0:
            raise PnormedError("twist tolerance must be nonnegative")

    @property
    def dim(self) -> int:
        return self.right.dim

    @property
    def p(self) -> PExponent:
        return pexp(min(self.left.p.value, self.right.p.value))

    def eval(self, y, prec: int = DEFAULT_PREC) -> Interval:
        y = qvec(y)
        p = self.p
        one_eps = 1 + q(self.eps)
        # upper bound: the decomposition x = 0.
        upper = self.right.eval(y, prec).scale(one_eps)
        # certified lower bound through the norm of f.
        fn = _operator_norm_upper(self.f, self.left, self.right, prec)
        denom = fn.max_with(Interval.point(Q(1) / one_eps))
        base = self.right.eval(y, prec)
        if denom.hi == 0:
            lower = base
        else:
            lower = base.scale(Q(1) / denom.hi) if denom.lo > 0 else Interval.zero()
        return Interval(min(lower.lo, upper.hi), upper.hi)

    def coord_bounds(self):
        return tuple(b * (1 + q(self.eps)) for b in self.right.coord_bounds())


def twist_norm(f: Matrix, eps, left: Norm, right: Norm) -> Norm:
    """Twist construction, eagerly converted to a generated ball if possible.

    The twisted unit ball is the p-convex hull of f[B_left] and
    (1+eps)^{-1} B_right, so with generated children the generators are the
    f-images of the left generators (zero images dropped) plus the scaled
    right generators.
    """
    eps = q(eps)
    if left.ball is not None and right.ball is not None:
        gens: list[Vector] = []
        for g in left.ball.gens:
            img = f.apply(g)
            if not vec_is_zero(img):
                gens.append(img)
        scale = Q(1) / (1 + eps)
        gens.extend(vec_scale(scale, h) for h in right.ball.gens)
        return BallNorm(Ball(right.dim, right.p, tuple(gens)))
    return TwistNorm(f, eps, left, right)


def zero_space(p) -> BallNorm:
    return BallNorm(Ball(0, pexp(p), ()))


def scalar_space(p, radius=1) -> BallNorm:
    return BallNorm(Ball(1, pexp(p), ((q(radius),),)))


# ---------------------------------------------------------------------------
# Operator norms
# ---------------------------------------------------------------------------


def operator_norm(T: Matrix, dom: Norm, cod: Norm, prec: int = DEFAULT_PREC) -> Interval:
    """Certified ||T|| for a generated domain: the max over dom generators.

    Exact because x = sum coeff_i g_i with sum |coeff|^p <= 1 forces
    ||Tx||^p <= sum |coeff|^p ||T g_i||^p <= max_i ||T g_i||^p.
    """
    iv, _ = operator_norm_witness(T, dom, cod, prec)
    return iv


def operator_norm_witness(
    T: Matrix, dom: Norm, cod: Norm, prec: int = DEFAULT_PREC
) -> tuple[Interval, Optional[int]]:
    ball = dom.ball
    if ball is None:
        raise PnormedError("operator_norm needs a finitely generated domain")
    if T.cols != dom.dim or T.rows != cod.dim:
        raise DimensionMismatch(
            f"operator {T.rows}x{T.cols} does not map dim {dom.dim} to dim {cod.dim}"
        )
    if not ball.gens:
        return Interval.zero(), None
    best: Optional[Interval] = None
    arg = None
    values = []
    for i, g in enumerate(ball.gens):
        v = cod.eval(T.apply(g), prec)
        values.append(v)
        if best is None or v.hi > best.hi:
            best, arg = v, i
    iv = Interval(max(v.lo for v in values), max(v.hi for v in values))
    return iv, arg


def _operator_norm_upper(T: Matrix, dom: Norm, cod: Norm, prec: int) -> Interval:
    """Upper bound valid for any domain, exact when the domain is generated."""
    if dom.ball is not None:
        return operator_norm(T, dom, cod, prec)
    bounds = dom.coord_bounds()
    p = dom.p
    total = Interval.zero()
    for j in range(dom.dim):
        col_norm = cod.eval(T.col(j), prec)
        total = total + interval_p_pow(col_norm.scale(bounds[j]), p, prec)
    return Interval(Q(0), interval_root(total, p, prec).hi)


def operator_norm_upper(T: Matrix, dom: Norm, cod: Norm, prec: int = DEFAULT_PREC) -> Interval:
    return _operator_norm_upper(T, dom, cod, prec)


# ---------------------------------------------------------------------------
# Sphere nets
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SphereNet:
    """Certified delta-net of the unit sphere.

    Every point of the sphere lies within `delta` (in the space's norm) of a
    stored point.  Stored points are kept unnormalized: exact normalization
    is impossible with rational data, and a rescaling hop would cost its
    p-th power in the covering budget.  Instead each point carries a
    certified norm interval, and all of them lie inside `band`.
    """

    space: Norm
    delta: Fraction
    band: Interval
    points: tuple[tuple[Vector, Interval], ...]

    def vectors(self) -> list[Vector]:
        return [pt for pt, _ in self.points]


def _rational_below(x: Fraction, bits: int) -> Fraction:
    den = 1 << bits
    return Fraction((x.numerator * den) // x.denominator, den)


def sphere_net(
    space: Norm,
    delta,
    prec: int = DEFAULT_PREC,
    max_points: int = 2_000_000,
) -> SphereNet:
    """Deterministic grid net of the unit sphere with certified fineness.

    A sphere point x is covered in two certified hops: to the center y of its
    leaf box (cost gamma, from the mesh) and then to a surviving
    representative after greedy thinning; the budget split gamma^p + thin^p
    <= delta^p is checked in the p-power domain.  Kept points stay
    unnormalized, inside a certified norm band around 1.  Boxes whose
    certified norm range misses the unit shell are discarded wholesale, so
    the scan follows the sphere instead of filling the ambient box.
    """
    delta = q(delta)
    if not (0 < delta < 1):
        raise PnormedError("net fineness must lie in (0, 1)")
    p = space.p
    dim = space.dim
    if dim == 0:
        raise PnormedError("the zero space has an empty sphere")
    delta_p = p_pow(delta, p, prec).lo
    grid_budget_p = delta_p * Fraction(1, 2)
    thin_budget_p = delta_p * Fraction(1, 2)

    if dim == 1:
        # the sphere is two points; use them exactly when the norm is rational
        n1 = space.eval((Q(1),), prec)
        if n1.is_point() and n1.lo > 0:
            s = 1 / n1.lo
            return SphereNet(
                space=space,
                delta=delta,
                band=Interval.point(1),
                points=(((s,), Interval.point(1)), ((-s,), Interval.point(1))),
            )

    coord_weights = [
        interval_p_pow(space.eval(unit_vector(dim, i), prec), p, prec).hi for i in range(dim)
    ]
    weight = sum(coord_weights, Q(0))
    # leaf half-side h2 with sum_i h2^p ||e_i||^p <= grid budget
    h2 = Q(1)
    while p_pow(h2, p, prec).hi * weight > grid_budget_p:
        h2 = h2 / 2
        if h2 < Fraction(1, 1 << 40):
            raise ResourceSignal("net mesh underflow", required={"delta": str(delta)})
    gamma_p = p_pow(h2, p, prec).hi * weight  # leaf covering radius, p-th power
    gamma = interval_root(Interval(Q(0), gamma_p), p, prec).hi

    lo_keep = 1 - gamma
    hi_keep = interval_root(Interval.one() + Interval(Q(0), gamma_p), p, prec).hi
    lo_keep_p = p_pow(lo_keep, p, prec).lo if lo_keep > 0 else Q(0)
    hi_keep_p = p_pow(hi_keep, p, prec).hi
    cheap = min(prec, 16)

    def box_radius_p(half: Fraction) -> Fraction:
        return p_pow(half, p, cheap).hi * weight

    bounds = space.coord_bounds()
    root_half = h2
    while root_half < max(bounds) + h2:
        root_half *= 2

    points: list[tuple[Vector, Interval]] = []
    stack = [(tuple(Q(0) for _ in range(dim)), root_half)]
    visited = 0
    while stack:
        center, half = stack.pop()
        visited += 1
        if visited > max_points:
            raise ResourceSignal(
                "box subdivision exceeded the candidate cap",
                required={"max_points": max_points},
            )
        if not vec_is_zero(center):
            n_p = interval_p_pow(space.eval(center, cheap), p, cheap)
            rho = box_radius_p(half)
            if n_p.lo - rho > hi_keep_p or n_p.hi + rho < lo_keep_p:
                continue
        elif box_radius_p(half) < lo_keep_p:
            continue
        if half > h2:
            nh = half / 2
            for signs in itertools.product((-1, 1), repeat=dim):
                child = tuple(c + s * nh for c, s in zip(center, signs))
                stack.append((child, nh))
            continue
        # leaf: keep the center if its certified norm meets the shell band
        y = center
        if vec_is_zero(y):
            continue
        n = space.eval(y, prec)
        if n.hi < lo_keep or n.lo > hi_keep:
            continue
        bits = prec + 4
        while n.lo <= 0 and bits <= prec * 8:
            n = space.eval(y, bits)
            bits *= 2
        if n.lo <= 0:
            raise ResourceSignal("cannot certify a positive norm for a net candidate")
        points.append((y, n))
    if not points:
        raise ResourceSignal("net construction kept no points", required={"delta": str(delta)})

    # greedy thinning: drop points certified within the thinning radius of an
    # already selected one; exact unit-norm points get selected first.
    thin_radius = root_pow(thin_budget_p, p.den, p.num, prec).lo
    order = sorted(
        range(len(points)),
        key=lambda i: (0 if points[i][1] == Interval.point(1) else 1, i),
    )
    selected: list[tuple[Vector, Interval]] = []
    # coordinate prefilter: |d_i| <= B_i ||d||, so a large coordinate gap
    # certifies the pair is not close and saves the norm evaluation
    coord_cut = [b * thin_radius for b in bounds]
    for i in order:
        pt, iv = points[i]
        close = False
        for spt, _ in selected:
            diff = vec_sub(pt, spt)
            if any(abs(dc) > cut for dc, cut in zip(diff, coord_cut)):
                continue
            d = space.eval(diff, cheap)
            if d.hi <= thin_radius:
                close = True
                break
        if not close:
            selected.append((pt, iv))
    band = Interval(min(iv.lo for _, iv in selected), max(iv.hi for _, iv in selected))
    return SphereNet(space=space, delta=delta, band=band, points=tuple(selected))


def norm_lower_bound_on_sphere(
    T: Matrix,
    dom: Norm,
    cod: Norm,
    net: SphereNet,
    upper_bound_T: Interval,
    prec: int = DEFAULT_PREC,
) -> Interval:
    """Certified lower bound for inf over the unit sphere of ||Tx||.

    By p-subadditivity, ||T(x + h)||^p >= ||Tx||^p - ||T||^p ||h||^p, so the
    net minimum minus the net fineness correction bounds the infimum below.
    """
    delta = q(net.delta)
    if not (0 < delta < 1):
        raise PnormedError("net fineness must be below 1")
    p = dom.p
    worst: Optional[Interval] = None
    for pt, _ in net.points:
        v = interval_p_pow(cod.eval(T.apply(pt), prec), p, prec)
        worst = v if worst is None else worst.min_with(v)
    if worst is None:
        raise PnormedError("empty net")
    correction = interval_p_pow(upper_bound_T, p, prec) * p_pow(delta, p, prec)
    bound_p = (worst - correction).clamp_nonneg()
    return Interval(interval_root(bound_p, p, prec).lo, interval_root(worst, p, prec).hi)


# ---------------------------------------------------------------------------
# Rationalization
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Rationalization:
    """A generated ball certified (1+eps)-equivalent to the input norm.

    Two-sided certificate for the identity map: the generators have
    certified old-norms at most band.hi, so new >= old / band.hi, and the
    greedy decomposition bound at net fineness delta gives
    new <= (1 - delta^p)^(-1/p) * old.  Both factors are at most 1 + eps.
    """

    source: Norm
    ball: Ball
    eps: Interval
    net: Optional[SphereNet]
    generator_norms: tuple[Interval, ...]


def rationalize(space: Norm, delta, prec: int = DEFAULT_PREC, max_points: int = 2_000_000) -> Rationalization:
    delta = q(delta)
    if not (0 < delta < 1):
        raise PnormedError("rationalize needs 0 < delta < 1")
    if space.ball is not None:
        return Rationalization(space, space.ball, Interval.zero(), None, ())
    net = sphere_net(space, delta, prec, max_points=max_points)
    gens = tuple(pt for pt, _ in net.points)
    norms = tuple(iv for _, iv in net.points)
    ball = Ball(space.dim, space.p, gens)
    p = space.p
    dpow = p_pow(delta, p, prec)
    denom = (Interval.one() - dpow).clamp_nonneg()
    if denom.lo <= 0:
        raise ResourceSignal("net too coarse to certify the greedy bound", required={"delta": str(delta)})
    factor = interval_root(denom, p, prec).reciprocal()
    eps = (factor - Interval.one()).clamp_nonneg()
    if net.band.hi - 1 > eps.hi:
        # mesh half-step of delta^p/2 makes band.hi <= (1-delta^p)^(-1/p);
        # failing that means precision, not mathematics, ran out
        raise ResourceSignal(
            "net band too wide for the advertised isometry defect",
            required={"band": str(net.band), "eps": str(eps)},
        )
    return Rationalization(space, ball, eps, net, norms)
