"""Gauges, norm expressions, operator norms, nets, rationalization."""

import itertools
import random
from fractions import Fraction as Q

import pytest

from pnormed.arith import Interval, Matrix, p_pow, pexp, root_pow
from pnormed.errors import PnormedError
from pnormed.space import (
    Ball,
    BallNorm,
    EuclideanNorm,
    MaxNorm,
    RestrictNorm,
    ball_norm,
    gauge,
    lp_ball,
    lp_norm,
    norm_lower_bound_on_sphere,
    operator_norm,
    operator_norm_witness,
    rationalize,
    sphere_net,
    twist_norm,
    unit_vector,
)


def grid_oracle_cost(ball, x, grid_steps=8, prec=60):
    """Brute-force upper bound for the gauge: scan rational decompositions.

    Walks a rational grid in the affine solution set of x = sum c_i g_i and
    returns the smallest certified cost found.  Independent of the support
    enumeration: it never solves for vertex supports, it only samples.
    """
    m = len(ball.gens)
    A = Matrix.from_cols(ball.gens)
    x0 = A.solve(x)
    if x0 is None:
        raise PnormedError("oracle: point outside the span")
    kernel = A.kernel_basis()
    best = None
    rng = [Q(i, grid_steps // 2) for i in range(-grid_steps, grid_steps + 1)]
    for combo in itertools.product(rng, repeat=len(kernel)):
        c = list(x0)
        for t, kv in zip(combo, kernel):
            for i in range(m):
                c[i] += t * kv[i]
        cost = Interval.point(0)
        for ci in c:
            cost = cost + p_pow(abs(ci), ball.p, prec)
        if best is None or cost.hi < best.hi:
            best = cost
    from pnormed.arith import interval_root

    return interval_root(best, ball.p, prec)


def closed_form_lp(x, p, prec=60):
    from pnormed.arith import p_sum_root

    return p_sum_root([p_pow(abs(c), p, prec) for c in x], p, prec)


class TestGauge:
    def test_lp_half_example(self):
        # pconv{e1, e2} in Q^2 at (1,1) with p = 1/2 has gauge (1+1)^2 = 4
        ball = lp_ball(2, "1/2")
        val, dec = gauge(ball, [1, 1])
        assert val.contains(4)
        assert dec.reconstruct(ball, 2) == (Q(1), Q(1))

    def test_generator_is_on_sphere(self):
        ball = lp_ball(2, "1/2")
        val, _ = gauge(ball, unit_vector(2, 0))
        assert val == Interval.point(1)

    def test_zero_vector(self):
        ball = lp_ball(3, "2/3")
        val, dec = gauge(ball, [0, 0, 0])
        assert val == Interval.point(0)
        assert dec.indices == ()

    def test_homogeneity(self):
        ball = Ball(2, pexp("1/2"), ((Q(1), Q(2)), (Q(1), Q(-1)), (Q(0), Q(1))))
        v1, _ = gauge(ball, [1, 1])
        v3, _ = gauge(ball, [3, 3])
        scaled = v1.scale(3)
        assert scaled.overlaps(v3)

    def test_matches_closed_form_lp(self):
        for p in ("1", "2/3", "1/2"):
            ball = lp_ball(3, p)
            x = (Q(1, 2), Q(-2, 3), Q(3))
            val, _ = gauge(ball, x)
            cf = closed_form_lp(x, pexp(p))
            assert val.overlaps(cf)

    def test_never_beaten_by_grid_oracle(self):
        rng = random.Random(7)
        for _ in range(25):
            dim = rng.choice([1, 2, 3])
            m = rng.randint(dim, 5)
            p = pexp(rng.choice(["1", "2/3", "1/2"]))
            gens = []
            while True:
                gens = [
                    tuple(Q(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(dim))
                    for _ in range(m)
                ]
                gens = [g for g in gens if any(c != 0 for c in g)]
                if gens and Matrix.from_cols(gens).rank() == dim:
                    break
            ball = Ball(dim, p, tuple(gens))
            x = tuple(Q(rng.randint(-3, 3), rng.randint(1, 2)) for _ in range(dim))
            val, dec = gauge(ball, x)
            oracle = grid_oracle_cost(ball, x, grid_steps=6)
            # the enumerated minimum can never exceed a sampled decomposition
            assert val.lo <= oracle.hi
            # witness reconstructs x exactly and its cost matches the value
            assert dec.reconstruct(ball, dim) == x if dec.indices else all(c == 0 for c in x)

    def test_subadditivity_property(self):
        rng = random.Random(3)
        ball = Ball(2, pexp("1/2"), ((Q(1), Q(0)), (Q(1), Q(1)), (Q(0), Q(2))))
        p = ball.p
        for _ in range(20):
            x = tuple(Q(rng.randint(-3, 3), 2) for _ in range(2))
            y = tuple(Q(rng.randint(-3, 3), 2) for _ in range(2))
            gx, _ = gauge(ball, x)
            gy, _ = gauge(ball, y)
            gxy, _ = gauge(ball, tuple(a + b for a, b in zip(x, y)))
            lhs = p_pow(gxy.lo, p).lo if gxy.lo > 0 else Q(0)
            rhs = p_pow(gx.hi, p).hi + p_pow(gy.hi, p).hi
            assert lhs <= rhs

    def test_generator_domination(self):
        ball = Ball(2, pexp("2/3"), ((Q(2), Q(1)), (Q(-1), Q(1)), (Q(1, 2), Q(0))))
        for g in ball.gens:
            val, _ = gauge(ball, g)
            assert val.lo <= 1 <= val.hi or val.hi <= 1


class TestBallConstruction:
    def test_rejects_zero_generator(self):
        with pytest.raises(PnormedError):
            Ball(2, pexp(1), ((Q(0), Q(0)),))

    def test_rejects_nonspanning(self):
        with pytest.raises(PnormedError):
            Ball(2, pexp(1), ((Q(1), Q(0)),))

    def test_dedups_signs_and_multiples(self):
        ball = Ball(1, pexp("1/2"), ((Q(1),), (Q(-1),), (Q(1, 2),)))
        assert len(ball.gens) == 1

    def test_canonical_key_ignores_order_and_sign(self):
        b1 = Ball(2, pexp(1), ((Q(1), Q(0)), (Q(0), Q(1))))
        b2 = Ball(2, pexp(1), ((Q(0), Q(-1)), (Q(-1), Q(0))))
        assert b1.canonical_key() == b2.canonical_key()


class TestNormExpressions:
    def test_max_product(self):
        n = MaxNorm(lp_norm(1, "1/2"), lp_norm(1, "1/2"))
        assert n.eval([1, 1]).contains(1)
        assert n.eval([Q(1, 2), 1]).contains(1)

    def test_restrict_column(self):
        # f = column (1,1) into l_{1/2}^2: the norm of 1 is gauge of (1,1) = 4
        f = Matrix(2, 1, [[1], [1]])
        n = RestrictNorm(f, lp_norm(2, "1/2"))
        assert n.eval([1]).contains(4)

    def test_restrict_requires_injective(self):
        with pytest.raises(PnormedError):
            RestrictNorm(Matrix(2, 2, [[1, 1], [1, 1]]), lp_norm(2, 1))

    def test_twist_converts_to_ball(self):
        f = Matrix.identity(1)
        n = twist_norm(f, Q(1, 10), lp_norm(1, "1/2"), lp_norm(1, "1/2"))
        assert isinstance(n, BallNorm)
        # ball is pconv{1, (1+eps)^{-1}} = [-1, 1]
        assert n.eval([1]).contains(1)

    def test_twist_graph_points_have_domain_norm(self):
        # proof of the bound-correction lemma: |u_flat x| = ||x||
        f = Matrix.identity(1)
        n = twist_norm(f, Q(1, 4), lp_norm(1, "1/2"), BallNorm(Ball(1, pexp("1/2"), ((Q(4, 5),),))))
        val = n.eval([1])
        assert val.contains(1)

    def test_euclid(self):
        n = EuclideanNorm(2)
        v = n.eval([3, 4])
        assert v.contains(5)
        v2 = n.eval([1, 1])
        assert v2.lo**2 <= 2 <= v2.hi**2


class TestOperatorNorm:
    def test_identity(self):
        n = lp_norm(2, "1/2")
        v = operator_norm(Matrix.identity(2), n, n)
        assert v.contains(1)

    def test_diagonal_on_l1(self):
        n = lp_norm(2, 1)
        t = Matrix(2, 2, [[2, 0], [0, Q(1, 2)]])
        v = operator_norm(t, n, n)
        assert v.contains(2)

    def test_sum_functional_on_l_half(self):
        t = Matrix(1, 2, [[1, 1]])
        v = operator_norm(t, lp_norm(2, "1/2"), lp_norm(1, "1/2"))
        assert v.contains(1)

    def test_upper_bounds_sampled_ratios(self):
        rng = random.Random(11)
        dom = Ball(2, pexp("1/2"), ((Q(1), Q(1)), (Q(0), Q(1)), (Q(2), Q(-1))))
        cod = lp_norm(2, "1/2")
        t = Matrix(2, 2, [[1, Q(1, 2)], [Q(-1, 3), 1]])
        bound, arg = operator_norm_witness(t, BallNorm(dom), cod)
        assert arg is not None
        for _ in range(50):
            x = tuple(Q(rng.randint(-5, 5), rng.randint(1, 4)) for _ in range(2))
            if all(c == 0 for c in x):
                continue
            nx, _ = gauge(dom, x)
            ntx = cod.eval(t.apply(x))
            # ||Tx|| <= ||T|| ||x||
            assert ntx.lo <= bound.hi * nx.hi

    def test_zero_domain(self):
        z = BallNorm(Ball(0, pexp(1), ()))
        v = operator_norm(Matrix.zero(2, 0), z, lp_norm(2, 1))
        assert v == Interval.point(0)


class TestNets:
    def test_dim1_net_is_two_points(self):
        net = sphere_net(lp_norm(1, 1), Q(1, 2))
        vecs = sorted(net.vectors())
        assert (Q(-1),) in vecs and (Q(1),) in vecs
        for _, iv in net.points:
            assert iv.hi <= 1

    def test_l1_square_net_covers(self):
        net = sphere_net(lp_norm(2, 1), Q(1, 4))
        space = lp_norm(2, 1)
        rng = random.Random(5)
        for _ in range(40):
            # random point of the l1 sphere
            t = Q(rng.randint(-100, 100), 101)
            x = (t, (1 - abs(t)) * rng.choice([-1, 1]))
            best = None
            for pt in net.vectors():
                d = space.eval(tuple(a - b for a, b in zip(x, pt))).hi
                best = d if best is None else min(best, d)
            assert best <= Q(1, 4)

    def test_degenerate_delta_rejected(self):
        with pytest.raises(PnormedError):
            sphere_net(lp_norm(2, 1), Q(1))

    def test_lower_bound_identity(self):
        space = lp_norm(2, 1)
        net = sphere_net(space, Q(1, 4))
        lb = norm_lower_bound_on_sphere(Matrix.identity(2), space, space, net, Interval.point(1))
        # formula gives at least (1 - delta^p)^(1/p) = 3/4 at p = 1
        assert lb.lo >= Q(5, 8)

    def test_lower_bound_zero_map(self):
        space = lp_norm(2, 1)
        net = sphere_net(space, Q(1, 4))
        lb = norm_lower_bound_on_sphere(Matrix.zero(2, 2), space, space, net, Interval.point(0))
        assert lb.lo == 0

    def test_lower_bound_diag(self):
        space = lp_norm(2, 1)
        net = sphere_net(space, Q(1, 8))
        t = Matrix(2, 2, [[2, 0], [0, 3]])
        ub = operator_norm(t, space, space)
        lb = norm_lower_bound_on_sphere(t, space, space, net, ub)
        # true infimum over the sphere is min(2,3) = 2
        assert lb.lo >= 1 and lb.hi >= 2 - Q(1, 2)


class TestRationalize:
    def test_fingen_short_circuit(self):
        n = lp_norm(2, "1/2")
        r = rationalize(n, Q(1, 4))
        assert r.ball is n.ball
        assert r.eps == Interval.point(0)

    def test_max_product_two_sided(self):
        space = MaxNorm(lp_norm(1, "1/2"), lp_norm(1, "1/2"))
        r = rationalize(space, Q(1, 4))
        one_eps = Interval.one() + r.eps
        rng = random.Random(13)
        new_norm = BallNorm(r.ball)
        for _ in range(25):
            x = tuple(Q(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(2))
            if all(c == 0 for c in x):
                continue
            old = space.eval(x)
            new = new_norm.eval(x)
            # new >= old exactly; new <= (1+eps) old
            assert new.hi >= old.lo
            assert new.lo <= (one_eps * old).hi

    def test_euclid_polygon(self):
        space = EuclideanNorm(2)
        r = rationalize(space, Q(1, 8), prec=40)
        # certified eps <= (1 - 1/8)^{-1} - 1 = 1/7 at p = 1
        assert r.eps.hi <= Q(1, 7) + Q(1, 1000)
        rng = random.Random(17)
        new_norm = BallNorm(r.ball)
        one_eps = Interval.one() + r.eps
        for _ in range(20):
            x = tuple(Q(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(2))
            if all(c == 0 for c in x):
                continue
            old = space.eval(x)
            new = new_norm.eval(x)
            assert new.hi >= old.lo
            assert new.lo <= (one_eps * old).hi
