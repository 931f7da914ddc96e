import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from curvlab import jet
from curvlab.errors import EvalDomainError

# Finite-difference oracles, independent of the jet rules. The gradient step
# is 1e-5; second differences sit at the float64 roundoff floor there, so
# Hessian checks use 1e-4 where the total FD error is ~1e-8.
GRAD_STEP = 1e-5
HESS_STEP = 1e-4
RTOL = 1e-6


def fd_gradient(f, x, h=GRAD_STEP):
    x = np.asarray(x, dtype=float)
    g = np.zeros_like(x)
    for i in range(len(x)):
        xp, xm = x.copy(), x.copy()
        xp[i] += h
        xm[i] -= h
        g[i] = (f(xp) - f(xm)) / (2 * h)
    return g


def fd_hessian(f, x, h=HESS_STEP):
    x = np.asarray(x, dtype=float)
    n = len(x)
    H = np.zeros((n, n))
    for i in range(n):
        for j in range(n):
            if i == j:
                xp, xm = x.copy(), x.copy()
                xp[i] += h
                xm[i] -= h
                H[i, i] = (f(xp) - 2 * f(x) + f(xm)) / h**2
            else:
                xpp, xpm, xmp, xmm = (x.copy() for _ in range(4))
                xpp[i] += h; xpp[j] += h
                xpm[i] += h; xpm[j] -= h
                xmp[i] -= h; xmp[j] += h
                xmm[i] -= h; xmm[j] -= h
                H[i, j] = (f(xpp) - f(xpm) - f(xmp) + f(xmm)) / (4 * h**2)
    return H


def rel_close(a, b, tol=RTOL):
    return np.all(np.abs(a - b) <= tol * np.maximum(1.0, np.abs(b)))


# -- seeds ----------------------------------------------------------------------

def test_seed_examples():
    j = jet.seed([2.0, 5.0], 0)
    assert j.value == 2.0
    assert np.array_equal(j.grad, [1.0, 0.0])
    assert np.all(j.hess == 0.0)

    j = jet.seed([0.0], 0)
    assert j.value == 0.0 and j.grad[0] == 1.0 and j.hess[0, 0] == 0.0

    j = jet.seed([1.0, 1.0, 1.0], 2)
    assert j.value == 1.0
    assert np.array_equal(j.grad, [0.0, 0.0, 1.0])
    assert np.all(j.hess == 0.0)


def test_seed_index_out_of_range():
    with pytest.raises(IndexError):
        jet.seed([1.0, 2.0], 2)
    with pytest.raises(IndexError):
        jet.seed([1.0], -1)


def test_square_of_seed():
    x = jet.seed([3.0], 0)
    sq = jet.jet_apply("mul", [x, x])
    assert sq.value == 9.0
    assert sq.grad[0] == 6.0
    assert sq.hess[0, 0] == 2.0


def test_sin_at_zero():
    s = jet.jet_apply("sin", [jet.seed([0.0], 0)])
    assert s.value == 0.0 and s.grad[0] == 1.0 and s.hess[0, 0] == 0.0


def test_cos_at_zero_vs_fd():
    c = jet.jet_apply("cos", [jet.seed([0.0], 0)])
    assert c.value == 1.0 and c.grad[0] == 0.0
    assert c.hess[0, 0] == -1.0
    assert rel_close(c.grad, fd_gradient(lambda x: math.cos(x[0]), [0.0]))
    assert rel_close(c.hess, fd_hessian(lambda x: math.cos(x[0]), [0.0]))


# -- every elementary rule against finite differences ---------------------------

UNARY_CASES = [
    ("sin", math.sin, (-2.0, 2.0)),
    ("cos", math.cos, (-2.0, 2.0)),
    ("tan", math.tan, (-1.2, 1.2)),
    ("exp", math.exp, (-2.0, 2.0)),
    ("log", math.log, (0.3, 4.0)),
    ("sqrt", math.sqrt, (0.3, 4.0)),
    ("sinh", math.sinh, (-2.0, 2.0)),
    ("cosh", math.cosh, (-2.0, 2.0)),
]


@pytest.mark.parametrize("tag,ref,window", UNARY_CASES)
def test_unary_rules_match_fd(tag, ref, window):
    rng = np.random.default_rng(11)
    for _ in range(25):
        x0 = rng.uniform(*window)
        out = jet.jet_apply(tag, [jet.seed([x0], 0)])
        f = lambda x: ref(x[0])
        assert abs(out.value - f([x0])) <= 1e-12 * max(1.0, abs(out.value))
        assert rel_close(out.grad, fd_gradient(f, [x0]))
        assert rel_close(out.hess, fd_hessian(f, [x0]))


BINARY_CASES = [
    ("add", lambda a, b: a + b),
    ("sub", lambda a, b: a - b),
    ("mul", lambda a, b: a * b),
    ("div", lambda a, b: a / b),
]


@pytest.mark.parametrize("tag,ref", BINARY_CASES)
def test_binary_rules_match_fd(tag, ref):
    rng = np.random.default_rng(12)
    for _ in range(25):
        p = rng.uniform(0.5, 2.0, 2)  # away from the division pole
        out = jet.jet_apply(tag, [jet.seed(p, 0), jet.seed(p, 1)])
        f = lambda x: ref(x[0], x[1])
        assert rel_close(out.grad, fd_gradient(f, p))
        assert rel_close(out.hess, fd_hessian(f, p))


@pytest.mark.parametrize("k", [-3, -1, 0, 1, 2, 5])
def test_pow_int_matches_fd(k):
    rng = np.random.default_rng(13)
    for _ in range(10):
        x0 = rng.uniform(0.5, 2.0)
        out = jet.jet_apply("pow-int", [jet.seed([x0], 0), k])
        f = lambda x: x[0] ** k
        assert rel_close(out.grad, fd_gradient(f, [x0]))
        assert rel_close(out.hess, fd_hessian(f, [x0]))


def test_neg_rule():
    x = jet.seed([1.5], 0)
    out = jet.jet_apply("neg", [jet.jet_apply("sin", [x])])
    assert out.value == -math.sin(1.5)
    assert out.grad[0] == -math.cos(1.5)


@given(st.floats(min_value=-1.5, max_value=1.5),
       st.floats(min_value=-1.5, max_value=1.5))
@settings(max_examples=60, deadline=None)
def test_composition_against_fd(x0, y0):
    # f(x, y) = sin(x y) + exp(x)
    def f(p):
        return math.sin(p[0] * p[1]) + math.exp(p[0])

    xs, ys = jet.seeds([x0, y0])
    out = jet.jet_apply("sin", [xs * ys]) + jet.jet_apply("exp", [xs])
    assert abs(out.value - f([x0, y0])) <= 1e-12 * max(1.0, abs(out.value))
    assert rel_close(out.grad, fd_gradient(f, [x0, y0]))
    assert rel_close(out.hess, fd_hessian(f, [x0, y0]))


def test_composition_hundred_seeded_points():
    def f(p):
        return math.sin(p[0] * p[1]) + math.exp(p[0])

    rng = np.random.default_rng(42)
    for _ in range(100):
        p = rng.uniform(-1.5, 1.5, 2)
        xs, ys = jet.seeds(p)
        out = jet.jet_apply("sin", [xs * ys]) + jet.jet_apply("exp", [xs])
        assert rel_close(out.grad, fd_gradient(f, p))
        assert rel_close(out.hess, fd_hessian(f, p))


def test_hessian_symmetry():
    rng = np.random.default_rng(5)
    p = rng.uniform(0.5, 1.5, 3)
    x, y, z = jet.seeds(p)
    out = (x * y) * jet.jet_apply("exp", [z]) / (x + y)
    assert np.array_equal(out.hess, out.hess.T)


def test_mixed_scalar_arithmetic():
    x = jet.seed([2.0], 0)
    out = 1.0 / x + 3 * x - 2
    assert out.value == 0.5 + 6 - 2
    assert abs(out.grad[0] - (-0.25 + 3)) < 1e-15


# -- domain errors ----------------------------------------------------------------

def test_division_by_zero_raises():
    x = jet.seed([0.0], 0)
    with pytest.raises(EvalDomainError):
        jet.jet_apply("div", [jet.constant(1.0, 1), x])


def test_log_of_nonpositive_raises():
    with pytest.raises(EvalDomainError):
        jet.jet_apply("log", [jet.seed([0.0], 0)])
    with pytest.raises(EvalDomainError):
        jet.jet_apply("log", [jet.seed([-1.0], 0)])


def test_sqrt_of_negative_raises():
    with pytest.raises(EvalDomainError):
        jet.jet_apply("sqrt", [jet.seed([-0.5], 0)])


def test_unknown_tag_raises():
    with pytest.raises(ValueError):
        jet.jet_apply("atan", [jet.seed([0.0], 0)])
