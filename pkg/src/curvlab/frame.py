"""Exact invariant-frame geometry over the rationals.

A left-invariant metric on a Lie group is determined by structure constants
c^k_ij (brackets [E_i, E_j] = Σ_k c^k_ij E_k) and a constant frame metric.
With a constant metric the Koszul formula loses its derivative terms:

    2 g(∇_Ei Ej, Ek) = g([Ei, Ej], Ek) − g([Ej, Ek], Ei) + g([Ek, Ei], Ej)

Everything downstream (connection, curvature, classification residuals) is
evaluated in fractions.Fraction arithmetic, which makes this module the
ground-truth oracle against the floating chart engine.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Sequence

import numpy as np

__all__ = ["FrameGeometry", "frame_connection", "frame_curvature", "heisenberg_h21"]


def _rat_matrix_inverse(m: list[list[Fraction]]) -> list[list[Fraction]]:
    n = len(m)
    a = [[Fraction(m[i][j]) for j in range(n)] + [Fraction(int(i == j)) for j in range(n)]
         for i in range(n)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if a[r][col] != 0), None)
        if pivot is None:
            raise ValueError("singular frame metric")
        a[col], a[pivot] = a[pivot], a[col]
        inv = Fraction(1) / a[col][col]
        a[col] = [x * inv for x in a[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return [row[n:] for row in a]


@dataclass
class FrameGeometry:
    """Structure constants and constant metric of an invariant frame.

    ``c[k][i][j]`` is the E_k coefficient of [E_i, E_j]; ``g[i][j]`` the
    frame metric. Optional almost contact tensors ``phi`` (matrix, column =
    input index), ``xi`` (vector) and ``eta`` (covector) ride along. All
    entries are exact rationals. Construction validates bracket
    antisymmetry, the Jacobi identity and positive definiteness of g.
    """

    dim: int
    c: list  # c[k][i][j]
    g: list  # g[i][j]
    phi: list | None = None
    xi: list | None = None
    eta: list | None = None
    name: str = ""
    _ginv: list = field(init=False, repr=False)
    _nabla: list = field(init=False, repr=False)
    _riem: dict = field(init=False, repr=False)

    def __post_init__(self):
        d = self.dim
        self.c = [[[Fraction(self.c[k][i][j]) for j in range(d)] for i in range(d)]
                  for k in range(d)]
        self.g = [[Fraction(self.g[i][j]) for j in range(d)] for i in range(d)]
        if self.phi is not None:
            self.phi = [[Fraction(x) for x in row] for row in self.phi]
        if self.xi is not None:
            self.xi = [Fraction(x) for x in self.xi]
        if self.eta is not None:
            self.eta = [Fraction(x) for x in self.eta]
        self._validate()
        self._ginv = _rat_matrix_inverse(self.g)
        self._nabla = self._compute_connection()
        self._riem = {}

    def _validate(self):
        d = self.dim
        for k, i, j in product(range(d), repeat=3):
            if self.c[k][i][j] != -self.c[k][j][i]:
                raise ValueError(f"structure constants not antisymmetric at ({k},{i},{j})")
        for i, j, k in product(range(d), repeat=3):
            for m in range(d):
                # Jacobi: [[Ei,Ej],Ek] + [[Ej,Ek],Ei] + [[Ek,Ei],Ej] = 0
                s = sum(self.c[a][i][j] * self.c[m][a][k]
                        + self.c[a][j][k] * self.c[m][a][i]
                        + self.c[a][k][i] * self.c[m][a][j] for a in range(d))
                if s != 0:
                    raise ValueError(f"Jacobi identity fails on ({i},{j},{k})")
        for i, j in product(range(d), repeat=2):
            if self.g[i][j] != self.g[j][i]:
                raise ValueError("frame metric not symmetric")
        for k in range(1, d + 1):
            if _leading_minor(self.g, k) <= 0:
                raise ValueError("frame metric not positive definite")

    # -- connection and curvature ------------------------------------------

    def bracket(self, i: int, j: int) -> list[Fraction]:
        return [self.c[k][i][j] for k in range(self.dim)]

    def inner(self, u: Sequence[Fraction], v: Sequence[Fraction]) -> Fraction:
        d = self.dim
        return sum(u[a] * self.g[a][b] * v[b] for a in range(d) for b in range(d))

    def _compute_connection(self):
        d = self.dim
        nabla = [[None] * d for _ in range(d)]
        basis = [[Fraction(int(a == b)) for a in range(d)] for b in range(d)]
        for i in range(d):
            for j in range(d):
                rhs = []
                for k in range(d):
                    val = (self.inner(self.bracket(i, j), basis[k])
                           - self.inner(self.bracket(j, k), basis[i])
                           + self.inner(self.bracket(k, i), basis[j])) / 2
                    rhs.append(val)
                # coefficients solve g·x = rhs
                nabla[i][j] = [sum(self._ginv[a][b] * rhs[b] for b in range(d))
                               for a in range(d)]
        return nabla

    def nabla_vector(self, i: int, v: Sequence[Fraction]) -> list[Fraction]:
        """∇_Ei of a constant-coefficient vector Σ v^j E_j."""
        d = self.dim
        out = [Fraction(0)] * d
        for j in range(d):
            if v[j] != 0:
                coeff = self._nabla[i][j]
                for k in range(d):
                    out[k] += v[j] * coeff[k]
        return out

    def curvature_vector(self, i: int, j: int, k: int) -> list[Fraction]:
        """R_EiEj E_k = ∇_i ∇_j E_k − ∇_j ∇_i E_k − ∇_[Ei,Ej] E_k."""
        d = self.dim
        a = self.nabla_vector(i, self._nabla[j][k])
        b = self.nabla_vector(j, self._nabla[i][k])
        br = self.bracket(i, j)
        out = [a[m] - b[m] for m in range(d)]
        for m in range(d):
            if br[m] != 0:
                coeff = self._nabla[m][k]
                for q in range(d):
                    out[q] -= br[m] * coeff[q]
        return out

    def riemann(self, i: int, j: int, k: int, l: int) -> Fraction:
        """Lowered R(E_i, E_j, E_k, E_l) = −g(R_EiEj E_k, E_l), cached."""
        key = (i, j, k, l)
        if key not in self._riem:
            vec = self.curvature_vector(i, j, k)
            basis = [Fraction(int(a == l)) for a in range(self.dim)]
            self._riem[key] = -self.inner(vec, basis)
        return self._riem[key]

    def riemann_table(self) -> np.ndarray:
        d = self.dim
        out = np.empty((d, d, d, d), dtype=object)
        for i, j, k, l in product(range(d), repeat=4):
            out[i, j, k, l] = self.riemann(i, j, k, l)
        return out

    def phi_vector(self, v: Sequence[Fraction]) -> list[Fraction]:
        if self.phi is None:
            raise ValueError("frame carries no phi tensor")
        d = self.dim
        return [sum(self.phi[i][j] * v[j] for j in range(d)) for i in range(d)]

    def eta_value(self, v: Sequence[Fraction]) -> Fraction:
        if self.eta is None:
            raise ValueError("frame carries no eta tensor")
        return sum(self.eta[i] * v[i] for i in range(self.dim))

    def ricci(self, x: Sequence[Fraction], y: Sequence[Fraction]) -> Fraction:
        """Ric(X, Y) = Σ_ab g^ab R(E_a, X, E_b, Y), exact."""
        d = self.dim
        total = Fraction(0)
        for a, b in product(range(d), repeat=2):
            if self._ginv[a][b] == 0:
                continue
            s = Fraction(0)
            # expand bilinearly over the frame
            for i in range(d):
                if x[i] == 0:
                    continue
                for k in range(d):
                    if y[k] == 0:
                        continue
                    s += x[i] * y[k] * self.riemann(a, i, b, k)
            total += self._ginv[a][b] * s
        return total


def _leading_minor(m: list[list[Fraction]], k: int) -> Fraction:
    sub = [row[:k] for row in m[:k]]
    # fraction-exact determinant by elimination
    n = k
    a = [row[:] for row in sub]
    det = Fraction(1)
    for col in range(n):
        pivot = next((r for r in range(col, n) if a[r][col] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            a[col], a[pivot] = a[pivot], a[col]
            det = -det
        det *= a[col][col]
        inv = Fraction(1) / a[col][col]
        for r in range(col + 1, n):
            f = a[r][col] * inv
            if f != 0:
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return det


def frame_connection(fg: FrameGeometry, i: int, j: int) -> list[Fraction]:
    """Coefficients of ∇_Ei Ej in the frame basis, exact rationals."""
    if not (0 <= i < fg.dim and 0 <= j < fg.dim):
        raise IndexError(f"frame index out of range for dimension {fg.dim}")
    return list(fg._nabla[i][j])


def frame_curvature(fg: FrameGeometry, i: int, j: int, k: int, l: int) -> Fraction:
    """Exact lowered curvature R(E_i, E_j, E_k, E_l)."""
    for idx in (i, j, k, l):
        if not 0 <= idx < fg.dim:
            raise IndexError(f"frame index out of range for dimension {fg.dim}")
    return fg.riemann(i, j, k, l)


def heisenberg_h21(c: Fraction, s: Fraction) -> FrameGeometry:
    """Five-dimensional Heisenberg frame (X_1, X_2, Y_1, Y_2, ξ) with its
    rotation-parameterized almost contact structure.

    Brackets: [X_i, Y_i] = 2ξ for i = 1, 2 and all other brackets zero.
    The frame is g-orthonormal, η is dual to ξ, and φ rotates the X-plane
    into the Y-plane by the angle whose exact cosine/sine pair is (c, s);
    the pair must satisfy c² + s² = 1 (e.g. (3/5, 4/5)) so that every
    residual downstream stays an exact rational.
    """
    c = Fraction(c)
    s = Fraction(s)
    if c * c + s * s != 1:
        raise ValueError("(c, s) must satisfy c^2 + s^2 = 1 exactly")
    d = 5
    cc = [[[Fraction(0)] * d for _ in range(d)] for _ in range(d)]

    def set_bracket(i, j, k, val):
        cc[k][i][j] = Fraction(val)
        cc[k][j][i] = -Fraction(val)

    set_bracket(0, 2, 4, 2)  # [X1, Y1] = 2 xi
    set_bracket(1, 3, 4, 2)  # [X2, Y2] = 2 xi
    g = [[Fraction(int(i == j)) for j in range(d)] for i in range(d)]
    phi = [[Fraction(0)] * d for _ in range(d)]

    def set_column(j, vec):
        for i in range(d):
            phi[i][j] = Fraction(vec[i])

    set_column(0, [0, 0, c, s, 0])    # phi X1 =  c Y1 + s Y2
    set_column(1, [0, 0, s, -c, 0])   # phi X2 =  s Y1 - c Y2
    set_column(2, [-c, -s, 0, 0, 0])  # phi Y1 = -c X1 - s X2
    set_column(3, [-s, c, 0, 0, 0])   # phi Y2 = -s X1 + c X2
    xi = [Fraction(0)] * 4 + [Fraction(1)]
    eta = [Fraction(0)] * 4 + [Fraction(1)]
    return FrameGeometry(dim=d, c=cc, g=g, phi=phi, xi=xi, eta=eta,
                         name=f"h21({c},{s})")
