"""Folded root data for the twisted series A and D.

Builds the finite root system of A_{2l-1} or D_{l+1}, the order-2 diagram
automorphism, and the projection onto the fixed subspace of the Cartan
algebra.  Everything downstream (difference conditions, character formulas,
theta sums) reads its pairings from the objects constructed here.

All arithmetic is exact: integer Cartan data, `fractions.Fraction`
everywhere else.  No floating point.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction as Q
from math import ceil, floor, isqrt
from typing import Sequence

Vector = tuple[Q, ...]

SERIES_A = "A"
SERIES_D = "D"


class InvalidRankError(ValueError):
    """Raised when the twisted rank l is below 2."""


@dataclass(frozen=True)
class RectangularWeight:
    """Highest weight k0*L0 + kj*Lj of level k = k0 + kj >= 1."""

    k0: int
    kj: int

    def __post_init__(self) -> None:
        if self.k0 < 0 or self.kj < 0:
            raise ValueError("weight labels must be nonnegative")
        if self.k0 + self.kj < 1:
            raise ValueError("level k0 + kj must be positive")

    @property
    def k(self) -> int:
        return self.k0 + self.kj


@dataclass(frozen=True)
class TwistedRootDatum:
    """Folded root datum of A_{2l-1} (series A) or D_{l+1} (series D).

    gram0[i][r] is the pairing of the projected simple roots of the
    orbit representatives i+1, r+1 (1-based node numbering in docs,
    0-based indexing in code).  mu[i] = gram0[i][i] / 2.
    pos_orbit_projections holds one entry per orbit of positive roots:
    the projection expressed over the projected simple roots and half
    its norm; orbit_sizes gives the orbit cardinality (1 or 2).
    """

    series: str
    l: int
    rk_g: int
    nu: tuple[int, ...]
    cartan: tuple[tuple[int, ...], ...]
    gram0: tuple[tuple[Q, ...], ...]
    mu: tuple[Q, ...]
    j_node: int
    gamma_coords: tuple[Q, ...]
    pos_orbit_projections: tuple[tuple[tuple[int, ...], Q], ...]
    orbit_sizes: tuple[int, ...]

    def pairing0(self, i: int, r: int) -> Q:
        """Pairing of projected simple roots for colors i, r (1-based)."""
        return self.gram0[i - 1][r - 1]


def _cartan_matrix(series: str, l: int) -> list[list[int]]:
    if series == SERIES_A:
        n = 2 * l - 1
        edges = [(a, a + 1) for a in range(1, n)]
    else:
        n = l + 1
        edges = [(a, a + 1) for a in range(1, l)] + [(l - 1, l + 1)]
    cartan = [[2 if a == b else 0 for b in range(n)] for a in range(n)]
    for a, b in edges:
        cartan[a - 1][b - 1] = -1
        cartan[b - 1][a - 1] = -1
    return cartan


def _automorphism(series: str, l: int) -> tuple[int, ...]:
    if series == SERIES_A:
        n = 2 * l - 1
        return tuple(n + 1 - a for a in range(1, n + 1))
    perm = list(range(1, l + 2))
    perm[l - 1], perm[l] = perm[l], perm[l - 1]
    return tuple(perm)


def _positive_roots(cartan: Sequence[Sequence[int]]) -> list[tuple[int, ...]]:
    """All positive roots as coefficient vectors over the simple roots.

    Simply-laced closure: beta + alpha_a is a root iff <beta, alpha_a> = -1.
    """
    n = len(cartan)
    roots = {tuple(1 if b == a else 0 for b in range(n)) for a in range(n)}
    frontier = list(roots)
    while frontier:
        new: list[tuple[int, ...]] = []
        for beta in frontier:
            for a in range(n):
                pair = sum(beta[b] * cartan[b][a] for b in range(n))
                if pair == -1:
                    cand = tuple(beta[b] + (1 if b == a else 0) for b in range(n))
                    if cand not in roots:
                        roots.add(cand)
                        new.append(cand)
        frontier = new
    return sorted(roots)


def _pair(cartan: Sequence[Sequence[int]], x: Sequence[int], y: Sequence[int]) -> int:
    return sum(x[a] * cartan[a][b] * y[b] for a in range(len(x)) for b in range(len(x)))


def solve_linear(matrix: Sequence[Sequence[Q]], rhs: Sequence[Q]) -> tuple[Q, ...]:
    """Solve a nonsingular rational system by Gaussian elimination."""
    n = len(rhs)
    aug = [[Q(matrix[r][c]) for c in range(n)] + [Q(rhs[r])] for r in range(n)]
    for col in range(n):
        pivot = next(r for r in range(col, n) if aug[r][col] != 0)
        aug[col], aug[pivot] = aug[pivot], aug[col]
        inv = 1 / aug[col][col]
        aug[col] = [v * inv for v in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                factor = aug[r][col]
                aug[r] = [a - factor * b for a, b in zip(aug[r], aug[col])]
    return tuple(aug[r][n] for r in range(n))


def invert_matrix(matrix: Sequence[Sequence[Q]]) -> list[list[Q]]:
    n = len(matrix)
    cols = []
    for c in range(n):
        rhs = [Q(1) if r == c else Q(0) for r in range(n)]
        cols.append(solve_linear(matrix, rhs))
    return [[cols[c][r] for c in range(n)] for r in range(n)]


def build_datum(series: str, l: int) -> TwistedRootDatum:
    """Construct the folded root datum for the given series and twisted rank."""
    if series not in (SERIES_A, SERIES_D):
        raise ValueError(f"unknown series {series!r}, expected 'A' or 'D'")
    if l < 2:
        raise InvalidRankError(f"twisted rank must be at least 2, got {l}")

    cartan = _cartan_matrix(series, l)
    nu = _automorphism(series, l)
    n = len(cartan)

    # nu is an involutive diagram symmetry.
    assert all(nu[nu[a] - 1] == a + 1 for a in range(n))
    assert all(
        cartan[nu[a] - 1][nu[b] - 1] == cartan[a][b] for a in range(n) for b in range(n)
    )

    def fold(a: Sequence[int], b: Sequence[int]) -> Q:
        sa = [a[c] + a[nu[c] - 1] for c in range(n)]
        sb = [b[c] + b[nu[c] - 1] for c in range(n)]
        return Q(_pair(cartan, sa, sb), 4)

    simple = [tuple(1 if b == a else 0 for b in range(n)) for a in range(n)]
    gram0 = tuple(
        tuple(fold(simple[i], simple[r]) for r in range(l)) for i in range(l)
    )
    mu = tuple(gram0[i][i] / 2 for i in range(l))
    if series == SERIES_A:
        assert all(mu[i] == Q(1, 2) for i in range(l - 1)) and mu[l - 1] == 1
        j_node = 1
    else:
        assert all(mu[i] == 1 for i in range(l - 1)) and mu[l - 1] == Q(1, 2)
        j_node = l

    e_j = [Q(1) if i == j_node - 1 else Q(0) for i in range(l)]
    gamma_coords = solve_linear(gram0, [mu[j_node - 1] * v for v in e_j])

    roots = _positive_roots(cartan)
    expected = n * (n + 1) // 2 if series == SERIES_A else n * (n - 1)
    assert len(roots) == expected

    orbits: dict[tuple[int, ...], set[tuple[int, ...]]] = {}
    for beta in roots:
        image = tuple(beta[nu[a] - 1] for a in range(n))
        key = min(beta, image)
        orbits.setdefault(key, set()).update({beta, image})

    # Orbit representatives 1..l map node a to the representative of its
    # nu-orbit; the projection over projected simple roots just sums the
    # coefficients within each node orbit.
    rep = [min(a + 1, nu[a]) for a in range(n)]
    entries = []
    sizes = []
    for members in orbits.values():
        beta = min(members)
        a_vec = [0] * l
        for c in range(n):
            a_vec[rep[c] - 1] += beta[c]
        a_tuple = tuple(a_vec)
        halfnorm = Q(
            sum(
                a_tuple[i] * gram0[i][r] * a_tuple[r]
                for i in range(l)
                for r in range(l)
            ),
            2,
        )
        entries.append(((a_tuple, halfnorm), len(members)))
    entries.sort(key=lambda item: (item[0][0], item[0][1]))
    projections = tuple(entry for entry, _ in entries)
    sizes = tuple(size for _, size in entries)
    assert sum(sizes) == len(roots)

    return TwistedRootDatum(
        series=series,
        l=l,
        rk_g=n,
        nu=nu,
        cartan=tuple(tuple(row) for row in cartan),
        gram0=gram0,
        mu=mu,
        j_node=j_node,
        gamma_coords=gamma_coords,
        pos_orbit_projections=projections,
        orbit_sizes=sizes,
    )


def orbit_projections(datum: TwistedRootDatum) -> list[tuple[tuple[int, ...], Q]]:
    """One (projection, halfnorm) entry per nu-orbit of positive roots."""
    return list(datum.pos_orbit_projections)


def weight_pairing(datum: TwistedRootDatum, w: RectangularWeight) -> Vector:
    """Pairings of the projected simple roots with the highest weight."""
    return tuple(
        w.kj * datum.mu[datum.j_node - 1] if i == datum.j_node - 1 else Q(0)
        for i in range(datum.l)
    )


def dual_coordinates(datum: TwistedRootDatum, pairings: Sequence[Q]) -> Vector:
    """Coordinates over the projected simple roots of the weight with the
    given pairings, i.e. the values of the fundamental coweight functionals."""
    return solve_linear(datum.gram0, [Q(p) for p in pairings])


def _min_eigenvalue_bound(gram0: Sequence[Sequence[Q]]) -> Q:
    """Positive rational lower bound for the smallest eigenvalue of gram0.

    The spectral radius of the inverse is at most its max row sum, hence
    lambda_min >= 1 / ||G^{-1}||_inf.
    """
    inv = invert_matrix(gram0)
    row_sum = max(sum(abs(v) for v in row) for row in inv)
    return 1 / row_sum


def quadratic_value(
    gram0: Sequence[Sequence[Q]], v: Sequence[int] | Sequence[Q]
) -> Q:
    l = len(gram0)
    return Q(sum(v[i] * gram0[i][r] * v[r] for i in range(l) for r in range(l)))


def theta_minimum(
    datum: TwistedRootDatum, level: int, linear: Sequence[Q]
) -> Q:
    """Exact minimum of (level/2) v^T G v + v . linear over real vectors;
    a lower bound for every lattice value."""
    x = solve_linear(datum.gram0, [Q(c) for c in linear])
    return -sum(Q(linear[i]) * x[i] for i in range(datum.l)) / (2 * level)


def lattice_ball(
    datum: TwistedRootDatum,
    level: int,
    linear: Sequence[Q],
    qmax: Q,
) -> list[tuple[int, ...]]:
    """All integer vectors v with (level/2) v^T G v + v . linear <= qmax.

    Completeness: around the exact real minimizer c the value is the
    minimum plus (level/2) u^T G u with u = v - c, and with lambda a
    rational lower bound on the least eigenvalue of G every solution has
    |u_i|^2 <= 2 (qmax - minimum) / (level lambda); the integer box with
    that radius around c is then filtered exactly.
    """
    if level < 1:
        raise ValueError("level must be a positive integer")
    l = datum.l
    x = solve_linear(datum.gram0, [Q(c) for c in linear])
    center = [-x[i] / level for i in range(l)]
    minimum = -sum(Q(linear[i]) * x[i] for i in range(l)) / (2 * level)
    slack = Q(qmax) - minimum
    if slack < 0:
        return []
    lam = _min_eigenvalue_bound(datum.gram0)
    radius_sq = 2 * slack / (Q(level) * lam)
    radius = isqrt(int(radius_sq)) + 1

    ranges = [
        range(ceil(center[i] - radius), floor(center[i] + radius) + 1)
        for i in range(l)
    ]
    out = []
    for v in itertools.product(*ranges):
        value = Q(level) * quadratic_value(datum.gram0, v) / 2 + sum(
            Q(v[i]) * Q(linear[i]) for i in range(l)
        )
        if value <= qmax:
            out.append(v)
    out.sort()
    return out
