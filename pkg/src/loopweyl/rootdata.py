"""Finite root-system combinatorics on simple-root coordinates.

Cartan data is stored as the integer matrix c[i][j] = 2(alpha_i, alpha_j) /
(alpha_j, alpha_j) together with the symmetrizers d_i = (alpha_i, alpha_i)/2
normalized to minimal positive integers, so that c[i][j] * d[j] is the
symmetric pairing (alpha_i, alpha_j).  Positive roots are built by the usual
root-string closure and carry their half squared length d_beta.

The polynomial attached to a positive root beta = sum r_i alpha_i is
prod pi_i^{r_i d_i / d_beta}; the exponents are integral for every root of
the shipped types, and the product for any beta divides the one for the
highest short root.  Irreducibility of the associated highest-weight module
is controlled by squarefreeness of the highest-root polynomial; that
predicate is only available for the simply-laced types.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from loopweyl.polyseries import Polynomial, is_squarefree

MAX_POSITIVE_ROOTS = 240


@dataclass(frozen=True)
class CartanData:
    """Cartan matrix plus symmetrizers; validated on construction."""

    tag: str
    rank: int
    cartan: tuple  # cartan[i][j] = 2(a_i, a_j)/(a_j, a_j)
    d: tuple  # minimal positive symmetrizers

    def __post_init__(self):
        c, d = self.cartan, self.d
        if len(c) != self.rank or len(d) != self.rank:
            raise ValueError("rank mismatch")
        for i in range(self.rank):
            if c[i][i] != 2:
                raise ValueError("diagonal entries must be 2")
            for j in range(self.rank):
                if i != j and c[i][j] > 0:
                    raise ValueError("off-diagonal entries must be <= 0")
                if c[i][j] * d[j] != c[j][i] * d[i]:
                    raise ValueError("symmetrizer condition failed")

    def pairing(self, i, j):
        """(alpha_i, alpha_j) as an integer."""
        return self.cartan[i][j] * self.d[j]


@dataclass(frozen=True)
class PositiveRoot:
    """Simple-root coordinates plus half the squared length."""

    coords: tuple
    d: int

    @property
    def height(self):
        return sum(self.coords)


class NotFiniteTypeError(ValueError):
    """Root-string closure exceeded the size bound for finite type."""


def _chain(n):
    return [[2 if i == j else (-1 if abs(i - j) == 1 else 0) for j in range(n)] for i in range(n)]


def _cartan_table():
    table = {}
    for n in range(1, 9):
        table[f"A{n}"] = (_chain(n), [1] * n)
    for n in range(4, 9):
        c = _chain(n)
        # fork: the last two nodes both attach to node n-3 (0-based), not to each other
        c[n - 2][n - 1] = c[n - 1][n - 2] = 0
        c[n - 1][n - 3] = c[n - 3][n - 1] = -1
        table[f"D{n}"] = (c, [1] * n)
    for n in (6, 7, 8):
        # chain 1-3-4-...-n with node 2 attached to node 4 (Bourbaki numbering)
        c = [[2 if i == j else 0 for j in range(n)] for i in range(n)]

        def link(i, j, c=c):
            c[i - 1][j - 1] = c[j - 1][i - 1] = -1

        link(1, 3)
        link(2, 4)
        for i in range(3, n):
            link(i, i + 1)
        table[f"E{n}"] = (c, [1] * n)
    table["B2"] = ([[2, -2], [-1, 2]], [2, 1])
    table["C3"] = ([[2, -1, 0], [-1, 2, -1], [0, -2, 2]], [1, 1, 2])
    table["G2"] = ([[2, -1], [-3, 2]], [1, 3])
    table["F4"] = (
        [[2, -1, 0, 0], [-1, 2, -2, 0], [0, -1, 2, -1], [0, 0, -1, 2]],
        [2, 2, 1, 1],
    )
    return table


_CARTAN_TABLE = _cartan_table()


def cartan_types():
    return sorted(_CARTAN_TABLE)


def cartan_data(tag: str) -> CartanData:
    """Shipped Cartan data by string tag: A1..A8, D4..D8, E6, E7, E8, B2, C3, G2, F4."""
    if tag not in _CARTAN_TABLE:
        raise ValueError(f"unknown Cartan type {tag!r}; available: {', '.join(cartan_types())}")
    c, d = _CARTAN_TABLE[tag]
    return CartanData(tag, len(d), tuple(tuple(row) for row in c), tuple(d))


def is_simply_laced(c: CartanData) -> bool:
    return all(
        c.cartan[i][j] in (0, -1) and c.cartan[i][j] == c.cartan[j][i]
        for i in range(c.rank)
        for j in range(c.rank)
        if i != j
    )


def _root_d(c: CartanData, coords) -> int:
    twice = 0
    for i, ri in enumerate(coords):
        if ri:
            for j, rj in enumerate(coords):
                if rj:
                    twice += ri * rj * c.pairing(i, j)
    if twice <= 0 or twice % 2:
        raise NotFiniteTypeError("root with non-positive or odd squared length")
    return twice // 2


def positive_roots(c: CartanData):
    """All positive roots by root-string closure, simple roots included."""
    simple = [tuple(1 if j == i else 0 for j in range(c.rank)) for i in range(c.rank)]
    known = set(simple)
    by_height = {1: list(simple)}
    height = 1
    while by_height.get(height):
        nxt = []
        for coords in by_height[height]:
            for i in range(c.rank):
                # p = steps down the alpha_i string that stay positive roots
                p = 0
                probe = list(coords)
                while True:
                    probe[i] -= 1
                    if probe[i] < 0 or tuple(probe) not in known:
                        break
                    p += 1
                pairing_value = sum(coords[j] * c.cartan[j][i] for j in range(c.rank))
                if p - pairing_value > 0:
                    up = list(coords)
                    up[i] += 1
                    t = tuple(up)
                    if t not in known:
                        known.add(t)
                        nxt.append(t)
                        if len(known) > MAX_POSITIVE_ROOTS:
                            raise NotFiniteTypeError(
                                f"more than {MAX_POSITIVE_ROOTS} positive roots; not finite type"
                            )
        height += 1
        if nxt:
            by_height[height] = nxt
    roots = [PositiveRoot(t, _root_d(c, t)) for t in sorted(known)]
    return sorted(roots, key=lambda r: (r.height, r.coords))


def highest_root(c: CartanData) -> PositiveRoot:
    roots = positive_roots(c)
    top_height = max(r.height for r in roots)
    top = [r for r in roots if r.height == top_height]
    if len(top) != 1:
        raise NotFiniteTypeError("highest root is not unique")
    return top[0]


def highest_short_root(c: CartanData) -> PositiveRoot:
    """Maximal root among the short ones; equals the highest root when simply laced."""
    roots = positive_roots(c)
    short_d = min(r.d for r in roots)
    short = [r for r in roots if r.d == short_d]
    top_height = max(r.height for r in short)
    top = [r for r in short if r.height == top_height]
    if len(top) != 1:
        raise NotFiniteTypeError("highest short root is not unique")
    return top[0]


def pi_beta(pis, beta: PositiveRoot, c: CartanData) -> Polynomial:
    """prod pi_i^{r_i d_i / d_beta} for beta = sum r_i alpha_i."""
    if len(pis) != c.rank:
        raise ValueError("need one polynomial per node")
    out = Polynomial([1])
    for i, ri in enumerate(beta.coords):
        if not ri:
            continue
        exponent = Fraction(ri * c.d[i], beta.d)
        if exponent.denominator != 1:
            raise ValueError(
                f"non-integer exponent {exponent} at node {i} for root {beta.coords}; "
                "invalid root data"
            )
        out = out * (pis[i] ** int(exponent))
    return out


def pi_theta_divisibility_check(pis, c: CartanData) -> bool:
    """Does pi_beta divide the highest-short-root polynomial for every beta?"""
    target = pi_beta(pis, highest_short_root(c), c)
    return all(pi_beta(pis, beta, c).divides(target) for beta in positive_roots(c))


def weyl_irreducibility_predicate(pis, c: CartanData) -> bool:
    """Squarefreeness of the highest-root polynomial; simply-laced types only."""
    if not is_simply_laced(c):
        raise ValueError(f"irreducibility predicate requires a simply-laced type, not {c.tag}")
    for p in pis:
        if not p.is_unital():
            raise ValueError("inputs must be unital polynomials")
    return is_squarefree(pi_beta(pis, highest_root(c), c))
