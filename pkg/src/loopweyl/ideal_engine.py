"""The bigraded polynomial quotient behind the single-root modules.

Work in R_m = Q[z_0, ..., z_{m-1}].  A monomial is an exponent tuple; it has
z-degree r = sum(e_i) and weight d = sum(i * e_i).  For 0 <= j < m put

    Z_j(u) = sum_{i=j}^{m-1} z_i u^{i-j+1},

and let J_m be the ideal generated by the coefficients (Z_0(u)^r)_s for
r >= 1 and s >= m+1 (these vanish identically beyond s = r*m, which makes
the family finite).  Each generator is bihomogeneous: z-degree r, weight
s - r.  The quotient R_m/J_m is finite-dimensional with monomial basis

    B_m = { z_{i_1} ... z_{i_r} : 0 <= i_1 <= ... <= i_r <= m - r },

of cardinality sum_r C(m, r) = 2^m; graded_quotient verifies this piece by
bigraded piece via row reduction, with the columns ordered so that non-B_m
monomials are eliminated first.  The chain of larger ideals

    J_{m,j} = J_{m,j-1} + sum_{r=1}^{j} R_m (Z_1(u)^r)_{m-j},   J_{m,0} = J_m,

supports a shift map z_i -> z_{i+1} from the (m-j)-variable quotient;
jmj_chain_check verifies the required generator memberships.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial

from loopweyl.exactnum import Matrix, RowSpace, det, rref

Monomial = tuple  # exponent tuple, length m


def z_degree(mono: Monomial) -> int:
    return sum(mono)


def weight(mono: Monomial) -> int:
    return sum(i * e for i, e in enumerate(mono))


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


def format_monomial(mono: Monomial) -> str:
    parts = []
    for i, e in enumerate(mono):
        if e == 1:
            parts.append(f"z{i}")
        elif e > 1:
            parts.append(f"z{i}^{e}")
    return "*".join(parts) if parts else "1"


def monomials_of_bidegree(m: int, r: int, d: int):
    """All exponent tuples in m variables with z-degree r and weight d."""
    out = []

    def rec(var, left_deg, left_weight, acc):
        if var == m:
            if left_deg == 0 and left_weight == 0:
                out.append(tuple(acc))
            return
        if left_weight > left_deg * (m - 1):
            return  # even all-z_{m-1} cannot reach the weight
        for e in range(left_deg + 1):
            w = var * e
            if w > left_weight and var > 0:
                break
            rec(var + 1, left_deg - e, left_weight - w, acc + [e])

    rec(0, r, d, [])
    return sorted(out, reverse=True)


def z_series(m: int, j: int):
    """Z_j(u) as a map u-power -> single-variable monomial."""
    if not 0 <= j < m:
        raise ValueError("need 0 <= j < m")
    series = {}
    for i in range(j, m):
        mono = tuple(1 if t == i else 0 for t in range(m))
        series[i - j + 1] = mono
    return series


def z_power_coefficient(m: int, j: int, r: int, s: int):
    """(Z_j(u)^r)_s as a polynomial {monomial: coefficient}.

    Expands over weakly increasing index tuples; the multinomial coefficient
    for a multiset with multiplicities e_i is r! / prod(e_i!).
    """
    out = {}

    def rec(start, remaining, budget, acc):
        if remaining == 0:
            if budget == 0:
                mono = tuple(acc)
                coeff = Fraction(factorial(r))
                for e in mono:
                    if e > 1:
                        coeff /= factorial(e)
                out[mono] = out.get(mono, Fraction(0)) + coeff
            return
        for i in range(start, m):
            p = i - j + 1
            if p * remaining > budget:
                break
            acc[i] += 1
            rec(i, remaining - 1, budget - p, acc)
            acc[i] -= 1

    if r == 0:
        return {tuple([0] * m): Fraction(1)} if s == 0 else {}
    rec(j, r, s, [0] * m)
    return out


@lru_cache(maxsize=None)
def jm_generators(m: int, r: int):
    """The generators (Z_0(u)^r)_s for m+1 <= s <= r*m, as (s, polynomial).

    Cached; callers must treat the returned polynomials as read-only.
    """
    if r < 1:
        raise ValueError("need r >= 1")
    gens = []
    for s in range(m + 1, r * m + 1):
        poly = z_power_coefficient(m, 0, r, s)
        if poly:
            gens.append((s, poly))
    return tuple(gens)


def bm_monomials(m: int):
    """The 2^m basis monomials, weakly increasing indices bounded by m - r."""
    out = [tuple([0] * m)]
    for r in range(1, m + 1):
        def rec(start, left, acc):
            if left == 0:
                out.append(tuple(acc))
                return
            for i in range(start, m - r + 1):
                acc[i] += 1
                rec(i, left - 1, acc)
                acc[i] -= 1

        rec(0, r, [0] * m)
    return out


class QuotientInconsistency(RuntimeError):
    """A bigraded piece disagreed with the predicted monomial basis."""

    def __init__(self, m, r, d, message):
        super().__init__(f"m={m}, piece (r={r}, d={d}): {message}")
        self.m, self.r, self.d = m, r, d


@dataclass
class Piece:
    """One bigraded piece: its monomials, ideal rank, and normal forms."""

    monomials: list
    ideal_rank: int
    quotient_dim: int
    normal_forms: dict  # monomial -> {basis monomial: coefficient}


@dataclass
class GradedQuotient:
    """Verified bigraded data for R_m / J_m."""

    m: int
    basis: list = field(default_factory=list)  # B_m, ordered by (degree, tuple)
    pieces: dict = field(default_factory=dict)  # (r, d) -> Piece
    hilbert_by_degree: list = field(default_factory=list)

    @property
    def total_dim(self):
        return sum(self.hilbert_by_degree)


def _ideal_rows_in_piece(m, r, d, piece_monomials, extra_generators=()):
    """Span of {generator * monomial} inside the (r, d) piece, as rows.

    ``extra_generators`` is an iterable of (z-degree, weight, polynomial)
    triples joining the J_m generators (used for the chain ideals).
    """
    index = {mono: i for i, mono in enumerate(piece_monomials)}
    rows = []
    gens = []
    for r_gen in range(1, r + 1):
        for s, poly in jm_generators(m, r_gen):
            gens.append((r_gen, s - r_gen, poly))
    gens.extend(extra_generators)
    for r_gen, w_gen, poly in gens:
        if r_gen > r or w_gen > d:
            continue
        for cof in monomials_of_bidegree(m, r - r_gen, d - w_gen):
            row = [Fraction(0)] * len(piece_monomials)
            for mono, coeff in poly.items():
                row[index[mono_mul(mono, cof)]] += coeff
            rows.append(row)
    return rows


@lru_cache(maxsize=None)
def graded_quotient(m: int) -> GradedQuotient:
    """Row-reduce every bigraded piece of R_m/J_m against the basis monomials.

    Column order within a piece puts the non-basis monomials first so they
    become the pivots; any piece whose quotient disagrees with the basis
    count is reported as an inconsistency, never patched.  The z-degree
    m+1 layer is verified to vanish entirely.
    """
    if m < 1:
        raise ValueError("need m >= 1")
    basis_set = set(bm_monomials(m))
    result = GradedQuotient(m)
    result.basis = sorted(basis_set, key=lambda mo: (z_degree(mo), mo))
    hilbert = [0] * (m + 1)
    for r in range(0, m + 2):
        for d in range(0, r * (m - 1) + 1):
            monos = monomials_of_bidegree(m, r, d)
            if not monos:
                continue
            in_basis = [mo for mo in monos if mo in basis_set]
            outside = [mo for mo in monos if mo not in basis_set]
            ordered = outside + in_basis  # non-basis columns become pivots
            rows = _ideal_rows_in_piece(m, r, d, ordered)
            if rows:
                reduced, pivots = rref(Matrix(rows))
            else:
                reduced, pivots = Matrix([]), []
            quotient_dim = len(ordered) - len(pivots)
            if r > m and quotient_dim != 0:
                raise QuotientInconsistency(m, r, d, "layer above degree m does not vanish")
            if r <= m:
                if quotient_dim != len(in_basis):
                    raise QuotientInconsistency(
                        m, r, d,
                        f"quotient dimension {quotient_dim} != basis count {len(in_basis)}",
                    )
                if any(p >= len(outside) for p in pivots):
                    raise QuotientInconsistency(m, r, d, "a basis monomial became a pivot")
            normal_forms = {}
            pivot_rows = {c: i for i, c in enumerate(pivots)}
            for col, mono in enumerate(ordered):
                if col in pivot_rows:
                    i = pivot_rows[col]
                    nf = {}
                    for c2 in range(len(ordered)):
                        if c2 != col and reduced[i, c2]:
                            nf[ordered[c2]] = -reduced[i, c2]
                    normal_forms[mono] = nf
                else:
                    normal_forms[mono] = {mono: Fraction(1)}
            result.pieces[(r, d)] = Piece(ordered, len(pivots), quotient_dim, normal_forms)
            if r <= m:
                hilbert[r] += quotient_dim
    result.hilbert_by_degree = hilbert
    return result


def normal_form(q: GradedQuotient, poly) -> dict:
    """Coordinates of a z-polynomial on the basis monomials, modulo the ideal.

    ``poly`` maps monomials to coefficients.  Monomials of z-degree above m
    reduce to zero (the degree-(m+1) layer is verified to vanish, and higher
    layers are products of it).
    """
    out = {}
    for mono, coeff in poly.items():
        if not coeff:
            continue
        r = z_degree(mono)
        if r > q.m:
            continue
        piece = q.pieces[(r, weight(mono))]
        for basis_mono, c in piece.normal_forms[mono].items():
            acc = out.get(basis_mono, Fraction(0)) + coeff * c
            if acc:
                out[basis_mono] = acc
            else:
                out.pop(basis_mono, None)
    return out


@dataclass
class ChainCheckResult:
    """Outcome of the shift-map membership checks; falsy when any failed."""

    m: int
    failures: list = field(default_factory=list)  # (j, generator description)

    def __bool__(self):
        return not self.failures


def _chain_extra_generators(m, level):
    """The generators added to the chain ideal at steps 1..level."""
    extra = []
    for j in range(1, level + 1):
        for rho in range(1, j + 1):
            poly = z_power_coefficient(m, 1, rho, m - j)
            if poly:
                extra.append((rho, m - j, poly))
    return extra


def jmj_chain_check(m: int, max_gen_degree=None) -> ChainCheckResult:
    """Verify the shift z_i -> z_{i+1} maps each smaller ideal into the chain.

    For 1 <= j < m, every generator of the (m-j)-variable ideal, shifted one
    slot up, must lie in the chain ideal at level j-1.  Generators of
    z-degree above m+1 live in layers already verified to vanish, so the
    search is capped there.
    """
    if max_gen_degree is None:
        max_gen_degree = m + 1
    result = ChainCheckResult(m)
    for j in range(1, m):
        extra = _chain_extra_generators(m, j - 1)
        small = m - j
        for r in range(1, max_gen_degree + 1):
            for s, poly in jm_generators(small, r):
                shifted = {}
                for mono, coeff in poly.items():
                    lifted = tuple([0] + list(mono[: small]))
                    lifted = lifted + (0,) * (m - len(lifted))
                    shifted[lifted] = coeff
                bid_r = r
                bid_d = s  # shifting adds one weight per factor: (s - r) + r
                monos = monomials_of_bidegree(m, bid_r, bid_d)
                index = {mono: i for i, mono in enumerate(monos)}
                span = RowSpace(len(monos))
                for row in _ideal_rows_in_piece(m, bid_r, bid_d, monos, extra):
                    span.add(row)
                vec = [Fraction(0)] * len(monos)
                for mono, coeff in shifted.items():
                    vec[index[mono]] = coeff
                if not span.contains(vec):
                    result.failures.append((j, f"(Z0^{r})_{s} shifted"))
    return result


def binomial_matrix_det(r: int, k: int) -> Fraction:
    """Determinant of [C(k+1+i, 1+j)]_{i,j=0..r-k}; equals C(r+1, k)."""
    if not r >= k >= 0:
        raise ValueError("need r >= k >= 0")
    n = r - k + 1
    mat = Matrix([[comb(k + 1 + i, 1 + j) for j in range(n)] for i in range(n)])
    return det(mat)
