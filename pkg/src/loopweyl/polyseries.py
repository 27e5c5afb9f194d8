"""Exact univariate polynomials, truncated power series, and root multisets.

A polynomial is a coefficient list indexed by the power of u, trailing zeros
trimmed.  Highest-weight data enters as a "unital" polynomial (constant term
1) or, equivalently, as a multiset of nonzero rational roots a_i with
multiplicities m_i, the polynomial being prod (1 - a_i u)^{m_i}.  Note the
convention: a root entry a corresponds to the polynomial zero u = 1/a.

The series coefficients that drive the Cartan operators are reproduced here
numerically: exp(-sum_k p_k u^k / k) recovers the polynomial from its power
sums p_k = sum m_i a_i^k (Newton identities), and the reversed polynomial
pi_minus governs the negative-mode series the same way via p_{-k}.
"""

from __future__ import annotations

import json
import re
from fractions import Fraction


class Polynomial:
    """Univariate polynomial over the rationals; coeffs[k] multiplies u^k."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        coeffs = [Fraction(c) for c in coeffs]
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        self.coeffs = tuple(coeffs)

    @property
    def degree(self):
        """Degree, with the zero polynomial at -1."""
        return len(self.coeffs) - 1

    def is_zero(self):
        return not self.coeffs

    def is_unital(self):
        return bool(self.coeffs) and self.coeffs[0] == 1

    def __getitem__(self, k):
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return Fraction(0)

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self == Polynomial([other])
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other):
        other = _coerce(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return Polynomial([self[k] + other[k] for k in range(n)])

    def __neg__(self):
        return Polynomial([-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-_coerce(other))

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return Polynomial([c * other for c in self.coeffs])
        other = _coerce(other)
        if self.is_zero() or other.is_zero():
            return Polynomial([])
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    if b:
                        out[i + j] += a * b
        return Polynomial(out)

    __rmul__ = __mul__

    def __pow__(self, n):
        if n < 0:
            raise ValueError("negative power")
        result = Polynomial([1])
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __divmod__(self, other):
        other = _coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        q = [Fraction(0)] * max(len(rem) - len(other.coeffs) + 1, 0)
        d = other.degree
        lead = other.coeffs[-1]
        for k in range(len(rem) - 1, d - 1, -1):
            c = rem[k] / lead
            if c:
                q[k - d] = c
                for j, b in enumerate(other.coeffs):
                    rem[k - d + j] -= c * b
        return Polynomial(q), Polynomial(rem)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def divides(self, other) -> bool:
        """True when self divides other exactly."""
        if self.is_zero():
            return _coerce(other).is_zero()
        return (_coerce(other) % self).is_zero()

    def derivative(self):
        return Polynomial([k * c for k, c in enumerate(self.coeffs)][1:])

    def __call__(self, x):
        x = Fraction(x)
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __repr__(self):
        return f"Polynomial({format_polynomial(self)!r})"


def _coerce(p):
    if isinstance(p, Polynomial):
        return p
    return Polynomial([p])


ONE = Polynomial([1])


def poly_gcd(a: Polynomial, b: Polynomial) -> Polynomial:
    """Monic greatest common divisor."""
    a, b = _coerce(a), _coerce(b)
    while not b.is_zero():
        a, b = b, a % b
    if a.is_zero():
        return a
    return a * (Fraction(1) / a.coeffs[-1])


def is_squarefree(p: Polynomial) -> bool:
    """True when gcd(p, p') is constant; vacuously true for constants."""
    p = _coerce(p)
    if p.is_zero():
        raise ValueError("squarefreeness of the zero polynomial")
    if p.degree == 0:
        return True
    return poly_gcd(p, p.derivative()).degree == 0


class TruncatedSeries:
    """Power series kept only up to u^cap; all arithmetic truncates there."""

    __slots__ = ("cap", "coeffs")

    def __init__(self, cap, coeffs):
        if cap < 0:
            raise ValueError("cap must be nonnegative")
        coeffs = [Fraction(c) for c in coeffs]
        if len(coeffs) < cap + 1:
            coeffs += [Fraction(0)] * (cap + 1 - len(coeffs))
        self.cap = cap
        self.coeffs = coeffs[: cap + 1]

    @classmethod
    def from_polynomial(cls, p: Polynomial, cap):
        return cls(cap, list(p.coeffs))

    def __eq__(self, other):
        return (
            isinstance(other, TruncatedSeries)
            and self.cap == other.cap
            and self.coeffs == other.coeffs
        )

    def __add__(self, other):
        self._check(other)
        return TruncatedSeries(self.cap, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __sub__(self, other):
        self._check(other)
        return TruncatedSeries(self.cap, [a - b for a, b in zip(self.coeffs, other.coeffs)])

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return TruncatedSeries(self.cap, [c * other for c in self.coeffs])
        self._check(other)
        out = [Fraction(0)] * (self.cap + 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j in range(self.cap + 1 - i):
                    b = other.coeffs[j]
                    if b:
                        out[i + j] += a * b
        return TruncatedSeries(self.cap, out)

    __rmul__ = __mul__

    def _check(self, other):
        if self.cap != other.cap:
            raise ValueError("cap mismatch")

    def exp(self):
        """exp of a series with zero constant term."""
        if self.coeffs[0] != 0:
            raise ValueError("exp needs constant term 0")
        g = [Fraction(1)] + [Fraction(0)] * self.cap
        for n in range(1, self.cap + 1):
            acc = Fraction(0)
            for k in range(1, n + 1):
                if self.coeffs[k]:
                    acc += k * self.coeffs[k] * g[n - k]
            g[n] = acc / n
        return TruncatedSeries(self.cap, g)

    def log(self):
        """log of a series with constant term 1."""
        if self.coeffs[0] != 1:
            raise ValueError("log needs constant term 1")
        g = [Fraction(0)] * (self.cap + 1)
        for n in range(1, self.cap + 1):
            acc = n * self.coeffs[n]
            for k in range(1, n):
                if self.coeffs[n - k]:
                    acc -= k * g[k] * self.coeffs[n - k]
            g[n] = acc / n
        return TruncatedSeries(self.cap, g)

    def __repr__(self):
        return f"TruncatedSeries(cap={self.cap}, {self.coeffs})"


class RootMultiset:
    """Pairwise-distinct nonzero rational roots with positive multiplicities."""

    __slots__ = ("pairs",)

    def __init__(self, pairs):
        norm = []
        for a, m in pairs:
            a = Fraction(a)
            m = int(m)
            if a == 0:
                raise ValueError("root 0 is not allowed (constant term must stay 1)")
            if m <= 0:
                raise ValueError("multiplicities must be positive")
            norm.append((a, m))
        norm.sort(key=lambda am: am[0])
        for (a, _), (b, _) in zip(norm, norm[1:]):
            if a == b:
                raise ValueError(f"repeated root {a}")
        self.pairs = tuple(norm)

    @property
    def degree(self):
        return sum(m for _, m in self.pairs)

    def __iter__(self):
        return iter(self.pairs)

    def __len__(self):
        return len(self.pairs)

    def __eq__(self, other):
        return isinstance(other, RootMultiset) and self.pairs == other.pairs

    def __hash__(self):
        return hash(self.pairs)

    def merge(self, other: "RootMultiset") -> "RootMultiset":
        """Union with multiplicities added on common roots."""
        acc = dict(self.pairs)
        for a, m in other.pairs:
            acc[a] = acc.get(a, 0) + m
        return RootMultiset(sorted(acc.items()))

    def __repr__(self):
        return f"RootMultiset({[(str(a), m) for a, m in self.pairs]})"


def poly_from_roots(roots: RootMultiset) -> Polynomial:
    """prod (1 - a u)^m over the multiset; always unital."""
    p = ONE
    for a, m in roots:
        p = p * (Polynomial([1, -a]) ** m)
    return p


def pi_minus(p: Polynomial) -> Polynomial:
    """Reverse the coefficients and normalize the constant term back to 1.

    On prod (1 - a_i u)^{m_i} this returns prod (1 - u/a_i)^{m_i}.
    """
    if not p.is_unital():
        raise ValueError("pi_minus needs a unital polynomial")
    rev = list(reversed(p.coeffs))
    lead = rev[0]
    return Polynomial([c / lead for c in rev])


def power_sum(roots: RootMultiset, k: int) -> Fraction:
    """p_k = sum m_i a_i^k; negative k uses the inverse roots; p_0 = degree."""
    return sum((m * a ** k for a, m in roots), Fraction(0))


def lambda_coeffs_from_roots(roots: RootMultiset, sign: int = 1, cap=None) -> TruncatedSeries:
    """exp(-sum_{k>=1} p_{sign k} u^k / k), truncated.

    Computed through the power sums rather than by multiplying the linear
    factors, so comparing against poly_from_roots exercises the Newton
    identities.  Sign +1 reproduces the polynomial itself, sign -1 the
    reversed polynomial pi_minus.
    """
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    if cap is None:
        cap = 2 * roots.degree
    if cap < roots.degree:
        raise ValueError("cap must be at least the degree")
    body = TruncatedSeries(
        cap, [Fraction(0)] + [-power_sum(roots, sign * k) / k for k in range(1, cap + 1)]
    )
    return body.exp()


def factor_unital(p: Polynomial) -> RootMultiset:
    """Factor a unital polynomial as prod (1 - a u)^m by rational-root search.

    Any irreducible factor of degree > 1 over the rationals is a hard error;
    splitting fields are out of scope.
    """
    if not p.is_unital():
        raise ValueError("factorization needs a unital polynomial")
    found = {}
    while p.degree > 0:
        zero = _rational_zero(p)
        if zero is None:
            raise ValueError(
                f"no rational factorization: {format_polynomial(p)} has no rational zero"
            )
        a = 1 / zero  # p(1/a) = 0 means the factor (1 - a u)
        factor = Polynomial([1, -a])
        mult = 0
        while (p % factor).is_zero():
            p = p // factor
            mult += 1
        found[a] = mult
    return RootMultiset(sorted(found.items()))


def _rational_zero(p: Polynomial):
    """A rational zero of p, or None.  Candidates come from the integer model."""
    den = 1
    for c in p.coeffs:
        den = den * c.denominator // _gcd(den, c.denominator)
    ints = [int(c * den) for c in p.coeffs]
    lead, const = ints[-1], ints[0]
    for pnum in _divisors(abs(const)):
        for qden in _divisors(abs(lead)):
            for s in (1, -1):
                cand = Fraction(s * pnum, qden)
                if p(cand) == 0:
                    return cand
    return None


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


def _divisors(n):
    out = []
    d = 1
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            if d != n // d:
                out.append(n // d)
        d += 1
    return sorted(out)


# --- text and JSON formats -------------------------------------------------

_TERM_RE = re.compile(
    r"""\s*(?P<sign>[+-])?\s*
        (?:
            (?P<coeff>\d+(?:/\d+)?)\s*(?:\*?\s*(?P<var1>u(?:\^(?P<pow1>\d+))?))?
          | (?P<var2>u(?:\^(?P<pow2>\d+))?)
        )""",
    re.VERBOSE,
)


class PolynomialSyntaxError(ValueError):
    """Malformed polynomial text; carries the character position."""

    def __init__(self, message, position):
        super().__init__(f"position {position}: {message}")
        self.position = position


def parse_polynomial(text: str) -> Polynomial:
    """Parse strings like ``1 - 3u + 2u^2`` or ``1 - 3/2u + 1/2*u^2``."""
    coeffs = {}
    pos = 0
    first = True
    n = len(text)
    while pos < n and text[pos:].strip():
        m = _TERM_RE.match(text, pos)
        if not m or m.end() == m.start():
            raise PolynomialSyntaxError("expected a term", pos)
        sign = m.group("sign")
        if sign is None and not first:
            raise PolynomialSyntaxError("expected '+' or '-' between terms", pos)
        factor = -1 if sign == "-" else 1
        if m.group("coeff") is not None:
            coeff = Fraction(m.group("coeff"))
            var = m.group("var1")
            power = m.group("pow1")
        else:
            coeff = Fraction(1)
            var = m.group("var2")
            power = m.group("pow2")
        k = 0
        if var is not None:
            k = int(power) if power is not None else 1
        coeffs[k] = coeffs.get(k, Fraction(0)) + factor * coeff
        pos = m.end()
        first = False
    if first:
        raise PolynomialSyntaxError("empty polynomial", 0)
    out = [Fraction(0)] * (max(coeffs) + 1)
    for k, c in coeffs.items():
        out[k] = c
    return Polynomial(out)


def format_polynomial(p: Polynomial) -> str:
    if p.is_zero():
        return "0"
    parts = []
    for k, c in enumerate(p.coeffs):
        if c == 0:
            continue
        mag = abs(c)
        if k == 0:
            body = str(mag)
        else:
            u = "u" if k == 1 else f"u^{k}"
            body = u if mag == 1 else f"{mag}{u}"
        if not parts:
            parts.append(body if c > 0 else f"-{body}")
        else:
            parts.append(f"+ {body}" if c > 0 else f"- {body}")
    return " ".join(parts)


def parse_root_multiset(data) -> RootMultiset:
    """Accept JSON text or parsed lists like [["1", 2], ["1/2", 1]]."""
    if isinstance(data, str):
        try:
            data = json.loads(data)
        except json.JSONDecodeError as exc:
            raise ValueError(f"invalid root multiset JSON: {exc}") from exc
    if not isinstance(data, list):
        raise ValueError("root multiset must be a list of [root, multiplicity] pairs")
    pairs = []
    for entry in data:
        if not isinstance(entry, (list, tuple)) or len(entry) != 2:
            raise ValueError(f"bad root entry {entry!r}: expected [root, multiplicity]")
        a, m = entry
        try:
            pairs.append((Fraction(str(a)), int(m)))
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"bad root entry {entry!r}: {exc}") from exc
    return RootMultiset(pairs)


def format_root_multiset(roots: RootMultiset):
    return [[str(a), m] for a, m in roots]
