"""Symbolic enveloping algebra of loop sl2 on a bounded mode window.

Generators are the modes x+_k (raising), h_k (Cartan), x-_k (lowering) for
integer k, subject to

    [h_r, x+-_s] = +-2 x+-_{r+s},   [x+_r, x-_s] = h_{r+s},
    [h_r, h_s] = 0,                 [x+-_r, x+-_s] = 0.

Elements are rational linear combinations of words in the generators.  The
normal form puts all lowering factors first, then Cartan, then raising, with
modes weakly increasing inside each block; straightening rewrites any word
into normal form with the commutators above.  Since raising factors end up
as a suffix, reduction modulo the left ideal generated by the raising modes
is simply dropping every word that contains one.

Each element carries a mode window.  Straightening only ever creates modes
that are sums of existing ones, but the window is enforced as a guard rail:
on overflow it is widened twice before giving up.

The generating series in an indeterminate u used here:

    X-(u)   = sum_{k>=1} x-_k u^k           X-0(u) = sum_{k>=0} x-_k u^{k+1}
    Xt-(u)  = sum_{k in Z} x-_k u^{k+1}     Ht(u)  = sum_{k in Z} h_k u^{k+1}
    Lam(u)  = exp(-sum_{k>=1} h_k u^k / k) = sum_{k>=0} Lam_k u^k

with divided powers x^(r) = x^r / r!.  The Garland identity says that for
s >= r >= 1, modulo words containing a raising factor,

    (x+_0)^(r) (x-_1)^(s) = (-1)^r (X-(u)^(s-r) Lam(u))_s,

and the variant with x+_1, x-_0 and X-0(u) in place of x+_0, x-_1 and X-(u);
both are checked mechanically by garland_check.
"""

from __future__ import annotations

from fractions import Fraction
from math import factorial

LOWER, CARTAN, RAISE = 0, 1, 2  # block order of the normal form
KIND_NAMES = {LOWER: "x-", CARTAN: "h", RAISE: "x+"}

# Structure constants, consulted on every bracket evaluation.  Kept as a
# module-level table so a test harness can corrupt them deliberately and
# watch the verification suite fail.
STRUCTURE_CONSTANTS = {
    "cartan_action": 2,  # [h_r, x+-_s] = +-(this) x+-_{r+s}
    "raise_lower": 1,  # [x+_r, x-_s] = (this) h_{r+s}
}


class WindowOverflowError(RuntimeError):
    """A generated mode left the element's window even after widening."""


def bracket(f, g):
    """[f, g] for generator modes f=(kind, r), g=(kind, s); None when zero."""
    (kf, r), (kg, s) = f, g
    if kf == kg:
        return None
    two = Fraction(STRUCTURE_CONSTANTS["cartan_action"])
    one = Fraction(STRUCTURE_CONSTANTS["raise_lower"])
    if kf == RAISE and kg == LOWER:
        return one, (CARTAN, r + s)
    if kf == LOWER and kg == RAISE:
        return -one, (CARTAN, r + s)
    if kf == CARTAN and kg == RAISE:
        return two, (RAISE, r + s)
    if kf == RAISE and kg == CARTAN:
        return -two, (RAISE, r + s)
    if kf == CARTAN and kg == LOWER:
        return -two, (LOWER, r + s)
    if kf == LOWER and kg == CARTAN:
        return two, (LOWER, r + s)
    raise AssertionError("unreachable")


def _ordered(f, g):
    """Is the adjacent pair f, g already in normal order?"""
    return f[0] < g[0] or (f[0] == g[0] and f[1] <= g[1])


class UEAElement:
    """Linear combination of generator words with a mode window."""

    __slots__ = ("terms", "window")

    def __init__(self, terms, window=None):
        clean = {}
        for word, coeff in terms.items():
            coeff = Fraction(coeff)
            if coeff:
                clean[tuple(word)] = coeff
        lo = min((k for word in clean for _, k in word), default=0)
        hi = max((k for word in clean for _, k in word), default=0)
        if window is None:
            window = (min(lo, 0), max(hi, 0))
        if lo < window[0] or hi > window[1]:
            raise WindowOverflowError(f"modes [{lo}, {hi}] outside window {window}")
        self.terms = clean
        self.window = tuple(window)

    @classmethod
    def zero(cls, window=None):
        return cls({}, window)

    @classmethod
    def one(cls, window=None):
        return cls({(): Fraction(1)}, window)

    @classmethod
    def generator(cls, kind, mode, window=None):
        return cls({((kind, mode),): Fraction(1)}, window)

    def is_zero(self):
        return not self.terms

    def with_window(self, window):
        return UEAElement(self.terms, window)

    def merged_window(self, other):
        return (min(self.window[0], other.window[0]), max(self.window[1], other.window[1]))

    def __add__(self, other):
        other = _coerce(other)
        out = dict(self.terms)
        for word, c in other.terms.items():
            out[word] = out.get(word, Fraction(0)) + c
        return UEAElement(out, self.merged_window(other))

    def __sub__(self, other):
        return self + (-1) * _coerce(other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return UEAElement(
                {w: c * other for w, c in self.terms.items()}, self.window
            )
        other = _coerce(other)
        out = {}
        for wa, ca in self.terms.items():
            for wb, cb in other.terms.items():
                word = wa + wb
                out[word] = out.get(word, Fraction(0)) + ca * cb
        return UEAElement(out, self.merged_window(other))

    def __rmul__(self, scalar):
        return self * scalar

    def __eq__(self, other):
        return isinstance(other, UEAElement) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def is_normal(self):
        return all(
            _ordered(w[i], w[i + 1]) for w in self.terms for i in range(len(w) - 1)
        )

    def __repr__(self):
        return f"UEAElement({format_element(self)!r})"


def _coerce(x):
    if isinstance(x, UEAElement):
        return x
    return UEAElement({(): Fraction(x)})


def format_element(e: UEAElement) -> str:
    if not e.terms:
        return "0"
    parts = []
    for word in sorted(e.terms, key=lambda w: (len(w), w)):
        c = e.terms[word]
        factors = "*".join(f"{KIND_NAMES[k]}[{m}]" for k, m in word) or "1"
        parts.append(f"({c})*{factors}")
    return " + ".join(parts)


def _widen(window):
    lo, hi = window
    span = max(hi - lo, 1)
    return (lo - span, hi + span)


def straighten(e: UEAElement, max_widenings: int = 2) -> UEAElement:
    """Normal form of e; widens the mode window at most max_widenings times."""
    window = e.window
    for attempt in range(max_widenings + 1):
        try:
            return _straighten_in_window(e, window)
        except WindowOverflowError:
            if attempt == max_widenings:
                raise
            window = _widen(window)
    raise AssertionError("unreachable")


def _straighten_in_window(e: UEAElement, window) -> UEAElement:
    lo, hi = window
    done = {}
    stack = list(e.terms.items())
    while stack:
        word, coeff = stack.pop()
        spot = None
        for i in range(len(word) - 1):
            if not _ordered(word[i], word[i + 1]):
                spot = i
                break
        if spot is None:
            acc = done.get(word, Fraction(0)) + coeff
            if acc:
                done[word] = acc
            else:
                done.pop(word, None)
            continue
        f, g = word[spot], word[spot + 1]
        swapped = word[:spot] + (g, f) + word[spot + 2 :]
        stack.append((swapped, coeff))
        br = bracket(f, g)
        if br is not None:
            c, gen = br
            if gen[1] < lo or gen[1] > hi:
                raise WindowOverflowError(
                    f"mode {gen[1]} escapes window {window} while straightening"
                )
            stack.append((word[:spot] + (gen,) + word[spot + 2 :], coeff * c))
    return UEAElement(done, window)


def mod_positive(e: UEAElement) -> UEAElement:
    """Drop every word containing a raising factor (e must be straightened)."""
    if not e.is_normal():
        raise ValueError("mod_positive needs a straightened element")
    kept = {
        word: c
        for word, c in e.terms.items()
        if not any(kind == RAISE for kind, _ in word)
    }
    return UEAElement(kept, e.window)


def _sorted_word(word):
    return tuple(sorted(word))


def lambda_mode(k: int, sign: int = 1) -> UEAElement:
    """Lam_{sign*k} as a polynomial in the commuting modes h_{sign*1..sign*k}.

    Built from the series exponential: Lam_0 = 1 and
    n Lam_n = -sum_{j=1}^{n} h_{sign*j} Lam_{n-j}.
    """
    if k < 0:
        raise ValueError("index must be nonnegative; use sign=-1 for negative modes")
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    window = (min(0, sign * k), max(0, sign * k))
    levels = [UEAElement.one(window)]
    for n in range(1, k + 1):
        acc = {}
        for j in range(1, n + 1):
            h = (CARTAN, sign * j)
            for word, c in levels[n - j].terms.items():
                key = _sorted_word(word + (h,))
                acc[key] = acc.get(key, Fraction(0)) - c
        levels.append(UEAElement({w: c / n for w, c in acc.items()}, window))
    return levels[k]


SERIES_XMINUS = "X-"
SERIES_XMINUS0 = "X-0"
SERIES_XTILDE = "Xt-"
SERIES_HTILDE = "Ht"


def _series_modes(series, s, window):
    """(kind, modes, u-power function) for the supported series."""
    if series == SERIES_XMINUS:
        return LOWER, range(1, max(s, 0) + 1), lambda m: m
    if series == SERIES_XMINUS0:
        return LOWER, range(0, max(s, 0)), lambda m: m + 1
    if series in (SERIES_XTILDE, SERIES_HTILDE):
        if window is None:
            raise ValueError(f"series {series} needs a finite mode window")
        kind = LOWER if series == SERIES_XTILDE else CARTAN
        return kind, range(window[0], window[1] + 1), lambda m: m + 1
    raise ValueError(f"unknown series {series!r}")


def series_divided_power_coeff(series: str, r: int, s: int, window=None) -> UEAElement:
    """Coefficient of u^s in the r-th divided power of the named series.

    The series coefficients commute, so the divided power expands over weakly
    increasing mode tuples with coefficient 1/prod(multiplicity!).
    """
    if r < 0:
        raise ValueError("divided power needs r >= 0")
    if r == 0:
        return UEAElement.one() if s == 0 else UEAElement.zero()
    kind, modes, upower = _series_modes(series, s, window)
    modes = list(modes)
    one_sided = series in (SERIES_XMINUS, SERIES_XMINUS0)
    out = {}

    def record(word):
        coeff = Fraction(1)
        run = 1
        for i in range(1, len(word)):
            run = run + 1 if word[i] == word[i - 1] else 1
            if run > 1:
                coeff /= run
        out[word] = out.get(word, Fraction(0)) + coeff

    def rec(start_idx, remaining, budget, word):
        if remaining == 0:
            if budget == 0:
                record(word)
            return
        for idx in range(start_idx, len(modes)):
            m = modes[idx]
            p = upower(m)
            # modes are weakly increasing, so once the powers are all
            # positive each of the remaining factors costs at least p
            if one_sided and p * remaining > budget:
                break
            if one_sided and p > budget:
                continue
            rec(idx, remaining - 1, budget - p, word + ((kind, m),))

    if one_sided:
        rec(0, r, s, ())
    else:
        from itertools import combinations_with_replacement

        for combo in combinations_with_replacement(modes, r):
            if sum(upower(m) for m in combo) == s:
                record(tuple((kind, m) for m in combo))
    return UEAElement(out, window)


def garland_check(r: int, s: int, variant: str) -> bool:
    """Mechanically verify the normal-ordering identity for the pair (r, s)."""
    if not (1 <= r <= s):
        raise ValueError("need s >= r >= 1")
    if variant not in ("i", "ii"):
        raise ValueError("variant must be 'i' or 'ii'")
    lhs, rhs = garland_sides(r, s, variant)
    return lhs == rhs


def garland_sides(r: int, s: int, variant: str):
    """Straightened (LHS mod raising terms, RHS) of the identity."""
    window = (-(s + 2), s * (r + 2))
    if variant == "i":
        plus_mode, minus_mode, series = 0, 1, SERIES_XMINUS
    else:
        plus_mode, minus_mode, series = 1, 0, SERIES_XMINUS0
    word = ((RAISE, plus_mode),) * r + ((LOWER, minus_mode),) * s
    lhs = UEAElement({word: Fraction(1, factorial(r) * factorial(s))}, window)
    lhs = mod_positive(straighten(lhs))

    rhs = UEAElement.zero(window)
    for c in range(s - r, s + 1):
        x_part = series_divided_power_coeff(series, s - r, c)
        if x_part.is_zero():
            continue
        rhs = rhs + x_part.with_window(window) * lambda_mode(s - c).with_window(window)
    rhs = straighten(rhs * Fraction((-1) ** r))
    return lhs, rhs


def shift_automorphism(e: UEAElement, step: int = 1) -> UEAElement:
    """The algebra automorphism moving x+_m to x+_{m+step}, x-_m to x-_{m-step}.

    Cartan modes are fixed, matching [x+_{r+step}, x-_{s-step}] = h_{r+s}.
    Normal order is preserved, so no re-straightening is needed.
    """
    out = {}
    for word, c in e.terms.items():
        shifted = tuple(
            (kind, mode + step if kind == RAISE else mode - step if kind == LOWER else mode)
            for kind, mode in word
        )
        out[shifted] = out.get(shifted, Fraction(0)) + c
    lo, hi = e.window
    return UEAElement(out, (lo - abs(step), hi + abs(step)))


def substitute_cartan_scalars(e: UEAElement, values) -> Fraction:
    """Evaluate an element of the commuting Cartan subalgebra at h_k = values[k]."""
    total = Fraction(0)
    for word, c in e.terms.items():
        acc = c
        for kind, mode in word:
            if kind != CARTAN:
                raise ValueError("element has non-Cartan factors")
            acc *= values[mode]
        total += acc
    return total
