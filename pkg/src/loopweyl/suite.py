"""Aggregated verification battery over the desk-scale search space.

Each function sweeps one structural claim across an exhaustive family of
inputs and reports Check records; run_suite collects everything.  The root
pool is {1, -1, 2, -2, 1/2, 3} and "all multisets of degree <= D" means
every root multiset supported on the pool with multiplicities summing to at
most D.  Everything is deterministic: randomized instances draw from seeded
generators.

The commutator sweep is layered.  The block-level epsilon commutators and
the Taylor-coefficient convolutions are checked exhaustively for every
multiplicity and every pool root; full matrix-level commutators run on
every module of low degree and on a seeded sample of mode pairs and columns
for every larger module (the tensor assembly is bilinear, so the layered
checks cover each constructed module's ingredients exhaustively).
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import comb

from loopweyl import rootdata
from loopweyl.ideal_engine import (
    QuotientInconsistency,
    binomial_matrix_det,
    bm_monomials,
    graded_quotient,
    jmj_chain_check,
    z_degree,
)
from loopweyl.polyseries import (
    Polynomial,
    RootMultiset,
    format_root_multiset,
    is_squarefree,
    poly_from_roots,
    power_sum,
)
from loopweyl.uea_sl2 import CARTAN, garland_check
from loopweyl.weyl_sl2 import (
    block_epsilon_bracket_failures,
    bracket_failures,
    irreducible_quotient,
    is_cyclic,
    is_irreducible,
    mode_image_convolution_failures,
    singular_vectors,
    tensor,
    verify_defining_relations,
    weyl_module,
)

ROOT_POOL = tuple(Fraction(x) for x in ("1", "-1", "2", "-2", "1/2", "3"))


@dataclass
class Check:
    id: str
    passed: bool
    detail: str = ""


def enumerate_multisets(max_degree: int, pool=ROOT_POOL):
    """Every root multiset supported on the pool with total degree <= cap."""
    out = []
    for k in range(1, max_degree + 1):
        for support in combinations(pool, k):
            for total in range(k, max_degree + 1):
                for split in _compositions(total, k):
                    out.append(RootMultiset(list(zip(support, split))))
    return out


def _compositions(total, parts):
    if parts == 1:
        yield (total,)
        return
    for first in range(1, total - parts + 2):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def _label(roots):
    return str(format_root_multiset(roots))


# --- criterion sweeps --------------------------------------------------------


def dimension_checks(max_degree: int = 6):
    """dim W = 2^(total degree) across the whole pool enumeration."""
    multisets = enumerate_multisets(max_degree)
    bad = [
        _label(r) for r in multisets if weyl_module(r).dim != 2 ** r.degree
    ]
    detail = f"{len(multisets)} modules, degree <= {max_degree}"
    return [
        Check(
            "dimension-power-of-two",
            not bad,
            detail if not bad else f"failures: {bad[:5]}",
        )
    ]


def character_checks(max_degree: int = 6):
    """Weight multiplicities equal binomial coefficients, fiber by fiber."""
    multisets = enumerate_multisets(max_degree)
    bad = []
    for roots in multisets:
        m = roots.degree
        expected = {m - 2 * r: comb(m, r) for r in range(m + 1)}
        if weyl_module(roots).character() != expected:
            bad.append(_label(roots))
    detail = f"{len(multisets)} characters, degree <= {max_degree}"
    return [Check("character-binomial", not bad, detail if not bad else f"failures: {bad[:5]}")]


def ideal_checks(max_m: int = 6, chain_max_m: int = 4, det_max_r: int = 6):
    """Quotient dimensions, per-piece basis, ideal chain, determinant lemma."""
    checks = []
    total_bad, hilbert_bad, piece_bad = [], [], []
    for m in range(1, max_m + 1):
        try:
            q = graded_quotient(m)
        except QuotientInconsistency as exc:
            piece_bad.append(str(exc))
            continue
        if q.total_dim != 2 ** m:
            total_bad.append(f"m={m}: {q.total_dim}")
        if q.hilbert_by_degree != [comb(m, r) for r in range(m + 1)]:
            hilbert_bad.append(f"m={m}: {q.hilbert_by_degree}")
        basis_by_degree = {}
        for mono in q.basis:
            basis_by_degree[z_degree(mono)] = basis_by_degree.get(z_degree(mono), 0) + 1
        if basis_by_degree != {r: comb(m, r) for r in range(m + 1)}:
            piece_bad.append(f"m={m}: basis degrees {basis_by_degree}")
    checks.append(
        Check("quotient-total-dimension", not total_bad and not piece_bad,
              f"m <= {max_m}" if not total_bad else str(total_bad))
    )
    checks.append(
        Check("quotient-hilbert-binomial", not hilbert_bad,
              f"m <= {max_m}" if not hilbert_bad else str(hilbert_bad))
    )
    checks.append(
        Check("quotient-basis-per-piece", not piece_bad,
              f"m <= {max_m}, verified during row reduction" if not piece_bad else str(piece_bad))
    )
    chain_bad = []
    for m in range(1, chain_max_m + 1):
        result = jmj_chain_check(m)
        if not result:
            chain_bad.append(f"m={m}: {result.failures[:3]}")
    checks.append(
        Check("ideal-chain-membership", not chain_bad,
              f"m <= {chain_max_m}" if not chain_bad else str(chain_bad))
    )
    det_bad = [
        (r, k)
        for r in range(det_max_r + 1)
        for k in range(r + 1)
        if binomial_matrix_det(r, k) != comb(r + 1, k)
    ]
    checks.append(
        Check("binomial-determinant", not det_bad,
              f"r <= {det_max_r}" if not det_bad else str(det_bad))
    )
    return checks


def garland_checks(max_s: int = 4):
    """Both normal-ordering identity variants over the full index window."""
    bad = [
        (r, s, variant)
        for s in range(1, max_s + 1)
        for r in range(1, s + 1)
        for variant in ("i", "ii")
        if not garland_check(r, s, variant)
    ]
    return [
        Check("garland-identities", not bad,
              f"1 <= r <= s <= {max_s}, variants i and ii" if not bad else f"failures: {bad}")
    ]


def _coprime_pairs(max_total_degree: int = 5):
    pairs = [
        (RootMultiset([(1, 1)]), RootMultiset([(2, 1)])),
        (RootMultiset([(1, 1)]), RootMultiset([(-1, 1)])),
        (RootMultiset([(1, 1), (2, 1)]), RootMultiset([(3, 1)])),
        (RootMultiset([(1, 1)]), RootMultiset([(2, 1), (3, 1)])),
        (RootMultiset([(1, 2)]), RootMultiset([(2, 1)])),
        (RootMultiset([(1, 2)]), RootMultiset([(2, 1), (3, 1)])),
        (RootMultiset([(1, 1), (-1, 1)]), RootMultiset([(2, 2)])),
        (RootMultiset([(Fraction(1, 2), 1)]), RootMultiset([(3, 2)])),
        (RootMultiset([(-2, 2)]), RootMultiset([(1, 1), (3, 1)])),
        (RootMultiset([(1, 3)]), RootMultiset([(2, 2)])),
        (RootMultiset([(2, 1)]), RootMultiset([(Fraction(1, 2), 4)])),
        (RootMultiset([(-1, 2)]), RootMultiset([(Fraction(1, 2), 2), (3, 1)])),
    ]
    return [(a, b) for a, b in pairs if a.degree + b.degree <= max_total_degree]


def tensor_checks(max_total_degree: int = 5):
    """Coprime tensor products are cyclic and satisfy the product relations;
    a shared root breaks cyclicity (closure 3 inside dimension 4)."""
    checks = []
    pairs = _coprime_pairs(max_total_degree)
    cyclic_bad, relation_bad = [], []
    for left, right in pairs:
        w = tensor(weyl_module(left), weyl_module(right))
        ok, closure = is_cyclic(w, w.hw_vector())
        if not ok:
            cyclic_bad.append(f"{_label(left)} x {_label(right)}: closure {closure}")
        report = verify_defining_relations(w)
        if not report.all_pass:
            relation_bad.append(
                f"{_label(left)} x {_label(right)}: {[c.name for c in report.failures()]}"
            )
    checks.append(
        Check("tensor-cyclic-coprime", not cyclic_bad,
              f"{len(pairs)} coprime pairs" if not cyclic_bad else str(cyclic_bad[:3]))
    )
    checks.append(
        Check("tensor-product-relations", not relation_bad,
              f"{len(pairs)} coprime pairs" if not relation_bad else str(relation_bad[:3]))
    )
    w1 = weyl_module(RootMultiset([(1, 1)]))
    w2 = weyl_module(RootMultiset([(1, 1)]))
    neg = tensor(w1, w2, allow_non_coprime=True)
    ok, closure = is_cyclic(neg, neg.hw_vector())
    passed = (not ok) and closure == 3 and neg.dim == 4
    checks.append(
        Check("tensor-non-coprime-control", passed,
              "shared root gives closure 3 < 4" if passed else f"cyclic={ok}, closure={closure}")
    )
    return checks


def irreducibility_checks(max_degree: int = 5, quotient_max_mult: int = 4):
    """is_irreducible matches squarefreeness of the polynomial, both ways;
    the irreducible quotient of a repeated-root module has the expected size."""
    checks = []
    bad = []
    count = 0
    for roots in enumerate_multisets(max_degree):
        count += 1
        constructed = is_irreducible(weyl_module(roots))
        squarefree = is_squarefree(poly_from_roots(roots))
        predicate = rootdata.weyl_irreducibility_predicate(
            [poly_from_roots(roots)], rootdata.cartan_data("A1")
        )
        if constructed != squarefree or predicate != squarefree:
            bad.append(_label(roots))
    checks.append(
        Check("irreducibility-squarefree-match", not bad,
              f"{count} modules, degree <= {max_degree}" if not bad else f"failures: {bad[:5]}")
    )
    quot_bad = []
    for a in (Fraction(1), Fraction(2), Fraction(1, 2)):
        for m in range(2, quotient_max_mult + 1):
            q = irreducible_quotient(weyl_module(RootMultiset([(a, m)])))
            expected = {m - 2 * r: 1 for r in range(m + 1)}
            if q.dim != m + 1 or q.character() != expected or not is_irreducible(q):
                quot_bad.append(f"a={a}, m={m}: dim {q.dim}")
    checks.append(
        Check("irreducible-quotient-character", not quot_bad,
              f"multiplicities 2..{quotient_max_mult}" if not quot_bad else str(quot_bad))
    )
    return checks


def relation_checks(max_degree: int = 6):
    """Full defining-relation reports on every module in the enumeration,
    including the power-sum eigenvalues of the Cartan modes."""
    multisets = enumerate_multisets(max_degree)
    bad = []
    for roots in multisets:
        report = verify_defining_relations(weyl_module(roots))
        if not report.all_pass:
            bad.append(f"{_label(roots)}: {[c.name for c in report.failures()]}")
    return [
        Check("defining-relations", not bad,
              f"{len(multisets)} modules, degree <= {max_degree}" if not bad else str(bad[:3]))
    ]


def rootdata_checks(seed: int = 20240810):
    """Divisibility and exponent integrality across the shipped Cartan types."""
    rng = random.Random(seed)
    checks = []
    div_bad = []
    for tag in ("A1", "A2", "A3", "A4", "D4"):
        c = rootdata.cartan_data(tag)
        for _ in range(6):
            pis = []
            for _ in range(c.rank):
                p = Polynomial([1])
                for a in rng.sample([1, 2, 3, -1, -2], rng.randint(0, 2)):
                    p = p * Polynomial([1, -a])
                pis.append(p)
            if not rootdata.pi_theta_divisibility_check(pis, c):
                div_bad.append(f"{tag}: {pis}")
    checks.append(
        Check("root-polynomial-divisibility", not div_bad,
              "A1-A4, D4, random unital inputs of degree <= 2" if not div_bad else str(div_bad[:2]))
    )
    int_bad = []
    for tag in rootdata.cartan_types():
        c = rootdata.cartan_data(tag)
        pis = [Polynomial([1, -1]) for _ in range(c.rank)]
        try:
            for beta in rootdata.positive_roots(c):
                rootdata.pi_beta(pis, beta, c)
        except ValueError as exc:
            int_bad.append(f"{tag}: {exc}")
    checks.append(
        Check("root-exponent-integrality", not int_bad,
              f"all shipped types ({len(rootdata.cartan_types())})" if not int_bad else str(int_bad))
    )
    return checks


def bracket_checks(max_degree: int = 6, exhaustive_degree: int = 3, seed: int = 1789):
    """Layered commutator verification (see the module docstring)."""
    checks = []
    block_bad = [m for m in range(1, max_degree + 1) if block_epsilon_bracket_failures(m)]
    checks.append(
        Check("bracket-block-level", not block_bad,
              f"multiplicities 1..{max_degree}, all eps pairs, all columns"
              if not block_bad else f"failures at m={block_bad}")
    )
    conv_bad = []
    window = range(-2, 2 * max_degree + 1)
    for a in ROOT_POOL:
        for m in range(1, max_degree + 1):
            if mode_image_convolution_failures(a, m, window):
                conv_bad.append(f"a={a}, m={m}")
    checks.append(
        Check("bracket-mode-coefficients", not conv_bad,
              f"all pool roots, multiplicities <= {max_degree}, modes {window.start}..{window.stop - 1}"
              if not conv_bad else str(conv_bad[:3]))
    )
    rng = random.Random(seed)
    matrix_bad = []
    small = enumerate_multisets(exhaustive_degree)
    for roots in small:
        if bracket_failures(weyl_module(roots)):
            matrix_bad.append(_label(roots))
    larger = [r for r in enumerate_multisets(max_degree) if r.degree > exhaustive_degree]
    for roots in larger:
        w = weyl_module(roots)
        span = 2 * w.degree
        pairs = [(rng.randint(-2, span), rng.randint(-2, span)) for _ in range(6)]
        cols = sorted(rng.sample(range(w.dim), min(6, w.dim)))
        if bracket_failures(w, mode_pairs=pairs, columns=cols):
            matrix_bad.append(_label(roots))
    checks.append(
        Check("bracket-matrix-level", not matrix_bad,
              f"full window on {len(small)} modules of degree <= {exhaustive_degree}, "
              f"seeded samples on {len(larger)} larger modules"
              if not matrix_bad else f"failures: {matrix_bad[:3]}")
    )
    return checks


def singular_structure_checks(max_degree: int = 4):
    """Extra cross-check: singular-vector counts split by squarefreeness."""
    bad = []
    for roots in enumerate_multisets(max_degree):
        w = weyl_module(roots)
        n_singular = len(singular_vectors(w))
        if all(m == 1 for _, m in roots):
            if n_singular != 1:
                bad.append(f"{_label(roots)}: {n_singular}")
        elif n_singular < 2:
            bad.append(f"{_label(roots)}: {n_singular}")
    return [
        Check("singular-vector-structure", not bad,
              f"degree <= {max_degree}" if not bad else str(bad[:3]))
    ]


LEVELS = {
    "quick": dict(
        max_degree=3,
        garland_s=2,
        ideal_m=3,
        chain_m=3,
        det_r=4,
        tensor_degree=4,
        irr_degree=3,
        quotient_mult=3,
        bracket_degree=3,
        bracket_exhaustive=2,
        singular_degree=3,
    ),
    "full": dict(
        max_degree=6,
        garland_s=4,
        ideal_m=6,
        chain_m=4,
        det_r=6,
        tensor_degree=5,
        irr_degree=5,
        quotient_mult=4,
        bracket_degree=6,
        bracket_exhaustive=3,
        singular_degree=4,
    ),
}


def run_suite(level: str = "quick"):
    """The whole battery at the named level; returns a flat list of Checks."""
    if level not in LEVELS:
        raise ValueError(f"unknown suite level {level!r}; choose from {sorted(LEVELS)}")
    p = LEVELS[level]
    checks = []
    checks += dimension_checks(p["max_degree"])
    checks += character_checks(p["max_degree"])
    checks += ideal_checks(p["ideal_m"], p["chain_m"], p["det_r"])
    checks += garland_checks(p["garland_s"])
    checks += tensor_checks(p["tensor_degree"])
    checks += irreducibility_checks(p["irr_degree"], p["quotient_mult"])
    checks += relation_checks(p["max_degree"])
    checks += rootdata_checks()
    checks += bracket_checks(p["bracket_degree"], p["bracket_exhaustive"])
    checks += singular_structure_checks(p["singular_degree"])
    return checks
