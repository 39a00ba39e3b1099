"""Brute-force cross-checks for the lattice, the hull and the weights.

Everything here recomputes incidences from the raw covectors with a rank test
(is rank(forms of L plus h) still codim L?) rather than through the residual
reduction the lattice builder uses, so agreement between the two is evidence
and not a tautology.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from .arrangement import Arrangement, Flat, closed_flats
from .diagram import (
    NochkaDiagram,
    WeightCertificate,
    build_diagram,
    compute_weights,
    representative_choices,
)
from .qlinalg import Annihilator, ann_of_intersection, ann_of_sum, as_rational, rank


@dataclass
class OracleReport:
    name: str
    instances: int = 0
    failures: list[tuple] = field(default_factory=list)  # (witness, expected, actual)

    @property
    def passed(self) -> bool:
        return not self.failures

    def expect(self, ok: bool, witness, expected, actual) -> None:
        self.instances += 1
        if not ok:
            self.failures.append((witness, expected, actual))


def _rng(seed, name: str, trial: int) -> random.Random:
    return random.Random(f"{seed}:{name}:{trial}")


def incident(arr: Arrangement, i: int, ann: Annihilator) -> bool:
    forms = list(ann.basis) + [arr.covectors[i]]
    return rank(forms, arr.dim) == ann.codim


def alpha(arr: Arrangement, ann: Annihilator) -> int:
    return sum(1 for i in range(arr.q) if incident(arr, i, ann))


def through(arr: Arrangement, ann: Annihilator) -> frozenset[int]:
    return frozenset(i for i in range(arr.q) if incident(arr, i, ann))


def weight_on(arr: Arrangement, omegas: Sequence[Fraction], ann: Annihilator) -> Fraction:
    return sum((omegas[i] for i in through(arr, ann)), Fraction(0))


def naive_hull(points, x_point) -> list[tuple[int, int]]:
    """Lower-hull vertices straight from the definition, in O(m^3).

    p is a vertex iff no other point sits directly below it and no segment
    between two other points passes through or under it.
    """
    pts = sorted(set(tuple(p) for p in points) | {tuple(x_point)})
    vertices = []
    for p in pts:
        others = [o for o in pts if o != p]
        if any(o[0] == p[0] and o[1] <= p[1] for o in others):
            continue
        dominated = False
        for a, b in combinations(others, 2):
            if a[0] > b[0]:
                a, b = b, a
            if not (a[0] < p[0] < b[0]):
                continue
            # height of segment ab at p.x, compared without division
            if (p[1] - a[1]) * (b[0] - a[0]) >= (b[1] - a[1]) * (p[0] - a[0]):
                dominated = True
                break
        if not dominated:
            vertices.append(p)
    return vertices


def flats_by_subsets(arr: Arrangement) -> dict[Annihilator, frozenset[int]]:
    """Every nonempty intersection over all 2^q index subsets, deduplicated."""
    found: dict[Annihilator, frozenset[int]] = {}
    for size in range(arr.q + 1):
        for subset in combinations(range(arr.q), size):
            ann = Annihilator.from_forms([arr.covectors[i] for i in subset], arr.dim)
            if ann.is_empty or ann in found:
                continue
            found[ann] = through(arr, ann)
    return found


def lattice_check(arr: Arrangement) -> OracleReport:
    report = OracleReport("lattice")
    brute = flats_by_subsets(arr)
    built = {f.ann: f.index_set for f in closed_flats(arr)}
    report.expect(len(brute) == len(built), "count", len(brute), len(built))
    for ann, idx in brute.items():
        report.expect(built.get(ann) == idx, sorted(i + 1 for i in idx), idx, built.get(ann))
    return report


def hull_check(d: NochkaDiagram) -> OracleReport:
    report = OracleReport("hull")
    pts = [p.xy for p in d.points]
    naive = naive_hull(pts, d.X)
    report.expect(naive == list(d.hull), "vertices", naive, list(d.hull))
    for a, b in zip(d.hull, d.hull[1:]):
        for p in pts:
            below = (p[1] - a[1]) * (b[0] - a[0]) < (b[1] - a[1]) * (p[0] - a[0])
            report.expect(not below, (p, a, b), "on or above", "below")
    return report


def submodularity_check(arr: Arrangement, trials: int, seed=0) -> OracleReport:
    """alpha(A+B) + alpha(A∩B) >= alpha(A) + alpha(B), codim modular, on random flat pairs.

    codim(A+B) is recomputed from spanning points, independently of the
    row-space intersection used by ``ann_of_sum``.  A∩B may be empty, where
    every hyperplane counts.
    """
    report = OracleReport("submodularity")
    flats = closed_flats(arr)
    for t in range(trials):
        rng = _rng(seed, "submod", t)
        a = rng.choice(flats)
        b = a if rng.random() < 0.1 else rng.choice(flats)
        join = ann_of_sum(a.ann, b.ann)
        meet = ann_of_intersection(a.ann, b.ann)
        witness = (a.label(), b.label())
        span_rank = rank(a.ann.points() + b.ann.points(), arr.dim)
        report.expect(join.codim == arr.dim - span_rank, witness, arr.dim - span_rank, join.codim)
        lhs = alpha(arr, join) + alpha(arr, meet)
        rhs = alpha(arr, a.ann) + alpha(arr, b.ann)
        report.expect(lhs >= rhs, witness, f">= {rhs}", lhs)
        report.expect(
            join.codim + meet.codim == a.codim + b.codim,
            witness,
            a.codim + b.codim,
            join.codim + meet.codim,
        )
    return report


def random_subspace(arr: Arrangement, rng: random.Random) -> Annihilator:
    """A random nonempty subspace; half the draws are seeded with some H_i forms."""
    r = rng.randint(0, arr.k)
    forms = []
    if r and rng.random() < 0.5:
        forms = [arr.covectors[i] for i in rng.sample(range(arr.q), rng.randint(1, min(r, arr.q)))]
    while len(forms) < r:
        forms.append([rng.randint(-5, 5) for _ in range(arr.dim)])
    if not forms:
        return Annihilator.whole_space(arr.dim)
    return Annihilator.from_forms(forms, arr.dim)


def closure_domination_check(
    arr: Arrangement, omegas: Sequence, trials: int, seed=0
) -> OracleReport:
    """Sum of weights through an arbitrary nonempty L stays within codim L."""
    report = OracleReport("closure_domination")
    omegas = [as_rational(w) for w in omegas]
    for t in range(trials):
        ann = random_subspace(arr, _rng(seed, "closure", t))
        total = weight_on(arr, omegas, ann)
        report.expect(total <= ann.codim, [list(map(str, r)) for r in ann.rows], f"<= {ann.codim}", total)
    return report


def proof_chain_check(
    arr: Arrangement, d: NochkaDiagram, cert: WeightCertificate
) -> OracleReport:
    """Replay the two cases of the weight-bound argument on every flat."""
    report = OracleReport("proof_chain")
    k, n = arr.k, arr.n
    om = cert.omegas
    memo: dict[Annihilator, frozenset[int]] = {}

    def alpha(_arr, ann):
        if ann not in memo:
            memo[ann] = through(arr, ann)
        return len(memo[ann])

    def weight_on(_arr, _om, ann):
        alpha(arr, ann)
        return sum((om[i] for i in memo[ann]), Fraction(0))

    sigma = cert.sigma
    last = d.reps[-1]
    a_s, c_s = alpha(arr, last.ann), last.codim
    for f in closed_flats(arr):
        L = f.ann
        a_L = alpha(arr, L)
        sum_L = weight_on(arr, om, L)
        if ann_of_intersection(L, last.ann).is_empty:
            w = ("case I", f.label())
            report.expect(L.codim + c_s >= k + 1, w, f">= {k + 1}", L.codim + c_s)
            chain = [
                Fraction(2 * n - k + 1 - a_s, k + 1 - c_s),
                Fraction(n + 1 - c_s, k + 1 - c_s),
                1 + Fraction(n - k, L.codim),
                Fraction(a_L, L.codim),
            ]
            report.expect(chain[0] == 1 / sigma, w, 1 / sigma, chain[0])
            for lo, hi in zip(chain[1:], chain):
                report.expect(hi >= lo, w, f">= {lo}", hi)
            report.expect(sum_L <= sigma * a_L <= L.codim, w, f"<= {sigma * a_L} <= {L.codim}", sum_L)
            continue
        for j in range(1, d.s + 2):
            if j <= d.s and not d.reps[j].ann.is_subspace_of(L):
                continue
            w = ("case II", f.label(), j)
            prev = d.reps[j - 1].ann
            s_prev = d.slopes[j - 1]
            meet = ann_of_intersection(L, prev)
            join = ann_of_sum(L, prev)
            a_meet, a_prev = alpha(arr, meet), alpha(arr, prev)
            rise = meet.codim - prev.codim
            report.expect(rise >= s_prev * (a_meet - a_prev), w, f">= {s_prev * (a_meet - a_prev)}", rise)
            sum_meet, sum_prev = weight_on(arr, om, meet), weight_on(arr, om, prev)
            report.expect(
                sum_meet - sum_prev == s_prev * (a_meet - a_prev),
                w,
                s_prev * (a_meet - a_prev),
                sum_meet - sum_prev,
            )
            sum_join = weight_on(arr, om, join)
            report.expect(sum_L + sum_prev <= sum_join + sum_meet, w, f"<= {sum_join + sum_meet}", sum_L + sum_prev)
            report.expect(
                L.codim + prev.codim == join.codim + meet.codim,
                w,
                L.codim + prev.codim,
                join.codim + meet.codim,
            )
            report.expect(sum_join <= join.codim, w, f"<= {join.codim}", sum_join)
            report.expect(sum_L <= L.codim, w, f"<= {L.codim}", sum_L)
    return report


def representative_check(arr: Arrangement, limit: int = 64) -> OracleReport:
    """Recompute the weights for every choice of witness flats on the hull."""
    report = OracleReport("representatives")
    base = compute_weights(arr)
    d = build_diagram(arr)
    for n_done, choice in enumerate(representative_choices(d)):
        if n_done >= limit:
            break
        alt = compute_weights(arr, build_diagram(arr, choose=choice))
        report.expect(alt.omegas == base.omegas, choice, base.omegas, alt.omegas)
    return report


def run_oracles(
    arr: Arrangement,
    omegas: Sequence | None = None,
    trials: int = 100,
    seed=0,
) -> list[OracleReport]:
    """The full oracle suite.  ``omegas`` defaults to the constructed weights."""
    d = build_diagram(arr)
    cert = compute_weights(arr, d)
    weights = cert.omegas if omegas is None else [as_rational(w) for w in omegas]
    return [
        hull_check(d),
        submodularity_check(arr, trials, seed),
        proof_chain_check(arr, d, cert),
        closure_domination_check(arr, weights, trials, seed),
        representative_check(arr),
    ]
