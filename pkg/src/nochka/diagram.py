"""The Nochka diagram, its lower convex hull and the resulting weights.

Each nonempty flat L gives the lattice point P(L) = (alpha(L), codim L).  The
lower convex hull of these points together with X = (2n-k+1, k+1) is a chain
P_0 = (0,0), ..., P_s, P_{s+1} = X with strictly increasing slopes.  Hyperplane
i receives the slope of P_{j-1}P_j for the first j with H_i ⊇ L_j, where L_j
is a flat sitting at P_j and L_{s+1} is the empty set.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Iterable, Mapping, Sequence

from .arrangement import Arrangement, Flat, check_subgeneral, closed_flats
from .errors import InsufficientHyperplanesError, InvariantError, SubgeneralPositionError
from .qlinalg import as_rational

Point = tuple[int, int]


def cross(o, a, b):
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def slope(a, b) -> Fraction:
    return Fraction(b[1] - a[1]) / (b[0] - a[0])


def lower_hull(points: Iterable[Point], x_point: Point) -> list[Point]:
    """Strict lower-hull vertices of ``points`` ∪ {X}, left to right.

    Monotone chain; collinear middle points are dropped so consecutive slopes
    strictly increase.
    """
    pts = sorted(set(tuple(p) for p in points) | {tuple(x_point)})
    hull: list[Point] = []
    for p in pts:
        if hull and hull[-1][0] == p[0]:
            continue  # same x, higher y: never on the lower hull
        while len(hull) >= 2 and cross(hull[-2], hull[-1], p) <= 0:
            hull.pop()
        hull.append(p)
    return hull


@dataclass(frozen=True)
class DiagramPoint:
    x: int
    y: int
    witnesses: tuple[int, ...]  # positions in NochkaDiagram.flats

    @property
    def xy(self) -> Point:
        return (self.x, self.y)


@dataclass(frozen=True)
class NochkaDiagram:
    arrangement: Arrangement
    flats: tuple[Flat, ...]
    points: tuple[DiagramPoint, ...]
    hull: tuple[Point, ...]  # P_0, ..., P_s, X
    reps: tuple[Flat, ...]  # L_0, ..., L_s
    slopes: tuple[Fraction, ...]  # slope of P_j P_{j+1}, j = 0..s

    @property
    def s(self) -> int:
        return len(self.reps) - 1

    @property
    def X(self) -> Point:
        return self.hull[-1]

    @property
    def W(self) -> tuple[Fraction, Fraction]:
        a = self.arrangement
        return (Fraction(2 * a.n - a.k + 1, 2), Fraction(a.k + 1, 2))

    @property
    def ell_intercept(self) -> int:
        """ell is the line y = x + (k - n) of slope 1 through (n, k)."""
        return self.arrangement.k - self.arrangement.n

    @property
    def sigma(self) -> Fraction:
        return self.slopes[-1]

    def witnesses_at(self, vertex: Point) -> list[Flat]:
        for p in self.points:
            if p.xy == vertex:
                return [self.flats[w] for w in p.witnesses]
        return []


def diagram_points(flats: Sequence[Flat]) -> tuple[DiagramPoint, ...]:
    by_xy: dict[Point, list[int]] = {}
    for idx, f in enumerate(flats):
        by_xy.setdefault(f.point, []).append(idx)
    return tuple(
        DiagramPoint(x, y, tuple(sorted(w, key=lambda i: flats[i].indices)))
        for (x, y), w in sorted(by_xy.items())
    )


def anchor(arr: Arrangement) -> Point:
    return (2 * arr.n - arr.k + 1, arr.k + 1)


def require_enough_hyperplanes(arr: Arrangement) -> None:
    if arr.q <= 2 * arr.n - arr.k + 1:
        raise InsufficientHyperplanesError(arr.q, arr.n, arr.k)


def build_diagram(
    arr: Arrangement, choose: Mapping[int, int] | None = None
) -> NochkaDiagram:
    """Nochka diagram of ``arr`` with representatives and invariants checked.

    ``choose`` maps a hull vertex position j (1..s) to the position of the
    witness flat to use there; by default the lexicographically smallest
    index set wins.
    """
    require_enough_hyperplanes(arr)
    bad = check_subgeneral(arr)
    if bad:
        raise SubgeneralPositionError(bad)
    flats = closed_flats(arr)
    points = diagram_points(flats)
    X = anchor(arr)
    hull = tuple(lower_hull((p.xy for p in points), X))
    by_xy = {p.xy: p for p in points}
    choose = dict(choose or {})
    reps = []
    for j, v in enumerate(hull[:-1]):
        if v not in by_xy:
            raise InvariantError(f"hull vertex {v} is not a diagram point")
        witnesses = by_xy[v].witnesses
        reps.append(flats[witnesses[choose.get(j, 0)]])
    slopes = tuple(slope(a, b) for a, b in zip(hull, hull[1:]))
    diagram = NochkaDiagram(arr, flats, points, hull, tuple(reps), slopes)
    _assert_invariants(diagram)
    return diagram


def _assert_invariants(d: NochkaDiagram) -> None:
    arr = d.arrangement
    k, n = arr.k, arr.n
    if d.hull[0] != (0, 0) or d.reps[0].codim != 0:
        raise InvariantError("hull must start at P_0 = (0,0) with L_0 = P^k")
    if any(a >= b for a, b in zip(d.slopes, d.slopes[1:])) or d.slopes[0] <= 0:
        raise InvariantError(f"hull slopes not strictly increasing and positive: {d.slopes}")
    X = d.X
    for j in range(1, d.s + 1):
        x, y = d.hull[j]
        # strictly below OX, on or left of ell, hence codim L_j <= (k+1)/2
        if not (y * X[0] < x * X[1] and x <= y + n - k and 2 * y <= k + 1):
            raise InvariantError(f"hull vertex P_{j}={d.hull[j]} outside the region below W")
    for j in range(d.s):
        if not d.reps[j + 1].ann.is_subspace_of(d.reps[j].ann):
            raise InvariantError(f"chain containment fails: L_{j} does not contain L_{j + 1}")


def representative_choices(d: NochkaDiagram):
    """Every assignment of witness flats to the hull vertices P_1..P_s."""
    counts = [len(d.witnesses_at(v)) for v in d.hull[1:-1]]
    for combo in product(*(range(c) for c in counts)):
        yield {j + 1: c for j, c in enumerate(combo)}


@dataclass(frozen=True)
class Verdict:
    name: str
    passed: bool
    slack: Fraction  # >= 0 means satisfied, except for equalities where 0 is required
    witness: str = ""


@dataclass(frozen=True)
class VerificationReport:
    tau: Fraction
    sigma: Fraction
    verdicts: tuple[Verdict, ...]
    tight_flats: tuple[Flat, ...] = ()

    @property
    def passed(self) -> bool:
        return all(v.passed for v in self.verdicts)

    def __getitem__(self, name: str) -> Verdict:
        for v in self.verdicts:
            if v.name == name:
                return v
        raise KeyError(name)

    def failed(self) -> list[str]:
        return [v.name for v in self.verdicts if not v.passed]


CONDITIONS = (
    "nonneg",
    "bounded",
    "flat_sums",
    "sigma_equals_tau",
    "classic_bound",
    "toda_bound",
)


def tau_of(arr: Arrangement, omegas: Sequence[Fraction]) -> Fraction:
    """(sum omega - k - 1) / (q - 2n + k - 1)."""
    require_enough_hyperplanes(arr)
    return (sum(omegas, Fraction(0)) - arr.k - 1) / (arr.q - 2 * arr.n + arr.k - 1)


def verify_certificate(arr: Arrangement, omegas: Sequence) -> VerificationReport:
    """Check every weight condition from scratch, given only ``arr`` and the weights.

    sigma is recomputed as the final slope of the lower hull of the flat
    points; tau from the closed formula.  Works on weights from any source.
    """
    omegas = [as_rational(w) for w in omegas]
    if len(omegas) != arr.q:
        raise ValueError(f"expected {arr.q} weights, got {len(omegas)}")
    k, n = arr.k, arr.n
    tau = tau_of(arr, omegas)
    flats = closed_flats(arr)
    X = anchor(arr)
    hull = lower_hull((f.point for f in flats), X)
    sigma = slope(hull[-2], hull[-1])

    i_min = min(range(arr.q), key=lambda i: omegas[i])
    i_max = max(range(arr.q), key=lambda i: omegas[i])
    verdicts = [
        Verdict("nonneg", omegas[i_min] >= 0, omegas[i_min], f"H_{i_min + 1}"),
        Verdict("bounded", omegas[i_max] <= tau, tau - omegas[i_max], f"H_{i_max + 1}"),
    ]

    worst, worst_slack, tight = None, None, []
    for f in flats:
        if f.codim == 0:
            continue  # P^k: nothing passes through it
        gap = f.codim - sum((omegas[i] for i in f.index_set), Fraction(0))
        if worst_slack is None or gap < worst_slack:
            worst, worst_slack = f, gap
        if gap == 0:
            tight.append(f)
    if worst is None:
        verdicts.append(Verdict("flat_sums", True, Fraction(0), "{}"))
    else:
        verdicts.append(Verdict("flat_sums", worst_slack >= 0, worst_slack, worst.label()))
    verdicts.append(Verdict("sigma_equals_tau", sigma == tau, tau - sigma, f"sigma={sigma}"))
    classic = Fraction(k + 1, n + 1)
    verdicts.append(Verdict("classic_bound", tau <= classic, classic - tau, f"(k+1)/(n+1)={classic}"))
    toda = Fraction(k, n)
    verdicts.append(Verdict("toda_bound", tau <= toda, toda - tau, f"k/n={toda}"))
    return VerificationReport(tau, sigma, tuple(verdicts), tuple(tight))


@dataclass(frozen=True)
class WeightCertificate:
    omegas: tuple[Fraction, ...]
    sigma: Fraction
    tau: Fraction
    hull: tuple[Point, ...]
    representatives: tuple[tuple[int, ...], ...]  # index sets of L_0..L_s
    assignment: tuple[int, ...]  # smallest j with H_i ⊇ L_j, 1..s+1
    report: VerificationReport = field(compare=False)

    @property
    def passed(self) -> bool:
        return self.report.passed


def assign_weights(d: NochkaDiagram) -> tuple[tuple[int, ...], tuple[Fraction, ...]]:
    """For each hyperplane: the first j >= 1 with H_i ⊇ L_j, and slope P_{j-1}P_j.

    Nothing passes through L_0 = P^k, and everything contains L_{s+1} = ∅,
    so j always exists and falls back to s+1.
    """
    assignment = []
    for i in range(d.arrangement.q):
        j = next((j for j in range(1, d.s + 1) if i in d.reps[j].index_set), d.s + 1)
        assignment.append(j)
    return tuple(assignment), tuple(d.slopes[j - 1] for j in assignment)


def compute_weights(
    arr: Arrangement, diagram: NochkaDiagram | None = None
) -> WeightCertificate:
    d = diagram if diagram is not None else build_diagram(arr)
    assignment, omegas = assign_weights(d)
    report = verify_certificate(arr, omegas)
    return WeightCertificate(
        omegas=omegas,
        sigma=d.sigma,
        tau=report.tau,
        hull=d.hull,
        representatives=tuple(f.indices for f in d.reps),
        assignment=assignment,
        report=report,
    )


@dataclass(frozen=True)
class TodaReport:
    s: int
    last_vertex: Point
    sigma: Fraction
    classic_slack: Fraction  # (k+1)/(n+1) - sigma
    toda_slack: Fraction  # k(2n-k+1-x) - n(k+1-y), cleared form of the bound
    restricted_slack: Fraction | None = None  # k(n-k) - (kx - ky)
    y_floor_slack: Fraction | None = None  # (n-k)(y-1)
    combined_slack: Fraction | None = None  # (k-1)(n-k) - (kx - ny)

    @property
    def passed(self) -> bool:
        steps = (self.restricted_slack, self.y_floor_slack, self.combined_slack)
        return (
            self.classic_slack >= 0
            and self.toda_slack >= 0
            and all(v is None or v >= 0 for v in steps)
        )


def toda_check(d: NochkaDiagram) -> TodaReport:
    """tau <= k/n read off from the last hull vertex (x, y) = P_s.

    For s >= 1 the bound is also rebuilt from its two ingredients: (x, y) is
    left of ell, and y >= 1.  With s = 0 there is no y >= 1 and only the
    direct comparison is made.
    """
    arr = d.arrangement
    k, n = arr.k, arr.n
    x, y = d.hull[-2]
    sigma = d.sigma
    report = dict(
        s=d.s,
        last_vertex=(x, y),
        sigma=sigma,
        classic_slack=Fraction(k + 1, n + 1) - sigma,
        toda_slack=Fraction(k * (2 * n - k + 1 - x) - n * (k + 1 - y)),
    )
    if d.s >= 1:
        restricted = k * (n - k) - (k * x - k * y)
        y_floor = (n - k) * (y - 1)
        combined = (k - 1) * (n - k) - (k * x - n * y)
        if combined != restricted + y_floor or combined != report["toda_slack"]:
            raise InvariantError("intermediate inequalities do not add up")
        report.update(
            restricted_slack=Fraction(restricted),
            y_floor_slack=Fraction(y_floor),
            combined_slack=Fraction(combined),
        )
    return TodaReport(**report)
