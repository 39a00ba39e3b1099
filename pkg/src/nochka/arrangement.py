"""Hyperplane arrangements in P^k and their intersection lattices.

Hyperplanes are indexed 0..q-1 internally; anything shown to a person (CLI
output, files) uses 1..q.  Repeated covectors are legal and count separately
in alpha(L) = #{i : H_i ⊇ L}.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from itertools import combinations
from typing import Iterable, Sequence

from .errors import InvalidArrangementError
from .qlinalg import Annihilator, Vector, as_rational, integer_row, nullspace, rank


@dataclass(frozen=True)
class Hyperplane:
    """A nonzero covector scaled so that its first nonzero coordinate is 1."""

    covector: Vector

    @classmethod
    def from_covector(cls, values: Iterable) -> "Hyperplane":
        vec = tuple(as_rational(v) for v in values)
        lead = next((v for v in vec if v != 0), None)
        if lead is None:
            raise ValueError("zero covector does not define a hyperplane")
        return cls(tuple(v / lead for v in vec))

    @cached_property
    def ints(self) -> tuple[int, ...]:
        return tuple(integer_row(self.covector))


@dataclass(frozen=True)
class Arrangement:
    """q hyperplanes in P^k, promised (or tested) to be in n-subgeneral position.

    ``covectors`` keeps the input exactly as given.  Use :meth:`build` to get a
    validated instance; the bare constructor exists so that :func:`validate`
    can report on malformed data.
    """

    k: int
    n: int
    covectors: tuple[Vector, ...]

    @classmethod
    def build(cls, k: int, n: int, covectors: Iterable[Sequence]) -> "Arrangement":
        arr = cls(k, n, tuple(tuple(as_rational(v) for v in c) for c in covectors))
        problems = validate(arr)
        if problems:
            raise InvalidArrangementError(problems)
        return arr

    @property
    def q(self) -> int:
        return len(self.covectors)

    @property
    def dim(self) -> int:
        return self.k + 1

    @cached_property
    def hyperplanes(self) -> tuple[Hyperplane, ...]:
        return tuple(Hyperplane.from_covector(c) for c in self.covectors)

    def closure(self, ann: Annihilator) -> frozenset[int]:
        """{i : H_i ⊇ L} for the subspace L carried by ``ann``."""
        return frozenset(
            i for i, h in enumerate(self.hyperplanes) if ann.contains_form(h.ints)
        )


def validate(arr: Arrangement) -> list[tuple[int | None, str]]:
    """Every structural problem with ``arr`` as (hyperplane index or None, reason)."""
    problems: list[tuple[int | None, str]] = []
    if not isinstance(arr.k, int) or arr.k < 1:
        problems.append((None, f"k must be a positive integer, got {arr.k!r}"))
    if isinstance(arr.k, int) and isinstance(arr.n, int) and arr.k > arr.n:
        problems.append((None, f"k exceeds n ({arr.k} > {arr.n})"))
    if arr.q < 1:
        problems.append((None, "at least one hyperplane is required"))
    for i, c in enumerate(arr.covectors):
        if isinstance(arr.k, int) and len(c) != arr.k + 1:
            problems.append((i, f"expected {arr.k + 1} coordinates, got {len(c)}"))
        elif not any(c):
            problems.append((i, "zero covector"))
    return problems


@dataclass(frozen=True)
class Flat:
    """A nonempty intersection of hyperplanes, with its closed index set."""

    index_set: frozenset[int]
    ann: Annihilator

    @property
    def alpha(self) -> int:
        return len(self.index_set)

    @property
    def codim(self) -> int:
        return self.ann.codim

    @property
    def indices(self) -> tuple[int, ...]:
        return tuple(sorted(self.index_set))

    @property
    def point(self) -> tuple[int, int]:
        return (self.alpha, self.codim)

    def sort_key(self):
        return (self.codim, self.indices)

    def label(self) -> str:
        return "{" + ",".join(str(i + 1) for i in self.indices) + "}"


@lru_cache(maxsize=256)
def closed_flats(arr: Arrangement) -> tuple[Flat, ...]:
    """All nonempty flats of ``arr``, P^k included, sorted by (codim, index set).

    Breadth-first refinement: each known flat is cut by each hyperplane not
    through it.  Hyperplanes that end up containing the cut produce the same
    flat, so they are skipped for the rest of that flat's pass.
    """
    hyps = arr.hyperplanes
    whole = Annihilator.whole_space(arr.dim)
    top = Flat(arr.closure(whole), whole)
    seen = {top.index_set: top}
    frontier = [top]
    while frontier:
        nxt = []
        for f in frontier:
            absorbed = set(f.index_set)
            for i, h in enumerate(hyps):
                if i in absorbed:
                    continue
                ann = Annihilator.from_forms(f.ann.basis + (h.ints,), arr.dim)
                absorbed.add(i)
                if ann.is_empty:
                    continue
                closed = set(f.index_set)
                closed.add(i)
                closed.update(
                    j
                    for j, g in enumerate(hyps)
                    if j not in closed and ann.contains_form(g.ints)
                )
                key = frozenset(closed)
                absorbed |= key
                if key not in seen:
                    flat = Flat(key, ann)
                    seen[key] = flat
                    nxt.append(flat)
        frontier = nxt
    return tuple(sorted(seen.values(), key=Flat.sort_key))


def excess(arr: Arrangement, flat: Flat) -> int:
    """alpha(L) - codim L - (n - k); positive means the flat breaks the subgeneral inequality."""
    return flat.alpha - flat.codim - (arr.n - arr.k)


def check_subgeneral(arr: Arrangement) -> list[Flat]:
    """Flats breaking alpha(L) <= codim L + n - k, in lattice order.

    An empty list means the inequality holds everywhere.  This is the
    necessary condition that the weight construction relies on; it is not a
    test for the existence of a general-position embedding.
    """
    return [f for f in closed_flats(arr) if excess(arr, f) > 0]


@dataclass(frozen=True)
class PositionCheck:
    ok: bool
    witness: tuple[int, ...] | None = None
    reason: str = ""

    def __bool__(self):
        return self.ok


def check_general_position(covectors: Sequence[Sequence], n: int) -> PositionCheck:
    """Are these hyperplanes of P^n in general position?

    Any m <= n+1 of them must have independent covectors; it is enough to
    test every subset of size min(q, n+1).
    """
    hyps = [Hyperplane.from_covector(c) for c in covectors]
    for h in hyps:
        if len(h.covector) != n + 1:
            raise ValueError(f"covector of length {len(h.covector)} in P^{n}")
    first = {}
    for i, h in enumerate(hyps):
        if h.covector in first:
            return PositionCheck(False, (first[h.covector], i), "duplicate hyperplane")
        first[h.covector] = i
    size = min(len(hyps), n + 1)
    for subset in combinations(range(len(hyps)), size):
        if rank([hyps[i].ints for i in subset], n + 1) < size:
            return PositionCheck(False, subset, "dependent covectors")
    return PositionCheck(True)


def restrict(covectors: Sequence[Sequence[int]], embedding: Sequence[Sequence[int]]) -> list[list[int]]:
    """Pull covectors on P^n back along the embedding P^k -> P^n.

    ``embedding`` lists k+1 points of P^n spanning the image; the restricted
    form is h·M with M the (n+1) x (k+1) matrix having those points as columns.
    """
    out = []
    for h in covectors:
        row = [sum(a * b for a, b in zip(h, p)) for p in embedding]
        out.append(integer_row(row) if any(row) else row)
    return out


def embed_restrict_generator(
    n: int,
    k: int,
    q: int,
    seed: int = 0,
    coincidence_budget: int = 0,
    bound: int = 10,
    max_retries: int = 200,
) -> Arrangement:
    """Random arrangement in n-subgeneral position in P^k, built by definition.

    Draw q integer hyperplanes of P^n in general position, pick a P^k inside
    P^n and restrict.  Each unit of ``coincidence_budget`` forces the P^k to
    contain all or part of a flat cut out by m > n-k of the ambient
    hyperplanes, which is what creates multiple points, repeated hyperplanes
    and hull vertices strictly below OX downstairs.
    """
    if not (1 <= k <= n):
        raise ValueError(f"need 1 <= k <= n, got k={k}, n={n}")
    if q <= 2 * n - k + 1:
        raise ValueError(f"need q > 2n-k+1 = {2 * n - k + 1}, got q={q}")
    if coincidence_budget < 0:
        raise ValueError("coincidence budget must be nonnegative")
    rng = random.Random(seed)

    def draw_vector(size, b):
        while True:
            v = [rng.randint(-b, b) for _ in range(size)]
            if any(v):
                return v

    for _ in range(max_retries):
        ambient = [draw_vector(n + 1, bound) for _ in range(q)]
        if not check_general_position(ambient, n):
            continue
        # general position is the costly test, so try several embeddings per draw
        for _ in range(20):
            points: list[list[int]] = []
            subset: list[int] = []
            for _ in range(coincidence_budget):
                room = k + 1 - len(points)
                if room == 0 or n == k:
                    break
                # codim c of the forced flat inside P^k; c < (k+1)/2 is what puts
                # diagram points below OX, so small c is favoured
                c = rng.randint(1, k) if rng.random() < 0.3 else rng.randint(1, max(1, k // 2))
                m = c + n - k
                if subset and len(subset) < m and rng.random() < 0.5:
                    rest = [i for i in range(q) if i not in subset]
                    subset = subset + rng.sample(rest, m - len(subset))
                else:
                    subset = rng.sample(range(q), m)
                flat_basis = nullspace([ambient[i] for i in subset], n + 1)
                if len(flat_basis) <= room and rng.random() < 0.7:
                    points.extend(flat_basis)
                    continue
                for _ in range(rng.randint(1, min(len(flat_basis), room))):
                    coeffs = draw_vector(len(flat_basis), 3)
                    points.append(
                        [sum(c * v[j] for c, v in zip(coeffs, flat_basis)) for j in range(n + 1)]
                    )
            while len(points) < k + 1:
                points.append(draw_vector(n + 1, bound))
            if rank(points, n + 1) < k + 1:
                continue
            restricted = restrict(ambient, points)
            if any(not any(h) for h in restricted):
                continue
            return Arrangement.build(k, n, restricted)
    raise RuntimeError(f"no valid embedding found after {max_retries} attempts (seed={seed})")
