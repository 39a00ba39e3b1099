class NochkaError(Exception):
    """Base class for errors raised by this package."""


class InvalidArrangementError(NochkaError, ValueError):
    """Malformed input; ``violations`` lists (index, reason) pairs."""

    def __init__(self, violations):
        self.violations = list(violations)
        msg = "; ".join(
            reason if index is None else f"hyperplane {index + 1}: {reason}"
            for index, reason in self.violations
        )
        super().__init__(msg or "invalid arrangement")


class InsufficientHyperplanesError(NochkaError):
    def __init__(self, q: int, n: int, k: int):
        self.q, self.n, self.k = q, n, k
        super().__init__(
            f"theorem hypothesis q > 2n-k+1 fails: q={q}, 2n-k+1={2 * n - k + 1}"
        )


class SubgeneralPositionError(NochkaError):
    """Some flat has more hyperplanes through it than alpha <= codim + n - k allows."""

    def __init__(self, violations):
        self.violations = list(violations)
        worst = self.violations[0]
        super().__init__(
            f"{len(self.violations)} flat(s) violate alpha <= codim + n - k; "
            f"first: hyperplanes {sorted(i + 1 for i in worst.index_set)} "
            f"(alpha={worst.alpha}, codim={worst.codim})"
        )


class InvariantError(NochkaError, AssertionError):
    """An internal invariant failed.  Always a bug, never bad input."""
