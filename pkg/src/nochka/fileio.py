"""JSON file formats for arrangements and weight certificates.

Every rational is written as an exact string, "a" or "a/b".  Hyperplane
indices in files are 1-based.

Arrangement::

    {"k": 2, "n": 3, "hyperplanes": [["1", "0", "0"], ["0", "1", "1/2"], ...]}

Certificate::

    {"k": 2, "n": 3, "weights": ["1/2", ...], "tau": "2/3", "sigma": "2/3",
     "hull": [[0, 0], [2, 1], [5, 3]], "representatives": [[], [1, 2]],
     "assignment": [1, 1, 2, ...], "tight_flats": [[1, 2], [3, 4, 5]],
     "verdicts": {"nonneg": {"passed": true, "slack": "1/2", "witness": "H_1"}, ...}}
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

from .arrangement import Arrangement
from .diagram import WeightCertificate
from .errors import NochkaError


class FormatError(NochkaError, ValueError):
    """Unreadable or ill-typed file content; ``where`` is a line:col or field path."""

    def __init__(self, where: str, message: str):
        self.where = where
        self.message = message
        super().__init__(f"{where}: {message}")


def _loads(text: str, source: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"{source}:{exc.lineno}:{exc.colno}", exc.msg) from None


def _rational(value, where: str) -> Fraction:
    if isinstance(value, bool) or not isinstance(value, (int, str)):
        raise FormatError(where, f"expected a rational string like \"a/b\", got {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    text = value.strip()
    num, sep, den = text.partition("/")
    try:
        a = int(num)
        b = int(den) if sep else 1
    except ValueError:
        raise FormatError(where, f"not a rational: {value!r}") from None
    if b <= 0:
        raise FormatError(where, f"denominator must be a positive integer: {value!r}")
    return Fraction(a, b)


def _integer(value, where: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise FormatError(where, f"expected an integer, got {value!r}")
    return value


def _field(obj, key: str, where: str):
    if not isinstance(obj, dict):
        raise FormatError(where, "expected a JSON object")
    if key not in obj:
        raise FormatError(where, f"missing field {key!r}")
    return obj[key]


def fmt(x: Fraction) -> str:
    return str(Fraction(x))


def parse_arrangement(text: str, source: str = "<input>") -> Arrangement:
    data = _loads(text, source)
    k = _integer(_field(data, "k", source), f"{source}: k")
    n = _integer(_field(data, "n", source), f"{source}: n")
    hyps = _field(data, "hyperplanes", source)
    if not isinstance(hyps, list):
        raise FormatError(f"{source}: hyperplanes", "expected a list of covectors")
    covectors = []
    for i, h in enumerate(hyps):
        if not isinstance(h, list):
            raise FormatError(f"{source}: hyperplanes[{i}]", "expected a list of rationals")
        covectors.append(
            tuple(_rational(v, f"{source}: hyperplanes[{i}][{j}]") for j, v in enumerate(h))
        )
    return Arrangement(k, n, tuple(covectors))


def load_arrangement(path) -> Arrangement:
    """Read an arrangement file.  Structural problems are left to :func:`validate`."""
    with open(path, encoding="utf-8") as fh:
        return parse_arrangement(fh.read(), str(path))


def arrangement_to_dict(arr: Arrangement) -> dict:
    return {
        "k": arr.k,
        "n": arr.n,
        "hyperplanes": [[fmt(v) for v in c] for c in arr.covectors],
    }


def dump_arrangement(arr: Arrangement) -> str:
    """One covector per line, so files stay readable and diff well."""
    rows = ",\n".join("    " + json.dumps([fmt(v) for v in c]) for c in arr.covectors)
    return f'{{\n  "k": {arr.k},\n  "n": {arr.n},\n  "hyperplanes": [\n{rows}\n  ]\n}}\n'



@dataclass(frozen=True)
class CertificateFile:
    k: int
    n: int
    weights: tuple[Fraction, ...]
    tau: Fraction
    sigma: Fraction
    hull: tuple[tuple[int, int], ...]
    representatives: tuple[tuple[int, ...], ...]  # 1-based
    assignment: tuple[int, ...]
    tight_flats: tuple[tuple[int, ...], ...]  # 1-based
    verdicts: tuple[tuple[str, bool, Fraction, str], ...]

    @classmethod
    def from_certificate(cls, arr: Arrangement, cert: WeightCertificate) -> "CertificateFile":
        return cls(
            k=arr.k,
            n=arr.n,
            weights=tuple(cert.omegas),
            tau=cert.tau,
            sigma=cert.sigma,
            hull=tuple(cert.hull),
            representatives=tuple(tuple(i + 1 for i in r) for r in cert.representatives),
            assignment=tuple(cert.assignment),
            tight_flats=tuple(tuple(i + 1 for i in f.indices) for f in cert.report.tight_flats),
            verdicts=tuple((v.name, v.passed, v.slack, v.witness) for v in cert.report.verdicts),
        )

    def to_dict(self) -> dict:
        return {
            "k": self.k,
            "n": self.n,
            "weights": [fmt(w) for w in self.weights],
            "tau": fmt(self.tau),
            "sigma": fmt(self.sigma),
            "hull": [list(p) for p in self.hull],
            "representatives": [list(r) for r in self.representatives],
            "assignment": list(self.assignment),
            "tight_flats": [list(f) for f in self.tight_flats],
            "verdicts": {
                name: {"passed": ok, "slack": fmt(slack), "witness": wit}
                for name, ok, slack, wit in self.verdicts
            },
        }

    def dumps(self) -> str:
        return json.dumps(self.to_dict(), indent=2, ensure_ascii=False) + "\n"

    @classmethod
    def from_dict(cls, data: dict, source: str = "<certificate>") -> "CertificateFile":
        def ints(value, where):
            if not isinstance(value, list):
                raise FormatError(where, "expected a list")
            return tuple(_integer(v, f"{where}[{i}]") for i, v in enumerate(value))

        def nested(key):
            value = _field(data, key, source)
            if not isinstance(value, list):
                raise FormatError(f"{source}: {key}", "expected a list")
            return tuple(ints(v, f"{source}: {key}[{i}]") for i, v in enumerate(value))

        raw_verdicts = _field(data, "verdicts", source)
        if not isinstance(raw_verdicts, dict):
            raise FormatError(f"{source}: verdicts", "expected an object")
        verdicts = []
        for name, v in raw_verdicts.items():
            where = f"{source}: verdicts.{name}"
            passed = _field(v, "passed", where)
            if not isinstance(passed, bool):
                raise FormatError(f"{where}.passed", "expected true or false")
            verdicts.append(
                (name, passed, _rational(_field(v, "slack", where), f"{where}.slack"), str(v.get("witness", "")))
            )
        hull = nested("hull")
        for i, p in enumerate(hull):
            if len(p) != 2:
                raise FormatError(f"{source}: hull[{i}]", "expected an [x, y] pair")
        return cls(
            k=_integer(_field(data, "k", source), f"{source}: k"),
            n=_integer(_field(data, "n", source), f"{source}: n"),
            weights=read_weights_dict(data, source),
            tau=_rational(_field(data, "tau", source), f"{source}: tau"),
            sigma=_rational(_field(data, "sigma", source), f"{source}: sigma"),
            hull=hull,
            representatives=nested("representatives"),
            assignment=ints(_field(data, "assignment", source), f"{source}: assignment"),
            tight_flats=nested("tight_flats"),
            verdicts=tuple(verdicts),
        )

    @classmethod
    def loads(cls, text: str, source: str = "<certificate>") -> "CertificateFile":
        return cls.from_dict(_loads(text, source), source)


def read_weights_dict(data, source: str) -> tuple[Fraction, ...]:
    weights = _field(data, "weights", source)
    if not isinstance(weights, list):
        raise FormatError(f"{source}: weights", "expected a list of rationals")
    return tuple(_rational(w, f"{source}: weights[{i}]") for i, w in enumerate(weights))


def load_weights(path) -> tuple[Fraction, ...]:
    """Only the ``weights`` list of a certificate; everything else is recomputed."""
    with open(path, encoding="utf-8") as fh:
        return read_weights_dict(_loads(fh.read(), str(path)), str(path))

