import json
from fractions import Fraction

import pytest

from nochka.arrangement import embed_restrict_generator
from nochka.diagram import compute_weights
from nochka.fileio import (
    CertificateFile,
    FormatError,
    arrangement_to_dict,
    dump_arrangement,
    parse_arrangement,
)

from conftest import CONFIG_B, make


def test_arrangement_round_trip(config_b):
    text = dump_arrangement(config_b)
    assert parse_arrangement(text) == config_b
    assert json.loads(text) == arrangement_to_dict(config_b)


def test_fractions_survive(tmp_path):
    arr = parse_arrangement('{"k": 1, "n": 1, "hyperplanes": [["1/3", "-2/6"], [0, 1], ["5", "0"]]}')
    assert arr.covectors[0] == (Fraction(1, 3), Fraction(-1, 3))
    assert "1/3" in dump_arrangement(arr)


@pytest.mark.parametrize(
    "text,where",
    [
        ('{"k": 1, "n": 2, "hyperplanes": [[1, 0],', "<input>:1:"),
        ('{"n": 2, "hyperplanes": []}', "<input>"),
        ('{"k": "1", "n": 2, "hyperplanes": []}', "<input>: k"),
        ('{"k": 1, "n": 2, "hyperplanes": [[1, 0.5]]}', "<input>: hyperplanes[0][1]"),
        ('{"k": 1, "n": 2, "hyperplanes": [[1, "1/0"]]}', "<input>: hyperplanes[0][1]"),
        ('{"k": 1, "n": 2, "hyperplanes": [[1, "0.5"]]}', "<input>: hyperplanes[0][1]"),
        ('{"k": 1, "n": 2, "hyperplanes": [7]}', "<input>: hyperplanes[0]"),
    ],
)
def test_parse_errors_name_the_location(text, where):
    with pytest.raises(FormatError) as err:
        parse_arrangement(text)
    assert err.value.where.startswith(where)


def test_certificate_round_trip(config_b):
    cert = compute_weights(config_b)
    f = CertificateFile.from_certificate(config_b, cert)
    text = f.dumps()
    assert CertificateFile.loads(text) == f
    data = json.loads(text)
    assert data["weights"] == ["1/2", "1/2", "2/3", "2/3", "2/3", "2/3"]
    assert data["tau"] == data["sigma"] == "2/3"
    assert data["representatives"] == [[], [1, 2]]
    assert data["tight_flats"] == [[1, 2], [3, 4, 5]]
    assert data["verdicts"]["flat_sums"] == {"passed": True, "slack": "0", "witness": "{1,2}"}


def test_no_decimals_in_output():
    for seed in range(20):
        arr = embed_restrict_generator(3, 2, 8, seed=seed, coincidence_budget=2)
        text = dump_arrangement(arr) + CertificateFile.from_certificate(arr, compute_weights(arr)).dumps()
        assert "." not in text and "e-" not in text


def test_certificate_rejects_bad_weights():
    data = CertificateFile.from_certificate(make(CONFIG_B), compute_weights(make(CONFIG_B))).to_dict()
    data["weights"][0] = 0.5
    with pytest.raises(FormatError) as err:
        CertificateFile.from_dict(data)
    assert err.value.where == "<certificate>: weights[0]"
