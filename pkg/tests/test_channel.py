import json
import math
from fractions import Fraction

import pytest

import erasure_polar.channel as ch
from erasure_polar.errors import ValidationError


def bec(e):
    return ch.new_distribution(2, {1: Fraction(e), 2: 1 - Fraction(e)})


def test_new_distribution_basic(example4500):
    assert example4500.q == 4500
    assert example4500.mode == "exact"
    assert sum(example4500.values) == 1
    assert example4500.mass(30) == Fraction(3, 150)  # 14th divisor, numerator 3
    assert example4500.as_dict()[4500] == Fraction(5, 150)


def test_missing_divisor_rejected():
    with pytest.raises(ValidationError, match="missing"):
        ch.new_distribution(12, {1: Fraction(1, 2), 12: Fraction(1, 2)})


def test_non_divisor_key_rejected():
    with pytest.raises(ValidationError, match="not divisors"):
        ch.new_distribution(4, {1: 0, 2: 0, 3: 0, 4: 1})


def test_negative_mass_rejected():
    with pytest.raises(ValidationError, match="negative"):
        ch.new_distribution(2, {1: Fraction(-1, 2), 2: Fraction(3, 2)})


def test_bad_sum_rejected():
    with pytest.raises(ValidationError, match="sum"):
        ch.new_distribution(2, {1: Fraction(1, 2), 2: Fraction(1, 3)})
    with pytest.raises(ValidationError, match="sum"):
        ch.new_distribution(2, {1: 0.5, 2: 0.6}, mode="float")


def test_float_values_rejected_in_exact_mode():
    with pytest.raises(ValidationError, match="exact mode"):
        ch.new_distribution(2, {1: 0.5, 2: 0.5})


def test_float_mode_tolerates_rounding():
    d = ch.new_distribution(2, {1: 0.1, 2: 0.9}, mode="float")
    assert d.mode == "float"
    assert math.isclose(sum(d.values), 1.0)


def test_unknown_mode_rejected():
    with pytest.raises(ValidationError, match="mode"):
        ch.new_distribution(2, {1: 0, 2: 1}, mode="decimal")


def test_to_float():
    d = bec(Fraction(1, 3)).to_float()
    assert d.mode == "float"
    assert d.values == (1 / 3, 2 / 3)
    assert d.to_float() is d


def test_capacity_bec():
    d = bec(Fraction(1, 4))
    assert math.isclose(ch.capacity(d), 0.75 * math.log(2))
    assert math.isclose(ch.capacity(d, "bits"), 0.75)
    assert math.isclose(ch.capacity(d, "base_q"), 0.75)
    with pytest.raises(ValidationError):
        ch.capacity(d, "base_e")


def test_capacity_example4500(example4500):
    expected = math.fsum(
        float(v) * math.log(d) for d, v in example4500.as_dict().items() if d > 1
    )
    assert ch.capacity(example4500) == expected
    assert math.isclose(ch.capacity(example4500, "base_q"), expected / math.log(4500))


def test_capacity_point_masses():
    d = ch.new_distribution(12, {1: 1, 2: 0, 3: 0, 4: 0, 6: 0, 12: 0})
    assert ch.capacity(d) == 0.0
    d = ch.new_distribution(12, {1: 0, 2: 0, 3: 0, 4: 0, 6: 0, 12: 1})
    assert math.isclose(ch.capacity(d), math.log(12))


def test_homomorphism_q4_d2():
    d = ch.new_distribution(4, {1: Fraction(1, 2), 2: Fraction(1, 3), 4: Fraction(1, 6)})
    quot = ch.homomorphism_channel(d, 2)
    assert quot.as_dict() == {1: Fraction(1, 2), 2: Fraction(1, 2)}
    assert math.isclose(ch.homomorphism_capacity(d, 2), 0.5 * math.log(2))


def test_homomorphism_identity_and_trivial(example4500):
    assert ch.homomorphism_channel(example4500, 4500) is example4500
    trivial = ch.homomorphism_channel(example4500, 1)
    assert sum(trivial.values) == 1
    assert trivial.mass(1) == 1
    assert ch.homomorphism_capacity(example4500, 1) == 0.0


def test_homomorphism_preserves_mass(example4500):
    for d in (2, 6, 90, 450):
        quot = ch.homomorphism_channel(example4500, d)
        assert sum(quot.values) == 1
        assert quot.q == d


def test_homomorphism_rejects_non_divisor(example4500):
    with pytest.raises(ValidationError):
        ch.homomorphism_channel(example4500, 7)


def test_json_round_trip(tmp_path, example4500):
    path = tmp_path / "chan.json"
    ch.dump_channel(example4500, str(path))
    again = ch.load_channel(str(path))
    assert again == example4500


def test_load_channel_float_mode(tmp_path):
    path = tmp_path / "chan.json"
    path.write_text(json.dumps({"q": 2, "epsilon": {"1": 0.25, "2": 0.75}}))
    d = ch.load_channel(str(path), mode="float")
    assert d.values == (0.25, 0.75)
    with pytest.raises(ValidationError, match="exact mode"):
        ch.load_channel(str(path), mode="exact")


def test_load_channel_diagnostics(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text("{ not json")
    with pytest.raises(ValidationError, match="line 1"):
        ch.load_channel(str(path))
    with pytest.raises(ValidationError, match="cannot read"):
        ch.load_channel(str(tmp_path / "absent.json"))
    path.write_text(json.dumps({"q": 2}))
    with pytest.raises(ValidationError, match="epsilon"):
        ch.load_channel(str(path))
    path.write_text(json.dumps({"q": 2, "epsilon": {"one": "1/2", "2": "1/2"}}))
    with pytest.raises(ValidationError, match="not an integer"):
        ch.load_channel(str(path))
    path.write_text(json.dumps({"q": 2, "epsilon": {"1": "1/0", "2": "1"}}))
    with pytest.raises(ValidationError, match="cannot parse"):
        ch.load_channel(str(path))
