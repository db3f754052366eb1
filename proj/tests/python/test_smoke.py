import json

import pytest

import betakit


def test_golden_mean_expansion_of_one():
    s = betakit.System("z^2-z-1")
    assert s.expand("1")["word"] == "11(0)"
    minus = s.expand("1", side="minus", length=6)
    code, out, _ = betakit.run_cli(["expand", "--beta", "z^2-z-1", "--side", "minus", "--length", "6"])
    assert code == 0
    cli = json.loads(out)["expansions"][0]
    assert minus["prefix"] == cli["prefix"]
    assert minus["word"] == cli["word"]


def test_sofic_example():
    s = betakit.System("z4-z2-1", "2-beta2")
    assert s.kneading() == ("(1001)", "01(10)")
    assert s.classify() == "SoficNotSFT"


def test_admissibility():
    s = betakit.System("z^2-z-1", "(2-beta)/2")
    assert not s.admissible("011111")
    assert s.admissible("(10)")


def test_orbit_and_entropy():
    s = betakit.System("z^3-z^2-z-1", "1/7")
    orb = s.orbit("1/5")
    assert orb["periodic"] and orb["word"] is not None
    lo, hi = s.entropy()["radius"]
    beta = float(betakit.beta_value("z^3-z^2-z-1"))
    assert lo - 1e-9 <= beta <= hi + 1e-9


def test_search_sft_moves_to_finite_type():
    s = betakit.System("z^2-z-1", "2*beta-3")
    assert s.classify() == "SoficNotSFT"
    alpha = s.search_sft("1e-4")
    assert betakit.System("z^2-z-1", alpha).classify() == "SFT"


def test_density_is_normalised():
    cells = betakit.System("z^2-z-1").density(order=50)
    assert cells[0][0] == pytest.approx(0.0)
    assert sum((hi - lo) * v for lo, hi, v in cells) > 0


def test_errors_carry_codes():
    with pytest.raises(betakit.BetakitError) as info:
        betakit.System("z^2-z-1", "1/2")
    assert info.value.code == "OutOfDomain"
    assert betakit.classify_number("z^2-z-1") == "Pisot"


def test_cli_round_trip():
    code, out, err = betakit.run_cli(["classify", "--beta", "z4-z2-1", "--alpha", "2-beta2"])
    assert code == 0
    assert json.loads(out)["class"] == "SoficNotSFT"
    assert betakit.run_cli(["nonsense"])[0] == 1
