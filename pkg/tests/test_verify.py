import json

import pytest

from gnl import verify
from gnl.errors import CapacityError, InputError

import oracles

# L(P_30) by schoolbook convolution in oracles.naive_length
L_P30 = 674708092578083556436553021341784436


@pytest.mark.parametrize("n", [1, 2, 5, 9])
def test_trc3_polynomial_against_oracle(n):
    a, b, c = verify.three_part_exponents(n)
    assert verify.three_part_polynomial(n).length() == oracles.naive_length([(1, a), (2, b), (3, c)])


def test_pn_against_oracle():
    assert verify.pn_polynomial(30).length() == L_P30
    assert verify.pn_polynomial(12).length() == oracles.naive_length([(1, 12), (2, 24), (3, 24)])


def test_trc3_boundary():
    assert not verify.check_trc3(16).holds
    assert verify.check_trc3(17).holds
    assert verify.check_trc3(1).length == 476


def test_pn_at_30_is_just_above_half():
    v = verify.check_pn(30)
    assert v.length == L_P30
    assert v.bound < v.length < 2 * v.bound


def test_tail():
    v = verify.check_tail_constant()
    assert v.values["value"] == 64 and v.holds


@pytest.mark.parametrize("n", [1, 4, 20, 37])
def test_factorization(n):
    assert verify.check_factorization(n).holds


def test_induction_identities_and_submultiplicativity():
    v = verify.check_induction_chain(181)
    assert v.values["chain"] == [181] and v.values["base"] == 31
    assert v.values["identities"] and v.values["submultiplicative"]
    assert v.values["direct_below_target"]
    # the premise at the block size 30 is not met
    assert not v.values["block_below_half"]


def test_induction_other_block():
    v = verify.check_induction_chain(201, block=31)
    assert v.values["base"] == 46
    assert v.holds


def test_induction_input_errors():
    with pytest.raises(InputError):
        verify.check_induction_chain(100)
    with pytest.raises(InputError):
        verify.check_induction_chain(181, block=0)


def test_fine_small_cases():
    v = verify.check_fine_exceeds(1)
    assert v.values["length"] == oracles.naive_length([(1, 3), (2, 3), (3, 2), (16, 1), (17, 1), (18, 2)]) == 500
    assert v.holds
    # n=2 weights: e1,x1,u1,y1 = 16,17,18,18; e2,x2,u2,y2 = 85,86,87,87; e1^e2 = 101
    two = [(1, 3), (2, 3), (3, 2), (16, 1), (17, 1), (18, 2), (85, 1), (86, 1), (87, 2), (101, 1)]
    assert verify.check_fine_exceeds(2).values["length"] == oracles.naive_length(two) == 8370


def test_fine_scale_limit():
    with pytest.raises(CapacityError, match="not verified at this scale"):
        verify.check_fine_exceeds(4)


def _strip(report):
    out = report.to_json()
    for v in out["verdicts"]:
        v.pop("elapsed")
    return out


def test_report_is_deterministic():
    a = verify.sweep("trc3", range(1, 8))
    b = verify.sweep("trc3", range(7, 0, -1), jobs=2)
    assert _strip(a) == _strip(b)
    assert a.to_json()["range"] == [1, 7]
    assert not a.passed


def test_checkpoint_resume(tmp_path):
    ck = tmp_path / "ck.jsonl"
    verify.sweep("pn", range(30, 33), checkpoint=ck)
    assert len(ck.read_text().splitlines()) == 3
    seen = []
    rep = verify.sweep("pn", range(30, 35), checkpoint=ck, report_path=tmp_path / "r.json",
                       progress=lambda v: seen.append(v.n))
    assert seen == [33, 34]
    saved = json.loads((tmp_path / "r.json").read_text())
    assert [v["n"] for v in saved["verdicts"]] == [30, 31, 32, 33, 34]
    assert saved["pass"] is False and rep.verdicts[0].length == L_P30


def test_huge_values_serialize():
    v = verify.check_pn(1200)
    back = verify.SweepVerdict.from_json(json.loads(json.dumps(v.to_json())))
    assert back.length == v.length


def test_sweep_errors():
    with pytest.raises(InputError):
        verify.sweep("nope", [1])
    with pytest.raises(InputError):
        verify.sweep("pn", [0])


@pytest.mark.parametrize("n", [186, 336, 341])
def test_induction_block31_floor185(n):
    # every base then lands in 31..185, where L(P_k) < 2^(4k-1) is checked exactly
    v = verify.check_induction_chain(n, block=31, floor=185)
    assert 31 <= v.values["base"] <= 185
    assert v.holds


def test_induction_gap_checked_directly():
    # 181..185 cannot be split into six parts >= 31; the target holds by direct expansion
    for n in range(181, 186):
        assert verify.pn_polynomial(n).length() < 1 << (4 * n - 6)
