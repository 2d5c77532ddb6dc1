import math

import numpy as np
import pytest

import cuntzwave as cw


def scalar(terms):
    return {"rows": 1, "cols": 1, "terms": [{"exp": e, "matrix": [[c]]} for e, c in terms]}


def test_haar_is_in_cn(data):
    r = cw.check_cn(data("haar.json"))
    assert r["in_CN"] is True
    assert r["deviation"] == 0.0
    assert r["bank"]["N"] == 2
    assert cw.check_cn(data("identity.json"))["in_CN"] is False


def test_build_filter_matches_haar(data):
    W = cw.build_filter(data("bank_haar.json"))
    for z in (0.3, 0.2 + 0.5j, -0.7j):
        assert np.abs(cw.evaluate(W, z) - cw.evaluate(data("haar.json"), z)).max() <= 1e-15


def test_factor_R_reconstructs(data):
    r = cw.factor_R(data("haar.json"))
    assert r["reconstruction_error"] == 0.0
    R = r["R"]
    assert cw.evaluate(R, 0.4).shape == (2, 2)


def test_factor_R_rejects_non_members(data):
    with pytest.raises(cw.Error) as info:
        cw.factor_R(data("identity.json"))
    assert info.value.args[0] == "NotInCN"


def test_decompose_with_identity_sums_back(data):
    parts = cw.decompose_P(data("haar.json"), data("P_I2.json"))
    assert len(parts) == 2
    z = 0.3 - 0.2j
    total = sum(cw.evaluate(p, z) for p in parts)
    assert np.abs(total - cw.evaluate(data("haar.json"), z)).max() <= 1e-15


def test_split_of_polynomial():
    f = scalar([(0, 1.0), (1, 2.0), (2, 3.0), (3, 4.0), (4, 5.0)])
    parts = cw.split(2, f)
    assert cw.evaluate(parts[0], 0.5)[0, 0] == pytest.approx(1 + 3 * 0.5 + 5 * 0.25)
    assert cw.evaluate(parts[1], 0.5)[0, 0] == pytest.approx(2 + 4 * 0.5)


def test_verify_cuntz_exact():
    r = cw.verify_cuntz(3, 8)
    assert r["relations_exact"] is True
    assert r["checked_degree"] == 8
    assert cw.verify_cuntz(3, 7, {"diag": [1, -1]})["checked_degree"] == 5


def test_gleason_monomials(data):
    r = cw.gleason(data("gleason_f.json"), data("gleason_m2.json"), 5)
    assert r["residual"] == 0.0
    assert len(r["parts"]) == 2


def test_stein_and_symmetry(data):
    H = cw.matrix(cw.solve_stein(data("blaschke_half.json"), {"diag": [1]})["H"])
    assert abs(H[0, 0] - 1) <= 1e-10
    inv = cw.solve_stein(data("inv_blaschke_half.json"), {"diag": [1]})
    assert inv["nu_neg"] == 1
    T = cw.matrix(cw.symmetry_T(data("haar_realization.json"), 2)["T"])
    assert abs(T[0, 0] + 1) <= 1e-10


def test_negative_squares_inline_spec(data):
    spec = {"kind": "K_Theta", "function": data("inv_z.json"), "J": {"diag": [1]}}
    r = cw.negative_squares(spec, {"trials": 10, "seed": 4})
    assert r["kappa"] == 1
    assert cw.negative_squares({"kind": "Hardy", "dim": 2})["kappa"] == 0


def test_evaluate_realization(data):
    b = cw.evaluate(data("blaschke_half.json"), 0.25)[0, 0]
    assert b == pytest.approx((0.25 - 0.5) / (1 - 0.125))


def test_fnv1a():
    assert cw.fnv1a_hex("") == "cbf29ce484222325"
    assert cw.fnv1a_hex(b"foobar") == "85944171f73967e8"


def test_errors_carry_code():
    with pytest.raises(cw.Error) as info:
        cw.check_cn({"rows": 1, "cols": 2, "terms": [{"exp": 0, "matrix": [[1]]}]})
    assert info.value.args[0] == "DimensionMismatch"
    with pytest.raises(cw.Error):
        cw.split(2, {"rows": 1})


def test_periodic_map_of_haar_fails(data):
    with pytest.raises(cw.Error):
        cw.periodic_map(data("haar.json"))
    W = cw.periodic_map(data("periodic_haar.json"))
    assert cw.check_cn(W)["in_CN"] is True
    assert math.isfinite(cw.evaluate(W, 0.1)[0, 0].real)
