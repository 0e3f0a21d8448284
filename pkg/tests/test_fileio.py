import json

import numpy as np
import pytest

from mlie.catalog import make_metric
from mlie.doubleext import ExtensionData
from mlie.errors import InvalidInput
from mlie.fileio import (
    algebra_to_dict,
    dict_to_algebra,
    dict_to_extension,
    read_algebra,
    read_extension,
    write_algebra,
    write_extension,
)
from mlie.liealg import LieAlgebra
from mlie.pseudolin import Gram


def test_algebra_roundtrip_bit_exact(tmp_path):
    m = make_metric("EX8")  # coefficients include binary64 roundings of radicals
    path = tmp_path / "ex8.json"
    write_algebra(str(path), m.algebra, m.gram, comment="roundtrip")
    algebra, gram, comment = read_algebra(str(path))
    assert np.array_equal(algebra.c, m.algebra.c)
    assert np.array_equal(gram.mat, m.gram.mat)
    assert comment == "roundtrip"


def test_algebra_roundtrip_without_metric(tmp_path):
    alg = LieAlgebra.from_brackets(3, {(0, 1): {2: 0.1 + 0.2}})
    path = tmp_path / "a.json"
    write_algebra(str(path), alg)
    back, gram, comment = read_algebra(str(path))
    assert np.array_equal(back.c, alg.c)
    assert gram is None and comment is None


def test_double_read_is_stable(tmp_path):
    m = make_metric("L5_9", "m59", {"a": 0.3, "b": -0.2, "x": 1.1, "y": 0.4, "eps": -1.0})
    p1, p2 = tmp_path / "one.json", tmp_path / "two.json"
    write_algebra(str(p1), m.algebra, m.gram)
    a1, g1, _ = read_algebra(str(p1))
    write_algebra(str(p2), a1, g1)
    assert p1.read_text() == p2.read_text()


def test_brackets_use_one_based_upper_indices():
    alg = LieAlgebra.from_brackets(3, {(0, 1): {2: 2.5}})
    doc = algebra_to_dict(alg)
    assert doc["dim"] == 3
    assert doc["brackets"] == [{"i": 1, "j": 2, "coeffs": {"3": 2.5}}]


def test_dict_to_algebra_validation_messages():
    with pytest.raises(InvalidInput, match="dim"):
        dict_to_algebra({"brackets": []})
    with pytest.raises(InvalidInput, match="1 <= i < j"):
        dict_to_algebra({"dim": 3, "brackets": [{"i": 2, "j": 1, "coeffs": {}}]})
    with pytest.raises(InvalidInput, match="out of range"):
        dict_to_algebra({"dim": 3, "brackets": [{"i": 1, "j": 2, "coeffs": {"4": 1.0}}]})
    with pytest.raises(InvalidInput, match="duplicate"):
        dict_to_algebra(
            {"dim": 3, "brackets": [{"i": 1, "j": 2, "coeffs": {}}, {"i": 1, "j": 2, "coeffs": {}}]}
        )
    with pytest.raises(InvalidInput, match="finite"):
        dict_to_algebra({"dim": 2, "brackets": [{"i": 1, "j": 2, "coeffs": {"1": float("inf")}}]})
    with pytest.raises(InvalidInput, match="unknown field"):
        dict_to_algebra({"dim": 2, "bracketts": []})
    with pytest.raises(InvalidInput, match="symmetric"):
        dict_to_algebra({"dim": 2, "metric": [[1.0, 2.0], [0.0, 1.0]]})


def test_parse_error_carries_location(tmp_path):
    path = tmp_path / "broken.json"
    path.write_text('{"dim": 2,\n  "brackets": [}\n')
    with pytest.raises(InvalidInput, match=r"broken\.json:2"):
        read_algebra(str(path))


def test_extension_roundtrip(tmp_path):
    data = ExtensionData(
        2,
        np.sqrt(2.0) * np.array([[0.0, -1.0], [1.0, 0.0]]),
        np.array([[0.0, 0.7], [0.0, 0.0]]),
        mu=0.25,
        b=np.array([0.125, -3.5]),
    )
    path = tmp_path / "ext.json"
    write_extension(str(path), data, basis_change=np.eye(4), comment="c")
    back, bc, comment = read_extension(str(path))
    assert np.array_equal(back.K, data.K)
    assert np.array_equal(back.D, data.D)
    assert np.array_equal(back.b, data.b)
    assert back.mu == 0.25
    assert np.array_equal(bc, np.eye(4))
    assert comment == "c"


def test_extension_defaults_and_validation():
    data, bc, comment = dict_to_extension(
        {"v_dim": 2, "K": [[0.0, 1.0], [-1.0, 0.0]], "D": [[0.0, 0.0], [0.0, 0.0]]}
    )
    assert data.mu == 0.0
    assert np.array_equal(data.b, np.zeros(2))
    assert bc is None and comment is None
    with pytest.raises(InvalidInput, match="v_dim"):
        dict_to_extension({"K": [], "D": []})
    with pytest.raises(InvalidInput, match="2x2"):
        dict_to_extension({"v_dim": 2, "K": [[0.0]], "D": [[0.0, 0.0], [0.0, 0.0]]})


def test_non_skew_k_warns_and_antisymmetrizes():
    doc = {"v_dim": 2, "K": [[0.0, 1.0], [0.5, 0.0]], "D": [[0.0, 0.0], [0.0, 0.0]]}
    with pytest.warns(UserWarning, match="skew"):
        data, _, _ = dict_to_extension(doc)
    assert np.array_equal(data.K, -data.K.T)


def test_json_floats_are_shortest_roundtrip(tmp_path):
    # the emitted text must parse back to the identical binary64 values
    g = Gram(np.array([[1.0 / 3.0, 0.0], [0.0, np.sqrt(5.0)]]))
    path = tmp_path / "g.json"
    write_algebra(str(path), LieAlgebra.abelian(2), g)
    raw = json.loads(path.read_text())
    assert raw["metric"][0][0] == 1.0 / 3.0
    assert raw["metric"][1][1] == np.sqrt(5.0)
