import os
import subprocess
from fractions import Fraction

import pytest

import kacmoody as km

A2 = [[2, -1], [-1, 2]]
A1T = [[2, -2], [-2, 2]]


def test_classify():
    assert km.classify(A1T) == [([0, 1], "Affine")]
    assert km.classify([[2, 0], [0, 2]]) == [([0], "Finite"), ([1], "Finite")]
    assert km.vinberg_classify([[2, -3], [-3, 2]]) == "Indefinite"


def test_roots_and_constants():
    roots = km.Algebra(A2).positive_roots(5)
    assert len(roots) == 3
    assert all(mult == 1 and real for _, mult, real in roots)
    assert km.commutator_table(A2, [1, 0], [0, 1]) == [([1, 1], 1, 1, 1)]
    for root, mult, real in km.Algebra(A1T).positive_roots(6):
        assert mult == 1
        assert real == (root[0] != root[1])


def test_adjoint_action():
    terms = km.ad_eval(A1T, "x[1,0](2)", [0, 1])
    assert [c for _, _, c in terms] == [Fraction(1), Fraction(2), Fraction(2)]
    with pytest.raises(km.KacMoodyError):
        km.ad_eval(A1T, "x[1,0](2)", [1, 1])


def test_loop_group():
    assert km.realize_word("s[0]") == "0;t^-1;-t;0"
    assert km.iwahori_bruhat("0;t^-1;-t;0") == [0]
    word = [0, 1, 1, 0, 1]
    m = km.realize_word(" ".join(f"s[{i}]" for i in word))
    assert km.iwahori_bruhat(m) == km.reduced_word(A1T, word)
    assert km.oracle_run(5, 7, height=4)["failed"] == 0


@pytest.mark.skipif("KMTOOL" not in os.environ, reason="kmtool not built")
def test_cli_is_deterministic():
    cmd = [os.environ["KMTOOL"], "oracle", "--words", "5", "--seed", "9",
           "--gcm", os.path.join(os.environ["KM_FIXTURES"], "a1_affine.gcm")]
    first = subprocess.run(cmd, capture_output=True, check=True).stdout
    second = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert first == second
    assert first.decode().strip().splitlines()[-1].endswith('"failed":0}')
