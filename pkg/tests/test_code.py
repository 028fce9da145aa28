import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from spcpc.code import ProductCode

import oracles


specs = st.lists(st.integers(2, 5), min_size=1, max_size=3).filter(lambda d: np.prod(d) <= 64)


def test_parameters_33(c33):
    assert (c33.m, c33.n, c33.k, c33.d, c33.a_min) == (2, 9, 4, 4, 9)
    assert c33.eta == (3, 2)
    assert c33.rate == pytest.approx(4 / 9)


@pytest.mark.parametrize(
    "dims, n, k, d, a",
    [((3,), 3, 2, 2, 3), ((5, 5, 5), 125, 64, 8, 1000), ((6, 6, 6), 216, 125, 8, 3375), ((4, 3, 2), 24, 6, 8, 18)],
)
def test_closed_forms(dims, n, k, d, a):
    code = ProductCode(dims)
    assert (code.n, code.k, code.d, code.a_min) == (n, k, d, a)


@given(specs)
def test_eta_invariants(dims):
    code = ProductCode(tuple(dims))
    assert code.eta[0] * code.dims[0] == code.n
    assert code.eta[-1] * (code.dims[-1] - 1) == code.k
    for lvl in range(code.m):
        assert code.eta[lvl] * code.dims[lvl] == np.prod(code.info_dims[:lvl]) * np.prod(code.dims[lvl:])


@pytest.mark.parametrize("bad", [(), (1, 3), (3, 0)])
def test_invalid_spec(bad):
    with pytest.raises(ValueError):
        ProductCode(bad)


def test_parse():
    assert ProductCode.parse("5, 5,5").dims == (5, 5, 5)
    with pytest.raises(ValueError):
        ProductCode.parse("3,a")


def test_message_index_3_is_row1_col2(c33):
    # 1-based message index 3 <-> (c_1=2, c_2=1) <-> codeword position 2
    assert c33.message_coords(2) == (1, 0)
    assert c33.codeword_index((1, 0)) == 1


def test_single_level_map_is_identity():
    code = ProductCode((3,))
    assert [code.message_coords(t) for t in range(2)] == [(0,), (1,)]
    assert list(code.info_positions) == [0, 1]


@given(specs)
def test_index_round_trips(dims):
    code = ProductCode(tuple(dims))
    for t in range(code.n):
        assert code.codeword_index(code.codeword_coords(t)) == t
    for t in range(code.k):
        coords = code.message_coords(t)
        assert code.message_index(coords) == t
        assert code.is_info(code.codeword_coords(code.codeword_index(coords)))
    assert list(code.info_positions) == oracles.info_positions(tuple(dims))


def test_index_out_of_range(c33):
    with pytest.raises(IndexError):
        c33.message_coords(4)
    with pytest.raises(IndexError):
        c33.codeword_coords(9)
    with pytest.raises(IndexError):
        c33.codeword_index((3, 0))


def test_encode_example(c33):
    assert c33.encode([1, 0, 0, 0]).tolist() == [1, 0, 1, 0, 0, 0, 1, 0, 1]
    assert not c33.encode([0, 0, 0, 0]).any()


def test_encode_matches_unique_codeword_of_example_received(c33):
    y = ["e", 0, 1, 0, "e", "e", "e", "e", 1]
    book = oracles.codebook((3, 3))
    hits = [w for w in book if all(s == "e" or w[i] == s for i, s in enumerate(y))]
    assert len(hits) == 1
    assert hits[0].tolist() == c33.encode([1, 0, 0, 0]).tolist()


@pytest.mark.parametrize("dims", [(3, 3), (2, 3), (3, 2, 2)])
def test_encoder_matches_parity_codebook(dims):
    code = ProductCode(dims)
    book = {tuple(w) for w in oracles.codebook(dims)}
    assert len(book) == 2**code.k
    pos = oracles.info_positions(dims)
    for msg in itertools.product((0, 1), repeat=code.k):
        cw = code.encode(msg)
        assert tuple(cw) in book
        assert cw[pos].tolist() == list(msg)


def test_weight4_count_33(c33):
    msgs = np.array(list(itertools.product((0, 1), repeat=4)))
    w = c33.encode(msgs).sum(axis=1)
    assert np.count_nonzero(w == 4) == 9


def test_encode_length_mismatch(c33):
    with pytest.raises(ValueError):
        c33.encode([1, 0, 1])


def test_generator_single_spc():
    assert ProductCode((3,)).generator_matrix().tolist() == [[1, 0, 1], [0, 1, 1]]


def test_generator_exhaustive_33(c33):
    g = c33.generator_matrix()
    for msg in itertools.product((0, 1), repeat=4):
        assert ((np.array(msg) @ g) % 2).tolist() == c33.encode(msg).tolist()


@pytest.mark.parametrize("dims", [(4, 3, 2), (3, 3, 3), (4, 4), (2, 5, 3)])
def test_generator_random(dims):
    code = ProductCode(dims)
    rng = np.random.default_rng(7)
    msgs = rng.integers(0, 2, size=(1000, code.k))
    assert np.array_equal((msgs @ code.generator_matrix()) % 2, code.encode(msgs))


@given(specs, st.data())
@settings(max_examples=40)
def test_linearity_and_parity(dims, data):
    code = ProductCode(tuple(dims))
    a = np.array(data.draw(st.lists(st.integers(0, 1), min_size=code.k, max_size=code.k)))
    b = np.array(data.draw(st.lists(st.integers(0, 1), min_size=code.k, max_size=code.k)))
    assert np.array_equal(code.encode(a ^ b), code.encode(a) ^ code.encode(b))
    assert code.parity_violations(code.encode(a)) == 0
    assert code.is_codeword(code.encode(a))


def test_parity_violations_detects_flip(c33):
    cw = c33.encode([1, 0, 1, 1])
    cw[4] ^= 1
    # the flipped bit sits on one line per level
    assert c33.parity_violations(cw) == 2


@given(specs, st.data())
@settings(max_examples=30)
def test_dimension_order_independence(dims, data):
    code = ProductCode(tuple(dims))
    msg = np.array(data.draw(st.lists(st.integers(0, 1), min_size=code.k, max_size=code.k)))
    ref = code.encode(msg)
    for order in itertools.permutations(range(code.m)):
        assert np.array_equal(code.encode_in_order(msg, order), ref)


@pytest.mark.parametrize("dims, expected", [((3, 3), (4, 9)), ((4, 4), (4, 36)), ((3,), (2, 3))])
def test_min_distance_examples(dims, expected):
    assert ProductCode(dims).min_distance_bruteforce() == expected


@pytest.mark.parametrize("dims", [(2,), (5,), (2, 2), (2, 3), (3, 4), (2, 2, 2), (3, 3, 2), (2, 2, 2, 2), (5, 5), (2, 3, 4)])
def test_min_distance_matches_closed_form(dims):
    code = ProductCode(dims)
    assert code.k <= 16
    assert code.min_distance_bruteforce() == (code.d, code.a_min)


def test_min_distance_refuses_large_k():
    with pytest.raises(ValueError, match="k<=20"):
        ProductCode((5, 5, 5)).min_distance_bruteforce()
