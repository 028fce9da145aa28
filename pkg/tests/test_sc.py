import itertools
import math

import numpy as np
import pytest

from spcpc import ERASED, ProductCode, local_spc_output, sc_decode, sc_decode_erasure, sc_decode_ternary
from spcpc.analysis import bit_erasure_profile
from spcpc.sc import format_ternary, parse_ternary, ternary_to_llr

import oracles

INF = math.inf
EXAMPLE_Y = "e010eeee1"


def test_local_recovers_from_parity():
    assert local_spc_output([0.0, INF, INF], [], 0) == INF


def test_local_erasure_persists():
    assert local_spc_output([0.0, 0.0, INF], [], 0) == 0.0


def test_local_value_against_map():
    value = local_spc_output([0.5, 0.5, 0.5], [], 0)
    assert value == pytest.approx(oracles.spc_bit_map_llr([0.5, 0.5, 0.5], 0, []), abs=1e-12)
    assert value == pytest.approx(0.5 + 2 * math.atanh(math.tanh(0.25) ** 2), abs=1e-12)
    assert value == pytest.approx(0.6201, abs=1e-4)


@pytest.mark.parametrize("rho", [[0.3, 0.8, -1.1], [-2.0, 0.4, 0.9], [1.5, -0.2, 3.0, -0.7]])
def test_local_lambda_sign_flip_matches_map(rho):
    for lam in itertools.product((0, 1), repeat=1):
        expect = oracles.spc_bit_map_llr(rho, 1, list(lam))
        assert local_spc_output(rho, list(lam), 1) == pytest.approx(expect, abs=1e-12)
    ext0 = local_spc_output(rho, [0], 1) - rho[1]
    ext1 = local_spc_output(rho, [1], 1) - rho[1]
    assert ext1 == pytest.approx(-ext0)


def test_local_erased_lambda_returns_channel_term():
    assert local_spc_output([0.0, 0.7, -INF], [ERASED], 1) == 0.7


def test_local_large_llrs_stay_finite():
    out = local_spc_output([1.0, 300.0, 300.0], [], 0)
    assert math.isfinite(out) and out > 30


def test_local_index_errors():
    with pytest.raises(IndexError):
        local_spc_output([0.1, 0.2, 0.3], [0, 1], 2)
    with pytest.raises(ValueError):
        local_spc_output([0.1, 0.2, 0.3], [0], 0)


def test_mixed_erasure_word_llr_domain(c33, backend):
    llr = ternary_to_llr(parse_ternary(EXAMPLE_Y))
    assert sc_decode(c33, llr, channel="bec").tolist() == [1, 0, 0, 0]


def test_mixed_erasure_word_ternary(c33, backend):
    assert sc_decode_ternary(c33, parse_ternary(EXAMPLE_Y)).tolist() == [1, 0, 0, 0]
    erased = np.array([s == "e" for s in EXAMPLE_Y])
    assert sc_decode_erasure(c33, erased, c33.encode([1, 0, 0, 0])).tolist() == [1, 0, 0, 0]


def test_noiseless_all_zero(c33, backend):
    assert not sc_decode(c33, np.full(9, INF)).any()


def test_empty_and_full_patterns(c33, backend):
    msg = np.array([0, 1, 1, 0])
    assert sc_decode_erasure(c33, np.zeros(9, bool), c33.encode(msg)).tolist() == msg.tolist()
    assert (sc_decode_erasure(c33, np.ones(9, bool)) == ERASED).all()


def test_matches_straightline_oracle_all_patterns(c33, backend):
    masks = ((np.arange(512)[:, None] >> np.arange(9)) & 1).astype(bool)
    out = sc_decode_erasure(c33, masks)
    for p in range(512):
        y = ["e" if masks[p, i] else 0 for i in range(9)]
        expect = [ERASED if v == "e" else v for v in oracles.sc_94_straightline(y)]
        assert out[p].tolist() == expect, p


def test_codeword_independence(c33, backend):
    masks = ((np.arange(512)[:, None] >> np.arange(9)) & 1).astype(bool)
    ref = sc_decode_erasure(c33, masks) == ERASED
    for msg in itertools.product((0, 1), repeat=4):
        out = sc_decode_erasure(c33, masks, c33.encode(msg))
        assert np.array_equal(out == ERASED, ref)
        known = ~ref
        assert np.array_equal(out[known], np.broadcast_to(np.array(msg), out.shape)[known])


def test_domain_equivalence(c33, backend):
    masks = ((np.arange(512)[:, None] >> np.arange(9)) & 1).astype(bool)
    rng = np.random.default_rng(3)
    msgs = rng.integers(0, 2, size=(512, 4))
    cws = c33.encode(msgs)
    rx = np.where(masks, ERASED, cws).astype(np.int8)
    assert np.array_equal(sc_decode_ternary(c33, rx), sc_decode(c33, ternary_to_llr(rx), channel="bec"))


@pytest.mark.parametrize("dims", [(3, 3), (4, 3), (2, 2, 2), (3, 3, 2), (2, 3, 2), (4, 4)])
def test_noiseless_exhaustive(dims, backend):
    code = ProductCode(dims)
    assert code.k <= 12
    msgs = np.array(list(itertools.product((0, 1), repeat=code.k)))
    llr = np.where(code.encode(msgs) == 1, -INF, INF)
    assert np.array_equal(sc_decode(code, llr), msgs)
    assert np.array_equal(sc_decode(code, llr, channel="bec"), msgs)


def test_awgn_tie_goes_to_zero(c33):
    assert sc_decode(c33, np.zeros(9)).tolist() == [0, 0, 0, 0]
    assert (sc_decode(c33, np.zeros(9), channel="bec") == ERASED).all()


def test_determinism(backend):
    code = ProductCode((4, 4, 3))
    llr = np.random.default_rng(11).normal(1.0, 1.5, size=(50, code.n))
    a, ra = sc_decode(code, llr, return_roots=True)
    b, rb = sc_decode(code, llr, return_roots=True)
    assert np.array_equal(a, b) and np.array_equal(ra, rb)


def test_length_mismatch(c33):
    with pytest.raises(ValueError):
        sc_decode(c33, np.zeros(8))
    with pytest.raises(ValueError):
        sc_decode(c33, np.zeros(9), channel="bsc")


def test_genie_matches_de_chain(backend):
    # per-bit erasure rate with correct feedback vs the recursion, 3 sigma
    code = ProductCode((4, 4, 3))
    eps, trials = 0.25, 20000
    rng = np.random.default_rng(2024)
    masks = rng.random((trials, code.n)) < eps
    out = sc_decode_erasure(code, masks, genie=np.zeros(code.k, dtype=np.int8))
    freq = (out == ERASED).mean(axis=0)
    q = bit_erasure_profile(code, eps)
    sigma = np.sqrt(q * (1 - q) / trials)
    assert np.all(np.abs(freq - q) <= 3 * sigma + 1e-12)


def test_ternary_text_round_trip():
    assert format_ternary(parse_ternary("e0,1 e")) == "e01e"
    with pytest.raises(ValueError):
        parse_ternary("0x1")
