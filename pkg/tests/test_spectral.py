# tests/test_spectral.py
from fractions import Fraction

import numpy as np
import pytest

from smcmartin.chain.model import LetterRule, SmcModel
from smcmartin.errors import BudgetError, NotPrimitiveError
from smcmartin.spectral.frequencies import (
    branching_step,
    empirical_frequency,
    frequency_matrix,
    is_primitive,
    letter_counts,
    perron_frequencies,
)
from smcmartin.utils.words import Alphabet
from tests.helpers import w

F = Fraction


def test_frequency_matrices(m1, m2, m3):
    assert frequency_matrix(m2).entries == ((F(3, 2), F(1)), (F(1, 2), F(1)))
    assert frequency_matrix(m3).entries == (
        (F(1), F(0), F(0)),
        (F(1, 2), F(1), F(0)),
        (F(1, 2), F(0), F(1)),
    )
    assert frequency_matrix(m1).entries == ((F(1), F(0)), (F(1), F(1)))


def test_column_sums_are_expected_lengths(m2, m3):
    assert frequency_matrix(m2).column_sums() == (F(2), F(2))
    assert frequency_matrix(m3).column_sums() == (F(2), F(1), F(1))


def test_perron_eg2_is_exact(m2):
    result = perron_frequencies(frequency_matrix(m2))
    assert result.exact_eigenvalue == 2
    assert result.exact_vector == (F(2, 3), F(1, 3))
    assert result.vector == pytest.approx((2 / 3, 1 / 3), abs=1e-12)


def test_perron_residual_and_normalisation(m2):
    M = frequency_matrix(m2)
    result = perron_frequencies(M)
    A, e = M.to_numpy(), np.array(result.vector)
    assert np.allclose(A @ e, result.eigenvalue * e, atol=1e-12)
    assert abs(e.sum() - 1) < 1e-12 and (e > 0).all()


def test_not_primitive(m3):
    assert not is_primitive(frequency_matrix(m3))
    with pytest.raises(NotPrimitiveError):
        perron_frequencies(frequency_matrix(m3))
    identity = SmcModel(
        alphabet=Alphabet(symbols=("a", "b")),
        rules={c: LetterRule(letter=c, entries={(c,): F(1)}) for c in "ab"},
    )
    with pytest.raises(NotPrimitiveError):
        perron_frequencies(frequency_matrix(identity))


def test_letter_counts(m2):
    counts = letter_counts(w("abba"), m2.alphabet)
    assert counts.counts == (2, 2)
    assert counts.length == 4
    assert letter_counts(w("a"), m2.alphabet).counts == (1, 0)


def test_empirical_frequency_eg2(m2):
    freqs = empirical_frequency(m2, w("a"), steps=15, runs=200, seed=2024)
    assert abs(freqs[0] - 2 / 3) < 0.05
    assert freqs == empirical_frequency(m2, w("a"), steps=15, runs=200, seed=2024)


def test_empirical_frequency_edge_cases(m1, m2):
    assert empirical_frequency(m2, w("ab"), steps=0, runs=1, seed=1) == (0.5, 0.5)
    assert empirical_frequency(m1, w("a"), steps=50, runs=5, seed=1)[0] == pytest.approx(1 / 51)


def test_branching_mean_matches_frequency_matrix(m2):
    M = frequency_matrix(m2).to_numpy()
    gen = np.random.default_rng(7)
    z = np.array([3, 2])
    draws = np.array([branching_step(m2, z, gen) for _ in range(20000)])
    mean = draws.mean(axis=0)
    expected = M @ z
    assert np.all(np.abs(mean - expected) / expected < 0.05)
    assert (draws.sum(axis=1) == 2 * z.sum()).all()


def test_branching_counts_stop_before_int64_overflow(m2):
    with pytest.raises(BudgetError):
        empirical_frequency(m2, w("a"), steps=70, runs=1, seed=1)
    with pytest.raises(BudgetError):
        branching_step(m2, np.array([2 ** 61, 1]), np.random.default_rng(1))
