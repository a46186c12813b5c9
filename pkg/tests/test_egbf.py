import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gcas.core import CapacityError, DigitVector, ValidationError, index_to_digits
from gcas.egbf import (
    ExponentArray,
    Theorem1Function,
    Theorem2Function,
    eval_t1,
    eval_t2,
    materialize,
)
from gcas.sweep import random_chains

from conftest import TABLE_I, digit_rows, example1_fn


def reference_t1(fn, g, i):
    """Term-by-term evaluation written independently of the package."""
    z = [(g // fn.b**p) % fn.b for p in range(fn.m)] + [(i // fn.b**p) % fn.b for p in range(fn.n)]
    total = fn.lambda0
    for chain, coeffs in zip(fn.partitions, fn.d):
        for beta in range(len(chain) - 1):
            total += (fn.q // fn.b) * coeffs[beta] * z[chain[beta] - 1] * z[chain[beta + 1] - 1]
    for gamma in range(1, fn.q):
        for l in range(fn.m + fn.n):
            total += fn.lam[gamma - 1][l] * z[l] ** gamma
    return total % fn.q


def test_example1_scalar_values():
    fn = example1_fn()
    assert eval_t1(fn, DigitVector(2, [0]), DigitVector(2, [1, 1, 0])) == 3
    assert eval_t1(fn, DigitVector(2, [1]), DigitVector(2, [1, 0, 0])) == 3
    assert eval_t1(fn, DigitVector(2, [0]), DigitVector(2, [0, 0, 0])) == 0


def test_example1_materializes_table_i_first_member():
    fn = example1_fn()
    expected = digit_rows(TABLE_I[0])
    assert fn.to_array().tolist() == expected.tolist()
    scalar = materialize(lambda g, i: eval_t1(fn, g, i), 2, 1, 2, 3, q=6)
    assert scalar == fn.to_array()


def test_eval_rejects_wrong_digit_shapes():
    fn = example1_fn()
    with pytest.raises(ValidationError):
        eval_t1(fn, DigitVector(2, [0, 1]), DigitVector(2, [0, 0, 0]))
    with pytest.raises(ValidationError):
        eval_t1(fn, DigitVector(3, [0]), DigitVector(2, [0, 0, 0]))


def test_eval_t2_examples():
    zero = Theorem2Function(b1=2, b2=2, m=1, n=1, q=4, x_partitions=[[1]], y_partitions=[[1]])
    const = Theorem2Function(b1=2, b2=2, m=1, n=1, q=4, x_partitions=[[1]], y_partitions=[[1]],
                             lambda0=3)
    mono = Theorem2Function(b1=2, b2=2, m=1, n=1, q=4, x_partitions=[[1]], y_partitions=[[1]],
                            lam=[[2], [0], [0]])
    for g in range(2):
        for i in range(2):
            gd, idig = index_to_digits(g, 2, 1), index_to_digits(i, 2, 1)
            assert eval_t2(zero, gd, idig) == 0
            assert eval_t2(const, gd, idig) == 3
    assert eval_t2(mono, DigitVector(2, [1]), DigitVector(2, [0])) == 2
    assert mono.to_array().tolist() == [[0, 0], [2, 2]]


def test_materialize_trivial_cases():
    assert materialize(lambda g, i: 0, 2, 1, 2, 1, q=6).tolist() == [[0, 0], [0, 0]]
    assert materialize(lambda g, i: 5, 2, 1, 2, 1, q=6).tolist() == [[5, 5], [5, 5]]
    with pytest.raises(CapacityError):
        materialize(lambda g, i: 0, 2, 11, 2, 10, q=2)


def t1_functions():
    @st.composite
    def build(draw):
        b = draw(st.sampled_from([2, 3]))
        q = b * draw(st.sampled_from([1, 2, 4]))
        total = draw(st.integers(1, 4 if b == 2 else 3))
        m = draw(st.integers(1, total))
        k = draw(st.integers(1, total))
        rng = np.random.default_rng(draw(st.integers(0, 2**32 - 1)))
        chains = random_chains(rng, total, k)
        units = [u for u in range(1, b) if np.gcd(u, b) == 1]
        d = [[draw(st.sampled_from(units)) for _ in range(len(c) - 1)] for c in chains]
        lam = rng.integers(0, q, size=(q - 1, total)).tolist()
        return Theorem1Function(b=b, m=m, n=total - m, q=q, partitions=chains, d=d, lam=lam,
                                lambda0=draw(st.integers(0, q - 1)))
    return build()


@settings(max_examples=60, deadline=None)
@given(t1_functions())
def test_vectorized_matches_independent_reference(fn):
    arr = fn.to_array()
    assert arr.shape == (fn.b**fn.m, fn.b**fn.n)
    assert arr.entries.min() >= 0 and arr.entries.max() < fn.q
    for g in range(arr.rows):
        for i in range(arr.cols):
            assert arr.entries[g, i] == reference_t1(fn, g, i)
    assert materialize(lambda g, i: eval_t1(fn, g, i), fn.b, fn.m, fn.b, fn.n, q=fn.q) == arr


@settings(max_examples=40, deadline=None)
@given(t1_functions(), st.integers(0, 2**32 - 1))
def test_affine_part_is_linear(fn, seed):
    rng = np.random.default_rng(seed)
    other = rng.integers(0, fn.q, size=(fn.q - 1, fn.m + fn.n)).tolist()
    summed = (np.array(fn.lam) + np.array(other)) % fn.q

    def with_lam(lam):
        return Theorem1Function(b=fn.b, m=fn.m, n=fn.n, q=fn.q, partitions=fn.partitions, d=fn.d,
                                lam=lam, lambda0=fn.lambda0).to_array().entries

    zero = [[0] * (fn.m + fn.n)] * (fn.q - 1)
    lhs = with_lam(summed.tolist())
    # the chain terms and lambda0 appear in both summands; remove one copy
    rhs = (with_lam(fn.lam) + with_lam(other) - with_lam(zero)) % fn.q
    assert np.array_equal(lhs, rhs)


def test_singleton_chains_give_pure_affine_part():
    fn = Theorem1Function(b=2, m=2, n=2, q=4, partitions=[[1], [2], [3], [4]],
                          lam=[[1, 2, 3, 0], [0, 1, 0, 1], [2, 0, 0, 3]])
    arr = fn.to_array()
    for g in range(4):
        for i in range(4):
            assert arr.entries[g, i] == reference_t1(fn, g, i)


@pytest.mark.parametrize(
    "overrides, fragment",
    [
        (dict(d=[[0, 1, 1]]), "d not in U("),
        (dict(q=5), "must divide q"),
        (dict(partitions=[[4, 1, 2]]), "partition"),
        (dict(partitions=[[4, 1], [1, 2, 3]]), "partition"),
        (dict(m=0, n=4), "m must be at least 1"),
    ],
)
def test_violations(overrides, fragment):
    fn = example1_fn(**overrides)
    errs = fn.violations()
    assert any(fragment in e for e in errs), errs
    with pytest.raises(ValidationError):
        fn.to_array()


def test_exponent_array_validation():
    with pytest.raises(ValidationError):
        ExponentArray(4, [[0, 4]])
    a = ExponentArray(4, [[0, 3], [1, 2]])
    assert a.shape == (2, 2)
    assert hash(a) == hash(ExponentArray(4, [[0, 3], [1, 2]]))
    with pytest.raises(ValueError):
        a.entries[0, 0] = 1
