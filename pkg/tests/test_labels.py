import pytest

from qsl3.errors import DomainError
from qsl3.labels import (ALPHA, EMPTY_LABEL, MonomialLabel, SHAPE121, SHAPE212,
                         Weight, basis_labels, in_basis_set, label_from_factors,
                         make_label, weyl_dim)


def test_weight_arithmetic():
    w = Weight(1, 0)
    assert w + ALPHA[1] == Weight(3, -1)
    assert w - ALPHA[2] == Weight(2, -2)
    assert (-w).as_tuple() == (-1, 0)
    assert w.pairing(1) == 1 and w.pairing(2) == 0
    assert Weight(2, 5).swapped() == Weight(5, 2)


def test_label_grading():
    lab = MonomialLabel(SHAPE212, 1, 3, 2)
    assert lab.tr == 6
    assert lab.nu() == (3, 3)
    assert lab.root_shift() == ALPHA[1].scaled(3) + ALPHA[2].scaled(3)
    lab2 = MonomialLabel(SHAPE121, 1, 4, 2)
    assert lab2.nu() == (3, 4)
    assert lab2.factors() == ((1, 1), (2, 4), (1, 2))


def test_make_label_boundary_normalization():
    # t1^(x) t2^(x+z) t1^(z) is the same word as t2^(z) t1^(x+z) t2^(x)
    assert make_label(SHAPE121, 1, 3, 2) == MonomialLabel(SHAPE212, 2, 3, 1)
    assert make_label(SHAPE212, 1, 3, 2) == MonomialLabel(SHAPE212, 1, 3, 2)
    with pytest.raises(DomainError):
        make_label(SHAPE212, 2, 1, 0)
    with pytest.raises(DomainError):
        make_label(SHAPE212, -1, 1, 0)


def test_label_from_factors():
    assert label_from_factors([]) == EMPTY_LABEL
    assert label_from_factors([(1, 4)]) == MonomialLabel(SHAPE212, 0, 4, 0)
    assert label_from_factors([(2, 3)]) == MonomialLabel(SHAPE121, 0, 3, 0)
    assert label_from_factors([(2, 1), (1, 2), (2, 1)]) == MonomialLabel(SHAPE212, 1, 2, 1)
    assert label_from_factors([(2, 1), (1, 2)]) == MonomialLabel(SHAPE212, 1, 2, 0)
    assert label_from_factors([(1, 1), (2, 2)]) == MonomialLabel(SHAPE121, 1, 2, 0)
    # boundary word lands in shape 212
    assert label_from_factors([(1, 1), (2, 3), (1, 2)]) == MonomialLabel(SHAPE212, 2, 3, 1)
    # a 2-then-1 word may still be dominant through the 1-2-1 padding
    assert label_from_factors([(2, 2), (1, 1)]) == MonomialLabel(SHAPE121, 0, 2, 1)
    with pytest.raises(DomainError):
        label_from_factors([(2, 1), (1, 1), (2, 1)])   # not dominant


def test_enumerate_B_small():
    assert basis_labels(Weight(0, 0)) == [EMPTY_LABEL]
    labs = basis_labels(Weight(1, 0))
    assert len(labs) == 3
    assert all(lab.shape == SHAPE212 for lab in labs)   # no second set when b = 0
    assert len(basis_labels(Weight(1, 1))) == 8


def test_enumerate_B_weyl_dimension():
    for a in range(0, 5):
        for b in range(0, 5 - a):
            assert len(basis_labels(Weight(a, b))) == weyl_dim(a, b)


def test_enumerate_B_order_deterministic():
    labs = basis_labels(Weight(2, 1))
    keys = [lab.sort_key() for lab in labs]
    assert keys == sorted(keys)
    assert len(set(labs)) == len(labs)


def test_enumerate_B_rejects_non_dominant():
    with pytest.raises(DomainError):
        basis_labels(Weight(-1, 0))


def test_in_B():
    lam = Weight(1, 1)
    labs = set(basis_labels(lam))
    assert all(in_basis_set(lab, lam) for lab in labs)
    bigger = set(basis_labels(Weight(2, 2)))
    for lab in bigger - labs:
        assert not in_basis_set(lab, lam)
