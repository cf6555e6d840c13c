from fractions import Fraction as F

import numpy as np
import pytest
from sklearn.base import clone
from sklearn.exceptions import NotFittedError

from latcount import LatticePointCounter
from latcount.errors import DimensionError, RankError, UnboundedError

A3 = [[1, 0, 1], [0, 1, 1]]


def test_params_and_clone():
    est = LatticePointCounter(method="dual", random_state=5)
    assert est.get_params() == {"method": "dual", "starred": True, "random_state": 5,
                                "budget": 10 ** 6}
    twin = clone(est).set_params(starred=False)
    assert twin.method == "dual" and twin.starred is False and est.starred is True


@pytest.mark.parametrize("method", ["primal", "dual", "table", "oracle"])
def test_predict_every_method(method):
    est = LatticePointCounter(method=method).fit(np.array(A3))
    assert est.n_constraints_ == 2 and est.n_features_in_ == 3
    got = est.predict([[2, 1], [1, 1], [3, 3], [0, 0], [-1, 2]])
    assert got.tolist() == [2, 2, 4, 1, 0]
    assert LatticePointCounter(method=method).fit([[1, 2]]).predict([4, 5, 0]).tolist() == [3, 3, 1]


def test_unstarred_matches_starred():
    A = [[2, 0, 1, 1], [0, 3, 1, 2]]
    Y = [[4, 6], [5, 7], [8, 9]]
    a = LatticePointCounter(starred=True).fit(A).predict(Y)
    b = LatticePointCounter(starred=False).fit(A).predict(Y)
    c = LatticePointCounter(method="oracle").fit(A).predict(Y)
    assert a.tolist() == b.tolist() == c.tolist()


def test_transform():
    est = LatticePointCounter().fit([[1, 2]])
    vals = est.transform([[4], [5]], ["1/2", F(1, 3)])
    assert vals.dtype == object
    assert list(vals) == [F(37, 144), F(1, 32) + F(1, 24) + F(1, 18)]
    oracle = LatticePointCounter(method="oracle").fit([[1, 2]])
    assert list(oracle.transform([[4]], [0.5, F(1, 3)])) == [F(37, 144)]


def test_errors():
    with pytest.raises(NotFittedError):
        LatticePointCounter().predict([[1]])
    with pytest.raises(ValueError):
        LatticePointCounter(method="nope").fit([[1, 2]])
    with pytest.raises(RankError):
        LatticePointCounter().fit([[1, 1], [2, 2]])
    with pytest.raises(UnboundedError):
        LatticePointCounter().fit([[1, -1]]).predict([[1]])
    with pytest.raises(DimensionError):
        LatticePointCounter().fit(A3).predict([[1, 2, 3]])
