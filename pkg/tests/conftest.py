"""Shared fixtures: one representative pair per admissible-family table row."""

import pytest

from spinorflow import CauchyPair, LapseProfile

ROW_PAIRS = {
    "R3": CauchyPair.from_components(uu=1.0),
    "E11": CauchyPair.from_components(ll=1.0, nn=-1.0),
    "tau2R-lambda": CauchyPair.from_components(ul=0.6, un=0.8),
    "tau2R-qd": CauchyPair.from_components(uu=1.0, ll=1.0),
    "tau2R-ul": CauchyPair.from_components(uu=-2.0, ul=1.0, ll=2.0),
    "tau2R-un": CauchyPair.from_components(uu=-2.0, un=1.0, nn=2.0),
    "tau2R-general": CauchyPair.from_components(
        uu=-2.0, ul=1.0, un=1.0, ll=1.0, ln=1.0, nn=1.0),
    "tau3mu": CauchyPair.from_components(uu=5.0 / 3.0, ll=2.0, nn=1.0),
}

CONSTRAINED_PAIRS = {
    "R3": ROW_PAIRS["R3"],
    "tau2R-qd": ROW_PAIRS["tau2R-qd"],
    "tau3mu": ROW_PAIRS["tau3mu"],
    "minkowski": CauchyPair.from_components(),
}


@pytest.fixture
def unit_lapse():
    return LapseProfile.constant(1.0)


@pytest.fixture(params=sorted(ROW_PAIRS), ids=sorted(ROW_PAIRS))
def row_pair(request):
    return ROW_PAIRS[request.param]


@pytest.fixture(params=sorted(CONSTRAINED_PAIRS), ids=sorted(CONSTRAINED_PAIRS))
def constrained_pair(request):
    return CONSTRAINED_PAIRS[request.param]
