"""Cross-module pipeline checks on laws outside the built-in families."""

import math

import pytest

from levycrit import (
    Classification,
    PowerPiece,
    Status,
    bin_density,
    classify,
    inverse_cubic_density_criterion,
    inverse_cubic_lattice_criterion,
    make_piecewise_power,
    make_walk_triplet,
    sato_shepp_criterion,
)


def _flat_core_power(rho: float) -> "SymmetricJumpLaw":
    # probability density: constant on [0, 1], a y^-rho beyond, one free scale
    a = (rho - 1.0) / (2.0 * rho)
    law = make_piecewise_power(
        [PowerPiece(0.0, 1.0, ((a, 0.0),)), PowerPiece(1.0, math.inf, ((a, rho),))]
    )
    assert abs(law.total_mass - 1.0) < 1e-12
    return law


class TestNonFamilyClassification:
    def test_heavy_tail_walk_is_transient(self):
        law = _flat_core_power(1.8)
        verdict = classify(make_walk_triplet(law))
        assert verdict.classification is Classification.TRANSIENT
        assert not verdict.conflict
        by_name = {e.criterion: e for e in verdict.evidence}
        assert by_name["chung_fuchs"].implication == "transient"
        assert by_name["inverse_cubic"].verdict.status is Status.CONVERGES

    def test_lighter_tail_walk_is_recurrent(self):
        law = _flat_core_power(2.2)
        verdict = classify(make_walk_triplet(law))
        assert verdict.classification is Classification.RECURRENT
        assert not verdict.conflict
        by_name = {e.criterion: e for e in verdict.evidence}
        assert by_name["sato_shepp"].implication == "recurrent"

    def test_unimodal_assertion_adds_route(self):
        law = _flat_core_power(1.8)  # nonincreasing density, safe to assert
        verdict = classify(make_walk_triplet(law), unimodal=True)
        by_name = {e.criterion: e for e in verdict.evidence}
        assert by_name["sato_shepp"].implication == "transient"
        assert verdict.classification is Classification.TRANSIENT


class TestDiscretizationTransfer:
    @pytest.mark.parametrize("rho,expected", [
        (1.8, Classification.TRANSIENT),
        (2.2, Classification.RECURRENT),
    ])
    def test_binned_walk_matches_continuous_type(self, rho, expected):
        # the unit-bin walk shares the continuous walk's type; the binned
        # law's certified tail envelope must be enough to decide it
        law = _flat_core_power(rho)
        binned = bin_density(law, 1.0)
        verdict = classify(make_walk_triplet(binned))
        assert verdict.classification is expected
        ic_cont = inverse_cubic_density_criterion(law)
        ic_disc = inverse_cubic_lattice_criterion(binned)
        assert ic_cont.status == ic_disc.status

    def test_binned_sato_shepp_matches(self):
        law = _flat_core_power(1.8)
        binned = bin_density(law, 0.5)
        assert sato_shepp_criterion(binned).status == sato_shepp_criterion(law).status
