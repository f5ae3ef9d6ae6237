"""Dimension formula oracle self-checks against classical known values."""

from heckelift.dims import (
    dim_cusp_forms,
    dim_eisenstein,
    dim_new_cusp_forms,
    genus,
    index_mu,
    num_cusps,
    sturm_bound,
)


def test_index_values():
    assert index_mu(11) == 12
    assert index_mu(110) == 216
    assert index_mu(522) == 1080
    assert index_mu(1) == 1


def test_cusp_counts():
    # X0(11) has the two cusps 0 and infinity
    assert num_cusps(11) == 2
    assert num_cusps(22) == 4
    assert num_cusps(110) == 8


def test_genus_known_values():
    # classical: X0(11) is the first elliptic modular curve
    assert genus(11) == 1
    assert genus(22) == 2
    assert genus(37) == 2
    assert genus(110) == 15


def test_dim_cusp_forms_known():
    assert dim_cusp_forms(11, 2) == 1
    assert dim_cusp_forms(5, 4) == 1
    assert dim_cusp_forms(22, 4) == 7
    assert dim_cusp_forms(13, 4) == 3
    assert dim_cusp_forms(23, 4) == 5
    assert dim_cusp_forms(18, 4) == 5
    assert dim_cusp_forms(110, 4) == 50


def test_new_subspace_dimensions():
    assert dim_new_cusp_forms(22, 4) == 3
    assert dim_new_cusp_forms(10, 4) == 1
    assert dim_new_cusp_forms(110, 4) == 10


def test_eisenstein():
    assert dim_eisenstein(11, 2) == 1
    assert dim_eisenstein(22, 4) == 4


def test_sturm_bound():
    assert sturm_bound(11, 4) == 4
    assert sturm_bound(110, 4) == 72
    assert sturm_bound(1, 2) == 0
    assert sturm_bound(522, 4) == 360
