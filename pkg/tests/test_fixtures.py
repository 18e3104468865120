"""Named cocycle catalogues: cocycle status, bracket tables, recorded isos."""

import pytest

from tamecoh.cohomology import hh
from tamecoh.families import FamilyError, make
from tamecoh.field import Field
from tamecoh.fixtures import (
    FIXTURE_FAMILIES,
    fixture_check,
    fixtures_for,
    iso_matrix,
    quaternion_scaling_map,
    sd2b1_swap_map,
    sd2b1_to_sd2b2_map,
    sd_local_scaling_map,
)
from tamecoh.lie import check_bracket_table, from_cohomology, verify_iso

GF2 = Field(2)
GF3 = Field(3)
GF4 = Field(2, 2)
GF5 = Field(5)


def checked(inst):
    """Fixture set of an instance, with both reports asserted along the way."""
    space = hh(inst.resolution, 1)
    fix = fixtures_for(inst)
    rep = fixture_check(space, fix)
    assert rep["passed"], [e for e in rep["entries"] if not e[1]]
    table = check_bracket_table(space, fix)
    assert table["passed"], [e for e in table["entries"] if not e[2]]
    return space, fix


# ---------------------------------------------------------------------------
# catalogue checks, one family at a time
# ---------------------------------------------------------------------------


@pytest.mark.parametrize("k", [2, 3])
@pytest.mark.parametrize("c,d", [(0, 0), (1, 0), (0, 1), (1, 1)])
def test_sd_local_catalogue(k, c, d):
    if (c, d) == (0, 0):
        inst = make("SD1A1", GF2, k=k)
    else:
        inst = make("SD1A2", GF2, k=k, c=c, d=d)
    _, fix = checked(inst)
    assert len(fix.basis) == inst.hh1_dim


def test_sd_local_catalogue_extension_field():
    _, fix = checked(make("SD1A2", GF4, k=2, c=2, d=3))
    assert len(fix.basis) == 7


@pytest.mark.parametrize("k", [2, 3])
@pytest.mark.parametrize("c,d", [(0, 0), (1, 0), (0, 1), (1, 1)])
def test_quaternion_catalogue(k, c, d):
    if (c, d) == (0, 0):
        inst = make("Q1A1", GF2, k=k)
    else:
        inst = make("Q1A2", GF2, k=k, c=c, d=d)
    _, fix = checked(inst)
    assert len(fix.basis) == inst.hh1_dim


@pytest.mark.parametrize("c,d", [(2, 0), (0, 3), (3, 2), (2, 2)])
def test_quaternion_catalogue_k2_extension_field(c, d):
    # (3, 2) sits on the locus cd = 1 where the whole algebra is nilpotent
    checked(make("Q1A2", GF4, k=2, c=c, d=d))


@pytest.mark.parametrize("field", [GF2, GF3, GF5])
@pytest.mark.parametrize("k,s", [(2, 2), (2, 3), (3, 2)])
def test_sd2b1_catalogue(field, k, s):
    for c in (0, 1):
        inst = make("SD2B1", field, k=k, s=s, c=c)
        _, fix = checked(inst)
        assert len(fix.basis) == inst.hh1_dim, inst.label


@pytest.mark.parametrize("field", [GF2, GF3, GF5])
@pytest.mark.parametrize("k,s", [(2, 2), (3, 2), (3, 3)])
def test_sd2b2_catalogue(field, k, s):
    for c in (0, 1):
        inst = make("SD2B2", field, k=k, s=s, c=c)
        _, fix = checked(inst)
        assert len(fix.basis) == inst.hh1_dim, inst.label


def test_sd2b1_records_full_coboundary_basis():
    inst = make("SD2B1", GF2, k=2, s=3, c=1)
    space = hh(inst.resolution, 1)
    fix = fixtures_for(inst)
    assert fix.coboundaries
    rep = fixture_check(space, fix)
    names = dict((n, ok) for n, ok in rep["entries"])
    assert names["coboundary list spans the coboundaries"]


def test_families_without_catalogue_are_refused():
    inst = make("D1A2", GF2, k=2, d=1)
    assert inst.family not in FIXTURE_FAMILIES
    with pytest.raises(FamilyError, match="no named cocycle fixtures"):
        fixtures_for(inst)


def test_vec_accepts_names_and_combinations():
    inst = make("SD1A1", GF2, k=2)
    space = hh(inst.resolution, 1)
    fix = fixtures_for(inst)
    f = fix.field
    single = fix.vec("chi")
    combo = fix.vec({"chi": 1, "phi_1": 1})
    assert space.is_cocycle(single)
    assert space.same_class(f.sub(combo, single), fix.vec("phi_1"))


# ---------------------------------------------------------------------------
# recorded isomorphisms
# ---------------------------------------------------------------------------


def iso_holds(inst_a, inst_b, mapping):
    sa, sb = hh(inst_a.resolution, 1), hh(inst_b.resolution, 1)
    fa, fb = fixtures_for(inst_a), fixtures_for(inst_b)
    mat = iso_matrix(sa, fa, sb, fb, mapping)
    return verify_iso(from_cohomology(sa), from_cohomology(sb), mat)


def test_sd_local_scaling_iso():
    a = make("SD1A2", GF4, k=3, c=2, d=1)
    b = make("SD1A2", GF4, k=3, c=3, d=1)
    assert iso_holds(a, b, sd_local_scaling_map(GF4, 3, 2, 3))


def test_quaternion_scaling_iso():
    a = make("Q1A2", GF4, k=3, c=0, d=2)
    b = make("Q1A2", GF4, k=3, c=0, d=3)
    assert iso_holds(a, b, quaternion_scaling_map(GF4, 3, 2, 3))


@pytest.mark.parametrize("field", [GF2, GF3])
def test_sd2b1_swap_iso(field):
    a = make("SD2B1", field, k=2, s=3, c=0)
    b = make("SD2B1", field, k=3, s=2, c=0)
    assert iso_holds(a, b, sd2b1_swap_map(fixtures_for(a)))


def test_sd2b1_to_sd2b2_iso_for_odd_sides():
    a = make("SD2B1", GF2, k=3, s=3, c=0)
    b = make("SD2B2", GF2, k=3, s=3, c=0)
    assert iso_holds(a, b, sd2b1_to_sd2b2_map(fixtures_for(a)))
