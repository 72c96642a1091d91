import cmath
import math

import pytest

from orbstab import classifier as cl
from orbstab.classifier import ClassificationEntry, classify, cyclic, dihedral
from orbstab.errors import (InvalidCardinality, SeedOnSpecialLocus,
                            UnrealizableIndex)
from orbstab.geometry import PointSet, RiemannPoint, set_equal
from orbstab.oracle import stabilizer
from orbstab.witness import (PHI, PSI, _polyhedral_assembly, cyclic_witness,
                             dihedral_witness, polyhedral_group,
                             polyhedral_orbit, trivial_witness, witness)

GOLDEN_RATIO = (1.0 + math.sqrt(5.0)) / 2.0


class TestPolyhedralGroups:
    @pytest.mark.parametrize("kind,order", [(cl.A4, 12), (cl.S4, 24), (cl.A5, 60)])
    def test_group_orders(self, kind, order):
        assert len(polyhedral_group(kind)) == order

    def test_octahedron_vertices(self):
        v6 = polyhedral_orbit(cl.S4, "V6")
        expected = PointSet.from_values([0, float("inf"), 1, -1, 1j, -1j])
        assert set_equal(v6, expected)

    def test_icosahedron_vertices_lie_on_polar_rings(self):
        v12 = polyhedral_orbit(cl.A5, "V12")
        zeta = cmath.exp(2j * math.pi / 5.0)
        ring_hi = [GOLDEN_RATIO * zeta ** k for k in range(5)]
        ring_lo = [zeta ** k * cmath.exp(1j * math.pi / 5.0) / GOLDEN_RATIO
                   for k in range(5)]
        expected = PointSet.from_values(
            [0, float("inf")] + ring_hi + ring_lo)
        assert set_equal(v12, expected)

    def test_special_orbit_stabilizers(self):
        assert stabilizer(polyhedral_orbit(cl.A4, "V4a")).entry() == \
            ClassificationEntry(cl.LABEL_A4, (1, 0, 0))
        assert stabilizer(polyhedral_orbit(cl.A5, "V30")).entry() == \
            ClassificationEntry(cl.LABEL_A5, (0, 0, 1, 0))
        assert stabilizer(polyhedral_orbit(cl.S4, "V12")).entry() == \
            ClassificationEntry(cl.LABEL_S4, (0, 0, 1, 0))

    def test_generic_orbit_has_full_size(self):
        seed = RiemannPoint.from_value(0.31 + 0.21j)
        assert polyhedral_orbit(cl.A5, seed).n == 60

    def test_seed_on_special_locus_rejected(self):
        with pytest.raises(SeedOnSpecialLocus):
            polyhedral_orbit(cl.S4, RiemannPoint.from_value(1.0))


class TestDihedralWitness:
    def test_generic_orbits_d3(self):
        ps = dihedral_witness(3, (0, 0, 1))
        expected = [cmath.exp(2j * math.pi / 24) * cmath.exp(2j * math.pi * k / 3)
                    for k in range(3)]
        expected += [cmath.exp(-2j * math.pi / 24) * cmath.exp(2j * math.pi * k / 3)
                     for k in range(3)]
        assert set_equal(ps, PointSet.from_values(expected))
        assert stabilizer(ps).entry() == ClassificationEntry(dihedral(3), (0, 0, 1))

    def test_plain_roots(self):
        ps = dihedral_witness(5, (0, 1, 0))
        assert stabilizer(ps).entry() == ClassificationEntry(dihedral(5), (0, 1, 0))

    def test_klein_with_poles(self):
        ps = dihedral_witness(2, (1, 1))
        assert ps.n == 6
        assert stabilizer(ps).entry() == ClassificationEntry(cl.LABEL_K4, (1, 1))

    @pytest.mark.parametrize("p,index", [
        (3, (0, 2, 0)), (5, (1, 2, 0)), (4, (1, 1, 0)), (7, (1, 0, 0))])
    def test_unrealizable_rejected(self, p, index):
        with pytest.raises(UnrealizableIndex):
            dihedral_witness(p, index)

    def test_k4_without_generic_orbit_rejected(self):
        with pytest.raises(UnrealizableIndex):
            dihedral_witness(2, (2, 0))

    def test_force_build_reveals_larger_group(self):
        # both root families together are the 2p-th roots of unity
        got = stabilizer(dihedral_witness(3, (0, 2, 0), force=True))
        assert got.label == dihedral(6)
        # poles plus the order-4 roots form the octahedron
        got = stabilizer(dihedral_witness(4, (1, 1, 0), force=True))
        assert got.label == cl.LABEL_S4


class TestCyclicWitness:
    def test_fixed_point_plus_roots(self):
        ps = cyclic_witness(5, (1, 1))
        assert stabilizer(ps).entry() == ClassificationEntry(cyclic(5), (1, 1))

    def test_three_shells(self):
        ps = cyclic_witness(4, (0, 3))
        expected = [r * cmath.exp(2j * math.pi * k / 4)
                    for r in (1.0, 2.0, 3.0) for k in range(4)]
        assert set_equal(ps, PointSet.from_values(expected))
        assert stabilizer(ps).entry() == ClassificationEntry(cyclic(4), (0, 3))

    def test_z2_families(self):
        assert set_equal(cyclic_witness(2, (1, 2)),
                         PointSet.from_values([0, 1, -1, 2, -2]))
        got = stabilizer(cyclic_witness(2, (0, 3)))
        assert got.entry() == ClassificationEntry(cl.LABEL_Z2, (0, 3))
        got = stabilizer(cyclic_witness(2, (2, 3)))
        assert got.entry() == ClassificationEntry(cl.LABEL_Z2, (2, 3))

    @pytest.mark.parametrize("p,index", [
        (5, (0, 1)), (5, (0, 2)), (5, (2, 1)), (5, (2, 2)), (3, (1, 1)),
        (2, (1, 1)), (2, (0, 2)), (2, (2, 2))])
    def test_unrealizable_rejected(self, p, index):
        with pytest.raises(UnrealizableIndex):
            cyclic_witness(p, index)

    def test_force_build_reveals_larger_group(self):
        got = stabilizer(cyclic_witness(5, (0, 1), force=True))
        assert got.label == dihedral(5)
        # 0 with the third roots of unity is a regular tetrahedron
        got = stabilizer(cyclic_witness(3, (1, 1), force=True))
        assert got.label == cl.LABEL_A4


class TestTrivialWitness:
    def test_examples(self):
        assert set_equal(trivial_witness(5),
                         PointSet.from_values([1, 1j, -1, -1j, 2]))
        assert stabilizer(trivial_witness(6)).label == cl.LABEL_TRIVIAL

    def test_below_five_rejected(self):
        with pytest.raises(InvalidCardinality):
            trivial_witness(4)


class TestConjugators:
    def test_phi_psi_fixed_points(self):
        # phi rotates about +-i, psi about +-1: each permutes the three
        # 2-point orbit families of the standard Klein four-group
        i_pts = (RiemannPoint.from_value(1j), RiemannPoint.from_value(-1j))
        for p in i_pts:
            assert PHI.apply(p).value() == pytest.approx(p.value())
        one_pts = (RiemannPoint.from_value(1.0), RiemannPoint.from_value(-1.0))
        for p in one_pts:
            assert PSI.apply(p).value() == pytest.approx(p.value())

    def test_conjugated_dihedral_family_still_recognized(self):
        # image of a standard order-8 dihedral configuration under phi:
        # contains the Klein four-group in a rotated position
        base = dihedral_witness(4, (1, 1, 1))
        moved = PointSet([PHI.apply(p) for p in base.points], tol=base.tol)
        got = stabilizer(moved)
        assert got.label == dihedral(4)
        assert got.index == (1, 1, 1)


class TestWitnessDispatcher:
    def test_icosahedron_entry(self):
        ps = witness(12, ClassificationEntry(cl.LABEL_A5, (1, 0, 0, 0)))
        assert set_equal(ps, polyhedral_orbit(cl.A5, "V12"))

    def test_poles_plus_pentagon(self):
        ps = witness(7, ClassificationEntry(dihedral(5), (1, 1, 0)))
        roots = [cmath.exp(2j * math.pi * k / 5) for k in range(5)]
        assert set_equal(ps, PointSet.from_values([0, float("inf")] + roots))

    def test_entry_not_in_classification(self):
        with pytest.raises(ValueError):
            witness(5, ClassificationEntry(cl.LABEL_A5, (1, 0, 0, 0)))

    @pytest.mark.parametrize("n", [8, 10, 14])
    def test_round_trip(self, n):
        for entry in classify(n):
            ps = witness(n, entry)
            assert ps.n == n
            got = stabilizer(ps)
            assert got.label == entry.label and got.index == entry.index


class TestForcedPolyhedralIndices:
    def test_absorbed_a4_indices_give_s4(self):
        for index in ((2, 0, 0), (0, 1, 0), (2, 1, 0)):
            ps = _polyhedral_assembly(cl.A4, index, 0, 1e-8)
            assert stabilizer(ps).label == cl.LABEL_S4
