import pytest
from hypothesis import given
from hypothesis import strategies as st

from localic.exceptions import InvalidAction
from localic.groups import cyclic
from localic.groups import quotient
from localic.groups import subgroups
from localic.groups import symmetric
from localic.gsets import GSet
from localic.gsets import GSetMorphism
from localic.gsets import check_gset_morphism
from localic.gsets import coset_space
from localic.gsets import equivariance
from localic.gsets import fixed_point_count
from localic.gsets import hom_gsets
from localic.gsets import identity_morphism
from localic.gsets import natural
from localic.gsets import regular
from localic.gsets import restrict_along
from localic.gsets import transporter_condition
from localic.gsets import trivial
from tests.strategies import groups
from tests.utils import conjugate_into


@pytest.fixture
def s3():
    return symmetric(3)


@pytest.fixture
def transposition(s3):
    return s3.generate([s3.element("(1 2)")])


class TestGSet:
    def test_coset_space(self, s3, transposition):
        x = coset_space(s3, transposition)
        assert x.points[0] == "()H"
        assert x.stabilizer(0) == transposition
        assert x.kernel == s3.trivial

    def test_natural_matches_cosets(self, s3, transposition):
        # (1 2) fixes the point 3
        assert natural(s3).is_isomorphic(coset_space(s3, transposition))
        assert not natural(s3).is_isomorphic(regular(s3))

    def test_not_a_permutation_group(self):
        with pytest.raises(InvalidAction, match="not a permutation group"):
            natural(cyclic(3))

    def test_not_an_action(self):
        z2 = cyclic(2)
        with pytest.raises(InvalidAction, match="does not permute") as info:
            GSet(z2, ("a", "b"), ((0, 1), (0, 0)))
        assert info.value.location == ("action", "1")

    def test_identity_must_act_trivially(self):
        with pytest.raises(InvalidAction, match="identity"):
            GSet(cyclic(2), ("a", "b"), ((1, 0), (1, 0)))

    def test_orbits(self, s3):
        x = trivial(s3, ["a", "b"])
        assert not x.is_transitive
        assert x.component(1).points == ("b",)
        assert not trivial(s3, []).is_transitive

    def test_restrict_to_needs_orbits(self, s3):
        with pytest.raises(InvalidAction, match="union of orbits"):
            regular(s3).restrict_to([0, 1])

    def test_product(self, s3, transposition):
        x = coset_space(s3, transposition)
        square = x.product(x)
        assert len(square) == 9
        assert len(square.orbits) == 2

    def test_restrict_along(self, s3):
        a3 = s3.generate([s3.element("(1 2 3)")])
        p = quotient(s3, a3)
        pulled = restrict_along(p, regular(p.target))
        assert pulled.kernel == a3
        assert fixed_point_count(pulled, a3) == 2


class TestMorphisms:
    def test_regular_endomorphisms(self, s3):
        assert len(hom_gsets(regular(s3), regular(s3))) == 6

    def test_to_a_point(self, s3, transposition):
        [only] = hom_gsets(coset_space(s3, transposition), trivial(s3))
        assert only.is_surjective and not only.is_injective

    def test_not_equivariant(self, s3, transposition):
        x = coset_space(s3, transposition)
        with pytest.raises(InvalidAction, match="not equivariant") as info:
            GSetMorphism(x, x, (1, 0, 2))
        assert info.value.location == ("map",)

    def test_characterizations_agree(self, s3, transposition):
        x = coset_space(s3, transposition)
        for mapping in [(0, 1, 2), (1, 0, 2), (0, 0, 0)]:
            assert bool(equivariance(x, x, mapping)) == bool(
                transporter_condition(x, x, mapping)
            )
            assert bool(check_gset_morphism(GSetMorphism(x, x, mapping, False))) == bool(
                equivariance(x, x, mapping)
            )

    def test_then(self, s3):
        x = regular(s3)
        i = identity_morphism(x)
        assert i.then(i) == i

    def test_different_groups(self):
        with pytest.raises(InvalidAction, match="different groups"):
            hom_gsets(regular(cyclic(2)), regular(cyclic(3)))

    @given(st.data())
    def test_maps_exist_iff_subconjugate(self, data):
        group = data.draw(groups())
        small = data.draw(st.sampled_from(subgroups(group)))
        big = data.draw(st.sampled_from(subgroups(group)))
        maps = hom_gsets(coset_space(group, small), coset_space(group, big))
        assert bool(maps) == conjugate_into(group, small, big)
        for f in maps:
            assert equivariance(f.source, f.target, f.mapping)
