import pytest
from hypothesis import given
from hypothesis import strategies as st

from localic.exceptions import CapacityError
from localic.exceptions import InvalidGroup
from localic.exceptions import NotSurjective
from localic.groups import GroupHom
from localic.groups import check_order
from localic.groups import class_representatives
from localic.groups import conjugacy_classes
from localic.groups import cyclic
from localic.groups import from_permutations
from localic.groups import from_table
from localic.groups import hom_from_generators
from localic.groups import identity_hom
from localic.groups import is_subconjugate
from localic.groups import named_group
from localic.groups import parse_cycles
from localic.groups import quotient
from localic.groups import subgroups
from localic.groups import symmetric
from tests.strategies import groups
from tests.strategies import groups_with_subgroup
from tests.utils import conjugate_into
from tests.utils import is_normal_oracle
from tests.utils import normal_core


@pytest.fixture
def s3():
    return symmetric(3)


class TestFiniteGroup:
    def test_identity_and_inverses(self, s3):
        assert s3.labels[s3.identity] == "()"
        for g in s3.elements:
            assert s3.multiply(g, s3.inverse(g)) == s3.identity

    def test_element_by_cycles(self, s3):
        assert s3.element("(1 2 3)") == s3.element("(2 3 1)")
        assert s3.element("(1 3)(1 2)") == s3.element("(1 2 3)")

    def test_unknown_element(self, s3):
        with pytest.raises(InvalidGroup, match="not an element of S3"):
            s3.element("x")

    def test_not_a_group(self):
        with pytest.raises(InvalidGroup, match="no inverse"):
            from_table([[0, 1], [1, 1]])

    def test_not_square(self):
        with pytest.raises(InvalidGroup) as info:
            from_table([[0, 1], [1]])
        assert info.value.location == ("cayley", "1")

    def test_bad_labels(self):
        with pytest.raises(InvalidGroup) as info:
            from_table([[0, 1], [1, 0]], ["a", "a"])
        assert info.value.location == ("labels",)

    def test_left_cosets(self, s3):
        h = s3.generate([s3.element("(1 2)")])
        cosets = s3.left_cosets(h)
        assert len(cosets) == 3
        assert cosets[0] == h
        assert frozenset().union(*cosets) == s3.whole

    def test_normal_closure(self, s3):
        h = s3.generate([s3.element("(1 2)")])
        assert s3.normal_closure(h) == s3.whole
        assert s3.core(h) == s3.trivial

    @given(groups_with_subgroup())
    def test_normality_agrees_with_oracle(self, pair):
        group, h = pair
        assert group.is_normal(h) == is_normal_oracle(group, h)

    @given(groups_with_subgroup())
    def test_core_agrees_with_oracle(self, pair):
        group, h = pair
        assert group.core(h) == normal_core(group, h)


class TestNamedGroups:
    @pytest.mark.parametrize(
        "name, order",
        [("Z5", 5), ("C3", 3), ("S4", 24), ("A4", 12), ("D3", 6), ("Z2xZ2xZ2", 8)],
    )
    def test_orders(self, name, order):
        assert len(named_group(name)) == order

    @pytest.mark.parametrize("name", ["Z0", "G7", "", "Sx"])
    def test_unknown(self, name):
        with pytest.raises(InvalidGroup, match="Unknown group"):
            named_group(name)

    def test_check_order(self):
        check_order(cyclic(4), 4)
        with pytest.raises(CapacityError, match="above the bound of 3"):
            check_order(cyclic(4), 3)


class TestCycles:
    def test_composition_is_right_to_left(self):
        # (2 3) first, then (1 2)
        assert parse_cycles("(1 2)(2 3)", 3) == (1, 2, 0)

    @pytest.mark.parametrize("text", ["(1 4)", "(1 1)", "1 2"])
    def test_bad_cycles(self, text):
        with pytest.raises(InvalidGroup):
            parse_cycles(text, 3)

    def test_generated(self):
        assert len(from_permutations(["(1 2 3 4)"], 4)) == 4
        assert len(from_permutations([], 3)) == 1


class TestSubgroups:
    def test_counts(self, s3):
        assert len(subgroups(s3)) == 6
        assert len(subgroups(named_group("V4"))) == 5

    def test_classes(self, s3):
        reps = class_representatives(s3)
        assert [len(h) for h in reps] == [1, 2, 3, 6]
        assert sum(len(c) for c in conjugacy_classes(s3)) == 6

    def test_bound(self):
        with pytest.raises(CapacityError):
            subgroups(symmetric(4), max_order=12)

    @given(st.data())
    def test_subconjugacy_agrees_with_oracle(self, data):
        group = data.draw(groups())
        small = data.draw(st.sampled_from(subgroups(group)))
        big = data.draw(st.sampled_from(subgroups(group)))
        assert is_subconjugate(group, small, big) == conjugate_into(group, small, big)


class TestGroupHom:
    def test_not_a_hom(self):
        z2, z4 = cyclic(2), cyclic(4)
        with pytest.raises(InvalidGroup, match="Not a homomorphism"):
            GroupHom(z4, z2, (0, 1, 1, 0))

    def test_kernel_and_image(self):
        p = GroupHom(cyclic(4), cyclic(2), (0, 1, 0, 1))
        assert p.kernel == frozenset([0, 2])
        assert p.is_surjective

    def test_require_surjective(self):
        inclusion = GroupHom(cyclic(2), cyclic(4), (0, 2))
        with pytest.raises(NotSurjective, match="1 is not in the image"):
            inclusion.require_surjective()

    def test_quotient(self, s3):
        a3 = s3.generate([s3.element("(1 2 3)")])
        p = quotient(s3, a3)
        assert len(p.target) == 2
        assert p.kernel == a3

    def test_quotient_needs_normal(self, s3):
        with pytest.raises(InvalidGroup, match="not a normal subgroup"):
            quotient(s3, s3.generate([s3.element("(1 2)")]))

    def test_from_generators(self):
        p = hom_from_generators(cyclic(6), cyclic(3), {1: 1})
        assert p.images == (0, 1, 2, 0, 1, 2)
        with pytest.raises(InvalidGroup, match="don't define a homomorphism"):
            hom_from_generators(cyclic(3), cyclic(2), {1: 1})
        with pytest.raises(InvalidGroup, match="don't generate"):
            hom_from_generators(cyclic(6), cyclic(3), {2: 1})

    @given(groups())
    def test_identity_then(self, group):
        i = identity_hom(group)
        assert i.then(i) == i
        assert i.preimage(group.trivial) == group.trivial
