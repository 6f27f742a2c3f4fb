import pytest

from localic.exceptions import InvalidAction
from localic.exceptions import InvalidGroup
from localic.exceptions import NotSurjective
from localic.groups import GroupHom
from localic.groups import cyclic
from localic.groups import quotient
from localic.groups import subgroups
from localic.groups import symmetric
from localic.gsets import coset_space
from localic.gsets import trivial
from localic.prodiscrete import GroupChain
from localic.prodiscrete import TRUNCATION_NOTE
from localic.prodiscrete import cofinal_subgroups
from localic.prodiscrete import colimit_site
from localic.prodiscrete import constant_chain
from localic.prodiscrete import constant_colimit_is_tbg
from localic.prodiscrete import cyclic_chain
from localic.prodiscrete import factor_transitive
from localic.prodiscrete import verify_bt_star
from tests.utils import factors_through


@pytest.fixture
def chain():
    return cyclic_chain([2, 4, 8])


@pytest.fixture
def sign_chain():
    s3 = symmetric(3)
    p = quotient(s3, s3.generate([s3.element("(1 2 3)")]))
    return GroupChain((p.target, s3), (p,))


class TestGroupChain:
    def test_kernels(self, chain):
        assert chain.kernels == (
            frozenset([0, 2, 4, 6]),
            frozenset([0, 4]),
            frozenset([0]),
        )

    def test_projection_between_stages(self, chain):
        assert chain.projection(2, 3).images == (0, 1, 2, 3, 0, 1, 2, 3)
        with pytest.raises(InvalidGroup, match="No projection"):
            chain.projection(3, 2)

    def test_not_a_quotient(self):
        with pytest.raises(InvalidGroup, match="Z2 is not a quotient of Z3"):
            cyclic_chain([2, 3])

    def test_transition_count(self):
        with pytest.raises(InvalidGroup, match="2 stages need 1 transitions") as info:
            GroupChain((cyclic(2), cyclic(4)), ())
        assert info.value.location == ("transitions",)

    def test_transitions_must_be_surjective(self):
        inclusion = GroupHom(cyclic(2), cyclic(4), (0, 2))
        with pytest.raises(NotSurjective):
            GroupChain((cyclic(4), cyclic(2)), (inclusion,))

    def test_wrong_direction(self):
        z4, z2 = cyclic(4), cyclic(2)
        with pytest.raises(InvalidGroup, match="does not go from stage 2 to stage 1"):
            GroupChain((z4, z2), (GroupHom(z4, z2, (0, 1, 0, 1)),))


class TestRestriction:
    def test_cyclic(self, chain):
        for t in chain.transitions:
            assert verify_bt_star(t)

    def test_sign(self, sign_chain):
        report = verify_bt_star(sign_chain.transitions[0])
        assert report.status == "pass", report.render()


class TestColimitSite:
    def test_cyclic(self, chain):
        colimit = colimit_site(chain)
        assert len(colimit.germs) == 9
        report = colimit.report()
        assert report.status == "pass", report.render()
        assert TRUNCATION_NOTE in report.notes
        assert report.data["class sizes"] == [1, 2, 4, 8]

    def test_germs(self, chain):
        colimit = colimit_site(chain)
        assert colimit.germ_name(0) == "1@1"
        # G/e at stage 1 and G/{0, 2} at stage 2 are both Z8/⟨2⟩ from the top
        assert colimit.same_germ(1, 3)
        assert not colimit.same_germ(1, 4)

    def test_constant(self):
        colimit = colimit_site(constant_chain(symmetric(3), 3))
        assert constant_colimit_is_tbg(colimit)
        assert colimit.class_count == 4


class TestFactorTransitive:
    @pytest.mark.parametrize("u", subgroups(cyclic(8)), ids=str)
    def test_earliest_stage(self, chain, u):
        result = factor_transitive(chain, coset_space(chain.top, u))
        expected = next(
            a for a, k in enumerate(chain.kernels, start=1) if factors_through(k, u)
        )
        assert result.stage == expected
        assert result.comparison.is_bijective
        assert len(result.factored.group) == len(chain.stage(expected))

    def test_top_stage_note(self, chain):
        result = factor_transitive(chain, coset_space(chain.top, chain.top.trivial))
        assert result.note == "factors only at top stage 3"

    def test_sign(self, sign_chain):
        s3 = sign_chain.top
        assert factor_transitive(
            sign_chain, coset_space(s3, s3.generate([s3.element("(1 2 3)")]))
        ).stage == 1
        assert factor_transitive(
            sign_chain, coset_space(s3, s3.generate([s3.element("(1 2)")]))
        ).stage == 2

    def test_needs_transitive(self, chain):
        with pytest.raises(InvalidAction, match="not transitive"):
            factor_transitive(chain, trivial(chain.top, ["a", "b"]))

    def test_needs_top_stage(self, chain):
        with pytest.raises(InvalidAction, match="not over the top stage"):
            factor_transitive(chain, trivial(cyclic(2)))


class TestCofinalSubgroups:
    def test_cyclic(self, chain):
        report = cofinal_subgroups(chain)
        assert report.status == "pass", report.render()
        assert report.data["earliest stage"] == {
            "{0}": 3,
            "{0, 4}": 2,
            "{0, 2, 4, 6}": 1,
            "{0, 1, 2, 3, 4, 5, 6, 7}": 1,
        }
