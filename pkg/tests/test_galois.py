import pytest
from hypothesis import given
from hypothesis import settings
from hypothesis import strategies as st

from localic.atomic import build_tbg_site
from localic.atomic import truncate
from localic.exceptions import InvalidAction
from localic.exceptions import NotGalois
from localic.galois import c_a_report
from localic.galois import c_a_subcategory
from localic.galois import galois_closure
from localic.galois import galois_cofinality
from localic.galois import galois_join
from localic.galois import is_galois
from localic.galois import minimal_galois_cover
from localic.galois import require_galois
from localic.galois import split_by
from localic.galois import split_by_definition
from localic.galois import split_category
from localic.galois import splitting_object
from localic.galois import verify_fundamental_discrete
from localic.galois import verify_split_eq
from localic.groups import cyclic
from localic.groups import subgroups
from localic.groups import symmetric
from localic.gsets import coset_space
from localic.gsets import hom_gsets
from localic.gsets import regular
from localic.gsets import trivial
from tests.strategies import groups
from tests.utils import is_normal_oracle
from tests.utils import normal_core
from tests.utils import subgroup_cases

A3 = "G/{(), (1 2 3), (1 3 2)}"


@pytest.fixture
def s3():
    return symmetric(3)


@pytest.fixture
def transposition(s3):
    return coset_space(s3, s3.generate([s3.element("(1 2)")]))


@pytest.fixture
def sign(s3):
    return coset_space(s3, s3.generate([s3.element("(1 2 3)")]))


class TestIsGalois:
    def test_sign(self, sign):
        certificate = is_galois(sign)
        assert certificate
        assert certificate.consistent
        assert len(certificate.aut_group) == 2
        assert len(certificate.torsor_table()) == 4

    def test_transposition(self, transposition):
        certificate = is_galois(transposition)
        assert not certificate
        assert certificate.consistent
        assert certificate.describe() == (
            "not Galois, |Aut|=1: |A × Aut(A)| = 3 but |A × A| = 9"
        )

    def test_not_connected(self, s3):
        certificate = is_galois(trivial(s3, ["a", "b"]))
        assert certificate.describe() == "not Galois, |Aut|=2: 1 is not connected"

    def test_empty(self, s3):
        certificate = is_galois(trivial(s3, []))
        assert not certificate
        assert certificate.base_points.status == "fail"

    def test_require(self, transposition):
        with pytest.raises(NotGalois, match="not Galois"):
            require_galois(transposition)

    @pytest.mark.parametrize("group, h", subgroup_cases())
    def test_galois_iff_normal(self, group, h):
        certificate = is_galois(coset_space(group, h))
        assert bool(certificate) == is_normal_oracle(group, h)
        assert certificate.consistent

    @pytest.mark.parametrize("group, h", subgroup_cases())
    def test_automorphisms_are_normalizer_quotient(self, group, h):
        certificate = is_galois(coset_space(group, h))
        assert len(certificate.automorphisms) == len(group.normalizer(h)) // len(h)


class TestClosure:
    def test_transposition(self, transposition):
        result = galois_closure(transposition)
        assert len(result.closure) == 6
        assert result.verify()
        assert [p(result.base_point) for p in result.projections] == [0, 1, 2]

    def test_galois_is_its_own_closure(self, sign):
        assert minimal_galois_cover(sign).is_isomorphic(sign)

    def test_needs_connected(self, s3):
        with pytest.raises(InvalidAction, match="not connected"):
            galois_closure(trivial(s3, ["a", "b"]))

    @pytest.mark.parametrize("group, h", subgroup_cases())
    def test_closure_is_the_core_quotient(self, group, h):
        closure = minimal_galois_cover(coset_space(group, h))
        assert closure.is_isomorphic(coset_space(group, group.core(h)))
        assert group.core(h) == normal_core(group, h)


class TestSplitting:
    def test_sign_splits_itself(self, s3, sign):
        assert split_by(sign, sign)
        assert not split_by(sign, regular(s3))

    def test_objects(self, sign):
        assert split_category(sign).objects == ("1", A3)
        assert len(split_category(regular(cyclic(4))).objects) == 3

    def test_splitting_object(self, transposition, sign):
        assert len(splitting_object(transposition)) == 1
        assert splitting_object(sign).is_isomorphic(sign)

    def test_join(self, s3, transposition, sign):
        joined = galois_join(sign, transposition)
        assert is_galois(joined)
        assert split_by(joined, sign)

    def test_empty_cover(self, s3, sign):
        with pytest.raises(ValueError, match="not a cover"):
            split_by(trivial(s3, []), sign)

    @settings(max_examples=30)
    @given(st.data())
    def test_descriptions_agree(self, data):
        group = data.draw(groups())
        cover = coset_space(group, data.draw(st.sampled_from(subgroups(group))))
        x = coset_space(group, data.draw(st.sampled_from(subgroups(group))))
        assert split_by(cover, x) == split_by_definition(cover, x)

    @pytest.mark.parametrize("generators", [[], ["(1 2)"], ["(1 2 3)"]])
    def test_split_eq(self, s3, generators):
        cover = coset_space(s3, s3.generate([s3.element(g) for g in generators]))
        report = verify_split_eq(cover)
        assert report.status == "pass", report.render()


class TestSubsites:
    def test_c_a(self, sign):
        assert c_a_subcategory(sign).objects == ("1", A3)

    def test_inclusion(self, s3, sign):
        below = hom_gsets(regular(s3), sign)[0]
        report = c_a_report(sign, below)
        assert report.status == "pass", report.render()
        assert report.data["objects"] == ["1", A3]

    def test_arrow_must_land_in_a(self, s3, sign):
        below = hom_gsets(regular(s3), regular(s3))[0]
        with pytest.raises(InvalidAction, match="must land"):
            c_a_report(sign, below)

    def test_needs_galois(self, transposition):
        with pytest.raises(NotGalois):
            c_a_subcategory(transposition)


class TestFundamental:
    def test_classifying_site(self, s3):
        report = verify_fundamental_discrete(build_tbg_site(s3))
        assert report.status == "pass", report.render()
        assert report.data["representing object"] == "G/e"
        assert report.data["group order"] == 6

    def test_split_subcategory(self, sign):
        report = verify_fundamental_discrete(c_a_subcategory(sign))
        assert report.status == "pass", report.render()
        assert report.data["representing object"] == A3
        assert report.data["group order"] == 2

    def test_not_representable(self, s3):
        report = verify_fundamental_discrete(truncate(build_tbg_site(s3), 3))
        assert report["representable",].status == "fail"


class TestCofinality:
    def test_s3(self, s3):
        report = galois_cofinality(s3)
        assert report.status == "pass", report.render()
        assert report.data["galois objects"] == ["1", A3, "G/e"]
        assert report.data["minimal galois covers"]["G/{(), (2 3)}"] == "G/e"

    def test_abelian(self):
        report = galois_cofinality(cyclic(6))
        assert report
        assert len(report.data["galois objects"]) == 4
