"""
Finite towers G_1 ← G_2 ← … ← G_n of finite groups with surjective transitions.

Every report on a tower states that it works with the truncation: the inverse limit
itself is never built. Stages are numbered from 1, G_1 at the bottom.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import cached_property
from itertools import product
from typing import Optional
from typing import Sequence

from localic.atomic import SiteCategory
from localic.atomic import build_tbg_site
from localic.exceptions import InvalidAction
from localic.exceptions import InvalidGroup
from localic.groups import FiniteGroup
from localic.groups import GroupHom
from localic.groups import cyclic
from localic.groups import identity_hom
from localic.groups import subgroups
from localic.gsets import GSet
from localic.gsets import GSetMorphism
from localic.gsets import hom_gsets
from localic.gsets import restrict_along as pull_back
from localic.settings import DEFAULT_SETTINGS
from localic.settings import EngineSettings
from localic.verdicts import Report
from localic.verdicts import first_failure
from localic.verdicts import holds_if

logger = logging.getLogger(__name__)

TRUNCATION_NOTE = "finite truncation of the tower; the inverse limit is not built"


@dataclass(frozen=True)
class GroupChain:
    """
    `transitions[i]` goes from `stages[i + 1]` down to `stages[i]`.

    >>> chain = cyclic_chain([2, 4, 8])
    >>> [len(g) for g in chain.stages], chain.projection(1).images
    ([2, 4, 8], (0, 1, 0, 1, 0, 1, 0, 1))
    """

    stages: tuple[FiniteGroup, ...]
    transitions: tuple[GroupHom, ...]

    def __post_init__(self):
        if not self.stages:
            raise InvalidGroup("A chain needs at least one stage.", ("stages",))
        if len(self.transitions) != len(self.stages) - 1:
            raise InvalidGroup(
                f"{len(self.stages)} stages need {len(self.stages) - 1} transitions.",
                ("transitions",),
            )
        for i, t in enumerate(self.transitions):
            if t.source != self.stages[i + 1] or t.target != self.stages[i]:
                raise InvalidGroup(
                    f"Transition {i + 1} does not go from stage {i + 2} to stage {i + 1}.",
                    ("transitions", str(i)),
                )
            t.require_surjective()

    def __len__(self) -> int:
        return len(self.stages)

    @property
    def top(self) -> FiniteGroup:
        return self.stages[-1]

    def stage(self, alpha: int) -> FiniteGroup:
        return self.stages[alpha - 1]

    def projection(self, alpha: int, start: Optional[int] = None) -> GroupHom:
        """
        The composite transition from stage `start` (the top by default) down to stage
        `alpha`.
        """
        start = len(self) if start is None else start
        if not 1 <= alpha <= start <= len(self):
            raise InvalidGroup(f"No projection from stage {start} to stage {alpha}.")
        hom = identity_hom(self.stage(start))
        for i in range(start - 1, alpha - 1, -1):
            hom = hom.then(self.transitions[i - 1])
        return hom

    @cached_property
    def kernels(self) -> tuple[frozenset[int], ...]:
        """
        Kernels of the projections from the top, stage 1 first.
        """
        return tuple(self.projection(a).kernel for a in range(1, len(self) + 1))

    def as_dict(self) -> dict:
        return {
            "stages": [g.as_dict() for g in self.stages],
            "transitions": [list(t.images) for t in self.transitions],
        }


def constant_chain(group: FiniteGroup, length: int) -> GroupChain:
    return GroupChain(
        tuple(group for _ in range(length)),
        tuple(identity_hom(group) for _ in range(length - 1)),
    )


def cyclic_chain(orders: Sequence[int]) -> GroupChain:
    """
    Z/n_1 ← Z/n_2 ← … with reduction maps. Each order must divide the next.
    """
    groups = [cyclic(n) for n in orders]
    transitions = []
    for small, big in zip(groups, groups[1:]):
        if len(big) % len(small):
            raise InvalidGroup(f"{small.name} is not a quotient of {big.name}.")
        transitions.append(
            GroupHom(big, small, tuple(g % len(small) for g in big.elements))
        )
    return GroupChain(tuple(groups), tuple(transitions))


"""
Restriction along surjections
"""


def restrict_along(transition: GroupHom, gset: GSet) -> GSet:
    """
    B(t)* of an H-set along a surjection t: G → H.
    """
    transition.require_surjective()
    return pull_back(transition, gset)


def verify_bt_star(
    transition: GroupHom, settings: EngineSettings = DEFAULT_SETTINGS
) -> Report:
    """
    Restriction sends transitive objects to transitive objects and is full and faithful
    on them.

    >>> t = cyclic_chain([2, 4]).transitions[0]
    >>> bool(verify_bt_star(t))
    True
    """
    transition.require_surjective()
    site = build_tbg_site(transition.target, settings)
    restricted = [restrict_along(transition, y) for y in site.gsets]
    report = Report(f"B(t)* for {transition.source.name} → {transition.target.name}")
    report.add(
        "transitive",
        first_failure(
            holds_if(
                x.is_transitive,
                f"{site.objects[i]} restricts to a non-transitive set",
                [site.objects[i]],
            )
            for i, x in enumerate(restricted)
        ),
    )
    pairs = list(product(range(len(site.gsets)), repeat=2))
    report.add(
        "full and faithful",
        first_failure(
            holds_if(
                [f.mapping for f in hom_gsets(site.gsets[a], site.gsets[b])]
                == [f.mapping for f in hom_gsets(restricted[a], restricted[b])],
                f"hom({site.objects[a]}, {site.objects[b]}) changes under restriction",
                [site.objects[a], site.objects[b]],
            )
            for a, b in pairs
        ),
    )
    return report


"""
The colimit site
"""


@dataclass(frozen=True)
class ColimitSite:
    """
    Germs of transitive objects along the tower. A germ is a stage and an object of
    that stage's classifying site; `classes[i]` is the top-stage object germ i becomes.
    """

    chain: GroupChain
    sites: tuple[SiteCategory, ...]
    germs: tuple[tuple[int, int], ...]
    classes: tuple[int, ...]

    def germ_name(self, i: int) -> str:
        alpha, obj = self.germs[i]
        return f"{self.sites[alpha - 1].objects[obj]}@{alpha}"

    def pushed(self, germ: int, alpha: int) -> GSet:
        """
        The germ's object restricted up to stage `alpha`.
        """
        stage, obj = self.germs[germ]
        return restrict_along(
            self.chain.projection(stage, alpha), self.sites[stage - 1].gsets[obj]
        )

    def same_germ(self, a: int, b: int) -> bool:
        """
        Compare at the larger of the two stages.
        """
        alpha = max(self.germs[a][0], self.germs[b][0])
        return self.pushed(a, alpha).is_isomorphic(self.pushed(b, alpha))

    @property
    def class_count(self) -> int:
        return len(set(self.classes))

    def report(self, settings: EngineSettings = DEFAULT_SETTINGS) -> Report:
        chain = self.chain
        report = Report(f"colimit site of {' ← '.join(g.name for g in chain.stages)}")
        report.note(TRUNCATION_NOTE)
        for i, t in enumerate(chain.transitions):
            report.include(f"inclusion {i + 1}→{i + 2}", verify_bt_star(t, settings))
        n = len(self.germs)
        report.add(
            "germ equality matches the classes",
            first_failure(
                holds_if(
                    self.same_germ(a, b) == (self.classes[a] == self.classes[b]),
                    f"{self.germ_name(a)} and {self.germ_name(b)} are misclassified",
                    [self.germ_name(a), self.germ_name(b)],
                )
                for a in range(n)
                for b in range(a + 1, n)
            ),
        )
        top = self.sites[-1]
        report.add(
            "classes are the top objects",
            holds_if(
                sorted(set(self.classes)) == list(range(len(top.objects))),
                "some top-stage object is missing from the classes",
            ),
        )

        def composites():
            for alpha in range(1, len(chain) + 1):
                for beta in range(alpha, len(chain) + 1):
                    step = chain.projection(alpha, beta)
                    for obj, gset in enumerate(self.sites[alpha - 1].gsets):
                        stepwise = gset
                        for gamma in range(alpha, beta):
                            stepwise = restrict_along(
                                chain.transitions[gamma - 1], stepwise
                            )
                        yield holds_if(
                            stepwise == restrict_along(step, gset),
                            f"inclusions of {self.sites[alpha - 1].objects[obj]} from "
                            f"stage {alpha} to {beta} don't compose",
                        )

        report.add("inclusions compose", first_failure(composites()))
        report.data["germs"] = n
        report.data["classes"] = self.class_count
        report.data["class sizes"] = [
            len(top.gsets[c]) for c in sorted(set(self.classes))
        ]
        return report


def colimit_site(
    chain: GroupChain, settings: EngineSettings = DEFAULT_SETTINGS
) -> ColimitSite:
    """
    >>> colimit_site(cyclic_chain([2, 4, 8])).class_count
    4
    """
    sites = tuple(build_tbg_site(g, settings) for g in chain.stages)
    top = sites[-1]
    germs = []
    classes = []
    for alpha, site in enumerate(sites, start=1):
        up = chain.projection(alpha)
        for obj, gset in enumerate(site.gsets):
            germs.append((alpha, obj))
            found = top.object_of(restrict_along(up, gset))
            if found is None:
                raise InvalidAction(f"{site.objects[obj]} does not stay transitive.")
            classes.append(found)
    logger.debug("%d germs in %d classes.", len(germs), len(set(classes)))
    return ColimitSite(chain, sites, tuple(germs), tuple(classes))


def constant_colimit_is_tbg(colimit: ColimitSite) -> bool:
    """
    For a constant tower each stage's objects restrict to the top objects themselves.
    """
    top = colimit.sites[-1]
    return all(
        colimit.pushed(i, len(colimit.chain)) == top.gsets[colimit.germs[i][1]]
        for i in range(len(colimit.germs))
    )


"""
Factoring actions
"""


@dataclass(frozen=True)
class Factorization:
    """
    A transitive top-stage object seen as an object of an earlier stage: `factored`
    is a G_stage-set and `comparison` is the map from its restriction onto the object.
    """

    stage: int
    factored: GSet
    comparison: GSetMorphism
    note: str = ""


def factor_transitive(chain: GroupChain, gset: GSet) -> Factorization:
    """
    The earliest stage whose projection kernel acts trivially on the object.

    >>> from localic.gsets import coset_space
    >>> chain = cyclic_chain([2, 4, 8])
    >>> x = coset_space(chain.top, chain.top.generate([2]))
    >>> factor_transitive(chain, x).stage
    1
    """
    if gset.group != chain.top:
        raise InvalidAction("The object is not over the top stage.")
    if not gset.is_transitive:
        raise InvalidAction("The object is not transitive.")
    alpha = next(a for a, k in enumerate(chain.kernels, start=1) if k <= gset.kernel)
    projection = chain.projection(alpha)
    group = chain.stage(alpha)
    lift = {}
    for g in chain.top.elements:
        lift.setdefault(projection(g), g)
    action = tuple(gset.action[lift[q]] for q in group.elements)
    factored = GSet(group, gset.points, action, gset.name)
    comparison = GSetMorphism(
        restrict_along(projection, factored), gset, tuple(range(len(gset)))
    )
    note = ""
    if alpha == len(chain) and len(chain) > 1:
        note = f"factors only at top stage {alpha}"
    return Factorization(alpha, factored, comparison, note)


def cofinal_subgroups(
    chain: GroupChain, settings: EngineSettings = DEFAULT_SETTINGS
) -> Report:
    """
    For each subgroup u of the top stage, the stages at which u is the preimage of a
    subgroup.
    """
    top = chain.top
    report = Report(f"cofinal subgroups of {top.name}")
    report.note(TRUNCATION_NOTE)
    reachable = {}
    for u in subgroups(top, settings.max_group_order):
        stages = []
        for alpha in range(1, len(chain) + 1):
            projection = chain.projection(alpha)
            if projection.kernel <= u:
                stages.append(alpha)
                report.add(
                    "preimage",
                    top.describe(u),
                    f"stage {alpha}",
                    holds_if(
                        projection.preimage(projection.push(u)) == u,
                        f"{top.describe(u)} is not the preimage of its image at "
                        f"stage {alpha}",
                    ),
                )
        reachable[top.describe(u)] = stages
        report.add(
            "reachable",
            top.describe(u),
            holds_if(bool(stages), f"{top.describe(u)} is reached at no stage"),
        )
    report.data["earliest stage"] = {k: v[0] for k, v in reachable.items()}
    return report
