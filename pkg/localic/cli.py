"""
The `localic` command: load groups, sites, functors and chains, run one verifier and
print its report.

Exit status: 0 when every check holds, 2 when one fails, 3 when one is undecided and
none fails, 1 for malformed input.
"""
from __future__ import annotations

import argparse
import hashlib
import logging
import sys
import time
from dataclasses import dataclass
from dataclasses import field
from math import factorial
from typing import Any
from typing import Callable
from typing import NoReturn
from typing import Optional
from typing import Sequence

from localic import documents
from localic.atomic import SiteCategory
from localic.atomic import build_tbg_site
from localic.atomic import truncate
from localic.atomic import verify_atomic_site
from localic.enrichment import check_action_morphisms
from localic.enrichment import colimit_inflattices
from localic.enrichment import laut_f
from localic.enrichment import nat_locale
from localic.enrichment import point_counts
from localic.enrichment import verify_galois_transition
from localic.enrichment import verify_lifting
from localic.enrichment import verify_transitivity
from localic.enrichment import yoneda_automorphisms
from localic.enrichment import yoneda_verify
from localic.exceptions import CapacityError
from localic.exceptions import DeserializationError
from localic.exceptions import InputErrors
from localic.exceptions import LocalicError
from localic.fields import separated_field
from localic.galois import c_a_report
from localic.galois import c_a_subcategory
from localic.galois import galois_closure
from localic.galois import galois_cofinality
from localic.galois import is_galois
from localic.galois import verify_fundamental_discrete
from localic.galois import verify_split_eq
from localic.groups import FiniteGroup
from localic.groups import Subgroup
from localic.groups import check_order
from localic.groups import class_representatives
from localic.groups import named_group
from localic.gsets import GSet
from localic.gsets import coset_space
from localic.gsets import hom_gsets
from localic.gsets import natural
from localic.gsets import regular
from localic.prodiscrete import GroupChain
from localic.prodiscrete import cofinal_subgroups
from localic.prodiscrete import colimit_site
from localic.prodiscrete import cyclic_chain
from localic.prodiscrete import factor_transitive
from localic.prodiscrete import verify_bt_star
from localic.settings import EngineSettings
from localic.types import JSONDict
from localic.utils import canonical_json
from localic.verdicts import EXIT_CODES
from localic.verdicts import EXIT_MALFORMED
from localic.verdicts import UNDECIDED
from localic.verdicts import Report
from localic.verdicts import holds_if
from localic.verdicts import to_json
from localic.wraith import Kind
from localic.wraith import action_from_gset
from localic.wraith import check_cover_equations
from localic.wraith import verify_groupoid_laws
from localic.wraith import wraith_points
from localic.wraith import wraith_site

logger = logging.getLogger(__name__)

GENERATORS = separated_field(";", key="subgroup")
ORDERS = separated_field(",", int, key="cyclic")

# Options that shape the output rather than the question asked.
_PRESENTATION = frozenset({"json", "verbose", "handler", "command", "area", "verb"})


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> NoReturn:
        self.print_usage(sys.stderr)
        self.exit(EXIT_MALFORMED, f"{self.prog}: error: {message}\n")


def kind(text: str) -> Kind:
    return Kind.parse(text)


"""
Inputs
"""


@dataclass
class Run:
    """
    One invocation: the parsed flags, the engine settings and every input as it was
    read, which the report digest is taken over.
    """

    args: argparse.Namespace
    settings: EngineSettings
    inputs: JSONDict = field(default_factory=dict)

    def __post_init__(self):
        for key, value in sorted(vars(self.args).items()):
            if key in _PRESENTATION or key.endswith("_file") or value is None:
                continue
            self.inputs[key] = value

    @property
    def command(self) -> str:
        return " ".join(self.args.command)

    @property
    def digest(self) -> str:
        return hashlib.sha256(canonical_json(self.inputs).encode()).hexdigest()

    def load(self, kind: str, path: str) -> Any:
        obj = documents.load_file(kind, path)
        self.inputs[kind] = documents.dump(kind, obj)
        return obj

    def group(self) -> FiniteGroup:
        if getattr(self.args, "group_file", None):
            group = self.load("group", self.args.group_file)
        else:
            try:
                group = named_group(self.args.group)
            except LocalicError as e:
                raise InputErrors({("--group",): str(e)}) from e
        check_order(group, self.settings.max_group_order)
        logger.info("Group %s of order %d.", group.name, len(group))
        return group

    def subgroup(self, group: FiniteGroup, text: Optional[str], flag: str) -> Subgroup:
        """
        The subgroup generated by `;` separated elements; empty text is the trivial
        subgroup.
        """
        if text is None:
            raise InputErrors({(flag,): "Required."})
        try:
            names = GENERATORS.make_object(text)
            return group.generate(group.element(name) for name in names)
        except LocalicError as e:
            raise InputErrors({(flag,): str(e)}) from e

    def coset_space(self, group: FiniteGroup, flag: str = "--subgroup") -> GSet:
        h = self.subgroup(group, getattr(self.args, flag.strip("-")), flag)
        return coset_space(group, h)

    def site(self) -> SiteCategory:
        if getattr(self.args, "functor_file", None):
            functor = self.load("functor", self.args.functor_file)
            site = SiteCategory(functor, name=functor.category.name or "F")
        else:
            site = build_tbg_site(self.group(), self.settings)
        if self.args.max_size is not None:
            site = truncate(site, self.args.max_size)
        return site

    def chain(self) -> GroupChain:
        if self.args.chain_file:
            chain = self.load("chain", self.args.chain_file)
        elif self.args.cyclic:
            try:
                chain = cyclic_chain(ORDERS.make_object(self.args.cyclic))
            except (LocalicError, DeserializationError) as e:
                raise InputErrors({("--cyclic",): str(e)}) from e
        else:
            raise InputErrors({("--chain-file",): "Give a chain file or --cyclic."})
        for stage in chain.stages:
            check_order(stage, self.settings.max_group_order)
        return chain

    def object_index(self, site: SiteCategory, flag: str) -> Optional[int]:
        name = getattr(self.args, flag.strip("-"))
        if name is None:
            return None
        try:
            return site.object_named(name)
        except LocalicError as e:
            raise InputErrors({(flag,): str(e)}) from e


"""
group and gset
"""


def group_define(run: Run) -> Report:
    group = run.group()
    report = Report(f"group {group.name}")
    document = documents.dump("group", group)
    report.add(
        "document re-loads",
        holds_if(documents.load("group", document) == group, "the dump loads differently"),
    )
    report.data["order"] = len(group)
    report.data["elements"] = list(group.labels)
    report.data["subgroup classes"] = [
        group.describe(h) + (" (normal)" if group.is_normal(h) else "")
        for h in class_representatives(group, run.settings.max_group_order)
    ]
    report.data["document"] = document
    return report


def gset_orbits(run: Run) -> Report:
    group = run.group()
    if run.args.action == "regular":
        gset = regular(group)
    elif run.args.action == "natural":
        gset = natural(group)
    else:
        gset = run.coset_space(group)
    act = action_from_gset(gset, run.settings)
    report = Report(f"orbits of {gset.name or group.name}", act.report.engine)
    report.include("action", act.report)
    report.data["points"] = list(gset.points)
    report.data["orbits"] = [[gset.points[x] for x in orbit] for orbit in gset.orbits]
    report.data["stabilizers"] = [
        group.describe(gset.stabilizer(orbit[0])) for orbit in gset.orbits
    ]
    report.data["transitive"] = gset.is_transitive
    return report


"""
site and locale
"""


def site_verify_atomic(run: Run) -> Report:
    site = run.site()
    report = verify_atomic_site(site)
    report.data["objects"] = list(site.objects)
    return report


def expected_points(kind: Kind, n: int, m: int) -> int:
    """
    >>> expected_points(Kind.BIJECTIONS, 3, 3), expected_points(Kind.FUNCTIONS, 2, 3)
    (6, 9)
    """
    if kind == Kind.RELATIONS:
        return 2 ** (n * m)
    if kind == Kind.FUNCTIONS:
        return m**n
    return factorial(n) if n == m else 0


def locale_points(run: Run) -> Report:
    args = run.args
    ws = wraith_site(args.kind, range(args.x), range(args.y))
    points = wraith_points(args.kind, range(args.x), range(args.y), run.settings)
    report = Report(
        f"points of l{args.kind.value}({args.x}, {args.y})",
        run.settings.engine_label(ws.site.generator_count),
    )
    report.note(f"{len(points)} points")
    expected = expected_points(args.kind, args.x, args.y)
    report.add(
        "count",
        holds_if(len(points) == expected, f"{len(points)} points, expected {expected}"),
    )
    report.data["generators"] = ws.site.generator_count
    report.data["covers"] = len(ws.site.covers)
    if args.list:
        report.data["relations"] = sorted(sorted(map(list, p)) for p in points)
    return report


def locale_verify_laws(run: Run) -> Report:
    args = run.args
    via = args.y if args.via is None else args.via
    return verify_groupoid_laws(
        args.kind,
        range(args.x),
        range(args.y),
        range(via),
        run.settings,
        corrupt=args.corrupt,
    )


def locale_verify_covers(run: Run) -> Report:
    args = run.args
    return check_cover_equations(
        wraith_site(args.kind, range(args.x), range(args.y)), run.settings
    )


"""
galois
"""


def galois_check(run: Run) -> Report:
    gset = run.coset_space(run.group())
    certificate = is_galois(gset)
    report = Report(f"Galois check of {gset.name}")
    report.note(certificate.describe())
    report.add(
        "certificate consistent",
        holds_if(
            certificate.consistent,
            "the torsor map and the base point maps disagree",
        ),
    )
    report.data["galois"] = bool(certificate)
    report.data["automorphisms"] = len(certificate.automorphisms)
    points = gset.points
    report.data["torsor"] = [
        [points[a], points[b]] for a, b in certificate.torsor_table()
    ]
    return report


def galois_closure_command(run: Run) -> Report:
    result = galois_closure(run.coset_space(run.group()))
    report = result.verify()
    report.data["closure"] = list(result.closure.points)
    return report


def galois_split(run: Run) -> Report:
    return verify_split_eq(run.coset_space(run.group()), run.settings)


def galois_fundamental(run: Run) -> Report:
    group = run.group()
    if run.args.subgroup is None:
        galois = regular(group)
    else:
        galois = run.coset_space(group)
    report = verify_fundamental_discrete(c_a_subcategory(galois, run.settings), run.settings)
    report.include("C_A", c_a_report(galois, settings=run.settings))
    return report


def galois_cofinality_command(run: Run) -> Report:
    return galois_cofinality(run.group(), run.settings)


"""
chain
"""


def chain_verify(run: Run) -> Report:
    chain = run.chain()
    report = Report(f"chain {' ← '.join(g.name for g in chain.stages)}")
    for i, transition in enumerate(chain.transitions):
        report.include(f"inclusion {i + 1}→{i + 2}", verify_bt_star(transition, run.settings))
    report.include("subgroups", cofinal_subgroups(chain, run.settings))
    report.data["document"] = documents.dump("chain", chain)
    return report


def chain_colimit_site(run: Run) -> Report:
    chain = run.chain()
    colimit = colimit_site(chain, run.settings)
    report = colimit.report(run.settings)
    report.data["classes"] = colimit.class_count
    return report


def chain_factor(run: Run) -> Report:
    chain = run.chain()
    gset = run.coset_space(chain.top)
    factorization = factor_transitive(chain, gset)
    report = Report(f"factoring {gset.name} along the chain")
    report.add(
        "comparison is an isomorphism",
        holds_if(factorization.comparison.is_bijective, "the comparison is not bijective"),
    )
    if factorization.note:
        report.note(factorization.note)
    report.data["stage"] = factorization.stage
    report.data["group"] = chain.stage(factorization.stage).name
    return report


"""
yoneda and enrich
"""


def yoneda_verify_command(run: Run) -> Report:
    site = run.site()
    return yoneda_verify(site.functor, run.object_index(site, "--object"), run.settings)


def yoneda_automorphisms_command(run: Run) -> Report:
    site = run.site()
    return yoneda_automorphisms(
        site.category,
        run.object_index(site, "--object"),
        run.object_index(site, "--other"),
        run.settings,
    )


def enrich_points(run: Run) -> Report:
    source = run.site().functor
    target = source
    if run.args.target_file:
        target = documents.load_file("functor", run.args.target_file)
        run.inputs["target"] = documents.dump("functor", target)
    locale = nat_locale(run.args.kind, source, target)
    points, direct = point_counts(locale, run.settings)
    report = Report(
        f"points of l{run.args.kind.value}(F, G)",
        run.settings.engine_label(locale.site.generator_count),
    )
    report.note(f"{points} points")
    if direct is None:
        report.note("no direct count for relations")
    else:
        report.add(
            "count",
            holds_if(points == direct, f"{points} points but {direct} found directly"),
        )
    return report


def enrich_transitivity(run: Run) -> Report:
    return verify_transitivity(run.site(), run.settings)


def enrich_lifting(run: Run) -> Report:
    return verify_lifting(run.site(), run.settings)


def enrich_laws(run: Run) -> Report:
    group = laut_f(run.site().functor)
    report = group.verify_laws(run.settings)
    report.include("actions", check_action_morphisms(group, settings=run.settings))
    return report


def enrich_transition(run: Run) -> Report:
    group = run.group()
    big = run.coset_space(group)
    small = run.coset_space(group, "--quotient")
    arrows = [f for f in hom_gsets(big, small) if f(0) == 0]
    if not arrows:
        raise InputErrors(
            {("--subgroup",): f"{big.name} has no arrow to {small.name}."}
        )
    return verify_galois_transition(arrows[0], run.settings)


def enrich_colimit(run: Run) -> Report:
    group = run.group()
    stages = [
        c_a_subcategory(
            coset_space(group, run.subgroup(group, text, "--stage")), run.settings
        )
        for text in run.args.stage or ()
    ]
    if not stages:
        raise InputErrors({("--stage",): "Give at least one stage."})
    return colimit_inflattices(stages, run.settings)


"""
Arguments
"""


def _common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--json", action="store_true", help="print the report as JSON")
    parser.add_argument("--engine", choices=["full", "lazy", "auto"])
    parser.add_argument("--budget", type=int, help="lazy engine node expansions")
    parser.add_argument("--max-generators", type=int)
    parser.add_argument("--max-group-order", type=int)
    parser.add_argument("--seed", type=int)
    parser.add_argument(
        "--samples", type=int, help="generators compared by sampled checks"
    )
    parser.add_argument("-v", "--verbose", action="count", default=0)


def _group_source(parser: argparse.ArgumentParser, required: bool = True) -> None:
    source = parser.add_mutually_exclusive_group(required=required)
    source.add_argument("--group", help="a built-in group such as Z4, S3, D4 or Q8")
    source.add_argument("--group-file", help="a group document")


def _site_source(parser: argparse.ArgumentParser) -> None:
    source = parser.add_mutually_exclusive_group(required=True)
    source.add_argument("--group", help="the classifying site of a built-in group")
    source.add_argument("--group-file", help="the classifying site of a group document")
    source.add_argument("--functor-file", help="a functor document")
    parser.add_argument("--max-size", type=int, help="drop objects with more points")


def _wraith(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--kind", type=kind, required=True, help="rel, func or bij")
    parser.add_argument("--x", type=int, required=True, help="size of the domain")
    parser.add_argument("--y", type=int, required=True, help="size of the codomain")


def _chain_source(parser: argparse.ArgumentParser) -> None:
    source = parser.add_mutually_exclusive_group(required=True)
    source.add_argument("--chain-file", help="a chain document")
    source.add_argument("--cyclic", help="orders of a cyclic tower, such as 2,4,8")


Handler = Callable[[Run], Report]
Setup = Callable[[argparse.ArgumentParser], None]


def _subgroup(parser: argparse.ArgumentParser, required: bool = True) -> None:
    parser.add_argument(
        "--subgroup",
        required=required,
        help="generators separated by ';', such as \"(1 2);(1 2 3)\"",
    )


def _commands() -> dict[str, dict[str, tuple[Handler, Sequence[Setup], str]]]:
    return {
        "group": {
            "define": (group_define, [_group_source], "load a group and echo it"),
        },
        "gset": {
            "orbits": (
                gset_orbits,
                [
                    _group_source,
                    lambda p: _subgroup(p, required=False),
                    lambda p: p.add_argument(
                        "--action", choices=["cosets", "regular", "natural"], default="cosets"
                    ),
                ],
                "orbits, stabilizers and the action equations",
            ),
        },
        "site": {
            "verify-atomic": (
                site_verify_atomic, [_site_source], "the atomic site axioms"
            ),
        },
        "locale": {
            "points": (
                locale_points,
                [_wraith, lambda p: p.add_argument("--list", action="store_true")],
                "points of a Wraith locale",
            ),
            "verify-laws": (
                locale_verify_laws,
                [
                    _wraith,
                    lambda p: p.add_argument("--via", type=int, help="middle set size"),
                    lambda p: p.add_argument("--corrupt", action="store_true"),
                ],
                "the groupoid laws of the structure maps",
            ),
            "verify-covers": (
                locale_verify_covers, [_wraith], "the covers as frame equations"
            ),
        },
        "galois": {
            "check": (galois_check, [_group_source, _subgroup], "is G/H Galois"),
            "closure": (
                galois_closure_command, [_group_source, _subgroup], "Galois closure of G/H"
            ),
            "split": (
                galois_split, [_group_source, _subgroup], "Split(G/H) and its Galois object"
            ),
            "fundamental": (
                galois_fundamental,
                [_group_source, lambda p: _subgroup(p, required=False)],
                "the fundamental theorem on C_A for A = G/H",
            ),
            "cofinality": (
                galois_cofinality_command, [_group_source], "Galois objects are cofinal"
            ),
        },
        "chain": {
            "verify": (chain_verify, [_chain_source], "restriction along each stage"),
            "colimit-site": (
                chain_colimit_site, [_chain_source], "germs of transitive objects"
            ),
            "factor": (
                chain_factor,
                [_chain_source, _subgroup],
                "the earliest stage a top-stage G/H comes from",
            ),
        },
        "yoneda": {
            "verify": (
                yoneda_verify_command,
                [_site_source, lambda p: p.add_argument("--object", required=True)],
                "lFunc([A, −], F) is discrete on FA",
            ),
            "automorphisms": (
                yoneda_automorphisms_command,
                [
                    _site_source,
                    lambda p: p.add_argument("--object", required=True),
                    lambda p: p.add_argument("--other"),
                ],
                "lBij([A, −], [B, −]) is discrete on Iso(B, A)",
            ),
        },
        "enrich": {
            "points": (
                enrich_points,
                [
                    _site_source,
                    lambda p: p.add_argument("--kind", type=kind, required=True),
                    lambda p: p.add_argument("--target-file"),
                ],
                "points of the natural relation locale",
            ),
            "transitivity": (
                enrich_transitivity, [_site_source], "lAut(F) acts transitively"
            ),
            "lifting": (enrich_lifting, [_site_source], "arrows lift to the frame order"),
            "laws": (enrich_laws, [_site_source], "lAut(F) is a localic group"),
            "transition": (
                enrich_transition,
                [
                    _group_source,
                    _subgroup,
                    lambda p: p.add_argument("--quotient", required=True),
                ],
                "lAut(F on C_B) → lAut(F on C_A) for G/subgroup → G/quotient",
            ),
            "colimit": (
                enrich_colimit,
                [_group_source, lambda p: p.add_argument("--stage", action="append")],
                "lAut over a union of C_A stages",
            ),
        },
    }


def _parse_args(argv: Optional[Sequence[str]]) -> argparse.Namespace:
    parser = _Parser(prog="localic", description=__doc__.strip().splitlines()[0])
    areas = parser.add_subparsers(dest="area", required=True)
    for area, commands in _commands().items():
        area_parser = areas.add_parser(area)
        verbs = area_parser.add_subparsers(dest="verb", required=True)
        for verb, (handler, setups, help_text) in commands.items():
            sub = verbs.add_parser(verb, help=help_text)
            _common(sub)
            for setup in setups:
                setup(sub)
            sub.set_defaults(handler=handler, command=(area, verb))
    return parser.parse_args(argv)


"""
Running
"""


def _configure_logging(verbosity: int) -> None:
    level = logging.WARNING
    if verbosity == 1:
        level = logging.INFO
    elif verbosity > 1:
        level = logging.DEBUG
    logging.basicConfig(
        level=level, stream=sys.stderr, format="%(levelname)s %(name)s: %(message)s"
    )


def _print_errors(issues: dict[str, str]) -> None:
    for path, message in issues.items():
        print(f"{path or '<root>'}: {message}", file=sys.stderr)


def envelope(run: Run, report: Report) -> JSONDict:
    return {
        "command": run.command,
        "inputs": run.digest,
        "report": to_json(report),
    }


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = _parse_args(argv)
    _configure_logging(args.verbose)
    try:
        settings = EngineSettings.from_namespace(args)
    except ValueError as e:
        _print_errors({"settings": str(e)})
        return EXIT_MALFORMED
    run = Run(args, settings)
    start = time.perf_counter()
    try:
        report = args.handler(run)
    except InputErrors as e:
        _print_errors(e.as_dict())
        return EXIT_MALFORMED
    except CapacityError as e:
        logger.info("Gave up: %s", e)
        _print_errors({".".join(e.location): f"capacity: {e}"})
        return EXIT_CODES[UNDECIDED]
    except LocalicError as e:
        _print_errors({".".join(e.location): str(e)})
        return EXIT_MALFORMED
    wall_time = time.perf_counter() - start

    if args.json:
        print(canonical_json(envelope(run, report)))
    else:
        print(f"command: {run.command}")
        print(f"inputs: {run.digest}")
        print(report.render(wall_time))
    return report.exit_code


if __name__ == "__main__":
    raise SystemExit(main())
