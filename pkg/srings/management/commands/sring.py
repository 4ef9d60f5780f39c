from collections import Counter

from django.core.management.base import BaseCommand, CommandError

from srings.cli import EXIT_PARSE, add_sring_source_arguments, command_errors, load_sring, write_output
from srings.formats import write_sring
from srings.scheme import (
    group_algebra_constants_match,
    intersection_numbers,
    lemma_suite,
    scheme_from_sring,
)
from srings.sring import (
    a_subgroups,
    check_conditions_AB,
    is_commutative,
    is_p_sring,
    thin_radical,
    thin_residue,
)


class Command(BaseCommand):
    help = "Build an S-ring from a suitable sequence, validate a class file, or report its invariants"
    stealth_options = ("stdin",)

    def add_arguments(self, parser):
        parser.add_argument(
            "action",
            choices=["build", "validate", "info"],
            help="Sub-action"
        )
        add_sring_source_arguments(parser)
        parser.add_argument(
            "--out",
            type=str,
            help="Write the class file here instead of stdout (build)"
        )
        parser.add_argument(
            "--lemmas",
            action="store_true",
            help="Also run the scheme lemma suite (info)"
        )

    def handle(self, *args, **options):
        action = options["action"]
        with command_errors():
            if action == "build" and not (options["seq"] or options["canonical"] or options["mod4_3"]):
                raise CommandError("build needs --canonical, --mod4-3 or --seq", returncode=EXIT_PARSE)
            sr, seq, source = load_sring(options)
            if action == "build":
                comments = [f"built from {seq}"]
                write_output(self, write_sring(sr, comments), options["out"])
            elif action == "validate":
                self.stdout.write(self.style.SUCCESS(
                    f"{source}: valid S-ring over {sr.group.spec.header} with {sr.rank} classes"
                ))
            else:
                self.info(sr, source, options["lemmas"])

    def info(self, sr, source, run_lemmas):
        group = sr.group
        self.stdout.write(self.style.SUCCESS(f"{group.spec.header} ({source})"))
        census = Counter(len(members) for members in sr.classes)
        self.stdout.write(
            f"classes: {sr.rank} (" + ", ".join(f"{count} of size {size}" for size, count in sorted(census.items())) + ")"
        )
        self.stdout.write(f"p-S-ring: {is_p_sring(sr)}")
        self.stdout.write(f"commutative: {is_commutative(sr)}")
        self.stdout.write(f"thin radical order: {len(thin_radical(sr))}")
        self.stdout.write(f"thin residue order: {len(thin_residue(sr))}")
        self.stdout.write(f"A-subgroups: {len(a_subgroups(sr))}")
        conditions = check_conditions_AB(sr)
        self.stdout.write(f"condition (A): {conditions.holds_A}")
        self.stdout.write(f"condition (B): {conditions.holds_B} ({conditions.distinct_stabilizers} distinct stabilizers)")
        self.stdout.write(f"stabilizers avoid the center: {conditions.stabilizers_avoid_center}")
        self.stdout.write(f"L plus shifted classes layout: {conditions.block_structure_holds}")
        if run_lemmas:
            cs = scheme_from_sring(sr)
            report = lemma_suite(cs)
            numbers = intersection_numbers(cs)
            self.stdout.write(
                f"lemma suite over {report.base_points} base points: "
                + ("ok" if report.ok else f"{len(report.violations)} violations")
            )
            for violation in report.violations:
                self.stdout.write(self.style.ERROR(f"  {violation}"))
            self.stdout.write(f"relational constants match group algebra: {group_algebra_constants_match(cs, numbers)}")
