from django.core.management.base import BaseCommand, CommandError

from srings.cli import add_sring_source_arguments, command_errors, load_sring, write_output
from srings.formats import export_color_matrix
from srings.scheme import (
    check_thin_residue_structure,
    group_algebra_constants_match,
    intersection_numbers,
    is_p_scheme,
    lemma_suite,
    scheme_from_sring,
    thin_residue_relations,
)


class Command(BaseCommand):
    help = "Export the Cayley scheme color matrix of an S-ring or check its lemmas"
    stealth_options = ("stdin",)

    def add_arguments(self, parser):
        parser.add_argument(
            "action",
            choices=["export", "check"],
            help="export: color matrix; check: lemma suite and residue structure"
        )
        add_sring_source_arguments(parser)
        parser.add_argument(
            "--out",
            type=str,
            help="Write the matrix here instead of stdout"
        )

    def handle(self, *args, **options):
        with command_errors():
            sr, _, source = load_sring(options)
            cs = scheme_from_sring(sr)
            if options["action"] == "export":
                write_output(self, export_color_matrix(cs), options["out"])
                return
            numbers = intersection_numbers(cs)
            report = lemma_suite(cs)
            generated = thin_residue_relations(cs, numbers, method="generated")
            lattice = thin_residue_relations(cs, numbers, method="lattice")

        self.stdout.write(self.style.SUCCESS(f"{sr.group.spec.header} ({source})"))
        self.stdout.write(f"relations: {cs.rank}, total valency {numbers.total}")
        self.stdout.write(f"p-scheme: {is_p_scheme(cs, numbers)}")
        self.stdout.write(f"relational constants match group algebra: {group_algebra_constants_match(cs, numbers)}")
        self.stdout.write(f"thin residue relations: {len(generated)} (both characterizations agree: {generated == lattice})")
        self.stdout.write(f"thin residue is thin, closed, C_p x C_p: {check_thin_residue_structure(cs, numbers)}")
        self.stdout.write(f"lemma suite over {report.base_points} base points: {'ok' if report.ok else 'FAILED'}")
        for violation in report.violations:
            self.stdout.write(self.style.ERROR(f"  {violation}"))
        if not report.ok or generated != lattice:
            raise CommandError("scheme checks failed", returncode=1)
