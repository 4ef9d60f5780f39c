import logging

from django.core.management.base import BaseCommand, CommandError

from srings.automorphism import is_schurian
from srings.cli import EXIT_DISAGREEMENT, EXIT_VALIDATION, command_errors, save_record
from srings.compatibility import schurity_by_compatibility
from srings.formats import format_element
from srings.scheme import lemma_suite, scheme_from_sring
from srings.sequences import canonical_sequence, mod4_3_sequence, sring_h1_from_sequence, thin_subgroup
from srings.sring import check_conditions_AB, thin_residue

logger = logging.getLogger(__name__)

DEMO_PRIME = 7


class Command(BaseCommand):
    help = "Rebuild the two 7-S-rings over H1(7) and confirm one is Schurian and the other is not"

    def add_arguments(self, parser):
        parser.add_argument(
            "example",
            choices=["example-1.1"],
            help="Demo to run"
        )
        parser.add_argument(
            "--record",
            action="store_true",
            help="Save both verdicts as SchurityRecords"
        )

    def handle(self, *args, **options):
        p = DEMO_PRIME
        cases = [
            ("A1", canonical_sequence(p), True),
            ("A2", mod4_3_sequence(p), False),
        ]
        failures = []
        with command_errors():
            for name, seq, expected in cases:
                failures.extend(self.run_case(name, seq, expected, options["record"]))

        if failures:
            for failure in failures:
                self.stdout.write(self.style.ERROR(failure))
            disagreement = any("disagree" in failure for failure in failures)
            raise CommandError(
                f"{len(failures)} deviations from the expected verdicts",
                returncode=EXIT_DISAGREEMENT if disagreement else EXIT_VALIDATION,
            )
        self.stdout.write(self.style.SUCCESS("All expected verdicts reproduced"))

    def run_case(self, name, seq, expected, record):
        failures = []
        sr = sring_h1_from_sequence(seq)
        group = sr.group
        cs = scheme_from_sring(sr)
        self.stdout.write(self.style.SUCCESS(f"{name}: {group.spec.header} sequence {seq}"))
        self.stdout.write(f"  classes: {sr.rank}")

        residue = thin_residue(sr)
        expected_residue = frozenset(thin_subgroup(group))
        self.stdout.write(
            f"  thin residue order: {len(residue)} (<{format_element(group, group.central_element())},"
            f" {format_element(group, group.generator('b'))}>: {residue == expected_residue})"
        )
        if residue != expected_residue:
            failures.append(f"{name}: thin residue is not <a^{group.prime}, b>")

        report = lemma_suite(cs)
        self.stdout.write(f"  lemma suite: {'ok' if report.ok else 'FAILED'}")
        if not report.ok:
            failures.extend(f"{name}: {violation}" for violation in report.violations)

        conditions = check_conditions_AB(sr)
        self.stdout.write(f"  conditions: (A)={conditions.holds_A} (B)={conditions.holds_B}")

        certificate = is_schurian(sr, cs=cs)
        self.stdout.write(
            f"  stabilizer order: {certificate.aut.stabilizer_order}, "
            f"automorphism group order: {certificate.aut.full_aut_order}"
        )
        compat = schurity_by_compatibility(sr, cs)
        for method, verdict in (("automorphisms", certificate.schurian), ("compatibility", compat.schurian)):
            self.stdout.write(f"  {method}: {'Schurian' if verdict else 'non-Schurian'}")
            if verdict != expected:
                failures.append(f"{name}: {method} gave {'Schurian' if verdict else 'non-Schurian'}")
        if certificate.schurian != compat.schurian:
            failures.append(f"{name}: methods disagree")
        if expected and certificate.aut.stabilizer_order != group.prime:
            failures.append(f"{name}: stabilizer order {certificate.aut.stabilizer_order}, expected {group.prime}")

        if record:
            save_record(sr, seq, f"demo example-1.1 {name}", conditions, len(residue),
                        aut=certificate, compat=compat)
        logger.info(f"Demo case {name} done with {len(failures)} deviations")
        return failures
