import time

from django.core.management.base import BaseCommand, CommandError

from srings.automorphism import Precheck, aut_order_precheck, is_schurian
from srings.cli import (
    EXIT_DISAGREEMENT,
    add_sring_source_arguments,
    command_errors,
    load_sring,
    save_record,
)
from srings.compatibility import (
    CongruenceLine,
    line_matches_block,
    schurity_by_compatibility,
    triple_congruence,
)
from srings.formats import format_permutation
from srings.pgroup import Family
from srings.scheme import scheme_from_sring
from srings.sring import check_conditions_AB, thin_residue

# (i, j, k) triples of the congruence argument and the lines they should give
CONGRUENCE_TRIPLES = ((1, 2, 1), (2, 3, 1), (1, 3, 2))


class Command(BaseCommand):
    help = "Decide Schurity of an S-ring by automorphisms, by compatibility, or by both"
    stealth_options = ("stdin",)

    def add_arguments(self, parser):
        parser.add_argument(
            "method",
            choices=["aut", "compat", "all"],
            help="aut: automorphism group; compat: Gamma_1 compatibility; all: both, which must agree"
        )
        add_sring_source_arguments(parser)
        parser.add_argument(
            "--emit-generators",
            action="store_true",
            help="Print stabilizer generators as image arrays"
        )
        parser.add_argument(
            "--threads",
            type=int,
            help="Worker threads for the automorphism search"
        )
        parser.add_argument(
            "--record",
            action="store_true",
            help="Save the verdicts as a SchurityRecord"
        )

    def handle(self, *args, **options):
        method = options["method"]
        with command_errors():
            sr, seq, source = load_sring(options)
            cs = scheme_from_sring(sr)
            conditions = check_conditions_AB(sr)
            residue_order = len(thin_residue(sr))

            self.stdout.write(self.style.SUCCESS(f"{sr.group.spec.header} ({source})"))
            self.stdout.write(f"classes: {sr.rank}, thin residue order: {residue_order}")
            self.stdout.write(f"conditions: (A)={conditions.holds_A} (B)={conditions.holds_B}")

            aut = compat = None
            if method in ("aut", "all"):
                aut = self.run_aut(sr, cs, conditions, options)
            if method == "compat":
                compat = self.run_compat(sr, cs)
            elif method == "all" and conditions.holds_A and conditions.holds_B:
                compat = self.run_compat(sr, cs)
            elif method == "all":
                self.stdout.write("compatibility: not applicable without conditions (A) and (B)")

        if options["record"]:
            record = save_record(sr, seq, source, conditions, residue_order, aut=aut, compat=compat)
            self.stdout.write(f"saved record #{record.pk}")

        if aut is not None and compat is not None and aut.schurian != compat.schurian:
            raise CommandError(
                f"methods disagree: automorphisms say {self.verdict(aut.schurian)}, "
                f"compatibility says {self.verdict(compat.schurian)}",
                returncode=EXIT_DISAGREEMENT,
            )
        final = aut if aut is not None else compat
        self.stdout.write(self.style.SUCCESS(f"verdict: {self.verdict(final.schurian)}"))

    @staticmethod
    def verdict(schurian):
        return "Schurian" if schurian else "non-Schurian"

    def run_aut(self, sr, cs, conditions, options):
        started = time.perf_counter()
        certificate = is_schurian(sr, threads=options["threads"], cs=cs)
        elapsed = time.perf_counter() - started
        aut = certificate.aut
        self.stdout.write(f"stabilizer order: {aut.stabilizer_order}")
        self.stdout.write(f"automorphism group order: {aut.full_aut_order}")
        self.stdout.write(f"stabilizer orbits: {len(aut.orbits)} (classes: {sr.rank})")
        self.stdout.write(f"base: {format_permutation(aut.base)}")
        if conditions.holds_A and conditions.holds_B:
            precheck = aut_order_precheck(sr, aut)
            note = " (stabilizer order is not p)" if precheck == Precheck.CERTAINLY_NOT else ""
            self.stdout.write(f"order precheck: {precheck.value}{note}")
        if not certificate.schurian:
            self.stdout.write(
                f"class {certificate.split_class} splits into {len(certificate.split_orbits)} orbits"
            )
        if options["emit_generators"]:
            for images in aut.generators:
                self.stdout.write(format_permutation(images))
        self.stdout.write(f"automorphisms: {self.verdict(certificate.schurian)} ({elapsed:.2f}s)")
        return certificate

    def run_compat(self, sr, cs):
        started = time.perf_counter()
        verdict = schurity_by_compatibility(sr, cs)
        elapsed = time.perf_counter() - started
        basis = verdict.basis
        self.stdout.write(f"ordered values: {','.join(str(v) for v in basis.values)}")
        self.stdout.write(f"branches explored: {verdict.branches}")
        if verdict.schurian:
            for i, images in enumerate(verdict.restrictions, start=1):
                self.stdout.write(f"sigma on T_{i}: {format_permutation(images)}")
        self.print_congruences(sr, cs, basis)
        self.stdout.write(f"compatibility: {self.verdict(verdict.schurian)} ({elapsed:.2f}s)")
        return verdict

    def print_congruences(self, sr, cs, basis):
        """Only for H1 with p = 3 mod 4, p >= 7 and x_3 = p - 1"""
        p = sr.group.prime
        if sr.group.family != Family.H1 or p % 4 != 3 or p < 7 or basis.values[2] != p - 1:
            return
        lines = [triple_congruence(sr, i, j, k, basis) for i, j, k in CONGRUENCE_TRIPLES]
        self.stdout.write("congruences (n in T_i, l in T_j, pair in R(T_k)):")
        for line in lines:
            i, j, k = line.source
            matches = line_matches_block(sr, line, cs, basis)
            self.stdout.write(f"  i={i} j={j} k={k}: {line}  block matches: {matches}")
        composed: CongruenceLine = lines[0].compose(lines[1])
        n, l = p - 1, 1
        self.stdout.write(f"  composed: {composed}")
        self.stdout.write(
            f"  (n, l) = ({n}, {l}): third line {lines[2].holds(n, l)}, composed {composed.holds(n, l)}"
        )
