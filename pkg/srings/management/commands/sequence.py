import csv

from django.core.management.base import BaseCommand, CommandError
from django.utils import timezone

from srings.cli import EXIT_PARSE, add_sequence_arguments, command_errors, sequence_from_options
from srings.formats import parse_sequence
from srings.sequences import enumerate_suitable, is_suitable


class Command(BaseCommand):
    help = "Enumerate, construct or check suitable sequences over Z_p"

    def add_arguments(self, parser):
        parser.add_argument(
            "action",
            choices=["enum", "make", "check"],
            help="enum: all sequences for p; make: one construction; check: test --seq"
        )
        parser.add_argument(
            "--p",
            type=int,
            help="Odd prime p"
        )
        add_sequence_arguments(parser)
        parser.add_argument(
            "--format",
            type=str,
            choices=["console", "csv"],
            default="console",
            help="Output format for enum"
        )
        parser.add_argument(
            "--output",
            type=str,
            help="Output file path (csv format)"
        )

    def handle(self, *args, **options):
        action = options["action"]
        with command_errors():
            if action == "enum":
                self.enumerate(options)
            elif action == "make":
                seq = sequence_from_options(options)
                if seq is None:
                    raise CommandError("make needs --canonical, --mod4-3 or --seq", returncode=EXIT_PARSE)
                self.stdout.write(str(seq))
            else:
                self.check(options)

    def enumerate(self, options):
        p = options["p"]
        if not p:
            raise CommandError("--p is required", returncode=EXIT_PARSE)
        sequences = enumerate_suitable(p)
        if options["format"] == "csv":
            self.export_csv(sequences, p, options["output"])
            return
        for seq in sequences:
            self.stdout.write(str(seq))

    def check(self, options):
        if not options.get("seq"):
            raise CommandError("check needs --seq", returncode=EXIT_PARSE)
        values = parse_sequence(options["seq"])
        p = options["p"] or len(values) + 1
        if is_suitable(values, p):
            self.stdout.write(self.style.SUCCESS(f"{options['seq']} is suitable for p={p}"))
        else:
            raise CommandError(f"{options['seq']} is not suitable for p={p}", returncode=1)

    def export_csv(self, sequences, p, output_file):
        """Export an enumeration to CSV, one sequence per row"""
        if not output_file:
            output_file = f"suitable_p{p}_{timezone.now().strftime('%Y%m%d_%H%M%S')}.csv"
        with open(output_file, "w", newline="", encoding="utf-8") as csvfile:
            writer = csv.writer(csvfile)
            writer.writerow(["p", "missing"] + [f"x{i}" for i in range(1, p)])
            for seq in sequences:
                writer.writerow([p, seq.missing] + list(seq.x))
        self.stdout.write(self.style.SUCCESS(f"{len(sequences)} sequences exported to {output_file}"))
