import csv

from django.core.management.base import BaseCommand
from django.utils import timezone

from srings.models import SchurityRecord
from srings.pgroup import Family


class Command(BaseCommand):
    help = "List saved Schurity records or export them to CSV"

    def add_arguments(self, parser):
        parser.add_argument(
            "--format",
            type=str,
            choices=["console", "csv"],
            default="console",
            help="Output format for the report"
        )
        parser.add_argument(
            "--output",
            type=str,
            help="Output file path (for csv format)"
        )
        parser.add_argument(
            "--group",
            type=str,
            choices=[family.value for family in Family],
            help="Only records for this group family"
        )
        parser.add_argument(
            "--p",
            type=int,
            help="Only records for this prime"
        )

    def handle(self, *args, **options):
        queryset = SchurityRecord.objects.all()
        if options["group"]:
            queryset = queryset.filter(group_family=options["group"])
        if options["p"]:
            queryset = queryset.filter(prime=options["p"])

        if options["format"] == "csv":
            self.export_csv(queryset, options["output"])
        else:
            self.display_console(queryset)

    def display_console(self, queryset):
        self.stdout.write(self.style.SUCCESS(f"{queryset.count()} Schurity records"))
        for record in queryset:
            self.stdout.write(
                f"#{record.pk} {record.created_at:%Y-%m-%d %H:%M} {record}"
                f" | classes {record.class_count}, |Aut| {record.full_aut_order or '-'}"
            )
        disagreements = [record.pk for record in queryset if record.verdict == "disagreement"]
        if disagreements:
            self.stdout.write(self.style.ERROR(f"Methods disagree on records {disagreements}"))

    def export_csv(self, queryset, output_file):
        """Export records to CSV file"""
        if not output_file:
            output_file = f"schurity_records_{timezone.now().strftime('%Y%m%d_%H%M%S')}.csv"

        with open(output_file, "w", newline="", encoding="utf-8") as csvfile:
            writer = csv.writer(csvfile)
            writer.writerow([
                "ID", "Group", "p", "Sequence", "Source", "Classes", "Thin Residue Order",
                "Condition A", "Condition B", "Stabilizer Order", "Aut Order",
                "Aut Verdict", "Compatibility Verdict", "Verdict", "Created",
            ])
            for record in queryset:
                writer.writerow([
                    record.pk,
                    record.group_family,
                    record.prime,
                    record.sequence,
                    record.source,
                    record.class_count,
                    record.thin_residue_order,
                    record.holds_a,
                    record.holds_b,
                    record.stabilizer_order,
                    record.full_aut_order,
                    "" if record.aut_schurian is None else record.aut_schurian,
                    "" if record.compat_schurian is None else record.compat_schurian,
                    record.verdict,
                    record.created_at.strftime("%Y-%m-%d %H:%M:%S"),
                ])

        self.stdout.write(self.style.SUCCESS(f"Report exported to {output_file}"))
