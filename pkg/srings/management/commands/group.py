from django.core.management.base import BaseCommand

from srings.cli import add_group_arguments, build_group_from_options, command_errors
from srings.formats import format_element
from srings.pgroup import center


class Command(BaseCommand):
    help = "Show the normal form, center and generator orders of H1(p) or H2(p)"

    def add_arguments(self, parser):
        parser.add_argument(
            "action",
            choices=["info"],
            help="Sub-action"
        )
        add_group_arguments(parser)
        parser.add_argument(
            "--elements",
            action="store_true",
            help="Also list every element with its index"
        )

    def handle(self, *args, **options):
        with command_errors():
            group = build_group_from_options(options)

        self.stdout.write(self.style.SUCCESS(group.spec.header))
        self.stdout.write(f"order: {group.order}")
        z_center = sorted(center(group))
        self.stdout.write(
            f"center ({len(z_center)}): " + ", ".join(format_element(group, z) for z in z_center)
        )
        names = ("a", "b") if group.family == "h1" else ("a", "b", "c")
        for name in names:
            self.stdout.write(f"order of {name}: {group.element_order(group.generator(name))}")
        self.stdout.write("multiplication law verified against the presentation")
        if options["elements"]:
            for x in range(group.order):
                self.stdout.write(f"{x:5d} {format_element(group, x)}")
