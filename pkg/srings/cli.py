"""
Helpers shared by the management commands: S-ring sources, error mapping
and saving Schurity runs.
"""

import sys
from contextlib import contextmanager
from typing import Optional, Tuple

from django.core.management.base import CommandError

from .exceptions import ParseError, ValidationFailure
from .formats import parse_sequence, read_partition
from .pgroup import Family, GroupSpec, build_group
from .sequences import (
    SuitableSequence,
    canonical_sequence,
    mod4_3_sequence,
    sring_from_sequence,
)
from .sring import SRing, validate_sring

EXIT_VALIDATION = 1
EXIT_PARSE = 2
EXIT_DISAGREEMENT = 3


@contextmanager
def command_errors():
    """Map library failures to CommandError exit codes"""
    try:
        yield
    except ValidationFailure as exc:
        raise CommandError(f"{type(exc).__name__}: {exc}", returncode=EXIT_VALIDATION)
    except ParseError as exc:
        raise CommandError(f"{type(exc).__name__}: {exc}", returncode=EXIT_PARSE)


def add_group_arguments(parser, required=False):
    parser.add_argument(
        "--group",
        type=str,
        choices=[family.value for family in Family],
        default=None if required else Family.H1.value,
        required=required,
        help="Group family (default: h1)"
    )
    parser.add_argument(
        "--p",
        type=int,
        help="Odd prime p"
    )


def add_sequence_arguments(parser):
    choice = parser.add_mutually_exclusive_group()
    choice.add_argument("--seq", type=str, help="Comma-separated suitable sequence, e.g. 0,4,2,5,6,1")
    choice.add_argument("--canonical", action="store_true", help="Use x_i = ((p-1)/2)(i-1)")
    choice.add_argument("--mod4-3", action="store_true", dest="mod4_3",
                        help="Use the x_2 = (p+1)/2 construction (p = 3 mod 4)")


def add_sring_source_arguments(parser):
    """An S-ring comes from FILE, from stdin, or is built from a sequence"""
    parser.add_argument(
        "file",
        nargs="?",
        help="S-ring class file; '-' or omitted reads stdin unless a sequence is given"
    )
    parser.add_argument("--sring", type=str, dest="sring_file", help="S-ring class file")
    add_group_arguments(parser)
    add_sequence_arguments(parser)


def sequence_from_options(options) -> Optional[SuitableSequence]:
    p = options.get("p")
    if options.get("seq"):
        values = parse_sequence(options["seq"])
        return SuitableSequence(p if p else len(values) + 1, values)
    if options.get("canonical") or options.get("mod4_3"):
        if not p:
            raise CommandError("--p is required with --canonical/--mod4-3", returncode=EXIT_PARSE)
        return canonical_sequence(p) if options.get("canonical") else mod4_3_sequence(p)
    return None


def read_text(path: Optional[str], stdin) -> Tuple[str, str]:
    if path and path != "-":
        with open(path, encoding="utf-8") as handle:
            return handle.read(), path
    return stdin.read(), "<stdin>"


def load_sring(options) -> Tuple[SRing, Optional[SuitableSequence], str]:
    """
    Returns:
        (S-ring, the sequence it was built from or None, source label)
    """
    seq = sequence_from_options(options)
    if seq is not None:
        family = Family(options.get("group") or Family.H1.value)
        return sring_from_sequence(family, seq), seq, f"{family.value} sequence {seq}"
    stdin = options.get("stdin") or sys.stdin
    text, label = read_text(options.get("sring_file") or options.get("file"), stdin)
    return validate_sring(read_partition(text)), None, label


def build_group_from_options(options):
    if not options.get("p"):
        raise CommandError("--p is required", returncode=EXIT_PARSE)
    return build_group(GroupSpec(Family(options["group"]), options["p"]))


def write_output(command, text: str, path: Optional[str]):
    if path:
        with open(path, "w", encoding="utf-8") as handle:
            handle.write(text)
        command.stdout.write(command.style.SUCCESS(f"Written to {path}"))
    else:
        command.stdout.write(text, ending="")


def save_record(sr: SRing, seq: Optional[SuitableSequence], source: str, conditions,
                residue_order: int, aut=None, compat=None):
    from .models import SchurityRecord

    return SchurityRecord.objects.create(
        group_family=sr.group.family.value,
        prime=sr.group.prime,
        sequence=str(seq) if seq is not None else "",
        source=source[:255],
        class_count=sr.rank,
        thin_residue_order=residue_order,
        holds_a=conditions.holds_A,
        holds_b=conditions.holds_B,
        stabilizer_order=str(aut.aut.stabilizer_order) if aut is not None else "",
        full_aut_order=str(aut.aut.full_aut_order) if aut is not None else "",
        aut_schurian=aut.schurian if aut is not None else None,
        compat_schurian=compat.schurian if compat is not None else None,
    )
