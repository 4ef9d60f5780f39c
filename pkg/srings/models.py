from django.db import models

from .pgroup import Family


class SchurityRecord(models.Model):
    """A Schurity run saved by ``schurity ... --record`` or ``demo ... --record``"""
    group_family = models.CharField(max_length=2, choices=Family.choices)
    prime = models.IntegerField()
    sequence = models.CharField(max_length=100, blank=True)  # CSV, blank for file input
    source = models.CharField(max_length=255, blank=True)
    class_count = models.IntegerField()
    thin_residue_order = models.IntegerField()
    holds_a = models.BooleanField(default=False)
    holds_b = models.BooleanField(default=False)
    # Orders can exceed 64 bits (trivial schemes), so they are kept as text
    stabilizer_order = models.CharField(max_length=64, blank=True)
    full_aut_order = models.CharField(max_length=64, blank=True)
    aut_schurian = models.BooleanField(null=True)
    compat_schurian = models.BooleanField(null=True)
    created_at = models.DateTimeField(auto_now_add=True)

    class Meta:
        ordering = ['-created_at', '-id']
        indexes = [
            models.Index(fields=['group_family', 'prime'], name='srings_family_prime_idx'),
        ]

    def __str__(self):
        label = self.sequence or self.source or 'unnamed'
        return f"{self.group_family}({self.prime}) {label}: {self.verdict}"

    @property
    def verdict(self) -> str:
        verdicts = {v for v in (self.aut_schurian, self.compat_schurian) if v is not None}
        if not verdicts:
            return 'undecided'
        if len(verdicts) > 1:
            return 'disagreement'
        return 'Schurian' if verdicts.pop() else 'non-Schurian'
