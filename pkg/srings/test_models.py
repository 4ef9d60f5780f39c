from django.test import TestCase

from srings.models import SchurityRecord
from srings.pgroup import Family


class SchurityRecordTests(TestCase):
    def make_record(self, **kwargs):
        fields = dict(
            group_family=Family.H1,
            prime=7,
            sequence='0,3,6,2,5,1',
            class_count=91,
            thin_residue_order=49,
            holds_a=True,
            holds_b=True,
        )
        fields.update(kwargs)
        return SchurityRecord.objects.create(**fields)

    def test_record_creation(self):
        """Test record creation"""
        record = self.make_record(stabilizer_order='7', full_aut_order='2401', aut_schurian=True)
        self.assertEqual(record.prime, 7)
        self.assertEqual(record.full_aut_order, '2401')
        self.assertIsNotNone(record.created_at)

    def test_verdicts(self):
        """Test the combined verdict of the two methods"""
        self.assertEqual(self.make_record().verdict, 'undecided')
        self.assertEqual(self.make_record(aut_schurian=True, compat_schurian=True).verdict, 'Schurian')
        self.assertEqual(self.make_record(compat_schurian=False).verdict, 'non-Schurian')
        self.assertEqual(self.make_record(aut_schurian=True, compat_schurian=False).verdict, 'disagreement')

    def test_str_method(self):
        """Test record string representation"""
        record = self.make_record(aut_schurian=False, compat_schurian=False)
        self.assertEqual(str(record), 'h1(7) 0,3,6,2,5,1: non-Schurian')
        unnamed = self.make_record(sequence='', source='a2.txt', aut_schurian=True)
        self.assertEqual(str(unnamed), 'h1(7) a2.txt: Schurian')

    def test_ordering(self):
        """Test newest records come first"""
        first = self.make_record()
        second = self.make_record()
        self.assertEqual(list(SchurityRecord.objects.all()), [second, first])

    def test_large_orders_fit(self):
        """Test a 26! automorphism order is stored as text"""
        record = self.make_record(full_aut_order=str(27 * 403291461126605635584000000))
        record.refresh_from_db()
        self.assertEqual(int(record.full_aut_order), 27 * 403291461126605635584000000)
