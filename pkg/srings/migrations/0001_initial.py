# Generated by Django 4.2.23 on 2026-10-19 09:00

from django.db import migrations, models


class Migration(migrations.Migration):

    initial = True

    dependencies = []

    operations = [
        migrations.CreateModel(
            name='SchurityRecord',
            fields=[
                ('id', models.BigAutoField(auto_created=True, primary_key=True, serialize=False, verbose_name='ID')),
                ('group_family', models.CharField(choices=[('h1', 'H1'), ('h2', 'H2')], max_length=2)),
                ('prime', models.IntegerField()),
                ('sequence', models.CharField(blank=True, max_length=100)),
                ('source', models.CharField(blank=True, max_length=255)),
                ('class_count', models.IntegerField()),
                ('thin_residue_order', models.IntegerField()),
                ('holds_a', models.BooleanField(default=False)),
                ('holds_b', models.BooleanField(default=False)),
                ('stabilizer_order', models.CharField(blank=True, max_length=64)),
                ('full_aut_order', models.CharField(blank=True, max_length=64)),
                ('aut_schurian', models.BooleanField(null=True)),
                ('compat_schurian', models.BooleanField(null=True)),
                ('created_at', models.DateTimeField(auto_now_add=True)),
            ],
            options={
                'ordering': ['-created_at', '-id'],
                'indexes': [models.Index(fields=['group_family', 'prime'], name='srings_family_prime_idx')],
            },
        ),
    ]
