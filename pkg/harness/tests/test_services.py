from django.test import TestCase

from core.exceptions import TrainingFailure
from harness.models import ExperimentRun, ResultRow
from harness.results import ResultsTable
from harness.services import ResultService
from harness.tests.factories import tiny_config


class ResultServiceTestCase(TestCase):
    """Test cases for the run registry service"""

    def setUp(self):
        self.cfg = tiny_config()

    def test_start_run(self):
        """Test a started run is stored as running with its config"""
        run = ResultService.start_run('evaluate', self.cfg)
        self.assertEqual(run.status, 'running')
        self.assertEqual(run.name, 'tiny')
        self.assertEqual(run.config['num_satellites'], 3)

    def test_record_run(self):
        """Test recording mirrors every table row"""
        table = ResultsTable()
        table.append(model='cae', metric='mse', value=0.2, seed=0, snr_db=5.0, loss_rate=0.01, num_signals=2)
        table.append(model='cae', metric='compression_factor', value=4.0, seed=0, variant='embedding_dim=46')
        run = ResultService.start_run('ablate', self.cfg)
        ResultService.record_run(run, table, '/tmp/ablate.csv', 1.5)

        run.refresh_from_db()
        self.assertEqual(run.status, 'succeeded')
        self.assertEqual(run.csv_path, '/tmp/ablate.csv')
        self.assertIsNotNone(run.finished_at)
        self.assertEqual(run.rows.count(), 2)
        factor = ResultRow.objects.get(metric='compression_factor')
        self.assertIsNone(factor.snr_db)
        self.assertEqual(factor.variant, 'embedding_dim=46')

    def test_record_without_table(self):
        """Test commands without a table still close their run"""
        run = ResultService.start_run('link_budget', self.cfg)
        ResultService.record_run(run)
        self.assertEqual(ExperimentRun.objects.get(pk=run.pk).status, 'succeeded')
        self.assertEqual(ResultRow.objects.count(), 0)

    def test_fail_run(self):
        """Test a failed run keeps the error message"""
        run = ResultService.start_run('train_cae', self.cfg)
        ResultService.fail_run(run, TrainingFailure('loss is nan'), 0.3)
        run.refresh_from_db()
        self.assertEqual(run.status, 'failed')
        self.assertIn('nan', run.error)
