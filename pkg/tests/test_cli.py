"""Tests for the bic1d command line."""

import contextlib
import csv
import io
import json
import math
import os
import tempfile
import unittest

import pytest
from jsonschema import Draft7Validator

from bic1d.cli import EXIT_INVALID, EXIT_NOT_EIGENVALUE, EXIT_OK, build_parser, main
from bic1d.documents import SCHEMA_PATH


def run_cli(*argv):
    """Run main() and return (exit code, stdout, stderr)."""
    out, err = io.StringIO(), io.StringIO()
    with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
        code = main(list(argv))
    return code, out.getvalue(), err.getvalue()


def csv_rows(text):
    reader = csv.reader(io.StringIO(text))
    header = next(reader)
    return header, [dict(zip(header, row)) for row in reader]


class TestSpectrumCommand(unittest.TestCase):
    """Test cases for `bic1d spectrum`."""

    def setUp(self):
        with open(SCHEMA_PATH, encoding='utf-8') as f:
            self.validator = Draft7Validator(json.load(f))

    def test_default_spectrum_csv(self):
        """Five states at the reference energies."""
        code, out, _ = run_cli('spectrum', '--v0', '50', '--a', '1')
        self.assertEqual(code, EXIT_OK)
        header, rows = csv_rows(out)
        self.assertEqual(header[:4], ['index', 'parity', 'energy', 'kappa_a'])
        self.assertEqual(len(rows), 5)
        expected = [18.6108, 37.2630, 44.8253, 48.9214, 49.9988]
        for row, energy in zip(rows, expected):
            self.assertAlmostEqual(float(row['energy']), energy, delta=5e-3)
            self.assertGreater(float(row['norm_sq']), 0.0)
            self.assertEqual(row['oracle_residual'], '')
        self.assertEqual([row['parity'] for row in rows], ['Even', 'Odd', 'Even', 'Odd', 'Even'])

    def test_json_document(self):
        """JSON output validates against the published schema."""
        code, out, _ = run_cli('spectrum', '--format', 'json')
        self.assertEqual(code, EXIT_OK)
        document = json.loads(out)
        self.assertEqual(list(self.validator.iter_errors(document)), [])
        self.assertEqual(document['command'], 'spectrum')
        self.assertEqual(len(document['payload']['rows']), 5)
        self.assertEqual(document['payload']['summary'], {'count': 5})
        self.assertEqual(document['config']['model'], {'v0': 50.0, 'a': 1.0, 'h2m': 1.0})

    def test_digest_is_reproducible(self):
        """Identical runs share the payload digest."""
        first = json.loads(run_cli('spectrum', '--format', 'json')[1])
        second = json.loads(run_cli('spectrum', '--format', 'json')[1])
        self.assertEqual(first['payload_digest'], second['payload_digest'])

    def test_empty_spectrum(self):
        """Tiny qa gives an empty table and exit 0."""
        code, out, _ = run_cli('spectrum', '--v0', '0.1', '--a', '0.1')
        self.assertEqual(code, EXIT_OK)
        header, rows = csv_rows(out)
        self.assertIn('energy', header)
        self.assertEqual(rows, [])

    def test_invalid_parameter(self):
        """Negative V0 exits with code 2."""
        code, out, err = run_cli('spectrum', '--v0', '-1')
        self.assertEqual(code, EXIT_INVALID)
        self.assertEqual(out, '')
        self.assertIn('v0', err)

    def test_condition_curve(self):
        """--curve N emits both conditions at N energies."""
        code, out, _ = run_cli('spectrum', '--curve', '25')
        self.assertEqual(code, EXIT_OK)
        header, rows = csv_rows(out)
        self.assertEqual(header, ['energy', 'kappa_a', 'even_condition', 'odd_condition'])
        self.assertEqual(len(rows), 25)

    @pytest.mark.slow
    def test_verified_spectrum(self):
        """--verify fills the oracle residual column."""
        code, out, _ = run_cli('spectrum', '--verify', '--format', 'json')
        self.assertEqual(code, EXIT_OK)
        document = json.loads(out)
        column = document['payload']['columns'].index('oracle_residual')
        for row in document['payload']['rows']:
            self.assertLessEqual(row[column], 1e-4)
        self.assertEqual(document['provenance'], 'Both')
        self.assertEqual(document['payload']['summary']['oracle_count'], 5)


class TestWavefunctionCommand(unittest.TestCase):
    """Test cases for `bic1d wavefunction`."""

    def test_not_an_eigenvalue(self):
        """A closed-form table at a generic energy exits with code 4."""
        code, out, err = run_cli('wavefunction', '--energy', '20', '--parity', 'even')
        self.assertEqual(code, EXIT_NOT_EIGENVALUE)
        self.assertEqual(out, '')
        self.assertIn('not a Even BIC eigenvalue', err)

    def test_odd_state_has_node(self):
        """The first odd BIC has psi = 0 at x = 0."""
        code, out, _ = run_cli('wavefunction', '--energy', '37.2630', '--parity', 'odd')
        self.assertEqual(code, EXIT_OK)
        _, rows = csv_rows(out)
        origin = [row for row in rows if float(row['x']) == 0.0]
        self.assertEqual(len(origin), 1)
        self.assertEqual(float(origin[0]['psi']), 0.0)

    def test_two_samples(self):
        """--samples 2 gives just the two end points."""
        code, out, _ = run_cli('wavefunction', '--samples', '2')
        self.assertEqual(code, EXIT_OK)
        _, rows = csv_rows(out)
        self.assertEqual([float(row['x']) for row in rows], [-4.0, 4.0])

    def test_density_column(self):
        """psi_squared is psi times psi."""
        _, out, _ = run_cli('wavefunction', '--x-max', '2', '--samples', '41')
        _, rows = csv_rows(out)
        for row in rows:
            self.assertAlmostEqual(float(row['psi_squared']), float(row['psi']) ** 2, delta=1e-15)

    def test_ode_source(self):
        """ODE tables are accepted at any energy."""
        code, out, _ = run_cli('wavefunction', '--energy', '28', '--source', 'ode', '--x-max', '2',
                               '--samples', '5', '--format', 'json')
        self.assertEqual(code, EXIT_OK)
        document = json.loads(out)
        self.assertEqual(document['provenance'], 'Oracle')
        self.assertEqual(document['payload']['summary']['source'], 'OdeIntegration')
        self.assertEqual(len(document['payload']['rows']), 5)


class TestOtherCommands(unittest.TestCase):
    """Test cases for scatter, power-scan and specfun-eval."""

    def test_scatter_scan(self):
        """Small energy scan conserves probability."""
        code, out, _ = run_cli('scatter', '--e-min', '1', '--e-max', '40', '--steps', '5')
        self.assertEqual(code, EXIT_OK)
        header, rows = csv_rows(out)
        self.assertEqual(header, ['energy', 'a', 'R', 'T', 'R_plus_T', 'status'])
        self.assertEqual(len(rows), 5)
        for row in rows:
            self.assertAlmostEqual(float(row['R_plus_T']), 1.0, delta=1e-8)
            self.assertEqual(row['status'], 'ok')

    def test_scatter_a_sweep(self):
        """--a-sweep scans the length scale at fixed energy."""
        code, out, _ = run_cli('scatter', '--a-sweep', '0.5', '2', '4', '--energy', '10')
        self.assertEqual(code, EXIT_OK)
        _, rows = csv_rows(out)
        self.assertEqual([float(row['a']) for row in rows], [0.5, 1.0, 1.5, 2.0])

    def test_scatter_bad_range(self):
        """An inverted energy range exits with code 2."""
        code, _, _ = run_cli('scatter', '--e-min', '10', '--e-max', '1')
        self.assertEqual(code, EXIT_INVALID)

    def test_power_scan(self):
        """nu = 4 reports an envelope power near 1."""
        code, out, _ = run_cli('power-scan', '--nu', '4')
        self.assertEqual(code, EXIT_OK)
        _, rows = csv_rows(out)
        self.assertEqual(len(rows), 1)
        self.assertAlmostEqual(float(rows[0]['envelope_power']), 1.0, delta=0.05)
        self.assertEqual(rows[0]['status'], 'ok')

    def test_power_scan_failures(self):
        """Only failing exponents gives exit code 3 with flagged rows."""
        code, out, _ = run_cli('power-scan', '--nu', '1')
        self.assertEqual(code, 3)
        _, rows = csv_rows(out)
        self.assertEqual(rows[0]['status'], 'InvalidParameterError')

    def test_specfun_eval(self):
        """J_{1/2}(1) = sqrt(2/pi) sin 1."""
        code, out, _ = run_cli('specfun-eval', '--function', 'j', '--nu', '0.5', '--z', '1')
        self.assertEqual(code, EXIT_OK)
        _, rows = csv_rows(out)
        self.assertAlmostEqual(float(rows[0]['value']), math.sqrt(2.0 / math.pi) * math.sin(1.0), delta=1e-12)
        self.assertEqual(rows[0]['regime'], 'Series')

    def test_specfun_domain_error(self):
        """z <= 0 exits with code 2."""
        code, _, _ = run_cli('specfun-eval', '--function', 'j', '--nu', '0.5', '--z', '-1')
        self.assertEqual(code, EXIT_INVALID)

    @pytest.mark.slow
    def test_verify(self):
        """verify reports one pass/fail row per concordance check."""
        code, out, _ = run_cli('verify', '--format', 'json')
        document = json.loads(out)
        self.assertEqual(document['payload']['columns'], ['check', 'value', 'tolerance', 'passed'])
        rows = {row[0]: row[3] for row in document['payload']['rows']}
        self.assertEqual(len(rows), 8)
        for name in ('spectrum_max_residual', 'spectrum_parity_alternation', 'projection_max_residual',
                     'scatter_max_conservation_error', 'qes_current_variance'):
            self.assertTrue(rows[name], msg=name)
        self.assertEqual(code == EXIT_OK, document['payload']['summary']['passed'])

    def test_unknown_command(self):
        """argparse rejects unknown commands."""
        with contextlib.redirect_stderr(io.StringIO()):
            with self.assertRaises(SystemExit):
                build_parser().parse_args(['eigen'])


class TestConfigAndOutput(unittest.TestCase):
    """Test cases for --config, --out and --log."""

    def setUp(self):
        self.tmp = tempfile.TemporaryDirectory()
        self.addCleanup(self.tmp.cleanup)

    def _write_config(self, data):
        path = os.path.join(self.tmp.name, 'config.json')
        with open(path, 'w', encoding='utf-8') as f:
            json.dump(data, f)
        return path

    def test_config_file(self):
        """Config file values replace the defaults."""
        path = self._write_config({'model': {'v0': 0.1, 'a': 0.1}})
        code, out, _ = run_cli('spectrum', '--config', path)
        self.assertEqual(code, EXIT_OK)
        self.assertEqual(csv_rows(out)[1], [])

    def test_flags_beat_config(self):
        """Command-line flags win over the config file."""
        path = self._write_config({'model': {'v0': 0.1, 'a': 0.1}})
        code, out, _ = run_cli('spectrum', '--config', path, '--v0', '50', '--a', '1')
        self.assertEqual(code, EXIT_OK)
        self.assertEqual(len(csv_rows(out)[1]), 5)

    def test_missing_config(self):
        """A missing config file exits with code 2."""
        code, _, err = run_cli('spectrum', '--config', os.path.join(self.tmp.name, 'absent.json'))
        self.assertEqual(code, EXIT_INVALID)
        self.assertIn('config file not found', err)

    def test_invalid_config(self):
        """Unknown output formats in the config are rejected."""
        path = self._write_config({'output': {'format': 'xml'}})
        code, _, _ = run_cli('spectrum', '--config', path)
        self.assertEqual(code, EXIT_INVALID)

    def test_out_file_and_log(self):
        """--out writes the table to a file and --log records progress."""
        out_path = os.path.join(self.tmp.name, 'nested', 'spectrum.csv')
        log_path = os.path.join(self.tmp.name, 'run.log')
        code, out, _ = run_cli('spectrum', '--out', out_path, '--log', log_path)
        self.assertEqual(code, EXIT_OK)
        self.assertEqual(out, '')
        with open(out_path, encoding='utf-8') as f:
            self.assertEqual(len(csv_rows(f.read())[1]), 5)
        with open(log_path, encoding='utf-8') as f:
            self.assertIn('[INFO]', f.read())

    def test_verbose_goes_to_stderr(self):
        """--verbose prints [LEVEL] lines on stderr only."""
        code, out, err = run_cli('spectrum', '--verbose')
        self.assertEqual(code, EXIT_OK)
        self.assertIn('[DEBUG]', err)
        self.assertNotIn('[', out)


if __name__ == '__main__':
    unittest.main()
