import argparse
import sys
from pathlib import Path

from .documents import write_csv, write_json
from .loader import load_run_config
from .runner import COMMANDS
from .utils.errors import Bic1dError, InvalidParameterError, NotAnEigenvalueError
from .utils.logger import Logger

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_NUMERICAL = 3
EXIT_NOT_EIGENVALUE = 4


def _common_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--v0', type=float, help='Barrier scale V0 (default 50).')
    common.add_argument('--a', type=float, help='Length scale a (default 1).')
    common.add_argument('--h2m', type=float, help='hbar^2/2m (default 1).')
    common.add_argument('--format', choices=['csv', 'json'], help='Output format (default csv).')
    common.add_argument('--out', type=str, help='Output file; stdout when omitted.')
    common.add_argument('--config', type=str, help='JSON config file overriding the packaged defaults.')
    common.add_argument('--verbose', action='store_true', help='Print progress to stderr.')
    common.add_argument('--log', type=str, help='Append log lines to this file.')
    return common


def build_parser():
    parser = argparse.ArgumentParser(
        prog='bic1d',
        description="Bound states in the continuum of the bottomless exponential barrier.",
    )
    common = _common_parser()
    sub = parser.add_subparsers(dest='command', required=True)

    spectrum = sub.add_parser('spectrum', parents=[common], help='BIC energies, parities and norms.')
    spectrum.add_argument('--scan-resolution', type=float, help='Scan step in kappa*a (default 1e-3).')
    spectrum.add_argument('--verify', action='store_true', default=None,
                          help='Reconfirm every state with the ODE projection oracle.')
    spectrum.add_argument('--curve', type=int, metavar='N',
                          help='Emit both quantization conditions at N energies instead of the states.')

    wave = sub.add_parser('wavefunction', parents=[common], help='Tabulate a BIC or an integrated state.')
    wave.add_argument('--energy', type=float, help='Energy E.')
    wave.add_argument('--parity', choices=['even', 'odd'], help='State parity (default even).')
    wave.add_argument('--x-max', type=float, help='Half-width of the table (default 4).')
    wave.add_argument('--samples', type=int, help='Number of grid points; x = 0 is always added (default 801).')
    wave.add_argument('--source', choices=['closed-form', 'ode'], help='Closed form or Numerov integration.')
    wave.add_argument('--normalize', action='store_true', default=None, help='Scale to unit L2 norm.')

    scatter = sub.add_parser('scatter', parents=[common], help='Reflection and transmission probabilities.')
    scatter.add_argument('--e-min', type=float, help='Lowest energy (default 0.5).')
    scatter.add_argument('--e-max', type=float, help='Highest energy (default 49.5).')
    scatter.add_argument('--steps', type=int, help='Number of energies (default 200).')
    scatter.add_argument('--a-sweep', type=float, nargs=3, metavar=('A_MIN', 'A_MAX', 'STEPS'),
                         help='Sweep a at fixed --energy instead of scanning energies.')
    scatter.add_argument('--energy', type=float, help='Energy for --a-sweep (default 10).')
    scatter.add_argument('--incidence', choices=['left', 'right'], help='Side of the incident wave.')

    power = sub.add_parser('power-scan', parents=[common], help='Tail fits in V(x) = -|x|^nu.')
    power.add_argument('--nu', type=float, nargs='+', help='Barrier exponents in (2, 8].')
    power.add_argument('--energy', type=float, help='Energy E (default 1).')
    power.add_argument('--x-max', type=float, help='Integration range; ~40 half-oscillations when omitted.')

    sub.add_parser('verify', parents=[common], help='Closed-form versus oracle concordance checks.')

    specfun = sub.add_parser('specfun-eval', parents=[common], help=argparse.SUPPRESS)
    specfun.add_argument('--function', choices=['j', 'jprime', 'y', 'gamma', 'norm-series'])
    specfun.add_argument('--nu', type=float)
    specfun.add_argument('--z', type=float, required=True)
    return parser


SECTION_FLAGS = {
    'spectrum': ('scan_resolution', 'verify', 'curve'),
    'wavefunction': ('energy', 'parity', 'x_max', 'samples', 'source', 'normalize'),
    'scatter': ('e_min', 'e_max', 'steps', 'a_sweep', 'energy', 'incidence'),
    'power-scan': ('nu', 'energy', 'x_max'),
    'verify': (),
    'specfun-eval': ('function', 'nu', 'z'),
}


def overrides_from_args(args):
    """Flag values as a config fragment; flags left unset are None and do not override."""
    section = {name: getattr(args, name, None) for name in SECTION_FLAGS[args.command]}
    return {
        'model': {'v0': args.v0, 'a': args.a, 'h2m': args.h2m},
        'output': {'format': args.format, 'out': args.out},
        args.command.replace('-', '_'): section,
    }


def _emit(document, cfg):
    writer = write_json if cfg.output_format == 'json' else write_csv
    if cfg.out:
        path = Path(cfg.out).expanduser().resolve()
        path.parent.mkdir(parents=True, exist_ok=True)
        with open(path, 'w', encoding='utf-8', newline='') as f:
            writer(document, f)
    else:
        writer(document, sys.stdout)


def main(argv=None):
    """Main entry point; returns the process exit code."""
    parser = build_parser()
    args = parser.parse_args(argv)
    logger = Logger(silent_mode=not args.verbose, verbose=args.verbose, log_path=args.log)
    try:
        cfg = load_run_config(args.command, args.config, overrides_from_args(args))
        logger.debug(f"{args.command}: {cfg.echo()}")
        document = COMMANDS[args.command](cfg, logger)
        _emit(document, cfg)
        return document.exit_code
    except NotAnEigenvalueError as exc:
        logger.error(str(exc))
        print(f"bic1d: {exc}", file=sys.stderr)
        return EXIT_NOT_EIGENVALUE
    except InvalidParameterError as exc:
        logger.error(str(exc))
        print(f"bic1d: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except Bic1dError as exc:
        logger.error(str(exc))
        print(f"bic1d: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    finally:
        logger.close()


if __name__ == "__main__":
    sys.exit(main())
