import argparse
import sys

from cli.commands import RunConfig, run_command
from errors import ParseError, TemporalError
from logger_config import LoggerConfig, get_logger

logger = get_logger(__name__)


def parse_args(argv=None):
    parser = argparse.ArgumentParser(description='Temporal pseudo-loops - closures, pseudo-loops and loop conditions over (Q;<)')
    parser.add_argument('--log-level', dest='log_level', choices=['DEBUG', 'INFO', 'WARNING', 'ERROR'],
                        help='Override LOG_LEVEL for this run')
    parser.add_argument('--seed', type=int, help='Random seed (default DEFAULT_SEED)')
    subparsers = parser.add_subparsers(dest='command', required=True)

    def add(name, help_text, inputs=None):
        sub = subparsers.add_parser(name, help=help_text)
        if inputs:
            sub.add_argument('inputs', nargs=inputs, help='Relation or structure file(s)')
        sub.add_argument('--out', help='Write the result to this file instead of stdout')
        return sub

    orbits = add('orbits', 'List all weak orders of length k')
    orbits.add_argument('--k', type=int, default=1, help='Tuple length')

    add('check', 'Print the hypothesis flags of a relation', inputs=1)
    add('classify', 'Check preservation by min, mi, mx, ll, const and their duals', inputs=1)

    for name, help_text in (('closure', 'Close a relation under one operation'),
                            ('pseudoloop', 'Find a pseudo-loop with its witness term')):
        sub = add(name, help_text, inputs=1)
        sub.add_argument('--clone', default='min', help='Operation tag, e.g. min, mi, mx, ll, const, dual:mi')
        sub.add_argument('--budget-orbits', dest='budget_orbits', type=int, help='Closure size bound')

    loopcond = add('loopcond', 'Verify a pseudo-loop condition on every assignment at dimension k', inputs='?')
    loopcond.add_argument('--preset', help='siggers4, k3, olsak, wnuN or cyclicN')
    loopcond.add_argument('--clone', default='min', help='Operation tag')
    loopcond.add_argument('--k', type=int, default=1, help='Dimension of the assigned tuples')
    loopcond.add_argument('--budget-orbits', dest='budget_orbits', type=int, help='Closure size bound')
    loopcond.add_argument('--workers', type=int, help='Parallel indicator searches')
    loopcond.add_argument('--timings', action='store_true', help='Record wall time per assignment')

    generate = add('generate', 'Write seeded random instances satisfying the hypotheses')
    generate.add_argument('--clone', default='min', help='Operation tag')
    generate.add_argument('--k', type=int, default=1, help='Dimension')
    generate.add_argument('--arity', type=int, default=2, help='Arity n')
    generate.add_argument('--count', type=int, default=10, help='Number of instances')
    generate.add_argument('--budget-orbits', dest='budget_orbits', type=int, help='Closure size bound')

    args = parser.parse_args(argv)
    if isinstance(getattr(args, 'inputs', None), str):
        args.inputs = [args.inputs]
    return args


def main(argv=None) -> int:
    """Exit codes: 0 ok, 2 parse error, 3 hypothesis violation, 4 budget exceeded, 1 otherwise."""
    try:
        args = parse_args(argv)
    except SystemExit as e:
        return ParseError.exit_code if e.code else 0

    if args.log_level:
        LoggerConfig.set_global_level(args.log_level)
    logger.info("=" * 60)
    logger.info(f"Command: {args.command}")
    logger.info("=" * 60)
    try:
        cfg = RunConfig.from_args(args)
        code = run_command(cfg)
    except TemporalError as e:
        logger.error(f"{type(e).__name__}: {e}")
        return e.exit_code
    except Exception as e:
        logger.error(f"Unexpected error in {args.command}: {e}", exc_info=True)
        return 1
    logger.info(f"{args.command} finished with exit code {code}")
    return code


if __name__ == '__main__':
    sys.exit(main())
