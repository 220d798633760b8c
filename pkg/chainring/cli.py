import argparse
import logging
import pathlib
import sys
from typing import Optional, Sequence

from common.constants import ELEMENT_LIST_TRUNCATION, CodeFamily, ExitCode, OutputFormat, RingFamily, WeightKind
from chainring.config import Limits, load_ring_config, load_sweep
from chainring.errors import (
    CapExceeded,
    ChainRingError,
    InvalidRingSpec,
    VerificationMismatch,
)
from chainring.codes.simplex import SimplexCode, code_type, gh_A_matrix_over, simplex_code
from chainring.codes.weights import empirical_distribution, gray_image_parameters, predicted_distribution
from chainring.helpers.io import (
    format_distribution,
    format_matrix,
    save_matrix,
    write_codewords,
    write_gray_image,
    write_text,
)
from chainring.helpers.verify import DEFAULT_SWEEP, format_report, run_sweep
from chainring.ring.ring import Ring, RingSpec, make_ring

logger = logging.getLogger(__name__)

LOG_FORMAT = '%(asctime)s [%(levelname)-5.5s] [%(name)-12.12s]: %(message)s'


def _int_list(text: str) -> tuple:
    try:
        return tuple(int(c) for c in text.split(','))
    except ValueError:
        raise argparse.ArgumentTypeError(f'{text!r} is not a comma-separated list of integers') from None


def _add_ring_arguments(parser: argparse.ArgumentParser) -> None:
    group = parser.add_argument_group('ring')
    group.add_argument('--family', dest='ring_family', default=RingFamily.ZPS.value,
                       help=f'One of {RingFamily.names()}')
    group.add_argument('-p', type=int, help='Characteristic prime')
    group.add_argument('-r', type=int, default=1, help='Residue field degree, q = p^r')
    group.add_argument('-s', type=int, help='Nilpotency index')
    group.add_argument('--modulus', type=_int_list, help='Monic modulus coefficients, low-to-high, e.g. 1,1,1')
    group.add_argument('--config', type=pathlib.Path, help='JSON ring specification file')


def _add_code_arguments(parser: argparse.ArgumentParser, families: Sequence[str]) -> None:
    parser.add_argument('family', choices=families, help='Code family')
    parser.add_argument('-k', type=int, default=1, help='Number of generators')


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog='chainring', description='Simplex codes over finite chain rings')
    parser.add_argument('-v', '--verbose', action='store_true', help='Debug logging')
    parser.add_argument('-q', '--quiet', action='store_true', help='Warnings only, no progress bars')
    parser.add_argument('--max-elements', type=int, help='Largest ring accepted')
    parser.add_argument('--max-columns', type=int, help='Largest generator matrix accepted')
    parser.add_argument('--max-codewords', type=int, help='Largest enumeration accepted')
    commands = parser.add_subparsers(dest='command', required=True)

    ring = commands.add_parser('ring', help='Summarize a ring')
    _add_ring_arguments(ring)

    construct = commands.add_parser('construct', help='Write a generator matrix')
    _add_code_arguments(construct, CodeFamily.simplex() + [CodeFamily.GH_A.value])
    construct.add_argument('--type', type=_int_list, help='Type vector t_1,...,t_s for gh_A')
    construct.add_argument('--out', type=pathlib.Path, help='Output file, .safetensors for the binary form')
    construct.add_argument('--codewords', type=pathlib.Path, help='Dump every codeword with its coefficients')
    _add_ring_arguments(construct)

    weights = commands.add_parser('weights', help='Weight distribution of a simplex code')
    _add_code_arguments(weights, CodeFamily.simplex())
    weights.add_argument('--kind', choices=[k.value for k in WeightKind], default=WeightKind.HAMMING.value)
    mode = weights.add_mutually_exclusive_group()
    mode.add_argument('--empirical', dest='mode', action='store_const', const='empirical')
    mode.add_argument('--predicted', dest='mode', action='store_const', const='predicted')
    mode.add_argument('--both', dest='mode', action='store_const', const='both')
    weights.add_argument('--format', choices=[f.value for f in OutputFormat], default=OutputFormat.TEXT.value)
    weights.add_argument('--out', type=pathlib.Path, help='Output file')
    weights.add_argument('--partitions', type=int, default=1, help='Coefficient-rank partitions')
    weights.add_argument('--workers', type=int, default=1, help='Worker processes')
    _add_ring_arguments(weights)

    gray = commands.add_parser('gray', help='Gray image of a simplex code')
    _add_code_arguments(gray, CodeFamily.simplex())
    gray.add_argument('--out', type=pathlib.Path, help='Gray image file, stdout if omitted')
    _add_ring_arguments(gray)

    verify = commands.add_parser('verify', help='Run the verification suite')
    source = verify.add_mutually_exclusive_group(required=True)
    source.add_argument('--sweep', type=pathlib.Path, help='JSON sweep file')
    source.add_argument('--default-sweep', action='store_true')
    return parser


def resolve_ring(args: argparse.Namespace, limits: Limits) -> Ring:
    if args.config is not None:
        return make_ring(load_ring_config(args.config), limits)
    if args.p is None or args.s is None:
        raise InvalidRingSpec('Give -p and -s, or a ring specification file with --config')
    return make_ring(RingSpec(args.ring_family, args.p, args.s, args.r, args.modulus), limits)


def cmd_ring(args, limits: Limits) -> int:
    ring = resolve_ring(args, limits)
    print(f'ring: {ring.name} ({ring.spec.token()})')
    print(f'p={ring.p} r={ring.r} q={ring.q} s={ring.s} |R|={ring.size}')
    if ring.family is not RingFamily.ZPS:
        print(f'modulus: {list(ring.modulus)}')
    labels = [ring.label(x) for x in range(min(ring.size, ELEMENT_LIST_TRUNCATION))]
    suffix = f' ... ({ring.size - ELEMENT_LIST_TRUNCATION} more)' if ring.size > ELEMENT_LIST_TRUNCATION else ''
    print('elements: ' + ' '.join(labels) + suffix)
    print('ideals: ' + ' ⊃ '.join(str(n) for n in ring.ideal_chain()))
    return ExitCode.OK


def cmd_construct(args, limits: Limits) -> int:
    ring = resolve_ring(args, limits)
    if args.family == CodeFamily.GH_A.value:
        t = args.type or (args.k + 1,) + (0,) * (ring.s - 1)
        generator = gh_A_matrix_over(ring, t)
    else:
        generator = simplex_code(ring, args.family, args.k, limits).generator
    if args.out is not None and args.out.suffix == '.safetensors':
        save_matrix(generator, args.out)
    else:
        write_text(format_matrix(generator), args.out, sys.stdout)
    if generator.family is not CodeFamily.GH_A:
        print(f'type: {code_type(SimplexCode(generator))}')
        if args.codewords is not None:
            with open(args.codewords, 'w') as f:
                lines = write_codewords(SimplexCode(generator), f, limits)
            logger.info(f'Wrote {lines} codewords to {args.codewords}')
    return ExitCode.OK


def cmd_weights(args, limits: Limits, progress: bool) -> int:
    ring = resolve_ring(args, limits)
    mode = args.mode or 'predicted'
    predicted = predicted_distribution(args.family, args.kind, ring.q, ring.s, args.k)
    shown = predicted
    exit_code = ExitCode.OK
    if mode in ('empirical', 'both'):
        code = simplex_code(ring, args.family, args.k, limits)
        shown = empirical_distribution(code, args.kind, limits, args.partitions, args.workers, progress)
    write_text(format_distribution(shown, args.format, ring, args.family, args.k), args.out, sys.stdout)
    if predicted.trivial:
        print(f'note: trivial for k=1, the {args.family} code is R itself')
    if mode == 'both':
        first = shown.first_difference(predicted)
        if first is None:
            print('MATCH')
        else:
            print(f'MISMATCH at weight {first}: predicted {predicted}')
            exit_code = ExitCode.MISMATCH
    return exit_code


def cmd_gray(args, limits: Limits) -> int:
    ring = resolve_ring(args, limits)
    parameters = gray_image_parameters(args.family, ring, args.k, verify=True, limits=limits)
    code = simplex_code(ring, args.family, args.k, limits)
    if args.out is not None:
        with open(args.out, 'w') as f:
            lines = write_gray_image(code, f, limits)
        logger.info(f'Wrote {lines} Gray images to {args.out}')
    else:
        write_gray_image(code, sys.stdout, limits)
    print(f'parameters: {parameters}')
    return ExitCode.OK


def cmd_verify(args, limits: Limits, progress: bool) -> int:
    entries = DEFAULT_SWEEP if args.default_sweep else load_sweep(args.sweep)
    if not entries:
        logger.warning('Empty sweep, nothing to verify')
        return ExitCode.OK
    results = run_sweep(entries, limits, progress)
    print(format_report(results))
    failures = [r for r in results if not r.passed]
    print(f'{len(results) - len(failures)}/{len(results)} checks passed')
    return ExitCode.CHECK_FAILED if failures else ExitCode.OK


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    level = logging.DEBUG if args.verbose else logging.WARNING if args.quiet else logging.INFO
    logging.basicConfig(level=level, format=LOG_FORMAT)
    progress = not args.quiet and sys.stderr.isatty()
    try:
        limits = Limits.from_env(max_elements=args.max_elements, max_columns=args.max_columns,
                                 max_codewords=args.max_codewords)
        if args.command == 'ring':
            return cmd_ring(args, limits)
        if args.command == 'construct':
            return cmd_construct(args, limits)
        if args.command == 'weights':
            return cmd_weights(args, limits, progress)
        if args.command == 'gray':
            return cmd_gray(args, limits)
        return cmd_verify(args, limits, progress)
    except CapExceeded as e:
        logger.error(str(e))
        return ExitCode.CAP_EXCEEDED
    except VerificationMismatch as e:
        logger.error(f'{e} (first differing weight: {e.first_weight})')
        return ExitCode.MISMATCH
    except (ChainRingError, OSError) as e:
        logger.error(str(e))
        return ExitCode.INVALID_SPEC


def cli() -> None:
    sys.exit(main())


if __name__ == '__main__':
    cli()
