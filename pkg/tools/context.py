"""Command context: resolves flags against the problem source and CONFIG."""
import argparse
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence

from config import CONFIG
from algebra.errors import InputError
from algebra.groebner import IdealHandle
from problem_source import ProblemSource
from residual import GeneratorSystem
from schema import CommandOptions, parse_rational


def add_command_options(parser: argparse.ArgumentParser) -> None:
    """Flags shared by every algebra command (CLI subcommands and corpus argv)."""
    parser.add_argument('--t', type=int, help='Residual order t')
    parser.add_argument('--seed', type=int, help='Primary seed (default: source seed, then 0)')
    parser.add_argument('--trials', type=int, help=f'Extra trial seeds (default: {CONFIG.DEFAULT_TRIALS})')
    parser.add_argument('--level', type=int, help='Jet level, or max level for estimates')
    parser.add_argument('--lambda', dest='lam', type=str, help='λ for glct (exact rational)')
    parser.add_argument('--exponent', type=str, help='Exponent c or m (exact rational)')
    parser.add_argument('--budget', type=int, help='Gröbner step budget for this run')
    parser.add_argument('--ideal', type=str, help='Primary ideal name (default: first declared)')
    parser.add_argument('--by', type=str, help='Second ideal name (colon, saturate, aZ)')
    parser.add_argument('--system', type=str, help='Generator system name (default: first declared)')
    parser.add_argument('--keep', nargs='+', help='Variables kept by eliminate')
    parser.add_argument('--order', type=str, default='grevlex', help='Monomial order for gb')
    parser.add_argument('--jet-field', dest='jet_field', type=str,
                        help="Jet coefficients: 'fp' (default) or 'input'")
    parser.add_argument('--augment', action='store_true',
                        help='Append x_i*f_1 to the generator system first')


_OPTION_FIELDS = tuple(CommandOptions.model_fields)


def options_from_namespace(args: argparse.Namespace) -> CommandOptions:
    values = {name: getattr(args, name) for name in _OPTION_FIELDS if hasattr(args, name)}
    return CommandOptions(**{k: v for k, v in values.items() if v is not None})


def options_from_argv(argv: Sequence[str]) -> CommandOptions:
    """Parse a flag list such as ``["--t", "3", "--seed", "42"]``."""
    parser = argparse.ArgumentParser(prog='command', add_help=False, exit_on_error=False)
    add_command_options(parser)
    try:
        args = parser.parse_args(list(argv))
    except (argparse.ArgumentError, SystemExit) as e:
        raise InputError(f"bad command arguments {list(argv)}: {e}")
    return options_from_namespace(args)


@dataclass
class CommandContext:
    source: ProblemSource
    options: CommandOptions

    def _raw(self, name: str) -> Optional[str]:
        value = getattr(self.options, name, None)
        if value is not None:
            return value
        return self.source.options.get(name)

    def _int(self, name: str) -> Optional[int]:
        value = self._raw(name)
        if value is None:
            return None
        try:
            return int(value)
        except ValueError:
            raise InputError(f"option {name} must be an integer, got {value!r}")

    @property
    def seed(self) -> int:
        if self.options.seed is not None:
            return self.options.seed
        return self.source.seed if self.source.seed is not None else 0

    def t(self, default: Optional[int] = None) -> int:
        t = self._int('t')
        if t is None:
            if default is None:
                raise InputError("this command needs --t")
            return default
        if t < 1:
            raise InputError(f"t must be ≥ 1, got {t}")
        return t

    def level(self, default: int) -> int:
        level = self._int('level')
        return default if level is None else level

    @property
    def trials(self) -> int:
        trials = self._int('trials')
        return CONFIG.DEFAULT_TRIALS if trials is None else trials

    def rational(self, name: str, default: Optional[Fraction] = None) -> Fraction:
        value = self._raw(name)
        if value is None:
            if default is None:
                raise InputError(f"this command needs --{'lambda' if name == 'lam' else name}")
            return default
        try:
            return parse_rational(value)
        except ValueError as e:
            raise InputError(str(e))

    @property
    def augment(self) -> bool:
        return self.options.augment or self.source.options.get('augment') == 'true'

    @property
    def over_prime_field(self) -> Optional[bool]:
        choice = self._raw('jet_field')
        return None if choice is None else choice == 'fp'

    def ideal(self) -> IdealHandle:
        return self.source.ideal(self._raw('ideal'))

    def second_ideal(self, required: bool = True) -> Optional[IdealHandle]:
        name = self._raw('by')
        if name is None:
            if required:
                raise InputError("this command needs --by <ideal>")
            return None
        return self.source.ideal(name)

    def system(self) -> GeneratorSystem:
        name, generators = self.source.system(self._raw('system'))
        return GeneratorSystem(generators, name=name)

    @property
    def keep(self) -> List[str]:
        if self.options.keep:
            return list(self.options.keep)
        raw = self.source.options.get('keep')
        if raw is None:
            raise InputError("eliminate needs --keep <vars...>")
        return raw.split(',')
