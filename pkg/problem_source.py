"""
Parser for ``.ri`` problem sources.

    # two planes meeting at the origin
    ring x y z w over Q
    ideal X = x*z, x*w, y*z, y*w
    system f = x*z, x*w, y*z, y*w
    seed 42
    option t 3

Statements are line based; ``#`` starts a comment. ``ring`` must come first
and appear once. Every error is a ParseError carrying line and column.
"""
import logging
import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, List, Optional, Tuple

from algebra.errors import InputError, ParseError
from algebra.groebner import IdealHandle
from algebra.poly_core import QQ, Polynomial, PrimeField, RingContext, parse_polynomial
from safeguards import validate_source_path

logger = logging.getLogger(__name__)

_NAME = re.compile(r"[A-Za-z_][A-Za-z0-9_]*$")
_KEYWORDS = ("ring", "ideal", "system", "seed", "option")


@dataclass
class ProblemSource:
    ring: RingContext
    ideals: Dict[str, IdealHandle] = field(default_factory=dict)
    systems: Dict[str, Tuple[Polynomial, ...]] = field(default_factory=dict)
    seed: Optional[int] = None
    options: Dict[str, str] = field(default_factory=dict)
    text: str = ""

    def ideal(self, name: Optional[str] = None) -> IdealHandle:
        """Named ideal, or the first one declared."""
        if name is None:
            if not self.ideals:
                raise InputError("the source declares no ideal")
            return next(iter(self.ideals.values()))
        if name not in self.ideals:
            raise InputError(f"unknown ideal '{name}' (declared: {', '.join(self.ideals) or 'none'})")
        return self.ideals[name]

    def system(self, name: Optional[str] = None) -> Tuple[str, Tuple[Polynomial, ...]]:
        """
        Named generator system. Without a name: the first system, else the
        generators of the first ideal as written.
        """
        if name is not None:
            if name in self.systems:
                return name, self.systems[name]
            if name in self.ideals:
                return name, self.ideals[name].generators
            raise InputError(f"unknown system '{name}'")
        if self.systems:
            return next(iter(self.systems.items()))
        if self.ideals:
            first = next(iter(self.ideals))
            return first, self.ideals[first].generators
        raise InputError("the source declares no system or ideal")


class _SourceParser:
    def __init__(self, text: str):
        self.text = text
        self.ring: Optional[RingContext] = None
        self.ideals: Dict[str, IdealHandle] = {}
        self.systems: Dict[str, Tuple[Polynomial, ...]] = {}
        self.seed: Optional[int] = None
        self.options: Dict[str, str] = {}

    def parse(self) -> ProblemSource:
        for lineno, raw in enumerate(self.text.splitlines(), start=1):
            line = raw.split("#", 1)[0]
            if not line.strip():
                continue
            indent = len(line) - len(line.lstrip())
            keyword = line.split()[0]
            rest_col = indent + len(keyword) + 1
            rest = line[indent + len(keyword):]
            if keyword not in _KEYWORDS:
                raise ParseError(f"unknown statement '{keyword}'", lineno, indent + 1)
            if keyword != "ring" and self.ring is None:
                raise ParseError(f"'{keyword}' before the ring declaration", lineno, indent + 1)
            getattr(self, f"_{keyword}")(rest, lineno, rest_col)
        if self.ring is None:
            raise ParseError("missing ring declaration", 1, 1)
        logger.debug(f"parsed source: {self.ring.describe()}, ideals {list(self.ideals)}, "
                     f"systems {list(self.systems)}")
        return ProblemSource(self.ring, self.ideals, self.systems, self.seed, self.options,
                             self.text)

    def _ring(self, rest: str, lineno: int, col: int) -> None:
        if self.ring is not None:
            raise ParseError("second ring declaration", lineno, 1)
        words = rest.split()
        domain = QQ
        if "over" in words:
            at = words.index("over")
            spec, words = words[at + 1:], words[:at]
            if spec == ["Q"]:
                domain = QQ
            elif len(spec) == 2 and spec[0] == "Fp" and spec[1].isdigit():
                try:
                    domain = PrimeField(int(spec[1]))
                except InputError as e:
                    raise ParseError(str(e), lineno, col + rest.index(spec[1]))
            else:
                raise ParseError("expected 'over Q' or 'over Fp <prime>'", lineno,
                                 col + rest.index("over"))
        if not words:
            raise ParseError("ring declaration lists no variables", lineno, col)
        try:
            self.ring = RingContext(tuple(words), domain)
        except InputError as e:
            raise ParseError(str(e), lineno, col)

    def _assignment(self, rest: str, lineno: int, col: int) -> Tuple[str, List[Polynomial]]:
        if "=" not in rest:
            raise ParseError("expected '<name> = <poly>, ...'", lineno, col + len(rest.rstrip()))
        lhs, rhs = rest.split("=", 1)
        name = lhs.strip()
        if not _NAME.match(name):
            raise ParseError(f"invalid name '{name}'", lineno, col)
        if name in self.ideals or name in self.systems:
            raise ParseError(f"duplicate name '{name}'", lineno, col + lhs.index(name))
        offset = col + len(lhs) + 1
        polys = []
        for piece in rhs.split(","):
            if not piece.strip():
                raise ParseError("empty polynomial in list", lineno, offset)
            polys.append(parse_polynomial(piece, self.ring, lineno, offset))
            offset += len(piece) + 1
        return name, polys

    def _ideal(self, rest: str, lineno: int, col: int) -> None:
        name, polys = self._assignment(rest, lineno, col)
        self.ideals[name] = IdealHandle(self.ring, polys)

    def _system(self, rest: str, lineno: int, col: int) -> None:
        name, polys = self._assignment(rest, lineno, col)
        self.systems[name] = tuple(polys)

    def _seed(self, rest: str, lineno: int, col: int) -> None:
        value = rest.strip()
        if not re.fullmatch(r"-?\d+", value):
            raise ParseError(f"seed must be an integer, got '{value}'", lineno, col)
        self.seed = int(value)

    def _option(self, rest: str, lineno: int, col: int) -> None:
        words = rest.split()
        if len(words) != 2:
            raise ParseError("expected 'option <key> <value>'", lineno, col)
        self.options[words[0]] = words[1]


def parse_source(text: str) -> ProblemSource:
    """Parse ``.ri`` text; raises ParseError with a line/column location."""
    return _SourceParser(text).parse()


def load_source(path: Path) -> ProblemSource:
    is_valid, message = validate_source_path(path)
    if not is_valid:
        raise InputError(message)
    return parse_source(path.read_text(encoding="utf-8"))
