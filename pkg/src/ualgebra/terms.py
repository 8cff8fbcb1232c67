"""Signatures and the term language: parsing, printing, evaluation."""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import cached_property
from typing import TYPE_CHECKING, Union

from .errors import (
    ArityMismatch,
    MissingAssignment,
    SignatureMismatch,
    TermSyntaxError,
    UnknownSymbol,
)

if TYPE_CHECKING:
    from .algebras import FiniteAlgebra

_VAR_RE = re.compile(r"x(\d+)")
_NAME_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")


@dataclass(frozen=True)
class Signature:
    """Ordered list of (name, arity) pairs; the order indexes operation tables."""

    symbols: tuple[tuple[str, int], ...]

    def __post_init__(self):
        seen = set()
        for name, arity in self.symbols:
            if name in seen:
                raise SignatureMismatch(f"duplicate symbol {name!r}")
            seen.add(name)
            if arity < 0:
                raise SignatureMismatch(f"negative arity for {name!r}")
            # names of the form x<digits> would be unparseable (variables win)
            if _VAR_RE.fullmatch(name):
                raise SignatureMismatch(f"symbol name {name!r} collides with variable syntax")
            if not _NAME_RE.fullmatch(name):
                raise SignatureMismatch(f"symbol name {name!r} is not an identifier")

    @cached_property
    def _index(self) -> dict[str, int]:
        return {name: i for i, (name, _) in enumerate(self.symbols)}

    def __contains__(self, name: str) -> bool:
        return name in self._index

    def position(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise UnknownSymbol(f"symbol {name!r} not in signature") from None

    def arity(self, name: str) -> int:
        return self.symbols[self.position(name)][1]

    def names(self) -> tuple[str, ...]:
        return tuple(name for name, _ in self.symbols)


@dataclass(frozen=True)
class Var:
    index: int


@dataclass(frozen=True)
class App:
    symbol: str
    args: tuple["Term", ...] = ()


Term = Union[Var, App]


def term_variables(t: Term) -> set[int]:
    if isinstance(t, Var):
        return {t.index}
    out: set[int] = set()
    for a in t.args:
        out |= term_variables(a)
    return out


def term_depth(t: Term) -> int:
    if isinstance(t, Var):
        return 0
    return 1 + max((term_depth(a) for a in t.args), default=0)


def term_to_str(t: Term) -> str:
    if isinstance(t, Var):
        return f"x{t.index}"
    if not t.args:
        return t.symbol
    return f"{t.symbol}({','.join(term_to_str(a) for a in t.args)})"


class _Parser:
    def __init__(self, text: str, sig: Signature):
        self.text = text
        self.sig = sig
        self.pos = 0

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def fail(self, message: str):
        raise TermSyntaxError(message, self.pos + 1)

    def expect(self, ch: str):
        self.skip_ws()
        if self.pos >= len(self.text) or self.text[self.pos] != ch:
            self.fail(f"expected {ch!r}")
        self.pos += 1

    def parse(self) -> Term:
        t = self.term()
        self.skip_ws()
        if self.pos != len(self.text):
            self.fail("trailing input")
        return t

    def term(self) -> Term:
        self.skip_ws()
        m = _VAR_RE.match(self.text, self.pos)
        if m:
            self.pos = m.end()
            return Var(int(m.group(1)))
        m = _NAME_RE.match(self.text, self.pos)
        if m is None:
            self.fail("expected a variable or symbol")
        name = m.group(0)
        if name not in self.sig:
            raise UnknownSymbol(f"symbol {name!r} not in signature")
        self.pos = m.end()
        arity = self.sig.arity(name)
        self.skip_ws()
        if self.pos < len(self.text) and self.text[self.pos] == "(":
            self.pos += 1
            args: list[Term] = []
            self.skip_ws()
            if self.pos < len(self.text) and self.text[self.pos] == ")":
                self.pos += 1
            else:
                while True:
                    args.append(self.term())
                    self.skip_ws()
                    if self.pos >= len(self.text):
                        self.fail("expected ')'")
                    ch = self.text[self.pos]
                    if ch == ",":
                        self.pos += 1
                        continue
                    if ch == ")":
                        self.pos += 1
                        break
                    self.fail("expected ',' or ')'")
            if len(args) != arity:
                raise ArityMismatch(f"{name!r} takes {arity} arguments, got {len(args)}")
            return App(name, tuple(args))
        # bare symbol: only constants may omit the argument list
        if arity != 0:
            raise ArityMismatch(f"{name!r} takes {arity} arguments, got none")
        return App(name, ())


def parse_term(text: str, sig: Signature) -> Term:
    """Parse `text` into a term over `sig`.

    Grammar: variables `x0,x1,...`; applications `name(t1,...,tk)`; arity-0
    symbols may be written bare. Whitespace-insensitive.
    """
    return _Parser(text, sig).parse()


def eval_term(t: Term, algebra: "FiniteAlgebra", assignment) -> int:
    """Evaluate `t` bottom-up against `algebra`'s tables under `assignment`."""
    if isinstance(t, Var):
        if t.index >= len(assignment):
            raise MissingAssignment(f"no value for variable x{t.index}")
        return assignment[t.index]
    if t.symbol not in algebra.signature:
        raise SignatureMismatch(f"symbol {t.symbol!r} not in the algebra's signature")
    if algebra.signature.arity(t.symbol) != len(t.args):
        raise SignatureMismatch(f"arity mismatch for {t.symbol!r}")
    return algebra.apply(t.symbol, tuple(eval_term(a, algebra, assignment) for a in t.args))


def substitute(t: Term, replacements: tuple[Term, ...]) -> Term:
    """Replace each variable x_j of `t` by replacements[j]."""
    if isinstance(t, Var):
        if t.index >= len(replacements):
            raise MissingAssignment(f"no replacement for variable x{t.index}")
        return replacements[t.index]
    return App(t.symbol, tuple(substitute(a, replacements) for a in t.args))


@dataclass(frozen=True)
class Identity:
    """An equation lhs = rhs quantified over `var_count` variables."""

    lhs: Term
    rhs: Term
    var_count: int = field(default=-1)

    def __post_init__(self):
        used = term_variables(self.lhs) | term_variables(self.rhs)
        least = max(used, default=-1) + 1
        if self.var_count < 0:
            object.__setattr__(self, "var_count", least)
        elif self.var_count < least:
            raise ArityMismatch(
                f"identity uses variable x{least - 1} but quantifies only {self.var_count}"
            )

    def __str__(self) -> str:
        return f"{term_to_str(self.lhs)} = {term_to_str(self.rhs)}"


def parse_identity(text: str, sig: Signature) -> Identity:
    """Parse `lhs = rhs` into an Identity over `sig`."""
    if text.count("=") != 1:
        raise TermSyntaxError("an identity needs exactly one '='", text.find("=") + 1)
    left, right = text.split("=")
    return Identity(parse_term(left.strip(), sig), parse_term(right.strip(), sig))
