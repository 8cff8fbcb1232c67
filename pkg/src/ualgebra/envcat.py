"""Tuple objects, term-tuple morphisms, and the functor a semidirect product
induces on them.

Objects are tuples over an algebra; a morphism (a1..an) -> (b1..bm) is an
m-tuple of n-ary terms evaluating componentwise to the target. A semidirect
product extends to these by sending a tuple to the product of its fibers and
a term to the composite of action tables it denotes.
"""

from __future__ import annotations

from dataclasses import dataclass

from .algebras import FiniteAlgebra
from .errors import EndpointMismatch, ShapeMismatch
from .outer import OuterProduct, _mixed_pack, _mixed_unpack, _prod
from .terms import Term, Var, eval_term, substitute, term_variables


@dataclass(frozen=True)
class TupleObject:
    algebra: FiniteAlgebra
    elements: tuple[int, ...]

    def __post_init__(self):
        if any(not 0 <= a < self.algebra.size for a in self.elements):
            raise ShapeMismatch("tuple entries must lie in the carrier")

    def __len__(self) -> int:
        return len(self.elements)


def is_cat_morphism(A: FiniteAlgebra, src: TupleObject, dst: TupleObject, terms) -> bool:
    """Does every component term evaluate src to the matching dst entry?"""
    if src.algebra != A or dst.algebra != A:
        raise ShapeMismatch("objects must live over the given algebra")
    if len(terms) != len(dst):
        raise ShapeMismatch("one term per target coordinate required")
    for t in terms:
        used = term_variables(t)
        if used and max(used) >= len(src):
            raise ShapeMismatch("terms may only use source coordinates")
    return all(
        eval_term(t, A, src.elements) == b for t, b in zip(terms, dst.elements)
    )


@dataclass(frozen=True)
class TermTupleMorphism:
    """Validated eagerly: construction fails unless the terms really map
    source to target."""

    source: TupleObject
    target: TupleObject
    terms: tuple[Term, ...]

    def __post_init__(self):
        if not is_cat_morphism(self.source.algebra, self.source, self.target, self.terms):
            raise EndpointMismatch("terms do not evaluate source to target")


def identity_morphism(obj: TupleObject) -> TermTupleMorphism:
    return TermTupleMorphism(obj, obj, tuple(Var(j) for j in range(len(obj))))


def compose_morphisms(q: TermTupleMorphism, p: TermTupleMorphism) -> TermTupleMorphism:
    """q after p, by substituting p's terms into q's."""
    if p.target != q.source:
        raise EndpointMismatch("p must end where q starts")
    composed = tuple(substitute(t, p.terms) for t in q.terms)
    return TermTupleMorphism(p.source, q.target, composed)


@dataclass(frozen=True)
class ProductPointedSet:
    """Product of fibers: per-coordinate sizes and the basepoint tuple."""

    sizes: tuple[int, ...]
    basepoint: tuple[int, ...]

    def total(self) -> int:
        return _prod(self.sizes)

    def flat_basepoint(self) -> int:
        return _mixed_pack(self.basepoint, self.sizes)


def functor_object(F: OuterProduct, obj: TupleObject) -> ProductPointedSet:
    """F(a1) x ... x F(an), with the product basepoint; empty tuples give the
    one-point product."""
    if obj.algebra != F.family.base:
        raise ShapeMismatch("the object must live over the product's base")
    sizes = tuple(F.family.fibers[a][0] for a in obj.elements)
    basepoint = tuple(F.family.fibers[a][1] for a in obj.elements)
    return ProductPointedSet(sizes, basepoint)


def _term_table(F: OuterProduct, obj: TupleObject, t: Term) -> tuple[tuple[int, ...], int]:
    """The map F(t): product of fibers over obj -> fiber over t's value.

    Structural recursion: a variable is a projection, an application composes
    its symbol's action table (at the base values of the arguments) with the
    argument tables. Returns (flat table, base value of t at obj).
    """
    base = F.family.base
    src = functor_object(F, obj)
    if isinstance(t, Var):
        if t.index >= len(obj):
            raise ShapeMismatch("term uses a missing coordinate")
        table = tuple(
            _mixed_unpack(idx, src.sizes)[t.index] for idx in range(src.total())
        )
        return table, obj.elements[t.index]
    arg_results = [_term_table(F, obj, a) for a in t.args]
    arg_values = tuple(v for _, v in arg_results)
    value = base.apply(t.symbol, arg_values)
    action = F.actions.table(t.symbol, arg_values)
    arg_sizes = tuple(F.family.fibers[v][0] for v in arg_values)
    table = tuple(
        action[_mixed_pack(tuple(at[idx] for at, _ in arg_results), arg_sizes)]
        for idx in range(src.total())
    )
    return table, value


def functor_morphism(F: OuterProduct, p: TermTupleMorphism) -> tuple[tuple[int, ...], ...]:
    """One flat table per target coordinate, each over the source product."""
    out = []
    for t, b in zip(p.terms, p.target.elements):
        table, value = _term_table(F, p.source, t)
        if value != b:
            raise ShapeMismatch("term value disagrees with the target")
        out.append(table)
    return tuple(out)


def tables_compose(
    outer: tuple[tuple[int, ...], ...],
    inner: tuple[tuple[int, ...], ...],
    mid_sizes: tuple[int, ...],
) -> tuple[tuple[int, ...], ...]:
    """Componentwise composition through the middle product."""
    size = len(inner[0]) if inner else 1
    out = []
    for table in outer:
        out.append(
            tuple(
                table[_mixed_pack(tuple(g[idx] for g in inner), mid_sizes)]
                for idx in range(size)
            )
        )
    return tuple(out)


def check_functoriality(
    F: OuterProduct, p: TermTupleMorphism, q: TermTupleMorphism
) -> bool:
    """G(q o p) == G(q) o G(p) as exact tables."""
    composed = compose_morphisms(q, p)
    direct = functor_morphism(F, composed)
    gp = functor_morphism(F, p)
    gq = functor_morphism(F, q)
    mid_sizes = functor_object(F, p.target).sizes
    if not gp:
        # empty middle tuple: G(q) is a point evaluation at the empty index
        staged = tuple((t[0],) * functor_object(F, p.source).total() for t in gq)
    else:
        staged = tables_compose(gq, gp, mid_sizes)
    return direct == staged


def check_identity_law(F: OuterProduct, obj: TupleObject) -> bool:
    """G(id) must reassemble to the identity on the fiber product."""
    tables = functor_morphism(F, identity_morphism(obj))
    sizes = functor_object(F, obj).sizes
    for idx in range(_prod(sizes)):
        if tuple(t[idx] for t in tables) != _mixed_unpack(idx, sizes):
            return False
    return True


def basepoint_preserved(F: OuterProduct, p: TermTupleMorphism) -> bool:
    src = functor_object(F, p.source)
    dst = functor_object(F, p.target)
    tables = functor_morphism(F, p)
    flat = src.flat_basepoint()
    return tuple(t[flat] for t in tables) == dst.basepoint
