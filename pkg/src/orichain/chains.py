"""Integer chains on ordered simplices and their oriented normal forms.

A simplex is an ordered tuple of vertex labels (ints or strings).  The
oriented model identifies ``f`` with ``sign(tau) * f∘tau``; its normal form is
the sorted tuple with the parity of the sorting permutation, and tuples with
a repeated label are zero.
"""
from __future__ import annotations

from collections.abc import Mapping
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable


def vertex_key(v):
    """Total order on labels: integers (numerically) before strings (lexicographically)."""
    if isinstance(v, bool):
        raise TypeError("booleans are not vertex labels")
    if isinstance(v, int):
        return (0, v, "")
    if isinstance(v, str):
        return (1, 0, v)
    # points of the simplex (tuples of Fractions) in the linear-map chains
    return (2, 0, v)


def simplex_key(f):
    return (len(f), tuple(vertex_key(v) for v in f))


def sort_with_sign(f: tuple):
    """Sort ``f`` by :func:`vertex_key`; return ``(sorted, sign)`` or ``(None, 0)`` if degenerate."""
    keys = [vertex_key(v) for v in f]
    if len(set(keys)) != len(keys):
        return None, 0
    order = sorted(range(len(f)), key=keys.__getitem__)
    inv = sum(1 for i in range(len(order)) for j in range(i + 1, len(order)) if order[i] > order[j])
    return tuple(f[i] for i in order), (-1 if inv % 2 else 1)


class Chain(Mapping):
    """Finite formal sum of same-length tuples with nonzero integer coefficients."""

    __slots__ = ("_terms", "_grade")

    def __init__(self, terms=None, grade: int | None = None):
        acc: dict = {}
        if terms is not None:
            items = terms.items() if isinstance(terms, Mapping) else terms
            for f, c in items:
                f = tuple(f)
                c = int(c)
                if c:
                    acc[f] = acc.get(f, 0) + c
        acc = {f: c for f, c in acc.items() if c}
        lengths = {len(f) for f in acc}
        if len(lengths) > 1:
            raise ValueError(f"mixed grades in chain: {sorted(lengths)}")
        if lengths:
            g = lengths.pop() - 1
            if g < 0:
                raise ValueError("simplices need at least one vertex")
            if grade is not None and grade != g:
                raise ValueError(f"grade {grade} does not match simplices of grade {g}")
            grade = g
        self._terms = acc
        self._grade = grade

    @classmethod
    def simplex(cls, f, coeff: int = 1) -> "Chain":
        return cls({tuple(f): coeff})

    @property
    def grade(self) -> int | None:
        return self._grade

    def __getitem__(self, f):
        return self._terms[tuple(f)]

    def __iter__(self):
        return iter(self._terms)

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def sorted_items(self):
        return sorted(self._terms.items(), key=lambda fc: simplex_key(fc[0]))

    def _grade_with(self, other: "Chain"):
        if self._grade is not None and other._grade is not None and self._grade != other._grade:
            raise ValueError("cannot combine chains of different grades")
        return self._grade if self._grade is not None else other._grade

    def __add__(self, other: "Chain") -> "Chain":
        g = self._grade_with(other)
        return Chain(list(self._terms.items()) + list(other._terms.items()), g)

    def __neg__(self) -> "Chain":
        return Chain({f: -c for f, c in self._terms.items()}, self._grade)

    def __sub__(self, other: "Chain") -> "Chain":
        return self + (-other)

    def __mul__(self, n: int) -> "Chain":
        return Chain({f: n * c for f, c in self._terms.items()}, self._grade)

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, Chain):
            return self._terms == other._terms
        if other == 0:
            return not self._terms
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def __repr__(self):
        if not self._terms:
            return "Chain(0)"
        parts = [f"{c:+d}*{f}" for f, c in self.sorted_items()]
        return "Chain(" + " ".join(parts) + ")"


def boundary(c: Chain) -> Chain:
    """Alternating-sign face sum; a grade-0 chain has empty boundary."""
    if c.grade is None or c.grade == 0:
        return Chain()
    out: dict = {}
    for f, a in c.items():
        for p in range(len(f)):
            face = f[:p] + f[p + 1:]
            out[face] = out.get(face, 0) + (a if p % 2 == 0 else -a)
    return Chain(out, c.grade - 1)


@dataclass(frozen=True)
class OrientedClass:
    """Normal form of a simplex in the oriented model; ``vertices is None`` means zero."""

    vertices: tuple | None
    sign: int = 1

    @property
    def is_zero(self) -> bool:
        return self.vertices is None


def orient_normalize(f) -> OrientedClass:
    srt, sign = sort_with_sign(tuple(f))
    if srt is None:
        return OrientedClass(None, 0)
    return OrientedClass(srt, sign)


def project_to_oriented(c: Chain) -> Chain:
    """Oriented chain keyed by sorted tuples; zero exactly on the relation subgroup."""
    out: dict = {}
    for f, a in c.items():
        srt, sign = sort_with_sign(f)
        if srt is not None:
            out[srt] = out.get(srt, 0) + sign * a
    return Chain(out, c.grade)


def oriented_boundary(c: Chain) -> Chain:
    return project_to_oriented(boundary(c))


def is_cycle_oriented(c: Chain) -> bool:
    return not oriented_boundary(c)


def sprime_generator(f, tau) -> Chain:
    """``f - sign(tau) f∘tau`` with ``(f∘tau)[q] = f[tau(q)]``."""
    f = tuple(f)
    ftau = tuple(f[tau(q)] for q in range(len(f)))
    return Chain({f: 1}) + Chain({ftau: -tau.sign})


class NotSubcomplex(ValueError):
    pass


class SimplicialComplex:
    """Finite abstract simplicial complex stored as face-closed sorted tuples."""

    def __init__(self, maximal: Iterable, subcomplex: Iterable | None = None):
        self.simplices = closure(maximal)
        self.vertices = sorted({v for s in self.simplices for v in s}, key=vertex_key)
        self.subcomplex = None
        if subcomplex is not None:
            sub = closure(subcomplex)
            if not sub <= self.simplices:
                raise NotSubcomplex("subcomplex simplices are not all in the complex")
            self.subcomplex = sub

    @classmethod
    def from_simplices(cls, simplices: Iterable, subcomplex=None) -> "SimplicialComplex":
        return cls(simplices, subcomplex)

    @property
    def dim(self) -> int:
        return max((len(s) - 1 for s in self.simplices), default=-1)

    def simplices_of_dim(self, d: int) -> list:
        return sorted((s for s in self.simplices if len(s) == d + 1), key=simplex_key)

    def maximal_simplices(self) -> list:
        covered = {t[:i] + t[i + 1:] for t in self.simplices for i in range(len(t))}
        return sorted(self.simplices - covered, key=simplex_key)

    def __contains__(self, s) -> bool:
        srt, _ = sort_with_sign(tuple(s))
        return srt is not None and srt in self.simplices

    def f_vector(self) -> list:
        return [len(self.simplices_of_dim(d)) for d in range(self.dim + 1)]

    def euler_characteristic(self) -> int:
        return sum((-1) ** d * n for d, n in enumerate(self.f_vector()))

    def relative_to(self, sub: Iterable | "SimplicialComplex") -> "SimplicialComplex":
        other = sub.simplices if isinstance(sub, SimplicialComplex) else sub
        return SimplicialComplex(self.simplices, other)

    def induced(self, simplices: Iterable) -> "SimplicialComplex":
        return SimplicialComplex(simplices)

    def __eq__(self, other):
        return isinstance(other, SimplicialComplex) and self.simplices == other.simplices and self.subcomplex == other.subcomplex

    def __repr__(self):
        return f"SimplicialComplex(f={self.f_vector()})"


def closure(maximal: Iterable) -> frozenset:
    out = set()
    for s in maximal:
        srt, _ = sort_with_sign(tuple(s))
        if srt is None:
            raise ValueError(f"simplex {tuple(s)} has a repeated vertex")
        if not srt:
            raise ValueError("empty simplex")
        for r in range(1, len(srt) + 1):
            out.update(combinations(srt, r))
    return frozenset(out)


def subcomplex_filter(c: Chain, A) -> Chain:
    """Drop the terms whose vertex set is a simplex of ``A``."""
    simp = A.simplices if isinstance(A, SimplicialComplex) else closure(A)

    def inside(f):
        srt = tuple(sorted(set(f), key=vertex_key))
        return srt in simp

    return Chain({f: a for f, a in c.items() if not inside(f)}, c.grade)
