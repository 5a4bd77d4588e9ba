"""Integral homology of finite simplicial complexes and pairs.

Two chain models are supported.  The oriented model has one generator per
simplex.  The ordered model has one generator per vertex tuple (repeats
allowed) whose vertex set is a simplex; it is truncated at degree dim K + 1,
which is enough to read off homology up to degree dim K.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations, product
from typing import Sequence

from .chains import Chain, SimplicialComplex, NotSubcomplex, project_to_oriented, simplex_key, vertex_key
from .snf import IntegerMatrix, invariant_factors, solve_integer


@dataclass(frozen=True)
class HomologyGroup:
    free_rank: int = 0
    torsion: tuple = ()

    def __post_init__(self):
        t = tuple(int(d) for d in self.torsion)
        if any(d < 2 for d in t):
            raise ValueError("torsion coefficients must be >= 2")
        if any(b % a for a, b in zip(t, t[1:])):
            raise ValueError(f"torsion coefficients must form a divisibility chain: {t}")
        object.__setattr__(self, "torsion", t)

    @property
    def is_zero(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    def __str__(self):
        parts = []
        if self.free_rank == 1:
            parts.append("Z")
        elif self.free_rank > 1:
            parts.append(f"Z^{self.free_rank}")
        parts += [f"Z/{d}" for d in self.torsion]
        return " + ".join(parts) if parts else "0"

    def as_dict(self) -> dict:
        return {"free_rank": self.free_rank, "torsion": list(self.torsion)}


def _ordered_generators(simplices, d: int) -> list:
    """Vertex tuples of length d+1 whose vertex set is exactly one of ``simplices``."""
    out = []
    for s in simplices:
        if len(s) > d + 1:
            continue
        for tup in product(s, repeat=d + 1):
            if len(set(tup)) == len(s):
                out.append(tup)
    return sorted(out, key=simplex_key)


def chain_bases(K: SimplicialComplex, model: str = "oriented", top: int | None = None) -> list:
    """Generator lists per degree 0..top of the (relative) chain complex."""
    if model not in ("oriented", "ordered"):
        raise ValueError(f"unknown chain model {model!r}")
    if top is None:
        top = K.dim + 1
    sub = K.subcomplex or frozenset()
    keep = [s for s in K.simplices if s not in sub]
    if model == "oriented":
        return [sorted((s for s in keep if len(s) == d + 1), key=simplex_key) for d in range(top + 1)]
    return [_ordered_generators(keep, d) for d in range(top + 1)]


def boundary_matrix(rows_basis: Sequence, cols_basis: Sequence, model: str = "oriented") -> IntegerMatrix:
    """Matrix of ∂ from span(cols_basis) to span(rows_basis); faces outside rows_basis are dropped."""
    index = {s: i for i, s in enumerate(rows_basis)}
    entries: dict = {}
    for j, f in enumerate(cols_basis):
        for p in range(len(f)):
            face = f[:p] + f[p + 1:]
            sign = -1 if p % 2 else 1
            if model == "oriented":
                srt = tuple(sorted(face, key=vertex_key))
                i = index.get(srt)
            else:
                i = index.get(face)
            if i is not None:
                entries[(i, j)] = entries.get((i, j), 0) + sign
    return IntegerMatrix(len(rows_basis), len(cols_basis), entries)


def _homology_from_bases(bases, model, degrees: int) -> list:
    ranks, factors = [], []
    for d in range(1, len(bases)):
        B = boundary_matrix(bases[d - 1], bases[d], model)
        f = invariant_factors(B)
        ranks.append(len(f))
        factors.append(f)
    groups = []
    for d in range(degrees + 1):
        n = len(bases[d])
        r_out = ranks[d - 1] if d >= 1 else 0
        r_in = ranks[d] if d < len(ranks) else 0
        tors = tuple(x for x in (factors[d] if d < len(factors) else []) if x > 1)
        groups.append(HomologyGroup(n - r_out - r_in, tors))
    return groups


def homology(K: SimplicialComplex, model: str = "oriented") -> list:
    """``[H_0, ..., H_{dim K}]``, relative to ``K.subcomplex`` when one is set."""
    if K.dim < 0:
        return []
    bases = chain_bases(K, model, K.dim + 1)
    return _homology_from_bases(bases, model, K.dim)


def relative_homology(K: SimplicialComplex, A=None) -> list:
    """Homology of the quotient chain complex C(K)/C(A)."""
    if A is None:
        pair = K
    else:
        simplices = A.simplices if isinstance(A, SimplicialComplex) else A
        pair = K.relative_to(simplices)
    return homology(pair, "oriented")


def betti_numbers_rational(K: SimplicialComplex) -> list:
    """Ranks of homology over Q via exact fraction-free rank computation (independent of SNF)."""
    from fractions import Fraction

    bases = chain_bases(K, "oriented", K.dim + 1)

    def rank(M: IntegerMatrix) -> int:
        a = [[Fraction(v) for v in row] for row in M.to_dense()]
        r = 0
        cols = M.cols
        for c in range(cols):
            piv = next((i for i in range(r, len(a)) if a[i][c] != 0), None)
            if piv is None:
                continue
            a[r], a[piv] = a[piv], a[r]
            for i in range(len(a)):
                if i != r and a[i][c] != 0:
                    f = a[i][c] / a[r][c]
                    a[i] = [x - f * y for x, y in zip(a[i], a[r])]
            r += 1
        return r

    ranks = [rank(boundary_matrix(bases[d - 1], bases[d])) for d in range(1, len(bases))]
    out = []
    for d in range(K.dim + 1):
        r_out = ranks[d - 1] if d >= 1 else 0
        r_in = ranks[d] if d < len(ranks) else 0
        out.append(len(bases[d]) - r_out - r_in)
    return out


def euler_characteristic(groups: Sequence[HomologyGroup]) -> int:
    return sum((-1) ** d * g.free_rank for d, g in enumerate(groups))


def is_oriented_boundary(c: Chain, K: SimplicialComplex) -> bool:
    """Decide exactly whether the oriented projection of ``c`` is a boundary in ``K``."""
    oc = project_to_oriented(c)
    if not oc:
        return True
    d = oc.grade
    rows = [s for s in K.simplices_of_dim(d)]
    index = {s: i for i, s in enumerate(rows)}
    b = [0] * len(rows)
    for s, a in oc.items():
        if s not in index:
            return False
        b[index[s]] = a
    cols = K.simplices_of_dim(d + 1)
    if not cols:
        return False
    A = boundary_matrix(rows, cols)
    return solve_integer(A, b) is not None


@dataclass
class MVReport:
    hypothesis_holds: bool
    conclusion_holds: bool
    top_index: int
    failures: list = field(default_factory=list)
    counterexample_degree: int | None = None

    @property
    def passed(self) -> bool:
        return self.hypothesis_holds and self.conclusion_holds

    def as_dict(self) -> dict:
        return {
            "hypothesis_holds": self.hypothesis_holds,
            "conclusion_holds": self.conclusion_holds,
            "cover_top_index": self.top_index,
            "failures": self.failures,
            "counterexample_degree": self.counterexample_degree,
        }


class CoverError(ValueError):
    pass


def verify_mv_vanishing(K: SimplicialComplex, cover: Sequence) -> MVReport:
    """Check Mayer-Vietoris vanishing for subcomplexes ``U_0..U_k`` whose union is ``K``.

    Hypothesis: every nonempty intersection of cover members has vanishing
    homology above degree 0.  Conclusion: ``H_l(K) = 0`` for ``l > k``.
    """
    pieces = [c if isinstance(c, SimplicialComplex) else SimplicialComplex(c) for c in cover]
    if not pieces:
        raise CoverError("empty cover")
    union = frozenset().union(*(p.simplices for p in pieces))
    if union != K.simplices:
        raise CoverError("cover does not union to the complex")
    k = len(pieces) - 1
    failures = []
    for r in range(1, len(pieces) + 1):
        for idx in combinations(range(len(pieces)), r):
            inter = frozenset.intersection(*(pieces[i].simplices for i in idx))
            if not inter:
                continue
            H = homology(SimplicialComplex(inter))
            bad = [d for d, g in enumerate(H) if d > 0 and not g.is_zero]
            if bad:
                failures.append({"pieces": list(idx), "degrees": bad})
    H = homology(K)
    high = [d for d, g in enumerate(H) if d > k and not g.is_zero]
    return MVReport(
        hypothesis_holds=not failures,
        conclusion_holds=not high,
        top_index=k,
        failures=failures,
        counterexample_degree=high[0] if high else None,
    )


def connected_components(K: SimplicialComplex) -> int:
    """Number of components by breadth-first search on the 1-skeleton."""
    adj = {v: set() for v in K.vertices}
    for s in K.simplices_of_dim(1):
        a, b = s
        adj[a].add(b)
        adj[b].add(a)
    seen, comps = set(), 0
    for v in K.vertices:
        if v in seen:
            continue
        comps += 1
        todo = [v]
        seen.add(v)
        while todo:
            u = todo.pop()
            for w in adj[u] - seen:
                seen.add(w)
                todo.append(w)
    return comps


__all__ = [
    "HomologyGroup",
    "MVReport",
    "CoverError",
    "NotSubcomplex",
    "boundary_matrix",
    "chain_bases",
    "homology",
    "relative_homology",
    "betti_numbers_rational",
    "euler_characteristic",
    "is_oriented_boundary",
    "verify_mv_vanishing",
    "connected_components",
]
