"""Exact combinatorics of the standard simplex.

Points of the standard k-simplex are tuples of k+1 :class:`fractions.Fraction`
barycentric coordinates.  Vertex ``e_q`` is the point whose q-th coordinate is 1.
Nothing in this module touches floating point.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import permutations
from typing import Iterable, Sequence

Point = tuple  # tuple[Fraction, ...]


class ProjectionUndefined(ValueError):
    """Raised when a projection is evaluated on its excluded apex or segment."""


def barycentric(coords: Iterable) -> Point:
    """Validate and convert ``coords`` to an exact barycentric point."""
    pt = tuple(Fraction(c) for c in coords)
    if not pt:
        raise ValueError("a barycentric point needs at least one coordinate")
    if any(c < 0 for c in pt):
        raise ValueError(f"negative barycentric coordinate in {pt}")
    if sum(pt) != 1:
        raise ValueError(f"barycentric coordinates must sum to 1, got {sum(pt)}")
    return pt


def vertex(k: int, q: int) -> Point:
    if not 0 <= q <= k:
        raise IndexError(f"vertex index {q} out of range for dimension {k}")
    return tuple(Fraction(int(i == q)) for i in range(k + 1))


def dim(x: Sequence) -> int:
    return len(x) - 1


# --------------------------------------------------------------------------
# permutations

@dataclass(frozen=True)
class Perm:
    """A permutation of ``{0..k}`` in one-line notation: ``q -> images[q]``."""

    images: tuple

    def __post_init__(self):
        imgs = tuple(int(i) for i in self.images)
        if sorted(imgs) != list(range(len(imgs))):
            raise ValueError(f"not a permutation: {self.images}")
        object.__setattr__(self, "images", imgs)

    @classmethod
    def identity(cls, k: int) -> "Perm":
        return cls(tuple(range(k + 1)))

    @classmethod
    def transposition(cls, k: int, a: int, b: int) -> "Perm":
        imgs = list(range(k + 1))
        imgs[a], imgs[b] = imgs[b], imgs[a]
        return cls(tuple(imgs))

    @classmethod
    def all(cls, k: int):
        for imgs in permutations(range(k + 1)):
            yield cls(imgs)

    @property
    def k(self) -> int:
        return len(self.images) - 1

    @property
    def sign(self) -> int:
        return parity_sign(self.images)

    def __call__(self, q: int) -> int:
        return self.images[q]

    def __mul__(self, other: "Perm") -> "Perm":
        # (self * other)(q) = self(other(q))
        return Perm(tuple(self.images[j] for j in other.images))

    def inverse(self) -> "Perm":
        inv = [0] * len(self.images)
        for q, j in enumerate(self.images):
            inv[j] = q
        return Perm(tuple(inv))

    def extend(self, n: int = 1) -> "Perm":
        """View as a permutation of ``{0..k+n}`` fixing the new points."""
        return Perm(self.images + tuple(range(len(self.images), len(self.images) + n)))

    def __repr__(self):
        return f"Perm{self.images}"


def parity_sign(seq: Sequence) -> int:
    """Sign of the permutation sorting ``seq`` (distinct comparable items)."""
    inv = 0
    n = len(seq)
    for i in range(n):
        for j in range(i + 1, n):
            if seq[i] > seq[j]:
                inv += 1
    return -1 if inv % 2 else 1


def permutation_apply(tau: Perm, x: Sequence) -> Point:
    """Linear self-map of the simplex with ``tau(e_q) = e_{tau(q)}``."""
    if len(x) != len(tau.images):
        raise ValueError("dimension mismatch between permutation and point")
    out = [None] * len(x)
    for q, c in enumerate(x):
        out[tau(q)] = c
    return tuple(out)


# --------------------------------------------------------------------------
# faces and projections

def face_inclusion(k: int, p: int) -> tuple:
    """Vertex images of the p-th face inclusion Δ^{k-1} -> Δ^k (as vertex indices)."""
    if k < 1 or not 0 <= p <= k:
        raise IndexError(f"face index {p} out of range for dimension {k}")
    return tuple(q if q < p else q + 1 for q in range(k))


def face_index_inverse(k: int, p: int, r: int) -> int:
    """Index in Δ^{k-1} of vertex r of Δ^k, for r != p."""
    if r == p:
        raise ValueError("vertex p is not on the p-th face")
    return r if r < p else r - 1


def include(k: int, p: int, x: Sequence) -> tuple:
    """Apply the p-th face inclusion to a point of Δ^{k-1}."""
    if len(x) != k:
        raise ValueError(f"expected a point of Δ^{k - 1}")
    face_inclusion(k, p)
    zero = x[0] * 0
    return tuple(x[:p]) + (zero,) + tuple(x[p:])


def restrict(k: int, p: int, x: Sequence) -> tuple:
    """Inverse of :func:`include` on the p-th face (drops coordinate p)."""
    if x[p] != 0:
        raise ValueError(f"point is not on face {p}")
    return tuple(x[:p]) + tuple(x[p + 1:])


def project_to_face(x: Sequence, p: int) -> Point:
    """Radial projection from vertex e_p onto the opposite face."""
    tp = x[p]
    if tp >= 1:
        raise ProjectionUndefined(f"projection to face {p} undefined at e_{p}")
    scale = 1 / (1 - tp)
    return tuple(c * scale if q != p else c * 0 for q, c in enumerate(x))


def project_to_codim2(x: Sequence, p: int, q: int) -> Point:
    if p == q:
        raise ValueError("p and q must differ")
    s = x[p] + x[q]
    if s >= 1:
        raise ProjectionUndefined(f"projection undefined on the segment CH(e_{p}, e_{q})")
    scale = 1 / (1 - s)
    return tuple(c * 0 if r in (p, q) else c * scale for r, c in enumerate(x))


def barycenter(k: int) -> Point:
    return tuple(Fraction(1, k + 1) for _ in range(k + 1))


def face_barycenter(k: int, p: int) -> Point:
    """Barycenter of the p-th face, i.e. ``include(k, p, barycenter(k-1))``."""
    return include(k, p, barycenter(k - 1))


def cone_barycenter(k: int, p: int) -> Point:
    """Barycenter of the simplex spanned by b_k and the vertices of face p."""
    b = barycenter(k)
    return tuple((b[q] + (q != p)) / (k + 1) for q in range(k + 1))


def barycenter_points(k: int):
    """Return ``(b_k, [b_{k,p}], [b'_{k,p}])``; the face lists are empty for k = 0."""
    if k < 0:
        raise ValueError("dimension must be nonnegative")
    b = barycenter(k)
    if k == 0:
        return b, [], []
    return b, [face_barycenter(k, p) for p in range(k + 1)], [cone_barycenter(k, p) for p in range(k + 1)]


# --------------------------------------------------------------------------
# regions

REGION_KINDS = ("U_face", "U_tilde_codim2", "U_codim2", "face", "codim2_face", "interior")


@dataclass(frozen=True)
class RegionSpec:
    kind: str
    k: int
    p: int | None = None
    q: int | None = None

    def __post_init__(self):
        if self.kind not in REGION_KINDS:
            raise ValueError(f"unknown region kind {self.kind!r}")
        idx = [i for i in (self.p, self.q) if i is not None]
        if any(not 0 <= i <= self.k for i in idx):
            raise IndexError("region index out of range")
        if self.p is not None and self.p == self.q:
            raise ValueError("p and q must differ")
        needs = {"U_face": 1, "face": 1, "U_tilde_codim2": 2, "U_codim2": 2, "codim2_face": 2, "interior": 0}
        if len(idx) != needs[self.kind]:
            raise ValueError(f"{self.kind} takes {needs[self.kind]} indices")


def region_generators(spec: RegionSpec):
    """Generator points and per-coefficient constraints (``'>'``, ``'>='``, ``'='``).

    The region is the set of ``sum t_i g_i`` with ``sum t_i = 1`` and each t_i
    meeting its constraint.  Generators are affinely independent.
    """
    return _region_generators(spec.kind, spec.k, spec.p, spec.q)


@lru_cache(maxsize=None)
def _region_generators(kind, k, p, q):
    gens = [vertex(k, r) for r in range(k + 1)]
    cons = [">"] * (k + 1)
    if kind == "interior":
        pass
    elif kind == "face":
        cons = [">="] * (k + 1)
        cons[p] = "="
    elif kind == "codim2_face":
        cons = [">="] * (k + 1)
        cons[p] = cons[q] = "="
    elif kind == "U_face":
        if k < 1:
            raise ValueError("U_face needs k >= 1")
        gens[p] = cone_barycenter(k, p)
        cons[p] = ">="
    elif kind == "U_tilde_codim2":
        gens[p] = face_barycenter(k, p)
        gens[q] = face_barycenter(k, q)
        cons[p] = cons[q] = ">="
    elif kind == "U_codim2":
        # t_p generator: the cone barycenter of face q inside face p, and symmetrically
        gens[p] = include(k, p, cone_barycenter(k - 1, face_index_inverse(k, p, q)))
        gens[q] = include(k, q, cone_barycenter(k - 1, face_index_inverse(k, q, p)))
        cons[p] = cons[q] = ">="
    return tuple(gens), tuple(cons)


def solve_exact(matrix: Sequence[Sequence], rhs: Sequence) -> tuple | None:
    """Solve a square linear system over the rationals; None if singular."""
    n = len(matrix)
    a = [[Fraction(v) for v in row] + [Fraction(rhs[i])] for i, row in enumerate(matrix)]
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            return None
        a[col], a[piv] = a[piv], a[col]
        pv = a[col][col]
        a[col] = [v / pv for v in a[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                a[r] = [vr - f * vc for vr, vc in zip(a[r], a[col])]
    return tuple(row[n] for row in a)


def region_contains(spec: RegionSpec, x: Sequence):
    """Decide membership exactly; returns ``(inside, coefficients)``.

    The coefficients are the barycentric expansion of ``x`` in the region's
    generator system (returned whether or not ``x`` is inside).
    """
    if len(x) != spec.k + 1:
        raise ValueError("dimension mismatch between region and point")
    gens, cons = region_generators(spec)
    cols = [[g[r] for g in gens] for r in range(spec.k + 1)]
    t = solve_exact(cols, x)
    if t is None:
        raise ArithmeticError("region generators are affinely dependent")
    ok = all(
        (c == ">" and v > 0) or (c == ">=" and v >= 0) or (c == "=" and v == 0)
        for v, c in zip(t, cons)
    )
    return ok, t


def induced_face_permutation(tau: Perm, p: int):
    """Return ``(tau_p, tau(p))`` with ``tau ∘ ι_{k,p} = ι_{k,tau(p)} ∘ tau_p``.

    Also asserts ``sign tau_p = (-1)^(p + tau(p)) sign tau``.
    """
    k = tau.k
    if k < 1:
        raise ValueError("need k >= 1")
    target = tau(p)
    src = face_inclusion(k, p)
    tau_p = Perm(tuple(face_index_inverse(k, target, tau(src[i])) for i in range(k)))
    expected = (-1) ** (p + target) * tau.sign
    if tau_p.sign != expected:
        raise AssertionError(f"face sign identity failed for {tau}, p={p}")
    return tau_p, target


def codim2_disjointness_certificate(k: int, pair1, pair2):
    """Exact certificate that two distinct codim-2 neighborhoods Ũ are disjoint.

    Ũ^k_{p,q} is cut out by the strict inequalities ``x_r - x_p - x_q > 0``
    (r not in {p,q}) on the nonnegative orthant.  A nonzero ``y >= 0`` with
    ``sum_i y_i a_i <= 0`` coordinatewise rules out a common point.  The
    multipliers are found with a floating point LP and then checked in exact
    arithmetic; returns the rational multipliers, or None if none was found.
    """
    import numpy as np
    from scipy.optimize import linprog

    rows = []
    for p, q in (pair1, pair2):
        for r in range(k + 1):
            if r not in (p, q):
                a = [0] * (k + 1)
                a[r] += 1
                a[p] -= 1
                a[q] -= 1
                rows.append(a)
    if not rows:
        return None
    A = np.array(rows, dtype=float)
    m = len(rows)
    res = linprog(
        c=np.zeros(m),
        A_ub=A.T,
        b_ub=np.zeros(k + 1),
        A_eq=np.ones((1, m)),
        b_eq=[1.0],
        bounds=[(0, None)] * m,
        method="highs",
    )
    if res.status != 0:
        return None
    y = [Fraction(v).limit_denominator(1000) for v in res.x]
    y = [max(v, Fraction(0)) for v in y]
    if not any(y):
        return None
    combo = [sum(yi * row[c] for yi, row in zip(y, rows)) for c in range(k + 1)]
    if all(v <= 0 for v in combo):
        return tuple(y)
    return None
