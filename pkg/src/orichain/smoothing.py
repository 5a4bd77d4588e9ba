"""Bump functions and the face-collapsing self-maps of the simplex.

``phi_tilde`` acts on Δ^{k+1}: near the interior of each codimension-two face
``Δ_{p,q}`` it is the projection onto that face, elsewhere the identity, with
a smooth transition in between.  ``phi`` on Δ^k is obtained by restricting
``phi_tilde`` to a facet of Δ^{k+1}.

Everything here is binary64 and vectorised over the leading axis: a point is
a length k+1 array and a batch is an ``(n, k+1)`` array.
"""
from __future__ import annotations

import os
from dataclasses import dataclass, field

import numpy as np

DEFAULT_MAX_DIM = 6


def max_dim() -> int:
    return int(os.environ.get("ORICHAIN_MAX_DIM", DEFAULT_MAX_DIM))


class DimensionOverflow(ValueError):
    pass


class ExcludedLocus(ValueError):
    """Raised when a bump function is evaluated where it is undefined."""


def _smooth_step(t):
    """C-infinity step: 0 for t <= 0, 1 for t >= 1, strictly increasing between."""
    t = np.asarray(t, dtype=float)
    with np.errstate(divide="ignore", over="ignore", invalid="ignore"):
        a = np.where(t > 0, np.exp(-1.0 / np.where(t > 0, t, 1.0)), 0.0)
        b = np.where(t < 1, np.exp(-1.0 / np.where(t < 1, 1.0 - t, 1.0)), 0.0)
    return a / (a + b)


@dataclass(frozen=True)
class BumpSpec:
    """Cutoff profile for the codim-2 bumps on Δ^{dim}.

    For a pair ``(p, q)`` and each other vertex r the bump looks at
    ``u_r = x_r / (x_r + x_p + x_q)``.  Inside the inner neighborhood
    ``u_r > (dim+1)/(dim+2)`` for every r; outside the outer neighborhood some
    ``u_r <= 1/2``.  The profile rises from 0 at ``lo`` to 1 at ``hi`` and the
    bump is the product of the profile over r, so any ``1/2 <= lo < hi <=
    (dim+1)/(dim+2)`` is admissible.
    """

    dim: int
    lo: float | None = None
    hi: float | None = None

    def __post_init__(self):
        if self.dim < 2:
            raise ValueError("codim-2 bumps need an ambient dimension >= 2")
        if self.dim > max_dim() + 1:
            raise DimensionOverflow(f"dimension {self.dim} exceeds ORICHAIN_MAX_DIM + 1")
        lo = 0.5 if self.lo is None else float(self.lo)
        hi = (self.dim + 1) / (self.dim + 2) if self.hi is None else float(self.hi)
        if not 0.5 <= lo < hi <= (self.dim + 1) / (self.dim + 2):
            raise ValueError(f"inadmissible thresholds lo={lo}, hi={hi} for dimension {self.dim}")
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)

    def profile(self, u):
        return _smooth_step((np.asarray(u, dtype=float) - self.lo) / (self.hi - self.lo))


def _as_batch(x, dim=None):
    arr = np.asarray(x, dtype=float)
    single = arr.ndim == 1
    arr = np.atleast_2d(arr)
    if dim is not None and arr.shape[1] != dim + 1:
        raise ValueError(f"expected points of Δ^{dim}")
    return arr, single


def eta(bump: BumpSpec, p: int, q: int, x, *, strict: bool = True):
    """Bump for the pair ``(p, q)``: 1 on U_{p,q}, 0 outside Ũ_{p,q}.

    Undefined where x lies on Δ_{p,q} and on the (dim-3)-skeleton; with
    ``strict`` that raises :class:`ExcludedLocus`, otherwise those entries
    are NaN.
    """
    if p == q:
        raise ValueError("p and q must differ")
    arr, single = _as_batch(x, bump.dim)
    s = arr[:, p] + arr[:, q]
    others = [r for r in range(bump.dim + 1) if r not in (p, q)]
    out = np.ones(len(arr))
    bad = np.zeros(len(arr), dtype=bool)
    for r in others:
        xr = arr[:, r]
        den = xr + s
        bad |= den <= 0
        with np.errstate(divide="ignore", invalid="ignore"):
            u = np.where(den > 0, xr / np.where(den > 0, den, 1.0), 0.0)
        out = out * bump.profile(u)
    if bad.any():
        if strict:
            raise ExcludedLocus(f"eta_{p},{q} is undefined on Δ_{p},{q} ∩ skeleton")
        out = np.where(bad, np.nan, out)
    return out[0] if single else out


def _project_codim2(arr, p, q):
    s = arr[:, p] + arr[:, q]
    with np.errstate(divide="ignore", invalid="ignore"):
        proj = arr / (1.0 - s)[:, None]
    proj[:, p] = 0.0
    proj[:, q] = 0.0
    return proj


@dataclass(frozen=True)
class SmoothingMap:
    """``kind='phi_tilde'`` acts on Δ^{k+1}; ``kind='phi'`` acts on Δ^k."""

    k: int
    kind: str = "phi"
    bump: BumpSpec | None = field(default=None)

    def __post_init__(self):
        if self.kind not in ("phi", "phi_tilde"):
            raise ValueError(f"unknown smoothing map kind {self.kind!r}")
        if self.k < 1:
            raise ValueError("smoothing maps need k >= 1")
        if self.k > max_dim():
            raise DimensionOverflow(f"k={self.k} exceeds ORICHAIN_MAX_DIM={max_dim()}")
        if self.bump is None:
            object.__setattr__(self, "bump", BumpSpec(self.k + 1))
        elif self.bump.dim != self.k + 1:
            raise ValueError("bump dimension must be k + 1")

    @property
    def domain_dim(self) -> int:
        return self.k + 1 if self.kind == "phi_tilde" else self.k

    def __call__(self, x, p: int | None = None):
        if self.kind == "phi_tilde":
            return phi_tilde(self, x)
        return phi(self, x, p=p)


def phi_tilde(smap: SmoothingMap, x):
    """``x + sum_{p<q} eta_{p,q}(x) (pi_{p,q}(x) - x)`` on Δ^{k+1}.

    A term is skipped wherever its bump vanishes; this also covers the
    segment CH(e_p, e_q) where the projection is undefined, and the excluded
    locus of eta_{p,q}, where the projection is the identity.
    """
    bump = smap.bump
    arr, single = _as_batch(x, bump.dim)
    out = arr.copy()
    n = bump.dim + 1
    for p in range(n):
        for q in range(p + 1, n):
            w = eta(bump, p, q, arr, strict=False)
            w = np.where(np.isnan(w), 0.0, w)
            hit = w > 0
            if not hit.any():
                continue
            sub = arr[hit]
            out[hit] += w[hit, None] * (_project_codim2(sub, p, q) - sub)
    return out[0] if single else out


def phi(smap: SmoothingMap, x, p: int | None = None):
    """Restriction of ``phi_tilde`` to the p-th facet of Δ^{k+1} (default p = k+1)."""
    k = smap.k
    tilde = smap if smap.kind == "phi_tilde" else SmoothingMap(k, "phi_tilde", smap.bump)
    face = k + 1 if p is None else p
    if not 0 <= face <= k + 1:
        raise IndexError("face index out of range")
    arr, single = _as_batch(x, k)
    lifted = np.insert(arr, face, 0.0, axis=1)
    img = phi_tilde(tilde, lifted)
    out = np.delete(img, face, axis=1)
    return out[0] if single else out

