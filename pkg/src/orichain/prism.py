"""Cone operator and the chain homotopy on chains of linear maps.

A linear map Δ^m -> Δ^k is stored as the tuple of its m+1 vertex images,
each an exact barycentric point of Δ^k.  Chains of such maps reuse
:class:`orichain.chains.Chain` (keys are tuples of points), so the boundary
operator is the ordinary alternating face sum.  Degenerate maps are kept.
"""
from __future__ import annotations

import random
import threading
from fractions import Fraction
from typing import Iterable, Sequence

from .chains import Chain, boundary
from .simplex import Perm, barycenter, barycentric, permutation_apply, vertex


class NotInSPrime(ValueError):
    """Input to the homotopy check was not given as generators ``f - sign(tau) f∘tau``."""


def linear_map(images: Iterable[Sequence]) -> tuple:
    pts = tuple(barycentric(p) for p in images)
    if not pts:
        raise ValueError("a linear map needs at least one vertex image")
    if len({len(p) for p in pts}) != 1:
        raise ValueError("vertex images live in simplices of different dimension")
    return pts


def target_dim(f: tuple) -> int:
    return len(f[0]) - 1


def identity_map(k: int) -> tuple:
    return tuple(vertex(k, q) for q in range(k + 1))


def prism(f: tuple) -> tuple:
    """Append the barycenter of the target simplex as a new last vertex image."""
    return tuple(f) + (barycenter(target_dim(f)),)


def prism_chain(c: Chain) -> Chain:
    return Chain({prism(f): a for f, a in c.items()})


def precompose(f: tuple, tau: Perm) -> tuple:
    """``f∘tau``: vertex q goes to ``f(e_{tau(q)})``."""
    if tau.k > len(f) - 1:
        raise ValueError("permutation acts on more vertices than the source has")
    tau = tau.extend(len(f) - 1 - tau.k) if tau.k < len(f) - 1 else tau
    return tuple(f[tau(q)] for q in range(len(f)))


def postcompose(tau: Perm, f: tuple) -> tuple:
    """``tau∘f`` for a permutation acting linearly on the target simplex."""
    return tuple(permutation_apply(tau, pt) for pt in f)


def apply_linear(f: tuple, pt: Sequence) -> tuple:
    """Evaluate the linear map ``f`` at a barycentric point of its source."""
    k = target_dim(f)
    out = [Fraction(0)] * (k + 1)
    for t, img in zip(pt, f):
        if t:
            for r in range(k + 1):
                out[r] += t * img[r]
    return tuple(out)


def push_forward(f: tuple, c: Chain) -> Chain:
    """``f_#``: compose every map in ``c`` (which lands in f's source) with ``f``."""
    out: dict = {}
    for g, a in c.items():
        h = tuple(apply_linear(f, pt) for pt in g)
        out[h] = out.get(h, 0) + a
    return Chain(out)


_D_ID: dict[int, Chain] = {}
_D_LOCK = threading.Lock()


def homotopy_of_identity(k: int) -> Chain:
    """``D(Id_k) = P_k(Id + (-1)^(k+1) D ∂ Id)``, memoized per k."""
    if k < 1:
        return Chain()
    cached = _D_ID.get(k)
    if cached is not None:
        return cached
    ident = identity_map(k)
    inner = Chain({ident: 1})
    lower = homotopy_D(boundary(inner))
    inner = inner + lower * (-1) ** (k + 1)
    value = prism_chain(inner)
    with _D_LOCK:
        return _D_ID.setdefault(k, value)


def homotopy_D(c: Chain) -> Chain:
    """Natural chain homotopy: zero on grade 0, ``f_# D(Id_m)`` on a grade-m map."""
    if not c or c.grade == 0:
        return Chain()
    d_id = homotopy_of_identity(c.grade)
    out = Chain()
    for f, a in c.items():
        out = out + push_forward(f, d_id) * a
    return out


def generator_chain(f: tuple, tau: Perm) -> Chain:
    """``f - sign(tau) f∘tau``."""
    return Chain({tuple(f): 1}) + Chain({precompose(f, tau): -tau.sign})


def verify_homotopy_identity(generators: Iterable):
    """Check ``∂D c - (-1)^(k+1) c - D∂ c == 0`` for ``c = sum coeff (f - sign(tau) f∘tau)``.

    ``generators`` is an iterable of ``(coeff, f, tau)``.  Returns
    ``(ok, defect)`` with the exact defect chain.
    """
    c = Chain()
    for item in generators:
        try:
            coeff, f, tau = item
        except (TypeError, ValueError):
            raise NotInSPrime(f"expected (coeff, map, permutation), got {item!r}") from None
        if not isinstance(tau, Perm) or not isinstance(coeff, int):
            raise NotInSPrime(f"expected (int, map, Perm), got {item!r}")
        if tau.k != len(f) - 1:
            raise NotInSPrime("permutation must act on the source vertices of the map")
        c = c + generator_chain(tuple(f), tau) * coeff
    if not c:
        return True, Chain()
    k = c.grade
    defect = boundary(homotopy_D(c)) - c * (-1) ** (k + 1) - homotopy_D(boundary(c))
    return not defect, defect


def random_point(k: int, rng: random.Random, denom: int = 12) -> tuple:
    cuts = sorted(rng.randint(0, denom) for _ in range(k))
    parts = [b - a for a, b in zip([0] + cuts, cuts + [denom])]
    return tuple(Fraction(v, denom) for v in parts)


def random_linear_map(m: int, k: int, rng: random.Random, denom: int = 12) -> tuple:
    return tuple(random_point(k, rng, denom) for _ in range(m + 1))
