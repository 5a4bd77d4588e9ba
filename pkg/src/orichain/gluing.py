"""Face pairings of oriented cycles, glued pseudomanifolds and collared cobordisms.

Everything here is combinatorial.  A cycle is first expanded into a list of
cells (one ordered vertex tuple per unit of coefficient).  A face slot
``(j, p)`` is the face of cell j opposite its p-th vertex; its induced sign is
``(-1)^p`` times the parity of the face tuple.  Two slots can be matched when
they carry the same vertex set with opposite induced signs.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Sequence

from .chains import (
    Chain,
    SimplicialComplex,
    boundary,
    project_to_oriented,
    simplex_key,
    sort_with_sign,
    vertex_key,
)
from .homology import is_oriented_boundary
from .simplex import Perm, face_inclusion


class GluingError(ValueError):
    pass


class NotACycle(GluingError):
    def __init__(self, message: str, residue: Chain | None = None):
        super().__init__(message)
        self.residue = residue if residue is not None else Chain()


class BoundaryMismatch(GluingError):
    def __init__(self, message: str, residue: Chain | None = None):
        super().__init__(message)
        self.residue = residue if residue is not None else Chain()


class InconsistentAttachment(GluingError):
    pass


@dataclass(frozen=True, order=True)
class FaceSlot:
    j: int
    p: int

    def __iter__(self):
        return iter((self.j, self.p))


def expand_chain(c: Chain) -> list:
    """Cells of ``c``: ``|a|`` copies of each term, negative terms with their first two vertices swapped.

    Degenerate tuples (a repeated label) are zero in the oriented model and dropped.
    """
    cells = []
    for f, a in c.sorted_items():
        if sort_with_sign(f)[0] is None:
            continue
        if a < 0:
            if len(f) < 2:
                raise GluingError("a negative 0-simplex cannot be expanded")
            f = (f[1], f[0]) + tuple(f[2:])
        cells.extend([tuple(f)] * abs(a))
    return cells


def face_tuple(cell: tuple, p: int) -> tuple:
    return cell[:p] + cell[p + 1:]


def slot_sign(cell: tuple, p: int) -> int:
    _, s = sort_with_sign(face_tuple(cell, p))
    return s if p % 2 == 0 else -s


def aligning_perm(src: tuple, dst: tuple) -> Perm:
    """The permutation ``tau`` with ``dst[i] == src[tau(i)]``."""
    return Perm(tuple(src.index(v) for v in dst))


def _slot_groups(cells: Sequence) -> dict:
    groups: dict = {}
    for j, cell in enumerate(cells):
        for p in range(len(cell)):
            srt, s = sort_with_sign(face_tuple(cell, p))
            sign = s if p % 2 == 0 else -s
            groups.setdefault(srt, ([], []))[0 if sign > 0 else 1].append(FaceSlot(j, p))
    return groups


@dataclass
class FacePairing:
    """Involutive matching of face slots with aligning permutations.

    ``perm[(x, y)]`` is tau with ``face(y) = face(x)∘tau``; both orders are stored.
    """

    k: int
    cells: tuple
    matched: dict = field(default_factory=dict)
    perm: dict = field(default_factory=dict)
    unmatched: tuple = ()

    def pairs(self) -> list:
        return sorted((x, y) for x, y in self.matched.items() if x < y)

    @property
    def closed(self) -> bool:
        return not self.unmatched

    def table(self) -> list:
        rows = []
        for x, y in self.pairs():
            rows.append({"slot": [x.j, x.p], "partner": [y.j, y.p], "perm": list(self.perm[(x, y)].images)})
        return rows


def _pair(pairing: FacePairing, x: FaceSlot, y: FaceSlot):
    fx = face_tuple(pairing.cells[x.j], x.p)
    fy = face_tuple(pairing.cells[y.j], y.p)
    tau = aligning_perm(fx, fy)
    pairing.matched[x] = y
    pairing.matched[y] = x
    pairing.perm[(x, y)] = tau
    pairing.perm[(y, x)] = tau.inverse()


def extract_face_pairing(s: Chain | Sequence, mode: str = "strict") -> FacePairing:
    """Match the face slots of a cycle (``mode='strict'``) or of any chain (``mode='open'``).

    Within each group of slots sharing a vertex set, positive and negative slots are
    matched in lexicographic order.  In strict mode leftover slots raise
    :class:`NotACycle` carrying the oriented boundary as residue.
    """
    if mode not in ("strict", "open"):
        raise ValueError(f"unknown pairing mode {mode!r}")
    cells = tuple(expand_chain(s)) if isinstance(s, Chain) else tuple(tuple(c) for c in s)
    if not cells:
        return FacePairing(k=-1, cells=())
    k = len(cells[0]) - 1
    if any(len(c) != k + 1 for c in cells):
        raise GluingError("cells of mixed dimension")
    if k < 1:
        raise GluingError("face pairings need cells of dimension >= 1")
    pairing = FacePairing(k=k, cells=cells)
    leftovers = []
    groups = _slot_groups(cells)
    for key in sorted(groups, key=simplex_key):
        plus, minus = (sorted(g) for g in groups[key])
        for x, y in zip(plus, minus):
            _pair(pairing, x, y)
        n = min(len(plus), len(minus))
        leftovers += plus[n:] + minus[n:]
    pairing.unmatched = tuple(sorted(leftovers))
    if mode == "strict" and leftovers:
        residue = project_to_oriented(boundary(_cells_chain(cells)))
        raise NotACycle(f"{len(leftovers)} face slots have no partner", residue)
    return pairing


def _cells_chain(cells: Iterable) -> Chain:
    out: dict = {}
    for c in cells:
        out[c] = out.get(c, 0) + 1
    return Chain(out)


def pairing_violations(pairing: FacePairing) -> list:
    """Human-readable list of broken pairing invariants (empty when valid)."""
    out = []
    cells, k = pairing.cells, pairing.k
    slots = {FaceSlot(j, p) for j in range(len(cells)) for p in range(k + 1)}
    covered = set(pairing.matched) | set(pairing.unmatched)
    if covered != slots:
        out.append("slots not partitioned into matched and unmatched")
    if set(pairing.matched) & set(pairing.unmatched):
        out.append("a slot is both matched and unmatched")
    for x, y in pairing.matched.items():
        if x == y:
            out.append(f"fixed point at {x}")
            continue
        if pairing.matched.get(y) != x:
            out.append(f"not an involution at {x}")
        tau = pairing.perm.get((x, y))
        back = pairing.perm.get((y, x))
        if tau is None or back is None:
            out.append(f"missing permutation for {x}, {y}")
            continue
        if back != tau.inverse():
            out.append(f"permutation not inverse-symmetric at {x}, {y}")
        fx = face_tuple(cells[x.j], x.p)
        fy = face_tuple(cells[y.j], y.p)
        if tuple(fx[tau(i)] for i in range(k)) != fy:
            out.append(f"permutation does not align faces at {x}, {y}")
        if tau.sign != -((-1) ** (x.p + y.p)):
            out.append(f"sign condition fails at {x}, {y}")
        # independent check: induced orientations of the shared face are opposite
        if slot_sign(cells[x.j], x.p) != -slot_sign(cells[y.j], y.p):
            out.append(f"identification preserves orientation at {x}, {y}")
    # bijectivity of either projection of the pair set
    firsts = [x for x in pairing.matched]
    seconds = [pairing.matched[x] for x in firsts]
    if len(set(seconds)) != len(seconds) or set(seconds) != set(firsts):
        out.append("pair set does not project bijectively")
    return out


class _UnionFind:
    def __init__(self):
        self.parent: dict = {}

    def add(self, a):
        self.parent.setdefault(a, a)

    def find(self, a):
        self.add(a)
        root = a
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[a] != root:
            self.parent[a], a = root, self.parent[a]
        return root

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            if repr(rb) < repr(ra):
                ra, rb = rb, ra
            self.parent[rb] = ra

    def classes(self) -> dict:
        out: dict = {}
        for a in self.parent:
            out.setdefault(self.find(a), []).append(a)
        return out


@dataclass
class GluedComplex:
    """Quotient of disjoint k-simplices by a face pairing."""

    k: int
    cells: tuple
    signs: tuple
    pairing: FacePairing
    vertex_ids: tuple
    labels: dict
    face_classes: dict
    boundary_slots: tuple = ()
    face_incidence: dict = field(default_factory=dict)

    @property
    def closed(self) -> bool:
        return not self.boundary_slots

    @property
    def f_vector(self) -> list:
        counts = [0] * (self.k + 1)
        for size in (len(next(iter(c))[1]) for c in self.face_classes.values()):
            counts[size - 1] += 1
        return counts

    @property
    def euler_characteristic(self) -> int:
        return sum((-1) ** d * n for d, n in enumerate(self.f_vector))

    @property
    def orientation_compatible(self) -> bool:
        for x, y in self.pairing.pairs():
            ex, ey = self.signs[x.j], self.signs[y.j]
            if ex * slot_sign(self.cells[x.j], x.p) != -ey * slot_sign(self.cells[y.j], y.p):
                return False
        return True

    @property
    def codim2_skeleton(self) -> list:
        """Identified codimension-two faces, as sorted label tuples (one per class)."""
        if self.k < 2:
            return []
        out = []
        for members in self.face_classes.values():
            j, pos = min(members, key=lambda m: (m[0], sorted(m[1])))
            if len(pos) == self.k - 1:
                out.append(tuple(sorted((self.cells[j][i] for i in pos), key=vertex_key)))
        return sorted(out, key=simplex_key)

    @property
    def is_pseudomanifold(self) -> bool:
        """Every codimension-one face class lies in exactly two slots (at most two when open)."""
        limit = {2} if self.closed else {1, 2}
        return all(n in limit for n in self.face_incidence.values())

    def orientable(self):
        """Cell signs making every identification orientation reversing, or None."""
        n = len(self.cells)
        signs: list = [0] * n
        adj: dict = {j: [] for j in range(n)}
        for x, y in self.pairing.pairs():
            rel = -slot_sign(self.cells[x.j], x.p) * slot_sign(self.cells[y.j], y.p)
            adj[x.j].append((y.j, rel))
            adj[y.j].append((x.j, rel))
        for start in range(n):
            if signs[start]:
                continue
            signs[start] = 1
            todo = [start]
            while todo:
                a = todo.pop()
                for b, rel in adj[a]:
                    want = signs[a] * rel
                    if signs[b] == 0:
                        signs[b] = want
                        todo.append(b)
                    elif signs[b] != want:
                        return None
        return tuple(signs)

    def summary(self) -> dict:
        return {
            "dimension": self.k,
            "cells": len(self.cells),
            "f_vector": self.f_vector,
            "euler_characteristic": self.euler_characteristic,
            "closed": self.closed,
            "orientation_compatible": self.orientation_compatible,
            "pseudomanifold": self.is_pseudomanifold,
            "codim2_faces": len(self.codim2_skeleton),
            "boundary_slots": [[x.j, x.p] for x in self.boundary_slots],
        }


def glue(s: Chain | Sequence, pairing: FacePairing | None = None, allow_open: bool = False) -> GluedComplex:
    """Identify the matched faces of the cells of ``s``."""
    if pairing is None:
        pairing = extract_face_pairing(s, "open" if allow_open else "strict")
    cells = tuple(expand_chain(s)) if isinstance(s, Chain) else tuple(tuple(c) for c in s)
    if cells != pairing.cells:
        raise GluingError("pairing was built for a different chain")
    bad = pairing_violations(pairing) if cells else []
    if bad:
        raise GluingError("invalid pairing: " + "; ".join(bad[:5]))
    if pairing.unmatched and not allow_open:
        raise NotACycle("pairing leaves unmatched slots", project_to_oriented(boundary(_cells_chain(cells))))
    k = pairing.k
    uf = _UnionFind()
    for j in range(len(cells)):
        for r in range(1, k + 2):
            for pos in combinations(range(k + 1), r):
                uf.add((j, frozenset(pos)))
    for x, y in pairing.pairs():
        tau = pairing.perm[(x, y)]
        inc_x = face_inclusion(k, x.p)
        inc_y = face_inclusion(k, y.p)
        for r in range(1, k + 1):
            for sub in combinations(range(k), r):
                a = (y.j, frozenset(inc_y[i] for i in sub))
                b = (x.j, frozenset(inc_x[tau(i)] for i in sub))
                uf.union(a, b)
    classes = uf.classes()
    for root, members in classes.items():
        lab = {tuple(sorted((cells[j][i] for i in pos), key=vertex_key)) for j, pos in members}
        if len(lab) != 1:
            raise GluingError(f"identified faces carry different labels: {sorted(lab, key=simplex_key)}")
    order = sorted(
        (root for root, members in classes.items() if len(members[0][1]) == 1),
        key=lambda r: min((j, min(pos)) for j, pos in classes[r]),
    )
    vid = {root: n for n, root in enumerate(order)}
    labels: dict = {}
    vertex_ids = tuple(tuple(vid[uf.find((j, frozenset([i])))] for i in range(k + 1)) for j in range(len(cells)))
    for j, cell in enumerate(cells):
        for i, lab in enumerate(cell):
            labels[vertex_ids[j][i]] = lab
    incidence: dict = {}
    for j in range(len(cells)):
        for p in range(k + 1):
            root = uf.find((j, frozenset(range(k + 1)) - {p}))
            incidence[root] = incidence.get(root, 0) + 1
    return GluedComplex(
        k=k,
        cells=cells,
        signs=tuple([1] * len(cells)),
        pairing=pairing,
        vertex_ids=vertex_ids,
        labels=labels,
        face_classes={r: [(j, tuple(sorted(pos))) for j, pos in m] for r, m in classes.items()},
        boundary_slots=tuple(pairing.unmatched),
        face_incidence=incidence,
    )


def fundamental_cycle(G: GluedComplex) -> Chain:
    """Signed sum of the cell maps."""
    if not G.closed:
        raise GluingError("glued complex has boundary")
    if not G.orientation_compatible:
        raise GluingError("glued complex is not orientation compatible")
    out: dict = {}
    for cell, e in zip(G.cells, G.signs):
        out[cell] = out.get(cell, 0) + e
    return Chain(out)


def check_phi_psi_identity(s: Chain, K: SimplicialComplex) -> bool:
    """Glue ``s``, take the fundamental cycle, and test that it is homologous to ``s`` in ``K``."""
    if not project_to_oriented(s):
        return True
    for f in s:
        if sort_with_sign(f)[0] is not None and f not in K:
            raise GluingError(f"simplex {f} is not in the complex")
    G = glue(s)
    diff = fundamental_cycle(G) - s
    return is_oriented_boundary(diff, K)


# --------------------------------------------------------------------------
# cobordisms


@dataclass
class CobordismData:
    """Partition of the face slots of the (k+1)-cells of a chain bounding ``s1 - s0``.

    ``boundary[i][j] = (slot, tau)`` attaches cell j of ``s_i`` to a slot with
    ``cell_i[j] = face(slot)∘tau``.  ``direct`` lists pairs of boundary cells that
    cancel each other without an intervening slot, as ``((i, j), (i2, j2), tau)``
    with ``cell_{i2}[j2] = cell_i[j]∘tau``.
    """

    k: int
    cells: tuple
    cells0: tuple
    cells1: tuple
    interior: FacePairing
    boundary: tuple = ({}, {})
    direct: tuple = ()

    def slots(self, i: int) -> set:
        return {slot for slot, _ in self.boundary[i].values()}

    def partition_sizes(self) -> dict:
        return {
            "interior_pairs": len(self.interior.pairs()),
            "boundary_0": len(self.boundary[0]),
            "boundary_1": len(self.boundary[1]),
            "direct_pairs": len(self.direct),
        }


def _demand_groups(cells: Sequence, i: int) -> dict:
    groups: dict = {}
    for j, f in enumerate(cells):
        srt, s = sort_with_sign(f)
        want = s if i == 1 else -s
        groups.setdefault(srt, ([], []))[0 if want > 0 else 1].append((i, j))
    return groups


def extract_cobordism(st: Chain, s0: Chain, s1: Chain) -> CobordismData:
    residue = project_to_oriented(boundary(st)) if st else Chain()
    target = project_to_oriented(s1) - project_to_oriented(s0) if (s1 or s0) else Chain()
    if residue.grade is not None and target.grade is not None and residue.grade != target.grade:
        raise BoundaryMismatch("chain grades do not fit together", residue)
    diff = Chain(list(residue.items()) + [(f, -a) for f, a in target.items()])
    if diff:
        raise BoundaryMismatch("boundary of the cobordism chain is not s1 - s0", diff)
    cells = tuple(expand_chain(st))
    cells0 = tuple(expand_chain(s0))
    cells1 = tuple(expand_chain(s1))
    side = (cells0, cells1)
    lengths = {len(c) for c in cells0 + cells1} | {len(c) - 1 for c in cells}
    if len(lengths) > 1:
        raise GluingError("cells of mixed dimension")
    k = lengths.pop() - 1 if lengths else -1
    interior = FacePairing(k=k + 1, cells=cells)
    bnd: tuple = ({}, {})
    direct = []
    slot_groups = _slot_groups(cells)
    demand: dict = {}
    for i in (0, 1):
        for key, (pl, mi) in _demand_groups(side[i], i).items():
            d = demand.setdefault(key, ([], []))
            d[0].extend(pl)
            d[1].extend(mi)
    leftover_slots = []
    for key in sorted(set(slot_groups) | set(demand), key=simplex_key):
        sp, sm = (sorted(v) for v in slot_groups.get(key, ([], [])))
        dp, dm = (sorted(v) for v in demand.get(key, ([], [])))
        for slots, dems in ((sp, dp), (sm, dm)):
            n = min(len(slots), len(dems))
            for slot, (i, j) in zip(slots[:n], dems[:n]):
                F = face_tuple(cells[slot.j], slot.p)
                bnd[i][j] = (slot, aligning_perm(F, side[i][j]))
            del slots[:n]
            del dems[:n]
        if len(sp) != len(sm) or len(dp) != len(dm):
            raise BoundaryMismatch(f"unbalanced face group {key}", diff)
        for x, y in zip(sp, sm):
            _pair(interior, x, y)
        for a, b in zip(dp, dm):
            tau = aligning_perm(side[a[0]][a[1]], side[b[0]][b[1]])
            direct.append((a, b, tau))
        leftover_slots += sp + sm
    interior.unmatched = tuple(sorted(s for s in (
        FaceSlot(j, p) for j in range(len(cells)) for p in range(k + 2)
    ) if s not in interior.matched))
    return CobordismData(k=k, cells=cells, cells0=cells0, cells1=cells1, interior=interior, boundary=bnd, direct=tuple(direct))


def cobordism_violations(data: CobordismData) -> list:
    out = []
    cells = data.cells
    all_slots = {FaceSlot(j, p) for j in range(len(cells)) for p in range(data.k + 2)}
    used = set(data.interior.matched)
    for i in (0, 1):
        si = data.slots(i)
        if len(si) != len(data.boundary[i]):
            out.append(f"boundary map {i} is not injective")
        if used & si:
            out.append(f"boundary slots {i} overlap other slots")
        used |= si
    if used != all_slots:
        out.append("slots are not partitioned")
    side = (data.cells0, data.cells1)
    direct_cells = {a for a, _, _ in data.direct} | {b for _, b, _ in data.direct}
    for i in (0, 1):
        if set(data.boundary[i]) | {j for (ii, j) in direct_cells if ii == i} != set(range(len(side[i]))):
            out.append(f"cells of s_{i} are not all attached")
        for j, (slot, tau) in data.boundary[i].items():
            F = face_tuple(cells[slot.j], slot.p)
            if tuple(F[tau(x)] for x in range(len(F))) != side[i][j]:
                out.append(f"attachment of s_{i} cell {j} is misaligned")
            if tau.sign != -((-1) ** (i + slot.p)):
                out.append(f"attachment sign fails for s_{i} cell {j}")
    for (i, j), (i2, j2), tau in data.direct:
        f, g = side[i][j], side[i2][j2]
        if tuple(f[tau(x)] for x in range(len(f))) != g:
            out.append("direct pair misaligned")
        # the two cells must cancel in s1 - s0
        s_f = (1 if i == 1 else -1) * sort_with_sign(f)[1]
        s_g = (1 if i2 == 1 else -1) * sort_with_sign(g)[1]
        if s_f != -s_g:
            out.append("direct pair does not cancel")
    if data.cells:
        out += [v for v in pairing_violations(data.interior) if "partitioned" not in v]
    return out


@dataclass
class CollaredCobordism:
    """(k+1)-dimensional simplicial complex: the cobordism cells plus collars over both ends."""

    k: int
    simplices: tuple
    signs: tuple
    labels: dict
    sources: tuple
    top: tuple = ()
    bottom: tuple = ()

    def chain(self) -> Chain:
        out: dict = {}
        for s, e in zip(self.simplices, self.signs):
            out[s] = out.get(s, 0) + e
        return Chain(out)

    def boundary_chain(self) -> Chain:
        """Oriented boundary in glued vertex ids."""
        return project_to_oriented(boundary(self.chain())) if self.simplices else Chain()

    def labelled(self, c: Chain) -> Chain:
        return project_to_oriented(Chain([(tuple(self.labels[v] for v in f), a) for f, a in c.items()]))

    def boundary_label_chain(self) -> Chain:
        return self.labelled(self.boundary_chain())

    def ends_chain(self) -> Chain:
        """``top - bottom`` in glued ids: the boundary expected from the two free collar ends."""
        out: dict = {}
        for f in self.top:
            srt, s = sort_with_sign(f)
            out[srt] = out.get(srt, 0) + s
        for f in self.bottom:
            srt, s = sort_with_sign(f)
            out[srt] = out.get(srt, 0) - s
        return Chain(out)

    @property
    def ends_only(self) -> bool:
        """True when the whole boundary is carried by the free collar ends."""
        return self.boundary_chain() == self.ends_chain()

    def face_incidence(self) -> dict:
        inc: dict = {}
        for s in self.simplices:
            for p in range(len(s)):
                face = tuple(sorted(face_tuple(s, p)))
                inc[face] = inc.get(face, 0) + 1
        return inc

    @property
    def is_pseudomanifold(self) -> bool:
        return all(n in (1, 2) for n in self.face_incidence().values())

    @property
    def orientation_compatible(self) -> bool:
        """Every face shared by two simplices cancels in the boundary."""
        bnd = set(self.boundary_chain())
        return not any(f in bnd for f, n in self.face_incidence().items() if n == 2)

    @property
    def f_vector(self) -> list:
        cx = SimplicialComplex(self.simplices) if self.simplices else None
        return cx.f_vector() if cx else []

    @property
    def euler_characteristic(self) -> int:
        return sum((-1) ** d * n for d, n in enumerate(self.f_vector))

    def summary(self) -> dict:
        return {
            "dimension": self.k + 1,
            "simplices": len(self.simplices),
            "collar_simplices": sum(1 for s in self.sources if s[0] == "collar"),
            "f_vector": self.f_vector,
            "euler_characteristic": self.euler_characteristic,
            "pseudomanifold": self.is_pseudomanifold,
            "orientation_compatible": self.orientation_compatible,
            "ends_only": self.ends_only,
        }


def build_cobordism(data: CobordismData, M0: GluedComplex | None, M1: GluedComplex | None) -> CollaredCobordism:
    """Glue the cobordism cells and attach a prism collar over every cell of ``M0`` and ``M1``.

    Collars over ``M1`` attach along their bottom and leave their top free;
    collars over ``M0`` attach along their top and leave their bottom free.  Each
    prism is cut into k+1 simplices by the staircase rule, using one global order
    of the glued vertices so that neighbouring prisms agree on their shared sides.
    """
    k = data.k
    ends = (M0, M1)
    side = (data.cells0, data.cells1)
    for i in (0, 1):
        cells_i = ends[i].cells if ends[i] is not None else ()
        if tuple(cells_i) != tuple(side[i]):
            raise InconsistentAttachment(f"glued end {i} does not match the cells of s_{i}")
    if not data.cells and not data.cells0 and not data.cells1:
        return CollaredCobordism(k=k, simplices=(), signs=(), labels={}, sources=())
    attach_level = (1, 0)
    uf = _UnionFind()
    label: dict = {}
    for j, cell in enumerate(data.cells):
        for a, v in enumerate(cell):
            uf.add(("s", j, a))
            label[("s", j, a)] = v
    for i in (0, 1):
        for j, cell in enumerate(side[i]):
            for lvl in (0, 1):
                for a, v in enumerate(cell):
                    uf.add(("c", i, lvl, j, a))
                    label[("c", i, lvl, j, a)] = v
    # interior identifications of the cobordism cells
    for x, y in data.interior.pairs():
        tau = data.interior.perm[(x, y)]
        ix, iy = face_inclusion(k + 1, x.p), face_inclusion(k + 1, y.p)
        for a in range(k + 1):
            uf.union(("s", y.j, iy[a]), ("s", x.j, ix[tau(a)]))
    # the ends' own identifications, on both collar levels
    for i in (0, 1):
        M = ends[i]
        if M is None or not M.cells:
            continue
        for x, y in M.pairing.pairs():
            tau = M.pairing.perm[(x, y)]
            ix, iy = face_inclusion(k, x.p), face_inclusion(k, y.p)
            for lvl in (0, 1):
                for a in range(k):
                    uf.union(("c", i, lvl, y.j, iy[a]), ("c", i, lvl, x.j, ix[tau(a)]))
    # collar attachments
    for i in (0, 1):
        for j, (slot, tau) in data.boundary[i].items():
            inc = face_inclusion(k + 1, slot.p)
            for a in range(k + 1):
                uf.union(("c", i, attach_level[i], j, a), ("s", slot.j, inc[tau(a)]))
    for (i, j), (i2, j2), tau in data.direct:
        for a in range(k + 1):
            uf.union(("c", i2, attach_level[i2], j2, a), ("c", i, attach_level[i], j, tau(a)))
    classes = uf.classes()
    for root, members in classes.items():
        labs = {label[m] for m in members}
        if len(labs) != 1:
            raise InconsistentAttachment(f"glued vertex carries labels {sorted(labs, key=vertex_key)}")
    order = sorted(classes, key=lambda r: min(repr(m) for m in classes[r]))
    vid = {r: n for n, r in enumerate(order)}
    labels = {vid[r]: label[classes[r][0]] for r in classes}

    def v(key):
        return vid[uf.find(key)]

    simplices, signs, sources = [], [], []
    for j, cell in enumerate(data.cells):
        simplices.append(tuple(v(("s", j, a)) for a in range(k + 2)))
        signs.append(1)
        sources.append(("cell", j))
    top, bottom = [], []
    for i in (0, 1):
        for j, cell in enumerate(side[i]):
            lo = [v(("c", i, 0, j, a)) for a in range(k + 1)]
            hi = [v(("c", i, 1, j, a)) for a in range(k + 1)]
            if len(set(lo)) != k + 1 or len(set(hi)) != k + 1 or set(lo) & set(hi):
                raise InconsistentAttachment(f"collar over s_{i} cell {j} collapses")
            perm = sorted(range(k + 1), key=lambda a: (lo[a], hi[a]))
            _, eps = sort_with_sign(tuple(perm))
            for l in range(k + 1):
                simplices.append(tuple(lo[perm[a]] for a in range(l + 1)) + tuple(hi[perm[a]] for a in range(l, k + 1)))
                signs.append(eps * (-1) ** l)
                sources.append(("collar", i, j, l))
            if i == 1:
                top.append(tuple(hi))
            else:
                bottom.append(tuple(lo))
    return CollaredCobordism(
        k=k,
        simplices=tuple(simplices),
        signs=tuple(signs),
        labels=labels,
        sources=tuple(sources),
        top=tuple(top),
        bottom=tuple(bottom),
    )


def cobordism_boundary_matches(C: CollaredCobordism, s0: Chain, s1: Chain) -> bool:
    """The labelled oriented boundary of ``C`` equals ``s1 - s0`` in the oriented model."""
    want = project_to_oriented(s1) - project_to_oriented(s0) if (s0 or s1) else Chain()
    got = C.boundary_label_chain()
    return Chain(list(got.items()) + [(f, -a) for f, a in want.items()]) == Chain()


# --------------------------------------------------------------------------
# OFF export


def _chart(labels: Sequence) -> dict:
    """Place labels on the moment curve so any set of four is affinely independent."""
    ordered = sorted(set(labels), key=vertex_key)
    n = max(len(ordered) - 1, 1)
    out = {}
    for r, lab in enumerate(ordered):
        t = 2.0 * r / n - 1.0
        out[lab] = (t, t * t, t * t * t)
    return out


def off_mesh(G: GluedComplex, subdivide: int = 1, smoothing=None):
    """Vertices and oriented triangles of a 2-dimensional glued complex.

    With ``subdivide = n > 1`` every cell is cut into n^2 triangles and the
    interior grid points are pushed through ``smoothing`` (a callable on
    barycentric points of Δ^2) before being mapped through the chart.
    """
    if G.k != 2:
        raise GluingError("OFF export needs a 2-dimensional glued complex")
    chart = _chart(G.labels.values())
    n = max(int(subdivide), 1)
    acc: dict = {}
    faces = []

    def point(j, w):
        ids = G.vertex_ids[j]
        bary = [wi / n for wi in w]
        if smoothing is not None and n > 1:
            bary = [float(t) for t in smoothing(bary)]
        xyz = [0.0, 0.0, 0.0]
        for t, vid in zip(bary, ids):
            c = chart[G.labels[vid]]
            for d in range(3):
                xyz[d] += t * c[d]
        key = frozenset((ids[a], w[a]) for a in range(3) if w[a])
        tot = acc.setdefault(key, [0.0, 0.0, 0.0, 0])
        for d in range(3):
            tot[d] += xyz[d]
        tot[3] += 1
        return key

    for j in range(len(G.cells)):
        grid = {}
        for a in range(n + 1):
            for b in range(n + 1 - a):
                grid[(a, b)] = point(j, (n - a - b, a, b))
        tris = []
        for a in range(n):
            for b in range(n - a):
                tris.append((grid[(a, b)], grid[(a + 1, b)], grid[(a, b + 1)]))
                if a + b < n - 1:
                    tris.append((grid[(a + 1, b)], grid[(a + 1, b + 1)], grid[(a, b + 1)]))
        for t in tris:
            faces.append(t if G.signs[j] > 0 else (t[0], t[2], t[1]))
    keys = sorted(acc, key=lambda s: sorted(s))
    index = {key: i for i, key in enumerate(keys)}
    verts = [tuple(acc[key][d] / acc[key][3] for d in range(3)) for key in keys]
    return verts, [tuple(index[x] for x in t) for t in faces]


def format_off(verts, faces) -> str:
    lines = ["OFF", f"{len(verts)} {len(faces)} 0"]
    lines += [" ".join("%.17g" % c for c in v) for v in verts]
    lines += ["3 " + " ".join(str(i) for i in f) for f in faces]
    return "\n".join(lines) + "\n"
