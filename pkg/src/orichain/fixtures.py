"""Standard small complexes, cycles, cobordisms and covers used by the tests and the CLI."""
from __future__ import annotations

from itertools import combinations

from .chains import Chain, SimplicialComplex, boundary, project_to_oriented


def tetrahedron_boundary() -> list:
    return [list(t) for t in combinations(range(4), 3)]


def tetrahedron_boundary_cycle() -> Chain:
    return boundary(Chain.simplex((0, 1, 2, 3)))


def torus7() -> list:
    """Möbius' 7-vertex torus."""
    tris = [(i, (i + 1) % 7, (i + 3) % 7) for i in range(7)]
    tris += [(i, (i + 2) % 7, (i + 3) % 7) for i in range(7)]
    return [sorted(t) for t in tris]


def torus7_cycle() -> Chain:
    terms = {(i, (i + 1) % 7, (i + 3) % 7): 1 for i in range(7)}
    terms.update({(i, (i + 3) % 7, (i + 2) % 7): 1 for i in range(7)})
    return project_to_oriented(Chain(terms))


def projective_plane6() -> list:
    return [
        [0, 1, 2], [0, 2, 3], [0, 3, 4], [0, 4, 5], [0, 1, 5],
        [1, 2, 4], [2, 3, 5], [1, 3, 4], [2, 4, 5], [1, 3, 5],
    ]


def klein_bottle(n: int = 3) -> list:
    """n x n grid on the square with the top edge glued to the bottom edge reversed."""

    def v(i, j):
        if j == n:
            i, j = -i, 0
        return (i % n) * n + j % n

    tris = []
    for i in range(n):
        for j in range(n):
            a, b, c, d = v(i, j), v(i + 1, j), v(i, j + 1), v(i + 1, j + 1)
            tris += [sorted((a, b, d)), sorted((a, d, c))]
    return tris


def triangle_boundary_cycle() -> Chain:
    return Chain({(0, 1): 1, (1, 2): 1, (2, 0): 1})


# octahedron: +x=0, -x=1, +y=2, -y=3, +z=4, -z=5
def octahedron() -> list:
    return [[x, y, z] for x in (0, 1) for y in (2, 3) for z in (4, 5)]


def octahedron_cycle() -> Chain:
    terms = {}
    for x in (0, 1):
        for y in (2, 3):
            for z in (4, 5):
                outward = (1 if x == 0 else -1) * (1 if y == 2 else -1) * (1 if z == 4 else -1)
                terms[(x, y, z)] = outward
    return Chain(terms)


def hexagon() -> list:
    return [[i, (i + 1) % 6] for i in range(6)]


def hexagon_cover() -> list:
    return [[[0, 1], [1, 2], [2, 3]], [[3, 4], [4, 5], [0, 5]]]


def octahedron_cover() -> list:
    """Closed star of +z, and the four lower triangles split into two strips."""
    star = [t for t in octahedron() if 4 in t]
    return [star, [[0, 2, 5], [1, 2, 5]], [[1, 3, 5], [0, 3, 5]]]


def prism_chain(c: Chain, shift: int) -> Chain:
    """Staircase triangulation of I x c with the top copy's labels shifted by ``shift``."""
    out: dict = {}
    for f, a in project_to_oriented(c).items():
        for l in range(len(f)):
            t = tuple(f[: l + 1]) + tuple(v + shift for v in f[l:])
            out[t] = out.get(t, 0) + a * (-1) ** l
    return Chain(out)


def shift_chain(c: Chain, shift: int) -> Chain:
    return Chain({tuple(v + shift for v in f): a for f, a in c.items()})


def cylinder_cobordism():
    s0 = triangle_boundary_cycle()
    return prism_chain(s0, 3), s0, shift_chain(s0, 3)


def torus_cobordism():
    s0 = torus7_cycle()
    return prism_chain(s0, 7), s0, shift_chain(s0, 7)


def triangle_cobordism():
    return Chain({(0, 1, 2): 1}), Chain({(0, 2): 1}), Chain({(0, 1): 1, (1, 2): 1})


def support(*chains: Chain) -> SimplicialComplex:
    return SimplicialComplex([f for c in chains for f in project_to_oriented(c)])


COMPLEXES = {
    "sphere": (tetrahedron_boundary, [(1, ()), (0, ()), (1, ())]),
    "torus": (torus7, [(1, ()), (2, ()), (1, ())]),
    "projective_plane": (projective_plane6, [(1, ()), (0, (2,)), (0, ())]),
    "klein_bottle": (klein_bottle, [(1, ()), (1, (2,)), (0, ())]),
}

CYCLES = {
    "triangle_boundary": (triangle_boundary_cycle, 0),
    "tetrahedron_boundary": (tetrahedron_boundary_cycle, 2),
    "octahedron": (octahedron_cycle, 2),
    "torus": (torus7_cycle, 0),
}

COBORDISMS = {
    "cylinder": cylinder_cobordism,
    "torus_cylinder": torus_cobordism,
    "triangle": triangle_cobordism,
}

COVERS = {
    "hexagon_two_arcs": (hexagon, hexagon_cover),
    "octahedron_three_pieces": (octahedron, octahedron_cover),
}


def _hom(groups) -> list:
    return [{"free_rank": r, "torsion": list(t)} for r, t in groups]


def bundled_problems() -> dict:
    """Problem-file objects shipped in ``orichain/data/fixtures``, keyed by file stem."""
    from .gluing import extract_cobordism
    from .io import VERSION, chain_to_json

    out = {}
    for name, (make, groups) in COMPLEXES.items():
        out[f"complex_{name}"] = {
            "version": VERSION,
            "kind": "complex",
            "name": name,
            "complex": {"simplices": make()},
            "expected": {"homology": _hom(groups)},
        }
    out["complex_disk_rel_boundary"] = {
        "version": VERSION,
        "kind": "complex",
        "name": "disk relative to its boundary",
        "complex": {"simplices": [[0, 1, 2]], "subcomplex": [[0, 1], [1, 2], [0, 2]]},
        "expected": {"homology": _hom([(0, ()), (0, ()), (1, ())])},
    }
    for name, (make, chi) in CYCLES.items():
        c = make()
        out[f"cycle_{name}"] = {
            "version": VERSION,
            "kind": "cycle",
            "name": name,
            "chain": chain_to_json(c),
            "expected": {"euler_characteristic": chi, "orientation_compatible": True, "identity": True},
        }
    for name, make in COBORDISMS.items():
        st, s0, s1 = make()
        data = extract_cobordism(st, s0, s1)
        out[f"cobordism_{name}"] = {
            "version": VERSION,
            "kind": "cobordism",
            "name": name,
            "chain": chain_to_json(st),
            "s0": chain_to_json(s0),
            "s1": chain_to_json(s1),
            "expected": {"boundary_matches": True, "partition": data.partition_sizes()},
        }
    for name, (make, cover) in COVERS.items():
        out[f"cover_{name}"] = {
            "version": VERSION,
            "kind": "cover",
            "name": name,
            "complex": {"simplices": make()},
            "cover": cover(),
            "expected": {"hypothesis_holds": True, "conclusion_holds": True},
        }
    return out


def write_bundled(directory) -> list:
    from pathlib import Path

    from .io import canonical_dumps

    d = Path(directory)
    d.mkdir(parents=True, exist_ok=True)
    written = []
    for stem, obj in sorted(bundled_problems().items()):
        path = d / f"{stem}.json"
        path.write_text(canonical_dumps(obj), encoding="utf-8")
        written.append(path)
    return written
