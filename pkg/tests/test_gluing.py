from __future__ import annotations

import random

import pytest

from orichain.chains import Chain, SimplicialComplex, boundary, project_to_oriented
from orichain.fixtures import (
    CYCLES,
    COBORDISMS,
    octahedron,
    octahedron_cycle,
    support,
    tetrahedron_boundary,
    triangle_boundary_cycle,
)
from orichain.gluing import (
    BoundaryMismatch,
    FaceSlot,
    GluingError,
    InconsistentAttachment,
    NotACycle,
    build_cobordism,
    check_phi_psi_identity,
    cobordism_boundary_matches,
    cobordism_violations,
    expand_chain,
    extract_cobordism,
    extract_face_pairing,
    format_off,
    fundamental_cycle,
    glue,
    off_mesh,
    pairing_violations,
)
from orichain.simplex import Perm


def glued_end(cells):
    if not cells:
        return None
    return glue(cells, extract_face_pairing(cells, "open"), allow_open=True)


def cobordism(st, s0, s1):
    data = extract_cobordism(st, s0, s1)
    return data, build_cobordism(data, glued_end(data.cells0), glued_end(data.cells1))


def test_expand_chain():
    c = Chain({(0, 1, 2): -2, (1, 2, 3): 1, (0, 0, 1): 4})
    assert expand_chain(c) == [(1, 0, 2), (1, 0, 2), (1, 2, 3)]
    with pytest.raises(GluingError):
        expand_chain(Chain({(0,): -1}))


def test_triangle_boundary_pairing():
    P = extract_face_pairing(triangle_boundary_cycle())
    assert P.closed and pairing_violations(P) == []
    # cells (0,1), (1,2), (2,0): the head of each edge meets the tail of the next
    assert P.matched[FaceSlot(0, 0)] == FaceSlot(1, 1)
    assert P.perm[(FaceSlot(0, 0), FaceSlot(1, 1))] == Perm.identity(0)


@pytest.mark.parametrize("name", sorted(CYCLES))
def test_corpus_cycles(name):
    make, chi = CYCLES[name]
    s = make()
    P = extract_face_pairing(s)
    assert P.closed and pairing_violations(P) == []
    G = glue(s, P)
    assert G.closed and G.is_pseudomanifold and G.orientation_compatible
    assert G.euler_characteristic == chi
    assert set(G.face_incidence.values()) == {2}
    assert project_to_oriented(fundamental_cycle(G)) == project_to_oriented(s)
    assert check_phi_psi_identity(s, support(s))
    assert G.orientable() is not None


def test_glue_counts():
    assert glue(octahedron_cycle()).f_vector == [6, 12, 8]
    assert glue(CYCLES["torus"][0]()).f_vector == [7, 21, 14]
    G = glue(CYCLES["tetrahedron_boundary"][0]())
    assert G.f_vector == [4, 6, 4]
    assert len(G.codim2_skeleton) == 4


def test_ordered_boundary_vs_oriented():
    cells = expand_chain(octahedron_cycle())
    ordered = Chain([(c, 1) for c in cells])
    assert boundary(ordered) != Chain()
    assert project_to_oriented(boundary(ordered)) == Chain()


def random_shelling(rng):
    cells = expand_chain(boundary(Chain.simplex(tuple(range(5)))))
    evens = [p for p in Perm.all(3) if p.sign == 1]
    out = []
    for c in cells:
        tau = rng.choice(evens)
        out.append(tuple(c[tau(i)] for i in range(4)))
    rng.shuffle(out)
    names = rng.sample(range(100), 5)
    return [tuple(names[v] for v in c) for c in out]


def test_randomized_shellings_of_three_sphere():
    rng = random.Random(12)
    for _ in range(50):
        cells = random_shelling(rng)
        P = extract_face_pairing(cells)
        assert pairing_violations(P) == []
        G = glue(cells, P)
        assert G.closed and G.orientation_compatible
        assert G.f_vector == [5, 10, 10, 5]
        assert G.euler_characteristic == 0


def test_not_a_cycle():
    with pytest.raises(NotACycle) as exc:
        extract_face_pairing(Chain.simplex((0, 1, 2)))
    assert exc.value.residue == boundary(Chain.simplex((0, 1, 2)))
    P = extract_face_pairing(Chain.simplex((0, 1, 2)), "open")
    assert len(P.unmatched) == 3 and pairing_violations(P) == []
    G = glue(Chain.simplex((0, 1, 2)), P, allow_open=True)
    assert not G.closed and G.is_pseudomanifold
    with pytest.raises(GluingError):
        fundamental_cycle(G)
    with pytest.raises(ValueError):
        extract_face_pairing(triangle_boundary_cycle(), "loose")


def test_pairing_for_other_chain_rejected():
    P = extract_face_pairing(triangle_boundary_cycle())
    with pytest.raises(GluingError):
        glue(octahedron_cycle(), P)


def test_empty_and_mixed_chains():
    assert glue(Chain()).cells == ()
    with pytest.raises(GluingError):
        extract_face_pairing([(0, 1), (0, 1, 2)])
    assert check_phi_psi_identity(Chain(), SimplicialComplex([(0,)]))


def test_tampered_pairing_detected():
    P = extract_face_pairing(triangle_boundary_cycle())
    x, y = P.pairs()[0]
    P.perm[(x, y)] = Perm.identity(0)
    P.matched[x] = x
    assert pairing_violations(P)


def test_orientable_signs():
    # a valid pairing always reverses induced orientations, so all-plus signs work
    G = glue(octahedron_cycle())
    assert G.orientable() == (1,) * 8
    G = glue(random_shelling(random.Random(1)))
    assert G.orientable() == (1,) * 5


def test_identity_check_needs_complex():
    s = triangle_boundary_cycle()
    with pytest.raises(GluingError):
        check_phi_psi_identity(s, SimplicialComplex([(0, 1)]))
    assert check_phi_psi_identity(project_to_oriented(s), SimplicialComplex([(0, 1), (1, 2), (0, 2)]))


@pytest.mark.parametrize("name", sorted(COBORDISMS))
def test_corpus_cobordisms(name):
    st, s0, s1 = COBORDISMS[name]()
    data, C = cobordism(st, s0, s1)
    assert cobordism_violations(data) == []
    assert cobordism_boundary_matches(C, s0, s1)
    assert C.orientation_compatible


def test_cobordism_partitions():
    data, C = cobordism(*COBORDISMS["cylinder"]())
    assert data.partition_sizes() == {"interior_pairs": 6, "boundary_0": 3, "boundary_1": 3, "direct_pairs": 0}
    assert len(C.simplices) == 18 and C.ends_only
    data, C = cobordism(*COBORDISMS["torus_cylinder"]())
    assert data.partition_sizes() == {"interior_pairs": 70, "boundary_0": 14, "boundary_1": 14, "direct_pairs": 0}
    assert len(C.simplices) == 126
    data, C = cobordism(*COBORDISMS["triangle"]())
    assert data.partition_sizes()["boundary_0"] == 1 and data.partition_sizes()["boundary_1"] == 2
    assert not C.ends_only


def test_direct_pairs():
    s = triangle_boundary_cycle()
    data, C = cobordism(Chain(), s, s)
    assert data.partition_sizes()["direct_pairs"] == 3
    assert cobordism_violations(data) == []
    assert cobordism_boundary_matches(C, s, s)


def test_cobordism_mismatch():
    s = triangle_boundary_cycle()
    shifted = Chain({tuple(v + 3 for v in f): a for f, a in s.items()})
    with pytest.raises(BoundaryMismatch) as exc:
        extract_cobordism(Chain(), s, shifted)
    assert exc.value.residue
    with pytest.raises(BoundaryMismatch):
        extract_cobordism(Chain.simplex((0, 1, 2)), Chain(), Chain())


def test_inconsistent_attachment():
    st, s0, s1 = COBORDISMS["cylinder"]()
    data = extract_cobordism(st, s0, s1)
    with pytest.raises(InconsistentAttachment):
        build_cobordism(data, glued_end(data.cells1), glued_end(data.cells0))


def test_empty_cobordism():
    data, C = cobordism(Chain(), Chain(), Chain())
    assert C.simplices == () and cobordism_boundary_matches(C, Chain(), Chain())


def test_off_export():
    G = glue(octahedron_cycle())
    verts, faces = off_mesh(G)
    assert len(verts) == 6 and len(faces) == 8
    verts, faces = off_mesh(G, subdivide=3)
    assert len(verts) == 38 and len(faces) == 72
    # every edge of a closed oriented mesh is used once in each direction
    edges = [(t[i], t[(i + 1) % 3]) for t in faces for i in range(3)]
    assert len(set(edges)) == len(edges)
    assert all((b, a) in set(edges) for a, b in edges)
    text = format_off(verts, faces)
    assert text.startswith("OFF\n38 72 0\n")
    with pytest.raises(GluingError):
        off_mesh(glue(triangle_boundary_cycle()))


def test_off_with_smoothing():
    import numpy as np

    from orichain.smoothing import SmoothingMap, phi

    smap = SmoothingMap(2)
    G = glue(octahedron_cycle())
    verts, faces = off_mesh(G, subdivide=4, smoothing=lambda x: phi(smap, np.asarray(x)))
    assert np.all(np.isfinite(np.asarray(verts)))
    assert len(faces) == 8 * 16


def test_tetrahedron_identity_in_sphere():
    s = CYCLES["tetrahedron_boundary"][0]()
    assert check_phi_psi_identity(s, SimplicialComplex(tetrahedron_boundary()))
    assert check_phi_psi_identity(octahedron_cycle(), SimplicialComplex(octahedron()))
