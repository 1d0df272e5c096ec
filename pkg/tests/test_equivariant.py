import random

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from species_forge.documents import load
from species_forge.equivariant import (EquivariantQuiver, arrow_count_identity, directed_graph_of,
                                       format_tag, grothendieck_module, induced_quiver, internal_end,
                                       internal_ext, orbits, parse_tag, pointed_module_data, species_of,
                                       validate_equivariant)
from species_forge.errors import UnsupportedError
from species_forge.groups import cyclic_group, direct_product, symmetric_group
from species_forge.ring import group_ring
from species_forge.species import Species, Vertex, quiver, species_equivalent, underlying_graph
from species_forge.zplus import decompose_free, validate_module
from conftest import random_equivariant


def trivial_on(vertices, arrows):
    g = cyclic_group(1)
    return EquivariantQuiver(g, tuple(vertices), tuple(arrows), (tuple(range(len(vertices))),),
                             (tuple(range(len(arrows))),))


def test_validate_examples():
    assert validate_equivariant(load("d4z2")) == []
    assert validate_equivariant(trivial_on("abc", [(0, 1), (1, 2), (0, 1)])) == []
    bad = EquivariantQuiver(cyclic_group(2), ("0", "1", "2"), ((0, 2),), ((0, 1, 2), (1, 0, 2)), ((0,), (0,)))
    assert any(v.axiom == "arrow/vertex compatibility" and v.where == (1, 0) for v in validate_equivariant(bad))


def test_orbit_examples():
    assert [o.members for o in orbits(load("d4z2"))] == [(0, 1), (2,), (3,)]
    assert [o.members for o in orbits(trivial_on("abc", []))] == [(0,), (1,), (2,)]
    z3 = cyclic_group(3)
    cyc = EquivariantQuiver(z3, ("a", "b", "c"), (), ((0, 1, 2), (1, 2, 0), (2, 0, 1)), ((), (), ()))
    assert [o.members for o in orbits(cyc)] == [(0, 1, 2)]


def test_internal_end_and_ext_d4z2():
    eq = load("d4z2")
    assert internal_end(eq, "1")[0] == (1, 0)
    assert internal_end(eq, "2") == ((1, 1), (0, 1))
    assert internal_end(eq, "3")[0] == (1, 1)
    assert internal_ext(eq, "1", "2") == (1, 1)
    assert internal_ext(eq, "2", "3") == (1, 1)
    assert internal_ext(eq, "3", "1") == (0, 0)
    assert internal_end(trivial_on("ab", [(0, 1)]), "b")[0] == (1,)


def test_species_of_d4z2():
    sp = species_of(load("d4z2"))
    z2 = sp.ring
    expected = Species(z2, (Vertex("a", (1, 0)), Vertex("b", (1, 1)), Vertex("c", (1, 1))), ())
    expected = Species(z2, expected.vertices, tuple(quiver(z2, "abc", [(0, 1, (1, 1)), (1, 2, (1, 1))]).arrows))
    assert species_equivalent(sp, expected) is not None
    assert [v.tag for v in sp.vertices] == ["subgroup={0}; twist=trivial", "subgroup={0,1}; twist=trivial",
                                           "subgroup={0,1}; twist=trivial"]


def test_species_of_trivial_group_is_the_quiver():
    eq = trivial_on("abc", [(0, 1), (0, 1), (1, 2)])
    ring = group_ring(cyclic_group(1))
    assert species_equivalent(species_of(eq), quiver(ring, "abc", [(0, 1, (2,)), (1, 2, (1,))])) == [0, 1, 2]


def test_species_of_a3_swap():
    sp = species_of(load("a3_swap"))
    assert [v.cls for v in sp.vertices] == [(1, 0), (1, 1)]
    assert [(a.source, a.target, a.cls) for a in sp.arrows] == [(0, 1, (1, 1))]


def test_directed_graph_examples():
    graph, cert = directed_graph_of(load("d4z2"))
    assert graph.arrows == ((0, 1), (1, 2)) and cert.passed
    graph, cert = directed_graph_of(trivial_on("abc", [(0, 1), (2, 1)]))
    assert graph.arrows == ((0, 1), (2, 1)) and cert.passed
    d4 = load("d4z2")
    opposite = EquivariantQuiver(d4.group, d4.vertices, tuple((t, s) for s, t in d4.arrows),
                                 d4.vertex_action, d4.arrow_action)
    graph, _ = directed_graph_of(opposite)
    assert graph.arrows == ((1, 0), (2, 1))


def test_grothendieck_module_examples():
    mod = grothendieck_module(load("d4z2"))
    assert mod.rank == 4
    assert mod.action[1].tolist() == [[0, 1, 0, 0], [1, 0, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]
    triv = grothendieck_module(trivial_on("ab", []))
    assert triv.action.tolist() == [np.eye(2, dtype=int).tolist()]
    z3 = cyclic_group(3)
    free = induced_quiver(z3, [(0,)], [])
    assert len(decompose_free(grothendieck_module(free))) == 1


def test_pointed_module_data():
    assert [(d.subgroup, d.schur_multiplier_order) for d in pointed_module_data(cyclic_group(2))] == \
        [((0,), 1), ((0, 1), 1)]
    v4 = pointed_module_data(direct_product(cyclic_group(2), cyclic_group(2)))
    assert len(v4) == 5 and v4[-1].schur_multiplier_order == 2
    assert [d.schur_multiplier_order for d in v4[:-1]] == [1, 1, 1, 1]
    assert [(d.subgroup, d.schur_multiplier_order) for d in pointed_module_data(cyclic_group(1))] == [((0,), 1)]
    with pytest.raises(UnsupportedError):
        pointed_module_data(symmetric_group(3))


def test_tag_round_trip():
    g = cyclic_group(4)
    assert parse_tag(g, format_tag(g, (0, 2), "-1")) == ((0, 2), "-1")
    v4 = direct_product(cyclic_group(2), cyclic_group(2))
    assert parse_tag(v4, format_tag(v4, (0, 3))) == ((0, 3), "trivial")


@pytest.mark.parametrize("name", ["d4z2", "a3_swap", "z2_free"])
def test_arrow_count_identity_on_fixtures(name):
    recovered, actual = arrow_count_identity(load(name))
    assert recovered == actual


GROUPS = [cyclic_group(1), cyclic_group(2), cyclic_group(3), cyclic_group(4),
          direct_product(cyclic_group(2), cyclic_group(2)), symmetric_group(3)]


def draw_quiver(seed):
    rng = random.Random(seed)
    return random_equivariant(rng, rng.choice(GROUPS))


@given(st.integers(0, 10**6))
@settings(max_examples=60, deadline=None)
def test_random_quivers_are_valid_and_consistent(seed):
    eq = draw_quiver(seed)
    assert validate_equivariant(eq) == []
    graph, cert = directed_graph_of(eq)
    assert cert.passed
    assert underlying_graph(species_of(eq)).arrows == graph.arrows
    recovered, actual = arrow_count_identity(eq)
    assert recovered == actual


@given(st.integers(0, 10**6))
@settings(max_examples=60, deadline=None)
def test_end_contains_identity(seed):
    eq = draw_quiver(seed)
    for v in range(eq.n):
        assert internal_end(eq, v)[0][eq.group.unit] == 1


@given(st.integers(0, 10**6))
@settings(max_examples=40, deadline=None)
def test_ext_twist_equivariance(seed):
    eq = draw_quiver(seed)
    G = eq.group
    for g in range(G.order):
        for u in range(eq.n):
            for v in range(eq.n):
                moved = internal_ext(eq, eq.vertex_action[g][u], v)
                base = internal_ext(eq, u, v)
                assert moved == tuple(base[G.mult[h][g]] for h in range(G.order))


@given(st.integers(0, 10**6))
@settings(max_examples=40, deadline=None)
def test_grothendieck_module_is_permutation_module(seed):
    eq = draw_quiver(seed)
    mod = grothendieck_module(eq)
    assert validate_module(mod) == []
    for A in mod.action:
        assert set(A.sum(axis=0)) <= {1} and set(A.sum(axis=1)) <= {1}
