import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from species_forge import unfold as unfold_mod
from species_forge.documents import load
from species_forge.equivariant import EquivariantQuiver, species_of
from species_forge.errors import CertificateError, DataError, PreconditionError, RoundTripError
from species_forge.groups import cyclic_group, direct_product, symmetric_group
from species_forge.ring import group_ring, trivial_ring
from species_forge.species import Arrow, Species, Vertex, quiver
from species_forge.unfold import OrdinaryQuiver, pointed_unfold, round_trip, unfold_quiver_species
from conftest import random_acyclic_equivariant, random_equivariant, random_species


def test_fib_quiver_unfolds_to_a4(fib):
    q = unfold_quiver_species(quiver(fib, ["1", "2"], [(0, 1, (0, 1))]))
    # (1,1)=0 (1,Phi)=1 (2,1)=2 (2,Phi)=3
    assert q.arrows == ((0, 3, 1), (1, 2, 1), (1, 3, 1))
    assert q.is_path_graph()


def test_trivial_ring_unfold_copies_quiver():
    s = quiver(trivial_ring(), ["a", "b", "c"], [(0, 1, (2,)), (2, 1, (1,))])
    assert unfold_quiver_species(s).arrows == ((0, 1, 2), (2, 1, 1))


def test_z2_quiver_unfold_golden(z2):
    # (k0+k1)*X = k0+k1 for both simples X, so every (1,X) -> (2,Y) occurs once
    q = unfold_quiver_species(quiver(z2, ["1", "2"], [(0, 1, (1, 1))]))
    assert q.arrows == ((0, 2, 1), (0, 3, 1), (1, 2, 1), (1, 3, 1))
    assert not q.is_path_graph() and q.is_connected()


def test_unfold_rejects_non_quiver():
    with pytest.raises(PreconditionError, match="pointed_unfold"):
        unfold_quiver_species(load("example_3_10_ii"))


def test_pointed_unfold_two_step_species_gives_d4():
    q = pointed_unfold(load("example_3_10_ii"))
    assert len(q.vertices) == 4
    assert q.arrows == ((0, 2, 1), (1, 2, 1), (2, 3, 1))


def test_pointed_unfold_trivial_group():
    ring = group_ring(cyclic_group(1))
    s = quiver(ring, "abc", [(0, 1, (1,)), (1, 2, (3,))])
    assert pointed_unfold(s).arrows == ((0, 1, 1), (1, 2, 3))


def test_pointed_unfold_rejects_twist():
    with pytest.raises(DataError, match="twist"):
        pointed_unfold(load("example_3_10_iii"))


def test_pointed_unfold_tag_class_mismatch(z2):
    s = Species(z2, (Vertex("a", (1, 0), "subgroup={0,1}; twist=trivial"),), ())
    with pytest.raises(DataError):
        pointed_unfold(s)


def test_pointed_unfold_stabilizer_inconsistency(z2):
    s = Species(z2, (Vertex("D", (1, 1)), Vertex("1", (1, 0))), (Arrow(0, 1, (0, 1)),))
    with pytest.raises(CertificateError):
        pointed_unfold(s)


@pytest.mark.parametrize("name", ["d4z2", "a3_swap", "z2_free"])
def test_round_trip_fixtures(name):
    eq = load(name)
    rep = round_trip(eq)
    m, u = rep.original.matrix(), rep.unfolded.matrix()
    assert sorted(rep.witness) == list(range(eq.n))
    assert all(u[rep.witness[s]][rep.witness[t]] == m[s][t] for s in range(eq.n) for t in range(eq.n))


def test_round_trip_failure_carries_both_quivers(monkeypatch):
    monkeypatch.setattr(unfold_mod, "pointed_unfold", lambda s: OrdinaryQuiver(("x",), ()))
    with pytest.raises(RoundTripError) as info:
        round_trip(load("d4z2"))
    assert info.value.expected.arrow_count == 3 and info.value.obtained.arrow_count == 0


@given(st.integers(0, 10**6))
@settings(max_examples=40, deadline=None)
def test_round_trip_trivial_group(seed):
    rng = random.Random(seed)
    n = rng.randint(1, 8)
    arrows = tuple((rng.randrange(n), rng.randrange(n)) for _ in range(rng.randint(0, 10)))
    eq = EquivariantQuiver(cyclic_group(1), tuple(map(str, range(n))), arrows, (tuple(range(n)),),
                           (tuple(range(len(arrows))),))
    round_trip(eq)


GROUPS = [cyclic_group(2), cyclic_group(3), cyclic_group(4), direct_product(cyclic_group(2), cyclic_group(2)),
          symmetric_group(3)]


@given(st.integers(0, 10**6))
@settings(max_examples=60, deadline=None)
def test_round_trip_random_groups(seed):
    rng = random.Random(seed)
    eq = random_equivariant(rng, rng.choice(GROUPS))
    if eq.n <= 12:
        round_trip(eq)


@given(st.integers(0, 10**6))
@settings(max_examples=80, deadline=None)
def test_unfold_vertex_count_and_acyclicity(seed):
    s = random_species(random.Random(seed))
    s = Species(s.ring, tuple(Vertex(v.label, s.ring.basis(s.ring.unit)) for v in s.vertices), s.arrows)
    q = unfold_quiver_species(s)
    assert len(q.vertices) == s.n * s.ring.rank
    forward = Species(s.ring, s.vertices, tuple(a for a in s.arrows if a.source < a.target))
    assert unfold_quiver_species(forward).is_acyclic()


@given(st.integers(0, 10**6))
@settings(max_examples=40, deadline=None)
def test_pointed_unfold_of_acyclic_is_acyclic(seed):
    rng = random.Random(seed)
    eq = random_acyclic_equivariant(rng, rng.choice(GROUPS))
    assert pointed_unfold(species_of(eq)).is_acyclic()
