from itertools import permutations, product

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from species_forge.errors import GuardError, ShapeError
from species_forge.groups import cyclic_group, direct_product
from species_forge.ring import fibonacci_ring, group_ring, trivial_ring
from species_forge.zplus import (ZPlusModule, decompose_free, direct_sum, enumerate_irreducible,
                                 equivalence_classes, is_regular_iso, regular_module, validate_module)
from conftest import small_rings


def naive_irreducible(ring, max_rank, max_entry):
    """Oracle: try every matrix tuple for the non-unit basis, keep valid irreducible ones."""
    found = set()
    others = [i for i in range(ring.rank) if i != ring.unit]
    for m in range(1, max_rank + 1):
        cells = m * m * len(others)
        for flat in product(range(max_entry + 1), repeat=cells):
            A = np.zeros((ring.rank, m, m), dtype=np.int64)
            A[ring.unit] = np.eye(m, dtype=np.int64)
            for n, i in enumerate(others):
                A[i] = np.array(flat[n * m * m:(n + 1) * m * m]).reshape(m, m)
            mod = ZPlusModule(ring, tuple(str(a) for a in range(m)), A)
            if validate_module(mod) or len(equivalence_classes(mod)) != 1:
                continue
            found.add(min((m,) + tuple(A[:, p][:, :, p].ravel().tolist())
                          for p in map(list, permutations(range(m)))))
    return found


def forms(mods):
    return {min((x.rank,) + tuple(x.action[:, p][:, :, p].ravel().tolist())
                for p in map(list, permutations(range(x.rank)))) for x in mods}


@pytest.mark.parametrize("ring,max_rank,max_entry", [
    (fibonacci_ring(), 2, 2),
    (fibonacci_ring(), 3, 2),
    (trivial_ring(), 2, 2),
    (group_ring(cyclic_group(2)), 2, 1),
    (group_ring(cyclic_group(2)), 3, 1),
    (group_ring(cyclic_group(3)), 2, 1),
])
def test_enumeration_matches_naive_oracle(ring, max_rank, max_entry):
    assert forms(enumerate_irreducible(ring, max_rank, max_entry)) == naive_irreducible(ring, max_rank, max_entry)


def test_fib_regular_module_example(fib):
    reg = regular_module(fib)
    assert reg.action[1].tolist() == [[0, 1], [1, 1]]
    assert validate_module(reg) == []


def test_trivial_module_over_z2(z2):
    mod = ZPlusModule(z2, ("V",), [[[1]], [[1]]])
    assert validate_module(mod) == []
    assert is_regular_iso(mod) is None
    assert decompose_free(mod) is None


def test_rank_one_fib_candidate_fails_associativity(fib):
    mod = ZPlusModule(fib, ("x",), [[[1]], [[2]]])
    report = validate_module(mod)
    assert any(v.axiom == "associativity" and v.where == (1, 1, 0, 0) for v in report)
    assert any("4 != 3" in v.detail for v in report)


def test_action_shape_error(fib):
    with pytest.raises(ShapeError, match="action"):
        ZPlusModule(fib, ("a", "b"), [[[1]]])


def test_regular_module_examples(z2):
    assert regular_module(trivial_ring()).action.tolist() == [[[1]]]
    assert regular_module(z2).action.tolist() == [[[1, 0], [0, 1]], [[0, 1], [1, 0]]]


def test_equivalence_class_examples(fib, z2):
    assert equivalence_classes(regular_module(z2)) == [(0, 1)]
    two = direct_sum(regular_module(fib), regular_module(fib))
    assert equivalence_classes(two) == [(0, 1), (2, 3)]


def test_regular_witnesses(fib, z2):
    w = is_regular_iso(regular_module(fib))
    assert w.base == fib.unit and w.image == (0, 1)
    swapped = regular_module(z2).permuted([1, 0])
    w = is_regular_iso(swapped)
    assert w.image == (1, 0)


def test_decompose_examples(fib, z3):
    parts = decompose_free(direct_sum(regular_module(fib), regular_module(fib)))
    assert [p.indices for p in parts] == [(0, 1), (2, 3)]
    assert len(decompose_free(regular_module(z3))) == 1


def test_enumeration_examples(fib, z2):
    mods = enumerate_irreducible(fib, 2, 2)
    assert len(mods) == 1 and is_regular_iso(mods[0]) is not None
    triv = enumerate_irreducible(trivial_ring(), 2, 2)
    assert [m.action.tolist() for m in triv] == [[[[1]]]]
    z2mods = enumerate_irreducible(z2, 2, 1)
    assert [m.rank for m in z2mods] == [1, 2]
    assert is_regular_iso(z2mods[1]) is not None


def test_enumeration_guards(fib, monkeypatch):
    with pytest.raises(GuardError, match="max_rank"):
        enumerate_irreducible(fib, 7, 1)
    with pytest.raises(GuardError, match="max_entry"):
        enumerate_irreducible(fib, 2, 5)
    monkeypatch.setenv("SPECIES_FORGE_GUARDS", "off")
    assert enumerate_irreducible(fib, 7, 0) == []


ALL_RINGS = small_rings() + [group_ring(direct_product(cyclic_group(2), cyclic_group(2)))]


@pytest.mark.parametrize("ring", ALL_RINGS)
def test_regular_module_is_valid_and_regular(ring):
    reg = regular_module(ring)
    assert validate_module(reg) == []
    assert is_regular_iso(reg) is not None


@given(st.data())
@settings(max_examples=60, deadline=None)
def test_classes_follow_relabeling(data):
    ring = data.draw(st.sampled_from(ALL_RINGS))
    k = data.draw(st.integers(1, 3))
    mod = direct_sum(*[regular_module(ring)] * k)
    perm = data.draw(st.permutations(range(mod.rank)))
    moved = mod.permuted(perm)
    expected = sorted(tuple(sorted(perm[a] for a in c)) for c in equivalence_classes(mod))
    assert equivalence_classes(moved) == expected
    assert validate_module(moved) == []


@given(st.data())
@settings(max_examples=40, deadline=None)
def test_decompose_free_counts_summands(data):
    ring = data.draw(st.sampled_from(ALL_RINGS))
    k = data.draw(st.integers(1, 4))
    mod = direct_sum(*[regular_module(ring)] * k)
    perm = data.draw(st.permutations(range(mod.rank)))
    parts = decompose_free(mod.permuted(perm))
    assert parts is not None and len(parts) == k


@pytest.mark.parametrize("ring,max_rank,max_entry", [(fibonacci_ring(), 3, 2), (group_ring(cyclic_group(2)), 3, 2),
                                                     (group_ring(cyclic_group(3)), 3, 1)])
def test_enumerated_modules_are_irreducible_and_dual_symmetric(ring, max_rank, max_entry):
    for mod in enumerate_irreducible(ring, max_rank, max_entry):
        assert len(equivalence_classes(mod)) == 1
        assert validate_module(mod) == []
        for i in range(ring.rank):
            assert np.array_equal(mod.action[i] > 0, (mod.action[ring.dual[i]] > 0).T)
