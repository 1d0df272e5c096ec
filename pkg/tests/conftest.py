import random

import pytest

from species_forge.equivariant import induced_quiver
from species_forge.groups import cyclic_group
from species_forge.ring import fibonacci_ring, group_ring, trivial_ring


@pytest.fixture
def fib():
    return fibonacci_ring()


@pytest.fixture
def z2():
    return group_ring(cyclic_group(2))


@pytest.fixture
def z3():
    return group_ring(cyclic_group(3))


def small_rings():
    """The rings of rank <= 3 used by the randomized tests."""
    return [trivial_ring(), group_ring(cyclic_group(2)), group_ring(cyclic_group(3)), fibonacci_ring()]


def random_acyclic_equivariant(rng: random.Random, group):
    """Random G-quiver whose orbits are layered, so every arrow goes up a level."""
    subgroups = group.subgroups
    n_orbits = rng.randint(1, 4)
    orbit_subgroups = [rng.choice(subgroups) for _ in range(n_orbits)]
    levels = [rng.randint(0, 3) for _ in range(n_orbits)]
    reps = []
    for _ in range(rng.randint(0, 6)):
        o1, o2 = rng.randrange(n_orbits), rng.randrange(n_orbits)
        if levels[o1] == levels[o2]:
            continue
        if levels[o1] > levels[o2]:
            o1, o2 = o2, o1
        reps.append((o1, rng.randrange(group.order), o2, rng.randrange(group.order)))
    return induced_quiver(group, orbit_subgroups, reps)


def random_equivariant(rng: random.Random, group):
    """Random G-quiver, cycles allowed."""
    subgroups = group.subgroups
    n_orbits = rng.randint(1, 3)
    orbit_subgroups = [rng.choice(subgroups) for _ in range(n_orbits)]
    reps = [(rng.randrange(n_orbits), rng.randrange(group.order), rng.randrange(n_orbits),
             rng.randrange(group.order)) for _ in range(rng.randint(0, 4))]
    return induced_quiver(group, orbit_subgroups, reps)


_ACCEPTANCE_LINES = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    criterion = item.get_closest_marker("criterion")
    if criterion is None or (report.when != "call" and report.passed):
        return
    number, title = criterion.args
    verdict = "PASS" if report.passed else "FAIL"
    # a failure in setup or teardown overrides an earlier pass
    if _ACCEPTANCE_LINES.get(number, ("", "PASS"))[1] == "PASS":
        _ACCEPTANCE_LINES[number] = (title, verdict)


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for number in sorted(_ACCEPTANCE_LINES):
            title, verdict = _ACCEPTANCE_LINES[number]
            terminalreporter.write_line(f"[{verdict}] criterion {number:2d}: {title}")


def random_species(rng: random.Random, ring=None, max_vertices=6):
    """Random species over a rank <= 3 ring: unit-containing vertex classes, nonzero arrow classes."""
    from species_forge.species import Arrow, Species, Vertex

    ring = ring or rng.choice(small_rings())
    n = rng.randint(1, max_vertices)

    def element(nonzero):
        while True:
            x = tuple(rng.choice((0, 0, 1, 2)) for _ in range(ring.rank))
            if any(x) or not nonzero:
                return x

    vertices = []
    for v in range(n):
        cls = list(element(False))
        if rng.random() < 0.5:
            cls = [0] * ring.rank
        cls[ring.unit] = max(1, cls[ring.unit])
        vertices.append(Vertex(str(v), tuple(cls)))
    density = rng.choice((0.1, 0.25, 0.4))
    arrows = [Arrow(s, t, element(True)) for s in range(n) for t in range(n) if rng.random() < density]
    return Species(ring, tuple(vertices), tuple(arrows))
