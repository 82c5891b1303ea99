"""Property suites: set algebra, pruning laws, cascade laws, round-trips,
and traversal termination on randomized synthetic decay graphs.
"""

import pytest
from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from nuclibgen.chains import assemble_subset, build_progeny
from nuclibgen.elements import SYMBOLS
from nuclibgen.errors import DepthExceeded, EmptySubset
from nuclibgen.export import export_table, import_library_csv
from nuclibgen.levels import cascade_visit
from nuclibgen.library import LibraryEntry, PruneBounds, RadionuclideLibrary, prune
from nuclibgen.nuclide import (
    EnergyValue,
    HalfLife,
    LevelSpec,
    Nuclide,
    RadiationType,
    format_nuclide_id,
    parse_nuclide_id,
)
from nuclibgen.records import LevelRecord, LevelScheme, TransitionRecord

from conftest import brute_radioactive, brute_reachable, simple_chain_source

# --- identifier round-trip -----------------------------------------------------

level_specs = st.one_of(
    st.just(LevelSpec.ground()),
    st.integers(min_value=1, max_value=9).map(LevelSpec.meta),
    st.floats(min_value=0.001, max_value=9999.0,
              allow_nan=False, allow_infinity=False).map(LevelSpec.energy),
)
nuclides = st.builds(
    Nuclide,
    element=st.sampled_from(SYMBOLS),
    mass_number=st.integers(min_value=1, max_value=300),
    level=level_specs,
)


@given(nuclides)
def test_parse_format_round_trip(nuclide):
    assert parse_nuclide_id(format_nuclide_id(nuclide)) == nuclide


@given(st.floats(min_value=1e-9, max_value=1e12,
                 allow_nan=False, allow_infinity=False))
def test_half_life_year_second_round_trip(years):
    back = HalfLife(HalfLife.from_value(years, "y").seconds).in_unit("y")
    assert abs(back - years) <= years * 1e-9


# --- Eq-style subset algebra over the fixture corpus ---------------------------

ROOT_POOL = ("225ac", "99mo", "232th", "226ra", "212pb", "40k")
STATIC_POOL = ("234th", "208pb", "212bi", "177lu", "209tl")
# isomer-bearing nodes excluded: exclusion semantics are identity-exact
EXCLUDE_POOL = ("209tl", "213po", "221fr", "212po", "208tl", "226ra")


@settings(max_examples=12, deadline=None,
          suppress_health_check=[HealthCheck.function_scoped_fixture])
@given(
    roots=st.lists(st.sampled_from(ROOT_POOL), min_size=1, max_size=3,
                   unique=True),
    statics=st.lists(st.sampled_from(STATIC_POOL), max_size=2, unique=True),
    exclusions=st.lists(st.sampled_from(EXCLUDE_POOL), max_size=3, unique=True),
)
def test_subset_equals_set_identity(primed_store, corpus_dir, roots, statics,
                                    exclusions):
    """members == (R | Y | S) \\ E, checked against a brute-force CSV walk."""
    try:
        subset = assemble_subset(
            [parse_nuclide_id(r) for r in roots],
            [parse_nuclide_id(s) for s in statics],
            [parse_nuclide_id(e) for e in exclusions],
            primed_store,
        )
    except EmptySubset:
        pytest.skip("exclusions wiped the subset")

    engine = {str(m.ground_state) for m in subset.members}
    oracle = set()
    for root in roots:
        oracle |= {
            nid for nid in brute_reachable(corpus_dir, root)
            if brute_radioactive(corpus_dir, nid)
        }
    oracle |= set(statics)
    oracle -= set(exclusions)
    assert engine == oracle


# --- pruning laws ---------------------------------------------------------------

entry_strategy = st.builds(
    LibraryEntry,
    nuclide=st.sampled_from([Nuclide("U", 238), Nuclide("Ra", 226),
                             Nuclide("Tc", 99, LevelSpec.meta(1))]),
    radiation=st.just(RadiationType.GAMMA),
    energy=st.floats(min_value=0.0, max_value=3000.0, allow_nan=False)
        .map(EnergyValue),
    intensity_percent=st.one_of(
        st.none(), st.floats(min_value=1e-6, max_value=100.0, allow_nan=False)
    ),
    intensity_unc=st.floats(min_value=0.0, max_value=5.0, allow_nan=False),
    half_life=st.one_of(
        st.none(),
        st.just(HalfLife.stable()),
        st.floats(min_value=1e-9, max_value=1e18, allow_nan=False)
            .map(HalfLife),
    ),
    parent_level=st.sampled_from([EnergyValue(0.0), EnergyValue(142.6836)]),
    flags=st.just(frozenset()),
)
libraries = st.lists(entry_strategy, max_size=40).map(
    lambda entries: RadionuclideLibrary(
        radiation=RadiationType.GAMMA, entries=entries
    )
)


def interval(lo_hi):
    lo, hi = sorted(lo_hi)
    return (lo, hi)


bounds_strategy = st.builds(
    PruneBounds,
    energy_kev=st.tuples(
        st.floats(min_value=0, max_value=3000, allow_nan=False),
        st.floats(min_value=0, max_value=3000, allow_nan=False),
    ).map(interval),
    intensity_percent=st.tuples(
        st.floats(min_value=0, max_value=100, allow_nan=False),
        st.floats(min_value=0, max_value=100, allow_nan=False),
    ).map(interval),
    half_life_seconds=st.one_of(
        st.none(),
        st.tuples(
            st.floats(min_value=0, max_value=1e19, allow_nan=False),
            st.floats(min_value=0, max_value=1e19, allow_nan=False),
        ).map(interval),
    ),
)


@given(libraries, bounds_strategy)
def test_prune_idempotent(lib, bounds):
    once = prune(lib, bounds)
    assert prune(once, bounds).entries == once.entries


@given(libraries, bounds_strategy, bounds_strategy)
def test_prune_commutes_across_applications(lib, b1, b2):
    ab = prune(prune(lib, b1), b2)
    ba = prune(prune(lib, b2), b1)
    assert ab.entries == ba.entries


@given(libraries, bounds_strategy)
def test_prune_monotone_narrower_is_subset(lib, bounds):
    narrower = PruneBounds(
        energy_kev=(bounds.energy_kev[0] + 10, max(bounds.energy_kev[0] + 10,
                                                   bounds.energy_kev[1] - 10)),
        intensity_percent=bounds.intensity_percent,
        half_life_seconds=bounds.half_life_seconds,
    )
    wide = {id(e) for e in prune(lib, bounds).entries}
    narrow = {id(e) for e in prune(lib, narrower).entries}
    assert narrow <= wide


@given(lib=libraries)
def test_csv_round_trip_identity(tmp_path_factory, lib):
    path = tmp_path_factory.mktemp("csv") / "lib.csv"
    export_table(lib, "csv", path)
    back = import_library_csv(path)
    assert back.entries == lib.entries


# --- cascade laws ---------------------------------------------------------------

@st.composite
def schemes_with_starts(draw):
    n = Nuclide("Gd", 156)
    count = draw(st.integers(min_value=2, max_value=10))
    gaps = draw(st.lists(st.floats(min_value=3.0, max_value=150.0,
                                   allow_nan=False),
                         min_size=count, max_size=count))
    levels = [0.0]
    for gap in gaps:
        levels.append(round(levels[-1] + gap, 3))
    records = [LevelRecord(nuclide=n, energy=EnergyValue(kev)) for kev in levels]
    pairs = [(i, j) for i in range(len(levels)) for j in range(i)]
    chosen = draw(st.lists(st.sampled_from(pairs), max_size=18, unique=True))
    transitions = [
        TransitionRecord(
            nuclide=n,
            start_level=EnergyValue(levels[i]),
            end_level=EnergyValue(levels[j]),
            gamma_energy=EnergyValue(round(levels[i] - levels[j], 3)),
        )
        for i, j in chosen
    ]
    scheme = LevelScheme(nuclide=n, levels=records, transitions=transitions)
    starts = draw(st.lists(st.sampled_from(levels), min_size=1, max_size=4,
                           unique=True))
    extra = draw(st.lists(st.sampled_from(levels), max_size=3, unique=True))
    return scheme, [EnergyValue(s) for s in starts], [EnergyValue(e) for e in extra]


@given(schemes_with_starts())
def test_cascade_monotone(data):
    scheme, starts, extra = data
    small = {e.kev for e in cascade_visit(starts, scheme)}
    large = {e.kev for e in cascade_visit(starts + extra, scheme)}
    assert small <= large


@given(schemes_with_starts())
def test_cascade_idempotent(data):
    scheme, starts, _ = data
    visited = cascade_visit(starts, scheme)
    again = cascade_visit(visited, scheme)
    assert {e.kev for e in again} == {e.kev for e in visited}


# --- traversal termination on random graphs -------------------------------------

@st.composite
def decay_graphs(draw):
    size = draw(st.integers(min_value=2, max_value=14))
    ids = [f"{120 + i}{SYMBOLS[40 + i].lower()}" for i in range(size)]
    links = {}
    for i, nid in enumerate(ids):
        cap = min(3, len(ids) - 1)
        daughters = draw(
            st.lists(st.sampled_from(ids), min_size=0, max_size=cap,
                     unique=True)
        )
        # self-decay rows are legal data (isomeric transitions); drop here to
        # focus the property on cross-nuclide edges incl. cycles/convergence
        daughters = [d for d in daughters if d != nid]
        if daughters:
            links[nid] = [(d, round(100.0 / len(daughters), 3))
                          for d in daughters]
    stable = {nid for nid in ids if nid not in links}
    return ids[0], links, stable


@settings(max_examples=40, deadline=None)
@given(decay_graphs())
def test_traversal_terminates_and_visits_once(graph):
    root, links, stable = graph
    source = simple_chain_source(links, stable)
    build = build_progeny(parse_nuclide_id(root), source, visited_cap=100)
    visited = [str(n) for n in build.order]
    assert len(visited) == len(set(visited))
    assert len(visited) <= len(links) + len(stable)
    edges = [(str(p), str(d)) for p, d in build.tree.edges()]
    assert len(edges) == len(set(edges))
    oracle_edges = {(p, d) for p, lst in links.items() for d, _ in lst}
    reachable_edges = {(p, d) for (p, d) in oracle_edges if p in visited}
    assert set(edges) == reachable_edges


def test_visited_cap_enforced_on_long_chain():
    links = {f"{100 + i}sn": [(f"{101 + i}sn", 100.0)] for i in range(80)}
    source = simple_chain_source(links, stable={"181sn"})
    with pytest.raises(DepthExceeded):
        build_progeny(parse_nuclide_id("100sn"), source, visited_cap=40)
