"""Recursive construction of radionuclide subsets and lineage trees.

`build_progeny` realizes the progenitor->progeny recurrence
f(j) = g(j) | f(j+1) with an explicit work stack: each visited nuclide is
queried for all six radiation kinds, daughters are tallied from the decay
records, and unvisited daughters are scheduled depth-first. A nuclide whose
six queries all come back absent/empty is terminal (stable). Level
feasibility validation and isomer inference run after traversal, once every
parent's feeding is known, and turn visited nuclides into level-resolved
chain members (for example Pa-234m and Pa-234 from one visited nuclide).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Protocol

from .dataaccess import DatasetKey, RawDataset
from .errors import DataUnavailable, DepthExceeded, EmptySubset, NetworkError, OfflineMiss
from .levels import (
    DEFAULT_ISOMER_THRESHOLD_S,
    FlattenedLevels,
    LevelOutcome,
    flatten_levels,
    infer_level_outcomes,
)
from .nuclide import EnergyValue, LevelSpec, Nuclide, RadiationType, energies_match
from .records import (
    DaughterFeed,
    DecayRecord,
    LevelScheme,
    extract_daughters,
    parse_decay_records,
    parse_level_scheme,
)

DEFAULT_VISITED_CAP = 500

# Query order for the six radiation kinds; daughter ordering itself is by
# (mass number, element), so chain membership does not depend on this.
KIND_ORDER = (
    RadiationType.ALPHA,
    RadiationType.BETA_MINUS,
    RadiationType.BETA_PLUS_EC,
    RadiationType.GAMMA,
    RadiationType.ELECTRON,
    RadiationType.XRAY,
)


class DatasetSource(Protocol):
    """Anything that can answer dataset requests (DataStore or a test fake)."""

    def fetch_dataset(self, key: DatasetKey) -> RawDataset | None: ...


@dataclass
class ChainMember:
    """One level-resolved subset member backed by a visited nuclide."""

    nuclide: Nuclide          # identity including level spec
    node: Nuclide             # level-erased backing nuclide
    level_kev: float
    is_isomer: bool
    half_life_s: float | None = None
    unvalidated: bool = False


@dataclass
class NodeData:
    """Everything learned about one visited (element, A) nuclide."""

    nuclide: Nuclide
    records: list[DecayRecord] = field(default_factory=list)
    daughters: list[DaughterFeed] = field(default_factory=list)
    inherited: list[EnergyValue] = field(default_factory=list)
    scheme: LevelScheme | None = None
    warnings: list[str] = field(default_factory=list)
    terminal: bool = True
    flattened: FlattenedLevels | None = None
    outcomes: list[LevelOutcome] = field(default_factory=list)
    members: list[ChainMember] = field(default_factory=list)

    def add_inherited(self, levels: tuple[EnergyValue, ...]) -> None:
        for level in levels:
            if not any(level.kev == seen.kev for seen in self.inherited):
                self.inherited.append(level)


@dataclass
class DecayChain:
    """Discovery-ordered, duplicate-free members of one progenitor's chain."""

    progenitor: Nuclide
    members: list[Nuclide]
    progenitor_terminal: bool = False


@dataclass
class LineageTree:
    """Nested parent->daughter structure for one progenitor, with branches.

    ``expanded`` is False for a converging-branch cross-reference: the
    daughter's subtree is shown under its first-discovered parent only.
    """

    root: Nuclide
    children: list[tuple[float, "LineageTree"]] = field(default_factory=list)
    expanded: bool = True

    def edges(self) -> list[tuple[Nuclide, Nuclide]]:
        out = []
        stack = [self]
        while stack:
            node = stack.pop()
            for _, child in node.children:
                out.append((node.root, child.root))
                stack.append(child)
        return out


@dataclass
class ChainBuild:
    """Result of one progenitor traversal."""

    chain: DecayChain
    tree: LineageTree
    nodes: dict[Nuclide, NodeData]
    order: list[Nuclide]
    warnings: list[str]


def _fetch_records(
    source: DatasetSource, nuclide: Nuclide, warnings: list[str]
) -> list[DecayRecord]:
    keys = [DatasetKey.decay_rads(nuclide, rad) for rad in KIND_ORDER]
    try:
        fetch_many = getattr(source, "fetch_many", None)
        if fetch_many is not None:
            raws = fetch_many(keys)  # concurrent; results committed in order
        else:
            raws = {key: source.fetch_dataset(key) for key in keys}
    except (OfflineMiss, NetworkError) as exc:
        raise DataUnavailable(str(exc)) from exc
    records: list[DecayRecord] = []
    for key in keys:
        raw = raws[key]
        if raw is None:
            continue
        parsed, parse_warnings = parse_decay_records(raw)
        records.extend(parsed)
        warnings.extend(parse_warnings)
    return records


def _fetch_scheme(
    source: DatasetSource, nuclide: Nuclide, warnings: list[str]
) -> LevelScheme | None:
    try:
        levels_raw = source.fetch_dataset(DatasetKey.levels(nuclide))
        if levels_raw is None:
            return None
        transitions_raw = source.fetch_dataset(DatasetKey.transitions(nuclide))
    except (OfflineMiss, NetworkError) as exc:
        raise DataUnavailable(str(exc)) from exc
    scheme, parse_warnings = parse_level_scheme(levels_raw, transitions_raw)
    warnings.extend(parse_warnings)
    return scheme


def resolve_level_spec(
    spec: LevelSpec,
    scheme: LevelScheme | None,
    isomer_threshold_s: float = DEFAULT_ISOMER_THRESHOLD_S,
) -> EnergyValue:
    """Concrete level energy for a user-designated level specification."""
    if spec.is_ground:
        return EnergyValue(0.0)
    if spec.kind == "energy":
        return EnergyValue(spec.kev)
    if scheme is None:
        raise DataUnavailable(
            "metastable ordinal cannot be resolved without a level dataset"
        )
    isomers = scheme.isomer_levels(isomer_threshold_s)
    if spec.ordinal > len(isomers):
        raise DataUnavailable(
            f"{scheme.nuclide}: no isomer with ordinal m{spec.ordinal} "
            f"({len(isomers)} known)"
        )
    return isomers[spec.ordinal - 1].energy


def _member_identity(
    node: NodeData, level: EnergyValue, isomer_threshold_s: float
) -> tuple[Nuclide, bool]:
    """Resolve a feasible decaying level to a member identity (and isomer flag)."""
    if node.scheme is not None:
        isomers = node.scheme.isomer_levels(isomer_threshold_s)
        for ordinal, record in enumerate(isomers, start=1):
            if energies_match(record.energy, level):
                return node.nuclide.at_level(LevelSpec.meta(ordinal)), True
    if level.kev == 0:
        return node.nuclide, False
    return node.nuclide.at_level(LevelSpec.energy(level.kev)), False


def _resolve_members(node: NodeData, isomer_threshold_s: float) -> None:
    """Turn a validated node into its level-resolved chain members.

    A member is a feasible level at which the nuclide decays, i.e. one that
    appears as a parent level in the decay records. Members are ordered by
    descending level energy (isomers before the ground state).
    """
    if not node.records:
        return
    decaying: list[EnergyValue] = []
    for rec in node.records:
        if not any(energies_match(rec.parent_level, seen) for seen in decaying):
            decaying.append(rec.parent_level)
    decaying.sort(key=lambda e: e.kev, reverse=True)

    for level in decaying:
        unvalidated = node.flattened is None
        if node.flattened is not None and not node.flattened.contains(level):
            continue  # unfeasible decaying level: radiation excluded downstream
        canonical = level
        if node.scheme is not None:
            matched = node.scheme.find_level(level)
            if matched is not None:
                canonical = matched.energy
        identity, is_isomer = _member_identity(node, canonical, isomer_threshold_s)
        if any(m.nuclide == identity for m in node.members):
            continue
        half_life = None
        matched = node.scheme.find_level(canonical) if node.scheme else None
        if matched is not None and matched.half_life is not None:
            half_life = (
                None if matched.half_life.is_stable else matched.half_life.seconds
            )
        if half_life is None:
            for rec in node.records:
                if rec.half_life is not None and energies_match(rec.parent_level, level):
                    half_life = rec.half_life.seconds
                    break
        node.members.append(
            ChainMember(
                nuclide=identity,
                node=node.nuclide,
                level_kev=canonical.kev,
                is_isomer=is_isomer,
                half_life_s=half_life,
                unvalidated=unvalidated,
            )
        )


def build_progeny(
    progenitor: Nuclide,
    source: DatasetSource,
    *,
    simulate_cascade: bool = True,
    isomer_threshold_s: float = DEFAULT_ISOMER_THRESHOLD_S,
    visited_cap: int = DEFAULT_VISITED_CAP,
) -> ChainBuild:
    """Recursively collect all progeny of a progenitor.

    Returns the discovery-ordered decay chain (level-resolved members) and
    the lineage tree including stable leaves. Raises DataUnavailable when a
    required dataset is neither cached nor fetchable, DepthExceeded when the
    visited count passes ``visited_cap``.
    """
    warnings: list[str] = []
    root = progenitor.ground_state
    nodes: dict[Nuclide, NodeData] = {}
    order: list[Nuclide] = []
    edges: list[tuple[Nuclide, Nuclide, float]] = []
    discoverer: dict[Nuclide, Nuclide] = {}

    stack = [root]
    scheduled = {root}
    while stack:
        current = stack.pop()
        if len(order) >= visited_cap:
            raise DepthExceeded(
                f"visited {len(order)} nuclides; cap is {visited_cap}"
            )
        order.append(current)
        node = nodes.setdefault(current, NodeData(nuclide=current))
        node.records = _fetch_records(source, current, node.warnings)
        node.scheme = _fetch_scheme(source, current, node.warnings)
        node.terminal = not node.records
        node.daughters = extract_daughters(node.records)

        fresh = []
        for feed in node.daughters:
            edges.append((current, feed.daughter, feed.branching_percent))
            child = nodes.setdefault(feed.daughter, NodeData(nuclide=feed.daughter))
            child.add_inherited(feed.feeding_levels)
            if feed.daughter not in scheduled:
                scheduled.add(feed.daughter)
                discoverer[feed.daughter] = current
                fresh.append(feed.daughter)
        stack.extend(reversed(fresh))

    # Progenitor levels are designated by the user; omission means ground.
    root_node = nodes[root]
    root_level = resolve_level_spec(
        progenitor.level, root_node.scheme, isomer_threshold_s
    )
    root_node.add_inherited((root_level,))

    for visited in order:
        node = nodes[visited]
        if node.scheme is not None:
            node.flattened = flatten_levels(
                node.nuclide,
                node.inherited or [EnergyValue(0.0)],
                node.scheme,
                node.warnings,
                simulate_cascade=simulate_cascade,
            )
        node.outcomes = (
            infer_level_outcomes(node.flattened, node.scheme, isomer_threshold_s)
            if node.flattened is not None and node.scheme is not None
            else []
        )
        _resolve_members(node, isomer_threshold_s)
        warnings.extend(node.warnings)

    members: list[Nuclide] = []
    for visited in order:
        members.extend(m.nuclide for m in nodes[visited].members)

    progenitor_terminal = root_node.terminal
    if progenitor_terminal:
        # Degenerate case: a stable progenitor still heads its (empty) chain.
        members.insert(0, progenitor)
    elif members and not _same_node(members[0], progenitor):
        members.insert(0, progenitor)

    tree = _build_tree(root, edges, discoverer)
    chain = DecayChain(
        progenitor=members[0] if members else progenitor,
        members=members,
        progenitor_terminal=progenitor_terminal,
    )
    return ChainBuild(chain=chain, tree=tree, nodes=nodes, order=order, warnings=warnings)


def _same_node(a: Nuclide, b: Nuclide) -> bool:
    return a.ground_state == b.ground_state


def _build_tree(
    root: Nuclide,
    edges: list[tuple[Nuclide, Nuclide, float]],
    discoverer: dict[Nuclide, Nuclide],
) -> LineageTree:
    children: dict[Nuclide, list[tuple[float, Nuclide]]] = {}
    for parent, daughter, branching in edges:
        children.setdefault(parent, []).append((branching, daughter))

    def make(nuclide: Nuclide, expand: bool) -> LineageTree:
        tree = LineageTree(root=nuclide, expanded=expand)
        if not expand:
            return tree
        ordered = sorted(
            children.get(nuclide, ()),
            key=lambda item: (-item[0], item[1].mass_number, item[1].element),
        )
        for branching, daughter in ordered:
            subtree = make(daughter, discoverer.get(daughter) == nuclide)
            tree.children.append((branching, subtree))
        return tree

    return make(root, True)


def render_lineage(tree: LineageTree) -> str:
    """Indented UTF-8 text: one nuclide per line, children two spaces deeper,
    branching percent annotated, descending branching order. A trailing '*'
    marks a converging branch whose subtree is shown under the parent that
    discovered it first.
    """
    lines: list[str] = []

    def walk(node: LineageTree, depth: int, branching: float | None) -> None:
        label = str(node.root)
        if branching is not None:
            label += f" ({branching:g}%)"
        if not node.expanded:
            label += " *"
        lines.append("  " * depth + label)
        for pct, child in node.children:
            walk(child, depth + 1, pct)

    walk(tree, 0, None)
    return "\n".join(lines) + "\n"


@dataclass
class RadionuclideSubset:
    """X = (R | Y | S) \\ E: recursive chains plus statics minus exclusions."""

    recursive_chains: list[DecayChain]
    statics: list[Nuclide]
    exclusions: list[Nuclide]
    members: list[Nuclide]
    trees: list[LineageTree] = field(default_factory=list)
    nodes: dict[Nuclide, NodeData] = field(default_factory=dict)
    warnings: list[str] = field(default_factory=list)
    source_id: str = ""


def _merge_nodes(
    target: dict[Nuclide, NodeData],
    extra: dict[Nuclide, NodeData],
    *,
    simulate_cascade: bool = True,
    isomer_threshold_s: float = DEFAULT_ISOMER_THRESHOLD_S,
) -> None:
    for key, node in extra.items():
        existing = target.get(key)
        if existing is None:
            target[key] = node
            continue
        # Same datasets underneath; union the feeding context and widen the
        # feasible set accordingly.
        existing.add_inherited(tuple(node.inherited))
        if existing.scheme is not None:
            existing.flattened = flatten_levels(
                existing.nuclide,
                existing.inherited or [EnergyValue(0.0)],
                existing.scheme,
                existing.warnings,
                simulate_cascade=simulate_cascade,
            )
            existing.outcomes = infer_level_outcomes(
                existing.flattened, existing.scheme, isomer_threshold_s
            )
            existing.members = []
            _resolve_members(existing, isomer_threshold_s)


def assemble_subset(
    recursive: list[Nuclide],
    statics: list[Nuclide],
    exclusions: list[Nuclide],
    source: DatasetSource,
    *,
    simulate_cascade: bool = True,
    isomer_threshold_s: float = DEFAULT_ISOMER_THRESHOLD_S,
    visited_cap: int = DEFAULT_VISITED_CAP,
    source_id: str = "",
) -> RadionuclideSubset:
    """Assemble the complete radionuclide subset (R | Y | S) \\ E.

    Member ordering is deterministic: chains in input order with discovery
    order within each, then statics in input order; exclusions are removed
    by exact (element, mass number, level) identity.
    """
    chains: list[DecayChain] = []
    trees: list[LineageTree] = []
    nodes: dict[Nuclide, NodeData] = {}
    warnings: list[str] = []

    for progenitor in recursive:
        build = build_progeny(
            progenitor,
            source,
            simulate_cascade=simulate_cascade,
            isomer_threshold_s=isomer_threshold_s,
            visited_cap=visited_cap,
        )
        chains.append(build.chain)
        trees.append(build.tree)
        _merge_nodes(
            nodes,
            build.nodes,
            simulate_cascade=simulate_cascade,
            isomer_threshold_s=isomer_threshold_s,
        )
        warnings.extend(build.warnings)

    resolved_statics: list[Nuclide] = []
    for static in statics:
        node = nodes.get(static.ground_state)
        if node is None:
            node = _build_static_node(
                static, source, nodes, warnings,
                simulate_cascade=simulate_cascade,
                isomer_threshold_s=isomer_threshold_s,
            )
        level = resolve_level_spec(static.level, node.scheme, isomer_threshold_s)
        node.add_inherited((level,))
        if node.scheme is not None:
            node.flattened = flatten_levels(
                node.nuclide, node.inherited, node.scheme, node.warnings,
                simulate_cascade=simulate_cascade,
            )
        identity, _ = (
            _member_identity(node, level, isomer_threshold_s)
            if node.scheme is not None or level.kev == 0
            else (static, False)
        )
        resolved_statics.append(identity)

    excluded = set(exclusions)
    members: list[Nuclide] = []
    for chain in chains:
        for member in chain.members:
            if member not in excluded and member not in members:
                members.append(member)
    for static in resolved_statics:
        if static not in excluded and static not in members:
            members.append(static)

    if not members:
        raise EmptySubset("radionuclide subset resolved to no members")
    return RadionuclideSubset(
        recursive_chains=chains,
        statics=resolved_statics,
        exclusions=list(exclusions),
        members=members,
        trees=trees,
        nodes=nodes,
        warnings=warnings,
        source_id=source_id,
    )


def _build_static_node(
    static: Nuclide,
    source: DatasetSource,
    nodes: dict[Nuclide, NodeData],
    warnings: list[str],
    *,
    simulate_cascade: bool,
    isomer_threshold_s: float,
) -> NodeData:
    """Fetch a static nuclide's own data plus one hop of daughter schemes.

    Statics contribute no subset descendants, but their radiation still needs
    the daughters' flattened levels for gamma feasibility gating.
    """
    ground = static.ground_state
    node = nodes.setdefault(ground, NodeData(nuclide=ground))
    node.records = _fetch_records(source, ground, node.warnings)
    node.scheme = _fetch_scheme(source, ground, node.warnings)
    node.terminal = not node.records
    node.daughters = extract_daughters(node.records)
    for feed in node.daughters:
        child = nodes.get(feed.daughter)
        if child is None:
            child = nodes[feed.daughter] = NodeData(nuclide=feed.daughter)
            child.scheme = _fetch_scheme(source, feed.daughter, child.warnings)
        child.add_inherited(feed.feeding_levels)
        if child.scheme is not None:
            child.flattened = flatten_levels(
                child.nuclide, child.inherited, child.scheme, child.warnings,
                simulate_cascade=simulate_cascade,
            )
    warnings.extend(node.warnings)
    return node
