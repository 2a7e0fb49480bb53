"""Machine checks that a reduction really preserves the game.

Three checks per reduced instance:

* vertex condition: in the starting position, nothing outside the embedded
  original vertices is playable by either player;
* move-for-move correspondence: walking the source game tree (every move of
  either player, recursively) while mirroring each move into the target,
  the two move sets match under the embedding at every node;
* outcome preservation: the solved outcome of source and target agree.

The correspondence walk scans the full target vertex set at the root and at
depth one; deeper nodes restrict the scan to embedded vertices, which is
sound because placements only ever add constraints, so a vertex illegal at
the start can never become legal later (and the rules tests pin that
monotonicity down separately).

Every failure carries a replayable trace; `replays_violation` re-derives
the violation through the public rules API alone.
"""

from __future__ import annotations

import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from itertools import product

from .errors import InvalidParameterError
from .graph import (
    Graph,
    all_labelled_bipartite,
    all_labelled_graphs,
    gen_gnp,
    gen_random_bipartite,
)
from . import rules, solver
from .reductions import REDUCTIONS, ReducedInstance
from .rules import LegalityIndex, Player, Position

Trace = tuple[tuple[Player, str], ...]

VERTEX_CONDITION = "vertex-condition"
PLAY_FOR_PLAY = "play-for-play"
WINNABILITY = "winnability"
TREE_IMPLIES_OUTCOME = "tree-implies-outcome"

# How a move-set mismatch shows up.
KIND_SOURCE_ONLY = "source-only"           # legal in source, missing in target
KIND_TARGET_ONLY = "target-only"           # legal in target, missing in source
KIND_UNEMBEDDED = "unembedded-playable"    # a non-original target vertex is playable


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str = ""
    trace: Trace = ()
    vertex: str | None = None
    player: Player | None = None
    kind: str | None = None


@dataclass(frozen=True)
class VerificationReport:
    descriptor: str
    checks: tuple[CheckResult, ...]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def failed_checks(self) -> tuple[CheckResult, ...]:
        return tuple(c for c in self.checks if not c.passed)

    def check(self, name: str) -> CheckResult:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)


def format_trace(trace: Trace) -> str:
    return ",".join(f"{player.value}:{vertex}" for player, vertex in trace) or "-"


def _mask_to_indices(mask: int) -> list[int]:
    out = []
    while mask:
        bit = mask & -mask
        out.append(bit.bit_length() - 1)
        mask ^= bit
    return out


def check_vertex_condition(ri: ReducedInstance) -> VerificationReport:
    """No target vertex outside the embedded originals is playable initially."""
    index = LegalityIndex(ri.target_graph, ri.target_ruleset)
    pos = ri.initial_position
    outside = ((1 << ri.target_graph.vertex_count) - 1) & ~ri.embedded_mask
    result = None
    for player in (Player.LEFT, Player.RIGHT):
        playable = index.legal_moves_mask(pos, player, outside)
        if playable:
            bad = (playable & -playable).bit_length() - 1
            result = CheckResult(
                VERTEX_CONDITION, False,
                detail=f"added vertex {ri.target_graph.name_of(bad)!r} playable by {player.name}",
                vertex=ri.target_graph.name_of(bad), player=player,
                kind=KIND_UNEMBEDDED,
            )
            break
    if result is None:
        checked = ri.target_graph.vertex_count - ri.source_graph.vertex_count
        result = CheckResult(VERTEX_CONDITION, True, detail=f"checked={checked}")
    return VerificationReport("vertex condition", (result,))


def check_play_for_play(ri: ReducedInstance, depth_cap: int | None = None) -> VerificationReport:
    """Walk both game trees in lockstep and compare move sets at every node.

    `depth_cap` limits the walk to that many plies from the start; None
    walks the full tree, which certifies the trees are identical in shape.
    """
    src_index = LegalityIndex(ri.source_graph, ri.source_ruleset)
    tgt_index = LegalityIndex(ri.target_graph, ri.target_ruleset)
    mapping = ri.source_to_target
    emb_mask = ri.embedded_mask
    tgt_names = ri.target_graph.names
    n_src = ri.source_graph.vertex_count
    max_depth = n_src if depth_cap is None else min(depth_cap, n_src)

    visited: set[tuple[int, int]] = set()
    nodes = 0

    def node_check(spos: Position, tpos: Position, depth: int, trace: Trace) -> CheckResult | None:
        # Full target scan near the root; embedded-only below (monotonicity).
        candidates = None if depth <= 1 else emb_mask
        for player in (Player.LEFT, Player.RIGHT):
            src_moves = src_index.legal_moves(spos, player)
            mapped = 0
            for i in src_moves:
                mapped |= 1 << mapping[i]
            tgt_mask = tgt_index.legal_moves_mask(tpos, player, candidates)
            if tgt_mask == mapped:
                continue
            diff = tgt_mask ^ mapped
            bad = (diff & -diff).bit_length() - 1
            bit = 1 << bad
            name = tgt_names[bad]
            if bit & tgt_mask:
                kind = KIND_TARGET_ONLY if bit & emb_mask else KIND_UNEMBEDDED
                what = "legal in target but not in source" if bit & emb_mask \
                    else "added vertex is playable"
            else:
                kind = KIND_SOURCE_ONLY
                what = "legal in source but not in target"
            return CheckResult(
                PLAY_FOR_PLAY, False,
                detail=f"after [{format_trace(trace)}]: {name!r} {what} for {player.name}",
                trace=trace, vertex=name, player=player, kind=kind,
            )
        return None

    def walk(spos: Position, tpos: Position, depth: int, trace: Trace) -> CheckResult | None:
        nonlocal nodes
        key = (spos.blue, spos.red)
        if key in visited:
            return None
        visited.add(key)
        nodes += 1
        bad = node_check(spos, tpos, depth, trace)
        if bad is not None:
            return bad
        if depth >= max_depth:
            return None
        for player in (Player.LEFT, Player.RIGHT):
            colour = player.colour
            for i in src_index.legal_moves(spos, player):
                step = (player, ri.source_graph.name_of(i))
                bad = walk(
                    spos.place(i, colour),
                    tpos.place(mapping[i], colour),
                    depth + 1,
                    trace + (step,),
                )
                if bad is not None:
                    return bad
        return None

    bad = walk(Position(), ri.initial_position, 0, ())
    cap_text = "full" if depth_cap is None else str(depth_cap)
    if bad is None:
        result = CheckResult(PLAY_FOR_PLAY, True, detail=f"nodes={nodes} depth={cap_text}")
    else:
        result = bad
    return VerificationReport("play-for-play correspondence", (result,))


def check_winnability(ri: ReducedInstance) -> VerificationReport:
    """Solved outcomes of source and target must coincide."""
    src = solver.outcome(ri.source_graph, ri.source_ruleset)
    tgt = solver.outcome(ri.target_graph, ri.target_ruleset, ri.initial_position)
    result = CheckResult(
        WINNABILITY, src is tgt,
        detail=f"source={src.value} target={tgt.value}",
    )
    return VerificationReport("outcome preservation", (result,))


def resolve_depth_cap(ri: ReducedInstance, depth_cap) -> int | None:
    """`"auto"` means full depth up to six source vertices, else six plies."""
    if depth_cap == "auto":
        return None if ri.source_graph.vertex_count <= 6 else 6
    return depth_cap


def verify_instance(ri: ReducedInstance, depth_cap="auto", descriptor: str = "") -> VerificationReport:
    """Run all three checks, plus the tree-shape-implies-outcome cross-check."""
    cap = resolve_depth_cap(ri, depth_cap)
    checks = [
        check_vertex_condition(ri).checks[0],
        check_play_for_play(ri, cap).checks[0],
        check_winnability(ri).checks[0],
    ]
    full = cap is None or cap >= ri.source_graph.vertex_count
    if full and checks[1].passed and not checks[2].passed:
        checks.append(CheckResult(
            TREE_IMPLIES_OUTCOME, False,
            detail="identical full trees but different outcomes: solver bug",
        ))
    return VerificationReport(descriptor, tuple(checks))


def replays_violation(ri: ReducedInstance, result: CheckResult) -> bool:
    """Re-derive a failed check's violation through the public rules API."""
    if result.passed or result.vertex is None or result.player is None:
        return False
    spos = Position()
    tpos = ri.initial_position
    emap = ri.embedded_map
    for player, name in result.trace:
        spos = rules.apply_move(ri.source_graph, ri.source_ruleset, spos, name, player)
        tpos = rules.apply_move(ri.target_graph, ri.target_ruleset, tpos, emap[name], player)
    target_legal = rules.is_legal(
        ri.target_graph, ri.target_ruleset, tpos, result.vertex, result.player
    )
    if result.kind == KIND_UNEMBEDDED:
        return target_legal and result.vertex not in emap.values()
    sources = {t: s for s, t in emap.items()}
    source_legal = rules.is_legal(
        ri.source_graph, ri.source_ruleset, spos, sources[result.vertex], result.player
    )
    if result.kind == KIND_SOURCE_ONLY:
        return source_legal and not target_legal
    if result.kind == KIND_TARGET_ONLY:
        return target_legal and not source_legal
    return False


# -- corpus running -----------------------------------------------------------


@dataclass(frozen=True)
class CorpusSpec:
    """Which source graphs to verify on.

    `exhaustive_max` enumerates every labelled graph up to that many
    vertices (bipartite reductions split the bound across the two sides).
    Random corpora require an explicit seed.
    """

    exhaustive_max: int | None = None
    random_count: int = 0
    random_size: int = 0
    random_edge_prob: float = 0.0
    seed: int | None = None

    @classmethod
    def parse(cls, text: str) -> "CorpusSpec":
        parts = text.split(":")
        if parts[0] == "exhaustive" and len(parts) == 2:
            return cls(exhaustive_max=int(parts[1]))
        if parts[0] == "random" and len(parts) == 5:
            return cls(
                random_count=int(parts[1]),
                random_size=int(parts[2]),
                random_edge_prob=float(parts[3]),
                seed=int(parts[4]),
            )
        raise InvalidParameterError(
            f"bad corpus spec {text!r}; use exhaustive:N or random:COUNT:SIZE:PROB:SEED"
        )


def _corpus_graphs(spec: CorpusSpec, bipartite: bool):
    out = []
    if spec.exhaustive_max is not None:
        if bipartite:
            side = spec.exhaustive_max // 2
            for p in range(side + 1):
                for q in range(side + 1):
                    out.extend(all_labelled_bipartite(p, q))
        else:
            for n in range(spec.exhaustive_max + 1):
                out.extend((g, None) for g in all_labelled_graphs(n))
    if spec.random_count:
        if spec.seed is None:
            raise InvalidParameterError("random corpora require an explicit seed")
        rng = random.Random(spec.seed)
        for _ in range(spec.random_count):
            child = rng.randrange(2**31)
            if bipartite:
                p = (spec.random_size + 1) // 2
                q = spec.random_size // 2
                out.append(gen_random_bipartite(p, q, spec.random_edge_prob, child))
            else:
                out.append((gen_gnp(spec.random_size, spec.random_edge_prob, child), None))
    return out


def format_params(params: dict) -> str:
    def fmt(value):
        if isinstance(value, bool):
            return "true" if value else "false"
        if isinstance(value, frozenset | set):
            return "+".join(str(x) for x in sorted(value)) or "empty"
        return str(value)

    return ";".join(f"{k}={fmt(params[k])}" for k in sorted(params)) or "-"


@dataclass(frozen=True)
class _Task:
    index: int
    reduction: str
    graph: Graph
    bipartition: tuple[frozenset[int], frozenset[int]] | None
    params: dict
    depth_cap: object
    descriptor: str


@dataclass(frozen=True)
class InstanceRecord:
    index: int
    descriptor: str
    report: VerificationReport

    @property
    def passed(self) -> bool:
        return self.report.passed

    def line(self) -> str:
        if self.passed:
            return f"PASS {self.descriptor}"
        first = self.report.failed_checks()[0]
        bits = [f"FAIL check={first.name} {self.descriptor}"]
        if first.vertex is not None:
            bits.append(f"vertex={first.vertex}")
        if first.player is not None:
            bits.append(f"player={first.player.value}")
        if first.kind is not None:
            bits.append(f"kind={first.kind}")
        bits.append(f"trace={format_trace(first.trace)}")
        return " ".join(bits)


@dataclass(frozen=True)
class CorpusReport:
    records: tuple[InstanceRecord, ...]

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.records)

    @property
    def failures(self) -> tuple[InstanceRecord, ...]:
        return tuple(r for r in self.records if not r.passed)

    def first_failures(self) -> tuple[InstanceRecord, ...]:
        """Earliest failing record for each (check, params) combination."""
        seen = set()
        out = []
        for record in self.records:
            if record.passed:
                continue
            params = record.descriptor.rsplit("params=", 1)[-1]
            key = (record.report.failed_checks()[0].name, params)
            if key not in seen:
                seen.add(key)
                out.append(record)
        return tuple(out)

    def lines(self) -> list[str]:
        out = [r.line() for r in self.records]
        status = "PASS" if self.passed else "FAIL"
        out.append(
            f"summary status={status} total={len(self.records)} failed={len(self.failures)}"
        )
        return out


def _run_task(task: _Task) -> InstanceRecord:
    spec = REDUCTIONS[task.reduction]
    ri = spec.build(task.graph, task.bipartition, task.params)
    report = verify_instance(ri, depth_cap=task.depth_cap, descriptor=task.descriptor)
    return InstanceRecord(task.index, task.descriptor, report)


def run_corpus(reduction: str, corpus: CorpusSpec, param_grid: dict | None = None,
               depth_cap="auto", jobs: int = 1) -> CorpusReport:
    """Verify one reduction across a corpus and a parameter grid.

    The grid maps parameter names to lists of values; every combination runs
    against every corpus graph. Results come back ordered by instance index
    whatever the worker count, so reports are reproducible.
    """
    if reduction not in REDUCTIONS:
        raise InvalidParameterError(
            f"unknown reduction {reduction!r}; choose from {sorted(REDUCTIONS)}"
        )
    spec = REDUCTIONS[reduction]
    graphs = _corpus_graphs(corpus, spec.bipartite)
    grid = param_grid or {}
    keys = sorted(grid)
    combos = [dict(zip(keys, values)) for values in product(*(grid[k] for k in keys))]
    if not combos:
        combos = [{}]
    tasks = []
    index = 0
    for params in combos:
        for gi, (g, bipartition) in enumerate(graphs):
            descriptor = (
                f"reduction={reduction} graph={gi} V={g.vertex_count}"
                f" E={g.edge_count} params={format_params(params)}"
            )
            tasks.append(_Task(index, reduction, g, bipartition, params, depth_cap, descriptor))
            index += 1
    if jobs <= 1:
        records = [_run_task(t) for t in tasks]
    else:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            records = list(pool.map(_run_task, tasks, chunksize=8))
    records.sort(key=lambda r: r.index)
    return CorpusReport(tuple(records))
