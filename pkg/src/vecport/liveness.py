"""Backward liveness over the statement-level CFG and vector register pressure.

A value is live at a point when some path onward reads it before any
redefinition. The solver iterates

    IN(i)  = (OUT(i) - DEF(i)) | USE(i)
    OUT(i) = union of IN(j) over successor statements j

to a fixpoint; sets grow monotonically inside a finite universe, so
termination is bounded by |vars| * |stmts| sweeps. Register pressure at a
statement is the sum of the LMUL-weighted footprints of IN(i) | OUT(i); the
report carries the peak across the function against the 32-register file.

``oracle_liveness`` answers the same question by brute-force path
enumeration and exists purely to cross-check the solver.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import AnalysisError, PathExplosionError
from .parser import FunctionIr
from .rvv_types import register_footprint

# Statement-level successor marker for "falls off the function".
EXIT = -1

REGISTER_BUDGET = 32


@dataclass
class LivenessResult:
    live_in: dict[int, frozenset[str]]
    live_out: dict[int, frozenset[str]]


@dataclass
class PressureReport:
    """Peak LMUL-weighted demand on the vector register file."""

    pressure: Fraction
    hot_stmt: int | None
    per_stmt_pressure: dict[int, Fraction]
    live_at_hot: frozenset[tuple[str, Fraction]]
    dead_defs: frozenset[str]
    spills_predicted: bool
    register_budget: int = REGISTER_BUDGET
    hot_line: int | None = None
    hot_text: str | None = None
    mode: str = "literal"

    def to_text(self) -> str:
        lines = [
            f"peak vector register pressure: {_fmt(self.pressure)} of {self.register_budget}",
        ]
        if self.hot_stmt is not None:
            where = f"statement {self.hot_stmt}"
            if self.hot_line is not None:
                where += f" (line {self.hot_line})"
            lines.append(f"hot statement: {where}: {self.hot_text or ''}".rstrip())
            live = ", ".join(
                f"{name}={_fmt(fp)}" for name, fp in sorted(self.live_at_hot)
            )
            lines.append(f"live there: {live or '(none)'}")
        if self.spills_predicted:
            lines.append("verdict: demand exceeds the register file; spills likely")
        else:
            lines.append("verdict: fits in the register file")
        if self.dead_defs:
            lines.append(
                "warning: defined but never used: " + ", ".join(sorted(self.dead_defs))
            )
        return "\n".join(lines)

    def to_dict(self) -> dict:
        return {
            "pressure": str(self.pressure),
            "hot_stmt": self.hot_stmt,
            "spills_predicted": self.spills_predicted,
            "register_budget": self.register_budget,
            "dead_defs": sorted(self.dead_defs),
            "mode": self.mode,
        }


def _fmt(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def stmt_successors(ir: FunctionIr) -> dict[int, tuple[int, ...]]:
    """Successor statements of each statement; EXIT marks leaving the function.

    Block-level edges are translated by taking the first statement of each
    successor block, skipping through empty blocks transitively. ``seen``
    guards cycles made purely of empty blocks, which contribute nothing.
    """

    def first_stmts(block_id: int, seen: frozenset[int]) -> list[int]:
        if block_id == ir.cfg.exit:
            return [EXIT]
        block = ir.cfg.block(block_id)
        if block.stmt_ids:
            return [block.stmt_ids[0]]
        if block_id in seen:
            return []
        out: list[int] = []
        for s in ir.cfg.successors(block_id):
            for t in first_stmts(s, seen | {block_id}):
                if t not in out:
                    out.append(t)
        return out

    succ: dict[int, tuple[int, ...]] = {}
    for block in ir.cfg.blocks:
        for idx, sid in enumerate(block.stmt_ids):
            if idx + 1 < len(block.stmt_ids):
                succ[sid] = (block.stmt_ids[idx + 1],)
            else:
                out = []
                for s in ir.cfg.successors(block.block_id):
                    for t in first_stmts(s, frozenset()):
                        if t not in out:
                            out.append(t)
                succ[sid] = tuple(out)
    return succ


def solve_liveness(ir: FunctionIr, order: Sequence[int] | None = None) -> LivenessResult:
    """Iterate the dataflow equations to a fixpoint.

    ``order`` picks the statement iteration order inside each sweep; the
    fixpoint is the same for any order (reverse layout order converges
    fastest and is the default).
    """
    stmts = ir.stmts
    if not stmts:
        return LivenessResult({}, {})
    succ = stmt_successors(ir)
    if order is None:
        sweep = [s.stmt_id for s in reversed(stmts)]
    else:
        sweep = list(order)

    live_in: dict[int, frozenset[str]] = {s.stmt_id: frozenset() for s in stmts}
    live_out: dict[int, frozenset[str]] = {s.stmt_id: frozenset() for s in stmts}
    uses = {s.stmt_id: s.uses for s in stmts}
    defs = {s.stmt_id: s.defs for s in stmts}

    n_vars = len(ir.symbol_table)
    max_sweeps = n_vars * len(stmts) + 2
    for _ in range(max_sweeps):
        changed = False
        for i in sweep:
            out: set[str] = set()
            for j in succ[i]:
                if j != EXIT:
                    out |= live_in[j]
            new_out = frozenset(out)
            new_in = frozenset((new_out - defs[i]) | uses[i])
            if new_out != live_out[i] or new_in != live_in[i]:
                live_out[i] = new_out
                live_in[i] = new_in
                changed = True
        if not changed:
            return LivenessResult(live_in, live_out)
    raise AssertionError("liveness failed to converge within its sweep bound")


def check_fixpoint(ir: FunctionIr, live: LivenessResult) -> None:
    """Raise AnalysisError unless ``live`` satisfies the dataflow equations exactly."""
    succ = stmt_successors(ir)
    for s in ir.stmts:
        i = s.stmt_id
        expected_in = (live.live_out[i] - s.defs) | s.uses
        if live.live_in[i] != expected_in:
            raise AnalysisError(f"liveness not a fixpoint at statement {i} (IN)")
        out: set[str] = set()
        for j in succ[i]:
            if j != EXIT:
                out |= live.live_in[j]
        if live.live_out[i] != frozenset(out):
            raise AnalysisError(f"liveness not a fixpoint at statement {i} (OUT)")


def oracle_liveness(
    ir: FunctionIr,
    path_bound: int | None = None,
    max_steps: int = 2_000_000,
) -> LivenessResult:
    """Liveness by explicit path enumeration; independent of the solver.

    A value is live at entry of statement i when some enumerated path starting
    at i reads it before any redefinition; live at exit when such a path
    starts at one of i's successors. Paths longer than ``path_bound``
    statements are not explored, so the result matches the fixpoint whenever
    the bound covers every simple path plus one loop unrolling. Exceeding
    ``max_steps`` DFS steps raises PathExplosionError rather than returning a
    truncated answer.
    """
    stmts = ir.stmts
    if not stmts:
        return LivenessResult({}, {})
    succ = stmt_successors(ir)
    if path_bound is None:
        path_bound = 2 * (len(stmts) + 2)

    uses = {s.stmt_id: s.uses for s in stmts}
    defs = {s.stmt_id: s.defs for s in stmts}
    steps = 0

    def live_from(start: int) -> frozenset[str]:
        nonlocal steps
        found: set[str] = set()
        # Each stack entry: (stmt, depth, vars killed on the way here).
        stack: list[tuple[int, int, frozenset[str]]] = [(start, 1, frozenset())]
        while stack:
            steps += 1
            if steps > max_steps:
                raise PathExplosionError(
                    f"path enumeration exceeded {max_steps} steps; "
                    f"input too large for the oracle"
                )
            i, depth, killed = stack.pop()
            found |= uses[i] - killed
            killed = killed | defs[i]
            if depth >= path_bound:
                continue
            for j in succ[i]:
                if j != EXIT:
                    stack.append((j, depth + 1, killed))
        return frozenset(found)

    entry_live = {s.stmt_id: live_from(s.stmt_id) for s in stmts}
    live_out = {}
    for s in stmts:
        out: set[str] = set()
        for j in succ[s.stmt_id]:
            if j != EXIT:
                out |= entry_live[j]
        live_out[s.stmt_id] = frozenset(out)
    return LivenessResult(entry_live, live_out)


def compute_pressure(
    ir: FunctionIr, live: LivenessResult, mode: str = "literal"
) -> PressureReport:
    """Peak register demand per the live sets, plus dead-definition warnings.

    ``live`` must be a fixpoint for ``ir`` (checked). A defined-but-unused
    value appears in no live set and therefore costs nothing here; it is
    surfaced in ``dead_defs`` instead of being silently dropped.
    """
    check_fixpoint(ir, live)
    per_stmt: dict[int, Fraction] = {}
    for s in ir.stmts:
        total = Fraction(0)
        for name in live.live_in[s.stmt_id] | live.live_out[s.stmt_id]:
            total += register_footprint(ir.symbol_table[name], mode)
        per_stmt[s.stmt_id] = total

    all_defs: set[str] = set()
    all_uses: set[str] = set()
    for s in ir.stmts:
        all_defs |= s.defs
        all_uses |= s.uses
    dead = frozenset(all_defs - all_uses)

    if per_stmt:
        pressure = max(per_stmt.values())
        hot = min(i for i, p in per_stmt.items() if p == pressure)
        hot_stmt = ir.stmt(hot)
        live_at_hot = frozenset(
            (name, register_footprint(ir.symbol_table[name], mode))
            for name in live.live_in[hot] | live.live_out[hot]
        )
        return PressureReport(
            pressure=pressure,
            hot_stmt=hot,
            per_stmt_pressure=per_stmt,
            live_at_hot=live_at_hot,
            dead_defs=dead,
            spills_predicted=pressure > REGISTER_BUDGET,
            hot_line=hot_stmt.line,
            hot_text=hot_stmt.text,
            mode=mode,
        )
    return PressureReport(
        pressure=Fraction(0),
        hot_stmt=None,
        per_stmt_pressure={},
        live_at_hot=frozenset(),
        dead_defs=dead,
        spills_predicted=False,
        mode=mode,
    )


def analyze_source(source: str, signature: str, mode: str = "literal") -> PressureReport:
    """Parse, solve, and report in one call; the CLI and optimizer prompt path."""
    from .parser import parse_function

    ir = parse_function(source, signature)
    live = solve_liveness(ir)
    return compute_pressure(ir, live, mode)
