"""Shared test helpers: synthetic IR construction and random CFG generation."""

from __future__ import annotations

import random

import pytest

from vecport.corpus import bundled_corpus_dir, load_corpus, validate_case
from vecport.parser import BasicBlock, Cfg, FunctionIr, Stmt
from vecport.rvv_types import parse_vector_type


def make_ir(
    block_specs: list[list[tuple[set[str], set[str]]]],
    edges: dict[int, tuple[int, ...]],
    symbols: dict[str, str],
    entry: int = 0,
) -> FunctionIr:
    """Synthetic FunctionIr from per-block (uses, defs) statement specs.

    ``block_specs[k]`` holds block k's statements; the exit block is appended
    automatically as block ``len(block_specs)`` and must appear in ``edges``
    as a target where paths leave the function.
    """
    blocks = []
    stmts = []
    for block_id, spec in enumerate(block_specs):
        ids = []
        for uses, defs in spec:
            sid = len(stmts)
            ids.append(sid)
            stmts.append(
                Stmt(
                    stmt_id=sid,
                    kind="assign",
                    uses=frozenset(uses),
                    defs=frozenset(defs),
                    line=sid + 1,
                    col=1,
                    text=f"s{sid}",
                )
            )
        blocks.append(BasicBlock(block_id, ids))
    exit_id = len(block_specs)
    blocks.append(BasicBlock(exit_id, []))
    succs = {b.block_id: tuple(edges.get(b.block_id, ())) for b in blocks}
    succs[exit_id] = ()
    cfg = Cfg(blocks=blocks, succs=succs, entry=entry, exit=exit_id)
    table = {name: parse_vector_type(tname) for name, tname in symbols.items()}
    assert all(v is not None for v in table.values())
    return FunctionIr(
        name="synthetic",
        signature="void synthetic(void)",
        params=[],
        symbol_table=table,
        stmts=stmts,
        cfg=cfg,
        structure=None,
    )


def straight_line_ir(
    stmt_specs: list[tuple[set[str], set[str]]], symbols: dict[str, str]
) -> FunctionIr:
    return make_ir([stmt_specs], {0: (1,)}, symbols)


RANDOM_TYPES = ("vint32mf2_t", "vint32m1_t", "vint32m2_t", "vint32m4_t")


def random_ir(rng: random.Random) -> FunctionIr:
    """Random CFG within the property-test envelope: at most 6 blocks, 12
    statements, 6 variables, mixed LMUL from {1/2, 1, 2, 4}, block
    out-degree at most 2, everything reachable from the entry chain."""
    n_blocks = rng.randint(1, 6)
    n_vars = rng.randint(1, 6)
    names = [f"v{i}" for i in range(n_vars)]
    symbols = {v: rng.choice(RANDOM_TYPES) for v in names}

    n_stmts = rng.randint(0, 12)
    per_block: list[list[tuple[set[str], set[str]]]] = [[] for _ in range(n_blocks)]
    for _ in range(n_stmts):
        uses = set(rng.sample(names, k=rng.randint(0, min(2, n_vars))))
        defs = set(rng.sample(names, k=rng.randint(0, 1)))
        per_block[rng.randrange(n_blocks)].append((uses, defs))

    exit_id = n_blocks
    edges: dict[int, list[int]] = {b: [] for b in range(n_blocks)}
    for b in range(n_blocks - 1):
        edges[b].append(b + 1)
    edges[n_blocks - 1].append(exit_id)
    for _ in range(rng.randint(0, 3)):
        src = rng.randrange(n_blocks)
        if len(edges[src]) >= 2:
            continue
        dst = rng.randrange(n_blocks + 1)  # may target the exit
        if dst not in edges[src]:
            edges[src].append(dst)
    return make_ir(per_block, {b: tuple(v) for b, v in edges.items()}, symbols)


@pytest.fixture(scope="session")
def bundled_cases():
    listing = load_corpus(bundled_corpus_dir())
    assert not listing.problems
    return {m.case_id: validate_case(m) for m in listing}


@pytest.fixture(scope="session")
def vec_add_case(bundled_cases):
    return bundled_cases["vec_add"]
