"""Statement-level front end for RVV intrinsic C functions.

Parses one function out of a C translation unit into a flat statement list
with vector use/def sets, plus a control-flow graph of basic blocks. The
supported subset is what intrinsic kernels actually need: declarations,
assignments, calls, compound statements, if/else, for, while, do-while,
break/continue, return. goto and switch are rejected with a located
diagnostic rather than analyzed wrongly.

Scalar and pointer-typed values are invisible to the analysis: use/def sets
contain only names with a vector type in the function's symbol table, so a
``vsetvl`` result or a pointer bump contributes nothing.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from .errors import AnalysisError, ParseError
from .rvv_types import VectorType, parse_vector_type

STMT_KINDS = ("decl", "assign", "call", "return", "scalar_other")

_KEYWORDS = {
    "if", "else", "while", "for", "do", "return", "break", "continue",
    "goto", "switch", "case", "default", "sizeof", "struct", "union", "enum",
    "typedef", "static", "const", "volatile", "register", "inline", "extern",
    "restrict", "__restrict", "__restrict__", "__inline", "__inline__",
}

_QUALIFIERS = {
    "const", "static", "volatile", "register", "inline", "extern",
    "restrict", "__restrict", "__restrict__", "__inline", "__inline__",
    "unsigned", "signed",
}

_SCALAR_TYPE_WORDS = {
    "void", "char", "short", "int", "long", "float", "double", "_Bool", "bool",
    "unsigned", "signed", "size_t", "ptrdiff_t", "ssize_t", "intptr_t",
    "uintptr_t", "wchar_t",
}
_SCALAR_TYPE_WORDS |= {f"{s}int{w}_t" for s in ("", "u") for w in (8, 16, 32, 64)}
_SCALAR_TYPE_WORDS |= {f"{s}int_fast{w}_t" for s in ("", "u") for w in (8, 16, 32, 64)}
_SCALAR_TYPE_WORDS |= {f"{s}int_least{w}_t" for s in ("", "u") for w in (8, 16, 32, 64)}

# Multi-character operators first so the master regex prefers them.
_OPERATORS = [
    "<<=", ">>=", "...", "->", "++", "--", "<<", ">>", "<=", ">=", "==", "!=",
    "&&", "||", "+=", "-=", "*=", "/=", "%=", "&=", "|=", "^=",
]
_ASSIGN_OPS = {"=", "+=", "-=", "*=", "/=", "%=", "&=", "|=", "^=", "<<=", ">>="}

_TOKEN_RE = re.compile(
    r"""
    (?P<id>[A-Za-z_]\w*)
  | (?P<num>0[xX][0-9a-fA-F]+[uUlL]*|(?:\d+\.\d*|\.\d+|\d+)(?:[eE][+-]?\d+)?[fFuUlL]*)
  | (?P<str>"(?:\\.|[^"\\])*"|'(?:\\.|[^'\\])*')
  | (?P<op>""" + "|".join(re.escape(op) for op in _OPERATORS) + r""")
  | (?P<punct>[{}()\[\];,\.\+\-\*/%<>=!&\|\^~\?:])
    """,
    re.VERBOSE,
)


@dataclass(frozen=True)
class Token:
    text: str
    kind: str  # id | num | str | punct
    line: int
    col: int


def strip_comments_and_directives(source: str) -> str:
    """Blank out comments and preprocessor lines, preserving line structure."""
    out = []
    i = 0
    n = len(source)
    at_line_start = True
    while i < n:
        c = source[i]
        if at_line_start and c in " \t":
            out.append(c)
            i += 1
            continue
        if at_line_start and c == "#":
            # Directive runs to end of line, honoring backslash continuations.
            while i < n:
                if source[i] == "\n":
                    j = i - 1
                    while j >= 0 and source[j] in " \t":
                        j -= 1
                    if j >= 0 and source[j] == "\\":
                        out.append("\n")
                        i += 1
                        continue
                    break
                out.append(" " if source[i] != "\n" else "\n")
                i += 1
            continue
        at_line_start = False
        if c == "\n":
            out.append("\n")
            at_line_start = True
            i += 1
        elif source.startswith("//", i):
            while i < n and source[i] != "\n":
                out.append(" ")
                i += 1
        elif source.startswith("/*", i):
            end = source.find("*/", i + 2)
            if end < 0:
                raise ParseError("unterminated block comment",
                                 line=source.count("\n", 0, i) + 1)
            for k in range(i, end + 2):
                out.append("\n" if source[k] == "\n" else " ")
            i = end + 2
        elif c in "\"'":
            quote = c
            out.append(c)
            i += 1
            while i < n and source[i] != quote:
                out.append(source[i])
                if source[i] == "\\" and i + 1 < n:
                    i += 1
                    out.append(source[i])
                i += 1
            if i < n:
                out.append(source[i])
                i += 1
        else:
            out.append(c)
            i += 1
    return "".join(out)


def tokenize(source: str) -> list[Token]:
    cleaned = strip_comments_and_directives(source)
    tokens = []
    line = 1
    line_start = 0
    pos = 0
    n = len(cleaned)
    while pos < n:
        c = cleaned[pos]
        if c == "\n":
            line += 1
            pos += 1
            line_start = pos
            continue
        if c in " \t\r\f\v":
            pos += 1
            continue
        m = _TOKEN_RE.match(cleaned, pos)
        if m is None:
            raise ParseError(f"unexpected character {c!r}", line=line)
        kind = m.lastgroup
        if kind == "op":
            kind = "punct"
        tokens.append(Token(m.group(), kind, line, pos - line_start + 1))
        pos = m.end()
    return tokens


@dataclass(frozen=True)
class Stmt:
    """One statement of the analyzed function.

    ``uses``/``defs`` name vector-typed values only; both may mention the same
    name (an accumulator update reads and writes it).
    """

    stmt_id: int
    kind: str
    uses: frozenset[str]
    defs: frozenset[str]
    line: int
    col: int
    text: str


@dataclass
class BasicBlock:
    block_id: int
    stmt_ids: list[int] = field(default_factory=list)


@dataclass
class Cfg:
    blocks: list[BasicBlock]
    succs: dict[int, tuple[int, ...]]
    entry: int
    exit: int

    def block(self, block_id: int) -> BasicBlock:
        for b in self.blocks:
            if b.block_id == block_id:
                return b
        raise KeyError(block_id)

    def successors(self, block_id: int) -> tuple[int, ...]:
        return self.succs.get(block_id, ())


# ---------------------------------------------------------------------------
# Structure tree (the parser's view of nesting; the CFG builder consumes it).


@dataclass
class RawStmt:
    kind: str
    text: str
    line: int
    col: int
    use_candidates: set[str] = field(default_factory=set)
    decl_names: set[str] = field(default_factory=set)  # vector names declared here
    decl_defs: set[str] = field(default_factory=set)   # subset with an initializer
    lhs_name: str | None = None
    stmt_id: int | None = None  # assigned during CFG construction


@dataclass
class LeafNode:
    stmt: RawStmt


@dataclass
class ReturnNode:
    stmt: RawStmt


@dataclass
class BreakNode:
    line: int


@dataclass
class ContinueNode:
    line: int


@dataclass
class BlockNode:
    items: list = field(default_factory=list)


@dataclass
class IfNode:
    cond: RawStmt
    then: BlockNode
    orelse: BlockNode | None


@dataclass
class WhileNode:
    cond: RawStmt
    body: BlockNode


@dataclass
class DoWhileNode:
    body: BlockNode
    cond: RawStmt


@dataclass
class ForNode:
    init: RawStmt | None
    cond: RawStmt | None
    step: RawStmt | None
    body: BlockNode


@dataclass
class FunctionIr:
    name: str
    signature: str
    params: list[tuple[str, str]]  # (name, declared type text)
    symbol_table: dict[str, VectorType]
    stmts: list[Stmt]
    cfg: Cfg
    structure: BlockNode | None = None

    def stmt(self, stmt_id: int) -> Stmt:
        return self.stmts[stmt_id]


# ---------------------------------------------------------------------------
# Expression-level helpers.


def _identifier_candidates(tokens: list[Token]) -> set[str]:
    """Identifiers that could name values: skips callees, members, keywords."""
    names = set()
    for i, tok in enumerate(tokens):
        if tok.kind != "id" or tok.text in _KEYWORDS:
            continue
        if i + 1 < len(tokens) and tokens[i + 1].text == "(":
            continue
        if i > 0 and tokens[i - 1].text in (".", "->"):
            continue
        names.add(tok.text)
    return names


def _top_level_assign_index(tokens: list[Token]) -> int | None:
    depth = 0
    for i, tok in enumerate(tokens):
        if tok.text in "([":
            depth += 1
        elif tok.text in ")]":
            depth -= 1
        elif depth == 0 and tok.text in _ASSIGN_OPS and tok.kind == "punct":
            return i
    return None


def _split_top_level(tokens: list[Token], sep: str) -> list[list[Token]]:
    parts: list[list[Token]] = [[]]
    depth = 0
    for tok in tokens:
        if tok.text in "([{":
            depth += 1
        elif tok.text in ")]}":
            depth -= 1
        if tok.text == sep and depth == 0:
            parts.append([])
        else:
            parts[-1].append(tok)
    return parts


def _is_type_start(tokens: list[Token], i: int) -> bool:
    t = tokens[i]
    if t.kind != "id":
        return False
    if t.text in ("struct", "union", "enum"):
        return True
    if t.text in _SCALAR_TYPE_WORDS or parse_vector_type(t.text) is not None:
        return True
    return False


class _SimpleStmtParser:
    """Turns one simple statement's tokens into a RawStmt, registering decls."""

    def __init__(self, symbols: dict[str, VectorType], declared_order: list[str]):
        self.symbols = symbols
        self.declared_order = declared_order

    def parse(self, tokens: list[Token], text: str) -> RawStmt:
        line, col = tokens[0].line, tokens[0].col
        i = 0
        while i < len(tokens) and tokens[i].text in _QUALIFIERS:
            i += 1
        if i < len(tokens) and _is_type_start(tokens, i):
            return self._parse_decl(tokens, text, line, col)
        return self._parse_expr_stmt(tokens, text, line, col)

    def _parse_decl(self, tokens: list[Token], text: str, line: int, col: int) -> RawStmt:
        i = 0
        base_vec: VectorType | None = None
        saw_type_word = False
        while i < len(tokens):
            t = tokens[i]
            if t.text in _QUALIFIERS:
                i += 1
                continue
            if t.text in ("struct", "union", "enum"):
                i += 2  # tag name follows
                saw_type_word = True
                continue
            vt = parse_vector_type(t.text)
            if vt is not None:
                base_vec = vt
                saw_type_word = True
                i += 1
                continue
            if t.text in _SCALAR_TYPE_WORDS:
                saw_type_word = True
                i += 1
                continue
            break
        if not saw_type_word:
            return self._parse_expr_stmt(tokens, text, line, col)

        stmt = RawStmt(kind="decl", text=text, line=line, col=col)
        for declarator in _split_top_level(tokens[i:], ","):
            if not declarator:
                continue
            j = 0
            stars = 0
            while j < len(declarator) and declarator[j].text in ("*",) + tuple(_QUALIFIERS):
                if declarator[j].text == "*":
                    stars += 1
                j += 1
            if j >= len(declarator) or declarator[j].kind != "id":
                continue
            name = declarator[j].text
            is_array = j + 1 < len(declarator) and declarator[j + 1].text == "["
            init_tokens: list[Token] = []
            for k in range(j + 1, len(declarator)):
                if declarator[k].text == "=" and declarator[k].kind == "punct":
                    init_tokens = declarator[k + 1:]
                    break
            if base_vec is not None and stars == 0 and not is_array:
                prior = self.symbols.get(name)
                if prior is not None and prior != base_vec:
                    raise ParseError(
                        f"'{name}' redeclared with a different vector type", line=line
                    )
                self.symbols[name] = base_vec
                self.declared_order.append(name)
                stmt.decl_names.add(name)
                if init_tokens:
                    stmt.decl_defs.add(name)
            if init_tokens:
                stmt.use_candidates |= _identifier_candidates(init_tokens)
        return stmt

    def _parse_expr_stmt(self, tokens: list[Token], text: str, line: int, col: int) -> RawStmt:
        stmt = RawStmt(kind="scalar_other", text=text, line=line, col=col)
        k = _top_level_assign_index(tokens)
        if k is not None:
            lhs, rhs = tokens[:k], tokens[k + 1:]
            stmt.kind = "assign"
            if len(lhs) == 1 and lhs[0].kind == "id":
                stmt.lhs_name = lhs[0].text
                if tokens[k].text != "=":  # compound op reads the target too
                    stmt.use_candidates.add(lhs[0].text)
            else:
                stmt.use_candidates |= _identifier_candidates(lhs)
            stmt.use_candidates |= _identifier_candidates(rhs)
        else:
            stmt.use_candidates |= _identifier_candidates(tokens)
            has_call = any(
                tok.kind == "id"
                and tok.text not in _KEYWORDS
                and idx + 1 < len(tokens)
                and tokens[idx + 1].text == "("
                for idx, tok in enumerate(tokens)
            )
            stmt.kind = "call" if has_call else "scalar_other"
        return stmt


# ---------------------------------------------------------------------------
# Function-body parsing.


class _BodyParser:
    def __init__(self, tokens: list[Token], source: str,
                 symbols: dict[str, VectorType]):
        self.toks = tokens
        self.pos = 0
        self.symbols = symbols
        self.declared_order: list[str] = []
        self.simple = _SimpleStmtParser(symbols, self.declared_order)
        self._source = source

    def at_end(self) -> bool:
        return self.pos >= len(self.toks)

    def peek(self) -> Token:
        if self.at_end():
            raise ParseError("unexpected end of input (unbalanced braces?)")
        return self.toks[self.pos]

    def advance(self) -> Token:
        tok = self.peek()
        self.pos += 1
        return tok

    def expect(self, text: str) -> Token:
        tok = self.peek()
        if tok.text != text:
            raise ParseError(f"expected {text!r}, found {tok.text!r}", line=tok.line)
        return self.advance()

    def _collect_until(self, stop: str) -> list[Token]:
        """Tokens up to an unnested ``stop``; consumes the stop token.

        Braces nest too: mid-statement they can only be initializer lists or
        compound literals, never block structure.
        """
        out: list[Token] = []
        depth = 0
        while True:
            tok = self.peek()
            if tok.text in "([{":
                depth += 1
            elif tok.text in ")]}":
                if depth == 0 and tok.text == stop:
                    self.advance()
                    return out
                if depth == 0:
                    raise ParseError(
                        f"expected {stop!r} before {tok.text!r}", line=tok.line
                    )
                depth -= 1
            elif tok.text == stop and depth == 0:
                self.advance()
                return out
            out.append(self.advance())

    def _text_of(self, tokens: list[Token]) -> str:
        return _render_tokens(tokens)

    def parse_block(self) -> BlockNode:
        self.expect("{")
        node = BlockNode()
        while self.peek().text != "}":
            item = self.parse_statement()
            if item is not None:
                node.items.append(item)
        self.expect("}")
        return node

    def _parse_body_or_single(self) -> BlockNode:
        if self.peek().text == "{":
            return self.parse_block()
        node = BlockNode()
        item = self.parse_statement()
        if item is not None:
            node.items.append(item)
        return node

    def _cond_stmt(self, tokens: list[Token], line: int, col: int) -> RawStmt:
        stmt = RawStmt(kind="scalar_other", text=self._text_of(tokens), line=line, col=col)
        stmt.use_candidates |= _identifier_candidates(tokens)
        return stmt

    def parse_statement(self):
        tok = self.peek()
        if tok.text in ("goto", "switch"):
            raise ParseError(f"unsupported construct: {tok.text}", line=tok.line)
        if tok.text in ("case", "default"):
            raise ParseError(f"unsupported construct: {tok.text} label", line=tok.line)
        if (
            tok.kind == "id"
            and tok.text not in _KEYWORDS
            and self.pos + 1 < len(self.toks)
            and self.toks[self.pos + 1].text == ":"
        ):
            raise ParseError(f"unsupported construct: label '{tok.text}'", line=tok.line)

        if tok.text == "{":
            return self.parse_block()
        if tok.text == ";":
            self.advance()
            return None
        if tok.text == "if":
            return self._parse_if()
        if tok.text == "while":
            return self._parse_while()
        if tok.text == "do":
            return self._parse_do_while()
        if tok.text == "for":
            return self._parse_for()
        if tok.text == "return":
            line = self.advance().line
            expr = self._collect_until(";")
            stmt = RawStmt(kind="return", text="return" + (" " + self._text_of(expr) if expr else ""),
                           line=line, col=tok.col)
            stmt.use_candidates |= _identifier_candidates(expr)
            return ReturnNode(stmt)
        if tok.text == "break":
            self.advance()
            self.expect(";")
            return BreakNode(tok.line)
        if tok.text == "continue":
            self.advance()
            self.expect(";")
            return ContinueNode(tok.line)

        tokens = [self.advance()]
        tokens.extend(self._collect_until(";"))
        return LeafNode(self.simple.parse(tokens, self._text_of(tokens)))

    def _parse_if(self) -> IfNode:
        tok = self.expect("if")
        self.expect("(")
        cond = self._cond_stmt(self._collect_until(")"), tok.line, tok.col)
        then = self._parse_body_or_single()
        orelse = None
        if not self.at_end() and self.peek().text == "else":
            self.advance()
            orelse = self._parse_body_or_single()
        return IfNode(cond, then, orelse)

    def _parse_while(self) -> WhileNode:
        tok = self.expect("while")
        self.expect("(")
        cond = self._cond_stmt(self._collect_until(")"), tok.line, tok.col)
        body = self._parse_body_or_single()
        return WhileNode(cond, body)

    def _parse_do_while(self) -> DoWhileNode:
        self.expect("do")
        body = self._parse_body_or_single()
        tok = self.expect("while")
        self.expect("(")
        cond = self._cond_stmt(self._collect_until(")"), tok.line, tok.col)
        self.expect(";")
        return DoWhileNode(body, cond)

    def _parse_for(self) -> ForNode:
        tok = self.expect("for")
        self.expect("(")
        init_toks = self._collect_until(";")
        init = self.simple.parse(init_toks, self._text_of(init_toks)) if init_toks else None
        cond_toks = self._collect_until(";")
        cond = self._cond_stmt(cond_toks, tok.line, tok.col) if cond_toks else None
        step_toks = self._collect_until(")")
        step = self.simple.parse(step_toks, self._text_of(step_toks)) if step_toks else None
        body = self._parse_body_or_single()
        return ForNode(init, cond, step, body)


# ---------------------------------------------------------------------------
# CFG construction.

class _LoopCtx:
    def __init__(self):
        self.break_sources: list[int] = []
        self.continue_sources: list[int] = []


class _CfgBuilder:
    def __init__(self):
        self.block_stmts: dict[int, list[RawStmt]] = {}
        self.succs: dict[int, list[int]] = {}
        self.order: list[int] = []
        self.next_block = 0
        self.current: int | None = None
        self.loop_stack: list[_LoopCtx] = []

    def new_block(self) -> int:
        bid = self.next_block
        self.next_block += 1
        self.block_stmts[bid] = []
        self.succs[bid] = []
        self.order.append(bid)
        return bid

    def edge(self, a: int, b: int) -> None:
        if b not in self.succs[a]:
            self.succs[a].append(b)

    def ensure_current(self) -> int:
        if self.current is None:
            self.current = self.new_block()  # unreachable; pruned later
        return self.current

    def emit(self, stmt: RawStmt) -> None:
        self.block_stmts[self.ensure_current()].append(stmt)

    def walk(self, node) -> None:
        if isinstance(node, BlockNode):
            for item in node.items:
                self.walk(item)
        elif isinstance(node, LeafNode):
            self.emit(node.stmt)
        elif isinstance(node, ReturnNode):
            self.emit(node.stmt)
            self.return_sources.append(self.current)
            self.current = None
        elif isinstance(node, BreakNode):
            if not self.loop_stack:
                raise ParseError("break outside a loop", line=node.line)
            self.loop_stack[-1].break_sources.append(self.ensure_current())
            self.current = None
        elif isinstance(node, ContinueNode):
            if not self.loop_stack:
                raise ParseError("continue outside a loop", line=node.line)
            self.loop_stack[-1].continue_sources.append(self.ensure_current())
            self.current = None
        elif isinstance(node, IfNode):
            self.emit(node.cond)
            cond_block = self.current
            then_entry = self.new_block()
            self.edge(cond_block, then_entry)
            self.current = then_entry
            self.walk(node.then)
            then_end = self.current
            else_end = None
            else_present = node.orelse is not None
            if else_present:
                else_entry = self.new_block()
                self.edge(cond_block, else_entry)
                self.current = else_entry
                self.walk(node.orelse)
                else_end = self.current
            join = self.new_block()
            if not else_present:
                self.edge(cond_block, join)
            if then_end is not None:
                self.edge(then_end, join)
            if else_end is not None:
                self.edge(else_end, join)
            self.current = join
        elif isinstance(node, WhileNode):
            pre = self.ensure_current()
            header = self.new_block()
            self.edge(pre, header)
            self.current = header
            self.emit(node.cond)
            ctx = _LoopCtx()
            self.loop_stack.append(ctx)
            body_entry = self.new_block()
            self.edge(header, body_entry)
            self.current = body_entry
            self.walk(node.body)
            if self.current is not None:
                self.edge(self.current, header)
            for src in ctx.continue_sources:
                self.edge(src, header)
            self.loop_stack.pop()
            join = self.new_block()
            self.edge(header, join)
            for src in ctx.break_sources:
                self.edge(src, join)
            self.current = join
        elif isinstance(node, DoWhileNode):
            pre = self.ensure_current()
            body_entry = self.new_block()
            self.edge(pre, body_entry)
            ctx = _LoopCtx()
            self.loop_stack.append(ctx)
            self.current = body_entry
            self.walk(node.body)
            body_end = self.current
            cond_block = self.new_block()
            if body_end is not None:
                self.edge(body_end, cond_block)
            for src in ctx.continue_sources:
                self.edge(src, cond_block)
            self.current = cond_block
            self.emit(node.cond)
            self.edge(cond_block, body_entry)
            self.loop_stack.pop()
            join = self.new_block()
            self.edge(cond_block, join)
            for src in ctx.break_sources:
                self.edge(src, join)
            self.current = join
        elif isinstance(node, ForNode):
            self.ensure_current()
            if node.init is not None:
                self.emit(node.init)
            pre = self.current
            header = self.new_block()
            self.edge(pre, header)
            self.current = header
            if node.cond is not None:
                self.emit(node.cond)
            ctx = _LoopCtx()
            self.loop_stack.append(ctx)
            body_entry = self.new_block()
            self.edge(header, body_entry)
            self.current = body_entry
            self.walk(node.body)
            body_end = self.current
            if node.step is not None:
                latch = self.new_block()
                if body_end is not None:
                    self.edge(body_end, latch)
                for src in ctx.continue_sources:
                    self.edge(src, latch)
                self.current = latch
                self.emit(node.step)
                self.edge(latch, header)
            else:
                if body_end is not None:
                    self.edge(body_end, header)
                for src in ctx.continue_sources:
                    self.edge(src, header)
            self.loop_stack.pop()
            join = self.new_block()
            # Taken even with an empty condition: liveness may-analysis only
            # gains safety from a conservative loop-exit edge.
            self.edge(header, join)
            for src in ctx.break_sources:
                self.edge(src, join)
            self.current = join
        else:
            raise AssertionError(f"unknown structure node {node!r}")

    def build(self, structure: BlockNode) -> tuple[list[int], dict[int, list[int]],
                                                   dict[int, list[RawStmt]], int, int]:
        self.return_sources: list[int] = []
        entry = self.new_block()
        self.current = entry
        self.walk(structure)
        exit_block = self.new_block()
        if self.current is not None:
            self.edge(self.current, exit_block)
        for src in self.return_sources:
            self.edge(src, exit_block)
        # exit keeps no successors
        self.order.remove(exit_block)
        self.order.append(exit_block)
        return self.order, self.succs, self.block_stmts, entry, exit_block


def _prune_and_simplify(order, succs, block_stmts, entry, exit_block):
    """Drop unreachable blocks, then splice out empty single-successor blocks."""
    reachable = set()
    stack = [entry]
    while stack:
        b = stack.pop()
        if b in reachable:
            continue
        reachable.add(b)
        stack.extend(succs[b])
    order = [b for b in order if b in reachable]
    if exit_block not in reachable:
        # Function whose every path loops forever; keep exit for shape.
        order.append(exit_block)
        reachable.add(exit_block)
    succs = {b: [s for s in succs[b] if s in reachable] for b in order}

    changed = True
    while changed:
        changed = False
        for b in list(order):
            if b == exit_block or block_stmts[b]:
                continue
            if len(succs[b]) != 1:
                continue
            target = succs[b][0]
            if target == b:
                continue
            for p in order:
                if b in succs[p]:
                    succs[p] = [target if s == b else s for s in succs[p]]
                    # dedupe, preserving order
                    seen = set()
                    succs[p] = [s for s in succs[p] if not (s in seen or seen.add(s))]
            if entry == b:
                entry = target
            order.remove(b)
            del succs[b]
            changed = True
    return order, succs, entry


def build_cfg(structure: BlockNode) -> tuple[Cfg, list[RawStmt]]:
    """Lay out a parsed statement tree into basic blocks.

    Assigns dense statement ids in layout order (a for-loop's step lands after
    its body, everything else follows source order) and returns the simplified
    graph plus the ordered statements.
    """
    builder = _CfgBuilder()
    order, succs, block_stmts, entry, exit_block = builder.build(structure)
    order, succs, entry = _prune_and_simplify(order, succs, block_stmts, entry, exit_block)

    ordered_stmts: list[RawStmt] = []
    blocks = []
    old_to_new_block = {b: i for i, b in enumerate(order)}
    for b in order:
        stmts = block_stmts[b] if b != exit_block else []
        ids = []
        for raw in stmts:
            raw.stmt_id = len(ordered_stmts)
            ids.append(raw.stmt_id)
            ordered_stmts.append(raw)
        blocks.append(BasicBlock(old_to_new_block[b], ids))
    new_succs = {
        old_to_new_block[b]: tuple(old_to_new_block[s] for s in succs[b]) for b in order
    }
    cfg = Cfg(
        blocks=blocks,
        succs=new_succs,
        entry=old_to_new_block[entry],
        exit=old_to_new_block[exit_block],
    )
    return cfg, ordered_stmts


# ---------------------------------------------------------------------------
# Whole-function parsing.


def signature_name(signature: str) -> str:
    """Function name from a C declarator, or the string itself if it is a bare name."""
    sig = signature.strip()
    if "(" not in sig:
        if re.fullmatch(r"[A-Za-z_]\w*", sig):
            return sig
        raise ParseError(f"cannot read a function name from {signature!r}")
    head = sig.split("(", 1)[0]
    idents = re.findall(r"[A-Za-z_]\w*", head)
    if not idents:
        raise ParseError(f"cannot read a function name from {signature!r}")
    return idents[-1]


def validate_signature(signature: str) -> str:
    """Check that a signature is a plausible C function declarator; returns the name."""
    sig = signature.strip()
    if "(" not in sig or not sig.endswith(")"):
        raise ParseError(f"not a function declarator: {signature!r}")
    head = sig.split("(", 1)[0]
    idents = re.findall(r"[A-Za-z_]\w*", head)
    if len(idents) < 2:  # needs at least a return type and a name
        raise ParseError(f"not a function declarator: {signature!r}")
    return idents[-1]


def _find_function(tokens: list[Token], name: str) -> tuple[int, int, int]:
    """(signature start, body '{' index, params '(' index) of a top-level definition."""
    depth = 0
    sig_start = 0
    i = 0
    while i < len(tokens):
        tok = tokens[i]
        if tok.text == "{":
            depth += 1
        elif tok.text == "}":
            depth -= 1
            if depth == 0:
                sig_start = i + 1
        elif tok.text == ";" and depth == 0:
            sig_start = i + 1
        elif (
            depth == 0
            and tok.kind == "id"
            and tok.text == name
            and i + 1 < len(tokens)
            and tokens[i + 1].text == "("
        ):
            j = i + 1
            pdepth = 0
            while j < len(tokens):
                if tokens[j].text == "(":
                    pdepth += 1
                elif tokens[j].text == ")":
                    pdepth -= 1
                    if pdepth == 0:
                        break
                j += 1
            if j + 1 < len(tokens) and tokens[j + 1].text == "{":
                return sig_start, j + 1, i + 1
            i = j  # prototype or call; skip past the parens
        i += 1
    raise ParseError(f"function '{name}' not found")


def _parse_params(tokens: list[Token]) -> tuple[list[tuple[str, str]], dict[str, VectorType]]:
    params: list[tuple[str, str]] = []
    vec_syms: dict[str, VectorType] = {}
    if not tokens or (len(tokens) == 1 and tokens[0].text == "void"):
        return params, vec_syms
    for part in _split_top_level(tokens, ","):
        if not part:
            continue
        name_tok = None
        for tok in reversed(part):
            if tok.kind == "id" and tok.text not in _QUALIFIERS:
                name_tok = tok
                break
        if name_tok is None:
            continue
        type_text = " ".join(t.text for t in part if t is not name_tok)
        params.append((name_tok.text, type_text))
        has_star = any(t.text == "*" for t in part)
        for tok in part:
            vt = parse_vector_type(tok.text)
            if vt is not None and not has_star and tok is not name_tok:
                vec_syms[name_tok.text] = vt
                break
    return params, vec_syms


def _finalize_stmts(raw_stmts: list[RawStmt], symbols: dict[str, VectorType],
                    param_names: set[str]) -> list[Stmt]:
    declared = {n for n in param_names if n in symbols}
    final = []
    for raw in raw_stmts:
        uses = frozenset(n for n in raw.use_candidates if n in symbols)
        defs = set(raw.decl_defs)
        if raw.lhs_name is not None and raw.lhs_name in symbols:
            defs.add(raw.lhs_name)
        for n in sorted(uses | defs):
            if n not in declared and n not in raw.decl_names:
                raise AnalysisError(
                    f"vector value '{n}' referenced before its declaration (line {raw.line})"
                )
        declared |= raw.decl_names
        final.append(
            Stmt(
                stmt_id=raw.stmt_id,
                kind=raw.kind,
                uses=uses,
                defs=frozenset(defs),
                line=raw.line,
                col=raw.col,
                text=raw.text,
            )
        )
    return final


def parse_function(source: str, signature: str) -> FunctionIr:
    """Parse the function matching ``signature`` (a declarator or bare name).

    Statements come out in source layout order; declarations with initializers
    carry the declared name in their def set. Unsupported constructs (goto,
    switch, labels) raise ParseError naming the construct and line.
    """
    name = signature_name(signature)
    tokens = tokenize(source)
    sig_start, body_open, paren_open = _find_function(tokens, name)

    sig_tokens = tokens[sig_start:body_open]
    sig_text = _render_tokens(sig_tokens)
    params_tokens = tokens[paren_open + 1:_matching_paren(tokens, paren_open)]
    params, symbols = _parse_params(params_tokens)

    body_tokens = _body_slice(tokens, body_open)
    body = _BodyParser(body_tokens, source, symbols)
    structure = body.parse_block()
    if not body.at_end():
        tok = body.peek()
        raise ParseError(f"unexpected {tok.text!r} after function body", line=tok.line)

    cfg, raw_stmts = build_cfg(structure)
    stmts = _finalize_stmts(raw_stmts, symbols, {p for p, _ in params})
    ir = FunctionIr(
        name=name,
        signature=sig_text,
        params=params,
        symbol_table=symbols,
        stmts=stmts,
        cfg=cfg,
        structure=structure,
    )
    return ir


def _matching_paren(tokens: list[Token], open_index: int) -> int:
    depth = 0
    for i in range(open_index, len(tokens)):
        if tokens[i].text == "(":
            depth += 1
        elif tokens[i].text == ")":
            depth -= 1
            if depth == 0:
                return i
    raise ParseError("unbalanced parentheses", line=tokens[open_index].line)


def _body_slice(tokens: list[Token], body_open: int) -> list[Token]:
    depth = 0
    for i in range(body_open, len(tokens)):
        if tokens[i].text == "{":
            depth += 1
        elif tokens[i].text == "}":
            depth -= 1
            if depth == 0:
                return tokens[body_open:i + 1]
    raise ParseError("unbalanced braces in function body", line=tokens[body_open].line)


_NO_SPACE_AFTER = {"(", "[", ".", "->", "!", "~", "++", "--"}
_NO_SPACE_BEFORE = {")", "]", ",", ";", ".", "->", "++", "--"}


def _render_tokens(tokens: list[Token]) -> str:
    out = []
    for i, tok in enumerate(tokens):
        if i and _needs_space(tokens[i - 1], tok):
            out.append(" ")
        out.append(tok.text)
    return "".join(out)


def _needs_space(prev: Token, cur: Token) -> bool:
    if prev.text in _NO_SPACE_AFTER:
        return False
    if cur.text in _NO_SPACE_BEFORE:
        return False
    if cur.text in ("(", "[") and prev.kind == "id":
        return False
    if prev.text == "*" and cur.kind == "id":
        return False
    return True


def extract_use_def(stmt, symbols: dict[str, VectorType]) -> tuple[set[str], set[str]]:
    """USE/DEF sets of one statement, restricted to vector-typed names.

    Accepts a Stmt or raw statement text (trailing ';' optional). Identifiers
    that resolve through ``symbols`` participate, including mask and
    tail/merge operands of masked intrinsic forms; everything else is scalar
    and invisible, so a vsetvl result or pointer arithmetic contributes
    nothing. A declaration introduces its own name, vector-typed or not.
    """
    text = stmt.text if isinstance(stmt, Stmt) else str(stmt)
    text = text.strip().rstrip(";")
    if not text:
        return set(), set()
    tokens = tokenize(text)
    local_syms = dict(symbols)
    parser = _SimpleStmtParser(local_syms, [])
    raw = parser.parse(tokens, text)
    uses = {n for n in raw.use_candidates if n in local_syms}
    defs = set(raw.decl_defs)
    if raw.lhs_name is not None and raw.lhs_name in local_syms:
        defs.add(raw.lhs_name)
    return uses, defs


# ---------------------------------------------------------------------------
# Pretty-printing and debug dump.


def print_function(ir: FunctionIr) -> str:
    """Emit re-parseable C for the IR; structure and use/def sets survive a round trip."""
    if ir.structure is None:
        raise ValueError("IR was built synthetically; no statement tree to print")
    lines = [f"{ir.signature} {{"]
    _print_block(ir.structure, lines, 1)
    lines.append("}")
    return "\n".join(lines) + "\n"


def _print_block(node: BlockNode, lines: list[str], depth: int) -> None:
    pad = "    " * depth
    for item in node.items:
        if isinstance(item, LeafNode):
            if item.stmt.stmt_id is not None:
                lines.append(f"{pad}{item.stmt.text};")
        elif isinstance(item, ReturnNode):
            if item.stmt.stmt_id is not None:
                lines.append(f"{pad}{item.stmt.text};")
        elif isinstance(item, BreakNode):
            lines.append(f"{pad}break;")
        elif isinstance(item, ContinueNode):
            lines.append(f"{pad}continue;")
        elif isinstance(item, BlockNode):
            lines.append(f"{pad}{{")
            _print_block(item, lines, depth + 1)
            lines.append(f"{pad}}}")
        elif isinstance(item, IfNode):
            lines.append(f"{pad}if ({item.cond.text}) {{")
            _print_block(item.then, lines, depth + 1)
            if item.orelse is not None:
                lines.append(f"{pad}}} else {{")
                _print_block(item.orelse, lines, depth + 1)
            lines.append(f"{pad}}}")
        elif isinstance(item, WhileNode):
            lines.append(f"{pad}while ({item.cond.text}) {{")
            _print_block(item.body, lines, depth + 1)
            lines.append(f"{pad}}}")
        elif isinstance(item, DoWhileNode):
            lines.append(f"{pad}do {{")
            _print_block(item.body, lines, depth + 1)
            lines.append(f"{pad}}} while ({item.cond.text});")
        elif isinstance(item, ForNode):
            init = item.init.text if item.init else ""
            cond = item.cond.text if item.cond else ""
            step = item.step.text if item.step else ""
            lines.append(f"{pad}for ({init}; {cond}; {step}) {{")
            _print_block(item.body, lines, depth + 1)
            lines.append(f"{pad}}}")
        else:
            raise AssertionError(f"unknown node {item!r}")


def dump_ir(ir: FunctionIr) -> str:
    """Human-readable statement/CFG listing for the --dump-ir flag."""
    lines = [f"function {ir.name}"]
    lines.append("vector symbols:")
    for name in sorted(ir.symbol_table):
        lines.append(f"  {name}: {ir.symbol_table[name].name()}")
    for block in ir.cfg.blocks:
        tags = []
        if block.block_id == ir.cfg.entry:
            tags.append("entry")
        if block.block_id == ir.cfg.exit:
            tags.append("exit")
        suffix = f" ({', '.join(tags)})" if tags else ""
        succs = ", ".join(f"B{s}" for s in ir.cfg.successors(block.block_id))
        lines.append(f"B{block.block_id}{suffix} -> [{succs}]")
        for sid in block.stmt_ids:
            s = ir.stmts[sid]
            use = ", ".join(sorted(s.uses)) or "-"
            deff = ", ".join(sorted(s.defs)) or "-"
            lines.append(f"  s{sid} [{s.kind}] line {s.line}: {s.text}")
            lines.append(f"      use: {use}   def: {deff}")
    return "\n".join(lines) + "\n"
