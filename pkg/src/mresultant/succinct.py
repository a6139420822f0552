"""
Matrices and digraphs given by entry oracles instead of explicit storage.

An oracle is any pure callable ``(row, col) -> entry``; dimensions are
plain Python ints, so they may be astronomically large.  Nothing here
materializes a matrix unless asked to through a guarded call.
"""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass, field
from typing import Callable, Optional

from .errors import (
    DimensionGuardExceeded,
    FormatError,
    GuardExceeded,
    NondeterministicMachine,
    OutDegreeViolation,
    SpaceGuardExceeded,
)


@dataclass(frozen=True)
class EntryOracleMatrix:
    rows: int
    cols: int
    oracle: Callable[[int, int], object]

    def __call__(self, i: int, j: int):
        return self.oracle(i, j)

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols


@dataclass(frozen=True)
class ImplicitDigraph:
    """Vertices 0..num_vertices-1; ``arc(u, v)`` is 1 when u -> v is an arc."""

    num_vertices: int
    arc: Callable[[int, int], int]
    s: int
    t: int

    def adjacency(self) -> EntryOracleMatrix:
        return EntryOracleMatrix(self.num_vertices, self.num_vertices, self.arc)


def dense_from_oracle(M: EntryOracleMatrix, guard: int = 10**6) -> list:
    if M.rows * M.cols > guard:
        raise DimensionGuardExceeded(f"{M.rows}x{M.cols} exceeds guard {guard}")
    return [[M(i, j) for j in range(M.cols)] for i in range(M.rows)]


def digraph_from_arcs(num_vertices: int, arcs, s: int, t: int) -> ImplicitDigraph:
    """Convenience wrapper: an explicit arc set behind the oracle interface."""
    arcset = frozenset(arcs)
    return ImplicitDigraph(num_vertices, lambda u, v: int((u, v) in arcset), s, t)


def forest_gadget(F: ImplicitDigraph, check_limit: int = 64) -> EntryOracleMatrix:
    """Adjacency oracle of F plus the arc t -> s plus a loop on every vertex other than s and t.

    For a forest F (out-degree <= 1, no directed cycle) the only cycle cover
    uses the s-t path closed by t -> s, so the determinant is 0 without a
    path and (-1)^(L-1) with a path through L vertices.
    """
    s, t = F.s, F.t
    if s == t:
        raise ValueError("forest gadget needs distinct s and t")
    if F.num_vertices <= check_limit:
        for u in range(F.num_vertices):
            if sum(F.arc(u, v) for v in range(F.num_vertices)) > 1:
                raise OutDegreeViolation(f"vertex {u} has more than one out-arc")

    def entry(u: int, v: int) -> int:
        if u == t and v == s:
            return 1
        if u == v and u != s and u != t:
            return 1
        return 1 if F.arc(u, v) else 0

    return EntryOracleMatrix(F.num_vertices, F.num_vertices, entry)


def permutation_sign(perm) -> int:
    seen = [False] * len(perm)
    sign = 1
    for i in range(len(perm)):
        if not seen[i]:
            j, length = i, 0
            while not seen[j]:
                seen[j] = True
                j = perm[j]
                length += 1
            if length % 2 == 0:
                sign = -sign
    return sign


def cycle_covers(M) -> list:
    """All permutations sigma with M[i][sigma(i)] = 1 for every i (backtracking)."""
    n = len(M)
    allowed = [[j for j in range(n) if M[i][j]] for i in range(n)]
    covers, perm, used = [], [0] * n, [False] * n

    def extend(i):
        if i == n:
            covers.append(tuple(perm))
            return
        for j in allowed[i]:
            if not used[j]:
                used[j] = True
                perm[i] = j
                extend(i + 1)
                used[j] = False

    extend(0)
    return covers


def cycle_cover_determinant(M, max_dim: int = 10) -> int:
    """Sum of the signatures of all cycle covers of the digraph with 0/1 adjacency M."""
    n = len(M)
    if n > max_dim:
        raise DimensionGuardExceeded(f"dimension {n} exceeds {max_dim}")
    for row in M:
        if len(row) != n or any(x not in (0, 1) for x in row):
            raise ValueError("expected a square 0/1 matrix")
    return sum(permutation_sign(c) for c in cycle_covers(M))


def st_path(G: ImplicitDigraph, guard: int = 10**5) -> Optional[list]:
    """Vertices of an s-t path found by BFS through the arc oracle, or None."""
    V = G.num_vertices
    if V > guard:
        raise GuardExceeded(f"{V} vertices exceeds guard {guard}")
    parent = {G.s: None}
    frontier = deque([G.s])
    while frontier:
        u = frontier.popleft()
        if u == G.t:
            path = []
            while u is not None:
                path.append(u)
                u = parent[u]
            return path[::-1]
        for v in range(V):
            if v not in parent and G.arc(u, v):
                parent[v] = u
                frontier.append(v)
    return None


def st_path_exists(G: ImplicitDigraph, guard: int = 10**5) -> bool:
    return st_path(G, guard) is not None


def random_forest(num_vertices: int, rng: random.Random, arc_prob: float = 0.7) -> tuple:
    """Random out-degree <= 1 acyclic digraph as ``(arcs, s, t)``.

    Arcs always point to a vertex earlier in a random topological order,
    which rules out directed cycles.
    """
    order = list(range(num_vertices))
    rng.shuffle(order)
    arcs = []
    for pos in range(1, num_vertices):
        if rng.random() < arc_prob:
            arcs.append((order[pos], order[rng.randrange(pos)]))
    s, t = rng.sample(range(num_vertices), 2)
    return arcs, s, t


# ---------------------------------------------------------------------------
# toy Turing machines and their configuration graphs
# ---------------------------------------------------------------------------

MOVES = {"L": -1, "R": 1, "S": 0}


@dataclass(frozen=True)
class ToyMachine:
    """Deterministic single-tape machine; ``alphabet[0]`` is the blank symbol."""

    states: tuple
    alphabet: tuple
    start: str
    accept: frozenset
    transitions: dict = field(hash=False)

    def __post_init__(self):
        if self.start not in self.states:
            raise ValueError(f"unknown start state {self.start!r}")
        if self.start in self.accept:
            raise ValueError("the start state must not be accepting")
        for (q, a), (q2, b, mv) in self.transitions.items():
            if q not in self.states or q2 not in self.states:
                raise ValueError(f"unknown state in transition from {q!r}")
            if a not in self.alphabet or b not in self.alphabet:
                raise ValueError(f"unknown symbol in transition from {q!r}")
            if mv not in MOVES:
                raise ValueError(f"bad move {mv!r}")

    @classmethod
    def from_rules(cls, states, alphabet, start, accept, rules) -> "ToyMachine":
        """Build from ``(state, read, new_state, write, move)`` rules, rejecting duplicates."""
        table = {}
        for q, a, q2, b, mv in rules:
            if (q, a) in table:
                raise NondeterministicMachine(f"two transitions for ({q}, {a})")
            table[(q, a)] = (q2, b, mv)
        return cls(tuple(states), tuple(alphabet), start, frozenset(accept), table)


def parse_machine(text: str) -> ToyMachine:
    """Plain-text transition table.

    Lines: ``states q0 q1 ...``, ``alphabet _ 0 1`` (blank first),
    ``start q0``, ``accept qa ...`` and rules ``q0 1 -> q1 0 R``.
    ``#`` starts a comment.
    """
    header = {}
    rules = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        words = line.split()
        if words[0] in ("states", "alphabet", "start", "accept"):
            header[words[0]] = words[1:]
        elif len(words) == 6 and words[2] == "->":
            q, a, _, q2, b, mv = words
            rules.append((q, a, q2, b, mv))
        else:
            raise FormatError(f"cannot parse {raw.strip()!r}", lineno)
    for key in ("states", "alphabet", "start"):
        if key not in header:
            raise FormatError(f"missing '{key}' line")
    try:
        return ToyMachine.from_rules(
            header["states"], header["alphabet"], header["start"][0], header.get("accept", []), rules
        )
    except NondeterministicMachine:
        raise
    except ValueError as exc:
        raise FormatError(str(exc)) from exc


@dataclass(frozen=True)
class ConfigGraph:
    """Time-layered configuration graph; see ``config_graph``."""

    machine: ToyMachine
    space: int
    max_steps: int
    graph: ImplicitDigraph

    @property
    def num_configs(self) -> int:
        m = self.machine
        return len(m.states) * self.space * len(m.alphabet) ** self.space

    @property
    def accept_vertex(self) -> int:
        return self.graph.t

    def encode(self, step: int, state: str, head: int, tape) -> int:
        m = self.machine
        k = len(m.alphabet)
        code = 0
        for j in reversed(range(self.space)):
            code = code * k + m.alphabet.index(tape[j])
        cfg = (m.states.index(state) * self.space + head) * k ** self.space + code
        return step * self.num_configs + cfg

    def decode(self, vertex: int):
        """(step, state, head, tape) for a layered vertex; None for the accept vertex."""
        if vertex == self.accept_vertex:
            return None
        m = self.machine
        k = len(m.alphabet)
        step, cfg = divmod(vertex, self.num_configs)
        rest, code = divmod(cfg, k ** self.space)
        qi, head = divmod(rest, self.space)
        tape = []
        for _ in range(self.space):
            code, c = divmod(code, k)
            tape.append(m.alphabet[c])
        return step, m.states[qi], head, tuple(tape)

    def successor(self, vertex: int) -> Optional[int]:
        dec = self.decode(vertex)
        if dec is None:
            return None
        step, q, head, tape = dec
        if step >= self.max_steps or q in self.machine.accept:
            return None
        move = self.machine.transitions.get((q, tape[head]))
        if move is None:
            return None
        q2, write, mv = move
        head2 = head + MOVES[mv]
        if not 0 <= head2 < self.space:
            return None
        if q2 in self.machine.accept:
            return self.accept_vertex
        tape2 = tape[:head] + (write,) + tape[head + 1:]
        return self.encode(step + 1, q2, head2, tape2)


def config_graph(machine: ToyMachine, word: str, space: int, max_steps: Optional[int] = None,
                 guard: int = 10**6) -> ConfigGraph:
    """Configuration graph of ``machine`` on ``word`` with ``space`` tape cells.

    Vertex ``step * C + cfg`` is configuration ``cfg`` reached after ``step``
    steps, where cfg packs (state index, head, tape) in that radix order and
    tape cell 0 is the least significant digit.  The last vertex, index
    ``(max_steps + 1) * C``, stands for every accepting configuration.
    Layering by step count makes the graph acyclic; configurations at
    ``max_steps`` (default C, enough for any halting run) have no out-arc.
    """
    if len(word) > space:
        raise SpaceGuardExceeded(f"input of length {len(word)} does not fit in {space} cells")
    for ch in word:
        if ch not in machine.alphabet:
            raise ValueError(f"symbol {ch!r} not in alphabet")
    C = len(machine.states) * space * len(machine.alphabet) ** space
    if max_steps is None:
        max_steps = C
    V = (max_steps + 1) * C + 1
    if V > guard:
        raise SpaceGuardExceeded(f"{V} vertices exceeds guard {guard}")
    tape0 = tuple(word) + (machine.alphabet[0],) * (space - len(word))
    holder: dict = {}

    def arc(u: int, v: int) -> int:
        return int(holder["cg"].successor(u) == v)

    start = (machine.states.index(machine.start) * space) * len(machine.alphabet) ** space
    code = 0
    for j in reversed(range(space)):
        code = code * len(machine.alphabet) + machine.alphabet.index(tape0[j])
    graph = ImplicitDigraph(V, arc, start + code, V - 1)
    cg = ConfigGraph(machine, space, max_steps, graph)
    holder["cg"] = cg
    return cg


def simulate(machine: ToyMachine, word: str, space: int, max_steps: int) -> Optional[int]:
    """Number of steps until acceptance by direct simulation, or None."""
    tape = list(word) + [machine.alphabet[0]] * (space - len(word))
    q, head = machine.start, 0
    for step in range(max_steps + 1):
        if q in machine.accept:
            return step
        if step == max_steps:
            return None
        move = machine.transitions.get((q, tape[head]))
        if move is None:
            return None
        q, tape[head], mv = move
        head += MOVES[mv]
        if not 0 <= head < space:
            return None
    return None
