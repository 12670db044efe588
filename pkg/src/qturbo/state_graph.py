"""State diagram of a seed transformation and its structural predicates.

The diagram has one vertex per memory state (4^m of them) and one edge per
(memory, logical, stabilizer-z) input combination. Stabilizer inputs are
restricted to {I, Z} because X-type stabilizer inputs move between coset
representatives of the same codeword, so the diagram is really that of the
effective seed.

Edges live in parallel numpy arrays in lexicographic (M, L, S^z) order;
the edges leaving a vertex therefore form one contiguous block. All cycle
and reachability work happens on the zero-physical-weight subgraph, where
every endpoint has exactly one incoming edge (a consequence of the
symplectic structure that the code asserts rather than assumes), so cycles
are found by walking unique predecessors instead of general enumeration.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

import numpy as np

from .conv_code import SeedTransformation
from .errors import ResourceBudgetError
from .gf2_symplectic import (
    PauliString,
    Subspace,
    image_bits,
    left_nullspace,
    orthogonal_complement,
    weight_bits,
)

DEFAULT_MEMORY_BUDGET = 8


@dataclass(frozen=True)
class StateDiagram:
    """Edge-list form of the state diagram; all arrays share one index."""

    seed: SeedTransformation
    src: np.ndarray
    dst: np.ndarray
    lam: np.ndarray  # logical label, bit-packed over k qubits
    sz: np.ndarray  # stabilizer z pattern, one plain bit per qubit
    phys: np.ndarray  # physical label, bit-packed over n qubits
    pweight: np.ndarray
    lweight: np.ndarray

    @property
    def n_vertices(self):
        return 4**self.seed.m

    @property
    def n_edges(self):
        return len(self.src)

    @property
    def edges_per_vertex(self):
        s = self.seed
        return 4**s.k * 2 ** (s.n - s.k)

    def out_edges(self, v):
        b = self.edges_per_vertex
        return range(v * b, (v + 1) * b)


def build_state_diagram(
    seed: SeedTransformation, max_memory_qubits: int = DEFAULT_MEMORY_BUDGET
) -> StateDiagram:
    """Enumerate every edge of the seed's state diagram.

    Refuses seeds with m > max_memory_qubits instead of silently
    truncating; the diagram has 4^m vertices.
    """
    n, k, m = seed.n, seed.k, seed.m
    if m > max_memory_qubits:
        raise ResourceBudgetError(
            f"state diagram needs 4^{m} vertices; raise the budget "
            f"(max_memory_qubits={max_memory_qubits}) to build it anyway"
        )
    n_lam = 4**k
    n_sz = 2 ** (n - k)
    ne = 4**m * n_lam * n_sz
    pmask = (1 << (2 * n)) - 1

    # z patterns expanded to bit-pair form, logical weights, once each
    zbits = []
    for z in range(n_sz):
        v = 0
        for j in range(n - k):
            if (z >> j) & 1:
                v |= 2 << (2 * j)
        zbits.append(v)
    lweights = [weight_bits(l, k) for l in range(n_lam)]

    src = np.empty(ne, dtype=np.int64)
    dst = np.empty(ne, dtype=np.int64)
    lam = np.empty(ne, dtype=np.int64)
    sz = np.empty(ne, dtype=np.int64)
    phys = np.empty(ne, dtype=np.int64)
    pweight = np.empty(ne, dtype=np.int64)
    lweight = np.empty(ne, dtype=np.int64)

    e = 0
    for mem in range(4**m):
        for l in range(n_lam):
            base = mem | (l << (2 * m))
            for z in range(n_sz):
                full = base | (zbits[z] << (2 * (m + k)))
                img = seed.u.image(full)
                p = img & pmask
                src[e] = mem
                dst[e] = img >> (2 * n)
                lam[e] = l
                sz[e] = z
                phys[e] = p
                pweight[e] = weight_bits(p, n)
                lweight[e] = lweights[l]
                e += 1
    return StateDiagram(seed, src, dst, lam, sz, phys, pweight, lweight)


# ---------------------------------------------------------------------------
# Zero-physical-weight cycles


@dataclass(frozen=True)
class ZeroCycle:
    """An elementary cycle of zero-physical-weight edges.

    vertices are in traversal order starting from the smallest label;
    edges[i] runs vertices[i] -> vertices[(i+1) % len].
    """

    vertices: tuple
    edges: tuple
    logical_weight: int


def zero_weight_cycles(d: StateDiagram) -> list:
    """All elementary cycles in the zero-physical-weight subgraph.

    Every target of a zero-weight edge has exactly one zero-weight
    in-edge, so following predecessors from each target finds every
    cycle in linear time.
    """
    zero = np.flatnonzero(d.pweight == 0).tolist()
    pred = {}
    for e in zero:
        v = int(d.dst[e])
        if v in pred:
            raise AssertionError(
                f"memory state {v} has two zero-weight in-edges; "
                "the seed matrix is not symplectic"
            )
        pred[v] = e

    color = {}
    cycles = []
    for start in sorted(pred):
        if start in color:
            continue
        path = []
        v = start
        # walk predecessors; a vertex without a zero-weight in-edge ends
        # the chain (only edge targets are guaranteed one)
        while v not in color and v in pred:
            color[v] = 1
            path.append(v)
            v = int(d.src[pred[v]])
        if color.get(v) == 1:
            # v recurred inside this walk: the tail is a backward cycle
            back = path[path.index(v) :]
            verts = [back[0]] + back[:0:-1]
            j = verts.index(min(verts))
            verts = verts[j:] + verts[:j]
            p = len(verts)
            edges = tuple(pred[verts[(i + 1) % p]] for i in range(p))
            lw = sum(int(d.lweight[e]) for e in edges)
            cycles.append(ZeroCycle(tuple(verts), edges, lw))
        for u in path:
            color[u] = 2
    cycles.sort(key=lambda c: c.vertices[0])
    return cycles


def _cycle_structure(d: StateDiagram):
    """(cycles, vertex -> its cycle's logical weight, set of cycle edges)."""
    cycles = zero_weight_cycles(d)
    weight_at = {}
    cycle_edges = set()
    for c in cycles:
        for v in c.vertices:
            weight_at[v] = c.logical_weight
        cycle_edges.update(c.edges)
    return cycles, weight_at, cycle_edges


# ---------------------------------------------------------------------------
# Predicates


def is_non_catastrophic(d: StateDiagram) -> bool:
    """True iff every zero-physical-weight cycle has logical weight 0."""
    return all(c.logical_weight == 0 for c in zero_weight_cycles(d))


def is_completely_non_catastrophic(d: StateDiagram) -> bool:
    """True iff the identity self-loop is the only zero-weight cycle."""
    cycles = zero_weight_cycles(d)
    return len(cycles) == 1 and cycles[0].vertices == (0,)


def is_recursive(d: StateDiagram) -> bool:
    """True iff no logical-weight-1 impulse response has finite weight.

    A finite-weight witness is an admissible path that starts on a
    zero-weight cycle, spends total logical weight exactly 1, and ends
    on a zero-weight cycle of logical weight 0, where the encoder can
    then idle forever emitting nothing and adding no logical weight.
    The decision is a reachability search over (vertex, spent weight)
    pairs with spent in {0, 1}; a seed is recursive when no such pair
    (parking vertex, 1) is reachable.
    """
    _, weight_at, cycle_edges = _cycle_structure(d)
    parking = {v for v, w in weight_at.items() if w == 0}

    seen = set()
    queue = deque()
    for v0 in sorted(weight_at):
        for e in d.out_edges(v0):
            if e in cycle_edges:
                continue  # inadmissible first edge
            w = int(d.lweight[e])
            if w > 1:
                continue
            state = (int(d.dst[e]), w)
            if state not in seen:
                seen.add(state)
                queue.append(state)
    while queue:
        v, spent = queue.popleft()
        if spent == 1 and v in parking:
            return False
        for e in d.out_edges(v):
            ns = spent + int(d.lweight[e])
            if ns > 1:
                continue
            state = (int(d.dst[e]), ns)
            if state not in seen:
                seen.add(state)
                queue.append(state)
    return True


def is_quasi_recursive(seed: SeedTransformation) -> bool:
    """True iff every single-Pauli logical impulse yields unbounded output.

    After the impulse slice the memory evolves autonomously, so the
    output is unbounded exactly when the eventual memory cycle emits a
    non-identity physical label somewhere.
    """
    _, lam_m = seed.lam
    mu_p, mu_m = seed.mu
    for j in range(seed.k):
        for sym in (1, 2, 3):
            v = image_bits(lam_m, sym << (2 * j))
            seen = {}
            traj = []
            while v not in seen:
                seen[v] = len(traj)
                traj.append(v)
                v = image_bits(mu_m, v)
            tail = traj[seen[v] :]
            if not any(image_bits(mu_p, w) for w in tail):
                return False
    return True


# ---------------------------------------------------------------------------
# Kernel graph


@dataclass(frozen=True)
class KernelGraph:
    """Zero-physical-weight subgraph restricted to the complement of the
    reachable stabilizer-plus-nilpotent memory space.

    vertices is sorted; the edge tuples share one index and edge_ids
    point back into the diagram the graph was cut from.
    """

    m: int
    k: int
    vertices: tuple
    edge_src: tuple
    edge_dst: tuple
    edge_logical: tuple
    edge_ids: tuple

    def in_degrees(self):
        deg = {v: 0 for v in self.vertices}
        for v in self.edge_dst:
            deg[v] += 1
        return deg

    def out_degrees(self):
        deg = {v: 0 for v in self.vertices}
        for v in self.edge_src:
            deg[v] += 1
        return deg


def kernel_graph(
    seed: SeedTransformation,
    diagram: StateDiagram = None,
    max_memory_qubits: int = DEFAULT_MEMORY_BUDGET,
) -> KernelGraph:
    """Build the kernel graph of a seed.

    The discarded vertex space is V0 = S0 + N0 where S0 is the closure of
    the stabilizer memory rowspace under the memory map and N0 collects
    everything the memory map eventually kills. Vertices are the members
    of the complement of V0 under the commutation product; edges are the
    zero-physical-weight edges between them.
    """
    d = diagram if diagram is not None else build_state_diagram(
        seed, max_memory_qubits
    )
    w = 2 * seed.m
    _, sig_m = seed.sigma
    _, mu_m = seed.mu

    s0 = Subspace.from_vectors(sig_m, w)
    while True:
        grown = s0.union(
            Subspace.from_vectors([image_bits(mu_m, b) for b in s0.basis], w)
        )
        if grown == s0:
            break
        s0 = grown

    n0 = Subspace.from_vectors([], w)
    power = list(mu_m)
    for _ in range(w):
        n0 = n0.union(left_nullspace(power, w))
        power = [image_bits(mu_m, r) for r in power]

    v0 = s0.union(n0)
    verts = sorted(orthogonal_complement(v0).enumerate())
    vset = set(verts)

    esrc, edst, elog, eids = [], [], [], []
    for e in np.flatnonzero(d.pweight == 0).tolist():
        a, b = int(d.src[e]), int(d.dst[e])
        if a in vset and b in vset:
            esrc.append(a)
            edst.append(b)
            elog.append(int(d.lam[e]))
            eids.append(e)
    return KernelGraph(
        seed.m,
        seed.k,
        tuple(verts),
        tuple(esrc),
        tuple(edst),
        tuple(elog),
        tuple(eids),
    )


# ---------------------------------------------------------------------------
# DOT export


def state_diagram_dot(d: StateDiagram) -> str:
    """Graphviz source for the full state diagram, edges labeled (L|P)."""
    s = d.seed
    lines = ["digraph state_diagram {", "  rankdir=LR;"]
    for v in range(d.n_vertices):
        lines.append(f'  "{PauliString(s.m, v)}";')
    for e in range(d.n_edges):
        a = PauliString(s.m, int(d.src[e]))
        b = PauliString(s.m, int(d.dst[e]))
        l = PauliString(s.k, int(d.lam[e]))
        p = PauliString(s.n, int(d.phys[e]))
        lines.append(f'  "{a}" -> "{b}" [label="({l}|{p})"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def kernel_graph_dot(kg: KernelGraph) -> str:
    """Graphviz source for a kernel graph, edges labeled by logical part."""
    lines = ["digraph kernel_graph {", "  rankdir=LR;"]
    for v in kg.vertices:
        lines.append(f'  "{PauliString(kg.m, v)}";')
    for a, b, l in zip(kg.edge_src, kg.edge_dst, kg.edge_logical):
        pa = PauliString(kg.m, a)
        pb = PauliString(kg.m, b)
        lines.append(f'  "{pa}" -> "{pb}" [label="{PauliString(kg.k, l)}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
