"""Irreducible root systems, untwisted affine diagrams and diagram automorphisms.

Everything is exact: roots live in simple-root coordinates as integer
vectors, lengths come from the standard invariant form normalized so that
short roots have squared length 2, and the longest element is computed by
dominance descent rather than by enumeration.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache

from . import kernels

FAMILIES = "ABCDEFG"

_RANK_RANGE = {
    "A": (1, None),
    "B": (2, None),
    "C": (2, None),
    "D": (4, None),
    "E": (6, 8),
    "F": (4, 4),
    "G": (2, 2),
}


class TypeError_(ValueError):
    """Rejected finite-type data, with a normalization hint when one exists."""


@dataclass(frozen=True, order=True)
class FiniteType:
    family: str
    rank: int

    def __post_init__(self):
        if self.family not in FAMILIES or self.rank < -1:
            raise TypeError_(f"not a type: {self.family}{self.rank}")

    def __str__(self):
        return f"{self.family}{self.rank}"

    @property
    def is_canonical(self):
        lo, hi = _RANK_RANGE[self.family]
        return self.rank >= lo and (hi is None or self.rank <= hi)

    @classmethod
    def parse(cls, text):
        m = re.fullmatch(r"\s*([A-Ga-g])[_\s]?(-?\d+)\s*", text)
        if not m:
            raise TypeError_(f"cannot parse type {text!r}")
        return cls(m.group(1).upper(), int(m.group(2)))


def normalize_type(t: FiniteType) -> tuple[FiniteType, ...]:
    """Alias table: degenerate labels collapse to canonical products.

    D0 = D1 = trivial, D2 = A1 x A1, D3 = A3, B0 = trivial, B1 = A1,
    C0 = trivial, C1 = A1, A0 = A(-1) = trivial.
    """
    f, n = t.family, t.rank
    if f == "A":
        return (t,) if n >= 1 else ()
    if f in "BC":
        if n <= 0:
            return ()
        if n == 1:
            return (FiniteType("A", 1),)
        return (t,)
    if f == "D":
        if n <= 1:
            return ()
        if n == 2:
            return (FiniteType("A", 1), FiniteType("A", 1))
        if n == 3:
            return (FiniteType("A", 3),)
        return (t,)
    if not t.is_canonical:
        raise TypeError_(f"no alias for {t}")
    return (t,)


def normalize_expr(factors) -> tuple[FiniteType, ...]:
    """Canonical form of a product of types: aliased, trivia dropped, sorted."""
    out = []
    for t in factors:
        out.extend(normalize_type(t))
    return tuple(sorted(out))


def weyl_expr(factors) -> tuple[FiniteType, ...]:
    """Weyl-group reading of a product: identifies C_k with B_k."""
    return normalize_expr(
        FiniteType("B", t.rank) if t.family == "C" else t for t in normalize_expr(factors)
    )


def expr_str(factors) -> str:
    return "x".join(str(t) for t in factors) if factors else "1"


# ---------------------------------------------------------------------------
# Root systems
# ---------------------------------------------------------------------------

_STANDARD_COUNTS = {
    "A": lambda n: n * (n + 1),
    "B": lambda n: 2 * n * n,
    "C": lambda n: 2 * n * n,
    "D": lambda n: 2 * n * (n - 1),
}
_STANDARD_COUNTS_EXC = {("E", 6): 72, ("E", 7): 126, ("E", 8): 240, ("F", 4): 48, ("G", 2): 12}

_CONNECTION_INDEX = {
    "A": lambda n: n + 1,
    "B": lambda n: 2,
    "C": lambda n: 2,
    "D": lambda n: 4,
    ("E", 6): 3,
    ("E", 7): 2,
    ("E", 8): 1,
    ("F", 4): 1,
    ("G", 2): 1,
}


def _simple_gram(t: FiniteType):
    """Gram matrix and squared lengths of the simple roots, short length 2."""
    f, n = t.family, t.rank
    G = [[0] * n for _ in range(n)]
    if f in "AD" or f == "E":
        lengths = [2] * n
        edges = [(i, i + 1) for i in range(n - 1)]
        if f == "D":
            edges = [(i, i + 1) for i in range(n - 2)] + [(n - 3, n - 1)]
        if f == "E":
            # Bourbaki: chain 1-3-4-5-...-n with 2 attached to 4.
            chain = [0] + list(range(2, n))
            edges = [(chain[i], chain[i + 1]) for i in range(len(chain) - 1)] + [(1, 3)]
        for i in range(n):
            G[i][i] = 2
        for i, j in edges:
            G[i][j] = G[j][i] = -1
    elif f == "B":
        lengths = [4] * (n - 1) + [2]
        for i in range(n):
            G[i][i] = lengths[i]
        for i in range(n - 1):
            G[i][i + 1] = G[i + 1][i] = -2
    elif f == "C":
        lengths = [2] * (n - 1) + [4]
        for i in range(n):
            G[i][i] = lengths[i]
        for i in range(n - 2):
            G[i][i + 1] = G[i + 1][i] = -1
        if n >= 2:
            G[n - 2][n - 1] = G[n - 1][n - 2] = -2
    elif f == "F":
        lengths = [4, 4, 2, 2]
        for i in range(4):
            G[i][i] = lengths[i]
        G[0][1] = G[1][0] = -2
        G[1][2] = G[2][1] = -2
        G[2][3] = G[3][2] = -1
    elif f == "G":
        lengths = [2, 6]
        G[0][0], G[1][1] = 2, 6
        G[0][1] = G[1][0] = -3
    else:
        raise TypeError_(f"no gram data for {t}")
    return G, lengths


def _det_int(M):
    """Exact determinant by fraction-free Bareiss elimination."""
    n = len(M)
    if n == 0:
        return 1
    A = [list(map(int, row)) for row in M]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if A[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if A[i][k]), None)
            if swap is None:
                return 0
            A[k], A[swap] = A[swap], A[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) // prev
        prev = A[k][k]
    return sign * A[n - 1][n - 1]


class RootSystem:
    """An irreducible root system in simple-root coordinates.

    ``cartan[i][j]`` is the pairing of alpha_i against the coroot of
    alpha_j; ``lengths`` holds squared lengths of the simple roots.  The
    full root list is generated lazily by reflection closure.
    """

    def __init__(self, ftype, cartan, lengths, gram):
        self.type = ftype
        self.rank = ftype.rank
        self.cartan = tuple(tuple(row) for row in cartan)
        self.lengths = tuple(lengths)
        self.gram = tuple(tuple(row) for row in gram)
        self._roots = None
        det = _det_int(self.cartan)
        expected = _CONNECTION_INDEX.get((ftype.family, ftype.rank)) or _CONNECTION_INDEX[
            ftype.family
        ](ftype.rank)
        if det != expected:
            raise AssertionError(f"Cartan determinant {det} for {ftype}, expected {expected}")
        self.connection_index = det
        self.highest_root = self._dominant_from(self._seed(max(self.lengths)))
        self.highest_short_root = self._dominant_from(self._seed(min(self.lengths)))

    def _seed(self, length):
        i = self.lengths.index(length)
        return [int(j == i) for j in range(self.rank)]

    def coroot_pairing(self, v, i):
        """Pairing of the vector v against the coroot of alpha_i."""
        return sum(v[j] * self.cartan[j][i] for j in range(self.rank))

    def _dominant_from(self, v):
        v = list(v)
        while True:
            i = next((i for i in range(self.rank) if self.coroot_pairing(v, i) < 0), None)
            if i is None:
                return tuple(v)
            v[i] -= self.coroot_pairing(v, i)

    def inner(self, v, w):
        G = self.gram
        return sum(v[i] * G[i][j] * w[j] for i in range(self.rank) for j in range(self.rank))

    @property
    def num_roots_expected(self):
        key = (self.type.family, self.type.rank)
        if key in _STANDARD_COUNTS_EXC:
            return _STANDARD_COUNTS_EXC[key]
        return _STANDARD_COUNTS[self.type.family](self.type.rank)

    @property
    def roots(self):
        if self._roots is None:
            roots = kernels.root_closure(self.cartan)
            if len(roots) != self.num_roots_expected:
                raise AssertionError(
                    f"{self.type}: closure produced {len(roots)} roots, "
                    f"expected {self.num_roots_expected}"
                )
            for r in roots:
                signs = {x > 0 for x in r if x}
                if len(signs) != 1:
                    raise AssertionError(f"{self.type}: mixed-sign root {r}")
            self._roots = tuple(tuple(r) for r in roots)
        return self._roots

    def __repr__(self):
        return f"RootSystem({self.type})"


@lru_cache(maxsize=None)
def build_root_system(t: FiniteType) -> RootSystem:
    """Construct the root system of a canonical nontrivial type."""
    if not t.is_canonical:
        hint = expr_str(normalize_type(t))
        raise TypeError_(f"{t} is not canonical; normalize to {hint} first")
    gram, lengths = _simple_gram(t)
    n = t.rank
    cartan = [[2 * gram[i][j] // gram[j][j] for j in range(n)] for i in range(n)]
    return RootSystem(t, cartan, lengths, gram)


DUAL_FAMILY = {"A": "A", "B": "C", "C": "B", "D": "D", "E": "E", "F": "F", "G": "G"}


def dual_affine_type(t: FiniteType) -> FiniteType:
    """Type of the dual affine group: B and C swap, everything else is fixed."""
    return FiniteType(DUAL_FAMILY[t.family], t.rank)


@lru_cache(maxsize=None)
def dual_root_system(t: FiniteType) -> RootSystem:
    """The coroot system of t, indexed like t (coroot of alpha_i at slot i).

    For B/C this is the Bourbaki-ordered dual; for F4/G2 it is the same
    type with the length pattern reversed relative to build_root_system.
    """
    base = build_root_system(t)
    n = t.rank
    scale = max(base.lengths) // 2  # renormalize so dual short roots have length 2
    lengths = [4 * scale // l for l in base.lengths]
    cartan = [[base.cartan[j][i] for j in range(n)] for i in range(n)]
    gram = [[cartan[i][j] * lengths[j] // 2 for j in range(n)] for i in range(n)]
    for i in range(n):
        gram[i][i] = lengths[i]
    return RootSystem(FiniteType(DUAL_FAMILY[t.family], n), cartan, lengths, gram)


# ---------------------------------------------------------------------------
# Affine diagrams
# ---------------------------------------------------------------------------

_BOND_FROM_PRODUCT = {0: 2, 1: 3, 2: 4, 3: 6}
INFINITE_BOND = 0  # Coxeter entry for an infinite bond (affine A1 only)


class AffineDiagram:
    """Untwisted affine diagram: node 0 carries the negated highest root.

    ``marks`` are the unique positive relation coefficients with mark 1 at
    node 0; ``coxeter[s][t]`` holds m(s, t) with 0 standing for infinity.
    An explicit ``affine_root`` builds the twisted variant used by the
    coroot-side fiber chart.
    """

    def __init__(self, base: RootSystem, affine_root=None):
        import numpy as np

        self.base = base
        n = base.rank
        theta = tuple(-x for x in affine_root) if affine_root is not None else base.highest_root
        self.node_roots = (tuple(-x for x in theta),) + tuple(
            tuple(int(j == i) for j in range(n)) for i in range(n)
        )
        self.marks = (1,) + tuple(theta)
        self.n_nodes = n + 1
        V = np.array(self.node_roots, dtype=np.int64)
        G = np.array(base.gram, dtype=np.int64)
        NG = V @ G @ V.T
        self.node_gram = tuple(tuple(int(x) for x in row) for row in NG)
        self.node_lengths = tuple(self.node_gram[s][s] for s in range(self.n_nodes))
        cox = [[2] * self.n_nodes for _ in range(self.n_nodes)]
        for s in range(self.n_nodes):
            cox[s][s] = 1
            for t in range(s + 1, self.n_nodes):
                g = self.node_gram[s][t]
                if g:
                    prod = (2 * g // self.node_lengths[t]) * (2 * g // self.node_lengths[s])
                    cox[s][t] = cox[t][s] = _BOND_FROM_PRODUCT.get(prod, INFINITE_BOND)
        self.coxeter = tuple(tuple(row) for row in cox)
        # The marks give the unique positive dependency among the node roots.
        for j in range(n):
            if sum(self.marks[s] * self.node_roots[s][j] for s in range(self.n_nodes)) != 0:
                raise AssertionError(f"marks relation fails for {base.type}")
        self.boc = max(self.marks)

    @property
    def type(self):
        return self.base.type

    def neighbors(self, s):
        return [t for t in range(self.n_nodes) if t != s and self.coxeter[s][t] != 2]

    def mark_one_nodes(self):
        return [s for s in range(self.n_nodes) if self.marks[s] == 1]

    def gram_entry(self, s, t):
        return self.node_gram[s][t]

    def __repr__(self):
        return f"AffineDiagram({self.type})"


_EXPECTED_BOC = {"A": 1, "B": 2, "C": 2, "D": 2, "G": 3, "F": 4}
_EXPECTED_BOC_E = {6: 3, 7: 4, 8: 6}


@lru_cache(maxsize=None)
def affinize(t: FiniteType) -> AffineDiagram:
    d = AffineDiagram(build_root_system(t))
    want = _EXPECTED_BOC_E[t.rank] if t.family == "E" else _EXPECTED_BOC[t.family]
    if d.boc != want:
        raise AssertionError(f"boc({t}) = {d.boc}, expected {want}")
    return d


@lru_cache(maxsize=None)
def affinize_dual(t: FiniteType) -> AffineDiagram:
    """Affine diagram of the dual system, node-indexed like t."""
    return AffineDiagram(dual_root_system(t))


def comarks(t: FiniteType):
    """Coefficients of the dual of the highest root over the simple coroots."""
    rs = build_root_system(t)
    top = max(rs.lengths)
    return tuple(c * l // top for c, l in zip(rs.highest_root, rs.lengths))


@lru_cache(maxsize=None)
def coroot_affinization(t: FiniteType) -> AffineDiagram:
    """Affine node set carrying the coroots of the untwisted diagram of t.

    The base is the dual root system and node 0 carries minus the dual of
    the highest root of t, whose coordinates are the comarks.  Same node
    adjacency as the diagram of t; marks are (1, comarks).
    """
    return AffineDiagram(dual_root_system(t), affine_root=tuple(-c for c in comarks(t)))


def components_after_deletion(diagram: AffineDiagram, deleted):
    """Connected components left after deleting a nonempty node set.

    Returns (nodes, root type) pairs, components ordered by least node.
    Types are root-system types: B and C are told apart by lengths, and a
    rank-1 or rank-2 piece in a two-length ambient keeps its length tag
    (e.g. an isolated long node of an affine C diagram is C1).
    """
    deleted = set(deleted)
    if not deleted:
        raise ValueError("deleted node set must be nonempty")
    remaining = [s for s in range(diagram.n_nodes) if s not in deleted]
    seen = set()
    out = []
    for start in remaining:
        if start in seen:
            continue
        comp = [start]
        seen.add(start)
        queue = [start]
        while queue:
            s = queue.pop()
            for u in diagram.neighbors(s):
                if u not in deleted and u not in seen:
                    seen.add(u)
                    comp.append(u)
                    queue.append(u)
        comp.sort()
        out.append((tuple(comp), _classify_component(diagram, comp)))
    return out


def _classify_component(diagram: AffineDiagram, nodes):
    fam = diagram.base.type.family
    k = len(nodes)
    lengths = [diagram.node_lengths[s] for s in nodes]
    two_lengths = len(set(diagram.node_lengths)) > 1
    short, long_ = min(diagram.node_lengths), max(diagram.node_lengths)
    if k == 1:
        if two_lengths and fam in ("B", "F") and lengths[0] == short:
            return FiniteType("B", 1)
        if two_lengths and fam == "C" and lengths[0] == long_:
            return FiniteType("C", 1)
        return FiniteType("A", 1)
    bonds = {}
    deg = {s: 0 for s in nodes}
    for a in range(k):
        for b in range(a + 1, k):
            m = diagram.coxeter[nodes[a]][nodes[b]]
            if m != 2:
                bonds[(nodes[a], nodes[b])] = m
                deg[nodes[a]] += 1
                deg[nodes[b]] += 1
    maxdeg = max(deg.values())
    uniform = len(set(lengths)) == 1
    if k == 2:
        m = next(iter(bonds.values()))
        if m == 3:
            return FiniteType("A", 2)
        if m == 6:
            return FiniteType("G", 2)
        if m == 4:
            return FiniteType("C", 2) if fam == "C" else FiniteType("B", 2)
        raise AssertionError(f"unexpected rank-2 bond {m}")
    if maxdeg == 3:
        hub = next(s for s, d in deg.items() if d == 3)
        legs = sorted(_leg_lengths(nodes, bonds, hub))
        if legs[0] == 1 and legs[1] == 1:
            return FiniteType("D", k)
        if legs == [1, 2, k - 4]:
            return FiniteType("E", k)
        raise AssertionError(f"unrecognized fork shape {legs}")
    if uniform:
        return FiniteType("A", k)
    if sorted(bonds.values())[-1] == 6:
        raise AssertionError("G2 shape of rank > 2")
    n_short = sum(1 for l in lengths if l == min(lengths))
    if n_short == 1 and k > 2 and any(m == 4 for m in bonds.values()):
        return FiniteType("B", k)
    if n_short == k - 1:
        return FiniteType("C", k)
    if k == 4 and n_short == 2:
        return FiniteType("F", 4)
    raise AssertionError(f"unrecognized mixed-length chain, lengths {lengths}")


def _leg_lengths(nodes, bonds, hub):
    adj = {s: [] for s in nodes}
    for (a, b) in bonds:
        adj[a].append(b)
        adj[b].append(a)
    legs = []
    for first in adj[hub]:
        length = 1
        prev, cur = hub, first
        while True:
            nxt = [u for u in adj[cur] if u != prev]
            if not nxt:
                break
            prev, cur = cur, nxt[0]
            length += 1
        legs.append(length)
    return legs


# ---------------------------------------------------------------------------
# The automorphism induced by the longest element
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def op_automorphism(t: FiniteType) -> tuple[int, ...]:
    """Permutation i -> j with -w0(alpha_i) = alpha_j, by dominance descent."""
    rs = build_root_system(t)
    word = kernels.longest_word(rs.cartan)
    images = kernels.apply_word_rows(
        rs.cartan, word, [[int(j == i) for j in range(rs.rank)] for i in range(rs.rank)]
    )
    perm = []
    for i in range(rs.rank):
        neg = [-x for x in images[i]]
        try:
            j = next(
                j for j in range(rs.rank) if neg == [int(a == j) for a in range(rs.rank)]
            )
        except StopIteration:
            raise AssertionError(f"-w0 does not permute the simple roots of {t}")
        perm.append(j)
    return tuple(perm)


def num_positive_roots(t: FiniteType) -> int:
    return build_root_system(t).num_roots_expected // 2


# ---------------------------------------------------------------------------
# Pretty printing
# ---------------------------------------------------------------------------


def diagram_line(d: AffineDiagram) -> str:
    """Deterministic one-line form: nodes with marks, then bond orders."""
    nodes = " ".join(f"{s}({d.marks[s]})" for s in range(d.n_nodes))
    bonds = []
    for s in range(d.n_nodes):
        for t in range(s + 1, d.n_nodes):
            m = d.coxeter[s][t]
            if m != 2:
                bonds.append(f"{s}-{t}:{'inf' if m == INFINITE_BOND else m}")
    return f"{d.type}~ [{nodes}] bonds {','.join(bonds)}"
