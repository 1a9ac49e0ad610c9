"""Fundamental groups acting on affine diagrams, and the corank-one quotients.

For a root system X, the stabilizer of the fundamental alcove in the
extended affine Weyl group is P^(X)/Q^(X) on the coweight side; in
evaluation coordinates (values of a functional on the simple roots) this
is Z^n modulo the column lattice of the Cartan matrix.  Each nonzero class
contains the fundamental coweight of exactly one mark-1 node j, and
translation by it composed with w_{0,j} w_0 permutes the alcove walls,
which are indexed by the affine diagram of X.  That wall permutation is
the diagram action; construction verifies that it is a faithful
homomorphism, preserves bonds and marks, and is simply transitive on the
mark-1 nodes.

For a dual pair, the group attached to the diagram of X is canonically
Hom(-, Q/Z)-dual to the one attached to the dual diagram; the dot-product
pairing of the two charts realizes the duality.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from . import ablat, kernels, rootdata
from .ablat import FinAbGroup, FinAbHom, Lattice, ProductGroup
from .rootdata import AffineDiagram, FiniteType


def _compose(p, q):
    return tuple(p[q[s]] for s in range(len(p)))


def fixed_nodes(perm):
    return sum(1 for s, t in enumerate(perm) if s == t)


@dataclass(frozen=True)
class OmegaGroup:
    """A fundamental group together with its faithful diagram action."""

    diagram: AffineDiagram
    quotient: ablat.LatticeQuotient
    side: str
    elements: tuple
    action: dict = field(repr=False)
    minuscule_node: dict = field(repr=False)

    @property
    def group(self) -> FinAbGroup:
        return self.quotient.group

    @property
    def order(self):
        return self.group.order

    def perm(self, element):
        return self.action[element]

    def element_order(self, element):
        return self.group.element_order(element)

    def is_generator(self, element):
        return self.element_order(element) == self.order

    def node_orbit(self, s):
        return tuple(sorted({perm[s] for perm in self.action.values()}))

    def orbits(self):
        seen, out = set(), []
        for s in range(self.diagram.n_nodes):
            if s not in seen:
                orb = self.node_orbit(s)
                seen.update(orb)
                out.append(orb)
        return out

    def stabilizes(self, element, nodes):
        perm = self.action[element]
        nodes = set(nodes)
        return {perm[s] for s in nodes} == nodes

    def subset_orbit(self, nodes):
        """Orbit of a node subset under the whole group, as sorted tuples."""
        base = tuple(sorted(nodes))
        return tuple(
            sorted({tuple(sorted(perm[s] for s in base)) for perm in self.action.values()})
        )


def _alcove_permutation(diagram, node_j):
    """Wall permutation of (translation by coweight of node_j) * w_{0,j} * w_0.

    Walls: node s carries the affine functional <v_s, .> + k_s with k_0 = 1
    and k_s = 0 otherwise.  The image of a wall under the inverse isometry
    has linear part w(v_s) and level k_s - <v_s, w^{-1} coweight>; matching
    against the wall list gives the permutation.
    """
    base = diagram.base
    n = base.rank
    A = base.cartan
    word = kernels.longest_word(A) + kernels.longest_word(
        A, [i for i in range(n) if i != node_j - 1]
    )
    images = kernels.apply_word_rows(A, word, [list(v) for v in diagram.node_roots])
    winv_cw = kernels.apply_word_dual_rows(
        A, list(reversed(word)), [[int(i == node_j - 1) for i in range(n)]]
    )[0]
    wall_index = {}
    for s in range(diagram.n_nodes):
        wall_index[(diagram.node_roots[s], 1 if s == 0 else 0)] = s
    perm = []
    for s in range(diagram.n_nodes):
        level = (1 if s == 0 else 0) - sum(
            a * b for a, b in zip(diagram.node_roots[s], winv_cw) if a
        )
        key = (tuple(images[s]), level)
        if key not in wall_index:
            raise AssertionError(f"alcove isometry does not permute the walls of {diagram.type}")
        perm.append(wall_index[key])
    return tuple(perm)


def fundamental_group_with_action(diagram: AffineDiagram, side="E'", provenance=None) -> OmegaGroup:
    """The fundamental group attached to a diagram, acting on that diagram."""
    base = diagram.base
    n = base.rank
    A = base.cartan
    prov = provenance if provenance is not None else (f"fundgroup:{base.type}", side)
    quotient = ablat.lattice_quotient(
        Lattice.unit(n), Lattice.integer(A), provenance=prov, coeff=A
    )
    group = quotient.group
    if group.order != base.connection_index:
        raise AssertionError(f"fundamental group order is off for {base.type}")
    elements = tuple(group.elements())
    # Each nonzero class holds the coweight of exactly one mark-1 node j >= 1.
    node_class = {}
    for j in diagram.mark_one_nodes():
        if j == 0:
            continue
        node_class[j] = quotient.coords_from_top([int(i == j - 1) for i in range(n)])
    if sorted(node_class.values()) != sorted(e for e in elements if e != group.identity):
        raise AssertionError(f"mark-1 coweights do not enumerate the classes of {base.type}")
    class_node = {e: j for j, e in node_class.items()}

    action = {group.identity: tuple(range(diagram.n_nodes))}
    for k in range(len(group.invariant_factors)):
        gen = tuple(int(i == k) for i in range(len(group.invariant_factors)))
        action[gen] = _alcove_permutation(diagram, class_node[gen])
    for e in elements:
        if e in action:
            continue
        k = next(i for i, x in enumerate(e) if x)
        gen = tuple(int(i == k) for i in range(len(group.invariant_factors)))
        prev = tuple(x - (1 if i == k else 0) for i, x in enumerate(e))
        action[e] = _compose(action[prev], action[gen])

    _verify_action(diagram, group, elements, action)
    minuscule = {e: action[e][0] for e in elements}
    for e in elements:
        if e != group.identity and class_node[e] != minuscule[e]:
            raise AssertionError("minuscule tags disagree with the action at node 0")
    return OmegaGroup(diagram, quotient, side, elements, action, minuscule)


def _verify_action(diagram, group, elements, action):
    n_nodes = diagram.n_nodes
    if len(set(action.values())) != len(elements):
        raise AssertionError("action is not faithful")
    for e in elements:
        perm = action[e]
        if sorted(perm) != list(range(n_nodes)):
            raise AssertionError("action image is not a permutation")
        for s in range(n_nodes):
            if diagram.marks[perm[s]] != diagram.marks[s]:
                raise AssertionError("action does not preserve marks")
            for t in range(n_nodes):
                if diagram.coxeter[perm[s]][perm[t]] != diagram.coxeter[s][t]:
                    raise AssertionError("action does not preserve the Coxeter matrix")
    for a in elements:
        for b in elements:
            if action[group.add(a, b)] != _compose(action[a], action[b]):
                raise AssertionError("action is not a homomorphism")
    ones = [s for s in range(n_nodes) if diagram.marks[s] == 1]
    hits = {action[e][0] for e in elements}
    if len(hits) != len(elements) or hits != set(ones):
        raise AssertionError("action is not simply transitive on mark-1 nodes")


def underline_subgroup(og: OmegaGroup):
    """Elements fixing at least two nodes; defined for type D only."""
    if og.diagram.type.family != "D":
        raise ValueError(f"underline subgroup is defined for type D, not {og.diagram.type}")
    return frozenset(e for e in og.elements if fixed_nodes(og.action[e]) >= 2)


# ---------------------------------------------------------------------------
# Dual pairs
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class DualPair:
    """Both affine diagrams of a dual pair with their fundamental groups.

    omega_prime is the group whose classes enter the corank-one fibers; it
    acts on the diagram of ftype.  omega is the Q/Z-dual group acting on
    the dual diagram.  Their coordinate charts pair by dot product.
    """

    ftype: FiniteType
    diagram: AffineDiagram
    dual_diagram: AffineDiagram
    omega_prime: OmegaGroup
    omega: OmegaGroup

    def pairing(self) -> ablat.DualityPairing:
        """Q/Z pairing between omega and omega_prime, with nondegeneracy flags."""
        dec = self.omega.quotient.snf
        diag = dec.diag()
        n = self.ftype.rank
        table = []
        for g in self.omega.group.elements():
            urep = self.omega.quotient.section_top(g)
            # solve A^T r = urep through the stored Smith form
            y = [Fraction(sum(dec.U[i][j] * urep[j] for j in range(n)), diag[i]) for i in range(n)]
            r = [sum(Fraction(dec.V[i][j]) * y[j] for j in range(n)) for i in range(n)]
            row = []
            for h in self.omega_prime.group.elements():
                u = self.omega_prime.quotient.section_top(h)
                row.append(sum(Fraction(a) * b for a, b in zip(u, r)) % 1)
            table.append(tuple(row))
        transposed = [list(col) for col in zip(*table)] if table else []
        nondeg = ablat._nondegenerate(table) and ablat._nondegenerate(transposed)
        return ablat.DualityPairing(
            self.omega.group, self.omega_prime.group, tuple(table), nondeg
        )


@lru_cache(maxsize=None)
def dual_pair(t: FiniteType) -> DualPair:
    diagram = rootdata.affinize(t)
    dualdiag = rootdata.affinize_dual(t)
    tag = f"pair:{t}"
    omega_prime = fundamental_group_with_action(diagram, side="E'", provenance=(tag, "E'"))
    omega = fundamental_group_with_action(dualdiag, side="E", provenance=(tag, "E"))
    if omega.order != omega_prime.order:
        raise AssertionError("dual fundamental groups differ in order")
    return DualPair(t, diagram, dualdiag, omega_prime, omega)


# ---------------------------------------------------------------------------
# Corank-one subdiagrams: component groups, the two maps, and fibers
# ---------------------------------------------------------------------------


def _component_iso(diagram, nodes, canonical: rootdata.RootSystem):
    """Deterministic diagram isomorphism node-positions -> canonical indices.

    Matches Cartan entries and relative length patterns; first assignment
    in lexicographic backtracking order wins.
    """
    k = len(nodes)
    camb = [[0] * k for _ in range(k)]
    for a in range(k):
        for b in range(k):
            camb[a][b] = (
                2 * diagram.node_gram[nodes[a]][nodes[b]] // diagram.node_gram[nodes[b]][nodes[b]]
            )
    lamb = [diagram.node_lengths[s] for s in nodes]
    lmin = min(lamb)
    target = canonical.cartan
    tlen = canonical.lengths
    tmin = min(tlen)
    assign = [-1] * k
    used = [False] * k

    def ok(a, c):
        if lamb[a] * tmin != tlen[c] * lmin:
            return False
        for b in range(a):
            if camb[a][b] != target[c][assign[b]] or camb[b][a] != target[assign[b]][c]:
                return False
        return True

    def rec(a):
        if a == k:
            return True
        for c in range(k):
            if not used[c] and ok(a, c):
                assign[a] = c
                used[c] = True
                if rec(a + 1):
                    return True
                used[c] = False
                assign[a] = -1
        return False

    if not rec(0):
        raise AssertionError(f"component {nodes} does not match type {canonical.type}")
    return tuple(assign)


@dataclass(frozen=True)
class Component:
    """One connected piece of a corank-one subdiagram."""

    nodes: tuple
    raw_type: FiniteType
    ftype: FiniteType  # canonical (aliases resolved)
    pair: DualPair
    og: OmegaGroup  # group carrying this component's tuple coordinates
    iso: tuple  # position in `nodes` -> canonical simple-root index

    @property
    def group(self) -> FinAbGroup:
        return self.og.group


@dataclass(frozen=True)
class OmegaOfJ:
    """The corank-one quotient with its injection and surjection."""

    pair: DualPair
    deleted_node: int
    chart: str
    J: tuple
    components: tuple
    quotient: ablat.LatticeQuotient
    map_a: FinAbHom
    map_b: FinAbHom
    prod: ProductGroup

    @property
    def group(self) -> FinAbGroup:
        return self.quotient.group


def fiber_chart(t: FiniteType) -> str:
    """Chart for the matching-fiber counts.

    On simply-laced types root and coroot charts agree.  The F and G
    families need the coroot chart for the fiber cardinalities; B and C
    keep the root chart, the only one their group maps into.
    """
    return "coroot" if t.family in "FG" else "root"


@lru_cache(maxsize=None)
def omega_of_J(t: FiniteType, deleted_node: int, chart: str = "root") -> OmegaOfJ:
    """Build the quotient attached to deleting one node of the diagram of t.

    chart "root" evaluates functionals against the node roots (the
    evaluation chart of the written definitions); chart "coroot" uses the
    node coroots instead, placing the quotient on the dual side.
    """
    pair = dual_pair(t)
    diagram = pair.diagram
    n = t.rank
    if not 0 <= deleted_node < diagram.n_nodes:
        raise ValueError(f"node {deleted_node} out of range")
    if chart not in ("root", "coroot"):
        raise ValueError(f"unknown chart {chart!r}")
    lattice_diagram = diagram if chart == "root" else rootdata.coroot_affinization(t)
    J = tuple(s for s in range(diagram.n_nodes) if s != deleted_node)
    comps = []
    for nodes, raw in rootdata.components_after_deletion(diagram, {deleted_node}):
        canon = rootdata.normalize_type(raw)
        if len(canon) != 1:
            raise AssertionError(f"connected component normalized to {canon}")
        cpair = dual_pair(canon[0])
        if chart == "root":
            og = cpair.omega_prime
            reference = rootdata.build_root_system(canon[0])
        else:
            og = cpair.omega
            reference = rootdata.dual_root_system(canon[0])
        comps.append(
            Component(nodes, raw, canon[0], cpair, og,
                      _component_iso(lattice_diagram, nodes, reference))
        )
    comps = tuple(comps)

    # Chart w = (evaluations against the node vectors of the kept nodes).
    M_J = tuple(lattice_diagram.node_roots[s] for s in J)
    A = lattice_diagram.base.cartan
    bottom = ablat.mat_mul_fast(M_J, A)
    q_J = ablat.lattice_quotient(
        Lattice.unit(n), Lattice.integer(bottom),
        provenance=(f"pair:{t}", "E'", "J", deleted_node, chart), coeff=bottom,
    )

    # (a): the whole group maps in via its evaluation-chart representatives.
    q_u = pair.omega_prime.quotient
    kk = len(q_u.group.invariant_factors)
    if chart == "coroot" and kk and q_u.group.order > 1:
        raise ValueError(f"coroot chart does not receive the group of {t}^a")
    cols_a = []
    for j in range(kk):
        z = q_u.section_top(tuple(int(i == j) for i in range(kk)))
        w = ablat.mat_vec(M_J, z)
        cols_a.append(q_J.coords_from_top(w))
    map_a = ablat.make_hom(
        q_u.group, q_J.group,
        tuple(tuple(cols_a[j][i] for j in range(kk))
              for i in range(len(q_J.group.invariant_factors))),
    )

    # (b): the product of component groups; each component chart sits as a
    # block of the w chart through its diagram isomorphism.
    prod = ProductGroup(tuple(c.group for c in comps))
    pos_of = {s: i for i, s in enumerate(J)}
    cols_b = []
    for c in comps:
        cq = c.og.quotient
        ck = len(cq.group.invariant_factors)
        for j in range(ck):
            z_canon = cq.section_top(tuple(int(i == j) for i in range(ck)))
            w = [0] * n
            for a, s in enumerate(c.nodes):
                w[pos_of[s]] = z_canon[c.iso[a]]
            cols_b.append(q_J.coords_from_top(w))
    map_b = ablat.make_hom(
        prod, q_J.group,
        tuple(tuple(col[i] for col in cols_b)
              for i in range(len(q_J.group.invariant_factors))),
    )
    if not map_a.injective:
        raise AssertionError(f"map (a) not injective for {t}, node {deleted_node}")
    if not map_b.surjective:
        raise AssertionError(f"map (b) not surjective for {t}, node {deleted_node}")
    expected = 1
    for c in comps:
        expected *= rootdata.build_root_system(c.ftype).connection_index
    if prod.order != expected:
        raise AssertionError("component group orders do not multiply up")
    return OmegaOfJ(pair, deleted_node, chart, J, comps, q_J, map_a, map_b, prod)


def m_set(o: OmegaOfJ, omega_element):
    """Tuples in the product whose image under (b) matches omega under (a)."""
    target = o.map_a.apply(omega_element)
    return [x for x in o.prod.elements() if o.map_b.apply(x) == target]
