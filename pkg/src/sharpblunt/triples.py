"""Sharp, strictly sharp, strictly blunt and blunt triples for dual pairs.

Conventions.  Everything is keyed by the blunt-side affine type X: the
diagram of X carries the corank-one subsets J, its dual diagram carries
the sharp-side subsets I, and both share the group whose evaluation-chart
classes drive the corank-one fibers.  Sharp enumeration has two modes:
"normative" generates the closed classification lists from their
parameter arithmetic, "literal" searches subsets satisfying the defining
predicate directly.  The two agree except on a deterministic discrepancy
list; blunt enumeration is always computed from the fibers, never from
the closed lists.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from . import fungroup, rootdata, sharpfin
from .rootdata import FiniteType, normalize_expr, normalize_type

CLASSICAL_MIN_RANK = {"A": 1, "B": 3, "C": 2, "D": 4}


def _isqrt(x):
    if x < 0:
        return None
    r = int(x ** 0.5)
    while r * r < x:
        r += 1
    while r * r > x:
        r -= 1
    return r if r * r == x else None


# ---------------------------------------------------------------------------
# Omega classes
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class OmegaClass:
    """Classifier of a fundamental-group element, in the lists' case language."""

    label: str  # "1", "gen", "tor<k>", "nontriv", "un", "spin"
    order: int


def omega_class_of(og: fungroup.OmegaGroup, ftype: FiniteType, coords) -> OmegaClass:
    order = og.element_order(coords)
    fam = ftype.family
    if order == 1:
        return OmegaClass("1", 1)
    if fam == "A":
        return OmegaClass("gen" if og.is_generator(coords) else f"tor{order}", order)
    if fam == "D":
        if coords in fungroup.underline_subgroup(og):
            return OmegaClass("un", order)
        return OmegaClass("spin", order)
    if fam == "E" and ftype.rank == 6:
        return OmegaClass("gen", order)
    return OmegaClass("nontriv", order)


def omega_class(pair: fungroup.DualPair, coords) -> OmegaClass:
    return omega_class_of(pair.omega_prime, pair.ftype, coords)


def dual_action_rep(pair: fungroup.DualPair, coords):
    """Element of the dual-diagram actor matching the class of coords.

    Stability and orbit questions on the dual diagram only depend on the
    subgroup generated by the element; within these groups that subgroup
    is pinned by the element order together with, for type D, membership
    in the underline subgroup, which the charts share.
    """
    og = pair.omega
    if pair.ftype.family == "D":
        if coords in og.action:
            return coords
        raise AssertionError("type D charts should coincide")
    order = pair.omega_prime.element_order(coords)
    for e in og.elements:
        if og.element_order(e) == order:
            return e
    raise AssertionError("no matching class on the dual side")


# ---------------------------------------------------------------------------
# Triples
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SharpTriple:
    base_type: FiniteType       # blunt-side type X; the triple lives on its dual
    affine_type: FiniteType     # dual(X): the sharp-side affine type
    omega: tuple
    omega_label: str
    i_nodes: tuple              # lex-least representative of the orbit [I]
    orbit: tuple
    factors: tuple              # ((nodes, raw root type), ...)
    expr: tuple                 # normalized type product
    params: tuple | None        # (t, r) for classical types
    case: str | None

    def sort_key(self):
        return (self.omega, self.i_nodes)


@dataclass(frozen=True)
class BluntTriple:
    affine_type: FiniteType     # the blunt-side affine type X
    omega: tuple
    omega_label: str
    deleted_node: int           # lex-least representative of the orbit [J]
    j_nodes: tuple
    factors: tuple              # ((nodes, raw root type, canonical type), ...)
    expr: tuple
    witnesses: tuple            # the tuples of M*, component coordinates
    mark: int                   # mark of the deleted node
    params: tuple | None        # (x, y) for classical types
    case: str | None

    def sort_key(self):
        return (self.omega, self.deleted_node)


# ---------------------------------------------------------------------------
# Normative sharp enumeration
# ---------------------------------------------------------------------------

# Exceptional list: (family, rank) -> [(omega label, deleted nodes, case tag)]
_EXCEPTIONAL_SHARP = {
    ("E", 8): [("1", (0,), "a")],
    ("E", 7): [("1", (0,), "b'"), ("nontriv", (0, 7), "b")],
    ("E", 6): [("1", (0,), "c'"), ("gen", (0, 1, 6), "c")],
    ("F", 4): [("1", (0,), "d")],
    ("G", 2): [("1", (0,), "e")],
}


def _classical_sharp_cases(yfam, n, oclass):
    """Yield (case, t, r, deleted node set) from the closed parameterizations."""
    if yfam == "B":
        if oclass.label == "1":
            # t in 4N, r odd, n = (t^2 + r^2 - 1)/4
            t = 0
            while t * t <= 4 * n:
                rr = _isqrt(4 * n + 1 - t * t)
                if rr is not None and rr % 2 == 1:
                    k = t * t // 4
                    yield "g", t, rr, _b_deletion(k, n)
                t += 4
        elif oclass.label == "nontriv":
            t = 2
            while t * t <= 4 * n:
                rr = _isqrt(4 * n + 1 - t * t)
                if rr is not None and rr % 2 == 1:
                    k = t * t // 4
                    yield "g'", t, rr, _b_deletion(k, n)
                t += 4
    elif yfam == "C":
        if oclass.label == "1":
            r = 1
            while 2 * r * r <= t_max_h(n):
                t = _isqrt(4 * n + 2 - r * r)
                if t is not None and t % 2 == 1 and t >= r:
                    k = (r * r - 1) // 4
                    yield "h", t, r, frozenset({k})
                r += 2
        elif oclass.label == "nontriv":
            t = 2
            while t * t <= 8 * n + 5:
                rr = _isqrt(8 * n + 5 - t * t)
                if rr is not None and rr % 2 == 1:
                    k = (t * t - 4) // 16
                    yield "h'", t, rr, frozenset({k, n - k})
                t += 4
    elif yfam == "D":
        if oclass.label == "1":
            r = 0
            while 2 * r * r <= 4 * n:
                t = _isqrt(4 * n - r * r)
                if t is not None and t % 4 == 0 and t >= r:
                    yield "i", t, r, _d_deletion(r * r // 4, n)
                r += 4
        elif oclass.label == "un":
            r = 2
            while 2 * r * r <= 4 * n:
                t = _isqrt(4 * n - r * r)
                if t is not None and t % 4 == 2 and t >= r:
                    yield "i'", t, r, _d_deletion(r * r // 4, n)
                r += 4
        elif oclass.label == "spin":
            t = 0
            while t * t <= 8 * n + 1:
                rr = _isqrt(8 * n + 1 - t * t)
                if rr is not None and rr % 2 == 1 and (t // 4) % 2 == n % 2:
                    yield "i''", t, rr, None  # deletion depends on omega; filled later
                t += 4


def t_max_h(n):
    return 4 * n + 2


def _b_deletion(k, n):
    if k == 0:
        return frozenset({0})
    if k == 1:
        return frozenset({0, 1})
    return frozenset({k})


def _d_deletion(k, n):
    if k == 0:
        return frozenset({0})
    if k == 1:
        return frozenset({0, 1})
    return frozenset({min(k, n - k)})


def _spin_deletion(pair, omega_rep, t, n):
    k = t * t // 16
    if k == 0:
        perm = pair.omega.action[omega_rep]
        return frozenset({0, perm[0]})
    if k == 1:
        return frozenset({0, 1, n - 1, n})
    return frozenset({k, n - k})


SHARP_MIN_RANK = {"A": 1, "B": 2, "C": 2, "D": 4}


def enumerate_sharp(affine_type: FiniteType, omega_coords, mode="normative"):
    """Sharp triples of the given affine type for one group element.

    The element is addressed in the chart shared with the dual (blunt)
    side.  Normative mode generates the closed lists; literal mode tests
    the defining predicate over stable corank subsets.
    """
    if mode not in ("normative", "literal"):
        raise ValueError(f"unknown mode {mode!r}")
    y = affine_type
    x = rootdata.dual_affine_type(y)
    # B2^a enters as the dual of C2^a, so the sharp side allows rank 2
    lo = SHARP_MIN_RANK.get(y.family)
    if lo is not None and y.rank < lo:
        raise rootdata.TypeError_(f"{y}^a needs rank >= {lo}")
    if lo is None and not y.is_canonical:
        raise rootdata.TypeError_(f"{y} is not canonical")
    pair = fungroup.dual_pair(x)
    if omega_coords not in pair.omega_prime.action:
        raise ValueError(f"{omega_coords} is not an element of the group of {x}^a")
    if mode == "literal":
        return _enumerate_sharp_literal(pair, y, omega_coords)
    oclass = omega_class(pair, omega_coords)
    rep = dual_action_rep(pair, omega_coords)
    diagram = pair.dual_diagram
    n = y.rank
    out = []
    if y.family == "E" or y.family in "FG":
        for label, deleted, case in _EXCEPTIONAL_SHARP[(y.family, n)]:
            if label == oclass.label:
                out.append(_assemble_sharp(pair, y, omega_coords, oclass, rep,
                                           frozenset(deleted), None, case))
    elif y.family == "A":
        if oclass.label == "gen":
            out.append(_assemble_sharp(pair, y, omega_coords, oclass, rep,
                                       frozenset(range(n + 1)), None, "f"))
    else:
        for case, t, r, deleted in _classical_sharp_cases(y.family, n, oclass):
            if deleted is None:
                deleted = _spin_deletion(pair, rep, t, n)
            out.append(_assemble_sharp(pair, y, omega_coords, oclass, rep,
                                       deleted, (t, r), case))
    uniq = {}
    for tr in out:
        uniq[(tr.omega, tr.i_nodes)] = tr
    return sorted(uniq.values(), key=SharpTriple.sort_key)


def _check_affine_rank(t):
    lo = CLASSICAL_MIN_RANK.get(t.family)
    if lo is not None and t.rank < lo:
        hint = " (define it through C2^a)" if (t.family, t.rank) == ("B", 2) else ""
        raise rootdata.TypeError_(f"{t}^a needs rank >= {lo}{hint}")
    if lo is None and not t.is_canonical:
        raise rootdata.TypeError_(f"{t} is not canonical")


def _assemble_sharp(pair, y, omega_coords, oclass, rep, deleted, params, case):
    diagram = pair.dual_diagram
    nodes = set(range(diagram.n_nodes))
    if not deleted or not deleted <= nodes:
        raise AssertionError(f"bad deletion {deleted} for {y}^a")
    i_nodes = tuple(sorted(nodes - deleted))
    if not pair.omega.stabilizes(rep, i_nodes):
        raise AssertionError(f"I not stable for {y}^a case {case}, params {params}")
    orbit_ok = any(deleted <= set(orb) for orb in pair.omega.orbits())
    if not orbit_ok:
        raise AssertionError(f"S'-I not inside a single orbit for {y}^a case {case}")
    factors = tuple(
        (cnodes, raw)
        for cnodes, raw in (rootdata.components_after_deletion(diagram, deleted)
                            if i_nodes else ())
    )
    orbit = pair.omega.subset_orbit(i_nodes) if i_nodes else ((),)
    return SharpTriple(
        pair.ftype, y, omega_coords, oclass.label, orbit[0], orbit, factors,
        normalize_expr(raw for _, raw in factors), params, case,
    )


# ---------------------------------------------------------------------------
# Literal sharp enumeration
# ---------------------------------------------------------------------------

_LITERAL_SUBORBIT_CUTOFF = 16


def _enumerate_sharp_literal(pair, y, omega_coords):
    oclass = omega_class(pair, omega_coords)
    rep = dual_action_rep(pair, omega_coords)
    og = pair.omega
    diagram = pair.dual_diagram
    perm = og.action[rep]
    seen = {}
    for orbit in og.orbits():
        for deleted in _stable_subsets(orbit, perm):
            i_nodes = tuple(s for s in range(diagram.n_nodes) if s not in deleted)
            wp = _restricted_pair(diagram, deleted, perm)
            if wp is None or not sharpfin.is_sharp(wp):
                continue
            rep_nodes = og.subset_orbit(i_nodes)[0] if i_nodes else ()
            if rep_nodes in seen:
                continue
            factors = tuple(
                (cn, raw)
                for cn, raw in (rootdata.components_after_deletion(diagram, deleted)
                                if i_nodes else ())
            )
            seen[rep_nodes] = SharpTriple(
                pair.ftype, y, omega_coords, oclass.label, rep_nodes,
                og.subset_orbit(i_nodes) if i_nodes else ((),),
                factors, normalize_expr(raw for _, raw in factors),
                None, None,
            )
    return sorted(seen.values(), key=SharpTriple.sort_key)


def _stable_subsets(orbit, perm):
    """Nonempty perm-stable subsets of one orbit.

    When the suborbit count is large (type A with an element of small
    order) only the full orbit can carry a sharp complement: a proper
    stable subset leaves chain components on which the residual power of
    a rotation acts trivially, and no (A_m, 1) with m >= 1 is sharp.
    """
    sub = []
    left = set(orbit)
    while left:
        s = min(left)
        cyc = [s]
        u = perm[s]
        while u != s:
            cyc.append(u)
            u = perm[u]
        cyc = [v for v in cyc if v in left]
        left.difference_update(cyc)
        sub.append(tuple(sorted(cyc)))
    if len(sub) > _LITERAL_SUBORBIT_CUTOFF:
        return [frozenset(orbit)]
    out = []
    for mask in range(1, 1 << len(sub)):
        sel = frozenset(v for i, piece in enumerate(sub) if mask >> i & 1 for v in piece)
        out.append(sel)
    return sorted(out, key=lambda s: (len(s), sorted(s)))


def _restricted_pair(diagram, deleted, perm):
    """Weyl pair (components of the complement, restricted action)."""
    i_nodes = [s for s in range(diagram.n_nodes) if s not in deleted]
    if any(perm[s] in deleted for s in i_nodes):
        return None
    if not i_nodes:
        return sharpfin.identity_pair(())
    comps = rootdata.components_after_deletion(diagram, deleted)
    data = []
    for cnodes, raw in comps:
        canon = normalize_type(raw)
        if len(canon) != 1:
            raise AssertionError("connected component with composite normal form")
        rs = rootdata.build_root_system(canon[0])
        iso = fungroup._component_iso(diagram, cnodes, rs)
        data.append((cnodes, canon[0], iso))
    offsets = []
    off = 0
    for cnodes, ftype, iso in data:
        offsets.append(off)
        off += ftype.rank
    glob = {}
    for (cnodes, ftype, iso), o in zip(data, offsets):
        for a, s in enumerate(cnodes):
            glob[s] = o + iso[a]
    gamma = [0] * off
    for (cnodes, ftype, iso), o in zip(data, offsets):
        for s in cnodes:
            gamma[glob[s]] = glob[perm[s]]
    return sharpfin.WeylPair(tuple(f for _, f, _ in data), tuple(gamma))


# ---------------------------------------------------------------------------
# Strictness
# ---------------------------------------------------------------------------


def is_strictly_sharp(tr: SharpTriple) -> bool:
    """Complement is one full orbit; classical parameters as close as possible."""
    pair = fungroup.dual_pair(tr.base_type)
    deleted = set(range(pair.dual_diagram.n_nodes)) - set(tr.i_nodes)
    rep = min(deleted)
    if set(pair.omega.node_orbit(rep)) != deleted:
        return False
    if tr.affine_type.family in "BCD":
        t, r = tr.params
        if abs(t - r) > 1:
            return False
    return True


def strictly_sharp_params(yfam, n, label):
    """The x-parameterized closed list of strictly sharp data, as (t, r) set."""
    out = set()
    if yfam == "A":
        return out
    if yfam == "B":
        lo, residues = (1, (1, 7)) if label == "1" else (3, (3, 5))
        x = lo
        while (x * x - 1) // 8 <= n:
            if (x * x - 1) // 8 == n and x % 8 in residues:
                t = (x - 1) // 2 if x % 8 in (1, 5) else (x + 1) // 2
                out.add((t, x - t))
            x += 2
    elif yfam == "C":
        if label == "1":
            x = _isqrt(2 * n + 1)
            if x is not None and x % 2 == 1:
                out.add((x, x))
        else:
            x = _isqrt(16 * n + 9)
            if x is not None and x % 8 in (3, 5):
                t = (x + 1) // 2 if x % 8 == 3 else (x - 1) // 2
                r = _isqrt(8 * n + 5 - t * t)
                if r is not None:
                    out.add((t, r))
    elif yfam == "D":
        if label in ("1", "un"):
            x = _isqrt(2 * n)
            if x is not None and (x % 4 == 0) == (label == "1") and x % 2 == 0:
                out.add((x, x))
        else:
            x = _isqrt(16 * n + 1)
            if x is not None and x % 8 in (1, 7):
                t = (x + 1) // 2 if x % 8 == 7 else (x - 1) // 2
                r = _isqrt(8 * n + 1 - t * t)
                if r is not None:
                    out.add((t, r))
    return out


def is_strictly_blunt(x_type: FiniteType, oclass: OmegaClass) -> bool:
    """Strict bluntness of an affine pair, decided by the closed arithmetic."""
    fam, n = x_type.family, x_type.rank
    if fam == "A":
        return oclass.label == "gen" or (n == 1 and oclass.order == 2)
    if fam == "B":
        if oclass.label == "1":
            x = _isqrt(2 * n + 1)
            return x is not None and x % 2 == 1
        x = _isqrt(16 * n + 9)
        return x is not None and x % 8 in (3, 5)
    if fam == "C":
        x = _isqrt(8 * n + 1)
        if x is None:
            return False
        return x % 8 in ((1, 7) if oclass.label == "1" else (3, 5))
    if fam == "D":
        if oclass.label == "1":
            x = _isqrt(2 * n)
            return x is not None and x % 4 == 0
        if oclass.label == "un":
            x = _isqrt(2 * n)
            return x is not None and x % 4 == 2
        x = _isqrt(16 * n + 1)
        return x is not None and x % 8 in (1, 7)
    if fam == "E":
        if n == 8:
            return oclass.label == "1"
        return oclass.label != "1"
    return oclass.label == "1"  # F4, G2


def strictly_blunt_witness(x_type: FiniteType, omega_coords):
    """The unique strictly sharp triple on the dual side, when one exists."""
    pair = fungroup.dual_pair(x_type)
    oclass = omega_class(pair, omega_coords)
    hits = [
        tr for tr in enumerate_sharp(rootdata.dual_affine_type(x_type), omega_coords)
        if is_strictly_sharp(tr)
    ]
    if len(hits) > 1:
        raise AssertionError(f"strictly sharp triple not unique for {x_type}^a")
    if bool(hits) != is_strictly_blunt(x_type, oclass):
        raise AssertionError(f"strict bluntness mismatch for {x_type}^a, {omega_coords}")
    return hits[0] if hits else None


# ---------------------------------------------------------------------------
# Blunt enumeration through the fibers
# ---------------------------------------------------------------------------


def _component_strictly_blunt(comp: fungroup.Component, element) -> bool:
    return is_strictly_blunt(comp.ftype, omega_class_of(comp.og, comp.ftype, element))


def _blunt_node_data(x_type: FiniteType, node: int):
    return fungroup.omega_of_J(x_type, node, fungroup.fiber_chart(x_type))


def _fiber_witnesses(x_type, node, omega_coords):
    o = _blunt_node_data(x_type, node)
    return o, tuple(
        tup for tup in fungroup.m_set(o, omega_coords)
        if all(_component_strictly_blunt(c, e) for c, e in zip(o.components, tup))
    )


def enumerate_blunt(x_type: FiniteType, omega_coords, mode="normative"):
    """Blunt triples of an affine type for one group element.

    "fibers" mode walks orbit representatives of corank-one subsets and
    keeps those whose matching fiber holds a tuple of strictly blunt
    component pairs.  "normative" mode treats the closed classification
    lists as the definition for the classical families and coincides with
    the fiber route elsewhere; the two modes are compared by
    blunt_mode_discrepancies.
    """
    if mode not in ("normative", "fibers"):
        raise ValueError(f"unknown mode {mode!r}")
    _check_affine_rank(x_type)
    pair = fungroup.dual_pair(x_type)
    if omega_coords not in pair.omega_prime.action:
        raise ValueError(f"{omega_coords} is not an element of the group of {x_type}^a")
    oclass = omega_class(pair, omega_coords)
    if mode == "normative" and x_type.family in "ABCD":
        deletions = _normative_blunt_nodes(x_type, oclass)
    else:
        deletions = None
    og = pair.omega_prime
    out = []
    seen = set()
    for s in range(pair.diagram.n_nodes):
        orb = og.node_orbit(s)
        if orb[0] in seen or s != orb[0]:
            continue
        seen.add(orb[0])
        o, witnesses = _fiber_witnesses(x_type, s, omega_coords)
        if deletions is None:
            keep = bool(witnesses)
            params, case = (_blunt_params(x_type, oclass, s, o) if keep else (None, None))
        else:
            keep = s in deletions
            params, case = (deletions[s] if keep else (None, None))
        if not keep:
            continue
        factors = tuple((c.nodes, c.raw_type, c.ftype) for c in o.components)
        out.append(
            BluntTriple(
                x_type, omega_coords, oclass.label, s, o.J, factors,
                normalize_expr(c.ftype for c in o.components), witnesses,
                pair.diagram.marks[s], params, case,
            )
        )
    return sorted(out, key=BluntTriple.sort_key)


def _normative_blunt_nodes(x_type, oclass):
    """Deleted-node orbit representatives from the closed lists: node -> ((x, y), case)."""
    fam, n = x_type.family, x_type.rank
    out = {}
    if fam == "A":
        if oclass.label == "gen":
            out[0] = (None, "f")
        return out
    if fam == "B":
        if oclass.label == "1":
            # n = (x^2 + y^2 - 1)/2, x in 2N, y odd; parts D_{x^2/2} x B_{(y^2-1)/2}
            x = 0
            while x * x <= 2 * n + 1:
                yy = _isqrt(2 * n + 1 - x * x)
                if yy is not None and yy % 2 == 1:
                    out[_bnode(x * x // 2)] = ((x, yy), "h")
                x += 2
        elif oclass.label == "nontriv":
            x = 1
            while x * x <= 16 * n + 10:
                yy = _isqrt(16 * n + 10 - x * x)
                if x % 8 in (1, 7) and yy is not None and yy % 8 in (3, 5):
                    out[_bnode((x * x - 1) // 16)] = ((x, yy), "h'")
                x += 2
    elif fam == "C":
        lo = {"1": (0, 4), "nontriv": (4, 4)}.get(oclass.label)
        if lo is not None:
            for x in range(1, _isqrt_floor(8 * n + 2) + 1, 2):
                yy = _isqrt(8 * n + 2 - x * x)
                if yy is None or yy % 2 == 0 or yy > x:
                    continue
                if (x + yy) % 8 == lo[0] or (x - yy) % 8 == lo[0]:
                    out[(yy * yy - 1) // 8] = ((x, yy), "g" if lo[0] == 0 else "g'")
    else:
        if oclass.label in ("1", "un"):
            want = 0 if oclass.label == "1" else 2
            for y in range(0, _isqrt_floor(n) + 1, 2):
                x = _isqrt(2 * n - y * y)
                if x is not None and x % 2 == 0 and x >= y and (x - y) % 4 == want:
                    out[_dnode(y * y // 2, n)] = ((x, y), "i" if want == 0 else "i'")
        elif oclass.label == "spin":
            for y in range(1, _isqrt_floor(16 * n + 2) + 1, 2):
                x = _isqrt(16 * n + 2 - y * y)
                if x is not None and x >= y and x % 8 in (1, 7) and y % 8 in (1, 7):
                    out[_dnode((y * y - 1) // 16, n)] = ((x, y), "i''")
    return out


def _bnode(k):
    return 0 if k == 0 else k


def _dnode(k, n):
    return 0 if k == 0 else min(k, n - k)


def _isqrt_floor(x):
    r = int(x ** 0.5)
    while r * r > x:
        r -= 1
    while (r + 1) * (r + 1) <= x:
        r += 1
    return r


def blunt_mode_discrepancies(x_type: FiniteType, omega_coords):
    """Deterministic report of list-vs-fiber differences for one input."""
    normative = {b.deleted_node: b for b in enumerate_blunt(x_type, omega_coords)}
    fibers = {b.deleted_node: b for b in enumerate_blunt(x_type, omega_coords, "fibers")}
    out = []
    for key in sorted(set(normative) | set(fibers)):
        if key in normative and key not in fibers:
            out.append(("normative-only", x_type, omega_coords, key,
                        rootdata.expr_str(normative[key].expr)))
        if key in fibers and key not in normative:
            out.append(("fibers-only", x_type, omega_coords, key,
                        rootdata.expr_str(fibers[key].expr)))
    return out


def _blunt_params(x_type, oclass, deleted, o):
    """Recover the closed-list parameters (x, y) from a corank-one deletion."""
    fam, n = x_type.family, x_type.rank
    if fam not in "BCD":
        return None, None
    if fam == "B":
        k = 0 if deleted in (0, 1) else deleted
        d_rank, b_rank = k, n - k
        if oclass.label == "1":
            x = _isqrt(2 * d_rank)
            y = _isqrt(2 * b_rank + 1)
            case = "h"
        else:
            x = _isqrt(16 * d_rank + 1)
            y = _isqrt(16 * b_rank + 9)
            case = "h'"
    elif fam == "C":
        k = min(deleted, n - deleted)
        a_rank, b_rank = max(k, n - k), min(k, n - k)
        if oclass.label == "1":
            x, y = _isqrt(8 * a_rank + 1), _isqrt(8 * b_rank + 1)
            case = "g"
        else:
            x, y = _isqrt(8 * a_rank + 1), _isqrt(8 * b_rank + 1)
            case = "g'"
    else:
        k = 0 if deleted in (0, 1, n - 1, n) else min(deleted, n - deleted)
        a_rank, b_rank = max(k, n - k), min(k, n - k)
        if oclass.label in ("1", "un"):
            x, y = _isqrt(2 * a_rank), _isqrt(2 * b_rank)
            case = "i" if oclass.label == "1" else "i'"
        else:
            x, y = _isqrt(16 * a_rank + 1), _isqrt(16 * b_rank + 1)
            case = "i''"
    if x is None or y is None:
        # fiber-mode triples beyond the closed lists have no parameters
        return None, None
    return (x, y), case


def params_of(triple):
    """Classical parameters of a triple; an error for exceptional types."""
    if triple.affine_type.family not in "BCD":
        raise ValueError("parameters are defined for classical B, C, D types only")
    if triple.params is None:
        raise AssertionError(f"classification bug: no parameters for {triple}")
    return triple.params


# ---------------------------------------------------------------------------
# The mod-8 equivalence
# ---------------------------------------------------------------------------


def lemma27_equivalence(t_max=200, r_max=201):
    """Check (t/4 = n mod 2) <=> (t + r = +-1 mod 8) on the whole grid.

    Returns (ok, counterexamples) over t in 4N, r odd, with n = (t^2 +
    r^2 - 1)/8 integral.
    """
    bad = []
    for t in range(0, t_max + 1, 4):
        for r in range(1, r_max + 1, 2):
            if (t * t + r * r - 1) % 8:
                continue
            n = (t * t + r * r - 1) // 8
            lhs = (t // 4) % 2 == n % 2
            rhs = (t + r) % 8 in (1, 7)
            if lhs != rhs:
                bad.append((t, r, n))
    return not bad, bad


# ---------------------------------------------------------------------------
# Literal-vs-normative discrepancy report
# ---------------------------------------------------------------------------


def sharp_mode_discrepancies(affine_type: FiniteType, omega_coords):
    """Deterministic report of list-vs-predicate differences for one input."""
    normative = {tr.i_nodes: tr for tr in enumerate_sharp(affine_type, omega_coords)}
    literal = {tr.i_nodes: tr for tr in enumerate_sharp(affine_type, omega_coords, "literal")}
    out = []
    for key in sorted(set(normative) | set(literal)):
        if key in normative and key not in literal:
            out.append(("normative-only", affine_type, omega_coords, key,
                        rootdata.expr_str(normative[key].expr)))
        if key in literal and key not in normative:
            out.append(("literal-only", affine_type, omega_coords, key,
                        rootdata.expr_str(literal[key].expr)))
    return out
