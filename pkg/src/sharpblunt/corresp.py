"""The surjection from blunt to sharp classes and its enhanced bijection.

For the three classical dual pairs the map is parameter arithmetic: the
blunt parameters (x, y) go to sharp parameters (t, r) either by
(x+y, |x-y|) or by the unique admissible half-pair, and in the half-pair
cases a congruence on x +- y predicts which of t > r or t < r occurs.
For the big-mark types the sharp class is unique and the blunt classes
are separated by the mark of the deleted node; tagging repeated marks
makes the enhanced map a bijection.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from . import fungroup, rootdata, triples
from .rootdata import FiniteType


@dataclass(frozen=True)
class ParamSets:
    """One classical case of the parameter bijection."""

    case: str
    blunt_family: str
    omega_label: str  # "1" or "nontriv"-style selector
    y_member: object  # predicate on (x, y)
    x_member: object  # predicate on (t, r)
    halves: bool      # half-pair rule instead of (x+y, |x-y|)
    side_modulus: int | None  # congruence separating t > r from t < r
    side_residue: int | None


def _case_g(x, y):
    return x % 2 == 0 and y % 2 == 1


def _case_gp(x, y):
    return x % 8 in (1, 7) and y % 8 in (3, 5)


def _case_h(x, y):
    return x % 2 == 1 and y % 2 == 1 and x >= y and ((x + y) % 8 == 0 or (x - y) % 8 == 0)


def _case_hp(x, y):
    return x % 2 == 1 and y % 2 == 1 and x >= y and ((x + y) % 8 == 4 or (x - y) % 8 == 4)


def _case_i(x, y):
    return x % 2 == 0 and y % 2 == 0 and x >= y and (x - y) % 4 == 0


def _case_ip(x, y):
    return x % 2 == 0 and y % 2 == 0 and x >= y and (x - y) % 4 == 2


def _case_ipp(x, y):
    return x % 8 in (1, 7) and y % 8 in (1, 7) and x >= y


CASES = {
    "g": ParamSets("g", "B", "1", _case_g,
                   lambda t, r: t % 2 == 1 and r % 2 == 1 and t >= r, False, None, None),
    "g'": ParamSets("g'", "B", "nontriv", _case_gp,
                    lambda t, r: t % 4 == 2 and r % 2 == 1, True, 4, 0),
    "h": ParamSets("h", "C", "1", _case_h,
                   lambda t, r: t % 4 == 0 and r % 2 == 1, True, 8, 0),
    "h'": ParamSets("h'", "C", "nontriv", _case_hp,
                    lambda t, r: t % 4 == 2 and r % 2 == 1, True, 8, 4),
    "i": ParamSets("i", "D", "1", _case_i,
                   lambda t, r: t % 4 == 0 and r % 4 == 0 and t >= r, False, None, None),
    "i'": ParamSets("i'", "D", "un", _case_ip,
                    lambda t, r: t % 4 == 2 and r % 4 == 2 and t >= r, False, None, None),
    "i''": ParamSets("i''", "D", "spin", _case_ipp,
                     lambda t, r: t % 4 == 0 and r % 2 == 1 and (t + r) % 8 in (1, 7),
                     True, 8, 0),
}


def case_for(blunt_family: str, omega_label: str) -> ParamSets:
    key = {
        ("B", "1"): "g", ("B", "nontriv"): "g'",
        ("C", "1"): "h", ("C", "nontriv"): "h'",
        ("D", "1"): "i", ("D", "un"): "i'", ("D", "spin"): "i''",
    }.get((blunt_family, omega_label))
    if key is None:
        raise ValueError(f"no parameter case for family {blunt_family}, omega {omega_label}")
    return CASES[key]


def f_param(case: str, x: int, y: int):
    """Image (t, r) of blunt parameters, with the computed > / < side."""
    ps = CASES[case]
    if not ps.y_member(x, y):
        raise ValueError(f"({x}, {y}) is not in the blunt parameter set of case {case}")
    if not ps.halves:
        t, r = x + y, abs(x - y)
        if not ps.x_member(t, r):
            raise AssertionError(f"classification bug: image ({t}, {r}) not sharp in case {case}")
        return t, r, "n/a"
    a, b = (x + y) // 2, abs(x - y) // 2
    hits = [(t, r) for t, r in ((a, b), (b, a)) if ps.x_member(t, r)]
    if len(hits) != 1:
        raise AssertionError(
            f"classification bug: {len(hits)} admissible half-pairs for ({x}, {y}) in {case}"
        )
    t, r = hits[0]
    side = ">" if t > r else ("<" if t < r else "=")
    side_pred = ">" if (x + y) % ps.side_modulus == ps.side_residue else "<"
    if side != "=" and side != side_pred:
        raise AssertionError(f"side rule fails for ({x}, {y}) in case {case}")
    return t, r, side


def _sharp_index(x_type: FiniteType, omega_coords):
    y = rootdata.dual_affine_type(x_type)
    out = {}
    for tr in triples.enumerate_sharp(y, omega_coords):
        out[tr.params] = tr
    return out


def iota(x_type: FiniteType, omega_coords, blunt: triples.BluntTriple) -> triples.SharpTriple:
    """The sharp class attached to a blunt class."""
    pair = fungroup.dual_pair(x_type)
    sharps = _sharp_index(x_type, omega_coords)
    if not sharps:
        raise AssertionError(f"no sharp targets for {x_type}^a, omega {omega_coords}")
    if pair.diagram.boc >= 3:
        if len(sharps) != 1:
            raise AssertionError(f"sharp class not unique for {x_type}^a")
        return next(iter(sharps.values()))
    if x_type.family == "A":
        (tr,) = sharps.values()
        return tr
    oc = triples.omega_class(pair, omega_coords)
    ps = case_for(x_type.family, "nontriv" if oc.label == "nontriv" else oc.label)
    t, r, _ = f_param(ps.case, *blunt.params)
    if (t, r) not in sharps:
        raise AssertionError(
            f"image ({t}, {r}) of blunt {blunt.params} missing from the sharp list"
        )
    return sharps[(t, r)]


UNRESOLVED_SMALL_MARK = "1-or-2"


def theta(w_prime_type: FiniteType, omega_coords):
    """Multiset of deleted-node marks over the blunt classes of the dual.

    Types with all marks at most 2 carry a single unresolved value; the
    enhanced bijection never branches on it.
    """
    x_type = rootdata.dual_affine_type(w_prime_type)
    pair = fungroup.dual_pair(x_type)
    if pair.diagram.boc <= 2:
        return (UNRESOLVED_SMALL_MARK,)
    return tuple(b.mark for b in triples.enumerate_blunt(x_type, omega_coords))


def theta_tagged(w_prime_type: FiniteType, omega_coords):
    """Theta with repeated values carrying ordinal tags, in blunt-class order."""
    values = theta(w_prime_type, omega_coords)
    seen = {}
    out = []
    for m in values:
        seen[m] = seen.get(m, 0) + 1
        out.append((m, seen[m]))
    return tuple(out)


def iota_tilde(x_type: FiniteType, omega_coords):
    """Pairs (blunt class, sharp class, tagged mark); verified bijective."""
    pair = fungroup.dual_pair(x_type)
    blunts = triples.enumerate_blunt(x_type, omega_coords)
    w_prime = rootdata.dual_affine_type(x_type)
    tags = theta_tagged(w_prime, omega_coords)
    out = []
    if pair.diagram.boc <= 2:
        for b in blunts:
            out.append((b, iota(x_type, omega_coords, b), (UNRESOLVED_SMALL_MARK, 1)))
    else:
        if len(tags) != len(blunts):
            raise AssertionError("theta size does not match the blunt class count")
        for b, tag in zip(blunts, tags):
            if tag[0] != b.mark:
                raise AssertionError("theta tagging out of order")
            out.append((b, iota(x_type, omega_coords, b), tag))
    images = {(tr.i_nodes, tag) for _, tr, tag in out}
    if len(images) != len(out):
        raise AssertionError(f"enhanced map not injective for {x_type}^a, {omega_coords}")
    sharps = _sharp_index(x_type, omega_coords)
    hit = {tr.i_nodes for _, tr, _ in out}
    if blunts and hit != {tr.i_nodes for tr in sharps.values()}:
        raise AssertionError(f"map not surjective for {x_type}^a, {omega_coords}")
    return out


# ---------------------------------------------------------------------------
# Symmetric-group class orders inside the big-mark diagrams
# ---------------------------------------------------------------------------

_CLASS_EMBEDDINGS = {
    5: ("E8", {
        (1, 1, 1, 1, 1): 0,
        (2, 1, 1, 1): 8,
        (2, 2, 1): 1,
        (3, 1, 1): 7,
        (4, 1): 6,
        (5,): 5,
        (3, 2): 4,
    }),
    4: ("F4", {
        (1, 1, 1, 1): 0,
        (2, 1, 1): 1,
        (2, 2): 4,
        (3, 1): 2,
        (4,): 3,
    }),
    3: ("G2", {
        (1, 1, 1): 0,
        (2, 1): 2,
        (3,): 1,
    }),
}


def _lcm(a, b):
    return a * b // gcd(a, b)


def cycle_type_order(ct):
    out = 1
    for part in ct:
        out = _lcm(out, part)
    return out


def class_order_embedding(k: int):
    """Injection of symmetric-group classes into affine nodes by element order.

    Returns (target type, {cycle type: node}, omitted marks).  The image
    node of a class carries its element order as the mark; the two
    order-2 classes of S4 and S5 go to the two mark-2 nodes, the double
    transposition landing at the far end of the chain.
    """
    if k not in _CLASS_EMBEDDINGS:
        raise ValueError("class-order embeddings exist for k in {3, 4, 5}")
    name, table = _CLASS_EMBEDDINGS[k]
    t = FiniteType.parse(name)
    d = rootdata.affinize(t)
    for ct, node in table.items():
        if d.marks[node] != cycle_type_order(ct):
            raise AssertionError(f"embedding mark mismatch at {ct}")
    if len(set(table.values())) != len(table):
        raise AssertionError("embedding not injective")
    omitted = [d.marks[s] for s in range(d.n_nodes) if s not in table.values()]
    return t, dict(table), tuple(sorted(omitted, reverse=True))


# ---------------------------------------------------------------------------
# Fiber-count report
# ---------------------------------------------------------------------------


def euler_phi(m: int) -> int:
    return sum(1 for j in range(1, m + 1) if gcd(j, m) == 1)


def phi_count_report(x_type: FiniteType, omega_coords):
    """Per corank-one class: |M*| against phi(mark), big-mark types only."""
    pair = fungroup.dual_pair(x_type)
    if pair.diagram.boc < 3:
        raise ValueError("the fiber-count identity is stated for marks above 2")
    og = pair.omega_prime
    rows = []
    seen = set()
    for s in range(pair.diagram.n_nodes):
        if og.node_orbit(s)[0] in seen or s != og.node_orbit(s)[0]:
            continue
        seen.add(s)
        o, wit = triples._fiber_witnesses(x_type, s, omega_coords)
        mark = pair.diagram.marks[s]
        blunt = bool(wit)
        rows.append({
            "node": s,
            "types": rootdata.expr_str(rootdata.normalize_expr(c.ftype for c in o.components)),
            "mark": mark,
            "witnesses": len(wit),
            "phi": euler_phi(mark),
            "blunt": blunt,
            "identity_holds": (len(wit) == euler_phi(mark)) if blunt else True,
        })
    return rows
