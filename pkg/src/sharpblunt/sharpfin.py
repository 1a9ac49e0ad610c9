"""Sharpness of finite Weyl groups with a diagram automorphism.

Two independent backends decide sharpness of an irreducible pair: a closed
classification table, and a generic-degree computation over exact integer
polynomials (classical types).  The generic degrees come from the standard
symbol product formula; they are validated against character degrees at
q = 1 and against the Poincare polynomial sum rule in the test suite.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from math import factorial

from . import rootdata
from .rootdata import FiniteType

DEFAULT_RANK_BOUND = 12


class CapacityError(ValueError):
    """Rank beyond the configured bound of the generic-degree backend."""


# ---------------------------------------------------------------------------
# Weyl pairs and automorphism profiles
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class WeylPair:
    """A product of irreducible Weyl groups with an ordinary automorphism.

    Nodes are indexed factor by factor in canonical simple-root order;
    gamma is a permutation of all nodes preserving the diagram with bond
    order at most 3 inside every orbit.
    """

    factors: tuple[FiniteType, ...]
    gamma: tuple[int, ...]

    def __post_init__(self):
        for t in self.factors:
            if not t.is_canonical:
                raise rootdata.TypeError_(f"factor {t} is not canonical")
        n = sum(t.rank for t in self.factors)
        if sorted(self.gamma) != list(range(n)):
            raise ValueError("gamma is not a permutation of the nodes")
        cart = _block_cartan(self.factors)
        g = self.gamma
        for i in range(n):
            for j in range(n):
                if cart[g[i]][g[j]] != cart[i][j]:
                    raise ValueError("gamma does not preserve the diagram")
        for orbit in _orbits(self.gamma):
            for i in orbit:
                for j in orbit:
                    if i != j and cart[i][j] * cart[j][i] > 1:
                        raise ValueError("gamma is not ordinary: bond > 3 inside an orbit")

    @property
    def rank(self):
        return len(self.gamma)


def identity_pair(factors) -> WeylPair:
    factors = tuple(factors)
    n = sum(t.rank for t in factors)
    return WeylPair(factors, tuple(range(n)))


def _block_cartan(factors):
    n = sum(t.rank for t in factors)
    cart = [[0] * n for _ in range(n)]
    off = 0
    for t in factors:
        a = rootdata.build_root_system(t).cartan
        for i in range(t.rank):
            for j in range(t.rank):
                cart[off + i][off + j] = a[i][j]
        off += t.rank
    return cart


def _orbits(perm):
    seen, out = set(), []
    for i in range(len(perm)):
        if i in seen:
            continue
        orb, j = [], i
        while j not in seen:
            seen.add(j)
            orb.append(j)
            j = perm[j]
        out.append(tuple(orb))
    return out


def _perm_order(perm):
    out = 1
    for orb in _orbits(perm):
        out = out * len(orb) // _gcd(out, len(orb))
    return out


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


@dataclass(frozen=True)
class GammaFactor:
    """A gamma-irreducible factor: cyclically permuted isomorphic components."""

    ftype: FiniteType
    orbit_length: int
    residual: tuple[int, ...]  # node permutation of one component, local indices
    is_op: bool
    residual_order: int


@dataclass(frozen=True)
class AutomorphismProfile:
    factors: tuple[GammaFactor, ...]
    r: int
    order: int


def automorphism_profile(p: WeylPair) -> AutomorphismProfile:
    """Gamma-irreducible factors with residual automorphisms, r and ord."""
    offsets = []
    off = 0
    for t in p.factors:
        offsets.append(off)
        off += t.rank
    # Components map to components; read the induced factor permutation.
    fperm = []
    for f, t in enumerate(p.factors):
        img_node = p.gamma[offsets[f]]
        g = next(i for i, o in enumerate(offsets) if o <= img_node < o + p.factors[i].rank)
        if p.factors[g] != t:
            raise ValueError("gamma maps a factor to one of a different type")
        fperm.append(g)
    out = []
    for orbit in _orbits(tuple(fperm)):
        f0 = min(orbit)
        t = p.factors[f0]
        ell = len(orbit)
        # residual = gamma^ell restricted to the first component of the orbit
        res = []
        for i in range(t.rank):
            j = offsets[f0] + i
            for _ in range(ell):
                j = p.gamma[j]
            if not offsets[f0] <= j < offsets[f0] + t.rank:
                raise AssertionError("gamma^orbit does not stabilize the component")
            res.append(j - offsets[f0])
        res = tuple(res)
        out.append(
            GammaFactor(
                t, ell, res, res == rootdata.op_automorphism(t), _perm_order(res)
            )
        )
    return AutomorphismProfile(
        tuple(out), len(_orbits(p.gamma)), _perm_order(p.gamma)
    )


# ---------------------------------------------------------------------------
# Classification backend
# ---------------------------------------------------------------------------


def _is_square(x):
    if x < 0:
        return False
    r = int(x ** 0.5)
    while r * r < x:
        r += 1
    while r * r > x:
        r -= 1
    return r * r == x


def sharp_ranks_a(m):
    # m = (t^2 - 9)/8 for odd t >= 5
    return m >= 2 and _is_square(8 * m + 9) and int((8 * m + 9) ** 0.5) >= 5


def sharp_ranks_b(m):
    # m = (t^2 - 1)/4 for odd t >= 3
    return m >= 2 and _is_square(4 * m + 1) and (4 * m + 1) % 2 == 1


def sharp_ranks_d(m):
    # m = t^2/4 for even t >= 4
    return m >= 4 and _is_square(m)


def _sharp_irreducible(t: FiniteType, residual, residual_order) -> bool:
    """The closed list of sharp irreducible pairs."""
    fam, m = t.family, t.rank
    weyl_fam = "B" if fam == "C" else fam
    is_op = residual == rootdata.op_automorphism(t)
    if weyl_fam == "E":
        if m == 8 or m == 7:
            return is_op
        return True  # E6: both automorphisms are sharp
    if weyl_fam in ("F", "G"):
        return is_op
    if weyl_fam == "A":
        return is_op and sharp_ranks_a(m)
    if weyl_fam == "B":
        return is_op and sharp_ranks_b(m)
    if weyl_fam == "D":
        if residual_order == 3:
            return m == 4
        return is_op and sharp_ranks_d(m)
    raise AssertionError(t)


def is_sharp(p: WeylPair) -> bool:
    """Sharpness of a Weyl pair: every gamma-irreducible factor is sharp."""
    prof = automorphism_profile(p)
    return all(
        _sharp_irreducible(f.ftype, f.residual, f.residual_order) for f in prof.factors
    )


# ---------------------------------------------------------------------------
# Exact polynomial helpers (integer coefficient lists, ascending powers)
# ---------------------------------------------------------------------------


def _pmul_two_term(p, a, b, sign):
    """Multiply by q^a + sign*q^b with a > b >= 0."""
    out = [0] * (len(p) + a)
    for i, c in enumerate(p):
        if c:
            out[i + a] += c
            out[i + b] += sign * c
    return out


def _pdiv_two_term(p, a, b, sign):
    """Exact division by q^a + sign*q^b with a > b >= 0."""
    out = [0] * (len(p) - a)
    rem = list(p)
    for i in range(len(rem) - 1, a - 1, -1):
        c = rem[i]
        if c:
            out[i - a] = c
            rem[i] = 0
            rem[i - a + b] -= sign * c
    if any(rem):
        raise AssertionError("inexact polynomial division")
    while out and out[-1] == 0:
        out.pop()
    return out


def _pshift_down(p, e):
    if any(p[:e]):
        raise AssertionError("polynomial not divisible by q^e")
    return list(p[e:])


def _peval1(p):
    return sum(p)


def _content(p):
    g = 0
    for c in p:
        g = _gcd(g, abs(c))
    return g or 1


# ---------------------------------------------------------------------------
# Labels, symbols and dimensions
# ---------------------------------------------------------------------------


def partitions(n, cap=None):
    """Partitions of n as descending tuples."""
    if n == 0:
        yield ()
        return
    cap = n if cap is None else min(cap, n)
    for first in range(cap, 0, -1):
        for rest in partitions(n - first, first):
            yield (first,) + rest


def _hooks(lam):
    lam = [x for x in lam if x]
    conj = [0] * (lam[0] if lam else 0)
    for row in lam:
        for j in range(row):
            conj[j] += 1
    out = []
    for i, row in enumerate(lam):
        for j in range(row):
            out.append(row - j + conj[j] - i - 1)
    return out


def _dim_partition(lam):
    n = sum(lam)
    f = factorial(n)
    for h in _hooks(lam):
        f //= h
    return f


def _binom(n, k):
    if k < 0 or k > n:
        return 0
    return factorial(n) // (factorial(k) * factorial(n - k))


def symbol_of_bipartition(alpha, beta):
    """Defect-one symbol (two strictly increasing rows) of a bipartition."""
    m = max(len(alpha), len(beta) + 1) - 1
    a = list(reversed(tuple(alpha) + (0,) * (m + 1 - len(alpha))))
    b = list(reversed(tuple(beta) + (0,) * (m - len(beta))))
    S = tuple(a[i] + i for i in range(m + 1))
    T = tuple(b[j] + j for j in range(m))
    return S, T


def symbol_of_pair(alpha, beta):
    """Defect-zero symbol for an unordered pair (type D)."""
    m = max(len(alpha), len(beta), 1)
    a = list(reversed(tuple(alpha) + (0,) * (m - len(alpha))))
    b = list(reversed(tuple(beta) + (0,) * (m - len(beta))))
    S = tuple(a[i] + i for i in range(m))
    T = tuple(b[j] + j for j in range(m))
    return S, T


def _interleaves(S, T):
    # S has length len(T) or len(T)+1; weak interleaving decides specialness
    for i, t in enumerate(T):
        if not (S[i] <= t and (i + 1 >= len(S) or t <= S[i + 1])):
            return False
    return True


def symbol_is_special(S, T):
    if len(S) == len(T):
        return _interleaves(S, T) or _interleaves(T, S)
    return _interleaves(S, T)


# ---------------------------------------------------------------------------
# Generic degrees
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class GenericDegreeRecord:
    label: tuple
    coeffs: tuple[int, ...]  # numerator coefficients, ascending in q
    denom: int               # D = coeffs / denom, denom a power of 2
    N: int
    z: int
    special: bool
    dim: int

    def at_one(self):
        v = _peval1(self.coeffs)
        if v % self.denom:
            raise AssertionError("generic degree not integral at q = 1")
        return v // self.denom


def _degree_from_symbol(S, T, n, dfamily):
    """Symbol product formula; dfamily selects the B/C or D normalization."""
    p = [1]
    for i in range(len(S)):
        for i2 in range(i + 1, len(S)):
            p = _pmul_two_term(p, S[i2], S[i], -1)
    for j in range(len(T)):
        for j2 in range(j + 1, len(T)):
            p = _pmul_two_term(p, T[j2], T[j], -1)
    for s in S:
        for t in T:
            if s == t:
                p = [0] * s + [2 * c for c in p]
            else:
                p = _pmul_two_term(p, max(s, t), min(s, t), 1)
    if dfamily:
        for h in range(1, n):
            p = _pmul_two_term(p, 2 * h, 0, -1)
        p = _pmul_two_term(p, n, 0, -1)
    else:
        for h in range(1, n + 1):
            p = _pmul_two_term(p, 2 * h, 0, -1)
    # denominator
    for row in (S, T):
        for s in row:
            for h in range(1, s + 1):
                p = _pdiv_two_term(p, 2 * h, 0, -1)
    a, b = len(S), len(T)
    e = 0
    k = a + b - 2
    while k >= 2:
        e += k * (k - 1) // 2
        k -= 2
    p = _pshift_down(p, e)
    if dfamily:
        two = 1 << max(len(S) - 1 + (1 if S == T else 0), 0)
    else:
        two = 1 << len(T)
    return p, two


def _reduce_record(label, p, two, special, dim):
    g = _gcd(_content(p), two)
    coeffs = tuple(c // g for c in p)
    denom = two // g
    z = 0
    probe = list(coeffs)
    while probe and _peval1([c * (-1) ** i for i, c in enumerate(probe)]) == 0:
        probe = _pdiv_two_term(probe, 1, 0, 1)
        z += 1
    return GenericDegreeRecord(label, coeffs, denom, denom, z, special, dim)


@lru_cache(maxsize=None)
def generic_degree(t: FiniteType, label, rank_bound=DEFAULT_RANK_BOUND) -> GenericDegreeRecord:
    """Exact generic degree record for a classical-type character label.

    Labels: ('A', partition) with partition of rank+1; ('B', alpha, beta)
    bipartition of the rank (also used for type C); ('D', alpha, beta[, tag])
    with tag distinguishing split pairs when alpha == beta.
    """
    fam = t.family
    if fam not in "ABCD":
        raise CapacityError(f"generic degrees implemented for classical types, not {t}")
    if t.rank > rank_bound:
        raise CapacityError(f"rank {t.rank} exceeds the configured bound {rank_bound}")
    kind = label[0]
    if fam == "A":
        if kind != "A" or sum(label[1]) != t.rank + 1:
            raise ValueError(f"bad label {label} for {t}")
        lam = label[1]
        p = [1]
        for h in range(1, t.rank + 2):
            p = _pmul_two_term(p, h, 0, -1)
        for h in _hooks(lam):
            p = _pdiv_two_term(p, h, 0, -1)
        nlam = sum(i * x for i, x in enumerate(lam))
        p = [0] * nlam + p
        return _reduce_record(label, p, 1, True, _dim_partition(lam))
    if fam in "BC":
        if kind != "B" or sum(label[1]) + sum(label[2]) != t.rank:
            raise ValueError(f"bad label {label} for {t}")
        alpha, beta = label[1], label[2]
        S, T = symbol_of_bipartition(alpha, beta)
        p, two = _degree_from_symbol(S, T, t.rank, dfamily=False)
        dim = _binom(t.rank, sum(alpha)) * _dim_partition(alpha) * _dim_partition(beta)
        return _reduce_record(label, p, two, symbol_is_special(S, T), dim)
    if kind != "D" or sum(label[1]) + sum(label[2]) != t.rank:
        raise ValueError(f"bad label {label} for {t}")
    alpha, beta = label[1], label[2]
    S, T = symbol_of_pair(alpha, beta)
    p, two = _degree_from_symbol(S, T, t.rank, dfamily=True)
    dim = _binom(t.rank, sum(alpha)) * _dim_partition(alpha) * _dim_partition(beta)
    if alpha == beta:
        dim //= 2
    return _reduce_record(label, p, two, symbol_is_special(S, T), dim)


def irreducible_labels(t: FiniteType):
    """All character labels of a classical type, deterministically ordered."""
    fam, n = t.family, t.rank
    if fam == "A":
        return [("A", lam) for lam in partitions(n + 1)]
    if fam in "BC":
        out = []
        for k in range(n, -1, -1):
            for alpha in partitions(k):
                for beta in partitions(n - k):
                    out.append(("B", alpha, beta))
        return out
    out = []
    seen = set()
    for k in range(n, -1, -1):
        for alpha in partitions(k):
            for beta in partitions(n - k):
                if (beta, alpha) in seen:
                    continue
                seen.add((alpha, beta))
                if alpha == beta:
                    out.append(("D", alpha, beta, 1))
                    out.append(("D", alpha, beta, 2))
                else:
                    out.append(("D", alpha, beta))
    return out


def weyl_group_order(t: FiniteType):
    fam, n = t.family, t.rank
    if fam == "A":
        return factorial(n + 1)
    if fam in "BC":
        return factorial(n) << n
    if fam == "D":
        return factorial(n) << (n - 1)
    raise ValueError(t)


def reflection_degrees(t: FiniteType):
    fam, n = t.family, t.rank
    if fam == "A":
        return list(range(2, n + 2))
    if fam in "BC":
        return list(range(2, 2 * n + 1, 2))
    if fam == "D":
        return list(range(2, 2 * n - 1, 2)) + [n]
    raise ValueError(t)


def r_op(t: FiniteType) -> int:
    """Number of orbits of the longest-element automorphism on the nodes."""
    return len(_orbits(rootdata.op_automorphism(t)))


def z_maximal_special(t: FiniteType, rank_bound=DEFAULT_RANK_BOUND):
    """The special records with z equal to r(op); the list should be 0 or 1 long."""
    weyl_t = FiniteType("B", t.rank) if t.family == "C" else t
    target = r_op(weyl_t)
    out = []
    for label in irreducible_labels(weyl_t):
        rec = generic_degree(weyl_t, label, rank_bound)
        if rec.special and rec.z == target:
            out.append(rec)
    return out


def is_sharp_generic(p: WeylPair, rank_bound=DEFAULT_RANK_BOUND) -> bool:
    """Generic-degree backend for an irreducible classical pair."""
    if len(p.factors) != 1:
        raise ValueError("generic-degree backend takes one irreducible factor")
    t = p.factors[0]
    if t.family not in "ABCD":
        raise CapacityError(f"generic-degree backend covers classical types, not {t}")
    hits = z_maximal_special(t, rank_bound)
    if len(hits) > 1:
        raise AssertionError(f"z-maximal special representation not unique for {t}")
    if not hits:
        return False
    rec = hits[0]
    is_op = p.gamma == rootdata.op_automorphism(t)
    return is_op or rec.N % 3 == 0 or _perm_order(p.gamma) == 3


def ordinary_automorphisms(t: FiniteType):
    """Ordinary diagram automorphisms of a canonical irreducible type.

    Closed lists; a brute-force permutation search cross-checks them at
    small rank in the tests.
    """
    fam, n = t.family, t.rank
    ident = tuple(range(n))
    if fam == "A":
        return [ident] if n == 1 else [ident, tuple(range(n - 1, -1, -1))]
    if fam in "BC" or fam in "FG":
        return [ident]
    if fam == "D":
        swap = tuple(range(n - 2)) + (n - 1, n - 2)
        if n > 4:
            return [ident, swap]
        out = []
        for perm3 in itertools.permutations((0, 2, 3)):
            full = [1] * 4
            full[1] = 1
            for src, dst in zip((0, 2, 3), perm3):
                full[src] = dst
            out.append(tuple(full))
        return sorted(out)
    if fam == "E" and n == 6:
        return [ident, rootdata.op_automorphism(t)]
    return [ident]


def ordinary_automorphisms_bruteforce(t: FiniteType):
    cart = rootdata.build_root_system(t).cartan
    n = t.rank
    out = []
    for perm in itertools.permutations(range(n)):
        if all(cart[perm[i]][perm[j]] == cart[i][j] for i in range(n) for j in range(n)):
            if all(
                cart[i][j] * cart[j][i] <= 1
                for orb in _orbits(perm)
                for i in orb
                for j in orb
                if i != j
            ):
                out.append(tuple(perm))
    return sorted(out)


def crosscheck_backends(max_rank=DEFAULT_RANK_BOUND, rank_bound=None):
    """Compare both sharpness backends over all classical irreducible pairs.

    Returns (mismatches, sharp_ranks) where sharp_ranks maps each family to
    the set of ranks admitting at least one sharp automorphism.
    """
    rank_bound = rank_bound or max(max_rank, DEFAULT_RANK_BOUND)
    mismatches = []
    sharp_ranks = {"A": set(), "B": set(), "C": set(), "D": set()}
    for fam in "ABCD":
        lo = {"A": 1, "B": 2, "C": 2, "D": 4}[fam]
        for n in range(lo, max_rank + 1):
            t = FiniteType(fam, n)
            for gamma in ordinary_automorphisms(t):
                p = WeylPair((t,), gamma)
                table = is_sharp(p)
                generic = is_sharp_generic(p, rank_bound)
                if table != generic:
                    mismatches.append((str(t), gamma, table, generic))
                if table:
                    sharp_ranks[fam].add(n)
    return mismatches, sharp_ranks
