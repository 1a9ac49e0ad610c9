"""Exact integer-lattice algebra: Smith forms, finite quotients, homs, pairings.

All arithmetic is exact.  Quotient charts are driven by an integer
coefficient matrix whose Smith form provides coordinates, sections and
membership tests; matrix products route through int64 fast paths with
arbitrary-precision fallback.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import kernels


class ContainmentError(ValueError):
    """A lattice claimed to contain another does not."""


class ProvenanceError(ValueError):
    """Quotients fed to a pairing do not come from dual lattice pairs."""


# ---------------------------------------------------------------------------
# Matrices as tuples of row tuples of ints
# ---------------------------------------------------------------------------


def mat_mul(A, B):
    if not A or not B:
        return ()
    n = len(B)
    cols = len(B[0])
    return tuple(
        tuple(sum(row[k] * B[k][j] for k in range(n)) for j in range(cols)) for row in A
    )


def mat_mul_fast(A, B):
    """Integer matrix product, numpy int64 when safely in range."""
    if A and B and max(len(A), len(B)) > 8:
        bound = max(
            (abs(x) for row in A for x in row), default=0
        ), max((abs(x) for row in B for x in row), default=0)
        if bound[0] < 1 << 20 and bound[1] < 1 << 20 and len(B) < 1 << 10:
            out = np.array(A, dtype=np.int64) @ np.array(B, dtype=np.int64)
            return tuple(tuple(int(x) for x in row) for row in out)
    return mat_mul(A, B)


def mat_vec(A, v):
    return tuple(sum(row[j] * v[j] for j in range(len(v))) for row in A)


def identity(n):
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def det(M):
    """Exact determinant, fraction-free elimination."""
    n = len(M)
    if n == 0:
        return 1
    A = [list(map(int, row)) for row in M]
    sign, prev = 1, 1
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


def solve_exact(A, B):
    """Solve A X = B over the rationals; A square nonsingular."""
    n = len(A)
    m = len(B[0]) if B else 0
    W = [
        [Fraction(A[i][j]) for j in range(n)] + [Fraction(B[i][j]) for j in range(m)]
        for i in range(n)
    ]
    for k in range(n):
        piv = next((i for i in range(k, n) if W[i][k]), None)
        if piv is None:
            raise ValueError("singular matrix")
        W[k], W[piv] = W[piv], W[k]
        pv = W[k][k]
        W[k] = [x / pv for x in W[k]]
        for i in range(n):
            if i != k and W[i][k]:
                f = W[i][k]
                W[i] = [x - f * y for x, y in zip(W[i], W[k])]
    return tuple(tuple(W[i][n + j] for j in range(m)) for i in range(n))


# ---------------------------------------------------------------------------
# Smith decomposition (public, verified, arbitrary precision)
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SmithDecomposition:
    U: tuple
    D: tuple
    V: tuple
    Uinv: tuple

    @property
    def invariant_factors(self):
        return kernels.invariant_factors_from_diag(self.D)

    def diag(self):
        k = min(len(self.D), len(self.D[0]) if self.D else 0)
        return tuple(self.D[i][i] for i in range(k))


def smith_decompose(M, verify=True):
    """U, D, V with U*M*V = D diagonal, divisibility chain, U and V unimodular."""
    M = tuple(tuple(int(x) for x in row) for row in M)
    D, U, Ui, V = kernels.snf(M)
    D = tuple(tuple(row) for row in D)
    U = tuple(tuple(row) for row in U)
    Ui = tuple(tuple(row) for row in Ui)
    V = tuple(tuple(row) for row in V)
    if verify:
        if mat_mul(mat_mul(U, M), V) != D:
            raise AssertionError("U*M*V != D")
        if abs(det(U)) != 1 or abs(det(V)) != 1:
            raise AssertionError("U or V not unimodular")
        if mat_mul(U, Ui) != identity(len(U)):
            raise AssertionError("Uinv is wrong")
        diag = [D[i][i] for i in range(min(len(D), len(D[0]) if D else 0))]
        for a, b in zip(diag, diag[1:]):
            if a and b % a:
                raise AssertionError("divisibility chain broken")
            if a < 0 or b < 0:
                raise AssertionError("negative diagonal")
    return SmithDecomposition(U, D, V, Ui)


# ---------------------------------------------------------------------------
# Finite abelian groups
# ---------------------------------------------------------------------------


def _gcd(a, b):
    a, b = abs(a), abs(b)
    while b:
        a, b = b, a % b
    return a


@dataclass(frozen=True)
class FinAbGroup:
    """Invariant-factor presentation; elements are tuples x_i mod d_i."""

    invariant_factors: tuple[int, ...]
    provenance: tuple = ()

    def __post_init__(self):
        for a, b in zip(self.invariant_factors, self.invariant_factors[1:]):
            if b % a:
                raise ValueError("invariant factors must form a chain")
        if any(d <= 1 for d in self.invariant_factors):
            raise ValueError("invariant factors must exceed 1")

    @property
    def order(self):
        out = 1
        for d in self.invariant_factors:
            out *= d
        return out

    @property
    def identity(self):
        return (0,) * len(self.invariant_factors)

    def elements(self):
        return itertools.product(*(range(d) for d in self.invariant_factors))

    def reduce(self, x):
        return tuple(a % d for a, d in zip(x, self.invariant_factors))

    def add(self, x, y):
        return tuple((a + b) % d for a, b, d in zip(x, y, self.invariant_factors))

    def neg(self, x):
        return tuple((-a) % d for a, d in zip(x, self.invariant_factors))

    def scale(self, k, x):
        return tuple((k * a) % d for a, d in zip(x, self.invariant_factors))

    def element_order(self, x):
        out = 1
        for a, d in zip(x, self.invariant_factors):
            g = d // _gcd(a, d) if a else 1
            out = out * g // _gcd(out, g)
        return out


@dataclass(frozen=True)
class ProductGroup:
    """Direct product of finite abelian groups, kept factor by factor."""

    factors: tuple[FinAbGroup, ...]

    @property
    def order(self):
        out = 1
        for g in self.factors:
            out *= g.order
        return out

    def elements(self):
        return itertools.product(*(tuple(g.elements()) for g in self.factors))

    def flatten(self, tup):
        return tuple(x for part in tup for x in part)

    @property
    def flat_factors(self):
        return tuple(d for g in self.factors for d in g.invariant_factors)


# ---------------------------------------------------------------------------
# Lattices
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Lattice:
    """Full-rank lattice in a fixed rational chart.

    Three storage kinds keep hot paths integer-only:
      unit           Z^n
      "int"          (1/den) M Z^n, M integer columns
      "inv"          M^{-1} Z^n, M integer
    """

    kind: str
    M: tuple
    den: int = 1

    @classmethod
    def unit(cls, n):
        return cls("unit", identity(n))

    @classmethod
    def integer(cls, cols, den=1):
        return cls("int", tuple(tuple(int(x) for x in r) for r in cols), den)

    @classmethod
    def inverse(cls, M):
        return cls("inv", tuple(tuple(int(x) for x in r) for r in M))

    @property
    def dim(self):
        return len(self.M)

    def basis_columns(self):
        """Columns as exact Fractions (materializes inverse kinds)."""
        n = self.dim
        if self.kind == "unit":
            return tuple(tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n))
        if self.kind == "int":
            return tuple(tuple(Fraction(x, self.den) for x in row) for row in self.M)
        return solve_exact(self.M, identity(n))

    def ambient_to_coords(self, vec, den=1):
        """Lattice coordinates of an ambient rational vector vec/den.

        Raises ContainmentError when the vector is not in the lattice.
        """
        n = self.dim
        if self.kind == "unit":
            out = [Fraction(x, den) for x in vec]
        elif self.kind == "inv":
            out = [Fraction(x, den) for x in mat_vec(self.M, vec)]
        else:
            sol = solve_exact(self.M, tuple((x,) for x in vec))
            out = [s[0] * self.den / den for s in sol]
        if any(x.denominator != 1 for x in out):
            raise ContainmentError("vector not in lattice")
        return tuple(int(x) for x in out)

    def coords_to_ambient(self, z):
        """Ambient vector of integer coordinates, as (int vector, den)."""
        if self.kind == "unit":
            return tuple(int(x) for x in z), 1
        if self.kind == "int":
            return mat_vec(self.M, tuple(z)), self.den
        sol = solve_exact(self.M, identity(self.dim))
        den = 1
        for row in sol:
            for x in row:
                den = den * x.denominator // _gcd(den, x.denominator)
        vec = tuple(
            sum(int(sol[i][j] * den) * z[j] for j in range(self.dim)) for i in range(self.dim)
        )
        return vec, den


def coefficient_matrix(L1: Lattice, L2: Lattice):
    """Integer X with basis2 = basis1 * X, certifying L2 inside L1."""
    n = L1.dim
    if L1.kind == "unit":
        raw = [[Fraction(x, L2.den) for x in row] for row in L2.M] if L2.kind == "int" else None
        if L2.kind == "unit":
            return identity(n)
        if L2.kind == "inv":
            raw = [[x for x in row] for row in solve_exact(L2.M, identity(n))]
    elif L1.kind == "inv":
        if L2.kind == "unit":
            return tuple(tuple(row) for row in L1.M)
        if L2.kind == "int":
            prod = mat_mul_fast(L1.M, L2.M)
            raw = [[Fraction(x, L2.den) for x in row] for row in prod]
        else:
            raw = [
                [x for x in row]
                for row in mat_mul(L1.M, solve_exact(L2.M, identity(n)))
            ]
    else:
        cols2 = [[Fraction(x, L2.den) for x in row] for row in L2.M] if L2.kind == "int" else (
            solve_exact(L2.M, identity(n)) if L2.kind == "inv" else identity(n)
        )
        sol = solve_exact(L1.M, tuple(tuple(r) for r in cols2))
        raw = [[x * L1.den for x in row] for row in sol]
    X = []
    for i, row in enumerate(raw):
        out = []
        for x in row:
            fx = Fraction(x)
            if fx.denominator != 1:
                raise ContainmentError(f"column {i}: second lattice not inside the first")
            out.append(int(fx))
        X.append(tuple(out))
    return tuple(X)


# ---------------------------------------------------------------------------
# Quotients
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class LatticeQuotient:
    """Finite quotient L1/L2 with SNF coordinates and exact sections."""

    group: FinAbGroup
    lattice_top: Lattice
    lattice_bottom: Lattice
    snf: SmithDecomposition = field(repr=False)
    positions: tuple = field(repr=False)

    def coords_from_top(self, z):
        w = mat_vec(self.snf.U, tuple(z))
        return tuple(w[p] % d for p, d in zip(self.positions, self.group.invariant_factors))

    def project(self, vec, den=1):
        """Class of an ambient rational vector vec/den lying in the top lattice."""
        return self.coords_from_top(self.lattice_top.ambient_to_coords(vec, den))

    def section_top(self, element):
        """Top-lattice coordinates of the canonical representative."""
        n = len(self.snf.U)
        w = [0] * n
        for p, x in zip(self.positions, element):
            w[p] = x
        return mat_vec(self.snf.Uinv, tuple(w))

    def section(self, element):
        """Ambient representative of a class, as (integer vector, denominator)."""
        return self.lattice_top.coords_to_ambient(self.section_top(element))


def lattice_quotient(L1: Lattice, L2: Lattice, provenance=(), coeff=None) -> LatticeQuotient:
    """Quotient L1/L2 of full-rank nested lattices.

    ``coeff`` may supply the known coefficient matrix of L2 in L1; it is
    what the Smith form is taken of either way.  The group order always
    equals the determinant index, checked via the Smith diagonal.
    """
    X = tuple(tuple(int(x) for x in row) for row in coeff) if coeff is not None else (
        coefficient_matrix(L1, L2)
    )
    dec = smith_decompose(X, verify=False)
    diag = dec.diag()
    if any(d == 0 for d in diag):
        raise ValueError("bottom lattice is not full rank")
    positions = tuple(i for i, d in enumerate(diag) if d not in (0, 1))
    factors = tuple(diag[i] for i in positions)
    group = FinAbGroup(factors, provenance)
    order = 1
    for d in diag:
        order *= d
    if group.order != order:
        raise AssertionError("quotient order does not match determinant index")
    return LatticeQuotient(group, L1, L2, dec, positions)


# ---------------------------------------------------------------------------
# Homomorphisms
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FinAbHom:
    """Additive map given by an integer matrix on coordinate tuples."""

    source: object  # FinAbGroup or ProductGroup
    target: FinAbGroup
    matrix: tuple
    injective: bool = False
    surjective: bool = False

    def apply(self, x):
        flat = self.source.flatten(x) if isinstance(self.source, ProductGroup) else x
        return self.target.reduce(mat_vec(self.matrix, flat))

    def kernel_size(self):
        return sum(1 for x in self.source.elements() if self.apply(x) == self.target.identity)


def make_hom(source, target, matrix) -> FinAbHom:
    """Build a hom from its coordinate matrix, certifying well-definedness."""
    flat = source.flat_factors if isinstance(source, ProductGroup) else source.invariant_factors
    for j, d in enumerate(flat):
        probe = tuple(d if k == j else 0 for k in range(len(flat)))
        if target.reduce(mat_vec(matrix, probe)) != target.identity:
            raise AssertionError("matrix does not define a homomorphism")
    h = FinAbHom(source, target, tuple(tuple(row) for row in matrix))
    ker = h.kernel_size()
    inj = ker == 1
    surj = source.order // ker == target.order
    return FinAbHom(source, target, h.matrix, inj, surj)


def induced_hom(q1: LatticeQuotient, q2: LatticeQuotient) -> FinAbHom:
    """The map class-of-v to class-of-v between nested quotient pairs."""
    for a, b, tag in (
        (q1.lattice_top, q2.lattice_top, "top"),
        (q1.lattice_bottom, q2.lattice_bottom, "bottom"),
    ):
        coefficient_matrix(b, a)  # raises ContainmentError when not nested
    cols = []
    k = len(q1.group.invariant_factors)
    for j in range(k):
        vec, den = q1.section(tuple(int(i == j) for i in range(k)))
        cols.append(q2.project(vec, den))
    matrix = tuple(
        tuple(cols[j][i] for j in range(k))
        for i in range(len(q2.group.invariant_factors))
    )
    return make_hom(q1.group, q2.group, matrix)


def hom_fiber(h: FinAbHom, t):
    """All source elements mapping to t, in lexicographic order."""
    t = h.target.reduce(t)
    return [x for x in h.source.elements() if h.apply(x) == t]


# ---------------------------------------------------------------------------
# Q/Z duality pairing
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class DualityPairing:
    left: FinAbGroup
    right: FinAbGroup
    table: tuple  # table[i][j] = Fraction in [0,1), rows indexed by left elements
    nondegenerate: bool


def duality_pairing(q_left: LatticeQuotient, q_right: LatticeQuotient) -> DualityPairing:
    """Pairing to Q/Z between quotients marked as the two sides of a dual pair.

    In dual coordinate charts the ambient pairing is the plain dot product;
    values are taken mod 1 on canonical representatives.
    """
    p1, p2 = q_left.group.provenance, q_right.group.provenance
    if not p1 or not p2 or p1[:1] != p2[:1] or {p1[1:2], p2[1:2]} != {("E",), ("E'",)}:
        raise ProvenanceError(f"not a dual pair of quotients: {p1} vs {p2}")
    table = []
    for g in q_left.group.elements():
        vec_g, den_g = q_left.section(g)
        row = []
        for h in q_right.group.elements():
            vec_h, den_h = q_right.section(h)
            dot = sum(Fraction(a) * Fraction(b) for a, b in zip(vec_g, vec_h))
            row.append(dot / (den_g * den_h) % 1)
        table.append(tuple(row))
    transposed = [list(col) for col in zip(*table)] if table else []
    nondeg = _nondegenerate(table) and _nondegenerate(transposed)
    return DualityPairing(q_left.group, q_right.group, tuple(table), nondeg)


def _nondegenerate(table):
    # Element 0 is the identity; every other class must pair nontrivially.
    return all(any(x != 0 for x in row) for row in table[1:])
