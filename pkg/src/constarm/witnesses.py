"""Explicit extremal words.

The attaining construction in the non-terminal range is the pencil

    F_{a,b}(X) = prod_{i<=a} (1 - X_i^{q-1}) * prod_{j<=b} (X_{a+1} - theta_j X_{a+2})

with distinct theta_j.  The first factor pins the first a coordinates to 0,
the second deletes b of the q+1 directions of the (X_{a+1}, X_{a+2}) plane,
so the support has (q-1)(q-b+1) q^{m-a-2} points.  Cylinder words with a
deleted value set B on a single coordinate realize the residue-0 and
residue-1 layers' minimum supports.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import errors, linalg, rpoly
from .gf import field_from_order, mu_subgroup


@dataclass(frozen=True)
class PencilSpec:
    a: int
    b: int
    thetas: tuple

    def __post_init__(self):
        if len(self.thetas) != self.b:
            raise errors.InvalidRange("b must equal the number of thetas")
        if len(set(self.thetas)) != self.b:
            raise errors.DuplicateTheta(f"thetas {self.thetas} are not distinct")
        if self.a < 0 or self.b < 0:
            raise errors.InvalidRange("a and b must be nonnegative")


def default_thetas(q: int, b: int) -> tuple:
    """First b field elements in canonical enumeration order."""
    if b > q - 2:
        raise errors.InvalidRange(f"b={b} exceeds q-2={q - 2}")
    return tuple(range(b))


def pencil_spec(q: int, a: int, b: int) -> PencilSpec:
    return PencilSpec(a=a, b=b, thetas=default_thetas(q, b))


def _indicator_product(F, m: int, a: int) -> rpoly.ReducedPoly:
    out = rpoly.constant(F, m, 1)
    for i in range(a):
        e = [0] * m
        e[i] = F.q - 1
        factor = rpoly.poly_add(
            rpoly.constant(F, m, 1), rpoly.monomial(F, m, e, F.neg(1))
        )
        out = rpoly.reduce_product(out, factor)
    return out


def pencil(q: int, m: int, spec: PencilSpec) -> rpoly.ReducedPoly:
    """The pencil word F_{a,b}; lives in the residue layer b mod r of order
    (q-1)a + b for every divisor r of q-1."""
    F = field_from_order(q)
    a, b = spec.a, spec.b
    if a + 2 > m:
        raise errors.TooFewVariables(f"pencil needs a+2 <= m, got a={a}, m={m}")
    if b > q - 2:
        raise errors.InvalidRange(f"b={b} exceeds q-2={q - 2}")
    out = _indicator_product(F, m, a)
    eu = [0] * m
    eu[a] = 1
    ev = [0] * m
    ev[a + 1] = 1
    for th in spec.thetas:
        factor = rpoly.poly_add(
            rpoly.monomial(F, m, eu, 1), rpoly.monomial(F, m, ev, F.neg(int(th)))
        )
        out = rpoly.reduce_product(out, factor)
    return out


def cylinder(q: int, m: int, a: int, B) -> rpoly.ReducedPoly:
    """f_B = prod (1 - X_i^{q-1}) * prod_{eta in B} (X_{a+1} - eta); support is
    the cylinder {x_1 = ... = x_a = 0, x_{a+1} not in B}."""
    F = field_from_order(q)
    if a + 1 > m:
        raise errors.TooFewVariables(f"cylinder needs a+1 <= m, got a={a}, m={m}")
    B = sorted(set(int(x) for x in B))
    if any(x < 0 or x >= q for x in B):
        raise errors.InvalidRange("deleted values must be field elements")
    out = _indicator_product(F, m, a)
    ex = [0] * m
    ex[a] = 1
    for eta in B:
        factor = rpoly.poly_add(
            rpoly.monomial(F, m, ex, 1), rpoly.constant(F, m, F.neg(eta))
        )
        out = rpoly.reduce_product(out, factor)
    return out


def mu_orbits(q: int, r: int):
    """Orbits of mu_r on F_q^*, sorted by smallest member."""
    F = field_from_order(q)
    mu = mu_subgroup(F, r)
    seen = set()
    orbits = []
    for x in range(1, q):
        if x not in seen:
            orb = sorted(int(F.mul(x, al)) for al in mu)
            orbits.append(tuple(orb))
            seen.update(orb)
    return orbits


def default_deleted_set(q: int, r: int, b: int, residue: int):
    """Deterministic deleted set for the residue-0 (b = rho*r) and residue-1
    (b = 1 + rho*r) cylinder witnesses: greedy union of mu_r-orbits taken in
    enumeration order, with 0 prepended for residue 1."""
    if residue == 0:
        if b % r:
            raise errors.InvalidRange(f"residue 0 needs r | b, got b={b}")
        rho = b // r
        base = []
    elif residue == 1:
        if b % r != 1 % r:
            raise errors.InvalidRange(f"residue 1 needs b = 1 mod r, got b={b}")
        rho = (b - 1) // r
        base = [0]
    else:
        raise errors.BadResidue("only residues 0 and 1 have cylinder witnesses")
    orbits = mu_orbits(q, r)
    if rho > len(orbits):
        raise errors.InvalidRange("not enough orbits for the requested size")
    out = list(base)
    for orb in orbits[:rho]:
        out.extend(orb)
    return sorted(out)


# ---------------------------------------------------------------------------
# coordinate-free flag supports
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FlagSupport:
    """A 2-dim plane W, a complement Z inside Y = W + Z, and b deleted
    projective directions of P(W) as normalized (u, v) pairs."""

    W: tuple  # two basis rows, each a tuple of m field indices
    Z: tuple  # dim Z basis rows
    thetas: tuple  # normalized projective pairs (u, v)


def normalize_direction(F, u: int, v: int):
    if u == 0 and v == 0:
        raise errors.BadFlag("(0, 0) is not a projective direction")
    if u != 0:
        s = F.inv(u)
        return 1, F.mul(v, s)
    return 0, 1


def standard_flag(q: int, m: int, a: int, thetas) -> FlagSupport:
    """Coordinate flag matching the pencil: W = <e_{a+1}, e_{a+2}>,
    Z = <e_{a+3}, ..., e_m>, deleted directions (theta_j : 1)."""
    F = field_from_order(q)
    if a + 2 > m:
        raise errors.TooFewVariables(f"flag needs a+2 <= m, got a={a}, m={m}")

    def unit(j):
        row = [0] * m
        row[j] = 1
        return tuple(row)

    W = (unit(a), unit(a + 1))
    Z = tuple(unit(j) for j in range(a + 2, m))
    dirs = tuple(normalize_direction(F, int(t), 1) for t in thetas)
    return FlagSupport(W=W, Z=Z, thetas=dirs)


def flag_support(q: int, m: int, a: int, flag: FlagSupport):
    """The attaining support {z + w : z in Z, w on a surviving punctured
    direction of W}, as a set of coordinate tuples.

    w runs over the nonzero points of W off the deleted directions, so
    |S| = q^{m-a-2} (q+1-b) (q-1) including the b = 0 case.
    """
    F = field_from_order(q)
    W = np.array(flag.W, dtype=np.int16)
    Z = np.array(flag.Z, dtype=np.int16).reshape(len(flag.Z), m)
    if W.shape != (2, m):
        raise errors.BadFlag("W must have exactly two basis rows")
    if Z.shape[0] != m - a - 2:
        raise errors.BadFlag(f"Z must have m-a-2 = {m - a - 2} basis rows")
    stack = np.vstack([W, Z]) if Z.size else W
    if linalg.rank(F, stack) != 2 + Z.shape[0]:
        raise errors.BadFlag("W and Z rows are not independent")
    dirs = set()
    for u, v in flag.thetas:
        dirs.add(normalize_direction(F, int(u), int(v)))
    if len(dirs) != len(flag.thetas):
        raise errors.BadFlag("deleted directions are not distinct")

    # surviving nonzero w = u*w1 + v*w2 with (u : v) not deleted
    coeffs = [
        (u, v)
        for u in range(q)
        for v in range(q)
        if (u, v) != (0, 0) and normalize_direction(F, u, v) not in dirs
    ]
    wpts = np.array(
        [F.matmul(np.array([[u, v]], dtype=np.int16), W)[0] for u, v in coeffs],
        dtype=np.int16,
    ).reshape(len(coeffs), m)

    dz = Z.shape[0]
    if dz:
        zc = rpoly.grid_coords(F, dz)  # all coefficient tuples over the Z basis
        zpts = F.matmul(zc.astype(np.int16), Z)
    else:
        zpts = np.zeros((1, m), dtype=np.int16)
    out = set()
    for zp in zpts:
        s = F.add_index(np.asarray(zp)[None, :], wpts)
        for row in np.asarray(s):
            out.add(tuple(int(x) for x in row))
    return out


def root_product(q: int, B):
    """Coefficients of P_B(T) = prod_{eta in B} (T - eta), little-endian."""
    F = field_from_order(q)
    B = [int(x) for x in B]
    if any(x < 0 or x >= q for x in B):
        raise errors.InvalidRange("roots must be field elements")
    if len(set(B)) != len(B):
        raise errors.DuplicateTheta("roots must be distinct")
    coeffs = [1]
    for eta in B:
        nxt = [0] * (len(coeffs) + 1)
        me = F.neg(eta)
        for j, c in enumerate(coeffs):
            nxt[j] = F.add(nxt[j], F.mul(c, me))
            nxt[j + 1] = F.add(nxt[j + 1], c)
        coeffs = nxt
    return coeffs
