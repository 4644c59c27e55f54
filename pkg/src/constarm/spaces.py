"""Code parameters (q, m, r, ell) and the residue-restricted monomial spaces.

The defining space of the length-(q^m-1)/r code is the span of reduced
monomials of total degree at most ell and total degree congruent to r-1
mod r.  More generally a residue layer R_s^(c) collects the reduced
monomials of degree <= s congruent to c mod r; the code space is the layer
with s = ell, c = r-1.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from functools import lru_cache

import numpy as np

from . import errors
from .gf import field_from_order


def decompose_ab(ell: int, q: int):
    """Unique (a, b) with ell = (q-1)a + b and 0 <= b <= q-2."""
    if ell < 0 or q < 3:
        raise errors.InvalidRange(f"need ell >= 0 and q >= 3, got ({ell}, {q})")
    return ell // (q - 1), ell % (q - 1)


def translate_L(q: int, r: int, L: int):
    """Map the zero-set parameter L to (a, h, b, ell) with ell = rL + r - 1."""
    if r < 1 or (q - 1) % r != 0:
        raise errors.RNotDivisor(f"r={r} does not divide q-1={q - 1}")
    if L < 0:
        raise errors.InvalidRange("L must be >= 0")
    nu = (q - 1) // r
    a, h = divmod(L, nu)
    b = r * h + r - 1
    ell = r * L + r - 1
    assert (a, b) == decompose_ab(ell, q)
    return a, h, b, ell


def admissible_degrees(q: int, m: int, r: int):
    """All ell = r-1 mod r in [r-1, (q-1)m - 1), ascending."""
    if r < 1 or (q - 1) % r != 0:
        raise errors.RNotDivisor(f"r={r} does not divide q-1={q - 1}")
    if m < 2:
        raise errors.InvalidRange("m must be >= 2")
    return list(range(r - 1, (q - 1) * m - 1, r))


@dataclass(frozen=True)
class CodeParams:
    """Validated parameter tuple with its derived quantities.

    a, b      : ell = (q-1)a + b, 0 <= b <= q-2
    nu        : (q-1)/r
    h, L      : b = r h + r - 1 and L = nu a + h (None off the congruence)
    n         : block length (q^m - 1)/r
    flags     : intermediate (2 < r < q-1), admissible (range + congruence),
                terminal (a = m-1)
    """

    q: int
    m: int
    r: int
    ell: int
    a: int = dc_field(init=False)
    b: int = dc_field(init=False)
    nu: int = dc_field(init=False)
    h: int | None = dc_field(init=False)
    L: int | None = dc_field(init=False)
    n: int = dc_field(init=False)
    intermediate: bool = dc_field(init=False)
    admissible: bool = dc_field(init=False)
    terminal: bool = dc_field(init=False)

    def __post_init__(self):
        q, m, r, ell = self.q, self.m, self.r, self.ell
        field_from_order(q)  # raises if q is not a prime power
        if m < 2:
            raise errors.InvalidRange("m must be >= 2")
        if r < 1 or (q - 1) % r != 0:
            raise errors.RNotDivisor(f"r={r} does not divide q-1={q - 1}")
        if ell < 0:
            raise errors.InvalidRange("ell must be >= 0")
        a, b = decompose_ab(ell, q)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "nu", (q - 1) // r)
        if b % r == (r - 1) % r:
            h = (b - (r - 1)) // r
            object.__setattr__(self, "h", h)
            object.__setattr__(self, "L", self.nu * a + h)
        else:
            object.__setattr__(self, "h", None)
            object.__setattr__(self, "L", None)
        object.__setattr__(self, "n", (q ** m - 1) // r)
        object.__setattr__(self, "intermediate", 2 < r < q - 1)
        object.__setattr__(
            self,
            "admissible",
            r - 1 <= ell < (q - 1) * m - 1 and ell % r == (r - 1) % r,
        )
        object.__setattr__(self, "terminal", a == m - 1)

    def to_dict(self):
        return {
            "q": self.q, "m": self.m, "r": self.r, "ell": self.ell,
            "a": self.a, "b": self.b, "nu": self.nu, "h": self.h, "L": self.L,
            "n": self.n, "intermediate": self.intermediate,
            "admissible": self.admissible, "terminal": self.terminal,
        }


@dataclass(frozen=True)
class MonomialSpace:
    """Ordered monomial basis of a residue layer R_s^(c).

    basis is a (K, m) integer array of exponent vectors sorted graded-lex
    ascending with X1 heaviest, so generator matrices and search transcripts
    are reproducible.
    """

    q: int
    m: int
    r: int
    s: int
    c: int
    basis: np.ndarray
    flat: np.ndarray  # flat coefficient-slot index of every basis monomial

    @property
    def K(self) -> int:
        return self.basis.shape[0]

    def monomials(self):
        """Basis exponent vectors as tuples, ascending."""
        return [tuple(int(e) for e in row) for row in self.basis]


@lru_cache(maxsize=64)
def build_space(q: int, m: int, r: int, s: int, c: int) -> MonomialSpace:
    """Enumerate the basis of R_s^(c) by direct iteration over exponent boxes."""
    if r < 1 or (q - 1) % r != 0:
        raise errors.RNotDivisor(f"r={r} does not divide q-1={q - 1}")
    if not 0 <= c < r:
        raise errors.BadResidue(f"residue c={c} not in [0, {r})")
    if not 0 <= s <= m * (q - 1):
        raise errors.InvalidRange(f"order s={s} not in [0, {m * (q - 1)}]")
    F = field_from_order(q)
    from .rpoly import grid_coords, grid_degrees

    exps = grid_coords(F, m)
    degs = grid_degrees(F, m)
    keep = (degs <= s) & (degs % r == c)
    idx = np.nonzero(keep)[0]
    # graded lex ascending, X1 heaviest: degree first, then e1, e2, ...
    sel = exps[idx]
    order = np.lexsort(tuple(sel[:, j] for j in range(m - 1, -1, -1)) + (degs[idx],))
    idx = idx[order]
    basis = np.ascontiguousarray(exps[idx].astype(np.int16))
    basis.setflags(write=False)
    flat = idx.astype(np.int64)
    flat.setflags(write=False)
    return MonomialSpace(q=q, m=m, r=r, s=s, c=c, basis=basis, flat=flat)


def count_monomials(q: int, m: int, s: int, r: int, c: int) -> int:
    """Number of exponent boxes with |i| <= s and |i| = c mod r, by a
    degree-distribution convolution (no grid materialized)."""
    dist = np.zeros(m * (q - 1) + 1, dtype=object)
    dist[0] = 1
    one = np.ones(q, dtype=object)
    for _ in range(m):
        dist = np.convolve(dist, one)[: m * (q - 1) + 1]
    degs = np.arange(m * (q - 1) + 1)
    keep = (degs <= s) & (degs % r == c)
    return int(dist[keep].sum())


def code_space(params: CodeParams) -> MonomialSpace:
    """The defining monomial space of the code: the layer s = ell, c = r-1."""
    return build_space(params.q, params.m, params.r, params.ell, (params.r - 1) % params.r)


def dimension_K(params: CodeParams) -> int:
    """dim of the code = number of basis monomials of the defining space."""
    if not params.admissible:
        raise errors.NotAdmissible(f"{params} is not admissible")
    return count_monomials(params.q, params.m, params.ell, params.r,
                           (params.r - 1) % params.r)
