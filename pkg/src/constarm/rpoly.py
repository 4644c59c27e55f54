"""Reduced multivariate polynomials over F_q modulo (X_i^q - X_i).

A ReducedPoly stores a sparse map {exponent tuple -> nonzero coefficient}
with every exponent in [0, q-1], the unique representative of a function
F_q^m -> F_q.  Exponent reduction in products follows e -> 1 + (e-1) mod (q-1)
for e > 0, so the exponent q-1 survives and x^0 = 1 everywhere.

Besides the sparse scalar operations there is a dense evaluation engine:
values of a polynomial on the whole grid F_q^m are obtained by contracting
the coefficient tensor with the q x q power matrix once per variable, done
exactly in F_p coordinate blocks with BLAS.  The same contraction with the
inverse matrix interpolates values back to reduced coefficients.
"""

from __future__ import annotations

import re

import numpy as np

from . import errors, linalg
from .gf import FieldCtx

_GRID_LIMIT = 1 << 24


class ReducedPoly:
    """Sparse reduced polynomial in m variables over a FieldCtx."""

    __slots__ = ("field", "m", "terms")

    def __init__(self, field: FieldCtx, m: int, terms: dict | None = None):
        self.field = field
        self.m = m
        self.terms = {}
        if terms:
            for exps, c in terms.items():
                c = int(c) % field.q if field.e == 1 else int(c)
                if not 0 <= c < field.q:
                    raise errors.ConstarmError(f"coefficient index {c} out of range")
                if c == 0:
                    continue
                t = tuple(int(e) for e in exps)
                if len(t) != m or any(e < 0 or e > field.q - 1 for e in t):
                    raise errors.ExponentOutOfRange(f"bad exponent vector {t}")
                self.terms[t] = c

    # -- basic structure ------------------------------------------------------

    @property
    def total_degree(self) -> int:
        """Max exponent sum over stored terms; 0 for the zero polynomial."""
        if not self.terms:
            return 0
        return max(sum(e) for e in self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        return (
            isinstance(other, ReducedPoly)
            and self.field == other.field
            and self.m == other.m
            and self.terms == other.terms
        )

    def __repr__(self):
        if not self.terms:
            return "ReducedPoly(0)"
        return f"ReducedPoly({to_text(self)})"

    def copy(self) -> "ReducedPoly":
        return ReducedPoly(self.field, self.m, dict(self.terms))


def zero(field: FieldCtx, m: int) -> ReducedPoly:
    return ReducedPoly(field, m, {})


def constant(field: FieldCtx, m: int, c: int) -> ReducedPoly:
    return ReducedPoly(field, m, {(0,) * m: c})


def monomial(field: FieldCtx, m: int, exps, c: int = 1) -> ReducedPoly:
    return ReducedPoly(field, m, {tuple(exps): c})


def variable(field: FieldCtx, m: int, j: int) -> ReducedPoly:
    """X_j with 1-based index j."""
    e = [0] * m
    e[j - 1] = 1
    return monomial(field, m, e)


def _check_same(f: ReducedPoly, g: ReducedPoly):
    if f.m != g.m or f.field != g.field:
        raise errors.DimensionMismatch("operands live in different rings")


def _grlex_key(exps):
    return (sum(exps), exps)


def poly_add(f: ReducedPoly, g: ReducedPoly) -> ReducedPoly:
    _check_same(f, g)
    F = f.field
    out = dict(f.terms)
    for e, c in g.terms.items():
        s = F.add(out.get(e, 0), c)
        if s:
            out[e] = s
        else:
            out.pop(e, None)
    return ReducedPoly(F, f.m, out)


def poly_scale(f: ReducedPoly, c: int) -> ReducedPoly:
    F = f.field
    if c == 0:
        return zero(F, f.m)
    return ReducedPoly(F, f.m, {e: F.mul(v, c) for e, v in f.terms.items()})


def reduce_exponent(e: int, q: int) -> int:
    return 0 if e == 0 else 1 + (e - 1) % (q - 1)


def reduce_product(f: ReducedPoly, g: ReducedPoly) -> ReducedPoly:
    """Reduced representative of the pointwise product f*g."""
    _check_same(f, g)
    F, q, m = f.field, f.field.q, f.m
    out: dict = {}
    for ef, cf in f.terms.items():
        for eg, cg in g.terms.items():
            e = tuple(reduce_exponent(a + b, q) for a, b in zip(ef, eg))
            c = F.mul(cf, cg)
            s = F.add(out.get(e, 0), c)
            if s:
                out[e] = s
            else:
                out.pop(e, None)
    return ReducedPoly(F, m, out)


def evaluate(f: ReducedPoly, P) -> int:
    """Value of f at a single point (sequence of m field indices)."""
    P = list(P)
    if len(P) != f.m:
        raise errors.DimensionMismatch(f"point has {len(P)} coordinates, need {f.m}")
    F = f.field
    acc = 0
    for exps, c in f.terms.items():
        t = c
        for x, e in zip(P, exps):
            if e:
                t = F.mul(t, F.pow(x, e))
                if t == 0:
                    break
        acc = F.add(acc, t)
    return acc


def residue_class(f: ReducedPoly, r: int):
    """The common residue of all term degrees mod r, or None when mixed."""
    if f.is_zero():
        raise errors.ZeroPolynomial("residue class of 0 is undefined")
    res = {sum(e) % r for e in f.terms}
    return res.pop() if len(res) == 1 else None


def scalar_dilate(f: ReducedPoly, alpha: int) -> ReducedPoly:
    """Reduced representative of P -> f(alpha * P)."""
    if alpha == 0:
        raise errors.ZeroScalar("dilation scalar must be nonzero")
    F = f.field
    if alpha == 1:
        return f.copy()
    out = {e: F.mul(c, F.pow(alpha, sum(e))) for e, c in f.terms.items()}
    return ReducedPoly(F, f.m, out)


def leading_monomial(f: ReducedPoly):
    """Largest stored exponent vector under graded lex (X1 heaviest)."""
    if f.is_zero():
        raise errors.ZeroPolynomial("leading monomial of 0 is undefined")
    return max(f.terms, key=_grlex_key)


# ---------------------------------------------------------------------------
# dense grid engine
# ---------------------------------------------------------------------------

_GRID_COORDS: dict = {}
_GRID_DEGREES: dict = {}


def grid_coords(field: FieldCtx, m: int) -> np.ndarray:
    """(q^m, m) array of all points of F_q^m in flat order (X1 major)."""
    key = (field.p, field.e, m)
    got = _GRID_COORDS.get(key)
    if got is None:
        q = field.q
        qm = q ** m
        if qm > _GRID_LIMIT:
            raise errors.ExtensionTooLarge(f"grid of size {qm} exceeds 2^24")
        idx = np.arange(qm, dtype=np.int64)
        got = np.empty((qm, m), dtype=np.int32)
        for j in range(m - 1, -1, -1):
            got[:, j] = idx % q
            idx //= q
        got.setflags(write=False)
        _GRID_COORDS[key] = got
    return got


def grid_degrees(field: FieldCtx, m: int) -> np.ndarray:
    """(q^m,) exponent sums of every flat coefficient slot."""
    key = (field.p, field.e, m)
    got = _GRID_DEGREES.get(key)
    if got is None:
        got = grid_coords(field, m).sum(axis=1).astype(np.int32)
        got.setflags(write=False)
        _GRID_DEGREES[key] = got
    return got


def flat_exponent_index(field: FieldCtx, m: int, exps) -> int:
    idx = 0
    for e in exps:
        idx = idx * field.q + int(e)
    return idx


def coeff_vector(f: ReducedPoly) -> np.ndarray:
    """(q^m,) dense coefficient vector of f in flat exponent order."""
    out = np.zeros(f.field.q ** f.m, dtype=np.int16)
    for exps, c in f.terms.items():
        out[flat_exponent_index(f.field, f.m, exps)] = c
    return out


def _mode_matrices(field: FieldCtx, inverse: bool):
    W = field.vand_inv() if inverse else field.vand()
    blk = field.block_expand(W)
    # float32 is exact below 2^24; large prime fields fall back to float64
    dt = np.float32 if (field.p - 1) ** 2 * field.q * field.e < (1 << 24) else np.float64
    return blk.astype(dt), dt


def _transform_coords(field: FieldCtx, m: int, mat: np.ndarray, inverse: bool) -> np.ndarray:
    """Contract every exponent axis of a batch of dense index vectors with
    the (inverse) power matrix, in F_p coordinates.

    mat: (B, q^m) field indices.  Returns (B, q^m, e) int8 coordinates of the
    value grids (coefficient grids for inverse=True).  Reductions mod p are
    deferred until the running magnitude bound would break float exactness.
    """
    q, e, p = field.q, field.e, field.p
    B = mat.shape[0]
    Wblk, dt = _mode_matrices(field, inverse)
    limit = float(1 << 24) if dt == np.float32 else float(1 << 53)
    digits_f = field.digits.astype(dt)
    arr = digits_f[mat]  # (B, q^m, e)
    arr = arr.reshape((B,) + (q,) * m + (e,))
    bound = p - 1
    for j in range(m):
        if bound * (p - 1) * q * e > limit:
            arr %= p
            bound = p - 1
        moved = np.moveaxis(arr, 1 + j, -2)
        shp = moved.shape
        out = moved.reshape(-1, q * e) @ Wblk
        arr = np.moveaxis(out.reshape(shp), -2, 1 + j)
        bound = bound * (p - 1) * q * e
    if bound > p - 1:
        arr %= p
    return arr.reshape(B, q ** m, e).astype(np.int8)


def batch_values(field: FieldCtx, m: int, coeff_mat: np.ndarray) -> np.ndarray:
    """Values on the full grid for a batch of dense coefficient vectors."""
    coords = _transform_coords(field, m, np.atleast_2d(coeff_mat), inverse=False)
    B = coords.shape[0]
    return field.from_coords(coords.reshape(B, -1).astype(np.int64)).astype(np.int16)


def batch_support_mask(field: FieldCtx, m: int, coeff_mat: np.ndarray) -> np.ndarray:
    """Boolean (B, q^m) mask of nonzero values, skipping index re-encoding."""
    coords = _transform_coords(field, m, np.atleast_2d(coeff_mat), inverse=False)
    return coords.any(axis=2)


def batch_coeffs(field: FieldCtx, m: int, values_mat: np.ndarray) -> np.ndarray:
    """Reduced coefficient vectors from a batch of full value grids."""
    coords = _transform_coords(field, m, np.atleast_2d(values_mat), inverse=True)
    B = coords.shape[0]
    return field.from_coords(coords.reshape(B, -1).astype(np.int64)).astype(np.int16)


def evaluate_at_points(f: ReducedPoly, pts: np.ndarray) -> np.ndarray:
    """Values of f at the given (N, m) points, term by term."""
    F = f.field
    pts = np.asarray(pts)
    acc = np.zeros(pts.shape[0], dtype=np.int16)
    for exps, c in f.terms.items():
        t = np.full(pts.shape[0], c, dtype=np.int16)
        for j, e in enumerate(exps):
            if e:
                t = F.mul_index(t, F.pow_index(pts[:, j], e))
        acc = F.add_index(acc, t).astype(np.int16)
    return acc


def values_on_grid(f: ReducedPoly) -> np.ndarray:
    """Values of f at every point of F_q^m in flat order."""
    F, m = f.field, f.m
    qm = F.q ** m
    if qm > _GRID_LIMIT:
        raise errors.ExtensionTooLarge(f"grid of size {qm} exceeds 2^24")
    if len(f.terms) <= max(4, 2 * m) or F.q > 1024:
        return evaluate_at_points(f, grid_coords(F, m))
    return batch_values(F, m, coeff_vector(f)[None, :])[0]


def support_size(f: ReducedPoly) -> int:
    """Number of points of F_q^m where f does not vanish."""
    return int(np.count_nonzero(values_on_grid(f)))


def from_coeff_vector(field: FieldCtx, m: int, vec: np.ndarray) -> ReducedPoly:
    terms = {}
    nz = np.nonzero(vec)[0]
    exps = grid_coords(field, m)[nz]
    for pos, e in zip(nz, exps):
        terms[tuple(int(x) for x in e)] = int(vec[pos])
    return ReducedPoly(field, m, terms)


def substitute_linear(f: ReducedPoly, T) -> ReducedPoly:
    """Reduced representative of X -> f(X T^{-1}) for invertible T.

    Computed by permuting the value grid with the point map P -> P T^{-1}
    and interpolating back, which is exact over F_q.
    """
    F, m = f.field, f.m
    T = np.asarray(T, dtype=np.int16)
    if T.shape != (m, m):
        raise errors.DimensionMismatch(f"T must be {m}x{m}")
    if not linalg.is_invertible(F, T):
        raise errors.SingularMatrix("substitution matrix is singular")
    Tinv = linalg.mat_inv(F, T)
    if f.is_zero():
        return zero(F, m)
    vals = values_on_grid(f)
    pts = grid_coords(F, m)
    moved = F.matmul(pts, Tinv)
    qvec = (F.q ** np.arange(m - 1, -1, -1)).astype(np.int64)
    perm = np.asarray(moved, dtype=np.int64) @ qvec
    new_vals = vals[perm]
    coeffs = batch_coeffs(F, m, new_vals[None, :])[0]
    return from_coeff_vector(F, m, coeffs)


# ---------------------------------------------------------------------------
# text serialization: "c*X1^e1*...*Xm^em" terms joined by " + "
# ---------------------------------------------------------------------------

def to_text(f: ReducedPoly) -> str:
    if f.is_zero():
        return "0"
    parts = []
    for exps in sorted(f.terms, key=_grlex_key, reverse=True):
        c = f.terms[exps]
        factors = [str(c)] + [f"X{j + 1}^{e}" for j, e in enumerate(exps)]
        parts.append("*".join(factors))
    return " + ".join(parts)


_TERM_RE = re.compile(r"^(\d+)((?:\*X\d+\^\d+)*)$")
_FACTOR_RE = re.compile(r"\*X(\d+)\^(\d+)")


def from_text(field: FieldCtx, m: int, text: str) -> ReducedPoly:
    text = text.strip()
    if text == "0":
        return zero(field, m)
    out = zero(field, m)
    for term in text.split("+"):
        mt = _TERM_RE.match(term.strip())
        if not mt:
            raise errors.ConstarmError(f"cannot parse term {term!r}")
        c = int(mt.group(1))
        exps = [0] * m
        for var, e in _FACTOR_RE.findall(mt.group(2)):
            exps[int(var) - 1] = int(e)
        out = poly_add(out, monomial(field, m, exps, c))
    return out
