"""The constacyclic evaluation model.

Fix a primitive beta of F_{q^m} with companion matrix M and e = (1, 0, ..., 0).
The nonzero points of F_q^m are exactly {e M^i : 0 <= i <= q^m - 2}; with
n = (q^m - 1)/r and lambda = beta^n (an element of F_q of order r) they split
into n scalar orbits {lambda^j e M^i : 0 <= j < r}.  Encoding a reduced
polynomial f on the first n powers gives the codeword
c_f = (f(e), f(eM), ..., f(e M^{n-1})).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import errors, linalg, rpoly
from .gf import ExtCtx, FieldCtx, element_order, field_from_order, make_extension
from .spaces import MonomialSpace

_MODEL_LIMIT_QM = 1 << 26


class EvalModel:
    """Ordered evaluation points and orbit bookkeeping for (q, m, r)."""

    def __init__(self, q: int, m: int, r: int):
        F = field_from_order(q)
        if r < 1 or (q - 1) % r != 0:
            raise errors.RNotDivisor(f"r={r} does not divide q-1={q - 1}")
        qm = q ** m
        if qm > _MODEL_LIMIT_QM:
            raise errors.ExtensionTooLarge(
                f"orbit index needs q^m <= 2^26, got {qm}"
            )
        self.field: FieldCtx = F
        self.ext: ExtCtx = make_extension(F, m)
        self.q, self.m, self.r = q, m, r
        self.n = (qm - 1) // r
        self.Mmat = self.ext.M

        # lambda = beta^n, read off M^n = lambda I (verified exactly)
        Mn = linalg.mat_pow(F, self.Mmat, self.n)
        lam = int(Mn[0, 0])
        eye = np.zeros((m, m), dtype=np.int16)
        eye[np.arange(m), np.arange(m)] = lam
        if not np.array_equal(Mn, eye):
            raise AssertionError("M^n is not scalar")
        if element_order(F, lam) != r:
            raise AssertionError("lambda = beta^n does not have order r")
        self.lam = lam

        seq = self.ext.power_flat_sequence()
        counts = np.bincount(seq, minlength=qm)
        if counts[0] != 0 or not np.all(counts[1:] == 1):
            raise AssertionError("e M^i does not cover F_q^m \\ {0}")

        self.point_flat = np.ascontiguousarray(seq[: self.n])
        self.points = self.ext.decode_flat(self.point_flat).astype(np.int16)
        orbit_rep = np.full(qm, -1, dtype=np.int64)
        orbit_pow = np.full(qm, -1, dtype=np.int8)
        ii = np.arange(qm - 1, dtype=np.int64)
        orbit_rep[seq] = ii % self.n
        orbit_pow[seq] = ii // self.n
        self.orbit_rep = orbit_rep
        self.orbit_pow = orbit_pow

    def orbit_of(self, point) -> tuple[int, int]:
        """(i, j) with point = lambda^j e M^i, for a nonzero point."""
        flat = int(self.ext.flat_index(np.asarray(point, dtype=np.int64)[None, :])[0])
        if flat == 0:
            raise errors.ZeroElement("the origin lies in no scalar orbit")
        return int(self.orbit_rep[flat]), int(self.orbit_pow[flat])

    def __repr__(self):
        return f"EvalModel(q={self.q}, m={self.m}, r={self.r}, n={self.n})"


@lru_cache(maxsize=64)
def build_eval_model(q: int, m: int, r: int) -> EvalModel:
    """Construct (and cache) the evaluation model; invariants are verified
    at construction time."""
    return EvalModel(q, m, r)


@dataclass
class Codeword:
    """Length-n vector over F_q plus its generating polynomial if known."""

    values: np.ndarray
    field: FieldCtx
    source: rpoly.ReducedPoly | None = None

    @property
    def weight(self) -> int:
        return int(np.count_nonzero(self.values))

    def __len__(self):
        return int(self.values.shape[0])

    def to_dict(self, params=None):
        out = {}
        if params is not None:
            out["params"] = params.to_dict() if hasattr(params, "to_dict") else params
        out["polynomial"] = rpoly.to_text(self.source) if self.source else None
        out["word"] = [int(v) for v in self.values]
        out["weight"] = self.weight
        return out


def _values_at_model_points(model: EvalModel, f: rpoly.ReducedPoly) -> np.ndarray:
    # dense transform plus a gather beats term-wise evaluation once the
    # polynomial has more than a handful of terms
    if len(f.terms) > max(4, 2 * model.m):
        grid = rpoly.values_on_grid(f)
        return grid[model.point_flat].astype(np.int16)
    return rpoly.evaluate_at_points(f, model.points)


def encode(model: EvalModel, f: rpoly.ReducedPoly) -> Codeword:
    """c_f = (f(e), f(eM), ..., f(e M^{n-1}))."""
    if f.m != model.m or f.field != model.field:
        raise errors.DimensionMismatch("polynomial does not match the model")
    return Codeword(values=_values_at_model_points(model, f), field=model.field, source=f)


def generator_matrix(model: EvalModel, space: MonomialSpace,
                     check_rank: bool | None = None) -> np.ndarray:
    """K x n matrix whose rows encode the basis monomials of the space.

    check_rank defaults to on for desk-scale matrices; the evaluation map is
    injective on a residue layer with s < m(q-1), so full rank is expected.
    """
    if space.q != model.q or space.m != model.m:
        raise errors.DimensionMismatch("space does not match the model")
    K = space.K
    G = np.zeros((K, model.n), dtype=np.int16)
    F = model.field
    for i in range(K):
        exps = space.basis[i]
        t = np.ones(model.n, dtype=np.int16)
        for j in range(model.m):
            e = int(exps[j])
            if e:
                t = F.mul_index(t, F.pow_index(model.points[:, j], e))
        G[i] = t
    if check_rank is None:
        check_rank = K * K * model.n <= 30_000_000
    if check_rank and K:
        got = linalg.rank(F, G)
        if got != K:
            raise AssertionError(f"generator matrix rank {got} != K {K}")
    return G


def orbit_weight_check(model: EvalModel, f: rpoly.ReducedPoly):
    """(weight, support_size, consistent) with the support counted over the
    whole of F_q^m and consistency meaning support = r * weight."""
    if f.m != model.m or f.field != model.field:
        raise errors.DimensionMismatch("polynomial does not match the model")
    if f.is_zero():
        return 0, 0, True
    c = rpoly.residue_class(f, model.r)
    if c is None or c != (model.r - 1) % model.r:
        raise errors.MixedResidue(
            f"need a pure residue class r-1 = {(model.r - 1) % model.r}, got {c}"
        )
    grid = rpoly.values_on_grid(f)
    support = int(np.count_nonzero(grid))
    weight = int(np.count_nonzero(grid[model.point_flat]))
    return weight, support, support == model.r * weight


def constacyclic_shift(word: Codeword, mu: int) -> Codeword:
    """(mu * v_{n-1}, v_0, ..., v_{n-2})."""
    v = word.values
    out = np.empty_like(v)
    out[0] = word.field.mul(mu, int(v[-1]))
    out[1:] = v[:-1]
    return Codeword(values=out, field=word.field, source=None)


def membership(word: Codeword | np.ndarray, G: np.ndarray, field: FieldCtx) -> bool:
    """True iff the word lies in the F_q-row space of G."""
    vec = word.values if isinstance(word, Codeword) else np.asarray(word)
    if vec.shape[0] != G.shape[1]:
        raise errors.DimensionMismatch("word length does not match the matrix")
    return linalg.in_row_space(field, G, vec)
