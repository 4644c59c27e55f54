"""Finite fields F_p, F_q = F_{p^e} and the tower extension F_{q^m}.

Field elements are plain integers 0..q-1.  The index of an element is the
little-endian base-p encoding of its coefficient vector over F_p, so index 0
is the zero element, index 1 is the one element, and for prime fields the
index IS the residue.  Arithmetic for the base field runs off precomputed
numpy tables (q x q add/mul and q-sized inv/neg/log/antilog); the extension
F_{q^m} is handled by polynomial arithmetic over F_q plus a companion matrix,
never by tables.
"""

from __future__ import annotations

import itertools
from functools import lru_cache

import numpy as np

from . import errors

# largest q for which the dense q x q tables are materialized
_TABLE_Q = 1024
_MAX_Q = 1 << 16
_MAX_QM = 1 << 48
# full coordinate-map / orbit-coverage pass is done below this size
_FULL_CHECK_QM = 1 << 24
# power sequences of beta are only materialized below this size
_SEQ_LIMIT_QM = 1 << 26


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


def _factorint(n: int) -> list:
    """Sorted prime factors of n; sympy only kicks in for large inputs."""
    if n > 10 ** 9:
        import sympy

        return sorted(sympy.factorint(n))
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


# ---------------------------------------------------------------------------
# dense polynomial helpers over F_p (coefficient lists, little-endian)
# ---------------------------------------------------------------------------

def _poly_trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mulmod_p(a, b, mod, p):
    """Product of two coefficient lists modulo the monic polynomial `mod`."""
    out = [0] * (len(a) + len(b) - 1) if a and b else []
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    e = len(mod) - 1
    for d in range(len(out) - 1, e - 1, -1):
        c = out[d]
        if c:
            out[d] = 0
            for j in range(e):
                out[d - e + j] = (out[d - e + j] - c * mod[j]) % p
    return _poly_trim(out)


def _poly_divmod_p(a, b, p):
    """Divide coefficient list a by monic-normalizable b over F_p."""
    a = list(a)
    db, lb = len(b) - 1, b[-1]
    inv_lb = pow(lb, p - 2, p) if lb != 1 else 1
    quo = [0] * max(len(a) - db, 0)
    for d in range(len(a) - 1, db - 1, -1):
        c = (a[d] * inv_lb) % p
        if c:
            quo[d - db] = c
            for j in range(db + 1):
                a[d - db + j] = (a[d - db + j] - c * b[j]) % p
    return quo, _poly_trim(a)


def _is_irreducible_p(coeffs, p) -> bool:
    """Trial division by all monic polynomials of degree <= deg/2."""
    e = len(coeffs) - 1
    if e == 1:
        return True
    if coeffs[0] == 0:
        return False
    for d in range(1, e // 2 + 1):
        for tail in itertools.product(range(p), repeat=d):
            div = list(tail) + [1]
            _, rem = _poly_divmod_p(coeffs, div, p)
            if not rem:
                return False
    return True


def _smallest_irreducible(p, e):
    """Monic irreducible of degree e over F_p, lexicographically smallest
    when the non-leading coefficients are compared low-degree-first."""
    for tail in itertools.product(range(p), repeat=e):
        cand = list(tail) + [1]
        if _is_irreducible_p(cand, p):
            return cand
    raise AssertionError("no irreducible polynomial found")  # unreachable


# ---------------------------------------------------------------------------
# base field
# ---------------------------------------------------------------------------

class FieldCtx:
    """The field F_q with q = p^e and its arithmetic tables.

    Attributes
    ----------
    p, e, q : int
        characteristic, extension degree over F_p, and order.
    modulus : tuple[int]
        monic irreducible of degree e over F_p, little-endian coefficients.
    digits : (q, e) array
        base-p coefficient vector of every element index.
    exp_t, log_t : arrays
        antilog/log tables keyed to `generator`; log_t[0] = -1.
    add_t, mul_t, pow_t : (q, q) arrays or None
        dense tables, only materialized for q <= 1024.
    """

    def __init__(self, p: int, e: int):
        if not _is_prime(p):
            raise errors.NonPrimeP(f"p={p} is not prime")
        if e < 1:
            raise errors.ConstarmError(f"extension degree e={e} must be >= 1")
        q = p ** e
        if q > _MAX_Q:
            raise errors.FieldTooLarge(f"q = {p}^{e} = {q} exceeds 2^16")
        self.p, self.e, self.q = p, e, q
        self.modulus = tuple(_smallest_irreducible(p, e))

        self.digits = self._build_digits()
        self._pvec = p ** np.arange(e, dtype=np.int64)

        self.generator = self._find_generator()
        self.exp_t, self.log_t = self._build_logs()

        if q <= _TABLE_Q:
            self.add_t, self.mul_t, self.pow_t = self._build_tables()
        else:
            self.add_t = self.mul_t = self.pow_t = None

        self.neg_t = self._build_neg()
        self.inv_t = self._build_inv()
        self.regrep = self._build_regrep()
        self._vand = None
        self._vand_inv = None

        # construction-time sanity: enumeration round trip and log/antilog
        assert self.encode_digits(self.digits).tolist() == list(range(q))
        nz = np.arange(1, q)
        assert np.array_equal(self.exp_t[self.log_t[nz]], nz)

    # -- construction helpers ------------------------------------------------

    def _build_digits(self):
        idx = np.arange(self.q, dtype=np.int64)
        out = np.empty((self.q, self.e), dtype=np.int32)
        for j in range(self.e):
            out[:, j] = idx % self.p
            idx //= self.p
        return out

    def encode_digits(self, dig):
        return np.asarray(dig, dtype=np.int64) @ self._pvec

    def _mul_scalar_raw(self, a: int, b: int) -> int:
        da = [int(x) for x in self.digits[a]]
        db = [int(x) for x in self.digits[b]]
        prod = _poly_mulmod_p(_poly_trim(da), _poly_trim(db), list(self.modulus), self.p)
        prod += [0] * (self.e - len(prod))
        return int(self.encode_digits(np.array(prod[: self.e])))

    def _pow_scalar_raw(self, a: int, t: int) -> int:
        out, base = 1, a
        while t:
            if t & 1:
                out = self._mul_scalar_raw(out, base)
            base = self._mul_scalar_raw(base, base)
            t >>= 1
        return out

    def _find_generator(self) -> int:
        if self.q == 2:
            return 1
        fac = _factorint(self.q - 1)
        for x in range(1, self.q):
            if all(self._pow_scalar_raw(x, (self.q - 1) // d) != 1 for d in fac):
                return x
        raise AssertionError("no primitive element found")  # unreachable

    def _build_logs(self):
        exp_t = np.empty(self.q - 1, dtype=np.int64)
        log_t = np.full(self.q, -1, dtype=np.int64)
        x = 1
        for i in range(self.q - 1):
            exp_t[i] = x
            log_t[x] = i
            x = self._mul_scalar_raw(x, self.generator)
        assert x == 1
        return exp_t, log_t

    def _build_tables(self):
        q = self.q
        s = (self.digits[:, None, :] + self.digits[None, :, :]) % self.p
        add_t = self.encode_digits(s.reshape(q * q, self.e)).reshape(q, q).astype(np.int16)
        la = self.log_t[:, None] + self.log_t[None, :]
        mul_t = self.exp_t[la % (q - 1)].astype(np.int16)
        mul_t[0, :] = 0
        mul_t[:, 0] = 0
        ks = np.arange(q, dtype=np.int64)
        pw = self.exp_t[(self.log_t[1:, None] * ks[None, :]) % (q - 1)]
        pow_t = np.empty((q, q), dtype=np.int16)
        pow_t[1:] = pw
        pow_t[0] = 0
        pow_t[:, 0] = 1  # x^0 = 1 including 0^0 for evaluation purposes
        return add_t, mul_t, pow_t

    def _build_neg(self):
        d = (-self.digits) % self.p
        return self.encode_digits(d).astype(np.int16)

    def _build_inv(self):
        inv = np.zeros(self.q, dtype=np.int16)
        nz = np.arange(1, self.q)
        inv[nz] = self.exp_t[(-self.log_t[nz]) % (self.q - 1)]
        return inv

    def _build_regrep(self):
        """regrep[g][s, t] = coord_t(basis_s * g), the matrix of
        multiplication by g on F_p coordinates (row-vector convention)."""
        e = self.e
        rep = np.empty((self.q, e, e), dtype=np.int32)
        for s in range(e):
            basis = self.p ** s
            prod = self.mul_index(basis, np.arange(self.q))
            rep[:, s, :] = self.digits[prod]
        return rep

    # -- scalar and array arithmetic -----------------------------------------

    def add(self, a: int, b: int) -> int:
        return int(self.add_index(a, b))

    def sub(self, a: int, b: int) -> int:
        return int(self.add_index(a, self.neg_t[b]))

    def mul(self, a: int, b: int) -> int:
        return int(self.mul_index(a, b))

    def neg(self, a: int) -> int:
        return int(self.neg_t[a])

    def inv(self, a: int) -> int:
        if a == 0:
            raise errors.ZeroElement("0 has no inverse")
        return int(self.inv_t[a])

    def pow(self, a: int, t: int) -> int:
        if a == 0:
            if t == 0:
                return 1
            if t < 0:
                raise errors.ZeroElement("0 has no inverse")
            return 0
        return int(self.exp_t[(self.log_t[a] * t) % (self.q - 1)])

    def add_index(self, a, b):
        if self.add_t is not None:
            return self.add_t[a, b]
        d = (self.digits[a] + self.digits[b]) % self.p
        return self.encode_digits(d)

    def mul_index(self, a, b):
        if self.mul_t is not None:
            return self.mul_t[a, b]
        a = np.asarray(a)
        b = np.asarray(b)
        out = self.exp_t[(self.log_t[a] + self.log_t[b]) % (self.q - 1)]
        return np.where((a == 0) | (b == 0), 0, out)

    def pow_index(self, x, k):
        """Vectorized x^k for exponent arrays with 0 <= k <= q-1."""
        if self.pow_t is not None:
            return self.pow_t[x, k]
        x = np.asarray(x)
        k = np.asarray(k)
        out = self.exp_t[(self.log_t[x] * k) % (self.q - 1)]
        out = np.where(x == 0, np.where(k == 0, 1, 0), out)
        return out

    def elements(self):
        return range(self.q)

    # -- linear-algebra support ----------------------------------------------

    def vand(self):
        """Power matrix W[e, x] = x^e used by grid transforms."""
        if self._vand is None:
            if self.q > _TABLE_Q:
                raise errors.FieldTooLarge("grid transforms need q <= 1024")
            self._vand = np.ascontiguousarray(self.pow_t.T).astype(np.int16)
        return self._vand

    def vand_inv(self):
        if self._vand_inv is None:
            from . import linalg

            self._vand_inv = linalg.mat_inv(self, self.vand())
        return self._vand_inv

    def block_expand(self, A):
        """(R, C) index matrix -> (R*e, C*e) F_p matrix for right-multiplying
        F_p coordinate rows: coords(x A) = coords(x) @ block_expand(A)."""
        A = np.asarray(A)
        R, C = A.shape
        blk = self.regrep[A]                       # (R, C, e, e)
        blk = blk.transpose(0, 2, 1, 3)            # (R, e, C, e)
        return np.ascontiguousarray(blk.reshape(R * self.e, C * self.e))

    def to_coords(self, A):
        """Index array (...,) -> F_p coordinate array (..., e) flattened on
        the last axis, matching block_expand's layout."""
        A = np.asarray(A)
        return self.digits[A].reshape(A.shape[:-1] + (A.shape[-1] * self.e,))

    def from_coords(self, C):
        """Inverse of to_coords."""
        C = np.asarray(C)
        n = C.shape[-1] // self.e
        d = C.reshape(C.shape[:-1] + (n, self.e))
        return self.encode_digits(d.astype(np.int64))

    def matmul(self, A, B):
        """Exact matrix product over F_q via an F_p block product."""
        A = np.atleast_2d(np.asarray(A))
        B = np.atleast_2d(np.asarray(B))
        if A.shape[1] != B.shape[0]:
            raise errors.DimensionMismatch(f"{A.shape} @ {B.shape}")
        bound = (self.p - 1) ** 2 * A.shape[1] * self.e
        dt = np.float32 if bound < (1 << 24) else np.float64
        Ac = self.to_coords(A).astype(dt)
        Bb = self.block_expand(B).astype(dt)
        prod = (Ac @ Bb) % self.p
        return self.from_coords(prod.astype(np.int64)).astype(np.int16)

    def __eq__(self, other):
        return (
            isinstance(other, FieldCtx)
            and (self.p, self.e, self.modulus) == (other.p, other.e, other.modulus)
        )

    def __hash__(self):
        return hash((self.p, self.e, self.modulus))

    def __repr__(self):
        return f"FieldCtx(q={self.q}={self.p}^{self.e})"


@lru_cache(maxsize=None)
def make_field(p: int, e: int) -> FieldCtx:
    """F_{p^e} with the lexicographically smallest monic irreducible modulus."""
    return FieldCtx(p, e)


@lru_cache(maxsize=None)
def field_from_order(q: int) -> FieldCtx:
    """F_q from its order, factoring q = p^e."""
    for p in range(2, q + 1):
        if q % p == 0:
            e = 0
            t = q
            while t % p == 0:
                t //= p
                e += 1
            if t != 1:
                raise errors.NonPrimeP(f"q={q} is not a prime power")
            return make_field(p, e)
    raise errors.NonPrimeP(f"q={q} is not a prime power")


def primitive_element(F: FieldCtx) -> int:
    """Enumeration-smallest element of multiplicative order q-1."""
    return F.generator


def element_order(F: FieldCtx, x: int) -> int:
    """Least t >= 1 with x^t = 1."""
    if x == 0:
        raise errors.ZeroElement("order of 0 is undefined")
    t = F.q - 1
    for d in _factorint(t):
        while t % d == 0 and F.pow(x, t // d) == 1:
            t //= d
    return t


def mu_subgroup(F: FieldCtx, r: int):
    """The subgroup mu_r of r-th roots of unity, as a sorted tuple."""
    if r < 1 or (F.q - 1) % r != 0:
        raise errors.RNotDivisor(f"r={r} does not divide q-1={F.q - 1}")
    step = (F.q - 1) // r
    return tuple(sorted(int(F.exp_t[(step * j) % (F.q - 1)]) for j in range(r)))


# ---------------------------------------------------------------------------
# extension field F_{q^m}
# ---------------------------------------------------------------------------

class ExtCtx:
    """F_{q^m} presented on the polynomial basis {1, beta, ..., beta^{m-1}}
    where beta = X mod `modulus` is a primitive element.

    The companion matrix M acts on row vectors: coords(beta * x) =
    coords(x) @ M, so e M^i is literally the coordinate vector of beta^i
    with e = (1, 0, ..., 0).
    """

    def __init__(self, base: FieldCtx, m: int):
        if m < 2:
            raise errors.ConstarmError("extension degree m must be >= 2")
        qm = base.q ** m
        if qm > _MAX_QM:
            raise errors.ExtensionTooLarge(f"q^m = {qm} exceeds 2^48")
        self.base = base
        self.m = m
        self.qm = qm
        self.modulus = self._find_primitive_modulus()
        self.M = self._companion()
        self._qvec = (base.q ** np.arange(m - 1, -1, -1)).astype(np.int64)
        self._flat_seq = None
        self._verify_coordinate_map()

    # -- modulus search -------------------------------------------------------

    def _polymulmod_q(self, a, b, mod):
        F = self.base
        out = [0] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    out[i + j] = F.add(out[i + j], F.mul(ai, bj))
        e = len(mod) - 1
        for d in range(len(out) - 1, e - 1, -1):
            c = out[d]
            if c:
                out[d] = 0
                for j in range(e):
                    out[d - e + j] = F.sub(out[d - e + j], F.mul(c, mod[j]))
        while out and out[-1] == 0:
            out.pop()
        return out

    def _batched_mulmod(self, u, v, mods):
        """Product of residue batches modulo per-row monic moduli.

        u, v: (B, m) coefficient arrays (degree < m); mods: (B, m) holding
        the non-leading coefficients.  All index arithmetic through tables.
        """
        F, m = self.base, self.m
        B = u.shape[0]
        z = np.zeros((B, 2 * m - 1), dtype=np.int64)
        for i in range(m):
            ui = u[:, i]
            for j in range(m):
                z[:, i + j] = F.add_index(z[:, i + j], F.mul_index(ui, v[:, j]))
        for d in range(2 * m - 2, m - 1, -1):
            c = F.neg_t[z[:, d]].astype(np.int64)
            for j in range(m):
                z[:, d - m + j] = F.add_index(z[:, d - m + j], F.mul_index(c, mods[:, j]))
        return z[:, :m]

    def _batched_x_pow(self, t, mods):
        """X^t mod each row's modulus, square-and-multiply on the batch."""
        m = self.m
        B = mods.shape[0]
        res = np.zeros((B, m), dtype=np.int64)
        res[:, 0] = 1
        base = np.zeros((B, m), dtype=np.int64)
        if m > 1:
            base[:, 1] = 1
        while t:
            if t & 1:
                res = self._batched_mulmod(res, base, mods)
            t >>= 1
            if t:
                base = self._batched_mulmod(base, base, mods)
        return res

    def _find_primitive_modulus(self):
        """Lex-smallest monic degree-m polynomial over F_q whose root X is
        primitive.  Primitivity of X forces irreducibility, so a single
        order test decides each candidate; candidates are scanned in lex
        blocks with the order tests batched through the arithmetic tables."""
        q, m = self.base.q, self.m
        N = self.qm - 1
        fac = _factorint(N)
        one = np.zeros(m, dtype=np.int64)
        one[0] = 1
        span = q ** (m - 1)
        block = 8192
        # a zero constant coefficient would make X a zero divisor; skip c0 = 0
        for start in range(0, (q - 1) * span, block):
            stop = min(start + block, (q - 1) * span)
            idx = np.arange(start, stop, dtype=np.int64)
            mods = np.empty((idx.size, m), dtype=np.int64)
            rem = idx
            for j in range(m - 1, 0, -1):
                mods[:, j] = rem % q
                rem = rem // q
            mods[:, 0] = rem + 1
            ok = np.all(self._batched_x_pow(N, mods) == one, axis=1)
            for d in fac:
                alive = np.nonzero(ok)[0]
                if alive.size == 0:
                    break
                sub = self._batched_x_pow(N // d, mods[alive])
                ok[alive] &= ~np.all(sub == one, axis=1)
            hits = np.nonzero(ok)[0]
            if hits.size:
                return tuple(int(x) for x in mods[hits[0]]) + (1,)
        raise AssertionError("no primitive polynomial found")  # unreachable

    def _companion(self):
        F, m = self.base, self.m
        M = np.zeros((m, m), dtype=np.int16)
        for i in range(m - 1):
            M[i, i + 1] = 1
        for j in range(m):
            M[m - 1, j] = F.neg(self.modulus[j])
        return M

    # -- coordinate map -------------------------------------------------------

    def decode_flat(self, idx):
        """Flat index (x1 most significant, base q) -> (..., m) coordinates."""
        idx = np.asarray(idx, dtype=np.int64)
        out = np.empty(idx.shape + (self.m,), dtype=np.int32)
        for j in range(self.m - 1, -1, -1):
            out[..., j] = idx % self.base.q
            idx = idx // self.base.q
        return out

    def flat_index(self, pts):
        pts = np.asarray(pts, dtype=np.int64)
        return pts @ self._qvec

    def power_flat_sequence(self):
        """Flat indices of beta^i for i = 0 .. q^m-2, computed in blocks."""
        if self._flat_seq is not None:
            return self._flat_seq
        if self.qm > _SEQ_LIMIT_QM:
            raise errors.ExtensionTooLarge(
                f"power sequence needs q^m <= 2^26, got {self.qm}"
            )
        F, m, total = self.base, self.m, self.qm - 1
        B = min(4096, total)
        seeds = np.empty((B, m), dtype=np.int16)
        v = np.zeros(m, dtype=np.int16)
        v[0] = 1
        for i in range(B):
            seeds[i] = v
            v = F.matmul(v[None, :], self.M)[0]
        blocks = [seeds]
        if total > B:
            from . import linalg

            MB = linalg.mat_pow(F, self.M, B)
            cur = seeds
            produced = B
            while produced < total:
                cur = F.matmul(cur, MB)
                blocks.append(cur)
                produced += B
        seq = np.concatenate(blocks, axis=0)[:total]
        self._flat_seq = self.flat_index(seq)
        return self._flat_seq

    def _verify_coordinate_map(self):
        if self.qm <= _FULL_CHECK_QM:
            seq = self.power_flat_sequence()
            counts = np.bincount(seq, minlength=self.qm)
            if counts[0] != 0 or not np.all(counts[1:] == 1):
                raise AssertionError("beta powers do not cover F_q^m \\ {0}")
        else:
            rng = np.random.default_rng(0)
            idx = rng.integers(0, self.qm, size=10000)
            pts = self.decode_flat(idx)
            if not np.array_equal(self.flat_index(pts), idx):
                raise AssertionError("coordinate map round trip failed")

    def __repr__(self):
        return f"ExtCtx(q={self.base.q}, m={self.m})"


@lru_cache(maxsize=None)
def make_extension(F: FieldCtx, m: int) -> ExtCtx:
    """F_{q^m} with primitive beta = X and its companion matrix."""
    return ExtCtx(F, m)
