"""Whole-field exp/log tables for vectorized GF(3^m) arithmetic.

Elements are packed integers: value = sum(digit_j * 3^j) over the
representative's coefficients.  The table build exploits that
multiplication by a fixed unit is an F3-linear map on coefficient
vectors: one m-by-m matrix power, then one small matrix product per
block of exponents.  All float matmuls stay far below 2^53 (packing)
or 2^24 (mod-3 sums), so every result is exact.

Intended for the exhaustive root-counting strategy; bounded by
``ENUM_CAP`` like any other whole-field enumeration.
"""

from __future__ import annotations

import numpy as np

from .field import ENUM_CAP, FieldCtx, find_generator
from .poly import PolyF3

__all__ = ["FieldTables", "get_tables"]

_CHUNK = 1 << 20
_DIGIT_TABLE_CAP = 12  # full digit matrix costs m * 3^m int16 cells


def _mul_matrix(ctx: FieldCtx, unit: PolyF3) -> np.ndarray:
    """m x m matrix (mod 3) of y -> unit*y on coefficient vectors."""
    m = ctx.m
    M = np.zeros((m, m), dtype=np.int64)
    for j in range(m):
        col = ctx.reducer.mul(unit, PolyF3.monomial(j)).coeffs
        M[: col.size, j] = col
    return M


def _mat_pow(M: np.ndarray, e: int) -> np.ndarray:
    R = np.eye(M.shape[0], dtype=np.int64)
    while e:
        if e & 1:
            R = (R @ M) % 3
        M = (M @ M) % 3
        e >>= 1
    return R


class FieldTables:
    """exp/log tables over the packed encoding, plus vectorized helpers."""

    def __init__(self, ctx: FieldCtx, block: int = 4096):
        if ctx.m > ENUM_CAP:
            raise ValueError(f"table build capped at m <= {ENUM_CAP}")
        self.ctx = ctx
        self.m = m = ctx.m
        self.q = q = ctx.order
        self.n = n = ctx.group_order
        self.alpha = find_generator(ctx)

        pow3 = (3 ** np.arange(m)).astype(np.float64)
        B = min(block, n)
        M_alpha = _mul_matrix(ctx, self.alpha.rep)
        M_block_f = _mat_pow(M_alpha, B).astype(np.float32)

        exp = np.empty(n, dtype=np.int32)
        cur = np.zeros((m, B), dtype=np.float32)
        cur[0, 0] = 1.0  # alpha^0 = 1
        Ma_f = M_alpha.astype(np.float32)
        for i in range(1, B):
            cur[:, i] = (Ma_f @ cur[:, i - 1]) % 3
        written = 0
        while written < n:
            take = min(B, n - written)
            packed = pow3 @ cur[:, :take].astype(np.float64)
            exp[written : written + take] = np.rint(packed).astype(np.int32)
            written += take
            if written < n:
                cur = (M_block_f @ cur) % 3
        self.exp = exp

        log = np.full(q, -1, dtype=np.int32)
        log[exp] = np.arange(n, dtype=np.int32)
        if log[0] != -1 or np.any(log[1:] < 0):
            raise AssertionError("exp table is not a bijection onto the units")
        self.log = log
        self._pow3_i64 = (3 ** np.arange(m)).astype(np.int64)
        self._digits = None

    # ------------------------------------------------------------ helpers

    def values(self) -> np.ndarray:
        """All packed field values, 0..3^m-1."""
        return np.arange(self.q, dtype=np.int32)

    def pow_all(self, e: int) -> np.ndarray:
        """v^e for every packed value v (index = v). 0^e = 0 for e >= 1."""
        if e < 0:
            raise ValueError("negative exponent")
        out = np.empty(self.q, dtype=np.int32)
        if e == 0:
            out[:] = 1
            return out
        out[0] = 0
        r = e % self.n
        for lo in range(1, self.q, _CHUNK):
            hi = min(self.q, lo + _CHUNK)
            idx = self.log[lo:hi].astype(np.int64)
            out[lo:hi] = self.exp[(idx * r) % self.n]
        return out

    def plus_one(self, v: np.ndarray) -> np.ndarray:
        """Packed v + 1 (adds 1 to the constant digit mod 3)."""
        return np.where(v % 3 < 2, v + 1, v - 2).astype(v.dtype)

    def unpack(self, v: np.ndarray) -> np.ndarray:
        """Digit matrix, shape (m, len(v))."""
        return (v[None, :].astype(np.int64) // self._pow3_i64[:, None]) % 3

    def add_packed(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        out = np.empty(a.shape, dtype=np.int32)
        for lo in range(0, a.size, _CHUNK):
            hi = min(a.size, lo + _CHUNK)
            s = (self.unpack(a[lo:hi]) + self.unpack(b[lo:hi])) % 3
            out[lo:hi] = self._pow3_i64 @ s
        return out

    def zero_mask_linear_combo(self, parts, const: int) -> np.ndarray:
        """Boolean mask of indices where sum of packed arrays plus a prime
        field constant vanishes; parts is a list of (sign, array)."""
        size = parts[0][1].size
        mask = np.empty(size, dtype=bool)
        for lo in range(0, size, _CHUNK):
            hi = min(size, lo + _CHUNK)
            acc = np.zeros((self.m, hi - lo), dtype=np.int64)
            for sign, arr in parts:
                acc += sign * self.unpack(arr[lo:hi])
            acc[0] += const
            mask[lo:hi] = ~np.any(acc % 3, axis=0)
        return mask

    def digits_all(self) -> np.ndarray:
        """Digit matrix of every packed value, shape (m, 3^m) int16,
        cached; turns later unpacking into gathers instead of integer
        division.  Capped: the table is m * 3^m cells."""
        if self.m > _DIGIT_TABLE_CAP:
            raise ValueError(f"digit table capped at m <= {_DIGIT_TABLE_CAP}")
        if self._digits is None:
            self._digits = self.unpack(np.arange(self.q)).astype(np.int16)
        return self._digits

    def pack(self, D: np.ndarray) -> np.ndarray:
        """Packed values from a digit matrix of shape (m, k)."""
        return (self._pow3_i64 @ (D % 3)).astype(np.int32)


_TABLES_CACHE: dict = {}


def get_tables(ctx: FieldCtx) -> FieldTables:
    """Shared per-degree table cache; builds are cheap but not free."""
    tab = _TABLES_CACHE.get(ctx.m)
    if tab is None:
        tab = _TABLES_CACHE[ctx.m] = FieldTables(ctx)
    return tab
