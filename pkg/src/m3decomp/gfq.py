"""Vectorized arithmetic in GF(p^2) for p in {2, 3, 5}.

Elements are (..., 2) integer arrays (a0 + a1*t) with t^2 = s*t + r for a
fixed irreducible quadratic.  Used to test whether unmatched search orbits
become equivalent to catalog specializations after a quadratic extension,
which is the precise content of a square-root obstruction.
"""

from __future__ import annotations

import numpy as np

_REDUCTION = {2: (1, 1), 3: (0, 2), 5: (0, 2)}  # t^2 = s*t + r


class GFq2:
    def __init__(self, p):
        if p not in _REDUCTION:
            raise ValueError(f"no quadratic extension table for p={p}")
        self.p = p
        self.q = p * p
        self.s, self.r = _REDUCTION[p]

    # -- element helpers ----------------------------------------------------

    def lift(self, arr):
        """Embed an F_p integer array as (..., 2) pairs."""
        arr = np.asarray(arr, dtype=np.int64)
        out = np.zeros(arr.shape + (2,), dtype=np.int64)
        out[..., 0] = arr % self.p
        return out

    def elements(self):
        """All q field elements as a (q, 2) array, deterministic order."""
        out = np.zeros((self.q, 2), dtype=np.int64)
        out[:, 0] = np.arange(self.q) % self.p
        out[:, 1] = np.arange(self.q) // self.p
        return out

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def mul(self, a, b):
        p, s, r = self.p, self.s, self.r
        a0, a1 = a[..., 0], a[..., 1]
        b0, b1 = b[..., 0], b[..., 1]
        cross = a1 * b1 % p
        c0 = (a0 * b0 + r * cross) % p
        c1 = (a0 * b1 + a1 * b0 + s * cross) % p
        return np.stack([c0, c1], axis=-1)

    def is_zero(self, a):
        return (a[..., 0] == 0) & (a[..., 1] == 0)

    def inv(self, a):
        """Elementwise inverse by raising to q-2 (square and multiply)."""
        e = self.q - 2
        result = self.lift(np.ones(a.shape[:-1], dtype=np.int64))
        base = a % self.p
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    # -- small matrices (entries on the last axis) ---------------------------

    def matmul(self, a, b):
        """(..., n, k, 2) @ (..., k, m, 2)."""
        p, s, r = self.p, self.s, self.r
        a0, a1 = a[..., 0], a[..., 1]
        b0, b1 = b[..., 0], b[..., 1]
        cross = a1 @ b1 % p
        c0 = (a0 @ b0 + r * cross) % p
        c1 = (a0 @ b1 + a1 @ b0 + s * cross) % p
        return np.stack([c0, c1], axis=-1)

    def det_adj(self, m):
        """Determinant and adjugate of batched k x k matrices, k <= 4."""
        k = m.shape[-3]
        if k == 1:
            det = m[..., 0, 0, :]
            adj = self.lift(np.ones(m.shape[:-3] + (1, 1), dtype=np.int64))
            return det, adj
        dets = {}
        idx = list(range(k))
        for i in idx:
            for j in idx:
                rows = [r for r in idx if r != i]
                cols = [c for c in idx if c != j]
                minor = m[..., rows, :, :][..., :, cols, :]
                dets[(i, j)] = self._det_small(minor)
        det = self.lift(np.zeros(m.shape[:-3], dtype=np.int64))
        for j in idx:
            term = self.mul(m[..., 0, j, :], dets[(0, j)])
            det = self.add(det, term) if j % 2 == 0 else self.sub(det, term)
        adj = np.zeros(m.shape, dtype=np.int64)
        for i in idx:
            for j in idx:
                cof = dets[(j, i)]
                if (i + j) % 2:
                    cof = self.neg(cof)
                adj[..., i, j, :] = cof
        return det, adj

    def _det_small(self, m):
        k = m.shape[-3]
        if k == 1:
            return m[..., 0, 0, :]
        if k == 2:
            return self.sub(
                self.mul(m[..., 0, 0, :], m[..., 1, 1, :]),
                self.mul(m[..., 0, 1, :], m[..., 1, 0, :]),
            )
        det = self.lift(np.zeros(m.shape[:-3], dtype=np.int64))
        idx = list(range(k))
        for j in idx:
            cols = [c for c in idx if c != j]
            minor = m[..., 1:, :, :][..., :, cols, :]
            term = self.mul(m[..., 0, j, :], self._det_small(minor))
            det = self.add(det, term) if j % 2 == 0 else self.sub(det, term)
        return det

    def inv_mat(self, m):
        det, adj = self.det_adj(m)
        bad = self.is_zero(det)
        if bad.any():
            raise ZeroDivisionError("singular matrix batch in GF(q)")
        dinv = self.inv(det)
        return self.mul(adj, dinv[..., None, None, :])

    def eval_compiled(self, compiled, columns, n_rows):
        """Evaluate a (coeff, ((var, exp), ...)) polynomial on pair columns."""
        acc = self.lift(np.zeros(n_rows, dtype=np.int64))
        for coeff, pairs in compiled:
            term = self.lift(np.full(n_rows, coeff, dtype=np.int64))
            for var_idx, e in pairs:
                col = columns[var_idx]
                for _ in range(e):
                    term = self.mul(term, col)
            acc = self.add(acc, term)
        return acc
