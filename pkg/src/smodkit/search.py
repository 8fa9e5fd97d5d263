"""Exhaustive search for forbidden minors over a finite entry pool.

Matrices are grown one row at a time.  Every partial matrix must already be
totally S-modular in all sizes below the target dimension, so most branches
die after two or three rows.  All determinant work runs on Kronecker-encoded
integers (evaluation at a power of two large enough to be injective on every
minor that can occur).

Results are reported once per class under row permutations, column
permutations and a global sign.  The search itself enforces a cheaper normal
form: the first row is sorted and has the smallest multiset of entries, the
remaining rows are sorted by (multiset, index), and, when both the pool and S
are closed under negation, every row is sign-normalised.  Each hit is then
expanded over the quotiented row signs and canonicalised.
"""

from __future__ import annotations

import itertools
import math
from concurrent.futures import ProcessPoolExecutor
from typing import Iterable, Optional

from .polymatrix import PolyMatrix, det
from .polyring import Poly
from .smodular import SSet, sorted_polys


def canonical_form(M: PolyMatrix, pool: Optional[Iterable] = None) -> PolyMatrix:
    """Lexicographically smallest row-major entry sequence over all row
    permutations, column permutations and a global sign.

    With ``pool`` given, only signs keeping every entry inside the pool are
    considered, so representatives stay pool-valued.

    For a fixed row order the best column order sorts the columns as tuples,
    so only row orders are searched.  Rows are placed one at a time, keeping
    only the candidates whose placement gives the smallest next row.
    """
    signs = (1, -1)
    if pool is not None:
        pool = set(pool)
        signs = tuple(sg for sg in signs
                      if all((p if sg == 1 else -p) in pool for r in M.entries for p in r)) or signs
    best_key, best_rows = None, None
    for sgn in signs:
        rows = [tuple(p if sgn == 1 else -p for p in r) for r in M.entries]
        keys = [tuple(p.sort_key() for p in r) for r in rows]
        n_cols = M.cols
        stack = [((), frozenset(range(M.rows)))]
        while stack:
            order, remaining = stack.pop()
            cols = sorted(range(n_cols), key=lambda j: tuple(keys[i][j] for i in order))
            key_rows = [tuple(keys[i][j] for j in cols) for i in order]
            if best_key is not None and key_rows > best_key[: len(order)]:
                continue
            if not remaining:
                if best_key is None or key_rows < best_key:
                    best_key = key_rows
                    best_rows = [[rows[i][j] for j in cols] for i in order]
                continue
            # columns tied on the placed rows form classes; a candidate row
            # is compared with its entries sorted inside each class
            classes = [list(g) for _, g in itertools.groupby(
                cols, key=lambda j: tuple(keys[i][j] for i in order))]
            nexts = {}
            for i in remaining:
                nk = tuple(k for cl in classes for k in sorted(keys[i][j] for j in cl))
                nexts.setdefault(nk, []).append(i)
            # only rows giving the smallest next row can lead to the minimum;
            # they refine the column classes differently, so branch on each
            lo = min(nexts)
            for i in nexts[lo]:
                stack.append((order + (i,), remaining - {i}))
    return PolyMatrix(best_rows)


def _encoding_base(S: SSet, pool: list, size: int) -> int:
    l1 = max((sum(abs(c) for c in p.coeffs) for p in pool), default=1)
    bound = math.factorial(size) * max(l1, 1) ** size
    bound = max(bound, max((abs(c) for p in S.elements for c in p.coeffs), default=1))
    return 1 << (2 * bound + 2).bit_length()


class _SizeSearch:
    """Search state for forbidden minors of one dimension ``l``."""

    def __init__(self, S: SSet, pool: list, l: int):
        self.l = l
        self.pool = pool
        base = _encoding_base(S, pool, l)
        self.enc = [p.eval(base) for p in pool]
        self.allowed = frozenset(p.eval(base) for p in S.elements)
        self.strict = Poly(()) in S.elements  # then det 0 is allowed: rows distinct
        rank_of = {p: i for i, p in enumerate(pool)}
        neg_rank = [rank_of.get(-p) for p in pool]
        self.sign_sym = S.pm_closed and all(r is not None for r in neg_rank)
        ok_entries = [i for i, e in enumerate(self.enc) if e in self.allowed]

        rows = []
        for r in itertools.product(ok_entries, repeat=l):
            key = tuple(sorted(r))
            if self.sign_sym:
                nkey = tuple(sorted(neg_rank[i] for i in r))
                if nkey < key:
                    continue
            rows.append((key, r))
        rows.sort()
        self.rows = [r for _, r in rows]
        self.keys = [k for k, _ in rows]
        self.vals = [tuple(self.enc[i] for i in r) for r in self.rows]
        n = len(self.rows)
        # first position whose key is >= key of position p
        self.key_start = []
        for p in range(n):
            q = p
            while q > 0 and self.keys[q - 1] == self.keys[p]:
                q -= 1
            self.key_start.append(q)
        self.compat = self._pair_compat() if l > 2 else None

    def _pair_compat(self) -> list:
        allowed = self.allowed
        pairs = list(itertools.combinations(range(self.l), 2))
        vals = self.vals
        n = len(vals)
        compat = [0] * n
        for a in range(n):
            va = vals[a]
            bits = 0
            for b in range(n):
                vb = vals[b]
                for j1, j2 in pairs:
                    if va[j1] * vb[j2] - va[j2] * vb[j1] not in allowed:
                        break
                else:
                    bits |= 1 << b
            compat[a] = bits
        return compat

    def first_rows(self) -> list:
        return [p for p, r in enumerate(self.rows) if list(r) == sorted(r)]

    def _plans(self) -> list:
        """Per new-row position: the minors it completes, as flat indices.

        A minor on row set R and column set C lives at ``R_mask << l | C_mask``;
        it is expanded along the new (last) row.
        """
        l = self.l
        plans = []
        for depth in range(l):
            plan = []
            for k in range(1, min(depth + 1, l) + 1):
                for R in itertools.combinations(range(depth), k - 1):
                    rmask = sum(1 << r for r in R)
                    full_rmask = rmask | (1 << depth)
                    for C in itertools.combinations(range(l), k):
                        cmask = sum(1 << c for c in C)
                        terms = []
                        sign = 1 if (k - 1) % 2 == 0 else -1
                        for c in C:
                            terms.append((c, (rmask << l) | (cmask & ~(1 << c)), sign))
                            sign = -sign
                        plan.append(((full_rmask << l) | cmask, k < l, tuple(terms)))
            plans.append(plan)
        return plans

    def run(self, firsts: Iterable[int]) -> list:
        n = len(self.rows)
        full = (1 << n) - 1
        self.plans = self._plans()
        hits = []
        for p in firsts:
            minors = [0] * (1 << (2 * self.l))
            minors[0] = 1
            if not self._extend(minors, 0, self.vals[p]):
                continue
            cand = (full >> self.key_start[p]) << self.key_start[p]
            if self.strict:
                cand &= ~(1 << p)
            if self.compat is not None:
                cand &= self.compat[p]
            self._dfs([p], minors, cand, hits)
        return hits

    def _dfs(self, chosen, minors, cand, hits):
        depth = len(chosen)
        last = depth + 1 == self.l
        while cand:
            low = cand & -cand
            q = low.bit_length() - 1
            cand ^= low
            if not self._extend(minors, depth, self.vals[q]):
                continue
            if last:
                hits.append([self.rows[i] for i in chosen + [q]])
            else:
                nxt = cand if self.strict else cand | low
                if self.compat is not None:
                    nxt &= self.compat[q]
                self._dfs(chosen + [q], minors, nxt, hits)

    def _extend(self, minors, depth, v) -> bool:
        """Fill in the minors using a new row at position ``depth``.  False if
        a proper minor leaves S or, at full size, the determinant stays in S.
        Slots touched by a rejected row are overwritten before they are read."""
        allowed = self.allowed
        for idx, proper, terms in self.plans[depth]:
            acc = 0
            for c, sub, sign in terms:
                e = v[c]
                if e:
                    m = minors[sub]
                    if m:
                        acc += sign * e * m
            if (acc in allowed) != proper:
                return False
            minors[idx] = acc
        return True


def _run_chunk(args):
    S_json, pool_strs, l, firsts = args
    S = SSet.from_json(S_json)
    pool = [Poly.parse(p) for p in pool_strs]
    return _SizeSearch(S, pool, l).run(firsts)


def _expand_signs(rows: list, pool: list, sign_sym: bool) -> Iterable[PolyMatrix]:
    base = [[pool[i] for i in r] for r in rows]
    if not sign_sym:
        yield PolyMatrix(base)
        return
    l = len(base)
    for signs in itertools.product((1, -1), repeat=l - 1):
        yield PolyMatrix([base[0]] + [[p if s == 1 else -p for p in r] for s, r in zip(signs, base[1:])])


def search_forbidden_minors(S: SSet, entry_pool: Iterable, n_max: int, workers: int = 1,
                           n_min: int = 2) -> list[tuple[PolyMatrix, Poly]]:
    """All forbidden minors for ``S`` with entries from ``entry_pool`` and size
    ``n_min..n_max``, one canonical representative per class."""
    pool = sorted_polys({Poly.coerce(p) if not isinstance(p, str) else Poly.parse(p) for p in entry_pool})
    found: dict = {}
    for l in range(max(2, n_min), n_max + 1):
        state = _SizeSearch(S, pool, l)
        firsts = state.first_rows()
        if workers > 1 and len(firsts) > 1:
            chunks = [firsts[i::workers] for i in range(workers)]
            args = [(S.to_json(), [str(p) for p in pool], l, c) for c in chunks]
            with ProcessPoolExecutor(max_workers=workers) as ex:
                hits = [h for part in ex.map(_run_chunk, args) for h in part]
        else:
            hits = state.run(firsts)
        for rows in hits:
            for M in _expand_signs(rows, pool, state.sign_sym):
                C = canonical_form(M, pool)
                if C not in found:
                    found[C] = det(C)

    def order(item):
        M, _ = item
        return (M.rows, [[p.sort_key() for p in r] for r in M.entries])

    return sorted(found.items(), key=order)
