"""Analysis of convolutional codes given by a polynomial generator matrix.

Structural checks (right invertibility and minimality) sit next to distance
computations on the state diagram; closed-form bounds for the doubly-cyclic
families close the module.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass, field as dc_field
from itertools import product
from typing import NamedTuple

import numpy as np

from . import linalg
from .errors import (
    InternalInconsistency,
    LengthMismatch,
    NotUniformRowDegrees,
    RankDeficient,
    StateSpaceTooLarge,
    TooLarge,
)
from .galois import Field
from .polymatrix import GeneratorMatrix, max_minor_degree, minors_gcd

DEFAULT_STATE_CAP = 1 << 22
BLOCK_SEARCH_CAP = 1 << 24
MAX_MINOR_K = 6
INF = np.int32(1 << 30)


# --------------------------------------------------------------------------
# structural properties


def is_right_invertible(G: GeneratorMatrix) -> bool:
    """True iff the maximal minors of ``G`` have a constant gcd."""
    g = minors_gcd(G, early_exit=True)
    if g.is_zero():
        raise RankDeficient("all maximal minors vanish")
    return g.degree == 0


class Minimality(NamedTuple):
    minimal: bool
    forney_indices: tuple[int, ...]
    delta: int | None


def minimality(G: GeneratorMatrix) -> Minimality:
    """Row degrees, the leading-row-coefficient test and ``delta``.

    ``delta`` (largest degree of a maximal minor) is computed by minor
    expansion for ``k <= MAX_MINOR_K`` and reported as ``None`` above that.
    A matrix whose minors all vanish is reported as not minimal with
    ``delta = None``.
    """
    degs = G.row_degrees
    F = G.field
    lead_full = linalg.rank(F, G.leading_row_matrix()) == G.k and min(degs) >= 0
    if G.k > MAX_MINOR_K:
        return Minimality(lead_full, degs, None)
    total = sum(degs)
    delta = max_minor_degree(G, stop_at=total)
    if delta is None:
        return Minimality(False, degs, None)
    if lead_full != (delta == total):
        raise InternalInconsistency(
            f"leading-row rank test says minimal={lead_full} but delta={delta}, "
            f"sum of row degrees={total}"
        )
    return Minimality(lead_full, degs, int(delta))


# --------------------------------------------------------------------------
# block codes


def _all_combinations(field: Field, rows: np.ndarray) -> np.ndarray:
    """All ``q^k`` linear combinations of ``rows``; row ``i`` of the message
    is the least significant base-``q`` digit of the output index."""
    rows = np.asarray(rows, dtype=np.int64)
    k, n = rows.shape
    out = np.zeros((1, n), dtype=np.int64)
    for i in range(k - 1, -1, -1):
        scaled = np.stack([field.mul_arrays(np.full(n, a), rows[i]) for a in range(field.q)])
        # new index = a_i + q * (old index): the new row is least significant
        out = field.add_arrays(out[:, None, :], scaled[None, :, :]).reshape(-1, n)
    return out.astype(np.min_scalar_type(field.q - 1))


def block_distance_exhaustive(field: Field, M) -> int:
    """Minimum weight over all nonzero ``u M`` by enumeration."""
    M = np.asarray(M, dtype=np.int64)
    if M.ndim != 2 or M.shape[0] == 0:
        raise ValueError("expected a nonempty constant matrix")
    k, n = M.shape
    if field.q ** k > BLOCK_SEARCH_CAP:
        raise TooLarge(f"q^k = {field.q}^{k} exceeds {BLOCK_SEARCH_CAP}")
    best = n + 1
    # split the message into a head (enumerated in one array) and a tail loop
    head = min(k, max(1, int(math.log(1 << 16, field.q))))
    combos = _all_combinations(field, M[:head])
    tail_rows = M[head:]
    for tail in product(range(field.q), repeat=k - head):
        offset = np.zeros(n, dtype=np.int64)
        for a, row in zip(tail, tail_rows):
            if a:
                offset = field.add_arrays(offset, field.mul_arrays(np.full(n, a), row))
        words = field.add_arrays(combos, offset[None, :])
        weights = np.count_nonzero(words, axis=1)
        if not any(tail):
            weights[0] = n + 1
        best = min(best, int(weights.min()))
    return best


# --------------------------------------------------------------------------
# state diagram


@dataclass(frozen=True)
class FreeDistance:
    distance: int
    length: int
    message: tuple[tuple[int, ...], ...]
    codeword_weight: int


class StateGraph:
    """State diagram of a generator matrix whose rows all have degree ``m``.

    A state holds the last ``m`` input blocks.  With ``Q = q^k`` block values
    and ``R = Q^(m-1)``, a state index is ``s = r * Q + o`` where ``o`` is the
    oldest block and ``r`` the remaining newer ones (newest most significant).
    Input ``u`` moves ``s`` to ``u * R + r``.  ``weights[u, r, o]`` is the
    Hamming weight of the output block on that edge.
    """

    def __init__(self, G: GeneratorMatrix, max_states: int = DEFAULT_STATE_CAP):
        degs = set(G.row_degrees)
        if len(degs) != 1 or min(degs) < 1:
            raise NotUniformRowDegrees(f"row degrees {G.row_degrees} are not all equal to some m >= 1")
        self.G = G
        self.field = G.field
        self.m = m = G.row_degrees[0]
        self.k, self.n = G.k, G.n
        self.Q = self.field.q ** self.k
        self.R = self.Q ** (m - 1)
        self.num_states = self.Q ** m
        if self.num_states > max_states:
            raise StateSpaceTooLarge(self.num_states, max_states)
        self.weights = self._edge_weights()

    def _edge_weights(self) -> np.ndarray:
        F, G, Q, m, n = self.field, self.G, self.Q, self.m, self.n
        contrib = [_all_combinations(F, G.layer(nu)) for nu in range(m + 1)]
        # state part: sum_{nu>=1} u_{t-nu} G_nu indexed by the state index
        state_out = contrib[m]
        for nu in range(m - 1, 0, -1):
            state_out = F.add_arrays(contrib[nu][:, None, :], state_out[None, :, :]).reshape(-1, n)
        dtype = np.uint8 if n < 256 else np.uint16
        W = np.empty((Q, self.num_states), dtype=dtype)
        chunk = max(1, (1 << 24) // (self.num_states * n))
        for lo in range(0, Q, chunk):
            hi = min(Q, lo + chunk)
            block = F.add_arrays(contrib[0][lo:hi, None, :], state_out[None, :, :])
            W[lo:hi] = np.count_nonzero(block, axis=2)
        return W.reshape(Q, self.R, Q)

    def successor(self, s: int, u: int) -> int:
        return u * self.R + s // self.Q

    def edge_weight(self, s: int, u: int) -> int:
        r, o = divmod(s, self.Q)
        return int(self.weights[u, r, o])

    # -- layered dynamic programme -------------------------------------

    def _step(self, best: np.ndarray):
        """One trellis section: returns the new per-state minima and, per
        new state, the oldest block of the best predecessor."""
        Q, R = self.Q, self.R
        prev = best.reshape(R, Q)
        new = np.empty((Q, R), dtype=np.int32)
        arg = np.empty((Q, R), dtype=np.min_scalar_type(Q - 1))
        chunk = max(1, (1 << 23) // (R * Q))
        for lo in range(0, Q, chunk):
            hi = min(Q, lo + chunk)
            cand = prev[None, :, :] + self.weights[lo:hi].astype(np.int32)
            a = cand.argmin(axis=2)
            arg[lo:hi] = a
            new[lo:hi] = np.take_along_axis(cand, a[..., None], axis=2)[..., 0]
        new = np.minimum(new, INF).reshape(-1)
        return new, arg.reshape(-1)

    def _initial(self) -> np.ndarray:
        best = np.full(self.num_states, INF, dtype=np.int32)
        best[0] = 0
        return best

    def row_distances(self, J: int) -> list[int | None]:
        """``[d_j for j in m+1..J]``: least weight of atomic paths of length ``j``."""
        best = self._initial()
        out = []
        for j in range(1, J + 1):
            best, _ = self._step(best)
            if j > self.m:
                d = int(best[0])
                out.append(d if d < INF else None)
            best[0] = INF
        return out

    def free_distance(self, max_length: int = 4096) -> FreeDistance:
        """Least weight of an atomic path, with a minimising message.

        Layers are added until every unfinished path already weighs at least
        the best completed one; weights are nonnegative so nothing shorter
        can improve on it afterwards.
        """
        best = self._initial()
        args = []
        found, found_len = int(INF), None
        for j in range(1, max_length + 1):
            best, arg = self._step(best)
            args.append(arg)
            if j > 1 and best[0] < found:
                found, found_len = int(best[0]), j
            best[0] = INF
            if found_len is not None and int(best.min()) >= found:
                break
        else:
            raise InternalInconsistency(
                f"distance search did not settle within {max_length} steps (catastrophic encoder?)"
            )
        message = self._trace(args[:found_len])
        weight = self.codeword_weight(message)
        if weight != found:
            raise InternalInconsistency(f"witness weight {weight} differs from search value {found}")
        return FreeDistance(found, found_len, message, weight)

    def _trace(self, args) -> tuple[tuple[int, ...], ...]:
        """Recover the inputs of the path ending in the zero state."""
        Q, R = self.Q, self.R
        s = 0
        blocks = []
        for arg in reversed(args):
            u, r = divmod(s, R)
            blocks.append(u)
            s = r * Q + int(arg[s])
        blocks.reverse()
        # the last m inputs are the zero blocks that flush the register
        info = blocks[: len(blocks) - self.m]
        return tuple(self._digits(u) for u in info)

    def _digits(self, u: int) -> tuple[int, ...]:
        q = self.field.q
        return tuple((u // q**i) % q for i in range(self.k))

    def codeword_weight(self, message) -> int:
        """Hamming weight of ``u(z) G(z)`` computed directly from the matrix."""
        F, G = self.field, self.G
        L = len(message) + self.m
        total = 0
        for t in range(L):
            out = np.zeros(self.n, dtype=np.int64)
            for nu in range(self.m + 1):
                if 0 <= t - nu < len(message):
                    u = np.asarray(message[t - nu], dtype=np.int64)
                    layer = G.layer(nu)
                    for i in range(self.k):
                        if u[i]:
                            out = F.add_arrays(out, F.mul_arrays(np.full(self.n, u[i]), layer[i]))
            total += int(np.count_nonzero(out))
        return total

    # -- uniform-cost search (cross-check) -----------------------------

    def free_distance_ucs(self) -> int:
        """Dijkstra-style search from all nonzero first inputs to state 0."""
        Q, R = self.Q, self.R
        heap = [(int(self.weights[u, 0, 0]), u * R) for u in range(1, Q)]
        heapq.heapify(heap)
        done = set()
        while heap:
            d, s = heapq.heappop(heap)
            if s == 0:
                return d
            if s in done:
                continue
            done.add(s)
            r, o = divmod(s, Q)
            for u in range(Q):
                s2 = u * R + r
                if s2 == 0 or s2 not in done:
                    heapq.heappush(heap, (d + int(self.weights[u, r, o]), s2))
        raise InternalInconsistency("zero state unreachable")  # pragma: no cover

    # -- counting ------------------------------------------------------

    def weight_enumerator(self, L_max: int, W_max: int) -> np.ndarray:
        """``table[L, w]`` = number of atomic codewords of length ``L`` and
        weight ``w`` for ``L <= L_max``, ``w <= W_max``."""
        Q, R, S = self.Q, self.R, self.num_states
        Wp = W_max + 1
        dtype = np.int64 if L_max * math.log2(Q) < 62 else object
        table = np.zeros((L_max + 1, Wp), dtype=dtype)
        cnt = np.zeros((S, Wp), dtype=dtype)
        cnt[0, 0] = 1
        levels = [int(e) for e in np.unique(self.weights)]
        masks = {e: (self.weights == e).astype(dtype) for e in levels}
        for L in range(1, L_max + 1):
            prev = cnt.reshape(R, Q, Wp)
            new = np.zeros((Q, R, Wp), dtype=dtype)
            for e in levels:
                if e >= Wp:
                    continue
                part = np.einsum("uro,row->urw", masks[e], prev)
                new[:, :, e:] += part[:, :, : Wp - e]
            new = new.reshape(S, Wp)
            if L > 1:
                table[L] = new[0]
            new[0] = 0
            cnt = new
        return table


# --------------------------------------------------------------------------
# module-level wrappers


def free_distance(G: GeneratorMatrix, max_states: int = DEFAULT_STATE_CAP) -> FreeDistance:
    return StateGraph(G, max_states).free_distance()


def extended_row_distances(G: GeneratorMatrix, J: int, max_states: int = DEFAULT_STATE_CAP):
    return StateGraph(G, max_states).row_distances(J)


def weight_enumerator_atomic(G: GeneratorMatrix, L_max: int, W_max: int,
                             max_states: int = DEFAULT_STATE_CAP) -> np.ndarray:
    return StateGraph(G, max_states).weight_enumerator(L_max, W_max)


def enumerator_rows(table: np.ndarray):
    """Nonzero ``(length, weight, count)`` triples in lexicographic order."""
    rows = []
    for L in range(table.shape[0]):
        for w in range(table.shape[1]):
            if table[L, w]:
                rows.append((L, w, int(table[L, w])))
    return rows


# --------------------------------------------------------------------------
# bounds and formulas


def griesmer_conv(n: int, k: int, m: int, q: int) -> int:
    """Largest ``d`` with ``sum_{l<k} ceil(d / q^l) <= n (m + 1)``."""
    budget = n * (m + 1)

    def need(d):
        return sum(-(-d // q**l) for l in range(k))

    d = 0
    while need(d + 1) <= budget:
        d += 1
    return d


def D_value(d_list, m: int, t: int) -> int:
    """Lower bound ``D(t)`` for atomic codewords of length ``t + m + 1``."""
    d = list(d_list)
    if t <= m:
        return 2 * sum(d[:t]) + (m - t + 1) * d[t]
    return 2 * sum(d[:m]) + (t - m + 1) * d[m]


@dataclass(frozen=True)
class DBounds:
    D: tuple[int, ...]
    minimum: int

    def row_bound(self, j: int, d_list, m: int) -> int:
        return D_value(d_list, m, j - m - 1)


def bch_D_bounds(d_list, m: int) -> DBounds:
    """``D(0..m)`` and the distance lower bound ``min D(t)``."""
    d = list(d_list)
    if len(d) < m + 1:
        raise LengthMismatch(f"need d_0..d_{m} ({m + 1} values), got {len(d)}")
    D = tuple(D_value(d, m, t) for t in range(m + 1))
    return DBounds(D, min(D))


@dataclass(frozen=True)
class RSFormula:
    n: int
    k: int
    m: int

    @property
    def distance(self) -> int:
        return (self.m + 1) * (self.n - self.k + 1)

    @property
    def slope(self) -> int:
        return self.n - self.k * (self.m + 1) + 1

    def row_bound(self, j: int) -> int:
        return self.distance + (j - 1 - self.m) * self.slope


def rs_distance_formula(n: int, k: int, m: int) -> RSFormula:
    return RSFormula(n, k, m)


@dataclass
class Bounds:
    values: dict = dc_field(default_factory=dict)
    inapplicable: dict = dc_field(default_factory=dict)

    def upper(self) -> dict:
        return {k: v for k, v in self.values.items() if k in ("singleton_k1", "p_estim", "griesmer_conv")}


def bounds(n: int, k: int, m: int, q: int, d_list=None, rs: bool | None = None) -> Bounds:
    """Named bound values; bounds whose hypotheses fail are listed with a reason.

    ``rs`` marks a Reed-Solomon configuration (default: ``n == q - 1``).
    """
    out = Bounds()
    out.values["griesmer_conv"] = griesmer_conv(n, k, m, q)
    if k == 1:
        out.values["singleton_k1"] = n * (m + 1)
    else:
        out.inapplicable["singleton_k1"] = "only for k = 1"
    if n != q - 1:
        out.inapplicable["p_estim"] = "needs n = q - 1"
    elif k < 2:
        out.inapplicable["p_estim"] = "needs k > 1"
    elif m > n // k - 1:
        out.inapplicable["p_estim"] = f"needs m <= n/k - 1 = {n // k - 1}"
    else:
        out.values["p_estim"] = (m + 1) * (n - k + 1) + (k - 2) * m
    rs = (n == q - 1) if rs is None else rs
    if rs and 1 <= k <= n // 2 and m <= n // k - 1:
        out.values["rs_formula"] = rs_distance_formula(n, k, m).distance
    else:
        out.inapplicable["rs_formula"] = "not a Reed-Solomon configuration with m <= b"
    if d_list is None:
        out.inapplicable["bch_D"] = "no d-list supplied"
    else:
        out.values["bch_D"] = bch_D_bounds(d_list, m).minimum
    return out


# --------------------------------------------------------------------------
# report


@dataclass
class CodeReport:
    n: int
    k: int
    delta: int | None
    memory: int
    forney_indices: tuple[int, ...]
    right_invertible: bool
    minimal: bool
    free_distance: FreeDistance | None = None
    row_distances: list = dc_field(default_factory=list)
    bounds: Bounds | None = None
    notes: list = dc_field(default_factory=list)

    def lines(self) -> list[str]:
        out = [
            f"n: {self.n}",
            f"k: {self.k}",
            f"delta: {self.delta if self.delta is not None else 'unsupported'}",
            f"memory: {self.memory}",
            "forney_indices: " + ",".join(str(v) for v in self.forney_indices),
            f"right_invertible: {str(self.right_invertible).lower()}",
            f"minimal: {str(self.minimal).lower()}",
        ]
        if self.free_distance is not None:
            fd = self.free_distance
            out.append(f"free_distance: {fd.distance}")
            out.append(f"free_distance_length: {fd.length}")
            out.append("free_distance_witness: " + " ".join(
                "(" + ",".join(str(c) for c in blk) + ")" for blk in fd.message))
        if self.row_distances:
            j0 = self.memory + 1
            out.append("row_distances: " + ",".join(
                f"{j0 + i}:{'inf' if d is None else d}" for i, d in enumerate(self.row_distances)))
        if self.bounds is not None:
            for name, val in self.bounds.values.items():
                out.append(f"{name}: {val}")
            for name, why in self.bounds.inapplicable.items():
                out.append(f"{name}: n/a ({why})")
        out.extend(f"note: {t}" for t in self.notes)
        return out

    def format(self) -> str:
        return "\n".join(self.lines())


def analyze(G: GeneratorMatrix, distance: bool = True, J: int | None = None,
            bound_args: dict | None = None, max_states: int = DEFAULT_STATE_CAP) -> CodeReport:
    """Run the structural checks, optionally the distance search and bounds."""
    mini = minimality(G)
    report = CodeReport(
        n=G.n,
        k=G.k,
        delta=mini.delta,
        memory=G.memory,
        forney_indices=mini.forney_indices,
        right_invertible=is_right_invertible(G),
        minimal=mini.minimal,
    )
    graph = None
    if distance or J:
        graph = StateGraph(G, max_states)
    if distance:
        report.free_distance = graph.free_distance()
    if J:
        report.row_distances = graph.row_distances(J)
    if bound_args is not None:
        report.bounds = bounds(**bound_args)
    return report
