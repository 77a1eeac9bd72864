"""Independence complexes and the connectedness parameter eta.

eta is computed homologically: eta_H(J) = 1 + (lowest dimension with
nonzero reduced homology of Ind(J)), with eta_H = 0 for the vertexless
graph (reduced H_{-1} of the empty complex) and eta_H = infinity when the
complex is acyclic.  Homotopy connectedness bounds homological
connectedness from below, so eta_H >= eta and every lower bound on eta is
a lower bound on eta_H.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from math import gcd
from typing import Callable

from t3lab.errors import InputError, ResourceError
from t3lab.simplegraph import delete, explode, isolated_vertices, key, norm_pair

log = logging.getLogger(__name__)

DEFAULT_CAP = 8
DEFAULT_VERTEX_LIMIT = 20
MESHULAM_VERTEX_LIMIT = 14
MESHULAM_ADJACENCY_LIMIT = 24

COEFFS = ("q", "f2", "z")


@dataclass(frozen=True, order=False)
class EtaValue:
    """Extended natural number: ``finite`` with a value, ``infinite``, or
    ``at_least`` a cap (homology vanished as far as it was computed)."""

    kind: str
    value: int | None = None

    @classmethod
    def finite(cls, k: int) -> "EtaValue":
        return cls("finite", int(k))

    @classmethod
    def infinite(cls) -> "EtaValue":
        return cls("infinite")

    @classmethod
    def at_least(cls, cap: int) -> "EtaValue":
        return cls("at_least", int(cap))

    @property
    def is_finite(self) -> bool:
        return self.kind == "finite"

    @property
    def is_infinite(self) -> bool:
        return self.kind == "infinite"

    def plus(self, k: int) -> "EtaValue":
        if self.kind == "infinite":
            return self
        return EtaValue(self.kind, self.value + k)

    def lower(self):
        """Best known lower bound: an int, or None for infinity."""
        return None if self.is_infinite else self.value

    def to_json(self):
        if self.kind == "finite":
            return self.value
        if self.kind == "infinite":
            return "infinite"
        return {"at_least": self.value}

    @classmethod
    def from_json(cls, obj) -> "EtaValue":
        if obj == "infinite":
            return cls.infinite()
        if isinstance(obj, dict):
            return cls.at_least(obj["at_least"])
        return cls.finite(obj)

    def __str__(self):
        if self.kind == "finite":
            return str(self.value)
        if self.kind == "infinite":
            return "inf"
        return f">={self.value}"


def eta_le(a: EtaValue, b: EtaValue) -> bool:
    """``a <= b`` in the extended order; raises ResourceError when an
    ``at_least`` value leaves the answer open."""
    if b.is_infinite:
        return True
    if a.is_infinite:
        if b.is_finite:
            return False
        raise ResourceError(f"cannot decide inf <= {b}; raise the cap")
    if b.is_finite:
        if a.is_finite:
            return a.value <= b.value
        if a.value > b.value:
            return False
        raise ResourceError(f"cannot decide {a} <= {b}; raise the cap")
    # b is at_least
    if a.is_finite and a.value <= b.value:
        return True
    raise ResourceError(f"cannot decide {a} <= {b}; raise the cap")


def eta_ge_rational(a: EtaValue, x) -> bool:
    """``a >= x`` for a rational ``x``."""
    if a.is_infinite:
        return True
    if a.is_finite:
        return a.value >= x
    if a.value >= x:
        return True
    raise ResourceError(f"cannot decide {a} >= {x}; raise the cap")


def eta_min(a: EtaValue, b: EtaValue) -> EtaValue:
    return a if eta_le(a, b) else b


# -- faces -------------------------------------------------------------------


def independent_sets(j, max_size: int) -> list[list[tuple]]:
    """Faces of Ind(J) grouped by size: ``result[k]`` holds the independent
    sets of size ``k`` (as sorted vertex tuples), for k = 0..max_size.
    Trailing empty layers are dropped."""
    order = sorted(j.vertices)
    pos = {v: i for i, v in enumerate(order)}
    n = len(order)
    nbr = [0] * n
    for x, y in j.adjacencies:
        nbr[pos[x]] |= 1 << pos[y]
        nbr[pos[y]] |= 1 << pos[x]
    full = (1 << n) - 1
    layers: list[list[tuple]] = [[()]]
    frontier = [((), full)]
    while frontier and len(layers) <= max_size:
        nxt = []
        for face, allowed in frontier:
            bits = allowed
            while bits:
                low = bits & -bits
                i = low.bit_length() - 1
                bits ^= low
                higher = full & ~((low << 1) - 1)
                nxt.append((face + (i,), allowed & ~nbr[i] & higher))
        if not nxt:
            break
        layers.append([tuple(order[i] for i in f) for f, _ in nxt])
        frontier = nxt
    return layers


def independence_number(j) -> int:
    return len(independent_sets(j, len(j.vertices))) - 1


def _boundary_columns(faces_hi, faces_lo) -> list[dict]:
    """Sparse columns of the boundary map from faces of size k+1 to faces
    of size k (k >= 1).  Column entries are ``{row: ±1}``."""
    row = {f: i for i, f in enumerate(faces_lo)}
    cols = []
    for f in faces_hi:
        col = {}
        for i in range(len(f)):
            col[row[f[:i] + f[i + 1:]]] = -1 if i % 2 else 1
        cols.append(col)
    return cols


# -- ranks -------------------------------------------------------------------


def rank_f2(cols: list[dict]) -> int:
    pivots: dict[int, int] = {}
    for col in cols:
        v = 0
        for r in col:
            v |= 1 << r
        while v:
            top = v.bit_length() - 1
            if top in pivots:
                v ^= pivots[top]
            else:
                pivots[top] = v
                break
    return len(pivots)


def rank_q(cols: list[dict]) -> int:
    """Rank over the rationals by fraction-free elimination on sparse
    integer vectors, dividing out row content to keep entries small."""
    pivots: dict[int, dict] = {}
    for col in cols:
        v = {r: x for r, x in col.items() if x}
        while v:
            p = min(v)
            if p not in pivots:
                pivots[p] = v
                break
            w = pivots[p]
            a, b = v[p], w[p]
            g = gcd(a, b)
            a, b = a // g, b // g
            out = {}
            for r in set(v) | set(w):
                x = b * v.get(r, 0) - a * w.get(r, 0)
                if x:
                    out[r] = x
            content = 0
            for x in out.values():
                content = gcd(content, x)
            if content > 1:
                out = {r: x // content for r, x in out.items()}
            v = out
    return len(pivots)


def smith_diagonal(cols: list[dict], n_rows: int) -> list[int]:
    """Nonzero diagonal of an integer diagonalization P·A·Q (P, Q
    unimodular), normalized to the invariant-factor chain d1 | d2 | ...

    Pivoting on the entry of least absolute value; dense, for oracle-scale
    matrices.
    """
    a = [[0] * len(cols) for _ in range(n_rows)]
    for c, col in enumerate(cols):
        for r, x in col.items():
            a[r][c] = x
    rows, ncols = n_rows, len(cols)
    diag = []
    t = 0
    while t < min(rows, ncols):
        best = None
        for i in range(t, rows):
            ri = a[i]
            for j in range(t, ncols):
                x = ri[j]
                if x and (best is None or abs(x) < best[0]):
                    best = (abs(x), i, j)
                    if best[0] == 1:
                        break
            if best and best[0] == 1:
                break
        if best is None:
            break
        _, i, j = best
        a[t], a[i] = a[i], a[t]
        for row in a:
            row[t], row[j] = row[j], row[t]
        while True:
            p = a[t][t]
            done = True
            for i in range(t + 1, rows):
                if a[i][t]:
                    q = a[i][t] // p
                    if q:
                        ri, rt = a[i], a[t]
                        for k in range(t, ncols):
                            ri[k] -= q * rt[k]
                    if a[i][t]:
                        done = False
            for j in range(t + 1, ncols):
                if a[t][j]:
                    q = a[t][j] // p
                    if q:
                        for row in a[t:]:
                            row[j] -= q * row[t]
                    if a[t][j]:
                        done = False
            if done:
                break
            # move the smallest remaining entry of row/column t to the pivot
            cand = [(abs(a[i][t]), i, t) for i in range(t, rows) if a[i][t]]
            cand += [(abs(a[t][j]), t, j) for j in range(t, ncols) if a[t][j]]
            _, i, j = min(cand)
            a[t], a[i] = a[i], a[t]
            for row in a:
                row[t], row[j] = row[j], row[t]
        diag.append(abs(a[t][t]))
        t += 1
    # restore the divisibility chain: (x, y) -> (gcd, lcm)
    changed = True
    while changed:
        changed = False
        for i in range(len(diag)):
            for k in range(i + 1, len(diag)):
                x, y = diag[i], diag[k]
                g = gcd(x, y)
                if g != x:
                    diag[i], diag[k] = g, x * y // g
                    changed = True
    return diag


# -- homology ------------------------------------------------------------------


@dataclass
class HomologyProfile:
    """Reduced homology of Ind(J), dimensions -1..max_dim.

    ``betti[d + 1]`` is the rank in dimension d.  ``torsion`` maps a
    dimension to its nontrivial torsion coefficients (integer mode only).
    ``complete`` is True when every dimension of the complex was covered.
    """

    coeff: str
    top_dim: int
    betti: list[int]
    torsion: dict[int, list[int]] = field(default_factory=dict)
    complete: bool = True

    def nonzero_dims(self) -> list[int]:
        dims = [d - 1 for d, b in enumerate(self.betti) if b]
        dims += list(self.torsion)
        return sorted(set(dims))

    def to_json(self) -> dict:
        return {
            "coeff": self.coeff,
            "top_dim": self.top_dim,
            "reduced_betti": self.betti,
            "betti_start_dim": -1,
            "torsion": {str(d): t for d, t in sorted(self.torsion.items())},
            "complete": self.complete,
        }


def _check_coeff(coeff: str) -> None:
    if coeff not in COEFFS:
        raise InputError(f"coefficients must be one of {COEFFS}, got {coeff!r}")


class _Chains:
    """Lazy chain complex of Ind(J) up to faces of size ``max_size``."""

    def __init__(self, j, coeff: str, max_size: int):
        self.coeff = coeff
        self.layers = independent_sets(j, max_size)
        self._ranks: dict[int, int] = {}
        self._torsion: dict[int, list[int]] = {}

    def top_dim(self) -> int:
        return len(self.layers) - 2

    def n_faces(self, dim: int) -> int:
        size = dim + 1
        return len(self.layers[size]) if 0 <= size < len(self.layers) else 0

    def rank(self, dim: int) -> int:
        """Rank of the boundary map out of dimension ``dim`` (augmented at 0)."""
        if dim <= -1 or dim + 1 >= len(self.layers):
            return 0
        if dim == 0:
            return 1 if self.layers[1] else 0
        if dim not in self._ranks:
            cols = _boundary_columns(self.layers[dim + 1], self.layers[dim])
            if self.coeff == "f2":
                self._ranks[dim] = rank_f2(cols)
            elif self.coeff == "q":
                self._ranks[dim] = rank_q(cols)
            else:
                d = smith_diagonal(cols, len(self.layers[dim]))
                self._ranks[dim] = len(d)
                tors = [x for x in d if x > 1]
                if tors:
                    self._torsion[dim - 1] = tors
        return self._ranks[dim]

    def betti(self, dim: int) -> int:
        # dimension -1 has the single empty face
        return self.n_faces(dim) - self.rank(dim) - self.rank(dim + 1)

    def torsion(self, dim: int) -> list[int]:
        self.rank(dim + 1)
        return self._torsion.get(dim, [])


def homology(j, coeff: str = "q", max_dim: int | None = None) -> HomologyProfile:
    """Reduced homology of the independence complex, dimensions
    -1..max_dim (default: the whole complex)."""
    _check_coeff(coeff)
    size = len(j.vertices) if max_dim is None else max_dim + 2
    ch = _Chains(j, coeff, size)
    top = ch.top_dim()
    last = top if max_dim is None else min(top, max_dim)
    betti = [ch.betti(d) for d in range(-1, last + 1)]
    torsion = {}
    if coeff == "z":
        for d in range(0, last + 1):
            t = ch.torsion(d)
            if t:
                torsion[d] = t
    return HomologyProfile(coeff, top, betti, torsion, complete=last >= top)


def eta(
    j,
    coeff: str = "q",
    cap: int = DEFAULT_CAP,
    vertex_limit: int = DEFAULT_VERTEX_LIMIT,
) -> EtaValue:
    """Homological eta of ``j`` (anything with ``vertices``/``adjacencies``).

    Reduced homology is examined in dimensions up to ``cap - 2``; if it all
    vanishes but the complex reaches higher, the result is ``at_least(cap)``.
    """
    _check_coeff(coeff)
    if cap < 1:
        raise InputError("cap must be >= 1")
    if len(j.vertices) > vertex_limit:
        raise ResourceError(f"eta: {len(j.vertices)} vertices exceeds limit {vertex_limit}")
    if not j.vertices:
        return EtaValue.finite(0)
    if isolated_vertices(j):
        return EtaValue.infinite()
    ch = _Chains(j, coeff, cap)
    top = ch.top_dim()
    for d in range(0, min(top, cap - 2) + 1):
        b = ch.betti(d)
        tors = ch.torsion(d) if coeff == "z" else []
        if tors:
            log.warning("torsion %s in reduced H_%d of Ind(J); integer and rational eta may differ", tors, d)
        if b or tors:
            return EtaValue.finite(d + 1)
    if top <= cap - 2:
        return EtaValue.infinite()
    return EtaValue.at_least(cap)


class EtaEvaluator:
    """Memoizing eta callable; one instance per computation context."""

    def __init__(self, coeff: str = "q", cap: int = DEFAULT_CAP, vertex_limit: int = DEFAULT_VERTEX_LIMIT):
        _check_coeff(coeff)
        self.coeff = coeff
        self.cap = cap
        self.vertex_limit = vertex_limit
        self._memo: dict = {}
        self.calls = 0

    def __call__(self, j) -> EtaValue:
        k = key(j)
        if k not in self._memo:
            self.calls += 1
            self._memo[k] = eta(j, self.coeff, self.cap, self.vertex_limit)
        return self._memo[k]


EtaFn = Callable[[object], EtaValue]


def is_decouplable(j, adjacency, eta_fn: EtaFn | None = None) -> bool:
    """eta(J - e) <= eta(J)."""
    eta_fn = eta_fn or EtaEvaluator()
    return eta_le(eta_fn(delete(j, adjacency)), eta_fn(j))


def is_explodable(j, adjacency, eta_fn: EtaFn | None = None) -> bool:
    """eta(J ⊛ e) <= eta(J) - 1, i.e. eta(J ⊛ e) + 1 <= eta(J)."""
    eta_fn = eta_fn or EtaEvaluator()
    return eta_le(eta_fn(explode(j, adjacency)).plus(1), eta_fn(j))


def meshulam_game_lb(
    j,
    vertex_limit: int = MESHULAM_VERTEX_LIMIT,
    adjacency_limit: int = MESHULAM_ADJACENCY_LIMIT,
) -> EtaValue:
    """Lower bound on eta from applying
    eta(J) >= min(eta(J - e), eta(J ⊛ e) + 1) recursively, choosing the best
    adjacency at every step.  Exact for the returned kind: a finite value
    or infinite."""
    if len(j.vertices) > vertex_limit or len(j.adjacencies) > adjacency_limit:
        raise ResourceError(
            f"meshulam_game_lb: {len(j.vertices)} vertices / {len(j.adjacencies)} adjacencies "
            f"exceeds limits {vertex_limit}/{adjacency_limit}"
        )
    memo: dict = {}
    INF = float("inf")

    def rec(vertices: frozenset, adjs: frozenset):
        if not vertices:
            return 0
        state = (vertices, adjs)
        if state in memo:
            return memo[state]
        touched = {x for p in adjs for x in p}
        if vertices - touched:
            memo[state] = INF
            return INF
        best = 0
        for e in sorted(adjs):
            a, b = e
            gone = {a, b}
            for x, y in adjs:
                if x in (a, b):
                    gone.add(y)
                elif y in (a, b):
                    gone.add(x)
            exploded = rec(vertices - gone, frozenset(p for p in adjs if not gone.intersection(p)))
            if exploded + 1 <= best:
                continue
            deleted = rec(vertices, adjs - {e})
            best = max(best, min(deleted, exploded + 1))
            if best == INF:
                break
        memo[state] = best
        return best

    value = rec(frozenset(j.vertices), frozenset(norm_pair(*p) for p in j.adjacencies))
    return EtaValue.infinite() if value == float("inf") else EtaValue.finite(value)
