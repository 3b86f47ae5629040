"""Weighted quivers with frozen vertices and exchange-matrix mutation.

The exchange matrix is stored doubled (``eps2[i][j] == 2 * eps_ij``) so all
arithmetic stays in plain integers; half-integral entries are legal only
between two frozen vertices and that invariant is asserted on construction
and after every mutation.  Vertices carry structured string ids such as
``v:2:1`` (family tag plus indices) so named mutation sequences can address
them symbolically.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

logger = logging.getLogger(__name__)


class QuiverError(ValueError):
    pass


def vertex_label(vid: str) -> str:
    """Human display form of a structured id: 'v:2:1' -> 'v^2_1'."""
    parts = vid.split(":")
    if len(parts) == 3:
        return f"{parts[0]}^{parts[1]}_{parts[2]}"
    if len(parts) == 2:
        return f"{parts[0]}_{parts[1]}"
    return vid


@dataclass(frozen=True)
class WeightedQuiver:
    ids: Tuple[str, ...]
    frozen: frozenset
    eps2: Tuple[Tuple[int, ...], ...]
    weights: Tuple[int, ...]
    _index: Dict[str, int] = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        object.__setattr__(self, "_index", {v: i for i, v in enumerate(self.ids)})
        self._validate()

    def _validate(self) -> None:
        n = len(self.ids)
        if len(self._index) != n:
            raise QuiverError("duplicate vertex ids")
        if len(self.weights) != n or any(w <= 0 for w in self.weights):
            raise QuiverError("weights must be positive, one per vertex")
        if not self.frozen <= set(self.ids):
            raise QuiverError("frozen set contains unknown vertices")
        g = 0
        for w in self.weights:
            g = gcd(g, w)
        if n and g != 1:
            raise QuiverError(f"gcd of weights is {g}, expected 1")
        e, d = self.eps2, self.weights
        for i in range(n):
            if e[i][i] != 0:
                raise QuiverError(f"nonzero diagonal entry at {self.ids[i]}")
            for j in range(n):
                if e[i][j] * d[j] != -e[j][i] * d[i]:
                    raise QuiverError(
                        f"eps*diag(d) not skew-symmetric at ({self.ids[i]}, {self.ids[j]})"
                    )
                if e[i][j] % 2 != 0 and not (
                    self.ids[i] in self.frozen and self.ids[j] in self.frozen
                ):
                    raise QuiverError(
                        f"half-integral entry at ({self.ids[i]}, {self.ids[j]}) "
                        "outside the frozen-frozen block"
                    )

    # -- construction --------------------------------------------------------

    @classmethod
    def from_eps(
        cls,
        ids: Sequence[str],
        eps: Mapping[Tuple[str, str], Fraction],
        weights: Mapping[str, int],
        frozen: Iterable[str] = (),
    ) -> "WeightedQuiver":
        """Build from a sparse eps map; missing (i, j) pairs are zero."""
        idl = tuple(ids)
        pos = {v: i for i, v in enumerate(idl)}
        n = len(idl)
        m = [[0] * n for _ in range(n)]
        for (a, b), val in eps.items():
            v2 = Fraction(val) * 2
            if v2.denominator != 1:
                raise QuiverError(f"eps({a},{b}) = {val} is not half-integral")
            m[pos[a]][pos[b]] = int(v2)
        return cls(
            ids=idl,
            frozen=frozenset(frozen),
            eps2=tuple(tuple(row) for row in m),
            weights=tuple(weights[v] for v in idl),
        )

    # -- queries ---------------------------------------------------------------

    def index(self, vid: str) -> int:
        return self._index[vid]

    def n(self) -> int:
        return len(self.ids)

    def unfrozen(self) -> List[str]:
        return [v for v in self.ids if v not in self.frozen]

    def weight(self, vid: str) -> int:
        return self.weights[self._index[vid]]

    def eps(self, a: str, b: str) -> Fraction:
        return Fraction(self.eps2[self._index[a]][self._index[b]], 2)

    def eps_int(self, a: str, b: str) -> int:
        v = self.eps2[self._index[a]][self._index[b]]
        if v % 2 != 0:
            raise QuiverError(f"eps({a},{b}) is half-integral")
        return v // 2

    def sigma(self, a: str, b: str) -> Fraction:
        """Structure-matrix entry: signed arrow count from a to b."""
        i, j = self._index[a], self._index[b]
        return Fraction(self.eps2[i][j] * gcd(self.weights[i], self.weights[j]), 2 * self.weights[i])

    def arrow_pairs(self):
        """Yield (a, b, sigma_ab) for sigma_ab > 0."""
        for i, a in enumerate(self.ids):
            for j, b in enumerate(self.ids):
                if self.eps2[i][j] > 0:
                    yield a, b, self.sigma(a, b)

    def neighbors(self, vid: str) -> List[str]:
        i = self._index[vid]
        return [b for j, b in enumerate(self.ids) if self.eps2[i][j] != 0]

    # -- mutation ----------------------------------------------------------------

    def mutate(self, k: str) -> "WeightedQuiver":
        """Exchange-matrix mutation at an unfrozen vertex."""
        if k in self.frozen:
            raise QuiverError(f"mutation at frozen vertex {k}")
        ki = self._index[k]
        e = self.eps2
        n = len(self.ids)
        out = [[0] * n for _ in range(n)]
        for i in range(n):
            for j in range(n):
                if i == ki or j == ki:
                    out[i][j] = -e[i][j]
                else:
                    # (|eps_ik| eps_kj + eps_ik |eps_kj|) / 2, on doubled entries
                    num = abs(e[i][ki]) * e[ki][j] + e[i][ki] * abs(e[ki][j])
                    assert num % 4 == 0
                    out[i][j] = e[i][j] + num // 4
        return WeightedQuiver(self.ids, self.frozen, tuple(tuple(r) for r in out), self.weights)

    def permute(self, mapping: Mapping[str, str]) -> "WeightedQuiver":
        """Apply a seed permutation (bijection on ids preserving the frozen set)."""
        perm = dict(mapping)
        for v in self.ids:
            perm.setdefault(v, v)
        if sorted(perm.values()) != sorted(self.ids):
            raise QuiverError("permutation is not a bijection on the vertex set")
        for v in self.ids:
            if (v in self.frozen) != (perm[v] in self.frozen):
                raise QuiverError("permutation does not preserve the frozen set")
        inv = {b: a for a, b in perm.items()}
        n = len(self.ids)
        pos = self._index
        out = [[0] * n for _ in range(n)]
        w = [0] * n
        for i, v in enumerate(self.ids):
            src_i = pos[inv[v]]
            w[i] = self.weights[src_i]
            for j, u in enumerate(self.ids):
                out[i][j] = self.eps2[src_i][pos[inv[u]]]
        return WeightedQuiver(self.ids, self.frozen, tuple(tuple(r) for r in out), tuple(w))

    def relabel(self, mapping: Mapping[str, str]) -> "WeightedQuiver":
        """Rename vertices (new id set); order and matrix entries unchanged."""
        new_ids = tuple(mapping.get(v, v) for v in self.ids)
        new_frozen = frozenset(mapping.get(v, v) for v in self.frozen)
        return WeightedQuiver(new_ids, new_frozen, self.eps2, self.weights)

    def restrict(self, keep: Iterable[str]) -> "WeightedQuiver":
        """Full subquiver on the given vertices (weights gcd re-checked)."""
        keep_set = set(keep)
        idx = [i for i, v in enumerate(self.ids) if v in keep_set]
        ids = tuple(self.ids[i] for i in idx)
        eps2 = tuple(tuple(self.eps2[i][j] for j in idx) for i in idx)
        weights = tuple(self.weights[i] for i in idx)
        g = 0
        for w in weights:
            g = gcd(g, w)
        if g > 1:
            weights = tuple(w // g for w in weights)
        return WeightedQuiver(ids, frozenset(v for v in self.frozen if v in keep_set), eps2, weights)

    def forget_frozen(self) -> "WeightedQuiver":
        return self.restrict(self.unfrozen())

    def set_frozen(self, frozen: Iterable[str]) -> "WeightedQuiver":
        return WeightedQuiver(self.ids, frozenset(frozen), self.eps2, self.weights)

    # -- invariants -----------------------------------------------------------------

    def rank(self) -> int:
        """Rank of the exchange matrix over the rationals (exact)."""
        n = len(self.ids)
        m = [[Fraction(x) for x in row] for row in self.eps2]
        rank = 0
        row = 0
        for col in range(n):
            pivot = next((r for r in range(row, n) if m[r][col] != 0), None)
            if pivot is None:
                continue
            m[row], m[pivot] = m[pivot], m[row]
            inv = 1 / m[row][col]
            m[row] = [x * inv for x in m[row]]
            for r in range(n):
                if r != row and m[r][col] != 0:
                    f = m[r][col]
                    m[r] = [a - f * b for a, b in zip(m[r], m[row])]
            rank += 1
            row += 1
            if row == n:
                break
        return rank

    def same_labeled(self, other: "WeightedQuiver") -> bool:
        """Label-sensitive equality, independent of vertex storage order."""
        if set(self.ids) != set(other.ids) or self.frozen != other.frozen:
            return False
        for v in self.ids:
            if self.weight(v) != other.weight(v):
                return False
        for a in self.ids:
            for b in self.ids:
                ia, ib = self._index[a], self._index[b]
                if self.eps2[ia][ib] != other.eps2[other._index[a]][other._index[b]]:
                    return False
        return True

    def diff_labeled(self, other: "WeightedQuiver") -> List[str]:
        """Witness list of discrepancies for failing certificates."""
        out = []
        if set(self.ids) != set(other.ids):
            out.append(f"vertex sets differ: {sorted(set(self.ids) ^ set(other.ids))}")
            return out
        if self.frozen != other.frozen:
            out.append(f"frozen sets differ: {sorted(self.frozen ^ other.frozen)}")
        for a in self.ids:
            if self.weight(a) != other.weight(a):
                out.append(f"weight({a}): {self.weight(a)} vs {other.weight(a)}")
        for a in self.ids:
            for b in self.ids:
                x = self.eps2[self._index[a]][self._index[b]]
                y = other.eps2[other._index[a]][other._index[b]]
                if x != y:
                    out.append(f"2*eps({a},{b}): {x} vs {y}")
        return out

    # -- serialization ------------------------------------------------------------

    def to_json(self) -> dict:
        entries = []
        for i, a in enumerate(self.ids):
            for j, b in enumerate(self.ids):
                if i < j and (self.eps2[i][j] != 0 or self.eps2[j][i] != 0):
                    entries.append([a, b, self.eps2[i][j]])
        return {
            "vertices": [
                {"id": v, "weight": self.weights[i], "frozen": v in self.frozen}
                for i, v in enumerate(self.ids)
            ],
            "eps2": entries,
        }

    @classmethod
    def from_json(cls, data: dict) -> "WeightedQuiver":
        ids = tuple(v["id"] for v in data["vertices"])
        weights = {v["id"]: int(v["weight"]) for v in data["vertices"]}
        frozen = [v["id"] for v in data["vertices"] if v.get("frozen")]
        eps = {}
        for a, b, e2 in data["eps2"]:
            eps[(a, b)] = Fraction(int(e2), 2)
            # the opposite entry is determined by skew-symmetrizability
            back = Fraction(-int(e2) * weights[b], 2 * weights[a])
            eps[(b, a)] = back
        return cls.from_eps(ids, eps, weights, frozen)

    def to_dot(self) -> str:
        lines = ["digraph quiver {"]
        for i, v in enumerate(self.ids):
            shape = "box" if v in self.frozen else "ellipse"
            lines.append(
                f'  "{v}" [label="{vertex_label(v)} ({self.weights[i]})", shape={shape}];'
            )
        for a, b, s in self.arrow_pairs():
            style = "dashed" if s == Fraction(1, 2) else "solid"
            extra = f', label="{s}"' if s not in (Fraction(1, 2), 1) else ""
            lines.append(f'  "{a}" -> "{b}" [style={style}{extra}];')
        lines.append("}")
        return "\n".join(lines)


# -- structure matrix round trip -------------------------------------------------


def structure_matrix(q: WeightedQuiver) -> Dict[Tuple[str, str], Fraction]:
    return {
        (a, b): q.sigma(a, b)
        for a in q.ids
        for b in q.ids
        if q.eps2[q.index(a)][q.index(b)] != 0
    }


def from_structure(
    ids: Sequence[str],
    sigma: Mapping[Tuple[str, str], Fraction],
    weights: Mapping[str, int],
    frozen: Iterable[str] = (),
) -> WeightedQuiver:
    """Inverse of structure_matrix: eps_ij = sigma_ij * d_i / gcd(d_i, d_j)."""
    eps = {}
    for (a, b), s in sigma.items():
        val = Fraction(s) * weights[a] / gcd(weights[a], weights[b])
        sym = sigma.get((b, a))
        if sym is not None and Fraction(sym) != -Fraction(s) * 1:
            pass  # symmetry of sigma itself is not required, only of eps*d
        eps[(a, b)] = val
    q = WeightedQuiver.from_eps(ids, eps, weights, frozen)
    return q


def mutate_structure(
    ids: Sequence[str],
    sigma: Mapping[Tuple[str, str], Fraction],
    weights: Mapping[str, int],
    k: str,
) -> Dict[Tuple[str, str], Fraction]:
    """Structure-matrix mutation with the weight correction factor.

    sigma'_ij = sigma_ij + (|sigma_ik| sigma_kj + sigma_ik |sigma_kj|)/2 * alpha,
    alpha = d_k gcd(d_i,d_j) / (gcd(d_k,d_i) gcd(d_k,d_j)); rows/cols at k flip.
    """
    d = weights
    out: Dict[Tuple[str, str], Fraction] = {}
    for a in ids:
        for b in ids:
            if a == b:
                continue
            s = Fraction(sigma.get((a, b), 0))
            if a == k or b == k:
                val = -s
            else:
                sik = Fraction(sigma.get((a, k), 0))
                skj = Fraction(sigma.get((k, b), 0))
                alpha = Fraction(d[k] * gcd(d[a], d[b]), gcd(d[k], d[a]) * gcd(d[k], d[b]))
                val = s + (abs(sik) * skj + sik * abs(skj)) / 2 * alpha
            if val:
                out[(a, b)] = val
    return out


# -- gluing / amalgamation ----------------------------------------------------------


def disjoint_union(a: WeightedQuiver, b: WeightedQuiver, rename_b: Optional[Mapping[str, str]] = None) -> WeightedQuiver:
    if rename_b:
        b = b.relabel(rename_b)
    overlap = set(a.ids) & set(b.ids)
    if overlap:
        raise QuiverError(f"disjoint union with shared ids {sorted(overlap)}")
    ids = a.ids + b.ids
    na, nb = len(a.ids), len(b.ids)
    eps2 = [[0] * (na + nb) for _ in range(na + nb)]
    for i in range(na):
        for j in range(na):
            eps2[i][j] = a.eps2[i][j]
    for i in range(nb):
        for j in range(nb):
            eps2[na + i][na + j] = b.eps2[i][j]
    weights = a.weights + b.weights
    g = 0
    for w in weights:
        g = gcd(g, w)
    if g > 1:
        raise QuiverError("weights of the union have a common factor")
    return WeightedQuiver(ids, a.frozen | b.frozen, tuple(tuple(r) for r in eps2), weights)


def glue(
    q: WeightedQuiver,
    pairs: Sequence[Tuple[str, str]],
    defrost: bool = True,
    keep_frozen: Iterable[str] = (),
) -> WeightedQuiver:
    """Identify frozen vertex pairs (second joins first), summing exchange entries.

    With ``defrost`` set, any vertex whose incident entries are all integral
    after gluing becomes unfrozen (the minimal choice of remaining frozen
    set); ids listed in ``keep_frozen`` stay frozen regardless.
    """
    target: Dict[str, str] = {}
    for a, b in pairs:
        if a == b:
            raise QuiverError(f"cannot glue {a} to itself")
        if a not in q.frozen or b not in q.frozen:
            raise QuiverError(f"glue pair ({a}, {b}) must be frozen")
        if q.weight(a) != q.weight(b):
            raise QuiverError(f"weight mismatch on glue pair ({a}, {b})")
        if b in target or b in {x for x, _ in pairs if x != a}:
            pass
        target[b] = a
    if len(set(target)) != len(pairs):
        raise QuiverError("glue map is not injective")

    def resolve(v: str) -> str:
        seen = set()
        while v in target:
            if v in seen:
                raise QuiverError("cyclic glue map")
            seen.add(v)
            v = target[v]
        return v

    kept = [v for v in q.ids if v not in target]
    pos = {v: i for i, v in enumerate(kept)}
    n = len(kept)
    eps2 = [[0] * n for _ in range(n)]
    for i, a in enumerate(q.ids):
        ra = resolve(a)
        for j, b in enumerate(q.ids):
            rb = resolve(b)
            if ra == rb:
                continue
            eps2[pos[ra]][pos[rb]] += q.eps2[i][j]
    weights = tuple(q.weight(v) for v in kept)
    frozen = set(v for v in q.frozen if v in pos)
    out = WeightedQuiver(tuple(kept), frozenset(frozen), tuple(tuple(r) for r in eps2), weights)
    if defrost:
        keep = set(keep_frozen)
        thawed = set()
        for v in out.frozen:
            if v in keep:
                continue
            i = out.index(v)
            if all(x % 2 == 0 for x in out.eps2[i]) and all(
                out.eps2[j][i] % 2 == 0 for j in range(out.n())
            ):
                thawed.add(v)
        if thawed:
            out = out.set_frozen(out.frozen - thawed)
            out._validate()
    # any half-integral frozen-frozen entry is legal, but multiplicities other
    # than one half have no precedent here and are worth surfacing
    for a in out.frozen:
        for b in out.frozen:
            s = out.sigma(a, b)
            if s.denominator == 2 and abs(s) != Fraction(1, 2):
                logger.warning("unexpected half-integral multiplicity sigma(%s,%s)=%s", a, b, s)
    return out


def amalgamate(
    left: WeightedQuiver,
    right: WeightedQuiver,
    gluing: Mapping[str, str],
    rename_right: Optional[Mapping[str, str]] = None,
    defrost: bool = True,
    keep_frozen: Iterable[str] = (),
) -> WeightedQuiver:
    """Amalgamate two quivers along a bijection left-frozen -> right-frozen."""
    if rename_right:
        right = right.relabel(rename_right)
        gluing = {a: rename_right.get(b, b) for a, b in gluing.items()}
    union = disjoint_union(left, right)
    return glue(union, [(a, b) for a, b in gluing.items()], defrost=defrost, keep_frozen=keep_frozen)


# -- isomorphism search ----------------------------------------------------------------


def find_isomorphism(a: WeightedQuiver, b: WeightedQuiver) -> Optional[Dict[str, str]]:
    """Frozen- and weight-preserving quiver isomorphism, by backtracking.

    Intended for the small instances where an equivalence is stated up to
    relabeling; returns a vertex map or None.
    """
    if a.n() != b.n() or len(a.frozen) != len(b.frozen):
        return None

    def signature(q: WeightedQuiver, v: str):
        i = q.index(v)
        row = sorted(x for x in q.eps2[i] if x != 0)
        col = sorted(q.eps2[j][i] for j in range(q.n()) if q.eps2[j][i] != 0)
        return (q.weight(v), v in q.frozen, tuple(row), tuple(col))

    sig_a = {v: signature(a, v) for v in a.ids}
    sig_b = {v: signature(b, v) for v in b.ids}
    from collections import Counter

    if Counter(sig_a.values()) != Counter(sig_b.values()):
        return None
    order = sorted(a.ids, key=lambda v: (sum(1 for u in b.ids if sig_b[u] == sig_a[v]), v))
    mapping: Dict[str, str] = {}
    used = set()

    def ok(v: str, u: str) -> bool:
        if sig_a[v] != sig_b[u]:
            return False
        for w, x in mapping.items():
            if a.eps2[a.index(v)][a.index(w)] != b.eps2[b.index(u)][b.index(x)]:
                return False
            if a.eps2[a.index(w)][a.index(v)] != b.eps2[b.index(x)][b.index(u)]:
                return False
        return True

    def solve(k: int) -> bool:
        if k == len(order):
            return True
        v = order[k]
        for u in b.ids:
            if u in used or not ok(v, u):
                continue
            mapping[v] = u
            used.add(u)
            if solve(k + 1):
                return True
            del mapping[v]
            used.discard(u)
        return False

    return dict(mapping) if solve(0) else None
