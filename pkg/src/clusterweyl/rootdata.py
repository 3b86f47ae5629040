"""Symmetrizable generalized Cartan matrices, Weyl words, and root data.

Generators are addressed by string labels; for the named classical types
the labels are "1".."n" with the vertex numbering of the fixed Dynkin
diagrams (weights d_s mark the long roots: C has d_1 = 2, B has d_s = 2 for
s >= 2, all others are 1).  Reducedness is decided with the root-positivity
criterion in exact integer arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd, inf
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

Word = Tuple[str, ...]


class RootDataError(ValueError):
    pass


@dataclass(frozen=True)
class CartanData:
    letters: Tuple[str, ...]
    cartan: Tuple[Tuple[int, ...], ...]  # C[s][t]
    symmetrizer: Tuple[int, ...]  # d_s, gcd 1
    family: str = "custom"  # A/B/C/D/affine/custom
    rank: int = 0
    _index: Dict[str, int] = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        object.__setattr__(self, "_index", {s: i for i, s in enumerate(self.letters)})
        n = len(self.letters)
        C, d = self.cartan, self.symmetrizer
        if len(d) != n or any(x <= 0 for x in d):
            raise RootDataError("symmetrizer must be positive, one entry per letter")
        g = 0
        for x in d:
            g = gcd(g, x)
        if n and g != 1:
            raise RootDataError("symmetrizer gcd must be 1")
        for i in range(n):
            if C[i][i] != 2:
                raise RootDataError("diagonal Cartan entries must be 2")
            for j in range(n):
                if i != j and C[i][j] > 0:
                    raise RootDataError("off-diagonal Cartan entries must be <= 0")
                if (C[i][j] == 0) != (C[j][i] == 0):
                    raise RootDataError("zero pattern must be symmetric")
                if d[i] * C[i][j] != d[j] * C[j][i]:
                    raise RootDataError("diag(d) * C must be symmetric")

    def index(self, s: str) -> int:
        return self._index[s]

    def c(self, s: str, t: str) -> int:
        return self.cartan[self._index[s]][self._index[t]]

    def d(self, s: str) -> int:
        return self.symmetrizer[self._index[s]]

    def is_finite_classical(self) -> bool:
        return self.family in ("A", "B", "C", "D")

    def to_json(self) -> dict:
        return {
            "letters": list(self.letters),
            "cartan": [list(r) for r in self.cartan],
            "symmetrizer": list(self.symmetrizer),
            "family": self.family,
            "rank": self.rank,
        }

    @classmethod
    def from_json(cls, data: dict) -> "CartanData":
        return cls(
            tuple(data["letters"]),
            tuple(tuple(r) for r in data["cartan"]),
            tuple(data["symmetrizer"]),
            data.get("family", "custom"),
            data.get("rank", len(data["letters"])),
        )


def cartan_matrix(family: str, n: int) -> CartanData:
    """Standard Cartan data for the classical families A/B/C/D.

    Vertex labels follow the fixed diagrams: the C-series has its weight-2
    vertex at 1, the B-series at 2..n, the D-series fork joins 1 and 2 to 3.
    """
    family = family.upper()
    letters = tuple(str(s) for s in range(1, n + 1))
    C = [[2 if i == j else 0 for j in range(n)] for i in range(n)]

    def link(i, j, cij=-1, cji=-1):
        C[i][j] = cij
        C[j][i] = cji

    if family == "A":
        if n < 1:
            raise RootDataError("A_n needs n >= 1")
        for i in range(n - 1):
            link(i, i + 1)
        d = [1] * n
    elif family == "C":
        if n < 2:
            raise RootDataError("C_n needs n >= 2")
        for i in range(n - 1):
            link(i, i + 1)
        C[1][0] = -2  # C_21
        d = [2] + [1] * (n - 1)
    elif family == "B":
        if n < 2:
            raise RootDataError("B_n needs n >= 2")
        for i in range(n - 1):
            link(i, i + 1)
        C[0][1] = -2  # C_12
        d = [1] + [2] * (n - 1)
    elif family == "D":
        if n < 3:
            raise RootDataError("D_n needs n >= 3")
        link(0, 2)
        link(1, 2)
        for i in range(2, n - 1):
            link(i, i + 1)
        d = [1] * n
    else:
        raise RootDataError(f"unsupported family {family!r}")
    return CartanData(letters, tuple(tuple(r) for r in C), tuple(d), family, n)


def cartan_g2() -> CartanData:
    return CartanData(("1", "2"), ((2, -3), (-1, 2)), (1, 3), "custom", 2)


def cartan_a1a1() -> CartanData:
    return CartanData(("1", "2"), ((2, 0), (0, 2)), (1, 1), "custom", 2)


def cartan_affine_a2() -> CartanData:
    letters = ("0", "1", "2")
    C = ((2, -1, -1), (-1, 2, -1), (-1, -1, 2))
    return CartanData(letters, C, (1, 1, 1), "affine", 3)


def coxeter_number(family: str, n: int) -> int:
    return {"A": n + 1, "B": 2 * n, "C": 2 * n, "D": 2 * n - 2}[family.upper()]


def positive_root_count(family: str, n: int) -> int:
    return {
        "A": n * (n + 1) // 2,
        "B": n * n,
        "C": n * n,
        "D": n * (n - 1),
    }[family.upper()]


def coxeter_matrix(cd: CartanData) -> Dict[Tuple[str, str], float]:
    """m_st from C_st*C_ts via the table 0->2, 1->3, 2->4, 3->6, >=4 -> inf."""
    table = {0: 2, 1: 3, 2: 4, 3: 6}
    out: Dict[Tuple[str, str], float] = {}
    for s in cd.letters:
        for t in cd.letters:
            if s == t:
                out[(s, t)] = 1
            else:
                prod = cd.c(s, t) * cd.c(t, s)
                out[(s, t)] = table.get(prod, inf)
    return out


# -- root lattice action -----------------------------------------------------


def reflect(cd: CartanData, s: str, v: Sequence[int]) -> Tuple[int, ...]:
    """r_s acting on a root-lattice vector: r_s(a_t) = a_t - C_st * a_s."""
    si = cd.index(s)
    coeff = sum(c * cd.cartan[si][t] for t, c in enumerate(v))
    return tuple(c - coeff if t == si else c for t, c in enumerate(v))


def simple_root(cd: CartanData, s: str) -> Tuple[int, ...]:
    return tuple(1 if t == s else 0 for t in cd.letters)


def apply_word(cd: CartanData, word: Sequence[str], v: Sequence[int]) -> Tuple[int, ...]:
    """Apply r_{s_1} ... r_{s_k} to v (rightmost reflection acts first)."""
    out = tuple(v)
    for s in reversed(list(word)):
        out = reflect(cd, s, out)
    return out


def root_sign(v: Sequence[int]) -> str:
    if all(x >= 0 for x in v):
        return "+"
    if all(x <= 0 for x in v):
        return "-"
    return "mixed"


def is_reduced(cd: CartanData, word: Sequence[str]) -> bool:
    """Positivity criterion: each prefix must keep the next simple root positive."""
    for j, s in enumerate(word):
        v = apply_word(cd, word[:j], simple_root(cd, s))
        sign = root_sign(v)
        if sign == "mixed":
            raise RootDataError(f"real root came out sign-incoherent: {v}")
        if sign == "-":
            return False
    return True


def has_left_descent(cd: CartanData, word: Sequence[str], t: str) -> bool:
    """Whether l(r_t * w) < l(w) for the element w of a reduced word."""
    v = simple_root(cd, t)
    for s in word:  # w^{-1} alpha_t, applying the leftmost letter first
        v = reflect(cd, s, v)
    return root_sign(v) == "-"


# -- word tables ---------------------------------------------------------------


def word_iQ(family: str, n: int) -> Word:
    """Reduced longest-element word compatible with the chained word quivers."""
    family = family.upper()
    if family == "A":
        out: List[str] = []
        for k in range(1, n + 1):
            out.extend(str(s) for s in range(k, 0, -1))
        return tuple(out)
    if family in ("B", "C"):
        return tuple(str(s) for _ in range(n) for s in range(1, n + 1))
    if family == "D":
        return tuple(str(s) for _ in range(n - 1) for s in range(1, n + 1))
    raise RootDataError(f"no longest-word table for family {family!r}")


def word_iQ_star(family: str, n: int) -> Word:
    if family.upper() != "A":
        raise RootDataError("the *-image word is used for the A series only")
    inv = dynkin_involution_map("A", n)
    return tuple(inv[s] for s in word_iQ("A", n))


def word_iD(family: str, n: int) -> Word:
    family = family.upper()
    if family == "A":
        return word_iQ("A", n)
    if family in ("B", "C"):
        out: List[str] = ["1"]
        for k in range(2, n + 1):
            out.extend(str(s) for s in range(k, 1, -1))
            out.append("1")
            out.extend(str(s) for s in range(2, k + 1))
        return tuple(out)
    if family == "D":
        out = ["1", "2"]
        for k in range(3, n + 1):
            out.extend(str(s) for s in range(k, 2, -1))
            out.extend(["1", "2"])
            out.extend(str(s) for s in range(3, k + 1))
        return tuple(out)
    raise RootDataError(f"no disk word table for family {family!r}")


def word_iD_bar(family: str, n: int) -> Word:
    return tuple(reversed(word_iD(family, n)))


def longest_word(family: str, n: int, flavor: str = "iQ") -> Word:
    builder = {
        "iQ": word_iQ,
        "iQ*": word_iQ_star,
        "iD": word_iD,
        "iD-bar": word_iD_bar,
    }.get(flavor)
    if builder is None:
        raise RootDataError(f"unknown word flavor {flavor!r}")
    if flavor == "iQ*":
        return builder("A", n)
    return builder(family, n)


def dynkin_involution_map(family: str, n: int) -> Dict[str, str]:
    """s -> s*: n+1-s for A, swap 1<->2 for odd D, identity otherwise."""
    family = family.upper()
    letters = [str(s) for s in range(1, n + 1)]
    if family == "A":
        return {s: str(n + 1 - int(s)) for s in letters}
    if family == "D" and n % 2 == 1:
        out = {s: s for s in letters}
        out["1"], out["2"] = "2", "1"
        return out
    return {s: s for s in letters}


def dynkin_involution(family: str, n: int, s: str) -> str:
    return dynkin_involution_map(family, n)[s]


# -- Coxeter quivers as orientation data ----------------------------------------
#
# An orientation assigns each Dynkin edge {s, t} a direction; the default
# orientations point every edge from the larger label to the smaller one,
# matching the fixed diagrams (for D both fork edges point out of vertex 3).


def default_orientation(cd: CartanData) -> Dict[Tuple[str, str], str]:
    """Map each unordered edge to the id of its target (arrows t -> s for t > s)."""
    out: Dict[Tuple[str, str], str] = {}
    for i, s in enumerate(cd.letters):
        for j, t in enumerate(cd.letters):
            if i < j and cd.cartan[i][j] != 0:
                out[(s, t)] = s
    return out


def is_sink(orientation: Mapping[Tuple[str, str], str], s: str) -> bool:
    for (a, b), head in orientation.items():
        if s in (a, b) and head != s:
            return False
    return True


def is_source(orientation: Mapping[Tuple[str, str], str], s: str) -> bool:
    for (a, b), head in orientation.items():
        if s in (a, b) and head == s:
            return False
    return True


def reflect_orientation(
    orientation: Mapping[Tuple[str, str], str], s: str
) -> Dict[Tuple[str, str], str]:
    """Reverse every arrow at a sink or source vertex."""
    if not (is_sink(orientation, s) or is_source(orientation, s)):
        raise RootDataError(f"reflection requires a sink or source, got {s}")
    out = dict(orientation)
    for (a, b), head in orientation.items():
        if s in (a, b):
            out[(a, b)] = a if head == b else b
    return out


def adapted_check(
    cd: CartanData, orientation: Mapping[Tuple[str, str], str], word: Sequence[str]
) -> bool:
    """Each letter must be a sink of the successively reflected orientation."""
    ori = dict(orientation)
    for s in word:
        if not is_sink(ori, s):
            return False
        ori = reflect_orientation(ori, s)
    return True


def adapted_longest_word(
    cd: CartanData, orientation: Mapping[Tuple[str, str], str], total: int
) -> Word:
    """Search a reduced word of the longest element adapted to the orientation.

    Depth-first over sinks, smallest label first; desk-scale types terminate
    immediately because sink sequences stay reduced until the longest element.
    """
    word: List[str] = []

    def rec(ori) -> bool:
        if len(word) == total:
            return True
        for s in sorted(ori_sinks(ori), key=int):
            word.append(s)
            if is_reduced(cd, word) and rec(reflect_orientation(ori, s)):
                return True
            word.pop()
        return False

    def ori_sinks(ori):
        return [s for s in cd.letters if is_sink(ori, s)]

    if not rec(dict(orientation)):
        raise RootDataError("no adapted reduced word found")
    return tuple(word)


# -- shifts for the longest-element seed isomorphism -----------------------------


def _dynkin_edges(cd: CartanData) -> List[Tuple[str, str]]:
    out = []
    for i, s in enumerate(cd.letters):
        for j, t in enumerate(cd.letters):
            if i < j and cd.cartan[i][j] != 0:
                out.append((s, t))
    return out


def _tree_path(cd: CartanData, a: str, b: str) -> List[str]:
    """Unique path between vertices in the (tree) Dynkin graph."""
    adj: Dict[str, List[str]] = {s: [] for s in cd.letters}
    for s, t in _dynkin_edges(cd):
        adj[s].append(t)
        adj[t].append(s)
    prev = {a: a}
    stack = [a]
    while stack:
        v = stack.pop()
        if v == b:
            break
        for u in adj[v]:
            if u not in prev:
                prev[u] = v
                stack.append(u)
    if b not in prev:
        raise RootDataError(f"no path between {a} and {b}")
    path = [b]
    while path[-1] != a:
        path.append(prev[path[-1]])
    return list(reversed(path))


def shift_ns(
    family: str,
    n: int,
    orientation: Mapping[Tuple[str, str], str],
) -> Dict[str, int]:
    """n_s = (h + a_s - a_{s*}) / 2, with a_s counting arrows toward s on the
    path from s to s* in the underlying Dynkin graph."""
    cd = cartan_matrix(family, n)
    h = coxeter_number(family, n)
    inv = dynkin_involution_map(family, n)

    def arrows_toward(s: str) -> int:
        target = inv[s]
        if target == s:
            return 0
        path = _tree_path(cd, s, target)
        count = 0
        for a, b in zip(path[1:], path[:-1]):
            # edge between a (farther) and b (nearer to s); arrow head toward s
            key = (a, b) if (a, b) in orientation else (b, a)
            if orientation[key] == b:
                count += 1
        return count

    a = {s: arrows_toward(s) for s in cd.letters}
    out = {}
    for s in cd.letters:
        num = h + a[s] - a[inv[s]]
        if num % 2 != 0:
            raise RootDataError(f"shift for {s} is not integral: {num}/2")
        out[s] = num // 2
    return out
