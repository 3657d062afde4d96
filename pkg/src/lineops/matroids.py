"""Rank-3 matroids of labelled line arrangements and their isomorphism.

A labelled arrangement determines its matroid through the concurrency
classes of size >= 3 (the rank-2 flats); simple double points carry no
information.  Flats of a legal rank-3 matroid intersect pairwise in at
most one element.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import comb
from typing import Optional, Sequence, Union

from .arrangements import Arrangement, ArrangementError, _pair_index
from .projective import ProjLine


class MatroidError(ArrangementError):
    pass


@dataclass(frozen=True)
class Matroid3:
    """Ground set {0..m-1} with its rank-2 flats of size >= 3."""

    ground: int
    flats: tuple  # sorted tuple of sorted index tuples

    def __post_init__(self):
        for f in self.flats:
            if len(f) < 3:
                raise MatroidError("flats must have size >= 3")
            if any(not 0 <= i < self.ground for i in f):
                raise MatroidError("flat index out of range")
        for f, g in combinations(self.flats, 2):
            if len(set(f) & set(g)) > 1:
                raise MatroidError("two flats share more than one element")
        pair_slots = sum(comb(len(f), 2) for f in self.flats)
        if pair_slots > comb(self.ground, 2):
            raise MatroidError("flats cover more pairs than exist")

    @classmethod
    def from_flats(cls, ground: int, flats) -> "Matroid3":
        canon = tuple(sorted(tuple(sorted(set(f))) for f in flats))
        return cls(ground, canon)

    def non_bases(self):
        """All dependent triples (the 3-subsets of flats)."""
        out = set()
        for f in self.flats:
            out.update(combinations(f, 3))
        return sorted(out)

    def flat_sizes(self):
        return sorted(len(f) for f in self.flats)

    def __repr__(self):
        return f"Matroid3(ground={self.ground}, flats={len(self.flats)})"


def extract_matroid(lines: Union[Arrangement, Sequence[ProjLine]]) -> Matroid3:
    """Matroid of a labelled arrangement; indices follow the given order.

    Passing an Arrangement uses its canonical line order as the labelling.
    """
    if isinstance(lines, Arrangement):
        field = lines.field
        seq = list(lines.lines)
    else:
        seq = list(lines)
        if not seq:
            return Matroid3.from_flats(0, ())
        field = seq[0].field
    if len(set(seq)) != len(seq):
        raise MatroidError("labelled arrangement must have distinct lines")
    if len(seq) < 3:
        return Matroid3.from_flats(len(seq), ())
    idx = _pair_index(seq, field)
    flats = [tuple(sorted(s)) for s in idx.values() if len(s) >= 3]
    return Matroid3.from_flats(len(seq), flats)


def matroid_to_json(m: Matroid3) -> dict:
    return {"ground": m.ground, "flats": [list(f) for f in m.flats]}


def matroid_from_json(doc: dict) -> Matroid3:
    return Matroid3.from_flats(int(doc["ground"]), doc["flats"])


def matroid_isomorphic(a: Matroid3, b: Matroid3) -> Optional[tuple]:
    """A ground-set bijection carrying flats to flats, or None.

    Deterministic first witness: backtracking in ground order with
    flat-size-multiset pruning, then a full flat-set verification.
    """
    if a.ground != b.ground or a.flat_sizes() != b.flat_sizes():
        return None
    m = a.ground

    def pair_map(mat: Matroid3):
        pm = {}
        for fi, f in enumerate(mat.flats):
            for i, j in combinations(f, 2):
                pm[(i, j)] = fi
        return pm

    pa, pb = pair_map(a), pair_map(b)

    def inv(mat: Matroid3):
        sizes = [[] for _ in range(mat.ground)]
        for f in mat.flats:
            for i in f:
                sizes[i].append(len(f))
        return [tuple(sorted(s)) for s in sizes]

    ia, ib = inv(a), inv(b)
    cand = [[j for j in range(m) if ib[j] == ia[i]] for i in range(m)]
    if any(not c for c in cand):
        return None
    assign = [-1] * m
    used = [False] * m
    # flat correspondence forced by pairs must stay a function
    flat_image = {}

    def consistent(i, j):
        for i2 in range(i):
            j2 = assign[i2]
            key_a = (min(i, i2), max(i, i2))
            key_b = (min(j, j2), max(j, j2))
            fa = pa.get(key_a)
            fb = pb.get(key_b)
            if (fa is None) != (fb is None):
                return False
            if fa is not None:
                if len(a.flats[fa]) != len(b.flats[fb]):
                    return False
                if fa in flat_image and flat_image[fa] != fb:
                    return False
        return True

    def record(i, j):
        added = []
        for i2 in range(i):
            j2 = assign[i2]
            fa = pa.get((min(i, i2), max(i, i2)))
            if fa is not None and fa not in flat_image:
                fb = pb[(min(j, j2), max(j, j2))]
                flat_image[fa] = fb
                added.append(fa)
        return added

    def backtrack(i):
        if i == m:
            image = {tuple(sorted(assign[k] for k in f)) for f in a.flats}
            return image == set(b.flats)
        for j in cand[i]:
            if used[j] or not consistent(i, j):
                continue
            assign[i] = j
            used[j] = True
            added = record(i, j)
            if backtrack(i + 1):
                return True
            for fa in added:
                del flat_image[fa]
            used[j] = False
            assign[i] = -1
        return False

    if backtrack(0):
        return tuple(assign)
    return None


# ---------------------------------------------------------------------------
# the flashing incidence matrix

@dataclass(frozen=True)
class IncidenceMatrix:
    """0/1 matrix; rows are concurrency classes, columns are lines."""

    rows: tuple  # tuple of 0/1 tuples

    @property
    def shape(self):
        return (len(self.rows), len(self.rows[0]) if self.rows else 0)

    def as_matroid(self) -> Matroid3:
        ncols = self.shape[1]
        flats = []
        for r in self.rows:
            support = tuple(i for i, v in enumerate(r) if v)
            flats.append(support)
        return Matroid3.from_flats(ncols, flats)


def flashing_incidence(n: int) -> IncidenceMatrix:
    """The (n^2+1) x 3n incidence pattern behind the flashing families.

    Block rows C_k | I_n | G^(k-1) for k = 1..n (G the cyclic shift), and
    a final row marking the n-fold point on the middle block.
    """
    if n < 3:
        raise MatroidError("flashing incidence needs n >= 3")
    rows = []
    for k in range(n):          # block k+1
        for r in range(n):
            row = [0] * (3 * n)
            row[k] = 1                       # C_{k+1}: column k
            row[n + r] = 1                   # I_n
            row[2 * n + (r - k) % n] = 1     # G^k
            rows.append(tuple(row))
    last = [0] * (3 * n)
    for j in range(n, 2 * n):
        last[j] = 1
    rows.append(tuple(last))
    return IncidenceMatrix(tuple(rows))


def reye_matroid() -> Matroid3:
    """The classical (12_4, 16_3) point-line configuration as a matroid.

    Ground set: 8 cube vertices, the center, and the three axis directions
    (a 3-space model); flats are the 16 collinear triples.
    """
    pts = []
    for sx in (1, -1):
        for sy in (1, -1):
            for sz in (1, -1):
                pts.append((Fraction(sx), Fraction(sy), Fraction(sz), Fraction(1)))
    pts.append((Fraction(0), Fraction(0), Fraction(0), Fraction(1)))
    pts.append((Fraction(1), Fraction(0), Fraction(0), Fraction(0)))
    pts.append((Fraction(0), Fraction(1), Fraction(0), Fraction(0)))
    pts.append((Fraction(0), Fraction(0), Fraction(1), Fraction(0)))

    def rank(rows):
        mat = [list(r) for r in rows]
        rk = 0
        for col in range(4):
            piv = None
            for r in range(rk, len(mat)):
                if mat[r][col]:
                    piv = r
                    break
            if piv is None:
                continue
            mat[rk], mat[piv] = mat[piv], mat[rk]
            lead = mat[rk][col]
            mat[rk] = [v / lead for v in mat[rk]]
            for r in range(len(mat)):
                if r != rk and mat[r][col]:
                    f = mat[r][col]
                    mat[r] = [v - f * w for v, w in zip(mat[r], mat[rk])]
            rk += 1
        return rk

    collinear_pairs = {}
    for i, j in combinations(range(12), 2):
        collinear_pairs[(i, j)] = None
    flats = {}
    for i, j, k in combinations(range(12), 3):
        if rank([pts[i], pts[j], pts[k]]) <= 2:
            found = None
            for key, members in flats.items():
                if len({i, j, k} & members) >= 2:
                    found = key
                    break
            if found is not None:
                flats[found].update((i, j, k))
            else:
                flats[len(flats)] = {i, j, k}
    m = Matroid3.from_flats(12, [tuple(sorted(s)) for s in flats.values()])
    sizes = m.flat_sizes()
    if len(m.flats) != 16 or set(sizes) != {3}:
        raise MatroidError("Reye realization must be a (12_4, 16_3)")
    per_elem = [0] * 12
    for f in m.flats:
        for i in f:
            per_elem[i] += 1
    if set(per_elem) != {4}:
        raise MatroidError("Reye realization must be a (12_4, 16_3)")
    return m
