"""Hard-coded derived data for the reflection-style catalog entries.

The Klein and real-21 constants were computed once with the package's own
exact arithmetic (group orbits over cyclotomic fields, then a change of
frame into the smallest field carrying the arrangement) and are
re-validated against their expected singularity profiles by the catalog
on every build.  The 45-line entry regenerates its group orbit at build
time from exact generator matrices.
"""
from __future__ import annotations

from fractions import Fraction

from .fields import number_field, parse_scalar
from .projective import ProjLine

# 21 mirror lines of the order-168 symmetry group, over Q(sqrt-7): x = sqrt(-7).
_KLEIN_COLS = (
    ("0", "0", "1"),
    ("0", "1", "-1/16*x+5/16"),
    ("0", "1", "-1/8*x+5/8"),
    ("0", "1", "0"),
    ("1", "-1", "-1/8*x-3/8"),
    ("1", "-1", "0"),
    ("1", "-1", "1/8*x+3/8"),
    ("1", "-1/2*x-1/2", "-1/4*x+1/4"),
    ("1", "-1/2*x-1/2", "-1/8*x-3/8"),
    ("1", "-1/4*x+1/4", "-1/16*x+5/16"),
    ("1", "-1/4*x+1/4", "-1/4*x+1/4"),
    ("1", "0", "-1/16*x+5/16"),
    ("1", "0", "-1/8*x+5/8"),
    ("1", "0", "0"),
    ("1", "1", "-1/4*x+1/4"),
    ("1", "1", "-1/8*x+5/8"),
    ("1", "1", "1"),
    ("1", "1/2*x+1/2", "1"),
    ("1", "1/2*x+1/2", "1/8*x+3/8"),
    ("1", "1/4*x-1/4", "-1/16*x+5/16"),
    ("1", "1/4*x-1/4", "1/8*x+3/8"),
)


def klein_lines():
    field = number_field([7, 0, 1])
    lines = [ProjLine(tuple(parse_scalar(field, c) for c in col))
             for col in _KLEIN_COLS]
    return field, lines


# 21 real lines with t2 = 63, t3 = 7, t4 = 21: the astral heptagon model.
# Three rotation orbits of 7 lines each (two chord families of the regular
# heptagon and one inner family at a derived radius), written over the
# field of cos(pi/7): x = 2cos(pi/7), x^3 - x^2 - 2x + 1 = 0, with the
# y-axis rescaled by sin(pi/7) to keep every coefficient in that field.
_GR_MINPOLY = (1, -2, -1, 1)
_GR_COLS = (
    ("1", "2*x^2-3/2*x-4", "2*x^2-x-4"),
    ("1", "2*x^2-3/2*x-4", "-x^2+3"),
    ("1", "2*x^2-3/2*x-4", "-5*x^2+3*x+11"),
    ("1", "-1/2*x-1", "2*x^2-x-4"),
    ("1", "-1/2*x-1", "-1"),
    ("1", "-1/2*x-1", "x+1"),
    ("1", "x^2-3/2*x", "-1"),
    ("1", "x^2-3/2*x", "-x^2+2*x"),
    ("1", "x^2-3/2*x", "-x^2+3"),
    ("1", "0", "x^2-1/2*x-5/2"),
    ("1", "0", "1/2*x^2-1/2*x-1/2"),
    ("1", "0", "-1/2*x^2+1"),
    ("1", "-x^2+3/2*x", "-1"),
    ("1", "-x^2+3/2*x", "-x^2+2*x"),
    ("1", "-x^2+3/2*x", "-x^2+3"),
    ("1", "1/2*x+1", "2*x^2-x-4"),
    ("1", "1/2*x+1", "-1"),
    ("1", "1/2*x+1", "x+1"),
    ("1", "-2*x^2+3/2*x+4", "2*x^2-x-4"),
    ("1", "-2*x^2+3/2*x+4", "-x^2+3"),
    ("1", "-2*x^2+3/2*x+4", "-5*x^2+3*x+11"),
)


def grunbaum_rigby_lines():
    field = number_field(_GR_MINPOLY)
    lines = [ProjLine(tuple(parse_scalar(field, c) for c in col))
             for col in _GR_COLS]
    return field, lines


# The 45-line mirror arrangement of the order-360 collineation group,
# over Q(w, sqrt5) presented as Q[x]/(x^4 + 2x^3 - 7x^2 - 8x + 31) with
# x = w + sqrt5.  Generators: the coordinate 3-cycle, diag(1,-1,-1), the
# order-5 rotation about the axis (0, 1, phi), and the extension
# involution diag-block(w; antidiag(w^2, 1)) found by demanding that it
# preserve a member of the invariant sextic pencil.
_W_MINPOLY = (31, -8, -7, 2, 1)
_W_OMEGA = (Fraction(-14, 23), Fraction(-4, 23), Fraction(3, 23), Fraction(2, 23))
_W_SQRT5 = (Fraction(14, 23), Fraction(27, 23), Fraction(-3, 23), Fraction(-2, 23))


def _wiman_group_and_mirrors():
    field = number_field(list(_W_MINPOLY))
    w = field.from_rep(_W_OMEGA)
    s5 = field.from_rep(_W_SQRT5)
    one, zero = field.one, field.zero
    half = field.scalar(Fraction(1, 2))
    phi = (one + s5) * half

    def mmul(A, B):
        return tuple(tuple(sum((A[i][k] * B[k][j] for k in range(3)), zero)
                           for j in range(3)) for i in range(3))

    def mnorm(A):
        for row in A:
            for e in row:
                if not e.is_zero():
                    inv = e.inverse()
                    return tuple(tuple(x * inv for x in r) for r in A)
        raise AssertionError("zero matrix")

    def key(A):
        return tuple(e.rep for r in A for e in r)

    sigma = ((zero, one, zero), (zero, zero, one), (one, zero, zero))
    d = ((one, zero, zero), (zero, -one, zero), (zero, zero, -one))
    ccos = (s5 - one) * field.scalar(Fraction(1, 4))
    kfac = (field.scalar(3) - s5) * field.scalar(Fraction(1, 4))
    kvec = (zero, one, phi)
    crossk = ((zero, -phi, one), (phi, zero, zero), (-one, zero, zero))
    rot5 = tuple(tuple((ccos if i == j else zero) + half * crossk[i][j]
                       + kfac * kvec[i] * kvec[j] for j in range(3))
                 for i in range(3))
    t_ext = ((w, zero, zero), (zero, zero, w * w), (zero, one, zero))
    ident = mnorm(((one, zero, zero), (zero, one, zero), (zero, zero, one)))

    gens = [mnorm(sigma), mnorm(d), mnorm(rot5), mnorm(t_ext)]
    seen = {key(ident): ident}
    queue = [ident]
    while queue:
        cur = queue.pop()
        for g in gens:
            nxt = mnorm(mmul(cur, g))
            k = key(nxt)
            if k not in seen:
                if len(seen) > 400:
                    raise AssertionError("mirror group failed to close")
                seen[k] = nxt
                queue.append(nxt)
    if len(seen) != 360:
        raise AssertionError(f"expected order 360, got {len(seen)}")

    def det(A):
        return (A[0][0] * (A[1][1] * A[2][2] - A[1][2] * A[2][1])
                - A[0][1] * (A[1][0] * A[2][2] - A[1][2] * A[2][0])
                + A[0][2] * (A[1][0] * A[2][1] - A[1][1] * A[2][0]))

    mirrors = {}
    for A in seen.values():
        if key(A) == key(ident):
            continue
        sq = mmul(A, A)
        if not all(sq[i][j].is_zero() for i in range(3) for j in range(3)
                   if i != j):
            continue
        if not (sq[0][0] == sq[1][1] == sq[2][2]):
            continue
        lam = sq[0][0]
        root = det(A) * lam.inverse()
        if root * root != lam:
            raise AssertionError("square-root recipe failed")
        for sgn in (root, -root):
            M = [[A[i][j] - (sgn if i == j else zero) for j in range(3)]
                 for i in range(3)]
            rows = [r[:] for r in M]
            rank = 0
            for col in range(3):
                piv = None
                for rr in range(rank, 3):
                    if not rows[rr][col].is_zero():
                        piv = rr
                        break
                if piv is None:
                    continue
                rows[rank], rows[piv] = rows[piv], rows[rank]
                invp = rows[rank][col].inverse()
                rows[rank] = [v * invp for v in rows[rank]]
                for rr in range(3):
                    if rr != rank and not rows[rr][col].is_zero():
                        f = rows[rr][col]
                        rows[rr] = [v - f * u
                                    for v, u in zip(rows[rr], rows[rank])]
                rank += 1
            if rank == 1:
                coeff = next(r for r in M
                             if any(not e.is_zero() for e in r))
                ln = ProjLine(tuple(coeff))
                mirrors[ln.key()] = ln
                break
    if len(mirrors) != 45:
        raise AssertionError(f"expected 45 mirrors, got {len(mirrors)}")
    return field, list(mirrors.values())


_WIMAN_CACHE = None


def wiman_lines():
    global _WIMAN_CACHE
    if _WIMAN_CACHE is None:
        _WIMAN_CACHE = _wiman_group_and_mirrors()
    return _WIMAN_CACHE
