"""Exact linear algebra over a prime field, and the category Mat(F_p).

A morphism ``m -> n`` is an ``n x m`` matrix acting on column vectors, so the
diagrammatic composite ``a . b`` ("a then b") is the product ``b @ a``.
Kernel bases are canonical: read off the reduced row-echelon form, one unit
vector per free column in increasing column order.
"""

from __future__ import annotations

import itertools
from operator import mul
from dataclasses import dataclass
from functools import lru_cache

from .fincat import CompositionError, NoFactorizationError


class LinearAlgebraError(ValueError):
    pass


@dataclass(frozen=True)
class MatFp:
    p: int
    rows: int
    cols: int
    entries: tuple[tuple[int, ...], ...]

    def __hash__(self):
        try:
            return self._hash
        except AttributeError:
            h = hash((self.p, self.rows, self.cols, self.entries))
            object.__setattr__(self, "_hash", h)
            return h

    def __post_init__(self):
        ents = tuple(tuple(int(x) for x in row) for row in self.entries)
        object.__setattr__(self, "entries", ents)
        if len(ents) != self.rows or any(len(r) != self.cols for r in ents):
            raise ValueError(f"entries do not have shape {self.rows}x{self.cols}")
        for row in ents:
            for x in row:
                if not 0 <= x < self.p:
                    raise ValueError(f"entry {x} is not reduced modulo {self.p}")

    @classmethod
    def _trusted(cls, p: int, rows: int, cols: int, entries) -> "MatFp":
        """Skip validation; for entries already reduced modulo ``p``."""
        out = object.__new__(cls)
        object.__setattr__(out, "p", p)
        object.__setattr__(out, "rows", rows)
        object.__setattr__(out, "cols", cols)
        object.__setattr__(out, "entries", entries)
        return out

    # as a morphism cols -> rows
    @property
    def dom(self) -> int:
        return self.cols

    @property
    def cod(self) -> int:
        return self.rows

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def __repr__(self):
        return f"MatFp(p={self.p}, {[list(r) for r in self.entries]}, {self.rows}x{self.cols})"

    def __matmul__(self, other: "MatFp") -> "MatFp":
        return matmul(self, other)

    def __add__(self, other: "MatFp") -> "MatFp":
        return add(self, other)

    def __sub__(self, other: "MatFp") -> "MatFp":
        return add(self, neg(other))

    def __neg__(self):
        return neg(self)

    @property
    def T(self) -> "MatFp":
        return transpose(self)

    def is_zero(self) -> bool:
        return all(x == 0 for row in self.entries for x in row)


def mat(p: int, rows, shape: tuple[int, int] | None = None) -> MatFp:
    """Build a matrix from nested lists, reducing entries modulo ``p``."""
    rows = [[int(x) % p for x in r] for r in rows]
    if shape is None:
        r = len(rows)
        c = len(rows[0]) if rows else 0
    else:
        r, c = shape
    return MatFp(p, r, c, tuple(tuple(row) for row in rows))


def zeros(p: int, r: int, c: int) -> MatFp:
    return MatFp._trusted(p, r, c, tuple((0,) * c for _ in range(r)))


def eye(p: int, n: int) -> MatFp:
    return MatFp._trusted(p, n, n, tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))


def matmul(a: MatFp, b: MatFp) -> MatFp:
    if a.p != b.p:
        raise CompositionError(f"matrices over different fields F_{a.p}, F_{b.p}")
    if a.cols != b.rows:
        raise CompositionError(
            f"cannot multiply {a.rows}x{a.cols} by {b.rows}x{b.cols}"
        )
    p = a.p
    bt = tuple(zip(*b.entries)) if b.rows else tuple(() for _ in range(b.cols))
    ents = tuple(tuple(sum(map(mul, row, col)) % p for col in bt) for row in a.entries)
    return MatFp._trusted(p, a.rows, b.cols, ents)


def compose(a: MatFp, b: MatFp) -> MatFp:
    """Diagrammatic composite: ``a`` then ``b``."""
    if a.rows != b.cols:
        raise CompositionError(
            f"cannot compose {a.cols}->{a.rows} then {b.cols}->{b.rows}"
        )
    return matmul(b, a)


def add(a: MatFp, b: MatFp) -> MatFp:
    if (a.p, a.rows, a.cols) != (b.p, b.rows, b.cols):
        raise ValueError("shape or field mismatch in addition")
    p = a.p
    return MatFp._trusted(
        p,
        a.rows,
        a.cols,
        tuple(
            tuple((x + y) % p for x, y in zip(r, s))
            for r, s in zip(a.entries, b.entries)
        ),
    )


def neg(a: MatFp) -> MatFp:
    p = a.p
    return MatFp._trusted(p, a.rows, a.cols, tuple(tuple((-x) % p for x in r) for r in a.entries))


def scale(k: int, a: MatFp) -> MatFp:
    p = a.p
    return MatFp._trusted(p, a.rows, a.cols, tuple(tuple((k * x) % p for x in r) for r in a.entries))


def transpose(a: MatFp) -> MatFp:
    ents = tuple(zip(*a.entries)) if a.rows else tuple(() for _ in range(a.cols))
    return MatFp._trusted(a.p, a.cols, a.rows, ents)


def hstack(*ms: MatFp) -> MatFp:
    """Blocks side by side: the copairing ``[m1; m2; ...]`` out of a direct sum."""
    rows = {m.rows for m in ms}
    if len(rows) != 1:
        raise ValueError(f"hstack of matrices with row counts {sorted(rows)}")
    (r,) = rows
    ents = tuple(tuple(x for m in ms for x in m.entries[i]) for i in range(r))
    return MatFp._trusted(ms[0].p, r, sum(m.cols for m in ms), ents)


def vstack(*ms: MatFp) -> MatFp:
    """Blocks on top of each other: the pairing ``<m1; m2; ...>`` into a direct sum."""
    cols = {m.cols for m in ms}
    if len(cols) != 1:
        raise ValueError(f"vstack of matrices with column counts {sorted(cols)}")
    (c,) = cols
    ents = tuple(row for m in ms for row in m.entries)
    return MatFp._trusted(ms[0].p, sum(m.rows for m in ms), c, ents)


def block_diag(*ms: MatFp) -> MatFp:
    p = ms[0].p
    rows = []
    total = sum(m.cols for m in ms)
    off = 0
    for m in ms:
        for row in m.entries:
            rows.append((0,) * off + row + (0,) * (total - off - m.cols))
        off += m.cols
    return MatFp._trusted(p, sum(m.rows for m in ms), total, tuple(rows))


def injection(p: int, dims: tuple[int, ...], k: int) -> MatFp:
    """Coproduct injection of summand ``k`` into the direct sum of ``dims``."""
    blocks = [eye(p, d) if j == k else zeros(p, d, dims[k]) for j, d in enumerate(dims)]
    return vstack(*blocks) if blocks else zeros(p, 0, 0)


def projection(p: int, dims: tuple[int, ...], k: int) -> MatFp:
    blocks = [eye(p, d) if j == k else zeros(p, dims[k], d) for j, d in enumerate(dims)]
    return hstack(*blocks)


def rref(m: MatFp) -> tuple[MatFp, tuple[int, ...]]:
    """Reduced row-echelon form and the (ascending) pivot columns."""
    p = m.p
    a = [list(r) for r in m.entries]
    pivots = []
    row = 0
    for col in range(m.cols):
        pivot = next((i for i in range(row, m.rows) if a[i][col] % p), None)
        if pivot is None:
            continue
        a[row], a[pivot] = a[pivot], a[row]
        inv = pow(a[row][col], -1, p)
        a[row] = [(x * inv) % p for x in a[row]]
        for i in range(m.rows):
            if i != row and a[i][col]:
                k = a[i][col]
                a[i] = [(x - k * y) % p for x, y in zip(a[i], a[row])]
        pivots.append(col)
        row += 1
        if row == m.rows:
            break
    return MatFp._trusted(p, m.rows, m.cols, tuple(tuple(r) for r in a)), tuple(pivots)


def rank(m: MatFp) -> int:
    return len(rref(m)[1])


@lru_cache(maxsize=None)
def kernel(m: MatFp) -> MatFp:
    """Canonical basis of the null space, as the columns of a ``cols x nullity`` matrix."""
    p = m.p
    r, pivots = rref(m)
    free = [j for j in range(m.cols) if j not in pivots]
    basis = []
    for j in free:
        v = [0] * m.cols
        v[j] = 1
        for i, pc in enumerate(pivots):
            v[pc] = (-r.entries[i][j]) % p
        basis.append(v)
    return MatFp._trusted(
        p, m.cols, len(free), tuple(tuple(v[i] for v in basis) for i in range(m.cols))
    )


def solve_vector(a: MatFp, b: tuple[int, ...]) -> tuple[int, ...] | None:
    """One solution ``x`` of ``a x = b`` (free variables set to zero), or None."""
    p = a.p
    aug = hstack(a, MatFp._trusted(p, a.rows, 1, tuple((x % p,) for x in b)))
    r, pivots = rref(aug)
    if a.cols in pivots:
        return None
    x = [0] * a.cols
    for i, pc in enumerate(pivots):
        x[pc] = r.entries[i][a.cols]
    return tuple(x)


@lru_cache(maxsize=4096)
def _row_reducer(a: MatFp):
    """``(E, pivots)`` with ``E @ a`` in reduced row-echelon form."""
    r, pivots = rref(hstack(a, eye(a.p, a.rows)))
    e = tuple(row[a.cols:] for row in r.entries)
    return e, pivots


def _solve_cached(a: MatFp, b: tuple[int, ...]) -> tuple[int, ...] | None:
    """As :func:`solve_vector`, reusing the row reduction of ``a``."""
    p = a.p
    e, pivots = _row_reducer(a)
    eb = [sum(map(mul, row, b)) % p for row in e]
    rank_a = sum(1 for pc in pivots if pc < a.cols)
    if any(eb[rank_a:]):
        return None
    x = [0] * a.cols
    for i in range(rank_a):
        x[pivots[i]] = eb[i]
    return tuple(x)


def solve(a: MatFp, b: MatFp) -> MatFp:
    """The unique ``x`` with ``a @ x = b``; raises unless ``a`` is injective and ``b`` in range."""
    if a.rows != b.rows:
        raise LinearAlgebraError("shape mismatch in solve")
    if rank(a) != a.cols:
        raise LinearAlgebraError("solution is not unique: matrix is not injective")
    cols = []
    for j in range(b.cols):
        x = _solve_cached(a, tuple(b.entries[i][j] for i in range(b.rows)))
        if x is None:
            raise LinearAlgebraError(f"column {j} of the right-hand side is not in the image")
        cols.append(x)
    return MatFp._trusted(a.p, a.cols, b.cols, tuple(tuple(c[i] for c in cols) for i in range(a.cols)))


def _flatten(ms) -> list[int]:
    return [x for m in ms for row in m.entries for x in row]


def _unflatten(p, shapes, v):
    out, k = [], 0
    for r, c in shapes:
        out.append(MatFp._trusted(p, r, c, tuple(tuple(v[k + i * c + j] for j in range(c)) for i in range(r))))
        k += r * c
    return tuple(out)


_SYSTEMS: dict = {}


def affine_solutions(p: int, shapes, residual, linear_key=None) -> list[tuple[MatFp, ...]]:
    """All tuples of matrices of the given shapes where ``residual`` vanishes.

    ``residual`` maps a tuple of matrices to a sequence of matrices and must be
    affine in its arguments.  Solutions are listed in lexicographic order of
    their coordinates over the canonical null-space basis.  Callers whose
    residuals share a linear part may pass a hashable ``linear_key`` naming
    it; the linear system is then built once per key.
    """
    shapes = tuple(shapes)
    n = sum(r * c for r, c in shapes)
    zero = _unflatten(p, shapes, [0] * n)
    b0 = _flatten(residual(zero))
    key = (p, shapes, linear_key) if linear_key is not None else None
    cached = _SYSTEMS.get(key) if key is not None else None
    if cached is None:
        columns = []
        for k in range(n):
            v = [0] * n
            v[k] = 1
            rk = _flatten(residual(_unflatten(p, shapes, v)))
            columns.append([(x - y) % p for x, y in zip(rk, b0)])
        m_rows = len(b0)
        system = MatFp._trusted(p, m_rows, n, tuple(tuple(columns[k][i] for k in range(n))
                                                    for i in range(m_rows)))
        cached = (system, kernel(system))
        if key is not None:
            if len(_SYSTEMS) > 1 << 16:
                _SYSTEMS.clear()
            _SYSTEMS[key] = cached
    system, null = cached
    particular = _solve_cached(system, tuple((-x) % p for x in b0))
    if particular is None:
        return []
    sols = []
    for coeffs in itertools.product(range(p), repeat=null.cols):
        v = [
            (particular[i] + sum(c * null.entries[i][j] for j, c in enumerate(coeffs))) % p
            for i in range(n)
        ]
        sols.append(_unflatten(p, shapes, v))
    return sols


@lru_cache(maxsize=None)
def enumerate_matrices(p: int, rows: int, cols: int) -> tuple[MatFp, ...]:
    """Every ``rows x cols`` matrix over F_p, lexicographic in row-major entries."""
    out = []
    for flat in itertools.product(range(p), repeat=rows * cols):
        out.append(
            MatFp._trusted(p, rows, cols, tuple(tuple(flat[i * cols:(i + 1) * cols]) for i in range(rows)))
        )
    return tuple(out)


@dataclass(frozen=True)
class MatPushout:
    f: MatFp
    g: MatFp
    apex: int
    leg_from_B: MatFp
    leg_from_C: MatFp


class Mat:
    """Finite-dimensional F_p vector spaces (by dimension) and matrices."""

    def __init__(self, p: int = 2):
        if p < 2 or any(p % q == 0 for q in range(2, int(p**0.5) + 1)):
            raise ValueError(f"{p} is not prime")
        self.p = p
        self.name = f"mat{p}"

    def __repr__(self):
        return f"Mat({self.p})"

    def __eq__(self, other):
        return isinstance(other, Mat) and other.p == self.p

    def __hash__(self):
        return hash(("Mat", self.p))

    def dom(self, f):
        return f.cols

    def cod(self, f):
        return f.rows

    def compose(self, f, g):
        return compose(f, g)

    def identity(self, n):
        return eye(self.p, n)

    def zero(self, m, n):
        """The zero morphism ``m -> n``."""
        return zeros(self.p, n, m)

    def hom(self, x, y):
        return enumerate_matrices(self.p, y, x)

    def objects(self, bound):
        return tuple(range(bound + 1))

    def initial(self):
        return 0

    def initial_arrow(self, x):
        return zeros(self.p, x, 0)

    def terminal(self):
        return 0

    def terminal_arrow(self, x):
        return zeros(self.p, 0, x)

    def pushout(self, f: MatFp, g: MatFp) -> MatPushout:
        """Cokernel of ``<f; -g>``: A -> B + C, with legs read off the canonical basis."""
        if f.cols != g.cols:
            raise CompositionError("span legs have different domains")
        m = vstack(f, neg(g))
        q = transpose(kernel(transpose(m)))
        nb = f.rows
        k = q.rows
        leg_b = MatFp._trusted(self.p, k, nb, tuple(r[:nb] for r in q.entries))
        leg_c = MatFp._trusted(self.p, k, g.rows, tuple(r[nb:] for r in q.entries))
        return MatPushout(f, g, k, leg_b, leg_c)

    def copair(self, po: MatPushout, x: MatFp, y: MatFp) -> MatFp:
        if compose(po.f, x) != compose(po.g, y):
            raise NoFactorizationError("outer square does not commute")
        q = hstack(po.leg_from_B, po.leg_from_C)
        z = hstack(x, y)
        return transpose(solve(transpose(q), transpose(z)))
