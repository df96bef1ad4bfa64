"""Exact linear algebra over Z and finitely generated abelian groups.

All arithmetic uses plain Python integers, so Smith normal form
coefficient growth is harmless.  Groups are presented as lists of cyclic
orders d_i >= 0 where 0 stands for an infinite cyclic factor; elements
are integer vectors with coordinate i taken mod d_i.

>>> D, U, V = smith_triple([[2, 4], [6, 8]])
>>> D.diagonal()
[2, 4]
>>> FinAbGroup([2, 3]).invariants()
(6,)
>>> complex_homology(
...     GroupHom(FinAbGroup([0]), FinAbGroup([0, 0]), [[2], [0]]),
...     GroupHom(FinAbGroup([0, 0]), FinAbGroup([0]), [[0, 1]]),
... ).group.invariants()
(2,)
"""

from math import gcd

from .errors import NotAComplex


class IntMatrix:
    """Dense integer matrix with explicit shape (rows may be empty)."""

    __slots__ = ("m", "n", "a")

    def __init__(self, m, n, rows=None):
        self.m = m
        self.n = n
        if rows is None:
            self.a = [[0] * n for _ in range(m)]
        else:
            assert len(rows) == m and all(len(r) == n for r in rows)
            self.a = [list(r) for r in rows]

    @classmethod
    def identity(cls, n):
        M = cls(n, n)
        for i in range(n):
            M.a[i][i] = 1
        return M

    @classmethod
    def from_rows(cls, rows, n=None):
        m = len(rows)
        if n is None:
            if m == 0:
                raise ValueError("need explicit column count for empty matrix")
            n = len(rows[0])
        return cls(m, n, rows)

    @classmethod
    def from_columns(cls, cols, m=None):
        k = len(cols)
        if m is None:
            if k == 0:
                raise ValueError("need explicit row count for empty matrix")
            m = len(cols[0])
        M = cls(m, k)
        for j, c in enumerate(cols):
            assert len(c) == m
            for i in range(m):
                M.a[i][j] = c[i]
        return M

    def copy(self):
        return IntMatrix(self.m, self.n, self.a)

    def col(self, j):
        return [self.a[i][j] for i in range(self.m)]

    def columns(self):
        return [self.col(j) for j in range(self.n)]

    def mul(self, other):
        assert self.n == other.m
        out = IntMatrix(self.m, other.n)
        oa = other.a
        for i in range(self.m):
            row = self.a[i]
            orow = out.a[i]
            for k in range(self.n):
                c = row[k]
                if c:
                    brow = oa[k]
                    for j in range(other.n):
                        orow[j] += c * brow[j]
        return out

    def vec(self, v):
        assert len(v) == self.n
        return [sum(self.a[i][j] * v[j] for j in range(self.n)) for i in range(self.m)]

    def transpose(self):
        T = IntMatrix(self.n, self.m)
        for i in range(self.m):
            for j in range(self.n):
                T.a[j][i] = self.a[i][j]
        return T

    def is_zero(self):
        return all(all(x == 0 for x in row) for row in self.a)

    def diagonal(self):
        return [self.a[i][i] for i in range(min(self.m, self.n))]

    def __eq__(self, other):
        return (
            isinstance(other, IntMatrix)
            and self.m == other.m
            and self.n == other.n
            and self.a == other.a
        )

    def __hash__(self):
        return hash((self.m, self.n, tuple(tuple(r) for r in self.a)))

    def __repr__(self):
        return f"IntMatrix({self.m}x{self.n}, {self.a})"


def smith_normal_form(M):
    """Return (D, U, V, Uinv, Vinv) with U*M*V = D in Smith normal form.

    D is diagonal with d_1 | d_2 | ..., all d_i >= 0; U, V are unimodular
    and their tracked inverses satisfy U*Uinv = I, V*Vinv = I exactly.
    """
    m, n = M.m, M.n
    D = M.copy()
    U = IntMatrix.identity(m)
    Uinv = IntMatrix.identity(m)
    V = IntMatrix.identity(n)
    Vinv = IntMatrix.identity(n)
    a = D.a

    def swap_rows(i, j):
        if i == j:
            return
        a[i], a[j] = a[j], a[i]
        U.a[i], U.a[j] = U.a[j], U.a[i]
        for r in Uinv.a:  # column swap on the inverse
            r[i], r[j] = r[j], r[i]

    def swap_cols(i, j):
        if i == j:
            return
        for r in a:
            r[i], r[j] = r[j], r[i]
        for r in V.a:
            r[i], r[j] = r[j], r[i]
        Vinv.a[i], Vinv.a[j] = Vinv.a[j], Vinv.a[i]

    def add_row(dst, src, c):
        # row_dst += c * row_src
        if c == 0:
            return
        ad, asr = a[dst], a[src]
        for j in range(n):
            ad[j] += c * asr[j]
        ud, usr = U.a[dst], U.a[src]
        for j in range(m):
            ud[j] += c * usr[j]
        for r in Uinv.a:  # inverse gets the opposite column op
            r[src] -= c * r[dst]

    def add_col(dst, src, c):
        if c == 0:
            return
        for r in a:
            r[dst] += c * r[src]
        for r in V.a:
            r[dst] += c * r[src]
        vd, vsr = Vinv.a[dst], Vinv.a[src]
        for j in range(n):
            vsr[j] -= c * vd[j]

    def negate_row(i):
        a[i] = [-x for x in a[i]]
        U.a[i] = [-x for x in U.a[i]]
        for r in Uinv.a:
            r[i] = -r[i]

    def find_pivot(t):
        piv = None
        best = None
        for i in range(t, m):
            row = a[i]
            for j in range(t, n):
                x = row[j]
                if x and (best is None or abs(x) < best):
                    best = abs(x)
                    piv = (i, j)
                    if best == 1:
                        return piv
        return piv

    t = 0
    limit = min(m, n)
    while t < limit:
        piv = find_pivot(t)
        if piv is None:
            break
        swap_rows(t, piv[0])
        swap_cols(t, piv[1])
        if a[t][t] < 0:
            negate_row(t)
        # shrink the pivot: any remainder in its row or column becomes the
        # new (strictly smaller) pivot; clear exactly only once everything
        # is divisible.  Re-selecting after every promotion keeps the
        # coefficient growth tame.
        while True:
            p = a[t][t]
            promoted = False
            for i in range(t + 1, m):
                x = a[i][t]
                if x % p:
                    add_row(i, t, -(x // p))
                    swap_rows(t, i)
                    if a[t][t] < 0:
                        negate_row(t)
                    promoted = True
                    break
            if promoted:
                continue
            for j in range(t + 1, n):
                x = a[t][j]
                if x % p:
                    add_col(j, t, -(x // p))
                    swap_cols(t, j)
                    if a[t][t] < 0:
                        negate_row(t)
                    promoted = True
                    break
            if promoted:
                continue
            for i in range(t + 1, m):
                if a[i][t]:
                    add_row(i, t, -(a[i][t] // p))
            for j in range(t + 1, n):
                if a[t][j]:
                    add_col(j, t, -(a[t][j] // p))
            break
        t += 1

    def row_transform2(i, j, p, q, r, s):
        # [row_i; row_j] <- [[p, q], [r, s]] @ [row_i; row_j], det must be +-1
        det = p * s - q * r
        assert det in (1, -1)
        for Mx in (a, U.a):
            ri, rj = Mx[i], Mx[j]
            for c in range(len(ri)):
                x, y = ri[c], rj[c]
                ri[c] = p * x + q * y
                rj[c] = r * x + s * y
        # Uinv <- Uinv @ T^(-1); T^(-1) = det * [[s, -q], [-r, p]]
        ip, iq, ir, is_ = det * s, det * -q, det * -r, det * p
        for row in Uinv.a:
            x, y = row[i], row[j]
            row[i] = x * ip + y * ir
            row[j] = x * iq + y * is_

    def col_transform2(i, j, p, q, r, s):
        # [col_i, col_j] <- [col_i, col_j] @ [[p, r], [q, s]]... using same
        # convention as rows: new_col_i = p*col_i + q*col_j, etc.
        det = p * s - q * r
        assert det in (1, -1)
        for Mx in (a, V.a):
            for row in Mx:
                x, y = row[i], row[j]
                row[i] = p * x + q * y
                row[j] = r * x + s * y
        ip, iq, ir, is_ = det * s, det * -q, det * -r, det * p
        ri, rj = Vinv.a[i], Vinv.a[j]
        for c in range(len(ri)):
            x, y = ri[c], rj[c]
            ri[c] = x * ip + y * ir
            rj[c] = x * iq + y * is_

    # divisibility fix-up on the diagonal: replace (d_i, d_j) by (gcd, lcm)
    r = t
    changed = True
    while changed:
        changed = False
        for i in range(r - 1):
            di, dj = a[i][i], a[i + 1][i + 1]
            if di and dj % di != 0:
                changed = True
                g, x, y = _xgcd(di, dj)
                # [[x, y], [-dj//g, di//g]] @ diag @ [[1, -y*dj//g], [1, x*di//g]] = diag(g, lcm)
                row_transform2(i, i + 1, x, y, -dj // g, di // g)
                col_transform2(i, i + 1, 1, 1, -y * dj // g, x * di // g)
                assert a[i][i] == g and a[i][i + 1] == 0 and a[i + 1][i] == 0
    return D, U, V, Uinv, Vinv


def _xgcd(m, b):
    x, next_x = 1, 0
    y, next_y = 0, 1
    g, next_g = m, b
    while next_g:
        q = g // next_g
        x, next_x = next_x, x - q * next_x
        y, next_y = next_y, y - q * next_y
        g, next_g = next_g, g - q * next_g
    if g < 0:
        x, y, g = -x, -y, -g
    return g, x, y


def smith_triple(rows):
    """Convenience wrapper taking a list of rows, returning (D, U, V).

    >>> D, U, V = smith_triple([[1, 0], [0, 1]])
    >>> D.diagonal()
    [1, 1]
    >>> smith_triple([[0, 0], [0, 0]])[0].diagonal()
    [0, 0]
    """
    M = IntMatrix.from_rows(rows) if rows else IntMatrix(0, 0)
    D, U, V, _, _ = smith_normal_form(M)
    return D, U, V


def solve_exact(M, b):
    """One integer solution of M x = b, or None."""
    D, U, V, _, _ = smith_normal_form(M)
    ub = U.vec(b)
    y = [0] * M.n
    for i in range(M.m):
        d = D.a[i][i] if i < M.n else 0
        if d:
            if ub[i] % d != 0:
                return None
            y[i] = ub[i] // d
        elif ub[i] != 0:
            return None
    return V.vec(y)


def kernel_columns(M):
    """Basis (list of columns) of the integer kernel lattice of M."""
    D, U, V, _, _ = smith_normal_form(M)
    rank = sum(1 for i in range(min(M.m, M.n)) if D.a[i][i])
    return [V.col(j) for j in range(rank, M.n)]


def _relation_columns(factors):
    cols = []
    k = len(factors)
    for i, d in enumerate(factors):
        if d:
            c = [0] * k
            c[i] = d
            cols.append(c)
    return cols


def solve_mod(M, b, target_factors):
    """Solve M x = b componentwise mod target_factors (0 = exact)."""
    rel = _relation_columns(target_factors)
    aug = IntMatrix(M.m, M.n + len(rel))
    for i in range(M.m):
        aug.a[i][: M.n] = M.a[i]
        for j, c in enumerate(rel):
            aug.a[i][M.n + j] = c[i]
    x = solve_exact(aug, b)
    if x is None:
        return None
    return x[: M.n]


def kernel_mod(M, target_factors):
    """Basis of {x : M x = 0 mod target_factors} as a lattice in Z^n."""
    rel = _relation_columns(target_factors)
    aug = IntMatrix(M.m, M.n + len(rel))
    for i in range(M.m):
        aug.a[i][: M.n] = M.a[i]
        for j, c in enumerate(rel):
            aug.a[i][M.n + j] = c[i]
    ker = kernel_columns(aug)
    projected = [c[: M.n] for c in ker]
    return lattice_basis(projected, M.n)


def lattice_basis(cols, dim):
    """Independent basis of the lattice spanned by the given columns."""
    if not cols:
        return []
    A = IntMatrix.from_columns(cols, dim)
    D, U, V, Uinv, Vinv = smith_normal_form(A)
    basis = []
    for i in range(min(dim, A.n)):
        d = D.a[i][i]
        if d:
            col = [d * Uinv.a[r][i] for r in range(dim)]
            lead = next((x for x in col if x), 0)
            if lead < 0:
                col = [-x for x in col]
            basis.append(col)
    return basis


class FinAbGroup:
    """Finitely generated abelian group Z^k / <d_i e_i>.

    ``factors`` may be any nonnegative integers; canonical answers use
    the invariant-factor normal form (each nonzero d_i divides the next,
    finite factors first, no 1s) available via :meth:`invariants`.

    >>> FinAbGroup([2, 4]).invariants()
    (2, 4)
    >>> FinAbGroup([4, 6]).invariants()
    (2, 12)
    >>> FinAbGroup([1]).invariants()
    ()
    >>> str(FinAbGroup([2, 0]))
    'C2 x Z'
    """

    __slots__ = ("factors",)

    def __init__(self, factors=()):
        fs = tuple(int(d) for d in factors)
        if any(d < 0 for d in fs):
            raise ValueError("factors must be nonnegative")
        self.factors = fs

    @property
    def rank(self):
        return len(self.factors)

    def order(self):
        """Number of elements, or None if infinite."""
        total = 1
        for d in self.factors:
            if d == 0:
                return None
            total *= d
        return total

    def is_trivial(self):
        return self.invariants() == ()

    def zero(self):
        return (0,) * self.rank

    def reduce(self, v):
        assert len(v) == self.rank
        return tuple(x % d if d else x for x, d in zip(v, self.factors))

    def add(self, u, v):
        return self.reduce([a + b for a, b in zip(u, v)])

    def neg(self, u):
        return self.reduce([-a for a in u])

    def scale(self, c, u):
        return self.reduce([c * a for a in u])

    def elements(self):
        """All elements (finite groups only)."""
        if self.order() is None:
            raise ValueError("infinite group")
        elts = [()]
        for d in self.factors:
            elts = [e + (x,) for e in elts for x in range(d)]
        return elts

    def invariants(self):
        diag = [[0] * self.rank for _ in range(self.rank)]
        for i, d in enumerate(self.factors):
            diag[i][i] = d
        if self.rank == 0:
            return ()
        D, _, _, _, _ = smith_normal_form(IntMatrix.from_rows(diag))
        out = [D.a[i][i] for i in range(self.rank)]
        finite = sorted(d for d in out if d > 1)
        zeros = [0] * sum(1 for d in out if d == 0)
        return tuple(finite + zeros)

    def is_invariant_form(self):
        return self.factors == self.invariants()

    def normalized(self):
        return FinAbGroup(self.invariants())

    def direct_sum(self, other):
        return FinAbGroup(self.factors + other.factors)

    def isomorphic(self, other):
        return self.invariants() == other.invariants()

    def __eq__(self, other):
        return isinstance(other, FinAbGroup) and self.factors == other.factors

    def __hash__(self):
        return hash(self.factors)

    def __str__(self):
        inv = self.invariants()
        if not inv:
            return "0"
        return " x ".join("Z" if d == 0 else f"C{d}" for d in inv)

    def __repr__(self):
        return f"FinAbGroup({list(self.factors)})"


class GroupHom:
    """Homomorphism between FinAbGroups; column j = image of source e_j."""

    __slots__ = ("source", "target", "matrix")

    def __init__(self, source, target, matrix):
        self.source = source
        self.target = target
        if isinstance(matrix, IntMatrix):
            M = matrix
        else:
            M = IntMatrix(target.rank, source.rank, matrix if target.rank else None)
        assert M.m == target.rank and M.n == source.rank
        self.matrix = M

    def well_defined(self):
        """d_j * (column j) must vanish in the target for finite d_j."""
        for j, d in enumerate(self.source.factors):
            if d:
                img = self.target.reduce([d * self.matrix.a[i][j] for i in range(self.target.rank)])
                if any(img):
                    return False
        return True

    def apply(self, v):
        return self.target.reduce(self.matrix.vec(list(v)))

    def compose(self, inner):
        """self o inner."""
        assert inner.target.factors == self.source.factors
        return GroupHom(inner.source, self.target, self.matrix.mul(inner.matrix))

    def is_zero(self):
        for j in range(self.source.rank):
            if any(self.apply([1 if i == j else 0 for i in range(self.source.rank)])):
                return False
        return True

    def equals(self, other):
        """Equality as maps (entries compared mod target factors)."""
        if self.source.factors != other.source.factors:
            return False
        if self.target.factors != other.target.factors:
            return False
        for j in range(self.source.rank):
            e = [1 if i == j else 0 for i in range(self.source.rank)]
            if self.apply(e) != other.apply(e):
                return False
        return True

    @classmethod
    def zero_map(cls, source, target):
        return cls(source, target, IntMatrix(target.rank, source.rank))

    @classmethod
    def identity(cls, group):
        return cls(group, group, IntMatrix.identity(group.rank))

    def __repr__(self):
        return f"GroupHom({self.source!r} -> {self.target!r})"


class QuotientPresentation:
    """The group span(K)/span(M) inside Z^dim, with witness generators.

    ``witnesses`` are ambient vectors generating the quotient (one per
    non-unit invariant factor, infinite factors last); ``coords(v)``
    expresses an ambient vector v in span(K) as coefficients on the
    witnesses, or returns None when v is not in span(K).
    """

    __slots__ = ("dim", "group", "witnesses", "_kmat", "_U", "_dvec", "_keep")

    def __init__(self, dim, k_basis, m_cols):
        self.dim = dim
        r = len(k_basis)
        if r == 0:
            self.group = FinAbGroup(())
            self.witnesses = []
            self._kmat = None
            self._U = None
            self._dvec = []
            self._keep = []
            return
        K = IntMatrix.from_columns(k_basis, dim)
        # coordinates of the m-generators in the K-basis
        xcols = []
        for c in m_cols:
            y = solve_exact(K, c)
            assert y is not None, "relation vector outside the subgroup lattice"
            xcols.append(y)
        X = IntMatrix.from_columns(xcols, r) if xcols else IntMatrix(r, 0)
        D, U, V, Uinv, Vinv = smith_normal_form(X)
        dvec = []
        for i in range(r):
            d = D.a[i][i] if i < X.n else 0
            dvec.append(d)
        keep = [i for i, d in enumerate(dvec) if d != 1]
        factors = [dvec[i] for i in keep]
        self.group = FinAbGroup(factors)
        self._kmat = K
        self._U = U
        self._dvec = dvec
        self._keep = keep
        kui = K.mul(Uinv)
        self.witnesses = [kui.col(i) for i in keep]

    def coords(self, v):
        if self._kmat is None:
            return () if all(x == 0 for x in v) else None
        y = solve_exact(self._kmat, list(v))
        if y is None:
            return None
        c = self._U.vec(y)
        out = []
        for i in self._keep:
            d = self._dvec[i]
            out.append(c[i] % d if d else c[i])
        return tuple(out)


class HomologyResult:
    __slots__ = ("group", "presentation")

    def __init__(self, group, presentation):
        self.group = group
        self.presentation = presentation

    @property
    def witnesses(self):
        return self.presentation.witnesses

    def coords(self, v):
        return self.presentation.coords(v)


def complex_homology(d_in, d_out):
    """ker(d_out)/im(d_in) for a two-step complex at the middle group.

    Raises NotAComplex (with a witness generator index) when
    d_out o d_in is nonzero.
    """
    mid = d_in.target
    assert mid.factors == d_out.source.factors
    comp = d_out.compose(d_in)
    for j in range(comp.source.rank):
        e = [1 if i == j else 0 for i in range(comp.source.rank)]
        if any(comp.apply(e)):
            raise NotAComplex(j)
    K = kernel_mod(d_out.matrix, d_out.target.factors)
    m_cols = d_in.matrix.columns() + _relation_columns(mid.factors)
    pres = QuotientPresentation(mid.rank, K, m_cols)
    return HomologyResult(pres.group.normalized(), pres)


def image_invariants(hom):
    """Invariant factors of the image subgroup of a GroupHom."""
    return subgroup_invariants(hom.target, hom.matrix.columns())


def subgroup_invariants(group, gen_cols):
    """Invariants of the subgroup of ``group`` generated by the columns."""
    dim = group.rank
    rel = _relation_columns(group.factors)
    k_basis = lattice_basis(gen_cols + rel, dim)
    # subgroup == span(gens + rel)/span(rel)
    pres = QuotientPresentation(dim, k_basis, rel)
    return pres.group.invariants()


def kernel_invariants(hom):
    """Invariants of the kernel subgroup of a GroupHom."""
    K = kernel_mod(hom.matrix, hom.target.factors)
    rel = _relation_columns(hom.source.factors)
    k_basis = lattice_basis(K + rel, hom.source.rank)
    pres = QuotientPresentation(hom.source.rank, k_basis, rel)
    return pres.group.invariants()


class SubgroupPresentation:
    """Subgroup of ``group`` generated by columns, in its own coordinates.

    ``embed`` maps new coordinates to ambient vectors; ``express(v)``
    inverts it on the subgroup (None if v is outside).
    """

    __slots__ = ("ambient", "gens", "group", "_uinv", "_u", "_dvec", "_keep")

    def __init__(self, ambient, gen_cols):
        self.ambient = ambient
        gens = [list(ambient.reduce(c)) for c in gen_cols]
        self.gens = gens
        # relations among the generators: {x : sum x_j g_j = 0 in ambient}
        if gens:
            M = IntMatrix.from_columns(gens, ambient.rank)
            relmat = kernel_mod(M, ambient.factors)
            R = IntMatrix.from_columns(relmat, len(gens)) if relmat else IntMatrix(len(gens), 0)
            diag = []
            D, U, V, Uinv, Vinv = smith_normal_form(R)
            for i in range(len(gens)):
                d = D.a[i][i] if i < R.n else 0
                diag.append(d)
            # change generators so relations become diagonal: new gens = old * Uinv
            self._uinv = Uinv
            self._u = U
            self._dvec = diag
            keep = [i for i, d in enumerate(diag) if d != 1]
            self._keep = keep
            self.group = FinAbGroup([diag[i] for i in keep])
        else:
            self._uinv = None
            self._u = None
            self._dvec = []
            self._keep = []
            self.group = FinAbGroup(())

    def embed(self, coords):
        v = [0] * self.ambient.rank
        for pos, i in enumerate(self._keep):
            c = coords[pos]
            if c:
                for r in range(self.ambient.rank):
                    col = sum(self._uinv.a[j][i] * self.gens[j][r] for j in range(len(self.gens)))
                    v[r] += c * col
        return self.ambient.reduce(v)

    def express(self, v):
        if not self.gens:
            return () if not any(self.ambient.reduce(v)) else None
        M = IntMatrix.from_columns(self.gens, self.ambient.rank)
        y = solve_mod(M, list(v), self.ambient.factors)
        if y is None:
            return None
        c = self._u.vec(y)
        out = []
        for i in self._keep:
            d = self._dvec[i]
            out.append(c[i] % d if d else c[i])
        return tuple(out)


def finite_invariants_from_orders(cosets, add, zero):
    """Invariant factors of a finite abelian group given by enumeration.

    ``cosets`` is the list of elements, ``add`` the operation, ``zero``
    the neutral element.  Works by counting m-torsion, one prime at a
    time.
    """
    n = len(cosets)
    if n == 1:
        return ()
    # element orders
    orders = {}
    for x in cosets:
        k = 1
        y = x
        while y != zero:
            y = add(y, x)
            k += 1
        orders[x] = k
    # factor the group order
    result = {}
    m = n
    p = 2
    primes = []
    while p * p <= m:
        if m % p == 0:
            primes.append(p)
            while m % p == 0:
                m //= p
        p += 1
    if m > 1:
        primes.append(m)
    for p in primes:
        # s_j = log_p #{x : p^j x = 0}; multiplicity of exponent >= j is s_j - s_{j-1}
        s_prev = 0
        j = 1
        exps = []
        while True:
            pj = p**j
            cnt = sum(1 for x in cosets if pj % orders[x] == 0)
            s_j = 0
            c = cnt
            while c > 1:
                c //= p
                s_j += 1
            mult = s_j - s_prev
            if mult <= 0:
                break
            exps.append(mult)
            s_prev = s_j
            j += 1
        result[p] = exps  # exps[j-1] = number of cyclic factors with exponent >= j
    # assemble invariant factors: k-th largest factor gets p^(number of j with exps[j] >= k)
    nfactors = max((e[0] for e in result.values() if e), default=0)
    invs = []
    for k in range(nfactors):
        d = 1
        for p, exps in result.items():
            e = sum(1 for mult in exps if mult > k)
            d *= p**e
        invs.append(d)
    return tuple(sorted(d for d in invs if d > 1))
