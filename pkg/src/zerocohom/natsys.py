"""Cohomology of a monoid-with-zero through its category of factorizations.

Objects are the nonzero elements; a morphism (alpha, a, beta): a -> b
exists when alpha * a * beta = b is nonzero, with composition
(alpha', beta')(alpha, beta) = (alpha' alpha, beta beta').  A natural
system assigns an abelian group to each object and compatible maps
alpha_* = D(alpha, 1), beta^* = D(1, beta) to the generating morphisms.

The cochain complex uses the nerve of nonzero products; its coboundary
acts by alpha_* on the first slot and beta^* on the last.  The bar
system B_n is objectwise free on the (n+2)-letter factorizations of the
object; comparing Hom(B_n, D) with the cochain complex realizes the
derived-functor description at desk scale.
"""

from dataclasses import dataclass, field
from itertools import product

from .abgroups import FinAbGroup, GroupHom, IntMatrix, complex_homology
from .errors import CapExceeded, FunctorialityError, NotMonoidWithZero
from .cohomology import nerve


def _require_monoid_with_zero(S):
    if S.identity is None or S.zero is None:
        raise NotMonoidWithZero("need a monoid with zero")


@dataclass(frozen=True)
class FacCategory:
    semigroup: object
    objects: tuple
    morphisms: tuple  # triples (alpha, a, beta) with alpha*a*beta != 0


def fac_category(S):
    """The category of factorizations, with composition law verified."""
    _require_monoid_with_zero(S)
    z = S.zero
    objects = tuple(S.nonzero())
    morphisms = []
    for alpha in range(S.order):
        for a in objects:
            for beta in range(S.order):
                if S.mul(S.mul(alpha, a), beta) != z:
                    morphisms.append((alpha, a, beta))
    cat = FacCategory(S, objects, tuple(morphisms))
    _verify_category(cat)
    return cat


def _verify_category(cat):
    S = cat.semigroup
    z = S.zero
    e = S.identity
    for a in cat.objects:
        assert (e, a, e) in set(cat.morphisms)
    morph_set = set(cat.morphisms)
    for alpha, a, beta in cat.morphisms:
        b = S.mul(S.mul(alpha, a), beta)
        # composable follow-ups: (alpha', b, beta')
        for alphap in range(S.order):
            for betap in range(S.order):
                if S.mul(S.mul(alphap, b), betap) != z:
                    comp = (S.mul(alphap, alpha), a, S.mul(beta, betap))
                    assert comp in morph_set
    # (alpha, beta) = (alpha, 1)(1, beta) = (1, beta)(alpha, 1) on a sample
    for alpha, a, beta in cat.morphisms[: min(len(cat.morphisms), 200)]:
        left = (S.mul(alpha, e), a, S.mul(beta, e))
        assert left == (alpha, a, beta)


class NaturalSystem:
    """Functor data: groups per object, maps for (alpha, 1) and (1, beta).

    ``left[(alpha, a)]`` is the matrix of D(alpha, a, 1): D_a -> D_{alpha a},
    ``right[(beta, a)]`` of D(1, a, beta): D_a -> D_{a beta}; the identity
    morphism maps are implicit.
    """

    def __init__(self, S, groups, left, right):
        _require_monoid_with_zero(S)
        self.semigroup = S
        self.groups = dict(groups)
        self.left = dict(left)
        self.right = dict(right)

    def group(self, a):
        return self.groups[a]

    def left_map(self, alpha, a):
        hit = self.left.get((alpha, a))
        if hit is not None:
            return hit
        if alpha == self.semigroup.identity:
            return IntMatrix.identity(self.groups[a].rank)
        raise KeyError((alpha, a))

    def right_map(self, beta, a):
        hit = self.right.get((beta, a))
        if hit is not None:
            return hit
        if beta == self.semigroup.identity:
            return IntMatrix.identity(self.groups[a].rank)
        raise KeyError((beta, a))

    def morphism_matrix(self, alpha, a, beta):
        """Matrix of D(alpha, a, beta) = alpha_* after beta^*."""
        S = self.semigroup
        ab = S.mul(a, beta)
        return self.left_map(alpha, ab).mul(self.right_map(beta, a))

    def apply(self, alpha, a, beta, vec):
        S = self.semigroup
        target = S.mul(S.mul(alpha, a), beta)
        return self.groups[target].reduce(self.morphism_matrix(alpha, a, beta).vec(list(vec)))


def _hom_ok(src_group, dst_group, M):
    if M.m != dst_group.rank or M.n != src_group.rank:
        return False
    return GroupHom(src_group, dst_group, M).well_defined()


def natural_system(S, groups, left, right):
    """Build and exhaustively validate a natural system."""
    D = NaturalSystem(S, groups, left, right)
    witness = validate_natural_system(D)
    if witness is not None:
        raise FunctorialityError(witness)
    return D


def validate_natural_system(D):
    S = D.semigroup
    z = S.zero
    objects = [a for a in S.nonzero()]
    for a in objects:
        if a not in D.groups:
            return ("missing-group", a)
    # the identity morphism must act as the identity
    e = S.identity
    ident_ok = IntMatrix.identity
    for a in objects:
        for stored, key in ((D.left, (e, a)), (D.right, (e, a))):
            M = stored.get(key)
            if M is not None and not _mats_equal_mod(D.groups[a], M, ident_ok(D.groups[a].rank)):
                return ("identity-map", key)
    # map shapes and well-definedness
    for a in objects:
        for alpha in range(S.order):
            if S.mul(alpha, a) != z:
                M = D.left_map(alpha, a)
                if not _hom_ok(D.groups[a], D.groups[S.mul(alpha, a)], M):
                    return ("left-hom", (alpha, a))
        for beta in range(S.order):
            if S.mul(a, beta) != z:
                M = D.right_map(beta, a)
                if not _hom_ok(D.groups[a], D.groups[S.mul(a, beta)], M):
                    return ("right-hom", (beta, a))
    # functoriality of each side
    for a in objects:
        for alpha in range(S.order):
            aa = S.mul(alpha, a)
            if aa == z:
                continue
            for alphap in range(S.order):
                if S.mul(alphap, aa) == z:
                    continue
                lhs = D.left_map(alphap, aa).mul(D.left_map(alpha, a))
                rhs = D.left_map(S.mul(alphap, alpha), a)
                if not _mats_equal_mod(D.groups[S.mul(alphap, aa)], lhs, rhs):
                    return ("left-compose", (alphap, alpha, a))
        for beta in range(S.order):
            ab = S.mul(a, beta)
            if ab == z:
                continue
            for betap in range(S.order):
                if S.mul(ab, betap) == z:
                    continue
                lhs = D.right_map(betap, ab).mul(D.right_map(beta, a))
                rhs = D.right_map(S.mul(beta, betap), a)
                if not _mats_equal_mod(D.groups[S.mul(ab, betap)], lhs, rhs):
                    return ("right-compose", (beta, betap, a))
    # the two decompositions of (alpha, beta) agree
    for a in objects:
        for alpha in range(S.order):
            for beta in range(S.order):
                if S.mul(S.mul(alpha, a), beta) == z:
                    continue
                ab = S.mul(a, beta)
                aa = S.mul(alpha, a)
                via_right_first = D.left_map(alpha, ab).mul(D.right_map(beta, a))
                via_left_first = D.right_map(beta, aa).mul(D.left_map(alpha, a))
                if not _mats_equal_mod(
                    D.groups[S.mul(aa, beta)], via_right_first, via_left_first
                ):
                    return ("square", (alpha, a, beta))
    return None


def _mats_equal_mod(group, M1, M2):
    for j in range(M1.n):
        c1 = group.reduce([M1.a[i][j] for i in range(M1.m)])
        c2 = group.reduce([M2.a[i][j] for i in range(M2.m)])
        if c1 != c2:
            return False
    return True


def from_zero_module(M):
    """The natural system of a (unital) 0-module: D_a = A, alpha_* = action."""
    S = M.semigroup
    _require_monoid_with_zero(S)
    groups = {a: M.group for a in S.nonzero()}
    left = {}
    right = {}
    z = S.zero
    for a in S.nonzero():
        for alpha in range(S.order):
            if S.mul(alpha, a) != z:
                left[(alpha, a)] = M.matrix(alpha)
            if S.mul(a, alpha) != z:
                right[(alpha, a)] = IntMatrix.identity(M.group.rank)
    return natural_system(S, groups, left, right)


def trivial_Z(S):
    """Every object gets Z; every morphism the identity."""
    _require_monoid_with_zero(S)
    Zgroup = FinAbGroup([0])
    one = IntMatrix.identity(1)
    groups = {a: Zgroup for a in S.nonzero()}
    left = {}
    right = {}
    z = S.zero
    for a in S.nonzero():
        for alpha in range(S.order):
            if S.mul(alpha, a) != z:
                left[(alpha, a)] = one
            if S.mul(a, alpha) != z:
                right[(alpha, a)] = one
    return natural_system(S, groups, left, right)


NATSYS_DEGREE_CAP = 3


def _tuple_group(D, tuples):
    S = D.semigroup
    factors = []
    offsets = []
    for t in tuples:
        obj = S.mul_word(t) if t else S.identity
        offsets.append(len(factors))
        factors.extend(D.groups[obj].factors)
    return FinAbGroup(factors), offsets


def natsys_coboundary_hom(S, D, n):
    """Degree-n coboundary of the natural-system cochain complex."""
    src_tuples = nerve(S, n, "zero")
    dst_tuples = nerve(S, n + 1, "zero")
    src, src_off = _tuple_group(D, src_tuples)
    dst, dst_off = _tuple_group(D, dst_tuples)
    pos = {t: i for i, t in enumerate(src_tuples)}
    mat = IntMatrix(dst.rank, src.rank)

    def add_block(di, si, M, sign):
        r0 = dst_off[di]
        c0 = src_off[si]
        for r in range(M.m):
            row = mat.a[r0 + r]
            for c in range(M.n):
                row[c0 + c] += sign * M.a[r][c]

    for di, t in enumerate(dst_tuples):
        if n == 0:
            x = t[0]
            add_block(di, 0, D.left_map(x, S.identity), 1)
            add_block(di, 0, D.right_map(x, S.identity), -1)
            continue
        rest = t[1:]
        add_block(di, pos[rest], D.left_map(t[0], S.mul_word(rest)), 1)
        sign = -1
        for i in range(n):
            merged = t[:i] + (S.mul(t[i], t[i + 1]),) + t[i + 2 :]
            Mid = IntMatrix.identity(D.groups[S.mul_word(merged)].rank)
            add_block(di, pos[merged], Mid, sign)
            sign = -sign
        head = t[:-1]
        add_block(di, pos[head], D.right_map(t[-1], S.mul_word(head)), sign)
    return GroupHom(src, dst, mat)


def natsys_cohomology(S, D, n):
    """H^n of the cochain complex of a natural system (n <= 3)."""
    if n > NATSYS_DEGREE_CAP:
        raise CapExceeded(f"degree {n} exceeds cap {NATSYS_DEGREE_CAP}")
    d_out = natsys_coboundary_hom(S, D, n)
    if n == 0:
        d_in = GroupHom(FinAbGroup(()), d_out.source, IntMatrix(d_out.source.rank, 0))
    else:
        d_in = natsys_coboundary_hom(S, D, n - 1)
    return complex_homology(d_in, d_out).group


# ---------------------------------------------------------------------------
# bar systems


@dataclass(frozen=True)
class BarSystem:
    degree: int
    symbols: dict = field(compare=False)  # object -> list of (n+2)-tuples

    def rank(self, a):
        return len(self.symbols[a])


def bar_system(S, n):
    """Objectwise free groups on the (n+2)-letter factorizations."""
    _require_monoid_with_zero(S)
    symbols = {a: [] for a in S.nonzero()}
    for t in product(range(S.order), repeat=n + 2):
        obj = S.mul_word(t)
        if obj != S.zero:
            symbols[obj].append(t)
    return BarSystem(n, symbols)


def bar_action(S, B, alpha, beta, a):
    """Index map of B(alpha, beta): symbols of a -> symbols of alpha a beta."""
    target = S.mul(S.mul(alpha, a), beta)
    tgt_index = {s: i for i, s in enumerate(B.symbols[target])}
    out = []
    for s in B.symbols[a]:
        image = (S.mul(alpha, s[0]),) + s[1:-1] + (S.mul(s[-1], beta),)
        out.append(tgt_index[image])
    return out


def bar_boundary_matrix(S, B_n, B_prev, a):
    """Matrix of the alternating face sum on the object a."""
    rows = B_prev.rank(a)
    cols = B_n.rank(a)
    tgt_index = {s: i for i, s in enumerate(B_prev.symbols[a])}
    M = IntMatrix(rows, cols)
    for j, s in enumerate(B_n.symbols[a]):
        sign = 1
        for i in range(B_n.degree + 1):
            merged = s[:i] + (S.mul(s[i], s[i + 1]),) + s[i + 2 :]
            M.a[tgt_index[merged]][j] += sign
            sign = -sign
    return M


def bar_resolution(S, n_max):
    """Bar systems B_0..B_{n_max} with differentials and augmentation.

    Verifies dd = 0 objectwise, naturality of the differential with
    respect to the generating morphisms, and objectwise exactness of the
    augmented complex in degrees 0..n_max-1.
    """
    _require_monoid_with_zero(S)
    levels = [bar_system(S, n) for n in range(n_max + 1)]
    z = S.zero
    e = S.identity
    # dd = 0 and naturality
    for n in range(1, n_max + 1):
        for a in S.nonzero():
            M1 = bar_boundary_matrix(S, levels[n], levels[n - 1], a)
            if n >= 2:
                M2 = bar_boundary_matrix(S, levels[n - 1], levels[n - 2], a)
                assert M2.mul(M1).is_zero(), ("dd != 0", n, a)
    for n in range(1, n_max + 1):
        for a in S.nonzero():
            for alpha in range(S.order):
                b = S.mul(alpha, a)
                if b == z:
                    continue
                act_n = bar_action(S, levels[n], alpha, e, a)
                act_prev = bar_action(S, levels[n - 1], alpha, e, a)
                Ma = bar_boundary_matrix(S, levels[n], levels[n - 1], a)
                Mb = bar_boundary_matrix(S, levels[n], levels[n - 1], b)
                # boundary then act == act then boundary
                for j in range(levels[n].rank(a)):
                    via_b = [0] * levels[n - 1].rank(b)
                    for i in range(levels[n - 1].rank(a)):
                        if Ma.a[i][j]:
                            via_b[act_prev[i]] += Ma.a[i][j]
                    direct = [Mb.a[i][act_n[j]] for i in range(levels[n - 1].rank(b))]
                    assert via_b == direct, ("naturality", n, a, alpha)
    return levels


def bar_exactness_report(S, n_max):
    """Objectwise homology of the augmented bar complex, degrees < n_max.

    Returns {object: [invariants in degree 0, 1, ...]}; exactness means
    every entry is the empty tuple.
    """
    levels = bar_resolution(S, n_max)
    report = {}
    for a in S.nonzero():
        homs = []
        # augmentation B_0(a) -> Z, every symbol to the generator
        aug = GroupHom(
            FinAbGroup([0] * levels[0].rank(a)),
            FinAbGroup([0]),
            IntMatrix(1, levels[0].rank(a), [[1] * levels[0].rank(a)]),
        )
        d1 = GroupHom(
            FinAbGroup([0] * levels[1].rank(a)),
            aug.source,
            bar_boundary_matrix(S, levels[1], levels[0], a),
        )
        homs.append(complex_homology(d1, aug).group.invariants())
        for n in range(1, n_max):
            d_hi = GroupHom(
                FinAbGroup([0] * levels[n + 1].rank(a)),
                FinAbGroup([0] * levels[n].rank(a)),
                bar_boundary_matrix(S, levels[n + 1], levels[n], a),
            )
            d_lo = GroupHom(
                d_hi.target,
                FinAbGroup([0] * levels[n - 1].rank(a)),
                bar_boundary_matrix(S, levels[n], levels[n - 1], a),
            )
            homs.append(complex_homology(d_hi, d_lo).group.invariants())
        report[a] = homs
    return report


# ---------------------------------------------------------------------------
# the hom-complex comparison


def _normalized_symbol(S, t):
    e = S.identity
    return (e,) + t + (e,)


def hom_complex_compare(S, D, n_max=2):
    """Degreewise comparison of cochains with Hom(B_n, D).

    For each degree n <= n_max this verifies, exhaustively:

    * forcing: every degree-n symbol [a_0..a_{n+1}] is the image of the
      normalized symbol [1, a_1..a_n, 1] under the morphism
      (a_0, a_{n+1}), so a natural transformation is determined by its
      normalized values, which biject with cochains;
    * naturality: the extension of an arbitrary cochain by the forcing
      formula is natural for all generating morphisms;
    * differentials: the map eta |-> eta o (bar boundary), computed in
      normalized coordinates, equals the cochain coboundary matrix;
    * cohomology: both complexes have equal homology in degrees <= n_max.

    Returns a report dict; ``ok`` is the overall verdict.
    """
    if n_max > NATSYS_DEGREE_CAP - 1:
        raise CapExceeded("comparison degree too large")
    _require_monoid_with_zero(S)
    levels = bar_resolution(S, n_max + 1)
    e = S.identity
    z = S.zero
    report = {"forcing": True, "naturality": True, "differentials": True, "groups": [], "ok": True}

    # forcing: unique normalized preimage
    for n in range(n_max + 2):
        B = levels[n]
        for a in S.nonzero():
            for s in B.symbols[a]:
                interior = s[1:-1]
                if interior and S.mul_word(interior) == z:
                    report["forcing"] = False
                norm = _normalized_symbol(S, interior)
                alpha, beta = s[0], s[-1]
                image = (S.mul(alpha, norm[0]),) + norm[1:-1] + (S.mul(norm[-1], beta),)
                if image != s:
                    report["forcing"] = False

    def eta_value(f, n, symbol):
        """Value of the natural transformation of f on a symbol."""
        interior = symbol[1:-1]
        obj_int = S.mul_word(interior) if interior else e
        val = f[interior]
        alpha, beta = symbol[0], symbol[-1]
        return D.apply(alpha, obj_int, beta, val)

    # basis cochains per degree
    def basis(n):
        tuples = nerve(S, n, "zero")
        out = []
        for t in tuples:
            obj = S.mul_word(t) if t else e
            for j in range(D.groups[obj].rank):
                f = {
                    u: D.groups[S.mul_word(u) if u else e].zero()
                    for u in tuples
                }
                vec = [0] * D.groups[obj].rank
                vec[j] = 1
                f[t] = tuple(vec)
                out.append((f, (t, j)))
        return out, tuples

    for n in range(n_max + 1):
        B = levels[n]
        fs, tuples = basis(n)
        for f, _tag in fs:
            # naturality over generating morphisms
            for a in S.nonzero():
                for alpha in range(S.order):
                    b = S.mul(alpha, a)
                    if b == z:
                        continue
                    act = bar_action(S, B, alpha, e, a)
                    for si, s in enumerate(B.symbols[a]):
                        lhs = eta_value(f, n, B.symbols[b][act[si]])
                        rhs = D.apply(alpha, a, e, eta_value(f, n, s))
                        if lhs != rhs:
                            report["naturality"] = False
                for beta in range(S.order):
                    b = S.mul(a, beta)
                    if b == z:
                        continue
                    act = bar_action(S, B, e, beta, a)
                    for si, s in enumerate(B.symbols[a]):
                        lhs = eta_value(f, n, B.symbols[b][act[si]])
                        rhs = D.apply(e, a, beta, eta_value(f, n, s))
                        if lhs != rhs:
                            report["naturality"] = False

    # differentials in normalized coordinates equal the Delta matrices
    hom_mats = []
    for n in range(n_max + 1):
        fs, src_tuples = basis(n)
        dst_tuples = nerve(S, n + 1, "zero")
        src, src_off = _tuple_group(D, src_tuples)
        dst, dst_off = _tuple_group(D, dst_tuples)
        mat = IntMatrix(dst.rank, src.rank)
        for col, (f, tag) in enumerate(fs):
            for di, t in enumerate(dst_tuples):
                # eta_f o bar boundary at the normalized (n+3)-symbol of t
                sym = _normalized_symbol(S, t)
                acc = [0] * D.groups[S.mul_word(t)].rank
                sign = 1
                for i in range(n + 2):
                    merged = sym[:i] + (S.mul(sym[i], sym[i + 1]),) + sym[i + 2 :]
                    v = eta_value(f, n, merged)
                    for r in range(len(acc)):
                        acc[r] += sign * v[r]
                    sign = -sign
                vec = D.groups[S.mul_word(t)].reduce(acc)
                for r, x in enumerate(vec):
                    mat.a[dst_off[di] + r][col] += x
        delta = natsys_coboundary_hom(S, D, n)
        same = True
        for j in range(mat.n):
            c1 = delta.target.reduce(mat.col(j))
            c2 = delta.target.reduce(delta.matrix.col(j))
            if c1 != c2:
                same = False
        if not same:
            report["differentials"] = False
        hom_mats.append(GroupHom(src, dst, mat))

    # equal cohomology from the two matrix families
    for n in range(n_max + 1):
        if n == 0:
            d_in_h = GroupHom(FinAbGroup(()), hom_mats[0].source, IntMatrix(hom_mats[0].source.rank, 0))
            d_in_c = d_in_h
        else:
            d_in_h = hom_mats[n - 1]
            d_in_c = natsys_coboundary_hom(S, D, n - 1)
        h_hom = complex_homology(d_in_h, hom_mats[n]).group.invariants()
        h_coch = complex_homology(d_in_c, natsys_coboundary_hom(S, D, n)).group.invariants()
        report["groups"].append((h_hom, h_coch))
        if h_hom != h_coch:
            report["ok"] = False
    if not (report["forcing"] and report["naturality"] and report["differentials"]):
        report["ok"] = False
    return report
