"""Factor sets of projective monoid representations and Schur multipliers.

A factor set is a total map S x S -> A u {0} (A written multiplicatively,
internally an additive FinAbGroup), subject to the cocycle law

    rho(x,y) rho(xy,z) = rho(x,yz) rho(y,z)        (zero absorbing, all triples)

and the normalization rho(x,y) = 0 <=> rho(1,xy) = 0.  Zeros then occur
exactly on the pairs whose product falls into a two-sided ideal, and the
multiplier splits into a strong semilattice of abelian groups indexed by
the ideal semilattice: the component at I is the degree-2 0-cohomology of
the quotient by I with trivial coefficients.
"""

from dataclasses import dataclass, field
from itertools import product

from .abgroups import (
    FinAbGroup,
    GroupHom,
    IntMatrix,
    finite_invariants_from_orders,
    image_invariants,
    kernel_invariants,
    solve_mod,
)
from .cohomology import cochain_from_vector, cochain_vector, coboundary_hom, cohomology_group
from .errors import CapExceeded, NotAnIdeal
from .modules import trivial_module
from .semigroups import ideals, is_ideal, rees_quotient


@dataclass(frozen=True)
class FactorSet:
    semigroup: object
    group: FinAbGroup
    values: dict = field(compare=False)  # (i, j) -> coefficient tuple or None

    def value(self, x, y):
        return self.values[(x, y)]

    def key(self):
        return tuple(sorted((p, v) for p, v in self.values.items()))

    def __eq__(self, other):
        return (
            isinstance(other, FactorSet)
            and self.group.factors == other.group.factors
            and self.key() == other.key()
        )

    def __hash__(self):
        return hash((self.group.factors, self.key()))


@dataclass(frozen=True)
class FactorSetViolation:
    kind: str  # "normalization" or "cocycle"
    witness: tuple


def epsilon_factor_set(S, A, ideal):
    """The idempotent factor set of an ideal: 1 off it, 0 on it."""
    I = frozenset(ideal)
    if not is_ideal(S, I):
        raise NotAnIdeal(sorted(I))
    one = A.zero()
    values = {}
    for x in range(S.order):
        for y in range(S.order):
            values[(x, y)] = None if S.mul(x, y) in I else one
    return FactorSet(S, A, values)


def validate_factor_set(rho):
    """None if rho is a factor set, else the first violating pair/triple.

    Checks the normalization over all pairs, then the completed cocycle
    law over all triples (both sides must vanish together, and agree
    when nonzero).
    """
    S = rho.semigroup
    if S.identity is None:
        raise ValueError("factor sets are defined over monoids")
    one = S.identity
    A = rho.group
    for x in range(S.order):
        for y in range(S.order):
            if (rho.value(x, y) is None) != (rho.value(one, S.mul(x, y)) is None):
                return FactorSetViolation("normalization", (x, y))
    for x in range(S.order):
        for y in range(S.order):
            v_xy = rho.value(x, y)
            xy = S.mul(x, y)
            for z in range(S.order):
                lhs = None
                if v_xy is not None and rho.value(xy, z) is not None:
                    lhs = A.add(v_xy, rho.value(xy, z))
                yz = S.mul(y, z)
                rhs = None
                if rho.value(y, z) is not None and rho.value(x, yz) is not None:
                    rhs = A.add(rho.value(x, yz), rho.value(y, z))
                if lhs != rhs:
                    return FactorSetViolation("cocycle", (x, y, z))
    return None


def fs_product(rho, sigma):
    """Pointwise product, zero absorbing."""
    assert rho.semigroup is sigma.semigroup or rho.semigroup.table == sigma.semigroup.table
    assert rho.group.factors == sigma.group.factors
    A = rho.group
    values = {}
    for p, v in rho.values.items():
        w = sigma.values[p]
        values[p] = None if v is None or w is None else A.add(v, w)
    return FactorSet(rho.semigroup, A, values)


def fs_inverse_on_support(rho):
    A = rho.group
    values = {p: (None if v is None else A.neg(v)) for p, v in rho.values.items()}
    return FactorSet(rho.semigroup, A, values)


def support_ideal(rho):
    """The ideal I with rho(x,y) = 0 iff xy in I; NotAnIdeal if invalid."""
    S = rho.semigroup
    one = S.identity
    I = frozenset(z for z in range(S.order) if rho.value(one, z) is None)
    if not is_ideal(S, I):
        raise NotAnIdeal(sorted(I))
    for x in range(S.order):
        for y in range(S.order):
            if (rho.value(x, y) is None) != (S.mul(x, y) in I):
                raise NotAnIdeal((x, y))
    return I


def equivalent(rho, sigma):
    """(True, alpha) when rho = (d alpha) * sigma with equal supports.

    alpha is a dict element -> coefficient tuple, identity on the
    support ideal; returns (False, None) otherwise.
    """
    S = rho.semigroup
    A = rho.group
    I_r = support_ideal(rho)
    I_s = support_ideal(sigma)
    if I_r != I_s:
        return (False, None)
    Q = rees_quotient(S, I_r)
    MQ = trivial_module(Q, A)
    ratio_vals = {}
    qindex = {}
    for x in range(S.order):
        if x not in I_r:
            qindex[x] = Q.index(S.elements[x])
    for (x, y), v in rho.values.items():
        if v is None:
            continue
        w = sigma.values[(x, y)]
        ratio_vals[(qindex[x], qindex[y])] = A.add(v, A.neg(w))
    ratio = cochain_from_vector(
        Q, MQ, 2, "zero",
        _vec_from_values(Q, MQ, ratio_vals),
    )
    d1 = coboundary_hom(Q, MQ, 1, "zero")
    target = cochain_vector(Q, MQ, ratio, "zero")
    x = solve_mod(d1.matrix, target, d1.target.factors)
    if x is None:
        return (False, None)
    phi = cochain_from_vector(Q, MQ, 1, "zero", x)
    alpha = {}
    for s in range(S.order):
        if s in I_r:
            alpha[s] = A.zero()
        else:
            alpha[s] = phi.values[(qindex[s],)]
    return (True, alpha)


def _vec_from_values(Q, MQ, vals):
    from .cohomology import nerve

    vec = []
    for t in nerve(Q, 2, "zero"):
        vec.extend(vals.get(t, MQ.group.zero()))
    return vec


def twist(rho, alpha):
    """rho * d(alpha): the equivalent factor set defined by alpha."""
    S = rho.semigroup
    A = rho.group
    values = {}
    for (x, y), v in rho.values.items():
        if v is None:
            values[(x, y)] = None
        else:
            xy = S.mul(x, y)
            values[(x, y)] = A.add(v, A.add(alpha[x], A.add(A.neg(alpha[xy]), alpha[y])))
    return FactorSet(S, A, values)


@dataclass
class SemilatticeOfGroups:
    indices: list  # hashable keys, e.g. frozenset ideals
    join: dict  # (k1, k2) -> key
    components: dict  # key -> FinAbGroup (invariant form)
    links: dict  # (k1, k2) with k1 <= k2 in the order induced by join
    link_data: dict = field(default_factory=dict)

    def component(self, key):
        return self.components[key]

    def leq(self, k1, k2):
        return self.join[(k1, k2)] == k2

    def check_links_compose(self):
        for i in self.indices:
            for j in self.indices:
                if not self.leq(i, j):
                    continue
                for k in self.indices:
                    if not self.leq(j, k):
                        continue
                    left = self.links[(i, k)]
                    right = self.links[(j, k)].compose(self.links[(i, j)])
                    if not left.equals(right):
                        return (i, j, k)
        for i in self.indices:
            if not self.links[(i, i)].equals(GroupHom.identity(self.components[i])):
                return (i, i, i)
        return None


def schur_multiplier(S, A, cap=12):
    """The multiplier as a strong semilattice of cohomology groups.

    Index set: all ideals of the monoid S under union (empty ideal
    included).  Component at I: H_0^2(S/I, A trivial).  Link I -> J for
    I <= J: restriction of cocycles to the smaller support (multiply by
    the idempotent of J), realized on cohomology.
    """
    if S.identity is None:
        raise ValueError("Schur multipliers are defined over monoids")
    if S.order > cap:
        raise CapExceeded(f"|S| = {S.order} exceeds cap {cap}")
    idx = ideals(S)
    results = {}
    quotients = {}
    modules = {}
    for I in idx:
        Q = rees_quotient(S, I)
        M = trivial_module(Q, A)
        quotients[I] = Q
        modules[I] = M
        results[I] = cohomology_group(Q, M, 2, "zero")
    components = {I: results[I].group for I in idx}
    links = {}
    for I in idx:
        for J in idx:
            if not I <= J:
                continue
            links[(I, J)] = _restriction_hom(S, A, I, J, quotients, modules, results)
    join = {}
    for I in idx:
        for J in idx:
            join[(I, J)] = I | J
    sl = SemilatticeOfGroups(idx, join, components, links)
    sl.link_data = {"results": results, "quotients": quotients, "modules": modules}
    bad = sl.check_links_compose()
    if bad is not None:
        raise AssertionError(f"semilattice links fail to compose at {bad}")
    return sl


def _restriction_hom(S, A, I, J, quotients, modules, results):
    """Induced map H_0^2(S/I) -> H_0^2(S/J) by restricting cochains."""
    QI, QJ = quotients[I], quotients[J]
    MI, MJ = modules[I], modules[J]
    HI, HJ = results[I], results[J]
    from .cohomology import nerve

    # names identify elements across the two quotients
    cols = []
    for w in HI.witnesses:
        restricted = {}
        for t in nerve(QJ, 2, "zero"):
            s_elems = tuple(QJ.elements[x] for x in t)
            t_in_I = tuple(QI.index(nm) for nm in s_elems)
            restricted[t] = w.values[t_in_I]
        vec = []
        for t in nerve(QJ, 2, "zero"):
            vec.extend(restricted[t])
        c = HJ.homology.coords(vec)
        if c is None:
            raise AssertionError("restriction of a cocycle is not a cocycle")
        cols.append(list(c))
    src = HI.group
    dst = HJ.group
    mat = IntMatrix.from_columns(cols, dst.rank) if cols else IntMatrix(dst.rank, 0)
    hom = GroupHom(src, dst, mat)
    if not hom.well_defined():
        raise AssertionError("restriction link not well defined on classes")
    return hom


@dataclass
class BruteComponent:
    ideal: frozenset
    class_reps: list  # FactorSet representatives
    class_of: dict  # factor-set key -> class id
    invariants: tuple


@dataclass
class BruteMultiplier:
    semigroup: object
    group: FinAbGroup
    components: dict  # ideal -> BruteComponent

    def link_class(self, I, J, cid):
        """Image class of class cid of component I under multiply-by-eps_J."""
        rho = self.components[I].class_reps[cid]
        eps = epsilon_factor_set(self.semigroup, self.group, J)
        return self.components[J].class_of[fs_product(rho, eps).key()]


def enumerate_factor_sets(S, A, cap=6_000_000):
    """All factor sets over the monoid S with coefficients in A.

    The normalization forces the zero set to be {(x,y) : xy in Z'} for
    Z' = the zero set of rho(1, .); we scan all subsets Z' (non-ideals
    die on the cocycle law) and enumerate values on the support.
    """
    n = S.order
    if A.order() is None:
        raise CapExceeded("need finite coefficients")
    out = []
    elements = A.elements()
    for bits in range(2**n):
        Z = frozenset(i for i in range(n) if bits >> i & 1)
        support = [(x, y) for x in range(n) for y in range(n) if S.mul(x, y) not in Z]
        total = A.order() ** len(support)
        if total > cap:
            raise CapExceeded(f"{total} value assignments exceed cap")
        base = {(x, y): None for x in range(n) for y in range(n)}
        for combo in product(elements, repeat=len(support)):
            values = dict(base)
            for p, v in zip(support, combo):
                values[p] = v
            rho = FactorSet(S, A, values)
            if validate_factor_set(rho) is None:
                out.append(rho)
    return out


def brute_multiplier(S, A, cap=6_000_000):
    """Oracle: enumerate factor sets, group by support, quotient by twists."""
    if S.identity is None:
        raise ValueError("monoids only")
    all_sets = enumerate_factor_sets(S, A, cap)
    by_ideal = {}
    for rho in all_sets:
        I = support_ideal(rho)
        by_ideal.setdefault(I, []).append(rho)
    # sanity: supports are exactly the ideals
    assert set(by_ideal) == set(ideals(S))
    elements = A.elements()
    components = {}
    for I, sets in by_ideal.items():
        nonideal = [s for s in range(S.order) if s not in I]
        class_of = {}
        reps = []
        for rho in sets:
            k = rho.key()
            if k in class_of:
                continue
            cid = len(reps)
            reps.append(rho)
            # orbit under all twists alpha: S \ I -> A
            stack = [rho]
            seen = {k}
            while stack:
                cur = stack.pop()
                for combo in product(elements, repeat=len(nonideal)):
                    alpha = {s: A.zero() for s in range(S.order)}
                    for s, v in zip(nonideal, combo):
                        alpha[s] = v
                    t = twist(cur, alpha)
                    tk = t.key()
                    if tk not in seen:
                        seen.add(tk)
                        stack.append(t)
            for tk in seen:
                class_of[tk] = cid
        # group structure on classes by pointwise product
        def add(c1, c2, _class_of=class_of, _reps=reps):
            return _class_of[fs_product(_reps[c1], _reps[c2]).key()]

        eps_key = epsilon_factor_set(S, A, I).key()
        inv = finite_invariants_from_orders(list(range(len(reps))), add, class_of[eps_key])
        components[I] = BruteComponent(I, reps, class_of, inv)
    return BruteMultiplier(S, A, components)


def multipliers_agree(sl, brute):
    """Full comparison report between the two multiplier computations."""
    report = {"indices": None, "components": {}, "links": {}, "ok": True}
    idx_sl = set(sl.indices)
    idx_br = set(brute.components)
    report["indices"] = idx_sl == idx_br
    if not report["indices"]:
        report["ok"] = False
        return report
    for I in sl.indices:
        same = sl.components[I].invariants() == brute.components[I].invariants
        report["components"][tuple(sorted(I))] = same
        if not same:
            report["ok"] = False
    # links: compare invariant factors of image and kernel, plus
    # well-definedness of multiply-by-epsilon on brute classes
    for I in sl.indices:
        for J in sl.indices:
            if not I <= J:
                continue
            hom = sl.links[(I, J)]
            img_sl = image_invariants(hom)
            ker_sl = kernel_invariants(hom)
            bi = brute.components[I]
            image_classes = set()
            kernel = 0
            eps_key_J = epsilon_factor_set(brute.semigroup, brute.group, J).key()
            id_class_J = brute.components[J].class_of[eps_key_J]
            mapped = {}
            for cid in range(len(bi.class_reps)):
                target = brute.link_class(I, J, cid)
                mapped[cid] = target
                image_classes.add(target)
                if target == id_class_J:
                    kernel += 1
            bj = brute.components[J]

            def addJ(c1, c2, _bj=bj):
                return _bj.class_of[fs_product(_bj.class_reps[c1], _bj.class_reps[c2]).key()]

            img_list = sorted(image_classes)
            pos = {c: i for i, c in enumerate(img_list)}
            img_br = finite_invariants_from_orders(
                list(range(len(img_list))),
                lambda a, b: pos[addJ(img_list[a], img_list[b])],
                pos[id_class_J],
            )
            ker_list = sorted(c for c, t in mapped.items() if t == id_class_J)
            kpos = {c: i for i, c in enumerate(ker_list)}

            def addI(c1, c2, _bi=bi):
                return _bi.class_of[fs_product(_bi.class_reps[c1], _bi.class_reps[c2]).key()]

            ker_br = finite_invariants_from_orders(
                list(range(len(ker_list))),
                lambda a, b: kpos[addI(ker_list[a], ker_list[b])],
                kpos[bi.class_of[epsilon_factor_set(brute.semigroup, brute.group, I).key()]],
            )
            ok = img_sl == img_br and ker_sl == ker_br
            report["links"][(tuple(sorted(I)), tuple(sorted(J)))] = ok
            if not ok:
                report["ok"] = False
    return report
