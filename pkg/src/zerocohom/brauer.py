"""Weak 2-cocycles, modifications, and the Brauer monoid of GF(q^n)/GF(q).

A weak 2-cocycle on the Galois group G = Z/n takes values in the unit
group of GF(q^n) (written additively as exponents, i.e. Z/(q^n - 1)) or
the zero of the field.  The defining check is associativity of the
crossed product built from it; the displayed identity used here,

    sigma(f(tau, omega)) f(sigma, tau*omega) = f(sigma, tau) f(sigma*tau, omega),

is exactly basis-triple associativity and is cross-checked against a
direct structure-constant computation.

A modification turns G u {0} into a monoid by declaring some products
zero; idempotent weak cocycles and modifications correspond bijectively,
and the Brauer monoid is the semilattice of the groups H_0^2 of the
modifications with coefficients in the Galois-twisted unit group.
"""

from dataclasses import dataclass, field
from itertools import product

from .abgroups import GroupHom, IntMatrix
from .catalog import cyclic_group
from .cohomology import coboundary, cohomology_group, nerve
from .errors import CapExceeded
from .modules import galois_units_module
from .semigroups import Semigroup, validate_table


@dataclass(frozen=True)
class WeakCocycle:
    group: object  # the Galois group as a Semigroup (cyclic, generated by Frobenius)
    q: int
    n: int
    values: dict = field(compare=False)  # (s, t) -> exponent int or None

    @property
    def unit_order(self):
        return self.q**self.n - 1

    def value(self, s, t):
        return self.values[(s, t)]

    def key(self):
        return tuple(sorted(self.values.items()))

    def __eq__(self, other):
        return (
            isinstance(other, WeakCocycle)
            and (self.q, self.n) == (other.q, other.n)
            and self.key() == other.key()
        )

    def __hash__(self):
        return hash(((self.q, self.n), self.key()))


def galois_group(n):
    """Z/n as the Galois group of GF(q^n)/GF(q), generated by Frobenius."""
    return cyclic_group(n)


def frobenius_power(G):
    """Element index -> Frobenius exponent; G must be cyclic_group(n)."""
    return {i: i for i in range(G.order)}


@dataclass(frozen=True)
class Modification:
    base: object  # the group
    semigroup: Semigroup  # monoid on G u {0}
    pattern: frozenset  # set of pairs (x, y) with x o y = 0

    def supp_pairs(self):
        n = self.base.order
        return frozenset((x, y) for x in range(n) for y in range(n) if (x, y) not in self.pattern)


def _galois_act(q, n, k, e):
    order = q**n - 1
    return (e * pow(q, k % n, order)) % order


def validate_weak_cocycle(f):
    """None when the crossed product is associative and f is normalized.

    Returns a witness: ("normalization", s) or ("associativity",
    (s, t, w)).  Associativity is checked on basis triples
    u_s u_t u_w with the scalar tracked exactly.
    """
    G = f.group
    e = G.identity
    powers = frobenius_power(G)
    for s in range(G.order):
        if f.value(e, s) != 0 or f.value(s, e) != 0:
            return ("normalization", s)
    for s in range(G.order):
        for t in range(G.order):
            for w in range(G.order):
                # (u_s u_t) u_w = f(s,t) f(st,w) u_stw
                v1 = f.value(s, t)
                lhs = None
                if v1 is not None:
                    v2 = f.value(G.mul(s, t), w)
                    if v2 is not None:
                        lhs = (v1 + v2) % f.unit_order
                # u_s (u_t u_w) = s(f(t,w)) f(s,tw) u_stw
                v3 = f.value(t, w)
                rhs = None
                if v3 is not None:
                    v4 = f.value(s, G.mul(t, w))
                    if v4 is not None:
                        rhs = (_galois_act(f.q, f.n, powers[s], v3) + v4) % f.unit_order
                if lhs != rhs:
                    return ("associativity", (s, t, w))
    return None


def crossed_product_associative(f):
    """Direct oracle: multiply symbolic scalars through both bracketings."""
    G = f.group
    powers = frobenius_power(G)
    order = f.unit_order

    def mul(pair1, pair2):
        # (exponent | None, group elt) pairs; None = zero of the algebra
        a, s = pair1
        b, t = pair2
        if a is None or b is None:
            return (None, G.mul(s, t))
        c = f.value(s, t)
        if c is None:
            return (None, G.mul(s, t))
        return ((a + _galois_act(f.q, f.n, powers[s], b) + c) % order, G.mul(s, t))

    for s in range(G.order):
        for t in range(G.order):
            for w in range(G.order):
                left = mul(mul((0, s), (0, t)), (0, w))
                right = mul((0, s), mul((0, t), (0, w)))
                if left[0] != right[0] or left[1] != right[1]:
                    return False
    return True


def idempotent_weak_cocycle(G, q, n, pattern):
    """The {1, 0}-valued cocycle with zeros on ``pattern``."""
    values = {}
    for s in range(G.order):
        for t in range(G.order):
            values[(s, t)] = None if (s, t) in pattern else 0
    return WeakCocycle(G, q, n, values)


def modification_from_idempotent(f):
    """The monoid G u {0} defined by an idempotent weak cocycle."""
    v = validate_weak_cocycle(f)
    if v is not None:
        raise ValueError(f"invalid weak cocycle: {v}")
    G = f.group
    n = G.order
    names = list(G.elements) + ["0"]
    z = n
    table = [[z] * (n + 1) for _ in range(n + 1)]
    for x in range(n):
        for y in range(n):
            if f.value(x, y) is not None:
                table[x][y] = G.mul(x, y)
    S = validate_table(names, table, z)
    pattern = frozenset((x, y) for x in range(n) for y in range(n) if f.value(x, y) is None)
    return Modification(G, S, pattern)


def idempotent_from_modification(mod, q=2):
    """The {1, 0}-valued weak cocycle whose support is the modification."""
    return idempotent_weak_cocycle(mod.base, q, mod.base.order, mod.pattern)


def enumerate_modifications(G, cap=26):
    """All modifications of G: zero patterns with associative product.

    Depth-first over the (|G|-1)^2 free cells with incremental
    associativity pruning; the identity row and column are forced
    nonzero.  Results sorted by pattern size then lexicographically.
    """
    n = G.order
    e = G.identity
    free = [(x, y) for x in range(n) for y in range(n) if x != e and y != e]
    if len(free) > cap:
        raise CapExceeded(f"{len(free)} free cells exceed cap {cap}")
    cell_pos = {c: i for i, c in enumerate(free)}
    # triples to re-check once their last relevant cell is assigned
    relevant = {c: [] for c in free}
    triples = []
    for x in range(n):
        for y in range(n):
            for w in range(n):
                cells = set()
                for c in ((x, y), (G.mul(x, y), w), (y, w), (x, G.mul(y, w))):
                    if c in cell_pos:
                        cells.add(c)
                t = (x, y, w, frozenset(cells))
                triples.append(t)
                if cells:
                    last = max(cells, key=lambda c: cell_pos[c])
                    relevant[last].append(t)
    base_triples = [t for t in triples if not t[3]]

    def ok(assign, triple):
        x, y, w, _ = triple

        def nz(c):
            if c in cell_pos:
                return assign[cell_pos[c]]
            return True  # identity row/column

        lhs = nz((x, y)) and nz((G.mul(x, y), w))
        rhs = nz((y, w)) and nz((x, G.mul(y, w)))
        return lhs == rhs

    for t in base_triples:
        if not ok([], t):  # cannot happen for a group, but keep the guard
            return []
    patterns = []

    def rec(assign, k):
        if k == len(free):
            patterns.append(frozenset(c for c, v in zip(free, assign) if not v))
            return
        for v in (True, False):
            assign.append(v)
            good = all(
                ok(assign, t)
                for t in relevant[free[k]]
                if all(cell_pos[c] <= k for c in t[3])
            )
            if good:
                rec(assign, k + 1)
            assign.pop()

    rec([], 0)
    out = []
    for p in sorted(patterns, key=lambda p: (len(p), sorted(p))):
        f = idempotent_weak_cocycle(G, 2, G.order if G.order else 1, p)
        out.append(modification_from_idempotent(f))
    return out


def modification_structure(mod):
    """(units, non_units, nilpotency_class or None, zero_cancellative)."""
    S = mod.semigroup
    e = S.identity
    units = [
        x
        for x in range(S.order)
        if any(S.mul(x, y) == e and S.mul(y, x) == e for y in range(S.order))
    ]
    non_units = [x for x in range(S.order) if x not in units and x != S.zero]
    # is the complement (with 0) a nilpotent ideal?
    ideal = set(non_units) | {S.zero}
    is_ideal = all(
        S.mul(s, x) in ideal and S.mul(x, s) in ideal for x in ideal for s in range(S.order)
    )
    nil_class = None
    if is_ideal:
        power = set(ideal)
        k = 1
        while power != {S.zero} and k <= S.order + 1:
            power = {S.mul(a, b) for a in power for b in ideal}
            k += 1
        if power == {S.zero}:
            nil_class = k
    from .semigroups import predicates

    p = predicates(S)
    return units, non_units, nil_class, p.zero_cancellative


def galois_module_for_modification(mod, q):
    n = mod.base.order
    labeling = {i: i for i in range(n)}
    return galois_units_module(q, n, mod.semigroup, labeling)


def brauer_monoid(q, n, cap=26):
    """The Brauer monoid of GF(q^n)/GF(q) as a semilattice of groups.

    Components are indexed by the modifications of the Galois group
    Z/n; the component of a modification is the degree-2 0-cohomology
    with coefficients in the Galois-twisted unit group.  Links restrict
    cocycles to smaller supports, as for Schur multipliers.
    """
    from .schur import SemilatticeOfGroups

    G = galois_group(n)
    mods = enumerate_modifications(G, cap)
    keys = [m.pattern for m in mods]
    by_key = {m.pattern: m for m in mods}
    results = {}
    modules = {}
    for m in mods:
        M = galois_module_for_modification(m, q)
        modules[m.pattern] = M
        results[m.pattern] = cohomology_group(m.semigroup, M, 2, "zero")
    components = {k: results[k].group for k in keys}
    join = {}
    for k1 in keys:
        for k2 in keys:
            u = k1 | k2
            join[(k1, k2)] = u if u in by_key else None
    # the meet of two modifications (union of zero patterns) is again one
    for (k1, k2), u in join.items():
        if u is None:
            raise AssertionError("zero patterns not closed under union")
    links = {}
    for k1 in keys:
        for k2 in keys:
            if k1 <= k2:  # k2 has more zeros: smaller support
                links[(k1, k2)] = _mod_restriction(by_key[k1], by_key[k2], results, modules)
    sl = SemilatticeOfGroups(keys, join, components, links)
    sl.link_data = {"results": results, "modules": modules, "modifications": by_key}
    bad = sl.check_links_compose()
    if bad is not None:
        raise AssertionError(f"brauer links fail to compose at {bad}")
    return sl


def _mod_restriction(m1, m2, results, modules):
    S1, S2 = m1.semigroup, m2.semigroup
    H1, H2 = results[m1.pattern], results[m2.pattern]
    M2 = modules[m2.pattern]
    cols = []
    for w in H1.witnesses:
        restricted = {t: w.values[t] for t in nerve(S2, 2, "zero")}
        vec = []
        for t in nerve(S2, 2, "zero"):
            vec.extend(restricted[t])
        c = H2.homology.coords(vec)
        if c is None:
            raise AssertionError("restricted cocycle is not a cocycle")
        cols.append(list(c))
    mat = IntMatrix.from_columns(cols, H2.group.rank) if cols else IntMatrix(H2.group.rank, 0)
    hom = GroupHom(H1.group, H2.group, mat)
    if not hom.well_defined():
        raise AssertionError("brauer link not well defined")
    return hom


def weak_cocycle_to_zero_cocycle(f):
    """Restriction of a weak cocycle to the nerve of its support modification.

    Returns (modification, Cochain); the restriction is certified to be
    a 0-cocycle of the modification with Galois-unit coefficients.
    """
    pattern = frozenset(p for p, v in f.values.items() if v is None)
    mod = modification_from_idempotent(idempotent_weak_cocycle(f.group, f.q, f.n, pattern))
    M = galois_module_for_modification(mod, f.q)
    S = mod.semigroup
    values = {}
    for t in nerve(S, 2, "zero"):
        values[t] = (f.value(t[0], t[1]),)
    from .cohomology import Cochain

    c = Cochain(2, values)
    dc = coboundary(M, c, "zero")
    assert all(not any(v) for v in dc.values.values()), "restriction is not a 0-cocycle"
    return mod, c


def zero_cocycle_to_weak_cocycle(mod, q, cochain):
    """Inverse direction: extend a 0-cocycle of a modification by zeros."""
    G = mod.base
    n = G.order
    values = {}
    S = mod.semigroup
    for x in range(n):
        for y in range(n):
            if (x, y) in mod.pattern:
                values[(x, y)] = None
            else:
                values[(x, y)] = cochain.values[(x, y)][0]
    f = WeakCocycle(G, q, n, values)
    assert validate_weak_cocycle(f) is None
    return f


def enumerate_weak_cocycles(q, n, cap=2_000_000):
    """All weak cocycles for GF(q^n)/GF(q), by brute force."""
    G = galois_group(n)
    e = G.identity
    free = [(s, t) for s in range(G.order) for t in range(G.order) if s != e and t != e]
    order = q**n - 1
    choices = [None] + list(range(order))
    total = len(choices) ** len(free)
    if total > cap:
        raise CapExceeded(f"{total} candidates exceed cap")
    out = []
    for combo in product(choices, repeat=len(free)):
        values = {}
        for s in range(G.order):
            for t in range(G.order):
                values[(s, t)] = 0 if (s == e or t == e) else None
        for p, v in zip(free, combo):
            values[p] = v
        f = WeakCocycle(G, q, n, values)
        if validate_weak_cocycle(f) is None:
            out.append(f)
    return out


def weak_cocycles_equivalent(f, g):
    """Same zero set and ratio a twisted coboundary p: G -> units."""
    if f.values.keys() != g.values.keys():
        return False
    zf = {p for p, v in f.values.items() if v is None}
    zg = {p for p, v in g.values.items() if v is None}
    if zf != zg:
        return False
    G = f.group
    order = f.unit_order
    powers = frobenius_power(G)
    e = G.identity
    # search p with p(e) = 0 and g = f * dp, dp(s,t) = s(p(t)) - p(st) + p(s)
    others = [s for s in range(G.order) if s != e]
    for combo in product(range(order), repeat=len(others)):
        p = {e: 0}
        p.update(dict(zip(others, combo)))
        good = True
        for (s, t), v in f.values.items():
            if v is None:
                continue
            tw = (v + _galois_act(f.q, f.n, powers[s], p[t]) - p[G.mul(s, t)] + p[s]) % order
            if tw != g.values[(s, t)] % order:
                good = False
                break
        if good:
            return True
    return False


def brauer_class_count_bridge(q, n):
    """Exhaustive check: weak-cocycle classes with support e biject with
    the elements of H_0^2(G_e, units), for every support pattern e.

    Returns a dict pattern -> (number of classes, |H_0^2|).
    """
    cocycles = enumerate_weak_cocycles(q, n)
    by_pattern = {}
    for f in cocycles:
        pattern = frozenset(p for p, v in f.values.items() if v is None)
        by_pattern.setdefault(pattern, []).append(f)
    out = {}
    for pattern, fs in by_pattern.items():
        classes = []
        for f in fs:
            if not any(weak_cocycles_equivalent(f, rep) for rep in classes):
                classes.append(f)
        mod = modification_from_idempotent(
            idempotent_weak_cocycle(fs[0].group, q, n, pattern)
        )
        M = galois_module_for_modification(mod, q)
        H = cohomology_group(mod.semigroup, M, 2, "zero")
        out[pattern] = (len(classes), H.group.order())
        # cocycle-level bridge: restrictions are 0-cocycles, and pullbacks
        # of 0-cocycles are weak cocycles
        for f in fs:
            weak_cocycle_to_zero_cocycle(f)
    return out
