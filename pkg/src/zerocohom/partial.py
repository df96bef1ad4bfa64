"""Partial projective factor sets of groups, at the factor-set level.

The classifying 25-element monoid-with-zero acts on G x G through

    alpha: (x, y) -> (xy, y^-1)
    beta:  (x, y) -> (y^-1, x^-1)
    gamma: (x, y) -> (x, 1)

and a {0,1}-valued map sigma with sigma(1,1) = 1 is a partial factor set
exactly when its support is closed under the three maps.  General factor
sets are only produced through the Exel-monoid bridge (sigma_from_rho)
or as products of certified ones: no intrinsic axiom set is known for
them, so uncertified raw maps are rejected.
"""

from dataclasses import dataclass, field
from itertools import product

from .abgroups import FinAbGroup
from .catalog import symmetric_group_3
from .errors import CapExceeded, DivisionUndefined, UncertifiedInput
from .presentations import enumerate_presentation, parse_presentation
from .schur import FactorSet, validate_factor_set
from .semigroups import (
    c0s_decompose,
    group_inverses,
    is_ideal,
    is_group,
    isomorphic_semigroups,
    subsemigroup,
    validate_table,
)

T_PRESENTATION = (
    "gens: A B C; "
    "rels: AA=1, BB=1, ABABAB=1, CC=C, AC=C, CABC=CBAB; "
    "zeros: CBC"
)


@dataclass(frozen=True)
class TSemigroupData:
    semigroup: object
    enumerated: object
    unit_indices: tuple
    ideal_indices: tuple
    decomposition: object


def build_t_semigroup():
    """Enumerate the classifying monoid and certify its structure.

    Hard-fails (AssertionError) unless: 25 elements, unit group
    nonabelian of order 6, complement a completely 0-simple ideal whose
    Rees data is a group of order 2 with a 3x3 sandwich matrix.
    """
    E = enumerate_presentation(parse_presentation(T_PRESENTATION), bound=40, mode="monoid")
    from .presentations import EnumeratedSemigroup

    assert isinstance(E, EnumeratedSemigroup), "presentation did not close"
    S = E.semigroup
    assert S.order == 25, f"expected 25 elements, got {S.order}"
    e = S.identity
    units = tuple(
        x
        for x in range(S.order)
        if any(S.mul(x, y) == e and S.mul(y, x) == e for y in range(S.order))
    )
    assert len(units) == 6
    H, _ = subsemigroup(S, units)
    assert is_group(H) and isomorphic_semigroups(H, symmetric_group_3())
    ideal = tuple(x for x in range(S.order) if x not in units)
    assert len(ideal) == 19
    assert is_ideal(S, ideal)
    U, _ = subsemigroup(S, ideal)
    dec = c0s_decompose(U)
    assert dec is not None, "ideal is not completely 0-simple"
    assert dec.group.order == 2
    assert (dec.rows, dec.cols) == (3, 3)
    return TSemigroupData(S, E, units, ideal, dec)


def t_maps(G):
    """The three generating transformations of G x G, on index pairs."""
    inv = group_inverses(G)
    e = G.identity

    def alpha(p):
        x, y = p
        return (G.mul(x, y), inv[y])

    def beta(p):
        x, y = p
        return (inv[y], inv[x])

    def gamma(p):
        x, y = p
        return (x, e)

    return alpha, beta, gamma


def t_closure(G, pairs):
    """Least subset of G x G containing ``pairs`` closed under the maps."""
    maps = t_maps(G)
    seen = set(pairs)
    frontier = list(seen)
    while frontier:
        p = frontier.pop()
        for m in maps:
            q = m(p)
            if q not in seen:
                seen.add(q)
                frontier.append(q)
    return frozenset(seen)


def enumerate_t_subsets(G, cap=22):
    """All closed subsets of G x G, via the invertible-pair orbit digraph.

    alpha and beta act invertibly (both are involutions), so closed
    subsets are unions of <alpha, beta>-orbits that are downward closed
    under gamma-reachability; those order ideals are enumerated over the
    orbit digraph.  Sorted by size then lexicographically.
    """
    alpha, beta, gamma = t_maps(G)
    pairs = [(x, y) for x in range(G.order) for y in range(G.order)]
    orbit_of = {}
    orbits = []
    for p in pairs:
        if p in orbit_of:
            continue
        oid = len(orbits)
        members = {p}
        stack = [p]
        while stack:
            q = stack.pop()
            for m in (alpha, beta):
                r = m(q)
                if r not in members:
                    members.add(r)
                    stack.append(r)
        for q in members:
            orbit_of[q] = oid
        orbits.append(frozenset(members))
    if len(orbits) > cap:
        raise CapExceeded(f"{len(orbits)} orbits exceed cap {cap}")
    # gamma sends orbits to orbits' members; record orbit dependencies
    deps = [set() for _ in orbits]
    for oid, members in enumerate(orbits):
        for q in members:
            deps[oid].add(orbit_of[gamma(q)])
        deps[oid].discard(oid)
    # subset scan over orbits with closure filter; the orbit count is
    # small (capped), so 2^orbits is fine
    n = len(orbits)
    out = []
    for bits in range(2**n):
        chosen = {o for o in range(n) if bits >> o & 1}
        if all(deps[o] <= chosen for o in chosen):
            out.append(frozenset().union(*(orbits[o] for o in chosen)) if chosen else frozenset())
    out = sorted(set(out), key=lambda s: (len(s), sorted(s)))
    return out


@dataclass(frozen=True)
class PFactorSet:
    group: object  # the group G
    coeff: FinAbGroup
    values: dict = field(compare=False)  # (x, y) -> tuple or None
    provenance: str = None  # "idempotent" | "derived" | "product" | "inverse"

    def value(self, x, y):
        return self.values[(x, y)]

    def support(self):
        return frozenset(p for p, v in self.values.items() if v is not None)

    def key(self):
        return tuple(sorted(self.values.items()))

    def __eq__(self, other):
        return (
            isinstance(other, PFactorSet)
            and self.coeff.factors == other.coeff.factors
            and self.key() == other.key()
        )

    def __hash__(self):
        return hash((self.coeff.factors, self.key()))


def is_idempotent_pfactor(G, values):
    """Check the closure law for a {0,1}-valued map with witness.

    ``values`` maps pairs to None (zero) or anything non-None (one).
    Requires sigma(1,1) = 1; then sigma is a factor set iff, whenever
    sigma(x,y) = 1, also sigma(xy, y^-1) = sigma(y^-1, x^-1)
    = sigma(x, 1) = 1.  Returns (True, None) or (False, witness_pair).
    """
    e = G.identity
    if values.get((e, e)) is None:
        return (False, (e, e))
    inv = group_inverses(G)
    for (x, y), v in values.items():
        if v is None:
            continue
        xy = G.mul(x, y)
        for target in ((xy, inv[y]), (inv[y], inv[x]), (x, e)):
            if values.get(target) is None:
                return (False, (x, y))
    return (True, None)


def idempotent_pfactor(G, support, coeff=None):
    """Certified idempotent factor set with the given support."""
    A = coeff if coeff is not None else FinAbGroup([])
    values = {}
    for x in range(G.order):
        for y in range(G.order):
            values[(x, y)] = A.zero() if (x, y) in support else None
    ok, witness = is_idempotent_pfactor(G, values)
    if not ok:
        raise ValueError(f"support is not closed, witness {witness}")
    return PFactorSet(G, A, values, provenance="idempotent")


def cohomological_eq_check(sigma):
    """All triples where the two sides of the cocycle equation differ.

    Returns a list of (triple, lhs, rhs) where each side is a
    coefficient tuple or None; for honest-to-goodness group 2-cocycles
    the list is empty, but partial factor sets may fail at triples whose
    support pattern is mixed.
    """
    G = sigma.group
    A = sigma.coeff
    failures = []
    for x in range(G.order):
        for y in range(G.order):
            v_xy = sigma.value(x, y)
            xy = G.mul(x, y)
            for z in range(G.order):
                lhs = None
                if v_xy is not None and sigma.value(xy, z) is not None:
                    lhs = A.add(v_xy, sigma.value(xy, z))
                yz = G.mul(y, z)
                rhs = None
                if sigma.value(y, z) is not None and sigma.value(x, yz) is not None:
                    rhs = A.add(sigma.value(x, yz), sigma.value(y, z))
                if lhs != rhs:
                    failures.append(((x, y, z), lhs, rhs))
    return failures


@dataclass(frozen=True)
class ExelModel:
    group: object
    elements: tuple  # pairs (frozenset subset, group element)
    semigroup: object
    f_map: tuple  # group element -> semigroup element index
    factorizations: tuple  # element index -> word in group elements


def exel_monoid(G, cap=6):
    """The pair model of the universal partial-homomorphism recipient.

    Carrier: pairs (A, g) with {1, g} <= A <= G and product
    (A, g)(B, h) = (A u gB, gh); the canonical map sends x to
    ({1, x}, x).  Verifies the partial-homomorphism laws, generation by
    the canonical image, and agreement with the abstract presentation.
    """
    if G.order > cap:
        raise CapExceeded(f"|G| = {G.order} exceeds cap {cap}")
    e = G.identity
    subsets = []
    base = [s for s in range(G.order)]
    for bits in range(2 ** G.order):
        sub = frozenset(s for s in base if bits >> s & 1)
        if e in sub:
            subsets.append(sub)
    elements = []
    for sub in subsets:
        for g in sorted(sub):
            elements.append((sub, g))
    elements.sort(key=lambda p: (len(p[0]), sorted(p[0]), p[1]))
    pos = {p: i for i, p in enumerate(elements)}

    def mult(p1, p2):
        (A, g), (B, h) = p1, p2
        return (A | frozenset(G.mul(g, b) for b in B), G.mul(g, h))

    table = [[pos[mult(p1, p2)] for p2 in elements] for p1 in elements]
    names = []
    for sub, g in elements:
        names.append("{%s};%s" % (",".join(G.elements[s] for s in sorted(sub)), G.elements[g]))
    S = validate_table(names, table)
    f_map = tuple(pos[(frozenset({e, x}), x)] for x in range(G.order))
    # factorization of (A, g): f(a1) f(a1^-1) ... f(ak) f(ak^-1) f(g)
    inv = group_inverses(G)
    factorizations = []
    for sub, g in elements:
        word = []
        for a in sorted(sub - {e, g}):
            word.extend([a, inv[a]])
        word.append(g)
        factorizations.append(tuple(word))
    model = ExelModel(G, tuple(elements), S, f_map, tuple(factorizations))
    _verify_exel(model)
    return model


def _verify_exel(model):
    G = model.group
    S = model.semigroup
    f = model.f_map
    inv = group_inverses(G)
    e = G.identity
    for x in range(G.order):
        for y in range(G.order):
            # [x^-1][x][y] = [x^-1][xy]
            lhs = S.mul(S.mul(f[inv[x]], f[x]), f[y])
            rhs = S.mul(f[inv[x]], f[G.mul(x, y)])
            assert lhs == rhs
            # [x][y][y^-1] = [xy][y^-1]
            lhs = S.mul(S.mul(f[x], f[y]), f[inv[y]])
            rhs = S.mul(f[G.mul(x, y)], f[inv[y]])
            assert lhs == rhs
        assert S.mul(f[x], f[e]) == f[x]
        assert S.mul(f[e], f[x]) == f[x]
    # generation and the stored factorizations
    for idx, word in enumerate(model.factorizations):
        acc = f[word[0]]
        for a in word[1:]:
            acc = S.mul(acc, f[a])
        assert acc == idx
    # identity of the monoid is f(e)
    assert S.identity == f[e]


def exel_matches_presentation(G, cap=6):
    """Cross-check the pair model against the abstract presentation."""
    model = exel_monoid(G, cap)
    gens = " ".join(f"x{i}" for i in range(G.order))
    inv = group_inverses(G)
    rels = []
    for x in range(G.order):
        for y in range(G.order):
            rels.append(f"x{inv[x]} x{x} x{y} = x{inv[x]} x{G.mul(x, y)}")
            rels.append(f"x{x} x{y} x{inv[y]} = x{G.mul(x, y)} x{inv[y]}")
        rels.append(f"x{x} x{G.identity} = x{x}")
    text = f"gens: {gens}; rels: " + ", ".join(rels)
    E = enumerate_presentation(parse_presentation(text), bound=len(model.elements) + 4)
    from .presentations import EnumeratedSemigroup

    if not isinstance(E, EnumeratedSemigroup):
        return False
    if E.semigroup.order != len(model.elements):
        return False
    return isomorphic_semigroups(E.semigroup, model.semigroup)


def partial_hom_violations(G, S, phi):
    """Witness (law, x, y) when phi: G -> S breaks a partial-hom law."""
    inv = group_inverses(G)
    e = G.identity
    for x in range(G.order):
        for y in range(G.order):
            if S.mul(S.mul(phi[inv[x]], phi[x]), phi[y]) != S.mul(phi[inv[x]], phi[G.mul(x, y)]):
                return ("left", x, y)
            if S.mul(S.mul(phi[x], phi[y]), phi[inv[y]]) != S.mul(phi[G.mul(x, y)], phi[inv[y]]):
                return ("right", x, y)
        if S.mul(phi[x], phi[e]) != phi[x]:
            return ("identity", x, None)
    return None


def induced_hom(model, S, phi):
    """The unique semigroup hom through the model extending phi, or None.

    phi must be a partial homomorphism G -> S (checked); the result maps
    every model element through its stored factorization and is verified
    to be multiplicative.
    """
    if partial_hom_violations(model.group, S, phi) is not None:
        return None
    T = model.semigroup
    out = []
    for word in model.factorizations:
        acc = phi[word[0]]
        for a in word[1:]:
            acc = S.mul(acc, phi[a])
        out.append(acc)
    for i in range(T.order):
        for j in range(T.order):
            if S.mul(out[i], out[j]) != out[T.mul(i, j)]:
                return None
    return tuple(out)


def sigma_from_rho(model, rho):
    """Group factor set derived from a monoid factor set on the model.

    sigma(x, y) = rho([x], [y]) * rho([x^-1], [x][y]) / rho([x^-1], [xy]),
    zero exactly where rho([x], [y]) vanishes.  The output is certified.
    """
    v = validate_factor_set(rho)
    if v is not None:
        raise ValueError(f"rho is not a factor set: {v}")
    G = model.group
    S = model.semigroup
    f = model.f_map
    inv = group_inverses(G)
    A = rho.group
    values = {}
    for x in range(G.order):
        for y in range(G.order):
            head = rho.value(f[x], f[y])
            if head is None:
                values[(x, y)] = None
                continue
            num = rho.value(f[inv[x]], S.mul(f[x], f[y]))
            den = rho.value(f[inv[x]], f[G.mul(x, y)])
            if den is None or num is None:
                # unreachable for a valid rho: [x][y] = [x]([x^-1][xy])
                # forces both factors nonzero whenever the head is
                raise DivisionUndefined((x, y))
            values[(x, y)] = A.add(head, A.add(num, A.neg(den)))
    return PFactorSet(G, A, values, provenance="derived")


def pfactor_product(s1, s2):
    """Pointwise product of certified factor sets (zero absorbing)."""
    if s1.provenance is None or s2.provenance is None:
        raise UncertifiedInput("refusing to multiply uncertified factor sets")
    assert s1.coeff.factors == s2.coeff.factors
    A = s1.coeff
    values = {}
    for p, v in s1.values.items():
        w = s2.values[p]
        values[p] = None if v is None or w is None else A.add(v, w)
    return PFactorSet(s1.group, A, values, provenance="product")


def pfactor_inverse(sigma):
    """Pointwise inverse on the support (the inverse-semigroup inverse)."""
    if sigma.provenance is None:
        raise UncertifiedInput("refusing to invert an uncertified factor set")
    A = sigma.coeff
    values = {p: (None if v is None else A.neg(v)) for p, v in sigma.values.items()}
    return PFactorSet(sigma.group, A, values, provenance="inverse")


def t_action_relation_report(G):
    """Which defining relations of the classifying monoid hold as
    transformations of G x G (the zero relation has no transformation
    meaning and is reported separately as 'constant').

    Words act by function composition: the rightmost letter applies
    first.
    """
    alpha, beta, gamma = t_maps(G)
    named = {"A": alpha, "B": beta, "C": gamma}

    def word_fn(word):
        def fn(p):
            for ch in reversed(word):
                p = named[ch](p)
            return p

        return fn

    pairs = [(x, y) for x in range(G.order) for y in range(G.order)]

    def equal(w1, w2):
        f1, f2 = word_fn(w1), word_fn(w2)
        return all(f1(p) == f2(p) for p in pairs)

    report = {
        "AA=1": equal("AA", ""),
        "BB=1": equal("BB", ""),
        "ABABAB=1": equal("ABABAB", ""),
        "CC=C": equal("CC", "C"),
        "AC=C": equal("AC", "C"),
        "CABC=CBAB": equal("CABC", "CBAB"),
    }
    e = G.identity
    cbc = word_fn("CBC")
    report["CBC constant"] = all(cbc(p) == (e, e) for p in pairs)
    return report
