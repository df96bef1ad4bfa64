"""Nerves, cochains, the coboundary operator, and cohomology groups.

Three variants share one coboundary formula:

* ``zero``      cochains live on tuples of nonzero elements whose full
                product is nonzero (partially defined cochains);
* ``em``        cochains are totally defined on S^n (classical
                Eilenberg-MacLane semigroup cohomology);
* ``bimodule``  like ``zero`` but the last term of the coboundary acts
                on the right.

The coboundary of f in degree n sends (x_1, ..., x_{n+1}) to

    x_1 f(x_2..x_{n+1}) + sum_i (-1)^i f(.., x_i x_{i+1}, ..)
                        + (-1)^{n+1} f(x_1..x_n)           [* x_{n+1}]

with the degree-0 rule a |-> (x a - a), resp. (x a - a x).
"""

from dataclasses import dataclass
from itertools import product

from .abgroups import FinAbGroup, GroupHom, IntMatrix, complex_homology, finite_invariants_from_orders
from .errors import CapExceeded, DegreeMismatch, InvalidModule, NoZero
from .modules import Bimodule, validate_module

DEGREE_CAP = 4

VARIANTS = ("zero", "em", "bimodule")


def nerve(S, n, variant="zero"):
    """Tuples indexing degree-n cochains, lexicographically ordered.

    Degree 0 is the single empty tuple.  The zero/bimodule nerve keeps
    only tuples of nonzero elements with nonzero full product; the em
    nerve is all of S^n.
    """
    if n < 0:
        raise DegreeMismatch("negative degree")
    if n == 0:
        return [()]
    if variant == "em":
        return [tuple(t) for t in product(range(S.order), repeat=n)]
    if not S.has_zero:
        raise NoZero("zero variant needs a semigroup with zero")
    out = []
    # depth-first in index order builds the nerve lexicographically sorted
    for x in S.nonzero():
        _extend(S, (x,), x, n, out)
    return out


def _extend(S, prefix, prod_so_far, n, out):
    if len(prefix) == n:
        out.append(prefix)
        return
    z = S.zero
    for y in S.nonzero():
        p = S.mul(prod_so_far, y)
        if p != z:
            _extend(S, prefix + (y,), p, n, out)


@dataclass
class Cochain:
    degree: int
    values: dict  # nerve tuple -> coefficient vector (tuple)

    def __eq__(self, other):
        return (
            isinstance(other, Cochain)
            and self.degree == other.degree
            and self.values == other.values
        )


def zero_cochain(S, M, n, variant="zero"):
    zero = M.group.zero()
    return Cochain(n, {t: zero for t in nerve(S, n, variant)})


def cochain_from_vector(S, M, n, variant, vec):
    tuples = nerve(S, n, variant)
    k = M.group.rank
    values = {}
    for idx, t in enumerate(tuples):
        values[t] = M.group.reduce(vec[idx * k : (idx + 1) * k])
    return Cochain(n, values)


def cochain_vector(S, M, f, variant):
    tuples = nerve(S, f.degree, variant)
    out = []
    for t in tuples:
        out.extend(M.group.reduce(f.values[t]))
    return out


def random_cochain(rng, S, M, n, variant="zero"):
    values = {}
    for t in nerve(S, n, variant):
        values[t] = M.group.reduce([rng.randrange(-5, 6) for _ in range(M.group.rank)])
    return Cochain(n, values)


def coboundary(M, f, variant="zero"):
    """The coboundary cochain of f (degree goes up by one)."""
    S = M.semigroup
    n = f.degree
    A = M.group
    expected = set(nerve(S, n, variant))
    if set(f.values) != expected:
        raise DegreeMismatch("cochain domain does not match the degree-%d nerve" % n)
    bimod = variant == "bimodule"
    nerve_variant = "em" if variant == "em" else "zero"
    out = {}
    for t in nerve(S, n + 1, nerve_variant):
        acc = list(M.act(t[0], f.values[t[1:]]))
        sign = -1
        for i in range(n):
            merged = t[:i] + (S.mul(t[i], t[i + 1]),) + t[i + 2 :]
            v = f.values[merged]
            for r in range(A.rank):
                acc[r] += sign * v[r]
            sign = -sign
        last = f.values[t[:-1]]
        if bimod:
            last = M.act_right(last, t[-1])
        for r in range(A.rank):
            acc[r] += sign * last[r]
        out[t] = A.reduce(acc)
    return Cochain(n + 1, out)


def _cochain_group(A, count):
    return FinAbGroup(A.factors * count)


def coboundary_hom(S, M, n, variant="zero"):
    """The coboundary in degree n as a GroupHom between cochain groups."""
    nerve_variant = "em" if variant == "em" else "zero"
    src_tuples = nerve(S, n, nerve_variant)
    dst_tuples = nerve(S, n + 1, nerve_variant)
    A = M.group
    k = A.rank
    src = _cochain_group(A, len(src_tuples))
    dst = _cochain_group(A, len(dst_tuples))
    if src.rank * max(dst.rank, 1) > 4_000_000:
        raise CapExceeded("coboundary matrix too large")
    pos = {t: i for i, t in enumerate(src_tuples)}
    mat = IntMatrix(dst.rank, src.rank)
    bimod = variant == "bimodule"
    for di, t in enumerate(dst_tuples):
        # first term
        rest = t[1:]
        if rest in pos:
            act = M.matrix(t[0])
            base = pos[rest] * k
            for r in range(k):
                row = mat.a[di * k + r]
                for c in range(k):
                    row[base + c] += act.a[r][c]
        sign = -1
        for i in range(n):
            merged = t[:i] + (S.mul(t[i], t[i + 1]),) + t[i + 2 :]
            if merged in pos:
                base = pos[merged] * k
                for r in range(k):
                    mat.a[di * k + r][base + r] += sign
            sign = -sign
        head = t[:-1]
        if head in pos:
            base = pos[head] * k
            if bimod:
                act = M.right[t[-1]]
                for r in range(k):
                    row = mat.a[di * k + r]
                    for c in range(k):
                        row[base + c] += sign * act.a[r][c]
            else:
                for r in range(k):
                    mat.a[di * k + r][base + r] += sign
    return GroupHom(src, dst, mat)


@dataclass
class CohomologyResult:
    group: FinAbGroup
    witnesses: list  # cocycle representatives of the generators
    homology: object
    tuples: list
    variant: str

    def coords(self, f, S, M):
        vec = cochain_vector(S, M, f, "em" if self.variant == "em" else "zero")
        return self.homology.coords(vec)


def _check_module_for_variant(S, M, variant):
    if variant == "bimodule":
        if not isinstance(M, Bimodule):
            raise InvalidModule(None, "bimodule variant needs a Bimodule")
    elif isinstance(M, Bimodule):
        raise InvalidModule(None, "one-sided variant got a Bimodule")
    v = validate_module(M)
    if v:
        raise InvalidModule(v.witness, f"module axioms violated ({v.kind})")
    domain = M.left.keys() if isinstance(M, Bimodule) else M.action.keys()
    if variant == "em":
        need = set(range(S.order))
    else:
        need = set(S.nonzero())
    if not need <= set(domain):
        raise InvalidModule(sorted(need - set(domain)), "action domain too small")


def cohomology_group(S, M, n, variant="zero"):
    """H^n as an invariant-factor group plus witness cocycles.

    ``zero``: H_0^n of a semigroup with zero; ``em``: classical
    cohomology on totally defined cochains; ``bimodule``: two-sided
    version of the zero variant.
    """
    if variant not in VARIANTS:
        raise ValueError(f"unknown variant {variant!r}")
    if n > DEGREE_CAP:
        raise CapExceeded(f"degree {n} exceeds cap {DEGREE_CAP}")
    if n < 0:
        raise DegreeMismatch("negative degree")
    _check_module_for_variant(S, M, variant)
    d_out = coboundary_hom(S, M, n, variant)
    if n == 0:
        d_in = GroupHom(FinAbGroup(()), d_out.source, IntMatrix(d_out.source.rank, 0))
    else:
        d_in = coboundary_hom(S, M, n - 1, variant)
    H = complex_homology(d_in, d_out)
    nerve_variant = "em" if variant == "em" else "zero"
    tuples = nerve(S, n, nerve_variant)
    witnesses = [
        cochain_from_vector(S, M, n, nerve_variant, w) for w in H.witnesses
    ]
    return CohomologyResult(H.group, witnesses, H, tuples, variant)


def witness_report(S, M, f, variant="zero"):
    """Certify a cochain: cocycle? coboundary? (with an integer preimage)."""
    _check_module_for_variant(S, M, variant)
    n = f.degree
    nerve_variant = "em" if variant == "em" else "zero"
    df = coboundary(M, f, variant)
    is_cocycle = all(not any(v) for v in df.values.values())
    d_prev = coboundary_hom(S, M, n - 1, variant) if n >= 1 else None
    preimage = None
    is_coboundary = False
    if n == 0:
        is_coboundary = not any(any(v) for v in f.values.values())
    else:
        from .abgroups import solve_mod

        target_vec = cochain_vector(S, M, f, nerve_variant)
        x = solve_mod(d_prev.matrix, target_vec, d_prev.target.factors)
        if x is not None:
            is_coboundary = True
            preimage = cochain_from_vector(S, M, n - 1, nerve_variant, x)
    return {
        "is_cocycle": is_cocycle,
        "is_coboundary": is_coboundary,
        "preimage": preimage,
    }


def brute_cohomology(S, M, n, variant="zero", cap=2_000_000):
    """Oracle twin: enumerate all cochains, filter cocycles, count cosets.

    Only for finite coefficient groups and small nerves; raises
    CapExceeded when |A|^(nerve size) blows past ``cap``.
    """
    _check_module_for_variant(S, M, variant)
    A = M.group
    if A.order() is None:
        raise CapExceeded("brute force needs finite coefficients")
    nerve_variant = "em" if variant == "em" else "zero"
    tuples = nerve(S, n, nerve_variant)
    total = A.order() ** len(tuples)
    if total > cap:
        raise CapExceeded(f"{total} cochains exceed cap {cap}")
    elements = A.elements()

    def all_cochains(deg):
        ts = nerve(S, deg, nerve_variant)
        for combo in product(elements, repeat=len(ts)):
            yield Cochain(deg, dict(zip(ts, combo)))

    cocycles = []
    for f in all_cochains(n):
        df = coboundary(M, f, variant)
        if all(not any(v) for v in df.values.values()):
            cocycles.append(tuple(sorted(f.values.items())))
    if n == 0:
        boundaries = {tuple(sorted(zero_cochain(S, M, n, nerve_variant).values.items()))}
    else:
        prev_total = A.order() ** len(nerve(S, n - 1, nerve_variant))
        if prev_total > cap:
            raise CapExceeded("too many lower cochains for the oracle")
        boundaries = set()
        for g in all_cochains(n - 1):
            dg = coboundary(M, g, variant)
            boundaries.add(tuple(sorted(dg.values.items())))
    # quotient Z/B by brute coset bucketing
    keys = {}
    reps = []
    tuple_order = sorted(tuples)

    def add_cochains(c1, c2):
        d1, d2 = dict(c1), dict(c2)
        return tuple(sorted((t, A.add(d1[t], d2[t])) for t in tuple_order))

    for zc in cocycles:
        if zc in keys:
            continue
        cid = len(reps)
        for b in boundaries:
            keys[add_cochains(zc, b)] = cid
        reps.append(zc)

    def add(c1, c2):
        return keys[add_cochains(reps[c1], reps[c2])]

    zero_key = keys[tuple(sorted(zero_cochain(S, M, n, nerve_variant).values.items()))]
    inv = finite_invariants_from_orders(list(range(len(reps))), add, zero_key)
    return FinAbGroup(inv)
