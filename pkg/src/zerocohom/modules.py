"""Coefficient structures: 0-modules, bimodules, and stock constructors.

A module stores one endomorphism matrix per semigroup element in its
action domain.  For a semigroup with zero the domain of a 0-module is
the nonzero part; a module whose domain covers the whole semigroup
(including an absorbing zero, when present) can also serve as a
coefficient module for totally-defined cochains.
"""

from dataclasses import dataclass, field

from .abgroups import FinAbGroup, GroupHom, IntMatrix, SubgroupPresentation
from .errors import InvalidLabeling, InvalidModule, NotIdempotent
from .semigroups import subsemigroup


@dataclass(frozen=True)
class ZeroModule:
    semigroup: object
    group: FinAbGroup
    action: dict = field(compare=False)

    def act(self, s, vec):
        return self.group.reduce(self.action[s].vec(list(vec)))

    def matrix(self, s):
        return self.action[s]


@dataclass(frozen=True)
class Bimodule:
    semigroup: object
    group: FinAbGroup
    left: dict = field(compare=False)
    right: dict = field(compare=False)

    def act(self, s, vec):
        return self.group.reduce(self.left[s].vec(list(vec)))

    def act_right(self, vec, s):
        return self.group.reduce(self.right[s].vec(list(vec)))

    def matrix(self, s):
        return self.left[s]


@dataclass(frozen=True)
class ModuleViolation:
    kind: str
    witness: object

    def __bool__(self):  # truthy = there IS a violation
        return True


def _endo_defined(group, M):
    k = group.rank
    if M.m != k or M.n != k:
        return False
    for j, d in enumerate(group.factors):
        if d:
            img = group.reduce([d * M.a[i][j] for i in range(k)])
            if any(img):
                return False
    return True


def _check_action(S, group, action, domain, opposite=False):
    for s in domain:
        if s not in action:
            return ModuleViolation("missing", s)
        if not _endo_defined(group, action[s]):
            return ModuleViolation("endomorphism", s)
    z = S.zero
    for s in domain:
        for t in domain:
            st = S.table[t][s] if opposite else S.table[s][t]
            if st == z and z is not None:
                continue
            if st not in domain:
                continue
            left = action[s].mul(action[t])
            want = action[st]
            k = group.rank
            for j in range(k):
                col = group.reduce([left.a[i][j] for i in range(k)])
                wcol = group.reduce([want.a[i][j] for i in range(k)])
                if col != wcol:
                    return ModuleViolation("composition", (s, t))
    return None


def validate_module(M):
    """None when all module axioms hold, else a ModuleViolation witness.

    ZeroModule: action(s)action(t) = action(st) whenever st != 0, on the
    stored action domain.  Bimodule: both one-sided laws (the right one
    against the opposite semigroup) plus commuting of the two actions.
    """
    S = M.semigroup
    if isinstance(M, Bimodule):
        domain = sorted(M.left)
        v = _check_action(S, M.group, M.left, domain)
        if v:
            return v
        v = _check_action(S, M.group, M.right, sorted(M.right), opposite=True)
        if v:
            return ModuleViolation("right-" + v.kind, v.witness)
        for s in domain:
            for t in domain:
                lr = M.left[s].mul(M.right[t])
                rl = M.right[t].mul(M.left[s])
                k = M.group.rank
                for j in range(k):
                    if M.group.reduce([lr.a[i][j] for i in range(k)]) != M.group.reduce(
                        [rl.a[i][j] for i in range(k)]
                    ):
                        return ModuleViolation("compatibility", (s, t))
        return None
    return _check_action(S, M.group, M.action, sorted(M.action))


def ensure_valid(M):
    v = validate_module(M)
    if v:
        raise InvalidModule(v.witness, f"module axioms violated ({v.kind})")
    return M


def trivial_module(S, group):
    """Every element acts as the identity (covers all of S, zero included)."""
    I = IntMatrix.identity(group.rank)
    return ZeroModule(S, group, {s: I for s in range(S.order)})


def trivial_bimodule(S, group):
    I = IntMatrix.identity(group.rank)
    domain = S.nonzero() if S.has_zero else range(S.order)
    return Bimodule(S, group, {s: I for s in domain}, {s: I for s in domain})


def scalar_module(S, group, scalars):
    """Element s acts by the integer scalar scalars[s]."""
    action = {}
    k = group.rank
    for s, c in scalars.items():
        M = IntMatrix(k, k)
        for i in range(k):
            M.a[i][i] = c
        action[s] = M
    return ZeroModule(S, group, action)


def galois_units_module(q, n, S, labeling):
    """Unit group of the degree-n extension of GF(q) as a 0-module.

    The coefficient group is Z/(q^n - 1), written additively as
    exponents of a fixed generator; an element labeled k acts by the
    k-th Frobenius iterate, i.e. multiplication by q^k.  The labeling
    must be additive on nonzero products (mod n).
    """
    order = q**n - 1
    A = FinAbGroup([order])
    z = S.zero
    domain = S.nonzero() if S.has_zero else list(range(S.order))
    for s in domain:
        if s not in labeling:
            raise InvalidLabeling(f"element {s} unlabeled")
    for s in domain:
        for t in domain:
            st = S.table[s][t]
            if st != z and (labeling[s] + labeling[t] - labeling[st]) % n != 0:
                raise InvalidLabeling(f"labeling not additive at ({s}, {t})")
    action = {s: IntMatrix(1, 1, [[pow(q, labeling[s] % n, order)]]) for s in domain}
    return ZeroModule(S, A, action)


def corner_module(M, e, restrict_to=None):
    """The submodule e*A with actions restricted, over a subsemigroup.

    ``e`` must be idempotent; ``restrict_to`` (default: the whole action
    domain) must be closed under multiplication and satisfy
    x * eA <= eA for all its elements.
    """
    S = M.semigroup
    if S.table[e][e] != e:
        raise NotIdempotent(f"element {e} is not idempotent")
    domain = sorted(M.action) if restrict_to is None else sorted(restrict_to)
    pe = M.matrix(e)
    gens = [pe.col(j) for j in range(M.group.rank)]
    sub = SubgroupPresentation(M.group, gens)
    eA = sub.group
    if restrict_to is None:
        newS = S
        mapping = {s: s for s in domain}
    else:
        newS, mapping = subsemigroup(S, domain)
    action = {}
    for s in domain:
        cols = []
        for j in range(eA.rank):
            v = sub.embed(tuple(1 if i == j else 0 for i in range(eA.rank)))
            img = M.act(s, v)
            c = sub.express(img)
            if c is None:
                raise InvalidModule((s, e), "action does not preserve the corner")
            cols.append(list(c))
        action[mapping[s]] = IntMatrix.from_columns(cols, eA.rank) if cols else IntMatrix(0, 0)
    return ZeroModule(newS, eA, action), sub


def restrict_module(M, indices):
    """Module over the subsemigroup on ``indices``, same coefficient group."""
    newS, mapping = subsemigroup(M.semigroup, indices)
    action = {mapping[s]: M.matrix(s) for s in indices}
    return ZeroModule(newS, M.group, action)


def module_hom_from_action(M, s):
    """The endomorphism of the coefficient group given by one element."""
    return GroupHom(M.group, M.group, M.matrix(s))
