"""Prime-set structure of irreducible characters: special and factored
characters, maximal factored normal pairs, correspondents over normal
constituents, the nucleus recursion, vertex pairs, and stable characters.

All computations for one (group, prime set) pair live on a `PiContext`,
interned by (element set, effective primes), so repeated queries and the
corpus sweep share every intermediate result.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from .chartable import (
    Character,
    character_table,
    conjugate_character,
    decompose,
    determinant_order,
    induce,
    inner_product,
    restrict,
    trivial_character,
)
from .cyclotomic import CYC_ONE, prime_factors
from .errors import (
    MultipleExtensions,
    MultipleFactorizations,
    NoCorrespondent,
    NoExtension,
    NotSeparable,
)
from .groups import PermGroup, PiSet


def _is_number_over(n: int, primes: frozenset) -> bool:
    return all(p in primes for p in prime_factors(n))


@dataclass(frozen=True)
class Factorization:
    """chi = alpha * beta with alpha special for pi and beta for pi'."""

    alpha: Character
    beta: Character


@dataclass(frozen=True)
class NavarroVertex:
    """A vertex pair (Q, delta): a Hall pi'-subgroup of the nucleus group
    together with the restriction of the pi'-special factor."""

    Q: PermGroup
    delta: Character
    canonical: bool = False

    @property
    def key(self):
        return (self.Q.sort_key, self.delta.sort_key)

    def has_trivial_delta(self) -> bool:
        return all(v == CYC_ONE for v in self.delta.values)

    def has_linear_delta(self) -> bool:
        return self.delta.degree == 1

    def to_json(self):
        return {
            "Q": [list(p.images) for p in self.Q.element_list],
            "delta": self.delta.to_json(),
        }


@dataclass(frozen=True)
class NucleusStep:
    group: PermGroup
    chi: Character
    N: PermGroup
    theta: Character
    T: PermGroup
    psi: Character


@dataclass(frozen=True)
class NucleusTrace:
    steps: tuple
    W: PermGroup
    gamma: Character

    def to_json(self):
        return {
            "steps": [
                {
                    "group_order": s.group.order,
                    "N": [list(p.images) for p in s.N.element_list],
                    "theta": s.theta.to_json(),
                    "T": [list(p.images) for p in s.T.element_list],
                    "psi": s.psi.to_json(),
                }
                for s in self.steps
            ],
            "W": [list(p.images) for p in self.W.element_list],
            "gamma": self.gamma.to_json(),
        }


# -------------------------------------------------- pi-independent group data

_DET_PROFILE: dict = {}


def _det_order_profile(G: PermGroup) -> dict:
    """Per irreducible row: the determinant orders of all constituents of its
    restrictions to subnormal subgroups.  Independent of the prime set."""
    got = _DET_PROFILE.get(G.elements)
    if got is None:
        got = {}
        for chi in character_table(G).rows:
            orders = set()
            for S in G.subnormal_subgroups:
                for theta, _ in decompose(restrict(chi, S)):
                    orders.add(determinant_order(theta))
            got[chi.values] = frozenset(orders)
        _DET_PROFILE[G.elements] = got
    return got


# ----------------------------------------------------------------- the context

_CTX: dict = {}


class PiContext:
    """All prime-set data for one group: special rows, factorizations,
    nuclei, and canonical vertex pairs."""

    def __init__(self, G: PermGroup, eff: frozenset):
        self.G = G
        self.eff = eff
        self.coeff = frozenset(G.primes) - eff
        self.pi = PiSet(eff)
        self._nucleus_cache: dict = {}
        self._vertex_cache: dict = {}
        self._canonical_pair_cache: dict = {}

    @staticmethod
    def get(G: PermGroup, pi: PiSet) -> "PiContext":
        eff = pi.effective(G.order)
        key = (G.elements, eff)
        ctx = _CTX.get(key)
        if ctx is None:
            if not G.is_pi_separable(pi):
                raise NotSeparable(
                    f"{G.name} is not separable for pi = {pi.label()}"
                )
            ctx = PiContext(G, eff)
            _CTX[key] = ctx
        return ctx

    @cached_property
    def table(self):
        return character_table(self.G)

    @property
    def rows(self):
        return self.table.rows

    def _special_set(self, primes: frozenset) -> frozenset:
        profile = _det_order_profile(self.G)
        out = []
        for i, chi in enumerate(self.rows):
            if _is_number_over(chi.degree, primes) and all(
                _is_number_over(o, primes) for o in profile[chi.values]
            ):
                out.append(i)
        return frozenset(out)

    @cached_property
    def pi_special(self) -> frozenset:
        return self._special_set(self.eff)

    @cached_property
    def pi_prime_special(self) -> frozenset:
        return self._special_set(self.coeff)

    @cached_property
    def factorizations(self) -> dict:
        """Row index -> Factorization for every factored irreducible."""
        out: dict = {}
        for a in sorted(self.pi_special):
            alpha = self.rows[a]
            for b in sorted(self.pi_prime_special):
                beta = self.rows[b]
                prod = alpha * beta
                idx = self.table.row_index.get(prod.values)
                if idx is None:
                    continue
                if idx in out:
                    raise MultipleFactorizations(
                        f"row {idx} of {self.G.name} factors twice for pi = {self.pi.label()}"
                    )
                out[idx] = Factorization(alpha, beta)
        return out

    def factorization_of(self, chi: Character):
        return self.factorizations.get(self.table.index_of(chi))

    # ------------------------------------------------------ nucleus machinery

    def max_factored_normal(self, chi: Character):
        """The unique maximal normal subgroup all of whose constituents of the
        restriction are factored, with those constituents in table order."""
        qualifying = []
        for N in self.G.normal_subgroups:
            nctx = PiContext.get(N, self.pi)
            cons = decompose(restrict(chi, N))
            if all(nctx.factorization_of(theta) is not None for theta, _ in cons):
                qualifying.append((N, tuple(theta for theta, _ in cons)))
        maximal = [
            (N, cons)
            for N, cons in qualifying
            if not any(N.elements < M.elements for M, _ in qualifying)
        ]
        assert len(maximal) == 1, "maximal factored normal subgroup is not unique"
        return maximal[0]

    def clifford_correspondent(
        self, chi: Character, N: PermGroup, theta: Character
    ) -> Character:
        G = self.G
        T = G.inertia(N, theta)
        if T is G or T.elements == G.elements:
            return chi
        found = []
        for psi in character_table(T).rows:
            if inner_product(restrict(psi, N), theta) and induce(psi, G) == chi:
                found.append(psi)
        if len(found) != 1:
            raise NoCorrespondent(
                f"{len(found)} correspondents over a normal constituent in {G.name}"
            )
        return found[0]

    def nucleus(self, chi: Character) -> NucleusTrace:
        idx = self.table.index_of(chi)
        got = self._nucleus_cache.get(idx)
        if got is None:
            steps = []
            ctx, xi = self, chi
            while ctx.factorization_of(xi) is None:
                N, cons = ctx.max_factored_normal(xi)
                theta = cons[0]  # deterministic: first in table order
                T = ctx.G.inertia(N, theta)
                assert T.order < ctx.G.order, (
                    "invariant constituent on a proper maximal factored normal"
                )
                psi = ctx.clifford_correspondent(xi, N, theta)
                steps.append(NucleusStep(ctx.G, xi, N, theta, T, psi))
                ctx, xi = PiContext.get(T, self.pi), psi
            got = NucleusTrace(tuple(steps), ctx.G, xi)
            assert induce(got.gamma, self.G) == chi, "nucleus does not induce back"
            self._nucleus_cache[idx] = got
        return got

    def nucleus_variants(self, chi: Character) -> tuple:
        """(W, gamma) endpoints over every admissible constituent choice."""
        if self.factorization_of(chi) is not None:
            return ((self.G, chi),)
        out = []
        N, cons = self.max_factored_normal(chi)
        for theta in cons:
            T = self.G.inertia(N, theta)
            psi = self.clifford_correspondent(chi, N, theta)
            out.extend(PiContext.get(T, self.pi).nucleus_variants(psi))
        return tuple(out)

    # ----------------------------------------------------------- vertex pairs

    def canonical_pair(self, Q: PermGroup, delta: Character) -> NavarroVertex:
        """Minimal (subgroup key, value key) representative of the orbit of
        (Q, delta) under conjugation."""
        ck = (Q.elements, delta.values)
        got = self._canonical_pair_cache.get(ck)
        if got is None:
            G = self.G
            best = None
            for g in G.element_list:
                Qg = G.conjugate_subgroup(Q, g)
                dg = conjugate_character(delta, g, G)
                key = (Qg.sort_key, dg.sort_key)
                if best is None or key < best[0]:
                    best = (key, Qg, dg)
            got = NavarroVertex(best[1], best[2], canonical=True)
            self._canonical_pair_cache[ck] = got
        return got

    def vertex(self, chi: Character) -> NavarroVertex:
        idx = self.table.index_of(chi)
        got = self._vertex_cache.get(idx)
        if got is None:
            trace = self.nucleus(chi)
            wctx = PiContext.get(trace.W, self.pi)
            fac = wctx.factorization_of(trace.gamma)
            assert fac is not None
            Q = trace.W.hall_subgroup(self.pi.prime())
            delta = restrict(fac.beta, Q)
            assert inner_product(delta, delta) == 1, "vertex character not irreducible"
            got = self.canonical_pair(Q, delta)
            self._vertex_cache[idx] = got
        return got

    @cached_property
    def vertices(self) -> tuple:
        return tuple(self.vertex(chi) for chi in self.rows)


# ------------------------------------------------------- module-level wrappers


def is_pi_special(chi: Character, pi: PiSet) -> bool:
    ctx = PiContext.get(chi.group, pi)
    return ctx.table.index_of(chi) in ctx.pi_special


def pi_factorization(chi: Character, pi: PiSet):
    return PiContext.get(chi.group, pi).factorization_of(chi)


def max_factored_normal(chi: Character, pi: PiSet):
    return PiContext.get(chi.group, pi).max_factored_normal(chi)


def clifford_correspondent(chi: Character, N: PermGroup, theta: Character) -> Character:
    G = chi.group
    T = G.inertia(N, theta)
    if T.elements == G.elements:
        return chi
    found = [
        psi
        for psi in character_table(T).rows
        if inner_product(restrict(psi, N), theta) and induce(psi, G) == chi
    ]
    if len(found) != 1:
        raise NoCorrespondent(f"{len(found)} correspondents in {G.name}")
    return found[0]


def normal_nucleus(chi: Character, pi: PiSet):
    trace = PiContext.get(chi.group, pi).nucleus(chi)
    return trace.W, trace.gamma, trace


def navarro_vertex(chi: Character, pi: PiSet) -> NavarroVertex:
    return PiContext.get(chi.group, pi).vertex(chi)


def is_stable(delta: Character, Q: PermGroup, G: PermGroup) -> bool:
    """Constant on intersections of Q with the conjugacy classes of G."""
    per_class: dict = {}
    for x in Q.element_list:
        v = delta.values[Q.class_of[x]]
        c = G.class_of[x]
        if per_class.setdefault(c, v) != v:
            return False
    return True


def unique_cospecial_extension(delta: Character, G: PermGroup, pi: PiSet) -> Character:
    """The unique pi'-special character restricting to `delta` on a Hall
    pi'-subgroup; existence and uniqueness are asserted, not assumed."""
    ctx = PiContext.get(G, pi)
    Q = delta.group
    found = [
        ctx.rows[b]
        for b in sorted(ctx.pi_prime_special)
        if restrict(ctx.rows[b], Q) == delta
    ]
    if not found:
        raise NoExtension(
            f"no pi'-special extension of the given character in {G.name}"
        )
    if len(found) > 1:
        raise MultipleExtensions(
            f"{len(found)} pi'-special extensions in {G.name}"
        )
    return found[0]


def extend_stable_linear(delta: Character, G: PermGroup, pi: PiSet) -> Character:
    Q = delta.group
    if Q.order != pi.prime().pi_part(G.order):
        raise ValueError("subgroup is not a Hall subgroup for the complement set")
    if delta.degree != 1:
        raise ValueError("vertex character must be linear here")
    if not is_stable(delta, Q, G):
        raise ValueError("character is not stable in the ambient group")
    return unique_cospecial_extension(delta, G, pi)


def irr_with_vertex(G: PermGroup, pi: PiSet, Q: PermGroup, delta: Character):
    """All irreducible characters whose vertex pair is conjugate to (Q, delta)."""
    ctx = PiContext.get(G, pi)
    target = ctx.canonical_pair(Q, delta)
    return tuple(
        chi for chi in ctx.rows if ctx.vertex(chi).key == target.key
    )


def pair_conjugator(G: PermGroup, Q1: PermGroup, d1: Character, Q2: PermGroup, d2: Character):
    """Explicit g with (Q1, d1)^g = (Q2, d2), or None."""
    if Q1.order != Q2.order:
        return None
    for g in G.element_list:
        if G.conjugate_subgroup(Q1, g).elements != Q2.elements:
            continue
        if conjugate_character(d1, g, G) == d2:
            return g
    return None
