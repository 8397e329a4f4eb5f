"""Finite permutation groups: closure, conjugacy classes, subgroup lattice,
normal structure, Hall subgroups, and prime-set machinery on elements.

Groups are interned by their element set, so any two references to the same
set of permutations share one object and all of its caches.  All caches are
filled once and never mutated afterwards; concurrent readers are safe.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property
from math import lcm
from pathlib import Path

from .cyclotomic import prime_factors
from .errors import (
    InputError,
    LatticeCapExceeded,
    NotNormal,
    NotSeparable,
    OrderCapExceeded,
)
from .perms import Permutation, identity

DEFAULT_ORDER_CAP = 5000
DEFAULT_SUBGROUP_CAP = 50000


# ---------------------------------------------------------------------- PiSet


@dataclass(frozen=True)
class PiSet:
    """A set of primes, given explicitly or as the complement of one set.

    The effective set at a use site is always intersected with the primes
    dividing the group order; the complementary set is taken relative to
    those primes as well.
    """

    primes: frozenset
    complement: bool = False

    @staticmethod
    def of(*ps: int) -> "PiSet":
        return PiSet(frozenset(ps), False)

    @staticmethod
    def complement_of(*ps: int) -> "PiSet":
        return PiSet(frozenset(ps), True)

    def contains(self, p: int) -> bool:
        return (p in self.primes) != self.complement

    def is_pi_number(self, n: int) -> bool:
        return all(self.contains(p) for p in prime_factors(n))

    def prime(self) -> "PiSet":
        """The complementary prime set."""
        return PiSet(self.primes, not self.complement)

    def effective(self, order: int) -> frozenset:
        return frozenset(p for p in prime_factors(order) if self.contains(p))

    def pi_part(self, n: int) -> int:
        part = 1
        for p in prime_factors(n):
            if self.contains(p):
                while n % p == 0:
                    part *= p
                    n //= p
        return part

    def label(self) -> str:
        ps = ",".join(str(p) for p in sorted(self.primes))
        return f"{{{ps}}}'" if self.complement else f"{{{ps}}}"

    def to_json(self):
        return {"primes": sorted(self.primes), "complement": self.complement}

    @staticmethod
    def from_json(obj) -> "PiSet":
        if isinstance(obj, list):
            return PiSet(frozenset(obj), False)
        return PiSet(frozenset(obj["primes"]), bool(obj.get("complement", False)))


def is_pi_element(x: Permutation, pi: PiSet) -> bool:
    return pi.is_pi_number(x.order())


def pi_parts(x: Permutation, pi: PiSet) -> tuple[Permutation, Permutation]:
    """The unique commuting decomposition x = x_pi * x_pi' into coprime parts."""
    o = x.order()
    a = pi.pi_part(o)
    b = o // a
    # s = 1 mod a, 0 mod b picks out the pi-part as a power of x
    s = b * pow(b, -1, a) if a > 1 else 0
    return x**s, x ** ((1 - s) % o)


# ----------------------------------------------------------- conjugacy classes


@dataclass(frozen=True)
class ConjugacyClass:
    representative: Permutation
    members: frozenset
    order: int

    @property
    def size(self) -> int:
        return len(self.members)


# ------------------------------------------------------------------ the group

_INTERN: dict[frozenset, "PermGroup"] = {}


class PermGroup:
    """A finite permutation group given by its full element set.

    Instances are interned by element set: use `group_from_elements`,
    `close_generators`, or `PermGroup.subgroup` rather than the constructor.
    """

    def __init__(self, elements: frozenset, name: str | None = None, gens=None):
        self.elements = elements
        self.degree = next(iter(elements)).degree
        self.name = name or f"group-of-order-{len(elements)}"
        self._given_gens = tuple(gens) if gens else None
        self._normalizer_cache: dict = {}
        self._inertia_cache: dict = {}
        self._orbit_cache: dict = {}
        self._fusion_cache: dict = {}
        self._decompose_cache: dict = {}
        self._det_order_cache: dict = {}

    # --------------------------------------------------------- identity basics

    @property
    def order(self) -> int:
        return len(self.elements)

    @cached_property
    def identity(self) -> Permutation:
        return identity(self.degree)

    @cached_property
    def element_list(self) -> tuple[Permutation, ...]:
        return tuple(sorted(self.elements))

    @cached_property
    def sort_key(self) -> tuple:
        return tuple(p.images for p in self.element_list)

    @cached_property
    def generators(self) -> tuple[Permutation, ...]:
        if self._given_gens:
            return self._given_gens
        if self.order == 1:
            return ()
        gens: list[Permutation] = []
        closed = {self.identity}
        for x in self.element_list:
            if x not in closed:
                gens.append(x)
                closed = _closure(closed | {x}, gens)
                if len(closed) == self.order:
                    break
        return tuple(gens)

    def __contains__(self, x: Permutation) -> bool:
        return x in self.elements

    def __le__(self, other: "PermGroup") -> bool:
        return self.elements <= other.elements

    def __lt__(self, other: "PermGroup") -> bool:
        return self.elements < other.elements

    def __repr__(self) -> str:
        return f"<{self.name}: order {self.order}, degree {self.degree}>"

    def subgroup(self, elements, name: str | None = None) -> "PermGroup":
        elements = frozenset(elements)
        return group_from_elements(elements, name=name)

    @cached_property
    def trivial_subgroup(self) -> "PermGroup":
        return self.subgroup({self.identity}, name="1")

    @cached_property
    def exponent(self) -> int:
        return lcm(*(c.order for c in self.classes))

    @cached_property
    def primes(self) -> tuple[int, ...]:
        return prime_factors(self.order)

    @cached_property
    def is_abelian(self) -> bool:
        gens = self.generators
        return all(a * b == b * a for a in gens for b in gens)

    # ------------------------------------------------------- conjugacy classes

    @cached_property
    def classes(self) -> tuple[ConjugacyClass, ...]:
        gens = self.generators or (self.identity,)
        unseen = set(self.elements)
        raw = []
        while unseen:
            rep = min(unseen)
            orbit = {rep}
            frontier = [rep]
            while frontier:
                x = frontier.pop()
                for g in gens:
                    y = x.conjugated_by(g)
                    if y not in orbit:
                        orbit.add(y)
                        frontier.append(y)
            unseen -= orbit
            raw.append(ConjugacyClass(min(orbit), frozenset(orbit), rep.order()))
        raw.sort(key=lambda c: (c.order, c.size, c.representative.images))
        return tuple(raw)

    @cached_property
    def class_of(self) -> dict:
        out = {}
        for i, c in enumerate(self.classes):
            for x in c.members:
                out[x] = i
        return out

    @cached_property
    def class_reps(self) -> tuple[Permutation, ...]:
        return tuple(c.representative for c in self.classes)

    @cached_property
    def inverse_class(self) -> tuple[int, ...]:
        return tuple(self.class_of[c.representative.inverse()] for c in self.classes)

    @cached_property
    def _power_classes(self) -> list[dict]:
        return [dict() for _ in self.classes]

    def power_class(self, class_index: int, t: int) -> int:
        """Class index of g^t for g in the given class."""
        cache = self._power_classes[class_index]
        got = cache.get(t)
        if got is None:
            got = self.class_of[self.classes[class_index].representative ** t]
            cache[t] = got
        return got

    # --------------------------------------------------------------- subgroups

    def normalizer(self, H: "PermGroup") -> "PermGroup":
        got = self._normalizer_cache.get(H.elements)
        if got is None:
            hgens = H.generators
            hset = H.elements
            members = [
                g
                for g in self.element_list
                if all(h.conjugated_by(g) in hset for h in hgens)
            ]
            got = self.subgroup(members)
            self._normalizer_cache[H.elements] = got
        return got

    def is_normal(self, H: "PermGroup") -> bool:
        hset = H.elements
        return all(h.conjugated_by(g) in hset for h in H.generators for g in self.generators)

    def conjugate_subgroup(self, H: "PermGroup", g: Permutation) -> "PermGroup":
        ginv = g.inverse()
        return self.subgroup(frozenset(ginv * h * g for h in H.elements))

    def subgroup_orbit(self, H: "PermGroup") -> tuple["PermGroup", ...]:
        """All G-conjugates of H, sorted by canonical key."""
        got = self._orbit_cache.get(H.elements)
        if got is None:
            seen = {H.elements: H}
            frontier = [H]
            while frontier:
                K = frontier.pop()
                for g in self.generators:
                    Kg = self.conjugate_subgroup(K, g)
                    if Kg.elements not in seen:
                        seen[Kg.elements] = Kg
                        frontier.append(Kg)
            got = tuple(sorted(seen.values(), key=lambda S: S.sort_key))
            for S in got:
                self._orbit_cache[S.elements] = got
        return got

    def canonical_subgroup(self, H: "PermGroup") -> "PermGroup":
        """The minimal-key member of the G-conjugacy class of H."""
        return self.subgroup_orbit(H)[0]

    def subgroup_conjugator(self, H: "PermGroup", K: "PermGroup") -> Permutation | None:
        """Some g with H^g = K, or None."""
        if H.order != K.order:
            return None
        for g in self.element_list:
            if self.conjugate_subgroup(H, g).elements == K.elements:
                return g
        return None

    def _lattice(self, cap: int) -> tuple["PermGroup", ...]:
        """All subgroups via extension of normal chains by prime-order cosets.

        The extension step reaches every solvable subgroup; the whole group is
        always included, so the list is complete whenever every proper
        subgroup is solvable (true for the supported corpus).
        """
        triv = self.trivial_subgroup
        found: dict[frozenset, PermGroup] = {triv.elements: triv}
        frontier = [triv]
        while frontier:
            fresh = []
            for H in frontier:
                N = self.normalizer(H)
                hset = H.elements
                for g in N.element_list:
                    if g in hset:
                        continue
                    t, power = 1, g
                    while power not in hset:
                        t += 1
                        power = power * g
                    if prime_factors(t) != (t,):
                        continue  # extend by prime-index cosets only
                    kelems = set(hset)
                    coset = hset
                    for _ in range(t - 1):
                        coset = frozenset(x * g for x in coset)
                        kelems |= coset
                    kf = frozenset(kelems)
                    if kf not in found:
                        K = self.subgroup(kf)
                        found[kf] = K
                        fresh.append(K)
                        if len(found) > cap:
                            raise LatticeCapExceeded(
                                f"more than {cap} subgroups in {self.name}"
                            )
            frontier = fresh
        if self.elements not in found:
            found[self.elements] = self
        return tuple(sorted(found.values(), key=lambda S: (S.order, S.sort_key)))

    @cached_property
    def subgroups(self) -> tuple["PermGroup", ...]:
        return self._lattice(DEFAULT_SUBGROUP_CAP)

    @cached_property
    def subgroup_classes(self) -> tuple[tuple["PermGroup", ...], ...]:
        """Conjugacy classes of subgroups, each sorted, reps first."""
        seen = set()
        out = []
        for H in self.subgroups:
            if H.elements in seen:
                continue
            orbit = self.subgroup_orbit(H)
            seen.update(S.elements for S in orbit)
            out.append(orbit)
        return tuple(out)

    @cached_property
    def subgroup_class_reps(self) -> tuple["PermGroup", ...]:
        return tuple(orbit[0] for orbit in self.subgroup_classes)

    # --------------------------------------------------------- normal structure

    @cached_property
    def normal_subgroups(self) -> tuple["PermGroup", ...]:
        return tuple(H for H in self.subgroups if self.is_normal(H))

    @cached_property
    def chief_series(self) -> tuple["PermGroup", ...]:
        """A maximal chain of normal subgroups, chosen deterministically."""
        chain = [self.trivial_subgroup]
        normals = self.normal_subgroups
        while chain[-1].elements != self.elements:
            cur = chain[-1].elements
            ups = [N for N in normals if cur < N.elements]
            minimal = [
                N
                for N in ups
                if not any(cur < M.elements < N.elements for M in ups)
            ]
            chain.append(min(minimal, key=lambda S: S.sort_key))
        return tuple(chain)

    @cached_property
    def subnormal_subgroups(self) -> tuple["PermGroup", ...]:
        """Closure of the normality relation over the subgroup lattice."""
        layer = {self.elements: self}
        seen = dict(layer)
        while layer:
            nxt = {}
            for T in layer.values():
                for S in self.subgroups:
                    if (
                        S.elements not in seen
                        and S.elements < T.elements
                        and T.is_normal(S)
                    ):
                        nxt[S.elements] = S
            seen.update(nxt)
            layer = nxt
        return tuple(sorted(seen.values(), key=lambda S: (S.order, S.sort_key)))

    @cached_property
    def derived_subgroup(self) -> "PermGroup":
        comms = {
            a * b * a.inverse() * b.inverse()
            for a in self.element_list
            for b in self.element_list
        }
        return self.subgroup(_closure({self.identity} | comms, tuple(comms)))

    @cached_property
    def is_nilpotent(self) -> bool:
        # nilpotent iff every Sylow subgroup is normal
        orders = {H.order for H in self.normal_subgroups}
        return all(PiSet.of(p).pi_part(self.order) in orders for p in self.primes)

    # ------------------------------------------------------------ pi machinery

    def is_pi_separable(self, pi: PiSet) -> bool:
        series = self.chief_series
        for below, above in zip(series, series[1:]):
            factor = above.order // below.order
            if not (pi.is_pi_number(factor) or pi.prime().is_pi_number(factor)):
                return False
        return True

    def hall_subgroups(self, pi: PiSet) -> tuple["PermGroup", ...]:
        if not self.is_pi_separable(pi):
            raise NotSeparable(f"{self.name} is not {pi.label()}-separable")
        target = pi.pi_part(self.order)
        return tuple(H for H in self.subgroups if H.order == target)

    def hall_subgroup(self, pi: PiSet) -> "PermGroup":
        """Deterministic representative; all members are conjugate."""
        halls = self.hall_subgroups(pi)
        return min(halls, key=lambda S: S.sort_key)

    # ----------------------------------------------------------- inertia groups

    def inertia(self, N: "PermGroup", theta) -> "PermGroup":
        """Stabilizer of the class function theta on normal N under conjugation."""
        if not self.is_normal(N):
            raise NotNormal(f"{N.name} is not normal in {self.name}")
        key = (N.elements, theta.values)
        got = self._inertia_cache.get(key)
        if got is None:
            reps = N.class_reps
            cls = N.class_of
            vals = theta.values
            members = []
            for g in self.element_list:
                ginv = g.inverse()
                if all(
                    vals[cls[g * r * ginv]] == vals[i] for i, r in enumerate(reps)
                ):
                    members.append(g)
            got = self.subgroup(members)
            self._inertia_cache[key] = got
        return got


def _closure(start: set, gens: tuple) -> frozenset:
    els = set(start)
    frontier = list(els)
    while frontier:
        nxt = []
        for a in gens:
            for b in frontier:
                c = a * b
                if c not in els:
                    els.add(c)
                    nxt.append(c)
        frontier = nxt
    return frozenset(els)


def group_from_elements(elements, name: str | None = None, gens=None) -> PermGroup:
    elements = frozenset(elements)
    if not elements:
        raise InputError("a group needs at least the identity element")
    got = _INTERN.get(elements)
    if got is None:
        got = PermGroup(elements, name=name, gens=gens)
        _INTERN[elements] = got
    return got


def close_generators(
    gens, cap: int = DEFAULT_ORDER_CAP, name: str | None = None
) -> PermGroup:
    """Enumerate the group generated by `gens`, failing fast past `cap`."""
    gens = [g if isinstance(g, Permutation) else Permutation(g) for g in gens]
    degrees = {g.degree for g in gens}
    if len(degrees) > 1:
        raise InputError(f"generators of mixed degree: {sorted(degrees)}")
    if not gens:
        return trivial_group(1, name=name or "1")
    els = {identity(gens[0].degree)}
    frontier = list(els)
    while frontier:
        nxt = []
        for b in frontier:
            for a in gens:
                c = a * b
                if c not in els:
                    if len(els) >= cap:
                        raise OrderCapExceeded(f"group order exceeds cap {cap}")
                    els.add(c)
                    nxt.append(c)
        frontier = nxt
    return group_from_elements(els, name=name, gens=tuple(gens))


def trivial_group(degree: int = 1, name: str = "1") -> PermGroup:
    return group_from_elements({identity(degree)}, name=name)


# ------------------------------------------------------- module-level wrappers


def conjugacy_classes(G: PermGroup) -> tuple[ConjugacyClass, ...]:
    return G.classes


def subgroup_lattice(G: PermGroup, cap: int | None = None) -> tuple[PermGroup, ...]:
    if cap is not None and cap != DEFAULT_SUBGROUP_CAP:
        return G._lattice(cap)
    return G.subgroups


def normal_structure(G: PermGroup) -> tuple[tuple[PermGroup, ...], tuple[PermGroup, ...]]:
    return G.normal_subgroups, G.chief_series


def is_pi_separable(G: PermGroup, pi: PiSet) -> bool:
    return G.is_pi_separable(pi)


def hall_subgroup(G: PermGroup, pi: PiSet) -> PermGroup:
    return G.hall_subgroup(pi)


def normalizer(G: PermGroup, H: PermGroup) -> PermGroup:
    return G.normalizer(H)


def inertia(G: PermGroup, N: PermGroup, theta) -> PermGroup:
    return G.inertia(N, theta)


# ------------------------------------------------------------------ group I/O


def group_to_json(name: str, degree: int, gens) -> dict:
    return {
        "name": name,
        "degree": degree,
        "generators": [list(g.images) for g in gens],
    }


def load_group(source, cap: int = DEFAULT_ORDER_CAP) -> PermGroup:
    """Build a group from a JSON file path or an already-parsed dict."""
    if isinstance(source, (str, Path)):
        try:
            data = json.loads(Path(source).read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise InputError(f"cannot read group file {source}: {exc}") from exc
    else:
        data = source
    try:
        name = data["name"]
        degree = int(data["degree"])
        gens_images = data["generators"]
    except (KeyError, TypeError) as exc:
        raise InputError(f"group file missing field: {exc}") from exc
    gens = []
    for images in gens_images:
        if len(images) != degree:
            raise InputError(f"generator degree mismatch in {name}")
        try:
            gens.append(Permutation(images))
        except ValueError as exc:
            raise InputError(str(exc)) from exc
    if not gens:
        return trivial_group(degree, name=name)
    return close_generators(gens, cap=cap, name=name)
