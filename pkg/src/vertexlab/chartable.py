"""Exact ordinary character tables and the character calculus.

Tables are computed by simultaneous diagonalization of the class-algebra
matrices over a finite prime field F_q with q = 1 (mod exp(G)) and
q^2 > 4|G|, followed by an exact lift of eigenvalue multiplicities into
Q(zeta_exp(G)) by discrete logarithm against a fixed primitive root.
"""

from __future__ import annotations

from fractions import Fraction
from functools import cached_property
from math import isqrt

from . import cache
from .cyclotomic import CYC_ONE, CYC_ZERO, Cyclotomic, prime_factors
from .groups import PermGroup
from .linalg import fq_nullspace, fq_solve_columns
from .perms import Permutation


class Character:
    """An exact class function; rows of a character table are the irreducible ones."""

    __slots__ = ("group", "values", "_hash")

    def __init__(self, group: PermGroup, values):
        self.group = group
        self.values = tuple(
            v if isinstance(v, Cyclotomic) else Cyclotomic(v) for v in values
        )
        if len(self.values) != len(group.classes):
            raise ValueError("one value per conjugacy class required")
        self._hash = hash((id(group), self.values))

    @property
    def degree(self) -> int:
        return self.values[0].as_int()

    def value_at(self, x: Permutation) -> Cyclotomic:
        return self.values[self.group.class_of[x]]

    def is_linear(self) -> bool:
        return self.values[0] == CYC_ONE

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Character)
            and self.group is other.group
            and self.values == other.values
        )

    def __hash__(self) -> int:
        return self._hash

    def __add__(self, other: "Character") -> "Character":
        assert self.group is other.group
        return Character(self.group, tuple(a + b for a, b in zip(self.values, other.values)))

    def __mul__(self, other):
        if isinstance(other, Character):
            assert self.group is other.group
            return Character(
                self.group, tuple(a * b for a, b in zip(self.values, other.values))
            )
        return Character(self.group, tuple(v * other for v in self.values))

    __rmul__ = __mul__

    @property
    def sort_key(self):
        return tuple(v.sort_key for v in self.values)

    def __repr__(self) -> str:
        vals = ", ".join(repr(v) for v in self.values)
        return f"Character({self.group.name}; {vals})"

    def to_json(self):
        return [v.to_json() for v in self.values]


class CharacterTable:
    """All irreducible characters of a group, rows in canonical order."""

    def __init__(self, group: PermGroup, rows: tuple[Character, ...]):
        self.group = group
        self.rows = rows

    @cached_property
    def row_index(self) -> dict:
        return {chi.values: i for i, chi in enumerate(self.rows)}

    def index_of(self, chi: Character) -> int:
        idx = self.row_index.get(chi.values)
        if idx is None:
            raise ValueError(f"{chi!r} is not an irreducible character row")
        return idx

    @property
    def degrees(self) -> tuple[int, ...]:
        return tuple(chi.degree for chi in self.rows)

    def __iter__(self):
        return iter(self.rows)

    def __len__(self):
        return len(self.rows)


# ------------------------------------------------------------- prime selection


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def dixon_prime(G: PermGroup, after: int = 0) -> int:
    """Smallest admissible prime above `after`: q = 1 mod exp(G), q^2 > 4|G|."""
    e = G.exponent
    q = e + 1
    while True:
        if q > after and q * q > 4 * G.order and _is_prime(q):
            return q
        q += e


def _primitive_root(q: int) -> int:
    rs = prime_factors(q - 1)
    for g in range(2, q):
        if all(pow(g, (q - 1) // r, q) != 1 for r in rs):
            return g
    return 1  # q == 2


# --------------------------------------------------------------- Dixon kernel


def _class_matrices(G: PermGroup) -> list[list[list[int]]]:
    k = len(G.classes)
    cls = G.class_of
    reps = G.class_reps
    mats = []
    for i in range(k):
        m = [[0] * k for _ in range(k)]
        members = G.classes[i].members
        for l, z in enumerate(reps):
            for x in members:
                j = cls[x.inverse() * z]
                m[j][l] += 1
        mats.append(m)
    return mats


def _matvec(m: list[list[int]], v: list[int], q: int) -> list[int]:
    return [sum(mi[l] * v[l] for l in range(len(v)) if v[l]) % q for mi in m]


def _common_eigenvectors(mats, k: int, q: int) -> list[list[int]]:
    """Split F_q^k into the common eigenlines of the class matrices.

    Each subspace is held as a basis of k-vectors; every matrix refines each
    surviving subspace into the eigenspaces of its restriction.
    """
    spaces = [[[1 if i == j else 0 for i in range(k)] for j in range(k)]]
    for m in mats[1:]:  # the identity-class matrix is the identity
        if all(len(b) == 1 for b in spaces):
            break
        nxt = []
        for basis in spaces:
            d = len(basis)
            if d == 1:
                nxt.append(basis)
                continue
            images = [_matvec(m, b, q) for b in basis]
            coords = [fq_solve_columns(basis, img, q) for img in images]
            a_rows = [[coords[j][i] for j in range(d)] for i in range(d)]
            found = 0
            for lam in range(q):
                shifted = [
                    [(a_rows[i][j] - (lam if i == j else 0)) % q for j in range(d)]
                    for i in range(d)
                ]
                ns = fq_nullspace(shifted, q)
                if ns:
                    nxt.append(
                        [
                            [
                                sum(vec[j] * basis[j][t] for j in range(d)) % q
                                for t in range(k)
                            ]
                            for vec in ns
                        ]
                    )
                    found += len(ns)
                    if found == d:
                        break
            if found != d:
                raise AssertionError("class matrix not diagonalizable mod q")
        spaces = nxt
    if not all(len(b) == 1 for b in spaces):
        raise AssertionError("class algebra did not split into lines")
    return [b[0] for b in spaces]


def _dixon_rows(G: PermGroup, q: int) -> list[Character]:
    k = len(G.classes)
    e = G.exponent
    sizes = [c.size for c in G.classes]
    mats = _class_matrices(G)
    vectors = _common_eigenvectors(mats, k, q)
    assert len(vectors) == k

    z = pow(_primitive_root(q), (q - 1) // e, q)
    zpow = [pow(z, r, q) for r in range(e)]
    inv_e = pow(e, -1, q)
    inv_sizes = [pow(s, -1, q) for s in sizes]
    istar = G.inverse_class

    rows = []
    for w in vectors:
        w0inv = pow(w[0], -1, q)
        omega = [(x * w0inv) % q for x in w]
        s = sum(omega[l] * omega[istar[l]] * inv_sizes[l] for l in range(k)) % q
        d2 = (G.order * pow(s, -1, q)) % q
        degree = next(
            (t for t in range(1, isqrt(G.order) + 1) if (t * t - d2) % q == 0), None
        )
        assert degree is not None, "degree not recovered from eigenvector"
        vbar = [(degree * omega[l] * inv_sizes[l]) % q for l in range(k)]
        values = []
        for l in range(k):
            powers = [vbar[G.power_class(l, t)] for t in range(e)]
            terms = []
            for j in range(e):
                m = (inv_e * sum(powers[t] * zpow[(-j * t) % e] for t in range(e))) % q
                if m:
                    assert m <= degree, "eigenvalue multiplicity out of range"
                    terms.append((j, m))
            values.append(Cyclotomic.from_terms(e, terms))
        rows.append(Character(G, values))
    rows.sort(key=lambda chi: (chi.degree, chi.sort_key))
    return rows


def _verify_table(G: PermGroup, rows) -> None:
    k = len(G.classes)
    sizes = [c.size for c in G.classes]
    assert sum(chi.degree**2 for chi in rows) == G.order
    for i, chi in enumerate(rows):
        for j, psi in enumerate(rows):
            ip = inner_product(chi, psi)
            assert ip == (1 if i == j else 0), f"row orthogonality failed at {i},{j}"
    for a in range(k):
        for b in range(k):
            s = CYC_ZERO
            for chi in rows:
                s = s + chi.values[a] * chi.values[b].conjugate()
            want = Fraction(G.order, sizes[a]) if a == b else 0
            assert s == Cyclotomic(want), f"column orthogonality failed at {a},{b}"


_TABLE_MEMO: dict[frozenset, CharacterTable] = {}


def character_table(G: PermGroup, prime: int | None = None) -> CharacterTable:
    """The exact character table; `prime` overrides the default field choice."""
    if prime is None:
        got = _TABLE_MEMO.get(G.elements)
        if got is not None:
            return got
        loaded = _load_cached_table(G)
        if loaded is not None:
            _TABLE_MEMO[G.elements] = loaded
            return loaded
        q = dixon_prime(G)
    else:
        q = prime
        if not _is_prime(q) or (q - 1) % G.exponent or q * q <= 4 * G.order:
            raise ValueError(f"{q} is not an admissible table prime for {G.name}")
    rows = _dixon_rows(G, q)
    _verify_table(G, rows)
    table = CharacterTable(G, tuple(rows))
    if prime is None:
        _TABLE_MEMO[G.elements] = table
        _store_cached_table(G, table)
    return table


def _load_cached_table(G: PermGroup) -> CharacterTable | None:
    payload = cache.load_json(cache.group_content_hash(G))
    if payload is None:
        return None
    reps = [tuple(r) for r in payload["classreps"]]
    if payload["order"] != G.order or reps != [
        r.images for r in G.class_reps
    ]:
        return None
    rows = tuple(
        Character(G, [Cyclotomic.from_json(v) for v in row]) for row in payload["rows"]
    )
    return CharacterTable(G, rows)


def _store_cached_table(G: PermGroup, table: CharacterTable) -> None:
    cache.store_json(
        cache.group_content_hash(G),
        {
            "order": G.order,
            "degree": G.degree,
            "classreps": [list(r.images) for r in G.class_reps],
            "rows": [chi.to_json() for chi in table.rows],
        },
    )


# --------------------------------------------------------- character calculus


def inner_product(chi: Character, psi: Character) -> Fraction:
    assert chi.group is psi.group
    G = chi.group
    s = CYC_ZERO
    for c, a, b in zip(G.classes, chi.values, psi.values):
        s = s + (a * b.conjugate()) * c.size
    return (s / G.order).as_rational()


def decompose(chi: Character) -> tuple[tuple[Character, int], ...]:
    """Multiplicities of `chi` over the irreducible rows of its group."""
    G = chi.group
    got = G._decompose_cache.get(chi.values)
    if got is None:
        out = []
        for row in character_table(G).rows:
            m = inner_product(chi, row)
            if m:
                assert m.denominator == 1 and m > 0
                out.append((row, m.numerator))
        got = tuple(out)
        G._decompose_cache[chi.values] = got
    return got


def is_irreducible(chi: Character) -> bool:
    return inner_product(chi, chi) == 1


def _fusion(G: PermGroup, H: PermGroup) -> tuple[int, ...]:
    """Map from H-class index to the G-class containing it."""
    got = G._fusion_cache.get(H.elements)
    if got is None:
        got = tuple(G.class_of[r] for r in H.class_reps)
        G._fusion_cache[H.elements] = got
    return got


def restrict(chi: Character, H: PermGroup) -> Character:
    G = chi.group
    if H is G:
        return chi
    fuse = _fusion(G, H)
    return Character(H, tuple(chi.values[l] for l in fuse))


def induce(theta: Character, G: PermGroup) -> Character:
    """The induced class function, via class fusion."""
    H = theta.group
    if H is G:
        return theta
    fuse = _fusion(G, H)
    k = len(G.classes)
    sums = [CYC_ZERO] * k
    for m, l in enumerate(fuse):
        sums[l] = sums[l] + theta.values[m] * H.classes[m].size
    values = [
        sums[l] * Fraction(G.order, H.order * G.classes[l].size) for l in range(k)
    ]
    return Character(G, values)


def product(chi: Character, psi: Character) -> Character:
    return chi * psi


def conjugate_character(theta: Character, g: Permutation, ambient: PermGroup) -> Character:
    """theta^g on H^g, where theta^g(x^g) = theta(x)."""
    H = theta.group
    Hg = ambient.conjugate_subgroup(H, g)
    ginv = g.inverse()
    vals = tuple(
        theta.values[H.class_of[g * r * ginv]] for r in Hg.class_reps
    )
    return Character(Hg, vals)


def trivial_character(G: PermGroup) -> Character:
    return Character(G, tuple(CYC_ONE for _ in G.classes))


def regular_character(G: PermGroup) -> Character:
    vals = [CYC_ZERO] * len(G.classes)
    vals[0] = Cyclotomic(G.order)
    return Character(G, vals)


def determinant_character(chi: Character) -> Character:
    """The linear character det(chi), from power sums by Newton's identities."""
    G = chi.group
    d = chi.degree
    if d == 1:
        return chi
    values = []
    for l in range(len(G.classes)):
        p = [None] + [chi.values[G.power_class(l, t)] for t in range(1, d + 1)]
        e = [CYC_ONE] + [CYC_ZERO] * d
        for t in range(1, d + 1):
            acc = CYC_ZERO
            for i in range(1, t + 1):
                term = e[t - i] * p[i]
                acc = acc + (term if i % 2 == 1 else -term)
            e[t] = acc / t
        values.append(e[d])
    return Character(G, values)


def determinant_order(chi: Character) -> int:
    """Multiplicative order of det(chi) among the linear characters."""
    G = chi.group
    got = G._det_order_cache.get(chi.values)
    if got is not None:
        return got
    det = determinant_character(chi)
    ident = trivial_character(G)
    acc = det
    for o in range(1, G.exponent + 1):
        if acc == ident:
            G._det_order_cache[chi.values] = o
            return o
        acc = acc * det
    raise AssertionError("determinant order exceeds the group exponent")


def linear_characters(H: PermGroup) -> tuple[Character, ...]:
    return tuple(chi for chi in character_table(H).rows if chi.degree == 1)


def character_order(chi: Character) -> int:
    """Order of a linear character under pointwise product."""
    assert chi.degree == 1
    return determinant_order(chi)
