"""Permutations of {0, ..., d-1} as immutable image tuples."""

from __future__ import annotations

from math import lcm


class Permutation:
    __slots__ = ("images", "_hash", "_order")

    def __init__(self, images):
        images = tuple(images)
        if sorted(images) != list(range(len(images))):
            raise ValueError(f"not a bijection of 0..{len(images) - 1}: {images}")
        self.images = images
        self._hash = hash(images)
        self._order = None

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, point: int) -> int:
        return self.images[point]

    def __mul__(self, other: "Permutation") -> "Permutation":
        # (p * q)(x) = p(q(x)): apply q first
        p = self.images
        return Permutation._raw(tuple(p[i] for i in other.images))

    def inverse(self) -> "Permutation":
        inv = [0] * len(self.images)
        for i, j in enumerate(self.images):
            inv[j] = i
        return Permutation._raw(tuple(inv))

    def __pow__(self, k: int) -> "Permutation":
        if k < 0:
            return self.inverse() ** (-k)
        result = identity(len(self.images))
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def conjugated_by(self, g: "Permutation") -> "Permutation":
        """self^g = g^-1 * self * g."""
        return g.inverse() * self * g

    def order(self) -> int:
        if self._order is None:
            lengths = (len(c) for c in self.cycles())
            self._order = lcm(*lengths) if self.images else 1
        return self._order

    def cycles(self) -> tuple[tuple[int, ...], ...]:
        seen = [False] * len(self.images)
        out = []
        for start in range(len(self.images)):
            if not seen[start]:
                cyc = [start]
                seen[start] = True
                j = self.images[start]
                while j != start:
                    cyc.append(j)
                    seen[j] = True
                    j = self.images[j]
                out.append(tuple(cyc))
        return tuple(out)

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.images))

    def __eq__(self, other) -> bool:
        return isinstance(other, Permutation) and self.images == other.images

    def __lt__(self, other: "Permutation") -> bool:
        return self.images < other.images

    def __le__(self, other: "Permutation") -> bool:
        return self.images <= other.images

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        cyc = [c for c in self.cycles() if len(c) > 1]
        if not cyc:
            return "()"
        return "".join("(" + " ".join(map(str, c)) + ")" for c in cyc)

    @classmethod
    def _raw(cls, images: tuple) -> "Permutation":
        obj = object.__new__(cls)
        obj.images = images
        obj._hash = hash(images)
        obj._order = None
        return obj


def identity(degree: int) -> Permutation:
    return Permutation._raw(tuple(range(degree)))
