"""Exception types shared across the toolkit."""


class VertexLabError(Exception):
    """Base class for all toolkit errors."""


class OrderCapExceeded(VertexLabError):
    """Group closure would exceed the configured element cap."""


class LatticeCapExceeded(VertexLabError):
    """Subgroup enumeration would exceed the configured subgroup cap."""


class NotSeparable(VertexLabError):
    """The group is not separable for the requested prime set."""


class NotNormal(VertexLabError):
    """An operation requiring a normal subgroup was given a non-normal one."""


class MultipleFactorizations(VertexLabError):
    """More than one special/co-special factorization found; signals a bug."""


class NoCorrespondent(VertexLabError):
    """No inertia-group character induces the given one; signals a bug."""


class NoExtension(VertexLabError):
    """No co-special extension of a stable Hall-subgroup character exists."""


class MultipleExtensions(VertexLabError):
    """More than one co-special extension found; signals a bug."""


class ConeDecompositionFailure(VertexLabError):
    """Restrictions do not decompose integrally over the irreducible cone."""


class DualOracleMismatch(VertexLabError):
    """The two independent irreducible-partial-character algorithms disagree."""


class NoVertexFound(VertexLabError):
    """The vertex search found no inducing pair; signals a bug."""


class InputError(VertexLabError):
    """Malformed group file, manifest, or CLI argument."""
