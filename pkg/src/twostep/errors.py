"""Exception hierarchy shared by the library and the CLI."""

from __future__ import annotations


class TwoStepError(ValueError):
    """Base class for user-facing errors."""


class ValidationError(TwoStepError):
    pass


class SkewViolation(ValidationError):
    def __init__(self, i: int, j: int, k: int):
        super().__init__(
            f"SkewViolation: a[{i}][{j}][{k}] != -a[{j}][{i}][{k}]"
            if i != j
            else f"SkewViolation: diagonal entry a[{i}][{i}][{k}] is nonzero"
        )
        self.i, self.j, self.k = i, j, k


class DerivedDimDeficit(ValidationError):
    def __init__(self, actual: int, expected: int):
        super().__init__(
            f"DerivedDimDeficit({actual}, {expected}): the brackets span a "
            f"{actual}-dimensional space but p = {expected}"
        )
        self.actual, self.expected = actual, expected


class ParseError(TwoStepError):
    pass


class NotThreeUniform(TwoStepError):
    def __init__(self, edges):
        super().__init__(
            "NotThreeUniform: hyperedges with several center vertices: "
            + ", ".join(f"[x{i},x{j}]->{{{','.join(f'y{k}' for k in sorted(K))}}}" for i, j, K in edges)
        )
        self.edges = tuple(edges)


class UnresolvedTie(TwoStepError):
    def __init__(self, ids):
        super().__init__("UnresolvedTie: entries agree on every ordering tier: " + ", ".join(ids))
        self.ids = tuple(ids)


class PreconditionError(TwoStepError):
    pass
