"""Compiled systems together with what is needed to read them back."""

from __future__ import annotations

from dataclasses import dataclass, field
from ..polysys import PolySystem


@dataclass(frozen=True)
class ReductionArtifact:
    """A compiled system plus its provenance.

    ``roles`` names every coordinate (``x0``, ``x1``, ``y1``, ``lambda``,
    ``W2_0`` ...).  ``lam`` is the integer lambda for the characteristic-0
    chain, the modulus P (coefficients low to high) for the extension-field
    chain, the string ``"variable"`` when lambda is a system variable, or
    None.  ``meta`` holds small integers such as n and s.
    """

    system: PolySystem
    roles: tuple
    via: str
    source_char: int
    lam: object = None
    meta: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        if len(self.roles) != self.system.num_vars:
            raise ValueError(f"{len(self.roles)} roles for {self.system.num_vars} variables")

    def role_index(self, role: str) -> int:
        return self.roles.index(role)

    def provenance(self) -> dict:
        lam = self.lam
        if isinstance(lam, tuple):
            lam = list(lam)
        return {
            "via": self.via,
            "char": self.source_char,
            "roles": list(self.roles),
            "lambda": lam,
            "meta": dict(self.meta),
        }


def x_roles(n: int) -> list:
    return [f"x{i}" for i in range(n + 1)]


def chain_roles(n: int, s: int, with_lambda: bool) -> tuple:
    roles = x_roles(n) + [f"y{i}" for i in range(1, s - n)]
    if with_lambda:
        roles.append("lambda")
    return tuple(roles)

