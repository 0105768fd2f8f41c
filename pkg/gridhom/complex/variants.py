"""Complex variants: which rectangles count and how variables are identified."""

from dataclasses import dataclass
from typing import Literal

from gridhom.complex.polynomial import Ring
from gridhom.grid.diagram import GridDiagram, link_components
from gridhom.shared.errors import VariantMismatch

VariantKind = Literal["GC_minus", "GC_hat", "GCL", "GCL_signed_Z"]

_ALIASES = {
    "gc_minus": "GC_minus",
    "gc-": "GC_minus",
    "gc_hat": "GC_hat",
    "hat": "GC_hat",
    "gcl": "GCL",
    "gcl_signed_z": "GCL_signed_Z",
    "gcl_z": "GCL_signed_Z",
}


@dataclass(frozen=True)
class ComplexVariant:
    kind: VariantKind
    collapsed: bool = False
    # one O column per link component; None picks the smallest column of each
    collapse_choice: tuple[int, ...] | None = None

    @classmethod
    def parse(cls, name: str) -> "ComplexVariant":
        text = name.strip().lower()
        collapsed = False
        if text.startswith("collapsed(") and text.endswith(")"):
            collapsed = True
            text = text[len("collapsed(") : -1]
        elif text.startswith("c") and text[1:] in _ALIASES:
            collapsed = True
            text = text[1:]
        if text not in _ALIASES:
            raise VariantMismatch(f"unknown complex variant {name!r}")
        return cls(_ALIASES[text], collapsed)

    @property
    def ring(self) -> Ring:
        return Ring.INTEGERS if self.kind == "GCL_signed_Z" else Ring.MOD2

    @property
    def signed(self) -> bool:
        return self.kind == "GCL_signed_Z"

    @property
    def enhanced(self) -> bool:
        """Carries the variable v and counts rectangles with interior points."""
        return self.kind in ("GCL", "GCL_signed_Z")

    @property
    def hat(self) -> bool:
        return self.kind == "GC_hat"

    @property
    def label(self) -> str:
        return f"collapsed({self.kind})" if self.collapsed else self.kind

    def check(self, S, ring: Ring | None = None) -> None:
        if self.signed and S is None:
            raise VariantMismatch(f"{self.label} needs a sign assignment")
        if not self.signed and S is not None:
            raise VariantMismatch(f"{self.label} is unsigned but a sign assignment was given")
        if ring is not None and ring != self.ring:
            raise VariantMismatch(f"{self.label} works over {self.ring.value}, element is over {ring.value}")

    def variable_map(self, G: GridDiagram) -> tuple[int | None, ...]:
        """Variable index carrying each O column; None means the variable is zero."""
        index: list[int | None] = list(range(G.n))
        if self.hat:
            index[G.n - 1] = None
        if self.collapsed:
            choice = self.collapse_choice or tuple(component[0] for component in link_components(G))
            if len(choice) != len(link_components(G)):
                raise VariantMismatch(f"collapse needs one O per component, got {choice}")
            target = choice[0]
            for column in choice:
                index[column] = target
        return tuple(index)


GC_MINUS = ComplexVariant("GC_minus")
GC_HAT = ComplexVariant("GC_hat")
GCL = ComplexVariant("GCL")
GCL_SIGNED_Z = ComplexVariant("GCL_signed_Z")
