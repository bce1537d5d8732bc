"""Numerical invariants of Blanchard-Calabi 3-folds.

X is a torus bundle over a curve C of genus g built from a rank-2 bundle W
with four everywhere R-independent sections.  Two inputs are supported:
W = L + L for a line bundle L of degree d (the case with a deformation
count), and a general W known only by its degree and whether it is trivial.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Union


class BCError(ValueError):
    pass


@dataclass(frozen=True)
class SplitLL:
    d: int
    theta: bool = False
    base_point_free: bool = True


@dataclass(frozen=True)
class GeneralW:
    deg_w: int
    trivial: bool = False


Bundle = Union[SplitLL, GeneralW]


@dataclass(frozen=True)
class BCData:
    g: int
    bundle: Bundle

    def __post_init__(self):
        if self.g < 0:
            raise BCError("genus must be nonnegative")
        b = self.bundle
        if isinstance(b, SplitLL):
            if not b.base_point_free:
                raise BCError("W = L + L needs H^0(L) without base points")
            if b.d < 0:
                raise BCError("a line bundle of negative degree has no sections")
            if b.theta and b.d != self.g - 1:
                raise BCError(f"a theta characteristic has degree g - 1 = {self.g - 1}, got d = {b.d}")
        elif isinstance(b, GeneralW):
            if b.trivial and b.deg_w != 0:
                raise BCError("a trivial bundle has degree 0")
        else:
            raise BCError(f"unknown bundle type {type(b).__name__}")

    @property
    def deg_w(self) -> int:
        b = self.bundle
        return 2 * b.d if isinstance(b, SplitLL) else b.deg_w

    @property
    def trivial(self) -> bool:
        b = self.bundle
        # a degree-0 line bundle with a nowhere vanishing section is trivial
        return b.d == 0 if isinstance(b, SplitLL) else b.trivial


@dataclass(frozen=True)
class Warning_:
    code: str
    message: str

    def to_json(self) -> dict:
        return {"code": self.code, "message": self.message}


@dataclass(frozen=True)
class BCInvariants:
    kahler: bool
    canonical_degree: int
    h0_omega1: int
    trivial_canonical: bool
    h1_O: int | None = None
    h1_O_range: tuple[int, int] | None = None
    def_dim_cohomological: int | None = None
    def_dim_as_printed: int | None = None
    developable: bool | None = None
    calabi_case: bool = False
    warnings: tuple[Warning_, ...] = field(default=())

    def to_json(self) -> dict:
        out = {
            "kahler": self.kahler,
            "canonical_degree": self.canonical_degree,
            "h0_omega1": self.h0_omega1,
            "trivial_canonical": self.trivial_canonical,
            "calabi_case": self.calabi_case,
        }
        for key in ("h1_O", "def_dim_cohomological", "def_dim_as_printed", "developable"):
            value = getattr(self, key)
            if value is not None:
                out[key] = value
        if self.h1_O_range is not None:
            out["h1_O_range"] = list(self.h1_O_range)
        return out


def h0_line_bundle(d: int, g: int) -> tuple[int, bool]:
    """Riemann-Roch value of h^0 for a degree-d line bundle; the flag is True
    when the value is exact (d < 0 or d >= 2g - 1) and False when it is the
    generic value of a special-range degree."""
    if d < 0:
        return 0, True
    if d >= 2 * g - 1:
        return d - g + 1, True
    return max(0, d - g + 1), False


def _h0_bounds_bpf(d: int, g: int) -> tuple[int, int]:
    """Bounds on h^0(L) for L base-point-free of degree 0 <= d <= 2g - 2:
    at least 2 once d > 0, at most d/2 + 1 (Clifford)."""
    if d == 0:
        return 1, 1
    lo = max(2, d - g + 1)
    return lo, d // 2 + 1


def deformation_dims(g: int, d: int) -> tuple[int, int]:
    """(3g - 3 + 4 h^0(L^2), 4d + 1 - g) for d >= g."""
    if d < g:
        raise BCError(f"the vanishing hypothesis needs d >= g (g = {g}, d = {d})")
    h0_L2 = 2 * d - g + 1  # 2d > 2g - 2, so Riemann-Roch is exact
    return 3 * g - 3 + 4 * h0_L2, 4 * d + 1 - g


def invariants(bc: BCData) -> BCInvariants:
    g = bc.g
    deg_w = bc.deg_w
    trivial = bc.trivial
    canonical_degree = (2 * g - 2) - deg_w
    h0_omega1 = g + 2 if trivial else g
    trivial_canonical = deg_w == 2 * g - 2
    warnings: list[Warning_] = []
    b = bc.bundle
    if not isinstance(b, SplitLL):
        if trivial_canonical and not trivial:
            warnings.append(Warning_("degree-only", "deg W = 2g - 2 is necessary; det W = K_C is not checked"))
        return BCInvariants(trivial, canonical_degree, h0_omega1, trivial_canonical, warnings=tuple(warnings))

    d = b.d
    if d == 0:
        h0, exact = 1, True
    else:
        h0, exact = h0_line_bundle(d, g)
    h1 = g + 2 * h0
    h1_range = None
    if not exact:
        lo, hi = _h0_bounds_bpf(d, g)
        # the generic value can undercut what base-point-freeness forces
        h0 = min(max(h0, lo), hi)
        h1 = g + 2 * h0
        h1_range = (g + 2 * lo, g + 2 * hi)
        warnings.append(Warning_("generic-bundle-assumed",
                                 f"h^0(L) for degree {d} in the special range depends on L; generic value used, clamped to the base-point-free bounds"))
    coh = printed = None
    if d >= g:
        coh, printed = deformation_dims(g, d)
        warnings.append(Warning_("deformation-closed-form-discrepancy",
                                 f"3g-3+4h^0(L^2) = 8d+1-g = {coh} differs from the closed form 4d+1-g = {printed}"))
    else:
        warnings.append(Warning_("vanishing-hypothesis-fails",
                                 f"deformation dimension needs d >= g (g = {g}, d = {d})"))
    if trivial_canonical and not b.theta and not trivial:
        warnings.append(Warning_("degree-only", "deg W = 2g - 2 is necessary; L^2 = K_C is not checked"))
    developable = False if d >= 1 else None
    return BCInvariants(
        kahler=trivial,
        canonical_degree=canonical_degree,
        h0_omega1=h0_omega1,
        trivial_canonical=trivial_canonical,
        h1_O=h1,
        h1_O_range=h1_range,
        def_dim_cohomological=coh,
        def_dim_as_printed=printed,
        developable=developable,
        calabi_case=b.theta,
        warnings=tuple(warnings),
    )


@dataclass(frozen=True)
class TableRow:
    d: int
    def_dim_cohomological: int
    def_dim_as_printed: int

    def to_json(self) -> dict:
        return {"d": self.d, "def_dim_cohomological": self.def_dim_cohomological,
                "def_dim_as_printed": self.def_dim_as_printed}


def unboundedness_table(g: int, d_range: Iterable[int]) -> list[TableRow]:
    ds = list(d_range)
    if not ds:
        raise BCError("empty degree range")
    if min(ds) < g:
        raise BCError(f"degrees must be >= g = {g}; got {min(ds)}")
    return [TableRow(d, *deformation_dims(g, d)) for d in ds]


def format_table(rows: list[TableRow]) -> str:
    header = ("d", "cohomological", "as_printed")
    body = [(str(r.d), str(r.def_dim_cohomological), str(r.def_dim_as_printed)) for r in rows]
    widths = [max(len(x) for x in col) for col in zip(header, *body)]
    lines = ["  ".join(c.rjust(w) for c, w in zip(row, widths)) for row in [header, *body]]
    return "\n".join(lines)
