"""Surface signatures and the closed-form invariants attached to them.

Everything here is exact integer arithmetic.  The witness count ``m(g, n, k)``
is the maximal number of pairwise disjoint witnesses for the k-multicurve
graph, and :func:`classify` turns it into the hyperbolic / relatively
hyperbolic / thick trichotomy for the electrified Teichmueller space.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum


class InvalidSignature(ValueError):
    pass


class InvalidMulticurveSize(ValueError):
    pass


@dataclass(frozen=True, order=True)
class SurfaceSig:
    genus: int
    punctures: int

    def __post_init__(self):
        if self.genus < 0 or self.punctures < 0:
            raise InvalidSignature(f"negative genus or puncture count: {self}")
        if 2 - 2 * self.genus - self.punctures >= 0:
            raise InvalidSignature(
                f"surface of genus {self.genus} with {self.punctures} punctures "
                "is not hyperbolic (2 - 2g - n >= 0)"
            )

    @property
    def chi(self) -> int:
        return 2 - 2 * self.genus - self.punctures

    @property
    def xi(self) -> int:
        return 3 * self.genus - 3 + self.punctures

    def check_k(self, k: int) -> None:
        if not (1 <= k <= self.xi):
            raise InvalidMulticurveSize(f"k={k} outside 1..{self.xi} for {self}")

    def __str__(self):
        return f"S({self.genus},{self.punctures})"


class GeometryClass(str, Enum):
    HYPERBOLIC = "Hyperbolic"
    RELATIVELY_HYPERBOLIC = "RelativelyHyperbolic"
    THICK = "Thick"


def as_sig(sig) -> SurfaceSig:
    if isinstance(sig, SurfaceSig):
        return sig
    g, n = sig
    return SurfaceSig(int(g), int(n))


def invariants(sig) -> tuple[int, int]:
    """Return ``(chi, xi)`` = ``(2 - 2g - n, 3g - 3 + n)``."""
    sig = as_sig(sig)
    return sig.chi, sig.xi


def f_of_k(sig, k: int) -> int:
    sig = as_sig(sig)
    sig.check_k(k)
    return min(k, sig.xi - k)


def _a(x: int) -> int:
    # ceil((2x + 1) / 3) for integer x
    return -((-(2 * x + 1)) // 3)


def witness_count(sig, k: int) -> int:
    sig = as_sig(sig)
    sig.check_k(k)
    if sig.punctures == 0 and k == 1:
        return 1
    xi = sig.xi
    return min((-sig.chi) // _a(xi + 1 - k), (xi + 1) // (xi + 2 - k))


def _relatively_hyperbolic(g: int, n: int, k: int) -> bool:
    if g % 2 == 0:
        if n >= 2 and n % 2 == 0 and 2 * k == 3 * g + n:
            return True
        if n == 0 and (2 * k == 3 * g or 2 * k == 3 * g + 2):
            return True
    else:
        if n in (0, 2) and 2 * k == 3 * g + 3:
            return True
        if n >= 3 and n % 2 == 1 and 2 * k == 3 * g + n:
            return True
    return False


def classify(sig, k: int) -> GeometryClass:
    sig = as_sig(sig)
    m = witness_count(sig, k)
    rel = _relatively_hyperbolic(sig.genus, sig.punctures, k)
    # a hit here means a transcription error in one of the two formulas
    assert not (m == 1 and rel), f"hyperbolic and relatively hyperbolic at {sig}, k={k}"
    if m == 1:
        return GeometryClass.HYPERBOLIC
    if rel:
        return GeometryClass.RELATIVELY_HYPERBOLIC
    return GeometryClass.THICK


def signatures_up_to(xi_max: int):
    """All hyperbolic (g, n) with 1 <= xi <= xi_max."""
    for g in range(0, xi_max // 3 + 2):
        for n in range(0, xi_max + 4):
            if 2 - 2 * g - n >= 0:
                continue
            sig = SurfaceSig(g, n)
            if 1 <= sig.xi <= xi_max:
                yield sig


def surface_report(sig, k: int | None = None) -> dict:
    sig = as_sig(sig)
    out = {"genus": sig.genus, "punctures": sig.punctures, "chi": sig.chi, "xi": sig.xi}
    if k is not None:
        out.update(
            k=k,
            f_k=f_of_k(sig, k),
            witness_count=witness_count(sig, k),
            **{"class": classify(sig, k).value},
        )
    return out
