"""Parameter containers, quantum-number algebra and spectroscopic labels.

All quantities are plain floats in a single consistent unit system. The
relativistic examples use fm^-1 for energies with hbar = c = 1.
"""

from __future__ import annotations

import enum
import math
import re
from dataclasses import dataclass, field

from .errors import DomainError, MalformedLabelError

LETTERS = "spdfgh"


class Symmetry(enum.Enum):
    SPIN = "spin"
    PSEUDOSPIN = "pseudospin"
    NONREL = "nonrel"


@dataclass(frozen=True)
class PotentialParams:
    """Well depth D, range parameter alpha and equilibrium distance r_e.

    ``b = exp(alpha*r_e) - 1`` is always derived, never stored independently.
    """

    D: float
    alpha: float
    r_e: float
    b: float = field(init=False)

    def __post_init__(self):
        if not self.D > 0:
            raise DomainError(f"D must be positive, got {self.D}")
        if not self.alpha >= 0:
            raise DomainError(f"alpha must be non-negative, got {self.alpha}")
        if not self.r_e > 0:
            raise DomainError(f"r_e must be positive, got {self.r_e}")
        object.__setattr__(self, "b", math.expm1(self.alpha * self.r_e))


@dataclass(frozen=True)
class RelativisticContext:
    """Mass M and the symmetry constant (C_s for spin, C_ps for pseudospin)."""

    M: float = 1.0
    C_sym: float = 0.0
    hbar: float = 1.0
    c: float = 1.0

    def __post_init__(self):
        if not self.M > 0:
            raise DomainError(f"M must be positive, got {self.M}")
        if not self.hbar * self.c > 0:
            raise DomainError("hbar*c must be positive")

    @property
    def Mc2(self) -> float:
        return self.M * self.c**2

    @property
    def hc(self) -> float:
        return self.hbar * self.c


@dataclass(frozen=True)
class NonRelContext:
    mu: float = 1.0
    hbar: float = 1.0

    def __post_init__(self):
        if not self.mu > 0:
            raise DomainError(f"mu must be positive, got {self.mu}")
        if not self.hbar > 0:
            raise DomainError("hbar must be positive")


@dataclass(frozen=True)
class QuantumNumbers:
    """Radial number n and spin-orbit number kappa.

    In non-relativistic mode kappa is stored as -(l+1) so that ``l`` is
    uniform across modes.
    """

    n: int
    kappa: int
    symmetry: Symmetry = Symmetry.SPIN

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 0:
            raise DomainError(f"n must be a non-negative integer, got {self.n}")
        if int(self.kappa) != self.kappa or self.kappa == 0:
            raise DomainError(f"kappa must be a nonzero integer, got {self.kappa}")
        object.__setattr__(self, "n", int(self.n))
        object.__setattr__(self, "kappa", int(self.kappa))

    @classmethod
    def nonrel(cls, n: int, l: int) -> QuantumNumbers:
        if l < 0:
            raise DomainError(f"l must be non-negative, got {l}")
        return cls(n, -(l + 1), Symmetry.NONREL)

    @property
    def l(self) -> int:
        """Orbital number of the upper component: kappa(kappa+1) = l(l+1)."""
        return self.kappa if self.kappa > 0 else -self.kappa - 1

    @property
    def l_tilde(self) -> int:
        """Pseudo-orbital number: kappa(kappa-1) = l~(l~+1)."""
        return self.kappa - 1 if self.kappa > 0 else -self.kappa

    @property
    def j_twice(self) -> int:
        return 2 * abs(self.kappa) - 1

    @property
    def centrifugal(self) -> int:
        """kappa(kappa+1) for spin/nonrel, kappa(kappa-1) for pseudospin."""
        k = self.kappa
        return k * (k - 1) if self.symmetry is Symmetry.PSEUDOSPIN else k * (k + 1)

    def label(self) -> str:
        """Spectroscopic label in the printed table convention.

        Labels always name the upper component (l, j). For pseudospin
        partners with kappa > 0 the printed radial integer is n - 1.
        """
        if self.symmetry is Symmetry.NONREL:
            return f"{self.n + self.l + 1}{LETTERS[self.l]}"
        shown = self.n
        if self.symmetry is Symmetry.PSEUDOSPIN and self.kappa > 0:
            shown = self.n - 1
        return f"{shown}{LETTERS[self.l]}{self.j_twice}/2"


@dataclass(frozen=True)
class SpectroscopicLabel:
    principal: int
    orbital_letter: str
    j_twice: int | None = None

    @property
    def l(self) -> int:
        return LETTERS.index(self.orbital_letter)


_LABEL_RE = re.compile(r"^\s*(\d+)\s*([spdfgh])\s*(?:_?\{?\s*(\d+)\s*/\s*2\s*\}?)?\s*$")


def parse_label(text: str) -> SpectroscopicLabel:
    """Parse ``"2p"``, ``"0p3/2"`` or ``"0p_{3/2}"``."""
    m = _LABEL_RE.match(text)
    if m is None:
        raise MalformedLabelError(f"cannot parse state label {text!r}")
    jt = int(m.group(3)) if m.group(3) is not None else None
    if jt is not None and jt % 2 == 0:
        raise MalformedLabelError(f"2j must be odd in {text!r}")
    return SpectroscopicLabel(int(m.group(1)), m.group(2), jt)


def kappa_from_label(label: SpectroscopicLabel | str, symmetry: Symmetry) -> QuantumNumbers:
    """Map a relativistic label to (n, kappa).

    The letter and j describe the upper component, so kappa = -(l+1) for
    j = l+1/2 and kappa = l for j = l-1/2 in both symmetry modes. In
    pseudospin mode a kappa > 0 label carries n-1, which is undone here so
    that doublet partners share the same n.
    """
    if isinstance(label, str):
        label = parse_label(label)
    if symmetry is Symmetry.NONREL:
        n, l = nonrel_label_to_nl(label)
        return QuantumNumbers.nonrel(n, l)
    if label.j_twice is None:
        raise MalformedLabelError("relativistic labels need j, e.g. 0p3/2")
    l = label.l
    diff = label.j_twice - 2 * l
    if diff == 1:
        kappa = -(l + 1)
    elif diff == -1 and l > 0:
        kappa = l
    else:
        raise MalformedLabelError(f"inconsistent l={l}, 2j={label.j_twice}")
    n = label.principal
    if symmetry is Symmetry.PSEUDOSPIN and kappa > 0:
        n += 1
    return QuantumNumbers(n, kappa, symmetry)


def nonrel_label_to_nl(label: SpectroscopicLabel | str) -> tuple[int, int]:
    """``"2p"`` -> (0, 1): radial n = N - l - 1."""
    if isinstance(label, str):
        label = parse_label(label)
    l = label.l
    if label.principal <= l:
        raise MalformedLabelError(f"principal number {label.principal} must exceed l={l}")
    return label.principal - l - 1, l


def parse_state(token: str, symmetry: Symmetry) -> QuantumNumbers:
    """Accept either a label or an explicit ``n,kappa`` (``n,l`` in nonrel mode)."""
    if "," in token:
        try:
            a, b = (int(part) for part in token.split(","))
        except ValueError:
            raise MalformedLabelError(f"cannot parse state {token!r}") from None
        if symmetry is Symmetry.NONREL:
            return QuantumNumbers.nonrel(a, b)
        return QuantumNumbers(a, b, symmetry)
    return kappa_from_label(token, symmetry)
