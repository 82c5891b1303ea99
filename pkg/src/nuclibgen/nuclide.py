"""Domain value types: nuclide identity, radiation types, energies, half-lives.

All types here are immutable and hashable; they are shared freely between
threads and used as dictionary keys throughout the package.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass, field

from .elements import canonical_symbol
from .errors import MalformedId, MassOutOfRange, UnknownElement

MAX_MASS_NUMBER = 300

SECONDS_PER_YEAR = 365.2422 * 86400.0

_TIME_UNIT_S = {
    "s": 1.0,
    "m": 60.0,
    "h": 3600.0,
    "d": 86400.0,
    "y": SECONDS_PER_YEAR,
}


@dataclass(frozen=True)
class LevelSpec:
    """Energy level designation of a nuclide.

    Exactly one of three variants:
      * ground state (the canonical default),
      * metastable ordinal ("m", "m2", ...) -- symbolic until a level dataset
        resolves it to a concrete energy,
      * explicit level energy in keV.
    """

    kind: str  # "ground" | "meta" | "energy"
    ordinal: int = 0
    kev: float = 0.0

    GROUND: "LevelSpec" = None  # set below

    @staticmethod
    def ground() -> "LevelSpec":
        return LevelSpec("ground")

    @staticmethod
    def meta(ordinal: int = 1) -> "LevelSpec":
        if ordinal < 1:
            raise ValueError("metastable ordinal starts at 1")
        return LevelSpec("meta", ordinal=ordinal)

    @staticmethod
    def energy(kev: float) -> "LevelSpec":
        if kev < 0:
            raise ValueError("level energy must be nonnegative")
        if kev == 0:
            return LevelSpec("ground")
        return LevelSpec("energy", kev=kev)

    @property
    def is_ground(self) -> bool:
        return self.kind == "ground"

    def suffix(self) -> str:
        """Identifier suffix: '' | '@m' | '@m3' | '@<kev>kev'."""
        if self.kind == "ground":
            return ""
        if self.kind == "meta":
            return "@m" if self.ordinal == 1 else f"@m{self.ordinal}"
        return f"@{self.kev!r}kev"


LevelSpec.GROUND = LevelSpec.ground()


@dataclass(frozen=True)
class Nuclide:
    """A nuclear species: element, mass number, and energy level."""

    element: str
    mass_number: int
    level: LevelSpec = field(default_factory=LevelSpec.ground)

    def __post_init__(self):
        sym = canonical_symbol(self.element)
        if sym is None:
            raise UnknownElement(f"unknown element symbol: {self.element!r}")
        object.__setattr__(self, "element", sym)
        if not 1 <= self.mass_number <= MAX_MASS_NUMBER:
            raise MassOutOfRange(f"mass number out of range: {self.mass_number}")

    @property
    def ground_state(self) -> "Nuclide":
        """The same element+A at ground level (level-erased identity)."""
        if self.level.is_ground:
            return self
        return Nuclide(self.element, self.mass_number)

    def at_level(self, level: LevelSpec) -> "Nuclide":
        return Nuclide(self.element, self.mass_number, level)

    def __str__(self) -> str:
        return format_nuclide_id(self)


class RadiationType(enum.Enum):
    """The six retrievable kinds of decay radiation."""

    ALPHA = "a"
    BETA_MINUS = "bm"
    BETA_PLUS_EC = "bp"
    GAMMA = "g"
    ELECTRON = "e"
    XRAY = "x"

    @property
    def code(self) -> str:
        return self.value

    @classmethod
    def from_code(cls, code: str) -> "RadiationType":
        for member in cls:
            if member.value == code:
                return member
        raise ValueError(f"unknown radiation code: {code!r}")


class DecayMode(enum.Enum):
    """Decay modes carried by decay records and level data."""

    ALPHA = "A"
    BETA_MINUS = "B-"
    BETA_PLUS_EC = "EC+B+"
    IT = "IT"
    SF = "SF"

    @classmethod
    def from_code(cls, code: str) -> "DecayMode":
        code = code.strip().upper()
        aliases = {"B+": "EC+B+", "EC": "EC+B+", "B-": "B-"}
        code = aliases.get(code, code)
        for member in cls:
            if member.value == code:
                return member
        raise ValueError(f"unknown decay mode: {code!r}")


@dataclass(frozen=True)
class EnergyValue:
    """An energy in keV with its reported uncertainty (0 when unreported)."""

    kev: float
    uncertainty_kev: float = 0.0

    def __post_init__(self):
        if self.kev < 0:
            raise ValueError("energy must be nonnegative")
        if self.uncertainty_kev < 0:
            raise ValueError("uncertainty must be nonnegative")


def energies_match(a: "EnergyValue", b: "EnergyValue") -> bool:
    """Tolerance rule used everywhere two level energies are compared.

    Two energies match iff |E1 - E2| <= max(3 * sqrt(u1^2 + u2^2), 1.0 keV);
    the 1 keV floor absorbs rounding differences between datasets evaluated
    at different times.
    """
    spread = 3.0 * (a.uncertainty_kev**2 + b.uncertainty_kev**2) ** 0.5
    return abs(a.kev - b.kev) <= max(spread, 1.0)


@dataclass(frozen=True)
class HalfLife:
    """Either stable, or a positive half-life in seconds with uncertainty."""

    seconds: float | None = None
    uncertainty_seconds: float = 0.0

    def __post_init__(self):
        if self.seconds is not None and self.seconds <= 0:
            raise ValueError("half-life must be positive")
        if self.uncertainty_seconds < 0:
            raise ValueError("uncertainty must be nonnegative")

    @property
    def is_stable(self) -> bool:
        return self.seconds is None

    @staticmethod
    def stable() -> "HalfLife":
        return HalfLife(None)

    @staticmethod
    def from_value(value: float, unit: str, uncertainty: float = 0.0) -> "HalfLife":
        try:
            factor = _TIME_UNIT_S[unit]
        except KeyError:
            raise ValueError(f"unknown time unit: {unit!r}") from None
        return HalfLife(value * factor, uncertainty * factor)

    def in_unit(self, unit: str) -> float:
        if self.is_stable:
            raise ValueError("stable nuclide has no finite half-life")
        return self.seconds / _TIME_UNIT_S[unit]


# Accepted identifier spellings, case-insensitive:
#   "U-238"  "238U"  "u238"  "Pa-234m"  "234mPa"  "Tc-99m"  "Ac-225@m2"
#   "99tc@142.6836kev"
_SUFFIX_RE = re.compile(
    r"^(?:m(?P<ord>[2-9]\d*)?|(?P<kev>\d+(?:\.\d+)?(?:e[+-]?\d+)?)(?:kev)?)$"
)
_A_FIRST_RE = re.compile(r"^(?P<a>\d{1,3})(?P<tail>[a-z][a-z0-9]*)$")
_EL_FIRST_RE = re.compile(r"^(?P<el>[a-z]{1,3})(?P<a>\d{1,3})(?P<m>m(?:[2-9]\d*)?)?$")
_META_TAIL_RE = re.compile(r"^m(?P<ord>[2-9]\d*)?(?P<el>[a-z]{1,3})$")


def _parse_meta(token: str) -> LevelSpec:
    return LevelSpec.meta(1 if token == "m" else int(token[1:]))


def _parse_base(base: str) -> tuple[str, int, LevelSpec]:
    """Parse '<A><el>', '<el><A>', '<A>m<el>', '<el><A>m..' (already lowercased)."""
    m = _EL_FIRST_RE.match(base)
    if m and canonical_symbol(m.group("el")):
        level = _parse_meta(m.group("m")) if m.group("m") else LevelSpec.ground()
        return m.group("el"), int(m.group("a")), level
    m = _A_FIRST_RE.match(base)
    if m:
        a, tail = int(m.group("a")), m.group("tail")
        # A full-element tail wins over a metastable reading: "24mg" is Mg-24
        # and "98mo" is Mo-98, while "234mpa" falls through to Pa-234m.
        if canonical_symbol(tail):
            return tail, a, LevelSpec.ground()
        mm = _META_TAIL_RE.match(tail)
        if mm and canonical_symbol(mm.group("el")):
            return mm.group("el"), a, LevelSpec.meta(int(mm.group("ord") or 1))
        raise UnknownElement(f"unknown element symbol in {base!r}")
    raise MalformedId(f"unrecognized nuclide identifier: {base!r}")


def parse_nuclide_id(text: str) -> Nuclide:
    """Parse a nuclide identifier into a canonical Nuclide.

    Raises UnknownElement, MassOutOfRange, or MalformedId.
    """
    if not text or not text.strip():
        raise MalformedId("empty nuclide identifier")
    work = text.strip().lower()

    level_override: LevelSpec | None = None
    if "@" in work:
        work, _, suffix = work.partition("@")
        m = _SUFFIX_RE.match(suffix.strip())
        if not m:
            raise MalformedId(f"bad level suffix in {text!r}")
        if m.group("kev") is not None:
            level_override = LevelSpec.energy(float(m.group("kev")))
        else:
            level_override = _parse_meta(
                "m" if m.group("ord") is None else "m" + m.group("ord")
            )

    if "-" in work:
        left, _, right = work.partition("-")
        if not left or not right:
            raise MalformedId(f"unrecognized nuclide identifier: {text!r}")
        if left[0].isdigit():
            work = left + right  # "234-pa" -> "234pa"
        else:
            m = re.match(r"^(\d{1,3})(m(?:[2-9]\d*)?)?$", right)
            if not m:
                raise MalformedId(f"unrecognized nuclide identifier: {text!r}")
            work = m.group(1) + (m.group(2) or "") + left  # "pa-234m" -> "234mpa"

    el, a, level = _parse_base(work)
    if level_override is not None:
        if not level.is_ground:
            raise MalformedId(f"conflicting level specifications in {text!r}")
        level = level_override
    return Nuclide(el, a, level)


def format_nuclide_id(n: Nuclide) -> str:
    """Canonical lowercase identifier: '<A><element>' plus level suffix."""
    return f"{n.mass_number}{n.element.lower()}{n.level.suffix()}"


def display_name(n: Nuclide) -> str:
    """Human-oriented form used in plots and reports, e.g. 'Pa-234m'."""
    if n.level.is_ground:
        suffix = ""
    elif n.level.kind == "meta":
        suffix = "m" if n.level.ordinal == 1 else f"m{n.level.ordinal}"
    else:
        suffix = f"@{n.level.kev:g}keV"
    return f"{n.element}-{n.mass_number}{suffix}"
