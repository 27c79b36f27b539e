"""Frequency/time sampling grid for pulse design.

All computation lives on a length-``lg`` circular FFT grid.  The one-sided
in-band region occupies bins ``0..nb`` (band edge at bin ``nb``), and one
symbol duration spans ``nt`` time samples, tied together by
``nt = (1 + beta) * lg / (2 * nb)``.

Integrality of the transition-band index boundaries is required exactly, so
the roll-off is snapped to a nearby rational before validation.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

__all__ = ["GridSpec"]

_BETA_DENOM_LIMIT = 10**6


def _beta_fraction(beta: float) -> Fraction:
    if not 0.0 <= beta <= 1.0:
        raise ValueError(f"roll-off must lie in [0, 1], got {beta}")
    return Fraction(beta).limit_denominator(_BETA_DENOM_LIMIT)


@dataclass(frozen=True)
class GridSpec:
    """Discretization parameters shared by every module.

    Attributes:
        lg: total FFT length (number of frequency bins / time samples).
        nb: one-sided in-band bin count; bins 0..nb carry the spectrum.
        nt: time samples per symbol duration.
        beta: excess-bandwidth roll-off factor in [0, 1].
    """

    lg: int
    nb: int
    nt: int
    beta: float

    def __post_init__(self) -> None:
        for name in ("lg", "nb", "nt"):
            v = getattr(self, name)
            if not isinstance(v, int) or v <= 0:
                raise ValueError(f"{name} must be a positive integer, got {v!r}")
        bf = _beta_fraction(self.beta)
        if (1 + bf) * self.lg != 2 * self.nb * self.nt:
            raise ValueError(
                f"nt must equal (1+beta)*lg/(2*nb): got lg={self.lg}, nb={self.nb}, "
                f"nt={self.nt}, beta={self.beta}; "
                f"valid nb values near this lg: {self.valid_nb_hint(self.beta, self.nt, self.lg)}"
            )
        if self.lg % self.nt != 0:
            raise ValueError(f"lg={self.lg} must be divisible by nt={self.nt}")
        if 2 * self.nb + 1 > self.lg:
            raise ValueError(f"band does not fit the grid: 2*nb+1={2 * self.nb + 1} > lg={self.lg}")
        if ((1 - bf) * self.nb / (1 + bf)).denominator != 1:
            raise ValueError(
                f"(1-beta)*nb/(1+beta) must be an integer (flat-band edge index); "
                f"nb={self.nb}, beta={self.beta}"
            )
        if (2 * self.nb / (1 + bf)).denominator != 1:
            raise ValueError(
                f"2*nb/(1+beta) must be an integer (folding index); nb={self.nb}, beta={self.beta}"
            )

    @property
    def beta_exact(self) -> Fraction:
        return _beta_fraction(self.beta)

    @property
    def flat_end(self) -> int:
        """Last bin of the flat passband, (1-beta)*nb/(1+beta)."""
        bf = self.beta_exact
        return int((1 - bf) * self.nb / (1 + bf))

    @property
    def fold_index(self) -> int:
        """Pairing index 2*nb/(1+beta); transition bins n and fold_index-n sum to nt."""
        return int(2 * self.nb / (1 + self.beta_exact))

    @property
    def symbol_slots(self) -> int:
        """Number of symbol-spaced positions on the circular grid, lg/nt."""
        return self.lg // self.nt

    def to_dict(self) -> dict:
        return {"lg": self.lg, "nb": self.nb, "nt": self.nt, "beta": self.beta}

    @classmethod
    def from_dict(cls, d: dict) -> "GridSpec":
        return cls(lg=int(d["lg"]), nb=int(d["nb"]), nt=int(d["nt"]), beta=float(d["beta"]))

    @staticmethod
    def valid_choices(beta: float, nt: int = 32, lg_max: int = 1 << 16) -> list[tuple[int, int]]:
        """All (nb, lg) pairs valid for this roll-off with lg <= lg_max."""
        bf = _beta_fraction(beta)
        out = []
        nb = 0
        while True:
            nb += 1
            lg_f = Fraction(2 * nt * nb) / (1 + bf)
            if lg_f.denominator != 1:
                continue
            lg = int(lg_f)
            if lg > lg_max:
                break
            if lg % nt != 0:
                continue
            if 2 * nb + 1 > lg:
                continue
            if ((1 - bf) * nb / (1 + bf)).denominator != 1:
                continue
            if (2 * nb / (1 + bf)).denominator != 1:
                continue
            out.append((nb, lg))
        return out

    @staticmethod
    def valid_nb_hint(beta: float, nt: int, lg_near: int) -> list[int]:
        choices = GridSpec.valid_choices(beta, nt, lg_max=2 * lg_near + 4 * nt)
        return [nb for nb, lg in choices if abs(lg - lg_near) <= lg_near // 2][:8]

    @classmethod
    def for_rolloff(cls, beta: float, nt: int = 32, lg_target: int = 8192) -> "GridSpec":
        """Smallest-deviation valid grid for a given roll-off and oversampling.

        Picks the valid (nb, lg) pair whose lg is closest to ``lg_target``
        (ties broken toward the smaller grid).
        """
        choices = cls.valid_choices(beta, nt, lg_max=4 * lg_target)
        if not choices:
            raise ValueError(f"no valid grid for beta={beta}, nt={nt} with lg <= {4 * lg_target}")
        nb, lg = min(choices, key=lambda c: (abs(c[1] - lg_target), c[1]))
        return cls(lg=lg, nb=nb, nt=nt, beta=beta)
