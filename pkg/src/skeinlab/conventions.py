"""Binary sign conventions shared by the resolvers.

``smoothing`` selects which smoothing of ``over i`` carries the factor A:
0 means ``over i = A * id + A^-1 * e_i``, 1 swaps the two.  ``handedness``
is the rotation direction (+1 or -1) of the Dehn twist about the core.
The pinned default is the unique profile that passes the calibration gates
in :mod:`skeinlab.dehnverify`; the test-suite re-derives it.
"""

from __future__ import annotations

from dataclasses import dataclass

PROFILE_VERSION = 1


@dataclass(frozen=True)
class Profile:
    smoothing: int = 0
    handedness: int = 1

    def __post_init__(self):
        if self.smoothing not in (0, 1):
            raise ValueError("smoothing bit must be 0 or 1")
        if self.handedness not in (1, -1):
            raise ValueError("handedness must be +1 or -1")

    def crossing_exponents(self, kind: str) -> tuple[int, int]:
        """A-exponents (for the identity smoothing, for the e_i smoothing)."""
        sign = 1 if (kind == "over") == (self.smoothing == 0) else -1
        return sign, -sign


ALL_PROFILES = tuple(Profile(s, h) for s in (0, 1) for h in (1, -1))
DEFAULT_PROFILE = Profile(0, 1)
