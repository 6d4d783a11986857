"""Shared result types: method tags, dispersion curves, band gaps."""

import statistics
from dataclasses import dataclass, field
from enum import Enum

from .errors import DomainError


class MethodId(str, Enum):
    RAYLEIGH = "rayleigh"
    FOLDY = "foldy"
    MAE = "mae"
    CPA = "cpa"


@dataclass
class DispersionCurve:
    """One band branch: ordered (beta L, k_o L) samples."""

    method: MethodId
    points: list[tuple[float, float]] = field(default_factory=list)
    branch_index: int = 0

    def __post_init__(self):
        self.points = sorted((float(b), float(k)) for b, k in self.points)
        if any(k <= 0.0 for _, k in self.points):
            raise DomainError("dispersion points need k_o L > 0")

    def to_dict(self) -> dict:
        return {"method": self.method.value,
                "branch_index": self.branch_index,
                "points": [[b, k] for b, k in self.points]}

    @classmethod
    def from_dict(cls, d: dict) -> "DispersionCurve":
        return cls(method=MethodId(d["method"]),
                   points=[(p[0], p[1]) for p in d["points"]],
                   branch_index=int(d["branch_index"]))


@dataclass
class BandGap:
    """Frequency interval [f_lower, f_upper] in Hz for one resonance index."""

    n_mode: int
    f_lower: float
    f_upper: float
    method: MethodId

    def __post_init__(self):
        if self.n_mode not in (0, 1):
            raise DomainError(f"n_mode must be 0 or 1, got {self.n_mode}")
        if not 0.0 < self.f_lower < self.f_upper:
            raise DomainError(
                f"need 0 < f_lower < f_upper, got [{self.f_lower}, {self.f_upper}]")

    @property
    def width(self) -> float:
        return self.f_upper - self.f_lower

    @property
    def center(self) -> float:
        return 0.5 * (self.f_lower + self.f_upper)

    def to_dict(self) -> dict:
        return {"method": self.method.value, "n_mode": self.n_mode,
                "f_lower_hz": self.f_lower, "f_upper_hz": self.f_upper}

    @classmethod
    def from_dict(cls, d: dict) -> "BandGap":
        return cls(n_mode=int(d["n_mode"]), f_lower=d["f_lower_hz"],
                   f_upper=d["f_upper_hz"], method=MethodId(d["method"]))


def group_branches(betaLs, roots_per_beta, method: MethodId,
                   jump_factor: float = 3.0) -> list[DispersionCurve]:
    """Assemble per-beta root lists into branches by nearest continuation.

    A root extends the branch whose last k_o L is closest, provided the jump
    stays within ``jump_factor`` times the branch's median step (bootstrapped
    generously while a branch has fewer than three points).  Anything
    unmatched starts a new branch.
    """
    tracks: list[dict] = []
    for bL, roots in zip(betaLs, roots_per_beta):
        taken = set()
        pairs = []
        for ri, k in enumerate(roots):
            for ti, tr in enumerate(tracks):
                pairs.append((abs(k - tr["last_k"]), ri, ti))
        matched_roots = set()
        for dist, ri, ti in sorted(pairs):
            if ri in matched_roots or ti in taken:
                continue
            tr = tracks[ti]
            if len(tr["steps"]) >= 2:
                tol = jump_factor * max(statistics.median(tr["steps"]), 1e-12)
            else:
                tol = max(0.15 * tr["last_k"], 10.0 * (tr["steps"][-1] if tr["steps"] else 0.0), 1e-12)
            if dist <= tol:
                tr["steps"].append(abs(roots[ri] - tr["last_k"]))
                tr["points"].append((bL, roots[ri]))
                tr["last_k"] = roots[ri]
                matched_roots.add(ri)
                taken.add(ti)
        for ri, k in enumerate(roots):
            if ri not in matched_roots:
                tracks.append({"points": [(bL, k)], "last_k": k, "steps": []})
    curves = []
    for idx, tr in enumerate(sorted(tracks, key=lambda t: t["points"][0][1])):
        curves.append(DispersionCurve(method=method, points=tr["points"],
                                      branch_index=idx))
    return curves
