"""Singular spectra, clustering, and the spectral diagram of ``|T|``.

A finite matrix has no essential spectrum. The stand-in used throughout is
the eigenvalue cluster of ``|T|`` with the largest multiplicity for a
single matrix, and the cluster whose multiplicity keeps growing along a
family of truncations. Both are labelled as surrogates in every output.
Continuous spectrum is invisible at finite size and is not detected.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from typing import NamedTuple, Sequence

import numpy as np

from .linalg import InputError, as_matrix

SURROGATE_NOTE = (
    "essential value is a finite-dimensional surrogate (largest-multiplicity "
    "cluster); continuous spectrum is not detectable at finite size"
)
FAMILY_REL_GAP = 1e-3
MATRIX_REL_GAP = 1e-8


class Cluster(NamedTuple):
    center: float
    multiplicity: int
    lo: float
    hi: float


def singular_spectrum(T) -> np.ndarray:
    """Singular values of ``T``, ascending (the spectrum of ``|T|``)."""
    T = as_matrix(T)
    if T.size == 0:
        return np.zeros(0)
    return np.sort(np.linalg.svd(T, compute_uv=False))


def cluster(values, rel_gap: float = MATRIX_REL_GAP) -> list[Cluster]:
    """Greedy single-linkage grouping of ascending ``values``.

    Consecutive values join a cluster when their gap is at most
    ``rel_gap * max|values|``.
    """
    v = np.asarray(values, dtype=float)
    if v.size == 0:
        return []
    if np.any(np.diff(v) < 0):
        raise InputError("values must be ascending")
    thresh = rel_gap * float(np.max(np.abs(v)))
    out = []
    start = 0
    for i in range(1, len(v) + 1):
        if i == len(v) or v[i] - v[i - 1] > thresh:
            chunk = v[start:i]
            lo, hi = float(chunk[0]), float(chunk[-1])
            # the rounded mean can step outside [lo, hi]
            center = min(max(float(chunk.mean()), lo), hi)
            out.append(Cluster(center, len(chunk), lo, hi))
            start = i
    return out


def auto_lambda(clusters: Sequence[Cluster]) -> Cluster:
    """Largest multiplicity; ties go to the smallest center."""
    if not clusters:
        raise InputError("no clusters")
    top = max(c.multiplicity for c in clusters)
    return min((c for c in clusters if c.multiplicity == top), key=lambda c: c.center)


@dataclass
class SpectrumDiagram:
    values: list
    clusters: list
    essential_candidate: float | None
    above: list
    below: list
    norm: float
    min_mod: float
    note: str = SURROGATE_NOTE

    def regions(self) -> list[tuple[float, int, str]]:
        out = []
        for center, mult in self.clusters:
            if center in self.above:
                region = "alpha"
            elif center in self.below:
                region = "beta"
            else:
                region = "lambda"
            out.append((center, mult, region))
        return out

    def to_dict(self) -> dict:
        return {
            "values": [float(x) for x in self.values],
            "clusters": [[float(c), int(m)] for c, m in self.clusters],
            "essential_candidate": None if self.essential_candidate is None else float(self.essential_candidate),
            "above": [float(x) for x in self.above],
            "below": [float(x) for x in self.below],
            "norm": float(self.norm),
            "min_mod": float(self.min_mod),
            "note": self.note,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "SpectrumDiagram":
        return cls(
            values=list(d["values"]),
            clusters=[(c, m) for c, m in d["clusters"]],
            essential_candidate=d["essential_candidate"],
            above=list(d["above"]),
            below=list(d["below"]),
            norm=d["norm"],
            min_mod=d["min_mod"],
            note=d.get("note", SURROGATE_NOTE),
        )


def spectrum_diagram(T, lam="auto", rel_gap: float = MATRIX_REL_GAP) -> SpectrumDiagram:
    """Spectral diagram of ``|T|`` split around ``lam``.

    ``lam="auto"`` picks the largest-multiplicity cluster. A numeric ``lam``
    selects the cluster within ``rel_gap * ||T||`` of it, if any; clusters
    above it are the alphas (descending), below it the betas (ascending).
    """
    values = singular_spectrum(as_matrix(T, square=True))
    cl = cluster(values, rel_gap)
    norm = float(values[-1]) if len(values) else 0.0
    if isinstance(lam, str):
        if lam != "auto":
            raise InputError(f"lambda must be 'auto' or a number, got {lam!r}")
        ess = auto_lambda(cl)
        lam_value = ess.center
    else:
        lam_value = float(lam)
        near = [c for c in cl if abs(c.center - lam_value) <= rel_gap * norm + 1e-15]
        ess = min(near, key=lambda c: abs(c.center - lam_value)) if near else None
        if ess is not None:
            lam_value = ess.center
    above = sorted((c.center for c in cl if c is not ess and c.center > lam_value), reverse=True)
    below = sorted(c.center for c in cl if c is not ess and c.center < lam_value)
    return SpectrumDiagram(
        values=[float(x) for x in values],
        clusters=[(c.center, c.multiplicity) for c in cl],
        essential_candidate=lam_value,
        above=above,
        below=below,
        norm=norm,
        min_mod=float(values[0]) if len(values) else 0.0,
    )


def diagram_emit(d: SpectrumDiagram, format: str = "text") -> str:
    """Serialise a diagram as ``text``, ``csv`` (value,multiplicity,region) or ``json``."""
    if format == "json":
        return json.dumps(d.to_dict(), indent=2, sort_keys=True) + "\n"
    if format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["value", "multiplicity", "region"])
        for center, mult, region in d.regions():
            w.writerow([repr(float(center)), mult, region])
        return buf.getvalue()
    if format == "text":
        lines = [
            "# spectral diagram of |T|",
            f"# {d.note}",
            f"norm    {float(d.norm)!r}",
            f"min_mod {float(d.min_mod)!r}",
        ]
        rows = d.regions()
        # alphas are numbered from the top, betas from the bottom
        alpha_left = sum(1 for r in rows if r[2] == "alpha")
        beta_seen = 0
        for center, mult, region in rows:
            if region == "alpha":
                tag = f"alpha_{alpha_left}"
                alpha_left -= 1
            elif region == "beta":
                beta_seen += 1
                tag = f"beta_{beta_seen}"
            else:
                tag = "lambda"
            lines.append(f"{tag:<10} {float(center)!r:<24} x{mult}")
        return "\n".join(lines) + "\n"
    raise InputError(f"unknown diagram format {format!r}")


def diagram_parse(text: str) -> SpectrumDiagram:
    """Inverse of ``diagram_emit(..., "json")``."""
    return SpectrumDiagram.from_dict(json.loads(text))


@dataclass
class EssentialEstimate:
    lam: float | None
    singleton: bool
    growing: list
    sizes: list
    tables: dict = field(default_factory=dict)
    counts: dict = field(default_factory=dict)
    slopes: dict = field(default_factory=dict)
    note: str = SURROGATE_NOTE


def _accumulation_point(values: np.ndarray) -> float:
    # midpoint of the tightest consecutive gap: where the points pile up
    if len(values) == 1:
        return float(values[0])
    gaps = np.diff(values)
    i = int(np.argmin(gaps))
    return float((values[i] + values[i + 1]) / 2)


def essential_candidate(
    truncations: Sequence,
    rel_gap: float = FAMILY_REL_GAP,
    min_slope: float = 0.1,
) -> EssentialEstimate:
    """Locate the growing cluster of ``|T_n|`` along truncations of one operator.

    Each cluster of the largest truncation defines a window (its span
    widened by ``rel_gap * ||T||``); the number of singular values falling
    in that window is tracked across sizes and fitted linearly in ``n``. A
    cluster is growing when the slope reaches ``min_slope``. The estimate
    is the accumulation point of the fastest-growing cluster, taken as the
    midpoint of its tightest gap at the largest size.
    """
    mats = [as_matrix(T, square=True) for T in truncations]
    if len(mats) < 3:
        raise InputError("need at least three truncation sizes")
    sizes = [len(T) for T in mats]
    if any(b <= a for a, b in zip(sizes, sizes[1:])):
        raise InputError("truncation sizes must be strictly increasing")
    spectra = [singular_spectrum(T) for T in mats]
    tables = {n: cluster(s, rel_gap) for n, s in zip(sizes, spectra)}
    last = spectra[-1]
    norm = float(last[-1]) if len(last) else 0.0
    pad = rel_gap * norm
    counts, slopes, growing = {}, {}, []
    x = np.asarray(sizes, dtype=float)
    for c in tables[sizes[-1]]:
        cnt = [int(np.sum((s >= c.lo - pad) & (s <= c.hi + pad))) for s in spectra]
        slope = float(np.polyfit(x, np.asarray(cnt, dtype=float), 1)[0])
        counts[c.center] = cnt
        slopes[c.center] = slope
        if slope >= min_slope and cnt[-1] > cnt[0]:
            growing.append(c)
    lam = None
    if growing:
        best = max(growing, key=lambda c: slopes[c.center])
        inside = last[(last >= best.lo) & (last <= best.hi)]
        lam = _accumulation_point(inside)
    return EssentialEstimate(
        lam=lam,
        singleton=len(growing) == 1,
        growing=[c.center for c in growing],
        sizes=sizes,
        tables=tables,
        counts=counts,
        slopes=slopes,
    )
