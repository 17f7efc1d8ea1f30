"""Monte Carlo grid specifications and the shipped presets.

Paper-scale presets reproduce the reference simulation grids exactly;
desk-scale presets keep the same structure at a size that runs in minutes
on one core.  Axis values are materialized eagerly so a grid is a plain
immutable value object whose contents fully determine every trial.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field


@dataclass(frozen=True)
class Axis:
    name: str
    values: tuple

    def __post_init__(self):
        if not self.values:
            raise ValueError(f"axis {self.name!r} must be nonempty")
        object.__setattr__(self, "values", tuple(self.values))


@dataclass(frozen=True)
class GridSpec:
    kind: str
    axes: tuple
    trials: int
    master_seed: int
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.trials < 1:
            raise ValueError("trials must be >= 1")
        object.__setattr__(self, "axes", tuple(self.axes))
        for ax in self.axes:
            if not isinstance(ax, Axis):
                raise TypeError("axes must be Axis instances")

    def cells(self):
        """All coordinate tuples, outer axis varying slowest."""
        coords = [()]
        for ax in self.axes:
            coords = [c + (v,) for c in coords for v in ax.values]
        return coords

    @property
    def n_cells(self) -> int:
        out = 1
        for ax in self.axes:
            out *= len(ax.values)
        return out


def geometric(start: float, ratio: float, count: int):
    return tuple(start * ratio**i for i in range(count))


def arithmetic(start: float, step: float, count: int):
    return tuple(start + step * i for i in range(count))


# ---------------------------------------------------------------------------
# presets

def z2_phase_grid(scale: str, master_seed: int) -> GridSpec:
    if scale == "paper":
        q1 = 500.0 ** (1.0 / 50.0)
        q2 = 2.0 ** (1.0 / 10.0)
        ns = tuple(sorted(set(int(round(2.0 * q1**i)) for i in range(51))))
        sigmas = tuple(q2**j for j in range(-32, 51))
        trials = 100
    elif scale == "desk":
        ns = (32, 64, 128, 256, 512, 1024)
        sigmas = geometric(0.25, math.sqrt(2.0), 13)
        trials = 20
    else:
        raise ValueError(f"unknown scale {scale!r}")
    return GridSpec(
        kind="z2-phase",
        axes=(Axis("n", ns), Axis("sigma", sigmas)),
        trials=trials,
        master_seed=master_seed,
    )


def sbm_phase_grid(scale: str, master_seed: int) -> GridSpec:
    if scale == "paper":
        n = 300
        a_vals = arithmetic(0.0, 0.3, 101)
        b_vals = arithmetic(0.0, 0.1, 101)
        trials = 100
    elif scale == "desk":
        n = 300
        a_vals = arithmetic(1.0, 3.0, 10)
        b_vals = arithmetic(0.5, 1.0, 10)
        trials = 20
    else:
        raise ValueError(f"unknown scale {scale!r}")
    return GridSpec(
        kind="sbm-phase",
        axes=(Axis("a", a_vals), Axis("b", b_vals)),
        trials=trials,
        master_seed=master_seed,
        params={"n": n},
    )


def sbm_misclassification_grid(scale: str, master_seed: int) -> GridSpec:
    if scale == "paper":
        ns = (100, 500, 5000)
        a_vals = arithmetic(2.0, 0.2, 31)
        trials = 100
    elif scale == "desk":
        ns = (100, 500)
        a_vals = arithmetic(3.0, 1.0, 6)
        trials = 30
    else:
        raise ValueError(f"unknown scale {scale!r}")
    return GridSpec(
        kind="sbm-miscl",
        axes=(Axis("n", ns), Axis("a", a_vals)),
        trials=trials,
        master_seed=master_seed,
        params={"b": 2.0},
    )


def sbm_linearization_grid(scale: str, master_seed: int) -> GridSpec:
    if scale == "paper":
        params = {"n": 5000, "a": 4.5, "b": 0.25}
        trials = 100
    elif scale == "desk":
        params = {"n": 1200, "a": 4.5, "b": 0.25}
        trials = 40
    else:
        raise ValueError(f"unknown scale {scale!r}")
    return GridSpec(
        kind="sbm-linearization",
        axes=(Axis("trial_block", (0,)),),
        trials=trials,
        master_seed=master_seed,
        params=params,
    )


def nmc_ratio_grid(scale: str, master_seed: int) -> GridSpec:
    if scale == "paper":
        ns = tuple(range(500, 5001, 500))
        trials = 100
    elif scale == "desk":
        ns = (500, 1000, 1500, 2000, 2500)
        trials = 20
    else:
        raise ValueError(f"unknown scale {scale!r}")
    return GridSpec(
        kind="nmc-ratios",
        axes=(Axis("n", ns),),
        trials=trials,
        master_seed=master_seed,
        params={"rank": 5, "sigma": 1.0, "p_log_factor": 10.0},
    )


PRESETS = {
    "z2-phase": z2_phase_grid,
    "sbm-phase": sbm_phase_grid,
    "sbm-miscl": sbm_misclassification_grid,
    "sbm-linearization": sbm_linearization_grid,
    "nmc-ratios": nmc_ratio_grid,
}


def grid_from_dict(data: dict) -> GridSpec:
    """GridSpec from a plain dict (the JSON config file format mirrors the
    dataclass fields; axes are given as {"name": ..., "values": [...]})."""
    known = {"kind", "axes", "trials", "master_seed", "params"}
    unknown = set(data) - known
    if unknown:
        raise ValueError(f"unknown grid keys: {sorted(unknown)}")
    axes = tuple(Axis(ax["name"], tuple(ax["values"])) for ax in data["axes"])
    return GridSpec(
        kind=data["kind"],
        axes=axes,
        trials=int(data["trials"]),
        master_seed=int(data["master_seed"]),
        params=dict(data.get("params", {})),
    )
