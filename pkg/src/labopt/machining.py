"""Machining process optimization catalog.

Twenty-three published regression surrogates over six processes:
abrasive water jet machining (AWJM), electro-discharge machining
(EDM), micro-turning, micro-milling, micro-drilling, and MQL turning.
Every model is stored as a flat term list ``(coefficient, exponents)``
so each coefficient appears in exactly one place, evaluation is a
single generic routine, and audits can diff the tables directly.

All responses are minimized except EDM material removal rate, which is
maximized.  One catalog quirk is kept on purpose: the printed variable
bounds for MQL turning read like (speed, feed, angle) magnitudes while
the symbols k1..k3 are declared as (feed, angle, speed).  The bounds
are bound positionally to k1..k3 exactly as printed, since re-deriving
the intended pairing would change the optimization problem.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .problem import Problem, Sense

Term = tuple[float, tuple[float, ...]]


@dataclass(frozen=True)
class MachiningSpec:
    """One process/response regression model.

    ``var_names`` pairs each decision symbol with its unit;
    ``var_aliases`` records alternate symbols used in prose
    descriptions of the same model, where they differ.
    """

    process: str
    response: str
    variant: str | None
    sense: Sense
    var_names: tuple[tuple[str, str], ...]
    var_aliases: tuple[str, ...] | None
    lower: tuple[float, ...]
    upper: tuple[float, ...]
    terms: tuple[Term, ...]

    @property
    def key(self) -> str:
        """Selector string: ``process:response`` plus variant if any."""
        parts = [self.process, self.response]
        if self.variant:
            parts.append(self.variant)
        return ":".join(parts)

    @property
    def dim(self) -> int:
        return len(self.var_names)

    def evaluate(self, x: np.ndarray) -> np.ndarray | float:
        """Evaluate the model at one point or an array of points.

        ``x`` has shape ``(dim,)`` or ``(..., dim)``; inputs must lie
        inside the variable box, where the power-law models are
        defined.
        """
        x = np.asarray(x, dtype=float)
        if x.shape[-1] != self.dim:
            raise ValueError(
                f"{self.key} expects {self.dim} variables, got shape {x.shape}"
            )
        lo = np.asarray(self.lower)
        hi = np.asarray(self.upper)
        if np.any(x < lo) or np.any(x > hi):
            raise ValueError(f"input outside the {self.key} variable box")
        out = np.zeros(x.shape[:-1])
        for coef, exps in self.terms:
            term = np.full(x.shape[:-1], coef)
            for i, e in enumerate(exps):
                if e == 0:
                    continue
                term = term * x[..., i] ** e
            out = out + term
        return out if out.ndim else float(out)

    @property
    def problem(self) -> Problem:
        """A fresh Problem wrapping this model."""
        return Problem(
            name=self.key,
            dim=self.dim,
            lower=np.asarray(self.lower),
            upper=np.asarray(self.upper),
            sense=self.sense,
            objective=self.evaluate,
        )


def _spec(process, response, variant, sense, var_names, aliases, lower, upper, terms):
    return MachiningSpec(
        process=process,
        response=response,
        variant=variant,
        sense=sense,
        var_names=tuple(var_names),
        var_aliases=tuple(aliases) if aliases else None,
        lower=tuple(float(v) for v in lower),
        upper=tuple(float(v) for v in upper),
        terms=tuple((float(c), tuple(float(e) for e in exps)) for c, exps in terms),
    )


_MIN = Sense.MINIMIZE
_MAX = Sense.MAXIMIZE

_AWJM_VARS = (("u1", "mm"), ("u2", "mm"), ("u3", "mm"), ("u4", "mm/min"))
_AWJM_LO = (0.9, 0.95, 20.0, 200.0)
_AWJM_HI = (1.25, 1.5, 96.0, 600.0)

_EDM_VARS = (("v1", "A"), ("v2", "V"), ("v3", "us"), ("v4", "us"))
_EDM_LO = (7.5, 45.0, 50.0, 40.0)
_EDM_HI = (12.5, 55.0, 150.0, 60.0)

_MT_VARS = (("mt_w1", "m/min"), ("mt_w2", "um/rev"), ("mt_w3", "um"))
_MT_LO = (25.0, 5.0, 30.0)
_MT_HI = (37.0, 15.0, 70.0)

_MM_VARS = (("f1", "rpm"), ("f2", "mm/min"))
_MM_LO = (1500.0, 1.0)
_MM_HI = (2500.0, 3.0)

_MD_VARS = (("g1", "rpm"), ("g2", "mm/min"))
_MD_LO = (1000.0, 1.0)
_MD_HI = (2500.0, 4.0)

# Positional binding, see the module docstring.
_MQL_VARS = (("k1", "mm/rev"), ("k2", "deg"), ("k3", "m/min"))
_MQL_LO = (200.0, 0.1, 60.0)
_MQL_HI = (300.0, 0.2, 90.0)


def _catalog() -> list[MachiningSpec]:
    return [
        _spec(
            "awjm", "Ra", None, _MIN, _AWJM_VARS, None, _AWJM_LO, _AWJM_HI,
            [
                (-23.309555, (0, 0, 0, 0)),
                (16.6968, (1, 0, 0, 0)),
                (26.9296, (0, 1, 0, 0)),
                (0.0587, (0, 0, 1, 0)),
                (0.0146, (0, 0, 0, 1)),
                (-5.1863, (0, 2, 0, 0)),
                (-10.4571, (1, 1, 0, 0)),
                (-0.0534, (1, 0, 1, 0)),
                (-0.0103, (1, 0, 0, 1)),
                (0.0113, (0, 1, 1, 0)),
                (-0.0039, (0, 1, 0, 1)),
            ],
        ),
        _spec(
            "awjm", "kerf", None, _MIN, _AWJM_VARS, None, _AWJM_LO, _AWJM_HI,
            [
                (-1.15146, (0, 0, 0, 0)),
                (0.70118, (1, 0, 0, 0)),
                (2.72749, (0, 1, 0, 0)),
                (0.00689, (0, 0, 1, 0)),
                (-0.00025, (0, 0, 0, 1)),
                (0.00386, (0, 1, 1, 0)),
                (-0.93947, (0, 2, 0, 0)),
                (-0.25711, (1, 1, 0, 0)),
                (-0.00314, (1, 0, 1, 0)),
                (-0.00249, (1, 0, 0, 1)),
                (0.00196, (0, 1, 0, 1)),
                (-0.00002, (0, 0, 1, 1)),
                (-0.00001, (0, 0, 2, 0)),
            ],
        ),
        _spec(
            "edm", "MRR", None, _MAX, _EDM_VARS, None, _EDM_LO, _EDM_HI,
            [
                (-235.15, (0, 0, 0, 0)),
                (39.7, (1, 0, 0, 0)),
                (4.277, (0, 1, 0, 0)),
                (1.569, (0, 0, 1, 0)),
                (-1.375, (0, 0, 0, 1)),
                (-0.0059, (0, 0, 2, 0)),
                (-0.536, (1, 1, 0, 0)),
            ],
        ),
        _spec(
            "edm", "Ra", None, _MIN, _EDM_VARS, None, _EDM_LO, _EDM_HI,
            [
                (30.347, (0, 0, 0, 0)),
                (-0.618, (1, 0, 0, 0)),
                (-0.438, (0, 1, 0, 0)),
                (0.059, (0, 0, 1, 0)),
                (-0.59, (0, 0, 0, 1)),
                (0.019, (1, 0, 0, 1)),
                (0.0075, (0, 1, 0, 1)),
            ],
        ),
        _spec(
            "edm", "REWR", None, _MIN, _EDM_VARS, None, _EDM_LO, _EDM_HI,
            [
                (196.564, (0, 0, 0, 0)),
                (-24.19, (1, 0, 0, 0)),
                (-3.135, (0, 1, 0, 0)),
                (-1.781, (0, 0, 1, 0)),
                (0.153, (0, 0, 0, 1)),
                (0.464, (1, 1, 0, 0)),
                (0.158, (1, 0, 1, 0)),
                (0.025, (1, 0, 0, 1)),
                (0.029, (0, 1, 1, 0)),
                (-0.017, (0, 1, 0, 1)),
                (-0.003385, (1, 1, 1, 0)),
                (0.093, (2, 0, 0, 0)),
                (0.001491, (0, 0, 2, 0)),
                (0.005265, (0, 0, 0, 2)),
            ],
        ),
        _spec(
            "micro_turning", "fb", None, _MIN, _MT_VARS, None, _MT_LO, _MT_HI,
            [(0.004, (0.495, 0.545, 0.763))],
        ),
        _spec(
            "micro_turning", "Ra", None, _MIN, _MT_VARS, None, _MT_LO, _MT_HI,
            [(0.048, (-0.062, 0.445, 0.516))],
        ),
        _spec(
            "micro_milling", "Ra", "0.7mm", _MIN, _MM_VARS, ("x1", "x2"), _MM_LO, _MM_HI,
            [
                (-0.455378, (0, 0)),
                (0.00027, (1, 0)),
                (0.16422, (0, 1)),
                (-0.000077, (1, 1)),
            ],
        ),
        _spec(
            "micro_milling", "Mt", "0.7mm", _MIN, _MM_VARS, ("x1", "x2"), _MM_LO, _MM_HI,
            [
                (17.71644, (0, 0)),
                (-0.0002, (1, 0)),
                (-4.8404, (0, 1)),
                (0.0001, (1, 1)),
            ],
        ),
        _spec(
            "micro_milling", "Ra", "1mm", _MIN, _MM_VARS, ("x1", "x2"), _MM_LO, _MM_HI,
            [
                (-0.208871, (0, 0)),
                (0.000144, (1, 0)),
                (0.019571, (0, 1)),
            ],
        ),
        _spec(
            "micro_milling", "Mt", "1mm", _MIN, _MM_VARS, ("x1", "x2"), _MM_LO, _MM_HI,
            [
                (20.2906, (0, 0)),
                (-0.0015, (1, 0)),
                (-5.8369, (0, 1)),
                (0.0006, (1, 1)),
            ],
        ),
        _spec(
            "micro_drilling", "Bh", "0.5mm", _MIN, _MD_VARS, ("y1", "y2"), _MD_LO, _MD_HI,
            [
                (420.94, (0, 0)),
                (-0.234, (1, 0)),
                (-99.91, (0, 1)),
                (6.55e-5, (2, 0)),
                (22.152, (0, 2)),
            ],
        ),
        _spec(
            "micro_drilling", "Bt", "0.5mm", _MIN, _MD_VARS, ("y1", "y2"), _MD_LO, _MD_HI,
            [
                (90.57, (0, 0)),
                (-0.049, (1, 0)),
                (-27.12, (0, 1)),
                (1.32e-5, (2, 0)),
                (5.54, (0, 2)),
            ],
        ),
        _spec(
            "micro_drilling", "Bh", "0.6mm", _MIN, _MD_VARS, ("y1", "y2"), _MD_LO, _MD_HI,
            [
                (369.67, (0, 0)),
                (-0.028, (1, 0)),
                (-156.79, (0, 1)),
                (6.64e-6, (2, 0)),
                (23.162, (0, 2)),
            ],
        ),
        _spec(
            "micro_drilling", "Bt", "0.6mm", _MIN, _MD_VARS, ("y1", "y2"), _MD_LO, _MD_HI,
            [
                (35.34, (0, 0)),
                (-0.019, (1, 0)),
                (-0.59, (0, 1)),
                (6.44e-6, (2, 0)),
                (0.51, (0, 2)),
            ],
        ),
        _spec(
            "micro_drilling", "Bh", "0.8mm", _MIN, _MD_VARS, ("y1", "y2"), _MD_LO, _MD_HI,
            [
                (106.116, (0, 0)),
                (0.13, (1, 0)),
                (-6.62, (0, 1)),
                (1.49e-6, (2, 0)),
                (4.75, (0, 2)),
            ],
        ),
        _spec(
            "micro_drilling", "Bt", "0.8mm", _MIN, _MD_VARS, ("y1", "y2"), _MD_LO, _MD_HI,
            [
                (59.79, (0, 0)),
                (-0.024, (1, 0)),
                (-11.3, (0, 1)),
                (7.78e-6, (2, 0)),
                (2.18, (0, 2)),
            ],
        ),
        _spec(
            "micro_drilling", "Bh", "0.9mm", _MIN, _MD_VARS, ("y1", "y2"), _MD_LO, _MD_HI,
            [
                (450.7, (0, 0)),
                (-0.09, (1, 0)),
                (-34.48, (0, 1)),
                (2.34e-5, (2, 0)),
                (5.03, (0, 2)),
            ],
        ),
        _spec(
            "micro_drilling", "Bt", "0.9mm", _MIN, _MD_VARS, ("y1", "y2"), _MD_LO, _MD_HI,
            [
                (80.07, (0, 0)),
                (-0.040, (1, 0)),
                (-14.81, (0, 1)),
                (1.516e-5, (2, 0)),
                (4.65, (0, 2)),
            ],
        ),
        _spec(
            "mql_turning", "Fc", None, _MIN, _MQL_VARS, None, _MQL_LO, _MQL_HI,
            [
                (-202.01471, (0, 0, 0)),
                (1.28250, (0, 0, 1)),
                (3225.0, (1, 0, 0)),
                (-0.74167, (0, 1, 0)),
                (-9.4, (1, 0, 1)),
            ],
        ),
        _spec(
            "mql_turning", "VBmax", None, _MIN, _MQL_VARS, None, _MQL_LO, _MQL_HI,
            [
                (-0.27368, (0, 0, 0)),
                (0.001575, (0, 0, 1)),
                (2.4, (1, 0, 0)),
                (-0.0010833, (0, 1, 0)),
            ],
        ),
        _spec(
            "mql_turning", "Ra", None, _MIN, _MQL_VARS, None, _MQL_LO, _MQL_HI,
            [
                (-0.16294, (0, 0, 0)),
                (0.001425, (0, 0, 1)),
                (3.7, (1, 0, 0)),
                (-0.000416667, (0, 1, 0)),
            ],
        ),
        _spec(
            "mql_turning", "L", None, _MIN, _MQL_VARS, None, _MQL_LO, _MQL_HI,
            [
                (0.96302, (0, 0, 0)),
                (-0.00215931, (0, 0, 1)),
                (0.92703, (1, 0, 0)),
                (0.00152807, (0, 1, 0)),
            ],
        ),
    ]


def machining_registry() -> list[MachiningSpec]:
    """All 23 process/response models."""
    return _catalog()


def get(key: str) -> MachiningSpec:
    """Look up a spec by its ``process:response[:variant]`` key."""
    wanted = key.lower()
    for spec in machining_registry():
        if spec.key.lower() == wanted:
            return spec
    raise KeyError(f"unknown machining problem {key!r}")


def grid_oracle(
    spec: MachiningSpec, points_per_axis: int = 51
) -> tuple[float, np.ndarray]:
    """Exhaustive uniform-grid optimum of one model.

    Every axis is sampled with ``points_per_axis`` equally spaced
    values including both endpoints, and the full cross product is
    evaluated.  Returns the best value under the spec's sense and the
    first grid point attaining it.  Intended as an independent ground
    truth for small dimensions (all catalog entries have dim <= 4).

    Refining the grid can only improve the result: every grid with
    ``2k - 1`` points per axis contains the ``k``-point grid.
    """
    if points_per_axis < 2:
        raise ValueError("points_per_axis must be >= 2")
    axes = [
        np.linspace(lo, hi, points_per_axis)
        for lo, hi in zip(spec.lower, spec.upper)
    ]
    best_value: float | None = None
    best_point: np.ndarray | None = None
    # Slab the first axis so the evaluated block stays small.
    rest = np.meshgrid(*axes[1:], indexing="ij") if spec.dim > 1 else []
    for first in axes[0]:
        if spec.dim == 1:
            block = np.array([[first]])
        else:
            cols = [np.full(rest[0].shape, first)] + list(rest)
            block = np.stack([c.ravel() for c in cols], axis=-1)
        values = spec.evaluate(block)
        idx = int(np.argmax(values) if spec.sense is Sense.MAXIMIZE else np.argmin(values))
        value = float(np.ravel(values)[idx])
        if (
            best_value is None
            or (spec.sense is Sense.MAXIMIZE and value > best_value)
            or (spec.sense is Sense.MINIMIZE and value < best_value)
        ):
            best_value = value
            best_point = block[idx].copy()
    return best_value, best_point


def catalog() -> list[dict]:
    """JSON-ready listing used by the command-line ``list-problems``."""
    return [
        {
            "key": spec.key,
            "process": spec.process,
            "response": spec.response,
            "variant": spec.variant,
            "sense": spec.sense.value,
            "dim": spec.dim,
            "variables": [
                {"symbol": sym, "unit": unit} for sym, unit in spec.var_names
            ],
            "lower": list(spec.lower),
            "upper": list(spec.upper),
        }
        for spec in machining_registry()
    ]
