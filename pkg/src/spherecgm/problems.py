"""Problem files: JSON schema, builtin instances and seeded random instances.

A problem file is a JSON object::

    {
      "name": "linear_square",                # optional
      "anchor": [0.0, 0.0, 1.0],              # sphere point p
      "cone": [[1.0, 0.0], [0.0, 1.0]],       # generators of C_p in the basis at p
      "polygon": [[0, 0], [1, 0], [1, 1], [0, 1]],   # Omega, CCW
      "objective": {"type": "linear", "A": [[-1, 0], [0, -1]], "b": [0, 0]},
      "start": [0.0, 0.0],
      "params": {"beta": 0.5, "delta": 0.5, "tol_station": 1e-8,
                 "max_iter": 500, "armijo_max_pow": 60}
    }

``objective`` is one of ``{"type": "linear", "A", "b"}``,
``{"type": "logmap", "eval_point": [x, y, z]}`` or
``{"type": "builtin", "name": ...}``. For ``logmap`` objectives the values
live in the tangent plane at ``eval_point``, so the solver uses the cone
parallel-transported there.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field, fields

import numpy as np
from scipy.spatial import ConvexHull

from .cones import SectorCone, make_cone, transport_cone
from .icgm import SolverParams
from .objectives import (
    BUILTIN_OBJECTIVES,
    FeasiblePolygon,
    SmoothObjective,
    builtin_objective,
    linear_objective,
    logmap_objective,
    polygon_contains,
    polygon_make,
)
from .sphere import exp_map, from_coords, make_basis, sphere_point

BUILTIN_NAMES = ("linear_square", "rotated_cone_triangle", "logmap_near", "logmap_far")
_PARAM_NAMES = tuple(f.name for f in fields(SolverParams))


class ProblemFileError(ValueError):
    """Invalid problem file; ``field`` names the offending entry."""

    def __init__(self, field_name: str, message: str):
        super().__init__(f"{field_name}: {message}")
        self.field = field_name


@dataclass
class Instance:
    """Solver-ready objects built from a :class:`Problem`."""

    anchor: np.ndarray
    objective: SmoothObjective
    cone: SectorCone
    polygon: FeasiblePolygon
    start: np.ndarray
    params: SolverParams


@dataclass
class Problem:
    anchor: list
    cone: list
    polygon: list
    objective: dict
    start: list
    params: dict = field(default_factory=dict)
    name: str | None = None

    def to_dict(self) -> dict:
        out = {} if self.name is None else {"name": self.name}
        out.update(
            anchor=self.anchor,
            cone=self.cone,
            polygon=self.polygon,
            objective=self.objective,
            start=self.start,
            params=self.params,
        )
        return out

    def dumps(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"

    def with_params(self, **overrides) -> "Problem":
        params = dict(self.params)
        params.update({k: v for k, v in overrides.items() if v is not None})
        return Problem(self.anchor, self.cone, self.polygon, self.objective, self.start, params, self.name)

    def build(self) -> Instance:
        """Validate every field and construct the solver objects."""
        anchor = _vector("anchor", self.anchor, 3)
        try:
            anchor = sphere_point(anchor)
        except ValueError as exc:
            raise ProblemFileError("anchor", str(exc)) from None

        if not isinstance(self.cone, list) or len(self.cone) != 2:
            raise ProblemFileError("cone", "expected exactly two generators")
        gens = [_vector(f"cone[{i}]", g, 2) for i, g in enumerate(self.cone)]
        try:
            cone = make_cone(*gens)
        except ValueError as exc:
            raise ProblemFileError("cone", str(exc)) from None

        try:
            poly = polygon_make(self.polygon)
        except ValueError as exc:
            raise ProblemFileError("polygon", str(exc)) from None

        objective, cone = _objective(self.objective, anchor, cone)

        start = _vector("start", self.start, 2)
        if not polygon_contains(poly, start):
            raise ProblemFileError("start", "start point lies outside the polygon")

        if not isinstance(self.params, dict):
            raise ProblemFileError("params", "expected an object")
        unknown = set(self.params) - set(_PARAM_NAMES)
        if unknown:
            raise ProblemFileError("params", f"unknown entries {sorted(unknown)}")
        try:
            params = SolverParams(**self.params)
        except (TypeError, ValueError) as exc:
            bad = next((n for n in _PARAM_NAMES if n in str(exc)), None)
            raise ProblemFileError(f"params.{bad}" if bad else "params", str(exc)) from None
        return Instance(anchor, objective, cone, poly, start, params)


def _vector(name, value, size):
    try:
        v = np.array(value, dtype=float)
    except (TypeError, ValueError):
        raise ProblemFileError(name, f"expected {size} numbers") from None
    if v.shape != (size,) or not np.all(np.isfinite(v)):
        raise ProblemFileError(name, f"expected {size} finite numbers, got {value!r}")
    return v


def _objective(spec, anchor, cone):
    if not isinstance(spec, dict) or "type" not in spec:
        raise ProblemFileError("objective", "expected an object with a 'type' entry")
    kind = spec["type"]
    if kind == "linear":
        A = np.array(spec.get("A"), dtype=float) if spec.get("A") is not None else None
        if A is None or A.shape != (2, 2) or not np.all(np.isfinite(A)):
            raise ProblemFileError("objective.A", "expected a finite 2x2 matrix")
        return linear_objective(A, _vector("objective.b", spec.get("b"), 2)), cone
    if kind == "logmap":
        y = sphere_point(_vector("objective.eval_point", spec.get("eval_point"), 3))
        if np.dot(y, anchor) < -1.0 + 1e-12:
            raise ProblemFileError("objective.eval_point", "antipodal to the anchor")
        moved = transport_cone(cone, make_basis(anchor), make_basis(y))
        return logmap_objective(anchor, y), moved
    if kind == "builtin":
        name = spec.get("name")
        if name not in BUILTIN_OBJECTIVES:
            raise ProblemFileError(
                "objective.name", f"unknown builtin {name!r}; choose from {sorted(BUILTIN_OBJECTIVES)}"
            )
        return builtin_objective(name), cone
    raise ProblemFileError("objective.type", f"unknown objective type {kind!r}")


def parse_problem(text: str) -> Problem:
    """Parse and validate problem JSON; raises :class:`ProblemFileError`."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ProblemFileError(f"line {exc.lineno}", exc.msg) from None
    if not isinstance(data, dict):
        raise ProblemFileError("<root>", "expected a JSON object")
    required = ("anchor", "cone", "polygon", "objective", "start")
    for key in required:
        if key not in data:
            raise ProblemFileError(key, "missing")
    unknown = set(data) - set(required) - {"params", "name"}
    if unknown:
        raise ProblemFileError(sorted(unknown)[0], "unknown field")
    problem = Problem(
        anchor=data["anchor"],
        cone=data["cone"],
        polygon=data["polygon"],
        objective=data["objective"],
        start=data["start"],
        params=data.get("params", {}),
        name=data.get("name"),
    )
    problem.build()
    return problem


def load_problem(path) -> Problem:
    with open(path, encoding="utf-8") as fh:
        return parse_problem(fh.read())


def _r(x, nd=12):
    return [float(round(float(v), nd)) for v in np.ravel(x)]


def _pairs(x):
    return [_r(row) for row in np.asarray(x, dtype=float)]


def _lifted(anchor, z):
    p = sphere_point(anchor)
    return _r(exp_map(p, from_coords(make_basis(p), z)))


def _default_params():
    return {"beta": 0.5, "delta": 0.5, "tol_station": 1e-8, "max_iter": 500, "armijo_max_pow": 60}


def builtin_problem(name: str) -> Problem:
    """One of the named benchmark instances in :data:`BUILTIN_NAMES`."""
    if name == "linear_square":
        return Problem(
            name=name,
            anchor=[0.0, 0.0, 1.0],
            cone=[[1.0, 0.0], [0.0, 1.0]],
            polygon=[[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]],
            objective={"type": "linear", "A": [[-1.0, 0.0], [0.0, -1.0]], "b": [0.0, 0.0]},
            start=[0.0, 0.0],
            params=_default_params(),
        )
    if name == "rotated_cone_triangle":
        a1, a2 = np.deg2rad(20.0), np.deg2rad(95.0)
        return Problem(
            name=name,
            anchor=[0.0, 0.0, 1.0],
            cone=[_r([np.cos(a1), np.sin(a1)]), _r([np.cos(a2), np.sin(a2)])],
            polygon=[[-0.6, -0.4], [0.9, -0.1], [0.1, 0.8]],
            objective={"type": "linear", "A": [[-1.0, 0.3], [0.2, -0.8]], "b": [0.1, -0.2]},
            start=[-0.4, -0.3],
            params=_default_params(),
        )
    if name == "logmap_near":
        anchor = [0.0, 0.0, 1.0]
        return Problem(
            name=name,
            anchor=anchor,
            cone=[[1.0, 0.0], [0.0, 1.0]],
            polygon=[[-0.5, -0.5], [0.3, -0.5], [0.5, 0.5], [-0.5, 0.3]],
            objective={"type": "logmap", "eval_point": _lifted(anchor, [0.15, 0.1])},
            start=[-0.3, -0.2],
            params=_default_params(),
        )
    if name == "logmap_far":
        anchor = _r(sphere_point([1.0, 1.0, 1.0]))
        return Problem(
            name=name,
            anchor=anchor,
            cone=[[1.0, 0.3], [-0.2, 1.0]],
            polygon=[[-1.2, -1.0], [0.8, -1.2], [1.4, 0.4], [0.2, 1.4], [-1.0, 0.8]],
            objective={"type": "logmap", "eval_point": _lifted(anchor, [1.5, -1.0])},
            start=[-0.4, 0.3],
            params=_default_params(),
        )
    raise KeyError(f"unknown builtin instance {name!r}; choose from {list(BUILTIN_NAMES)}")


def random_problem(seed: int) -> Problem:
    """Seeded random instance.

    Anchor uniform on the sphere; cone opening uniform in [pi/6, 5pi/6] at a
    uniform orientation; polygon the convex hull of 5 to 9 uniform points in
    [-1, 1]^2; objective affine (Gaussian ``A``, ``b``) or, with probability
    1/2, the log-map objective at a point within 0.5 rad of the anchor;
    start at the vertex mean.
    """
    rng = np.random.default_rng(seed)
    anchor = sphere_point(rng.standard_normal(3))
    opening = rng.uniform(np.pi / 6, 5 * np.pi / 6)
    phase = rng.uniform(0.0, 2 * np.pi)
    cone = [[np.cos(phase), np.sin(phase)], [np.cos(phase + opening), np.sin(phase + opening)]]
    while True:
        pts = rng.uniform(-1.0, 1.0, size=(int(rng.integers(5, 10)), 2))
        hull = ConvexHull(pts)
        verts = pts[hull.vertices]
        if len(verts) >= 3 and hull.volume > 1e-3:
            break
    if rng.random() < 0.5:
        objective = {
            "type": "linear",
            "A": _pairs(rng.standard_normal((2, 2))),
            "b": _r(rng.standard_normal(2)),
        }
    else:
        radius = rng.uniform(0.0, 0.5)
        angle = rng.uniform(0.0, 2 * np.pi)
        objective = {
            "type": "logmap",
            "eval_point": _lifted(anchor, radius * np.array([np.cos(angle), np.sin(angle)])),
        }
    verts = np.array(_pairs(verts))
    return Problem(
        name=f"random_{seed}",
        anchor=_r(anchor),
        cone=_pairs(cone),
        polygon=verts.tolist(),
        objective=objective,
        start=_r(verts.mean(axis=0)),
        params=_default_params(),
    )
