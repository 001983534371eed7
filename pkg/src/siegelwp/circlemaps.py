"""Orientation-preserving circle homeomorphisms represented by monotone lifts.

Every map is evaluated through its lift: a continuous strictly increasing
function with lift(x + 2 pi) = lift(x) + 2 pi, pinned so that lift(0) lies
in [0, 2 pi).  Three concrete families are provided:

* ``MoebiusMap``     -- disc automorphisms z -> (a z + b)/(conj(b) z + conj(a)),
                        |a|^2 - |b|^2 = 1, evaluated in closed form;
* ``FlowMap``        -- time-t flow of a real trigonometric vector field,
                        integrated with the classical 4th-order scheme;
* ``SampledLift``    -- lift values on a uniform grid with monotone cubic
                        interpolation in between.

Compositions and inverses stay exact where closed forms exist and otherwise
wrap the factors lazily, so that map algebra never injects resampling error.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.interpolate import PchipInterpolator

from .errors import ConfigError, MonotonicityError

TWO_PI = 2.0 * math.pi

# Default sampling density for materialized lifts.
DEFAULT_LIFT_GRID = 4096
# Fixed-step integrator density for flows.
FLOW_STEPS_PER_UNIT = 64
# Grid on which freshly integrated flows are screened for monotonicity.
MONOTONE_CHECK_GRID = 1024


def uniform_grid(n: int) -> np.ndarray:
    return TWO_PI * np.arange(n) / n


def _is_monotone_lift(values: np.ndarray) -> bool:
    return bool(np.all(np.diff(values) > 0.0) and values[0] + TWO_PI > values[-1])


class CircleMap:
    """Base class: subclasses implement ``lift`` on float arrays."""

    def lift(self, x):
        raise NotImplementedError

    def __call__(self, x):
        return self.lift(x)

    def displacement(self, x):
        """The 2 pi periodic part lift(x) - x.

        Closed-form maps override this so that an identity-like map yields
        exact zeros instead of cancellation noise.
        """
        x = np.asarray(x, dtype=float)
        return self.lift(x) - x


def evaluate(m: CircleMap, x):
    """Lift value(s) of the map at x; scalar in, scalar out."""
    arr = np.asarray(x, dtype=float)
    out = m.lift(arr)
    return float(out) if arr.ndim == 0 else out


@dataclass(frozen=True)
class MoebiusMap(CircleMap):
    """Disc automorphism z -> (a z + b)/(conj(b) z + conj(a)).

    The unit-pseudodeterminant constraint |a|^2 - |b|^2 = 1 is validated at
    construction.  The boundary lift is computed branch-free: with
    nu(x) = a + b e^{-ix} one has e^{i lift(x)} = e^{ix} nu(x)/conj(nu(x))
    and arg(nu) never strays more than pi/2 from arg(a), so

        lift(x) = x + 2 arg(a) + 2 Arg(nu(x) conj(a)) + const,

    with the constant fixed by lift(0) in [0, 2 pi).
    """

    a: complex
    b: complex

    def __post_init__(self):
        a = complex(self.a)
        b = complex(self.b)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        det = abs(a) ** 2 - abs(b) ** 2
        scale = max(1.0, abs(a) ** 2 + abs(b) ** 2)
        if abs(det - 1.0) > 1e-12 * scale:
            raise ValueError(f"|a|^2 - |b|^2 = {det!r}, expected 1")
        alpha = math.atan2(a.imag, a.real)
        delta0 = 2.0 * (alpha + np.angle((a + b) * np.conj(a)))
        offset = -TWO_PI * math.floor(delta0 / TWO_PI)
        object.__setattr__(self, "_alpha", alpha)
        object.__setattr__(self, "_offset", float(offset))

    @classmethod
    def rotation(cls, theta: float) -> "MoebiusMap":
        return cls(np.exp(0.5j * theta), 0.0)

    @classmethod
    def identity(cls) -> "MoebiusMap":
        return cls(1.0, 0.0)

    def lift(self, x):
        x = np.asarray(x, dtype=float)
        return x + self.displacement(x)

    def displacement(self, x):
        x = np.asarray(x, dtype=float)
        nu = self.a + self.b * np.exp(-1j * x)
        return 2.0 * (self._alpha + np.angle(nu * np.conj(self.a))) + self._offset

    def disc_action(self, z):
        """The same automorphism evaluated at interior points |z| < 1."""
        return (self.a * z + self.b) / (np.conj(self.b) * z + np.conj(self.a))

    @classmethod
    def normalized(cls, a: complex, b: complex) -> "MoebiusMap":
        """Rescale (a, b) onto |a|^2 - |b|^2 = 1; the map itself is unchanged.

        The fractional-linear action is invariant under positive real
        scaling of the pair, so this loses nothing; pairs with
        |a| <= |b| describe no disc automorphism and are rejected.
        """
        a = complex(a)
        b = complex(b)
        det = abs(a) ** 2 - abs(b) ** 2
        if det <= 0.0:
            raise ValueError(f"|a|^2 - |b|^2 = {det!r} must be positive")
        s = 1.0 / math.sqrt(det)
        return cls(a * s, b * s)


@dataclass(frozen=True)
class VectorField:
    """Real trigonometric polynomial v(x) = sum_{|n|<=B} v_n e^{inx}.

    Stored as the full coefficient array over modes -B..B; the reality
    constraint v_{-n} = conj(v_n) is validated at construction.
    """

    coeffs: np.ndarray

    def __post_init__(self):
        c = np.array(self.coeffs, dtype=complex)
        if c.ndim != 1 or c.size % 2 == 0:
            raise ValueError("coefficients must cover modes -B..B (odd length)")
        defect = float(np.max(np.abs(c[::-1] - np.conj(c))))
        scale = max(1.0, float(np.max(np.abs(c))))
        if defect > 1e-10 * scale:
            raise ValueError(f"field is not real: conjugate-symmetry defect {defect:.3e}")
        c.setflags(write=False)
        object.__setattr__(self, "coeffs", c)

    @property
    def band(self) -> int:
        return (self.coeffs.size - 1) // 2

    @property
    def modes(self) -> np.ndarray:
        B = self.band
        return np.arange(-B, B + 1)

    def coeff(self, n: int) -> complex:
        B = self.band
        if abs(n) > B:
            return 0.0 + 0.0j
        return complex(self.coeffs[n + B])

    def evaluate(self, x):
        x = np.asarray(x, dtype=float)
        phases = np.exp(1j * x[..., None] * self.modes)
        return np.real(phases @ self.coeffs)

    def sup_norm(self, samples: int = 4096) -> float:
        return float(np.max(np.abs(self.evaluate(uniform_grid(samples)))))

    def scaled(self, factor: float) -> "VectorField":
        return VectorField(self.coeffs * float(factor))

    @classmethod
    def from_positive_modes(cls, entries: dict) -> "VectorField":
        """Build from coefficients at modes n >= 0; negatives are conjugated in."""
        if not entries:
            raise ValueError("no coefficients given")
        B = max(int(n) for n in entries)
        if min(int(n) for n in entries) < 0:
            raise ValueError("give modes n >= 0 only")
        c = np.zeros(2 * B + 1, dtype=complex)
        for n, val in entries.items():
            n = int(n)
            val = complex(val)
            if n == 0 and abs(val.imag) > 1e-14 * max(1.0, abs(val)):
                raise ValueError("mode 0 must be real")
            c[n + B] = val
            c[B - n] = np.conj(val)
        return cls(c)

    @classmethod
    def cosine(cls, n: int, amplitude: float = 1.0) -> "VectorField":
        return cls.from_positive_modes({n: amplitude / 2.0})

    @classmethod
    def sine(cls, n: int, amplitude: float = 1.0) -> "VectorField":
        return cls.from_positive_modes({n: amplitude / 2.0j})

    @classmethod
    def constant(cls, value: float) -> "VectorField":
        return cls(np.array([value], dtype=complex))


def _rk4(field: VectorField, x: np.ndarray, t: float, steps: int) -> np.ndarray:
    y = np.array(x, dtype=float, copy=True)
    h = t / steps
    for _ in range(steps):
        k1 = field.evaluate(y)
        k2 = field.evaluate(y + 0.5 * h * k1)
        k3 = field.evaluate(y + 0.5 * h * k2)
        k4 = field.evaluate(y + h * k3)
        y += (h / 6.0) * (k1 + 2.0 * (k2 + k3) + k4)
    return y


@dataclass(frozen=True)
class FlowMap(CircleMap):
    """Time-t flow of a vector field, integrated from any starting angles.

    Monotonicity of the integrated map is screened on a fixed diagnostic
    grid at construction; a step that is too large for the field raises
    MonotonicityError.
    """

    field: VectorField
    t: float
    steps: int

    def __post_init__(self):
        if self.steps < 1:
            raise ValueError("need at least one integration step")
        probe = self.lift(uniform_grid(MONOTONE_CHECK_GRID))
        if not _is_monotone_lift(probe):
            raise MonotonicityError(
                f"flow of band-{self.field.band} field over t={self.t} lost monotonicity; "
                "increase steps or shrink the field"
            )

    def lift(self, x):
        x = np.asarray(x, dtype=float)
        if self.t == 0.0:
            return x.copy()
        return _rk4(self.field, x, self.t, self.steps)


def flow_map(field: VectorField, t: float, steps: int | None = None) -> FlowMap:
    """Flow of ``field`` for time ``t`` (default 64 integration steps per unit time)."""
    if steps is None:
        steps = max(1, math.ceil(FLOW_STEPS_PER_UNIT * abs(t)))
    return FlowMap(field, float(t), int(steps))


class SampledLift(CircleMap):
    """Lift known only through its values on the uniform grid x_j = 2 pi j / G.

    Values must be strictly increasing and wrap by exactly 2 pi.  Off-grid
    evaluation uses shape-preserving (monotone) cubic interpolation over a
    periodized extension, so the interpolant is itself a valid lift.
    """

    def __init__(self, values):
        v = np.array(values, dtype=float)
        if v.ndim != 1 or v.size < 4:
            raise ValueError("need at least 4 grid samples")
        if not _is_monotone_lift(v):
            raise MonotonicityError("samples are not a strictly increasing lift")
        v.setflags(write=False)
        self.values = v
        self.grid_size = v.size
        self._interp = None

    @classmethod
    def from_map(cls, m: CircleMap, grid_size: int = DEFAULT_LIFT_GRID) -> "SampledLift":
        return cls(m.lift(uniform_grid(grid_size)))

    def _interpolant(self):
        if self._interp is None:
            xg = uniform_grid(self.grid_size)
            xs = np.concatenate([xg - TWO_PI, xg, xg + TWO_PI])
            vs = np.concatenate([self.values - TWO_PI, self.values, self.values + TWO_PI])
            self._interp = PchipInterpolator(xs, vs, extrapolate=False)
        return self._interp

    def lift(self, x):
        x = np.asarray(x, dtype=float)
        k = np.floor(x / TWO_PI)
        r = x - TWO_PI * k
        return self._interpolant()(r) + TWO_PI * k


@dataclass(frozen=True)
class ComposedMap(CircleMap):
    """Lazy functional composition outer(inner(x)); exactly associative."""

    outer: CircleMap
    inner: CircleMap

    def lift(self, x):
        return self.outer.lift(self.inner.lift(x))


@dataclass(frozen=True)
class InverseMap(CircleMap):
    """Inverse of a monotone map, solved by bisection on the forward lift."""

    base: CircleMap

    def lift(self, y):
        y = np.asarray(y, dtype=float)
        c0 = float(self.base.lift(np.zeros(1))[0])
        k = np.floor((y - c0) / TWO_PI)
        target = y - TWO_PI * k  # now in [c0, c0 + 2 pi)
        lo = np.zeros_like(target)
        hi = np.full_like(target, TWO_PI)
        for _ in range(64):
            mid = 0.5 * (lo + hi)
            below = self.base.lift(mid) < target
            lo = np.where(below, mid, lo)
            hi = np.where(below, hi, mid)
        return 0.5 * (lo + hi) + TWO_PI * k


def compose(f: CircleMap, g: CircleMap) -> CircleMap:
    """The map x -> f(g(x)); closed form when both factors are Moebius."""
    if isinstance(f, MoebiusMap) and isinstance(g, MoebiusMap):
        a = f.a * g.a + f.b * np.conj(g.b)
        b = f.a * g.b + f.b * np.conj(g.a)
        s = abs(a) ** 2 - abs(b) ** 2  # renormalize roundoff drift
        if s <= 0:
            raise ValueError("composition left the automorphism group")
        root = math.sqrt(s)
        return MoebiusMap(a / root, b / root)
    return ComposedMap(f, g)


def invert(m: CircleMap) -> CircleMap:
    """Inverse circle map: closed form for Moebius, reversed time for flows."""
    if isinstance(m, MoebiusMap):
        return MoebiusMap(np.conj(m.a), -m.b)
    if isinstance(m, FlowMap):
        return FlowMap(m.field, -m.t, m.steps)
    if isinstance(m, InverseMap):
        return m.base
    return InverseMap(m)


def qs_grid(nx: int = 256, nt: int = 64, t_max: float = math.pi):
    """Default evaluation grid for the quasisymmetry ratio: base angles x
    uniform on [0, 2 pi), offsets t equispaced in (0, t_max]."""
    return uniform_grid(nx), t_max * np.arange(1, nt + 1) / nt


def qs_profile(m: CircleMap, x: np.ndarray, ts: np.ndarray) -> np.ndarray:
    """Per-offset worst symmetric difference ratio max(r, 1/r).

    Differences are assembled from displacements, f(x+t) - f(x) =
    t + d(x+t) - d(x), so maps with constant displacement (identity,
    rotations) give the ratio 1.0 bit-exactly.
    """
    x = np.asarray(x, dtype=float)
    ts = np.asarray(ts, dtype=float)
    base = m.displacement(x)
    out = np.empty(ts.size)
    for i, t in enumerate(ts):
        num = t + (m.displacement(x + t) - base)
        den = t + (base - m.displacement(x - t))
        if np.any(num <= 0.0) or np.any(den <= 0.0):
            raise MonotonicityError("nonpositive symmetric difference; map is not increasing")
        r = num / den
        out[i] = max(float(np.max(r)), float(np.max(1.0 / r)))
    return out


def qs_ratio(m: CircleMap, grid=None) -> float:
    """Sampled quasisymmetry bound: sup over the grid of max(r, 1/r).

    Equals exactly 1.0 for the identity; >= 1 always.
    """
    x, ts = qs_grid() if grid is None else grid
    return float(np.max(qs_profile(m, np.asarray(x, float), np.asarray(ts, float))))


def _std_triple_matrix(z1: complex, z2: complex, z3: complex) -> np.ndarray:
    # Fractional-linear map sending (z1, z2, z3) to (0, 1, infinity).
    return np.array(
        [[z2 - z3, -z1 * (z2 - z3)], [z2 - z1, -z3 * (z2 - z1)]], dtype=complex
    )


def fit_moebius_three_points(p, q) -> MoebiusMap:
    """The unique disc automorphism sending e^{i p_k} to e^{i q_k}, k = 1..3.

    Both triples must be distinct and in the same cyclic order; otherwise the
    interpolating fractional-linear map is not a disc automorphism and a
    ValueError is raised.
    """
    p = np.asarray(p, dtype=float)
    q = np.asarray(q, dtype=float)
    if p.shape != (3,) or q.shape != (3,):
        raise ValueError("need exactly three source and three target angles")
    zp = np.exp(1j * p)
    zq = np.exp(1j * q)
    for z in (zp, zq):
        if min(abs(z[0] - z[1]), abs(z[1] - z[2]), abs(z[0] - z[2])) < 1e-9:
            raise ValueError("coincident points make the fit degenerate")
    T = np.linalg.solve(_std_triple_matrix(*zq), _std_triple_matrix(*zp))
    det = T[0, 0] * T[1, 1] - T[0, 1] * T[1, 0]
    if abs(det) < 1e-12:
        raise ValueError("degenerate point configuration")
    T = T / np.sqrt(det)
    a = 0.5 * (T[0, 0] + np.conj(T[1, 1]))
    b = 0.5 * (T[0, 1] + np.conj(T[1, 0]))
    structure = max(abs(T[0, 0] - np.conj(T[1, 1])), abs(T[0, 1] - np.conj(T[1, 0])))
    s = abs(a) ** 2 - abs(b) ** 2
    if structure > 1e-8 * max(1.0, abs(a), abs(b)) or s <= 0.0:
        raise ValueError("triples are not in the same cyclic order on the circle")
    root = math.sqrt(s)
    return MoebiusMap(a / root, b / root)


# Angles of the conventional normalization triple (-1, -i, 1).
NORMALIZATION_ANGLES = (math.pi, 1.5 * math.pi, TWO_PI)


def normalize_fixing_three_points(m: CircleMap, angles=NORMALIZATION_ANGLES) -> CircleMap:
    """Post-compose with the disc automorphism that pins the three-point frame.

    The result fixes e^{i angles_k} and represents the same coset modulo
    Moebius maps.
    """
    angles = np.asarray(angles, dtype=float)
    images = m.lift(angles)
    mu = fit_moebius_three_points(images, angles)
    return compose(mu, m)


def map_from_spec(spec) -> CircleMap:
    """Build a circle map from its JSON-style description.

    Supported forms::

        {"type": "moebius", "a": [re, im], "b": [re, im]}
        {"type": "rotation", "theta": 1.57}
        {"type": "flow", "coeffs": [[n, re, im], ...], "t": 1.0, "steps": 64}

    Flow coefficients are given for modes n >= 0 only; negative modes follow
    from reality.  ``steps`` is optional.  Moebius pairs are rescaled onto
    |a|^2 - |b|^2 = 1, which leaves the map unchanged; |a| <= |b| is rejected.
    """
    if not isinstance(spec, dict):
        raise ConfigError("map specification must be a JSON object")
    kind = spec.get("type")
    try:
        if kind == "moebius":
            a_re, a_im = spec["a"]
            b_re, b_im = spec["b"]
            return MoebiusMap.normalized(complex(a_re, a_im), complex(b_re, b_im))
        if kind == "rotation":
            return MoebiusMap.rotation(float(spec["theta"]))
        if kind == "flow":
            entries = {int(n): complex(re, im) for n, re, im in spec["coeffs"]}
            field = VectorField.from_positive_modes(entries)
            steps = spec.get("steps")
            return flow_map(field, float(spec["t"]), None if steps is None else int(steps))
    except (KeyError, TypeError, ValueError) as exc:
        raise ConfigError(f"bad {kind!r} map specification: {exc}") from exc
    raise ConfigError(f"unknown map type {kind!r}")
