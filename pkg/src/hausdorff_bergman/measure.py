"""Positive sigma-finite measures on (0, inf).

A measure is a finite list of weighted atoms plus absolutely continuous
density segments.  Segments that touch 0 or infinity must declare endpoint
exponents (density ~ c * t^a near the endpoint); convergence of improper
moment integrals is decided from the exponents alone, never by numeric
extrapolation.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Callable

import numpy as np

from .errors import MissingExponentMetadata
from .quadrature import QuadratureConfig, integrate_segment

__all__ = [
    "Atom",
    "DensitySegment",
    "Measure",
    "MomentResult",
    "Boundedness",
    "moment",
    "theoretical_norm",
    "truncate",
    "restrict",
    "pushforward_inverse",
    "classify_boundedness",
    "measure_from_json",
    "measure_to_json",
    "load_measure",
    "dump_measure",
]


@dataclass(frozen=True)
class Atom:
    """A point mass: weight at location (location > 0, weight >= 0)."""

    location: float
    weight: float

    def __post_init__(self) -> None:
        if not (self.location > 0):
            raise ValueError(f"atom location must be > 0, got {self.location}")
        if not (self.weight >= 0):
            raise ValueError(f"atom weight must be >= 0, got {self.weight}")


# serialized density kinds: ("const", [c]) -> c, ("power", [c, a]) -> c*t^a,
# ("exp", [c, b]) -> c*exp(-b*t), ("expr", [source]) -> numpy expression in t
DensitySpec = tuple[str, tuple]

_EXPR_NAMES = {
    "exp": np.exp,
    "log": np.log,
    "sqrt": np.sqrt,
    "sin": np.sin,
    "cos": np.cos,
    "tan": np.tan,
    "abs": np.abs,
    "pi": math.pi,
    "e": math.e,
    "np": np,
}


def _density_from_spec(spec: DensitySpec) -> Callable:
    kind, params = spec
    if kind == "const":
        (c,) = params
        return lambda t: np.full_like(np.asarray(t, dtype=float), float(c))
    if kind == "power":
        c, a = params
        return lambda t: float(c) * np.asarray(t, dtype=float) ** float(a)
    if kind == "exp":
        c, b = params
        return lambda t: float(c) * np.exp(-float(b) * np.asarray(t, dtype=float))
    if kind == "expr":
        (source,) = params
        code = compile(source, "<density-expr>", "eval")

        def f(t):
            return np.asarray(
                eval(code, {"__builtins__": {}}, {**_EXPR_NAMES, "t": np.asarray(t)}),
                dtype=float,
            )

        return f
    raise ValueError(f"unknown density kind {kind!r}")


@dataclass(frozen=True)
class DensitySegment:
    """An absolutely continuous piece: density on (lower, upper).

    lower may be 0 and upper may be inf; in those cases exp_lo / exp_hi
    must describe the endpoint behaviour density(t) ~ c * t^exponent
    (exp_hi = -inf marks faster-than-any-power decay).  The density callable
    must accept numpy arrays and return non-negative values.
    """

    lower: float
    upper: float
    density: Callable = field(compare=False)
    exp_lo: float | None = None
    exp_hi: float | None = None
    spec: DensitySpec | None = None

    def __post_init__(self) -> None:
        if self.lower < 0:
            raise ValueError("segment lower endpoint must be >= 0")
        if not (self.lower < self.upper):
            raise ValueError("segment needs lower < upper")

    @classmethod
    def from_spec(cls, lower: float, upper: float, spec: DensitySpec,
                  exp_lo: float | None = None,
                  exp_hi: float | None = None) -> "DensitySegment":
        return cls(lower, upper, _density_from_spec(spec), exp_lo, exp_hi, spec)

    @property
    def touches_zero(self) -> bool:
        return self.lower == 0.0

    @property
    def touches_infinity(self) -> bool:
        return math.isinf(self.upper)

    def require_exponents(self) -> None:
        if self.touches_zero and self.exp_lo is None:
            raise MissingExponentMetadata(
                "segment touches 0 without a lower endpoint exponent"
            )
        if self.touches_infinity and self.exp_hi is None:
            raise MissingExponentMetadata(
                "segment touches infinity without an upper endpoint exponent"
            )


@dataclass(frozen=True)
class Measure:
    """Atoms plus density segments; immutable and freely shareable."""

    atoms: tuple[Atom, ...] = ()
    segments: tuple[DensitySegment, ...] = ()

    def __post_init__(self) -> None:
        atoms = tuple(self.atoms)
        segments = tuple(self.segments)
        object.__setattr__(self, "atoms", atoms)
        object.__setattr__(self, "segments", segments)
        locs = [a.location for a in atoms]
        if len(set(locs)) != len(locs):
            raise ValueError("atom locations must be distinct")

    @classmethod
    def from_atoms(cls, *pairs: tuple[float, float]) -> "Measure":
        return cls(atoms=tuple(Atom(t, w) for t, w in pairs))

    @property
    def is_zero(self) -> bool:
        return not self.atoms and not self.segments

    def support_infimum(self) -> float:
        """Infimum of the support (inf for the zero measure)."""
        lows = [a.location for a in self.atoms] + [s.lower for s in self.segments]
        return min(lows) if lows else math.inf

    def support_supremum(self) -> float:
        highs = [a.location for a in self.atoms] + [s.upper for s in self.segments]
        return max(highs) if highs else 0.0

    def check_finite_on_compacts(self, delta: float = 1e-3,
                                 cfg: QuadratureConfig | None = None) -> float:
        """Total mass on [delta, 1/delta]; finiteness check for sigma-finiteness."""
        clipped = truncate(self, delta)
        total = sum(a.weight for a in clipped.atoms)
        for seg in clipped.segments:
            res = integrate_segment(seg.density, seg.lower, seg.upper, cfg)
            total += float(np.real(res.value))
        if not math.isfinite(total):
            raise ValueError("measure is not finite on compact subsets of (0, inf)")
        return total


@dataclass(frozen=True)
class MomentResult:
    """Extended non-negative value of a moment integral.

    value is math.inf when divergence was proven from endpoint exponents;
    otherwise a finite number with a quadrature error estimate.
    """

    value: float
    error_estimate: float = 0.0

    @property
    def diverged(self) -> bool:
        return math.isinf(self.value)

    @property
    def is_finite(self) -> bool:
        return math.isfinite(self.value)

    def __float__(self) -> float:
        return self.value


class Boundedness(Enum):
    BOUNDED = "Bounded"
    UNBOUNDED = "Unbounded"
    INCONCLUSIVE = "Inconclusive"

    def __str__(self) -> str:  # pragma: no cover - cosmetic
        return self.value


def _segment_diverges(seg: DensitySegment, alpha: float) -> bool:
    """Divergence of integral t^alpha * density over seg, from exponents.

    Requires exponents present for improper endpoints (caller checks).
    Near 0 the integrand behaves like t^(alpha + exp_lo): divergent iff the
    combined exponent is <= -1.  Near infinity: divergent iff >= -1.
    """
    if seg.touches_zero and alpha + seg.exp_lo <= -1.0:
        return True
    if seg.touches_infinity and alpha + seg.exp_hi >= -1.0:
        return True
    return False


def moment(mu: Measure, alpha: float, cfg: QuadratureConfig | None = None) -> MomentResult:
    """The moment integral of t^alpha against mu.

    Returns an infinite MomentResult when endpoint exponents prove
    divergence; raises MissingExponentMetadata when a segment touches an
    improper endpoint without metadata and QuadratureFailure when the
    numeric part cannot reach tolerance.
    """
    cfg = cfg or QuadratureConfig()
    for seg in mu.segments:
        seg.require_exponents()
    for seg in mu.segments:
        if _segment_diverges(seg, alpha):
            return MomentResult(math.inf)

    atom_part = 0.0
    if mu.atoms:
        locs = np.array([a.location for a in mu.atoms])
        wts = np.array([a.weight for a in mu.atoms])
        atom_part = float(np.sum(wts * locs**alpha))

    total = atom_part
    err = 0.0
    for seg in mu.segments:
        dens = seg.density

        if seg.spec is not None and seg.spec[0] == "power":
            # fuse the exponents: c * t^(alpha + a) cannot overflow at
            # extreme t where the separate factors would
            c, a = seg.spec[1]

            def integrand(t, c=float(c), a=float(a)):
                return c * np.asarray(t, dtype=float) ** (alpha + a)

        else:

            def integrand(t, dens=dens):
                return np.asarray(t, dtype=float) ** alpha * np.asarray(dens(t))

        res = integrate_segment(integrand, seg.lower, seg.upper, cfg)
        res.require_converged(f"moment integral over [{seg.lower}, {seg.upper}]")
        total += float(np.real(res.value))
        err += res.error_estimate
    return MomentResult(total, err)


def theoretical_norm(mu: Measure, p: float,
                     cfg: QuadratureConfig | None = None) -> MomentResult:
    """Operator norm of the dilation average on the p-Bergman space:
    the moment of t^(2/p - 1); infinite iff the operator is unbounded."""
    if p < 1:
        raise ValueError("p must be >= 1")
    return moment(mu, 2.0 / p - 1.0, cfg)


def restrict(mu: Measure, lo: float, hi: float) -> Measure:
    """Restriction of mu to the closed window [lo, hi]."""
    atoms = tuple(a for a in mu.atoms if lo <= a.location <= hi)
    segments = []
    for seg in mu.segments:
        new_lo = max(seg.lower, lo)
        new_hi = min(seg.upper, hi)
        if new_lo >= new_hi:
            continue
        # clipped segments have proper endpoints, exponents no longer needed
        keep_lo = seg.exp_lo if new_lo == seg.lower else None
        keep_hi = seg.exp_hi if new_hi == seg.upper else None
        keep_spec = seg.spec
        segments.append(
            DensitySegment(new_lo, new_hi, seg.density, keep_lo, keep_hi, keep_spec)
        )
    return Measure(atoms=atoms, segments=tuple(segments))


def truncate(mu: Measure, delta: float) -> Measure:
    """Restriction of mu to [delta, 1/delta] (both endpoints included)."""
    if not (0.0 < delta < 1.0):
        raise ValueError("delta must lie in (0, 1)")
    return restrict(mu, delta, 1.0 / delta)


def _pushforward_spec(spec: DensitySpec | None) -> DensitySpec | None:
    """Serialized form of u(1/t)/t^2 where representable."""
    if spec is None:
        return None
    kind, params = spec
    if kind == "const":
        (c,) = params
        return ("power", (float(c), -2.0))
    if kind == "power":
        c, a = params
        return ("power", (float(c), -float(a) - 2.0))
    if kind == "exp":
        c, b = params
        return ("expr", (f"({float(c)!r})*exp(-({float(b)!r})/t)*t**-2.0",))
    return None


def pushforward_inverse(mu: Measure) -> Measure:
    """Image of mu under t -> 1/t.

    Atoms move from s to 1/s with unchanged weight; a segment [a, b] with
    density u becomes [1/b, 1/a] with density t -> u(1/t)/t^2, and endpoint
    exponents swap roles via a -> -a - 2.
    """
    atoms = tuple(Atom(1.0 / a.location, a.weight) for a in mu.atoms)
    segments = []
    for seg in mu.segments:
        new_lo = 0.0 if math.isinf(seg.upper) else 1.0 / seg.upper
        new_hi = math.inf if seg.lower == 0.0 else 1.0 / seg.lower
        dens = seg.density

        def new_density(t, dens=dens):
            t = np.asarray(t, dtype=float)
            return np.asarray(dens(1.0 / t)) / t**2

        segments.append(
            DensitySegment(
                new_lo,
                new_hi,
                new_density,
                exp_lo=None if seg.exp_hi is None else -seg.exp_hi - 2.0,
                exp_hi=None if seg.exp_lo is None else -seg.exp_lo - 2.0,
                spec=_pushforward_spec(seg.spec),
            )
        )
    return Measure(atoms=atoms, segments=tuple(segments))


def classify_boundedness(mu: Measure, p: float) -> Boundedness:
    """Decide boundedness of the dilation average on the p-Bergman space.

    Bounded iff the moment of t^(2/p - 1) is finite; decided symbolically
    from endpoint exponents (near 0 this needs exp_lo + 2/p > 0, near
    infinity exp_hi + 2/p < 0).  Missing metadata yields Inconclusive.
    """
    if p < 1:
        raise ValueError("p must be >= 1")
    alpha = 2.0 / p - 1.0
    verdict = Boundedness.BOUNDED
    for seg in mu.segments:
        if (seg.touches_zero and seg.exp_lo is None) or (
            seg.touches_infinity and seg.exp_hi is None
        ):
            verdict = Boundedness.INCONCLUSIVE
            continue
        if _segment_diverges(seg, alpha):
            return Boundedness.UNBOUNDED
    return verdict


# ---------------------------------------------------------------------------
# JSON serialization
# ---------------------------------------------------------------------------

SCHEMA_VERSION = 1


def _num_to_json(x: float | None):
    if x is None:
        return None
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return x


def _num_from_json(x):
    if x is None:
        return None
    if isinstance(x, str):
        if x == "inf":
            return math.inf
        if x == "-inf":
            return -math.inf
        return float(x)
    return float(x)


def measure_to_json(mu: Measure) -> dict:
    """JSON-ready dict; raises for segments built from raw closures."""
    segments = []
    for seg in mu.segments:
        if seg.spec is None:
            raise ValueError(
                "segment density has no serializable spec "
                "(build it with DensitySegment.from_spec)"
            )
        kind, params = seg.spec
        segments.append(
            {
                "lo": seg.lower,
                "hi": _num_to_json(seg.upper),
                "density": {"kind": kind, "params": list(params)},
                "exp_lo": _num_to_json(seg.exp_lo),
                "exp_hi": _num_to_json(seg.exp_hi),
            }
        )
    return {
        "schema_version": SCHEMA_VERSION,
        "atoms": [{"t": a.location, "w": a.weight} for a in mu.atoms],
        "segments": segments,
    }


def measure_from_json(doc: dict) -> Measure:
    atoms = tuple(Atom(float(a["t"]), float(a["w"])) for a in doc.get("atoms", []))
    segments = []
    for s in doc.get("segments", []):
        dens = s["density"]
        spec = (str(dens["kind"]), tuple(dens["params"]))
        segments.append(
            DensitySegment.from_spec(
                float(s["lo"]),
                _num_from_json(s["hi"]),
                spec,
                exp_lo=_num_from_json(s.get("exp_lo")),
                exp_hi=_num_from_json(s.get("exp_hi")),
            )
        )
    return Measure(atoms=atoms, segments=tuple(segments))


def load_measure(path: str | Path) -> Measure:
    with open(path, "r", encoding="utf-8") as fh:
        return measure_from_json(json.load(fh))


def dump_measure(mu: Measure, path: str | Path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(measure_to_json(mu), fh, indent=2)
        fh.write("\n")
