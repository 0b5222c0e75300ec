"""The bubbling state machine.

A Reeb profile is the graded integral homology of a Reeb space together
with the ambient dimension and the operation history.  Bubbling along a
generating manifold S of dimension k inside ambient dimension n adds a
shifted copy of H_*(S) to the profile:

    H_i  <-  H_i (+) H_(i-(n-k))(S)        (normal operation)

A wedge (bouquet) operation adds the shifted summand homologies in
degrees below n but contributes exactly one free generator in degree n
no matter how many summands the bouquet has.  Profiles are immutable;
every application returns a fresh one.
"""

from __future__ import annotations

from dataclasses import dataclass

from .catalog import BouquetDesc, ManifoldDesc, check_embeddable, generator_from_spec
from .errors import ScriptError, ValidationError
from .pid_algebra import (
    FGModule,
    GradedModule,
    INTEGERS,
    direct_sum,
    direct_sum_many,
    euler_characteristic,
    free_module,
    graded_from_json,
    graded_to_json,
    zero_module,
)

NORMAL = "normal"
WEDGE = "wedge"


@dataclass(frozen=True)
class BubblingOp:
    kind: str  # NORMAL | WEDGE
    generator: object  # ManifoldDesc for NORMAL, BouquetDesc for WEDGE
    trivial: bool | None = None  # inert metadata; homology ignores it

    def __post_init__(self):
        if self.kind == NORMAL:
            if not isinstance(self.generator, ManifoldDesc):
                raise ValidationError("a normal operation needs a manifold generator")
        elif self.kind == WEDGE:
            if not isinstance(self.generator, BouquetDesc):
                raise ValidationError("a wedge operation needs a bouquet generator")
        else:
            raise ValidationError(f"unknown operation kind {self.kind!r}")

    @property
    def summands(self) -> tuple[ManifoldDesc, ...]:
        if self.kind == NORMAL:
            return (self.generator,)
        return self.generator.summands

    @property
    def label(self) -> str:
        return self.generator.label


def normal_op(manifold: ManifoldDesc, trivial: bool | None = None) -> BubblingOp:
    return BubblingOp(NORMAL, manifold, trivial)


def wedge_op(bouquet: BouquetDesc, trivial: bool | None = None) -> BubblingOp:
    return BubblingOp(WEDGE, bouquet, trivial)


def validate_op(op: BubblingOp, ambient: int):
    """Check every generating manifold against the ambient constraints."""
    for s in op.summands:
        if not s.connected:
            raise ValidationError(f"generator {s.label} must be connected")
        if not s.orientable:
            raise ValidationError(f"generator {s.label} must be orientable")
        if not s.closed:
            raise ValidationError(f"generator {s.label} must be closed")
        if s.dim >= ambient:
            raise ValidationError(
                f"generator {s.label} has dimension {s.dim}, needs < ambient {ambient}"
            )
        if not check_embeddable(s, ambient):
            raise ValidationError(
                f"generator {s.label} needs ambient dimension {s.embed_dim}, got {ambient}"
            )


@dataclass(frozen=True)
class BubblingScript:
    ambient: int
    ops: tuple[BubblingOp, ...] = ()

    def __post_init__(self):
        if not isinstance(self.ambient, int) or self.ambient < 1:
            raise ValidationError(f"ambient dimension must be an integer >= 1, got {self.ambient!r}")


@dataclass(frozen=True)
class ReebProfile:
    ambient: int
    homology: GradedModule  # integral, degrees 0..ambient
    history: BubblingScript

    def __post_init__(self):
        if self.homology.ring != INTEGERS:
            raise ValidationError("profiles carry integral homology")
        if self.homology.top != self.ambient:
            raise ValidationError(
                f"profile homology must have degrees 0..{self.ambient}, got top {self.homology.top}"
            )

    def euler(self) -> int:
        return euler_characteristic(self.homology)


def initial_profile(n: int) -> ReebProfile:
    """Point-like base: H_0 = Z and nothing else, Euler characteristic 1."""
    if not isinstance(n, int) or n < 1:
        raise ValidationError(f"ambient dimension must be an integer >= 1, got {n!r}")
    degrees = (free_module(INTEGERS, 1),) + tuple(zero_module() for _ in range(n))
    return ReebProfile(n, GradedModule(INTEGERS, degrees), BubblingScript(n))


def _extend(profile: ReebProfile, op: BubblingOp, homology: GradedModule) -> ReebProfile:
    history = BubblingScript(profile.ambient, profile.history.ops + (op,))
    return ReebProfile(profile.ambient, homology, history)


def apply_normal_bubbling(
    profile: ReebProfile, s: ManifoldDesc, trivial: bool | None = None
) -> ReebProfile:
    """H_i <- H_i (+) H_(i-(n-dim S))(S) for every degree 0..n."""
    op = normal_op(s, trivial)
    validate_op(op, profile.ambient)
    n = profile.ambient
    shift = n - s.dim
    degrees = tuple(
        direct_sum(profile.homology.at(i), s.homology.at(i - shift)) for i in range(n + 1)
    )
    return _extend(profile, op, GradedModule(INTEGERS, degrees))


def apply_s_bubbling(
    profile: ReebProfile, b: BouquetDesc, trivial: bool | None = None
) -> ReebProfile:
    """Summand homologies shift in below degree n; degree n gains one Z."""
    op = wedge_op(b, trivial)
    validate_op(op, profile.ambient)
    n = profile.ambient
    degrees = []
    for i in range(n):
        terms = [profile.homology.at(i)]
        terms += [s.homology.at(i - (n - s.dim)) for s in b.summands]
        degrees.append(direct_sum_many(INTEGERS, terms))
    degrees.append(direct_sum(profile.homology.at(n), free_module(INTEGERS, 1)))
    return _extend(profile, op, GradedModule(INTEGERS, tuple(degrees)))


def apply_op(profile: ReebProfile, op: BubblingOp) -> ReebProfile:
    if op.kind == NORMAL:
        return apply_normal_bubbling(profile, op.generator, op.trivial)
    return apply_s_bubbling(profile, op.generator, op.trivial)


def run_script(script: BubblingScript) -> ReebProfile:
    """Fold the operations over the point-like base profile."""
    profile = initial_profile(script.ambient)
    for index, op in enumerate(script.ops):
        try:
            profile = apply_op(profile, op)
        except ValidationError as exc:
            raise ScriptError(index, str(exc)) from exc
    return profile


def euler_delta(n: int, op: BubblingOp) -> int:
    """Exact Euler-characteristic change of one operation at ambient n.

    Normal: (-1)^(n-k) chi(S) for a generator of dimension k.  Wedge: each
    summand contributes its shifted ranks below degree n and the bouquet
    adds a single generator in degree n.
    """
    validate_op(op, n)
    if op.kind == NORMAL:
        s = op.generator
        return (-1) ** (n - s.dim) * euler_characteristic(s.homology)
    total = (-1) ** n
    for s in op.summands:
        for t in range(s.dim):  # the top class lands in degree n: excluded
            total += (-1) ** (t + n - s.dim) * s.homology.at(t).rank
    return total


@dataclass(frozen=True)
class SourceInference:
    """Low-degree source-manifold homology read off a profile."""

    source_dim: int
    modules: tuple[FGModule, ...]  # degrees 0..source_dim - ambient - 1
    assumptions: tuple[str, ...]

    @property
    def max_degree(self) -> int:
        return len(self.modules) - 1


def infer_source_homology(profile: ReebProfile, m: int) -> SourceInference:
    """H_j(source) = H_j(profile) for 0 <= j <= m - n - 1.

    Valid under the disclosed hypotheses; scripts produced by the planners
    in this package satisfy them by construction.
    """
    n = profile.ambient
    if not isinstance(m, int) or m <= n:
        raise ValidationError(f"source dimension must exceed ambient {n}, got {m!r}")
    modules = tuple(profile.homology.at(j) for j in range(m - n))
    assumptions = [
        "the map restricted to its singular set is injective (simple)",
        "regular fibers are disjoint unions of almost-spheres",
        "all singular indices are 0 or 1",
    ]
    if m - n == 1:
        assumptions.append("codimension 1: the source manifold is assumed orientable")
    return SourceInference(m, modules, tuple(assumptions))


# ---------------------------------------------------------------------------
# JSON forms


def op_to_json(op: BubblingOp) -> dict:
    if op.kind == NORMAL:
        out = {"type": "normal", "manifold": op.generator.spec}
    else:
        out = {"type": "wedge", "summands": [s.spec for s in op.generator.summands]}
    if op.trivial is not None:
        out["trivial"] = op.trivial
    return out


def op_from_json(obj) -> BubblingOp:
    if not isinstance(obj, dict) or "type" not in obj:
        raise ValidationError(f"operation JSON needs a 'type', got {obj!r}")
    trivial = obj.get("trivial")
    if obj["type"] == "normal":
        return normal_op(generator_from_spec(obj["manifold"]), trivial)
    if obj["type"] == "wedge":
        from .catalog import make_bouquet, manifold_from_spec

        bouquet = make_bouquet([manifold_from_spec(s) for s in obj["summands"]])
        return wedge_op(bouquet, trivial)
    raise ValidationError(f"unknown operation type {obj['type']!r}")


def script_to_json(script: BubblingScript) -> dict:
    return {"ambient": script.ambient, "ops": [op_to_json(op) for op in script.ops]}


def script_from_json(obj) -> BubblingScript:
    if not isinstance(obj, dict) or "ambient" not in obj:
        raise ValidationError("script JSON needs an 'ambient' field")
    ops = tuple(op_from_json(o) for o in obj.get("ops", []))
    return BubblingScript(obj["ambient"], ops)


def profile_to_json(profile: ReebProfile) -> dict:
    # History is not serialized: a profile on disk is just homology data.
    return {"ambient": profile.ambient, "homology": graded_to_json(profile.homology)}


def profile_from_json(obj) -> ReebProfile:
    if not isinstance(obj, dict) or "ambient" not in obj or "homology" not in obj:
        raise ValidationError("profile JSON needs 'ambient' and 'homology' fields")
    n = obj["ambient"]
    if not isinstance(n, int) or n < 1:
        raise ValidationError(f"ambient dimension must be an integer >= 1, got {n!r}")
    homology = graded_from_json(obj["homology"])
    if homology.top > n:
        raise ValidationError(f"profile lists degrees above ambient {n}")
    if homology.top < n:  # pad to degrees 0..n
        degrees = homology.degrees + tuple(zero_module() for _ in range(n - homology.top))
        homology = GradedModule(INTEGERS, degrees)
    return ReebProfile(n, homology, BubblingScript(n))
