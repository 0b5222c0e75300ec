"""Planners that synthesize bubbling scripts for target homology data,
plus verifiers for the necessary conditions any reachable profile obeys.

Each planner mirrors one constructive recipe: free ranks via spheres and
points, arbitrary Euler characteristics via surfaces and points, free
ranks without the top-rank bound via bouquets, and finite torsion via
products of 3-manifolds with spheres.  Every planner re-runs its own
script and records whether the target was actually met.
"""

from __future__ import annotations

from dataclasses import dataclass

from .catalog import (
    ManifoldDesc,
    bundle_total_space,
    duality_symmetric,
    homology_sphere,
    make_bouquet,
    point,
    product,
    realize_finite_abelian_h1,
    sphere,
    surface,
)
from .engine import (
    NORMAL,
    BubblingScript,
    ReebProfile,
    normal_op,
    run_script,
    script_to_json,
    wedge_op,
)
from .errors import InfeasibleTargetError, ValidationError
from .pid_algebra import (
    FGModule,
    GradedModule,
    INTEGERS,
    Ring,
    change_coefficients,
    direct_sum,
    direct_sum_many,
    free_module,
    graded_to_json,
    is_isomorphic,
    module_text,
    zero_module,
)


@dataclass(frozen=True)
class TargetSpec:
    """Rank targets g_0..g_n for the profile degrees, g_0 = 1."""

    ambient: int
    ranks: tuple[int, ...]
    torsion_targets: dict | None = None

    def __post_init__(self):
        if not isinstance(self.ambient, int) or self.ambient < 1:
            raise ValidationError(f"ambient dimension must be an integer >= 1, got {self.ambient!r}")
        if len(self.ranks) != self.ambient + 1:
            raise ValidationError(
                f"need {self.ambient + 1} ranks for degrees 0..{self.ambient}, got {len(self.ranks)}"
            )
        for g in self.ranks:
            if not isinstance(g, int) or g < 0:
                raise ValidationError(f"ranks must be nonnegative integers, got {g!r}")
        if self.ranks[0] != 1:
            raise ValidationError(f"degree-0 rank must be 1 (connected), got {self.ranks[0]}")


@dataclass(frozen=True)
class PlanReport:
    script: BubblingScript
    achieved: GradedModule  # always the integral homology of run_script
    target_met: bool
    notes: tuple[str, ...] = ()


def plan_report_to_json(report: PlanReport) -> dict:
    return {
        "script": script_to_json(report.script),
        "achieved": graded_to_json(report.achieved),
        "target_met": report.target_met,
        "notes": list(report.notes),
    }


def _ranks_met(achieved: GradedModule, ranks) -> bool:
    return all(
        achieved.at(j).rank == g and not achieved.at(j).torsion for j, g in enumerate(ranks)
    )


# ---------------------------------------------------------------------------
# planners


def plan_free_realization(target: TargetSpec, ring: Ring = INTEGERS) -> PlanReport:
    """Free ranks via normal operations on spheres and points.

    Feasible exactly when sum(ranks[1:n]) <= ranks[n] >= 1: each sphere
    operation raises one intermediate degree and the top degree together,
    and point operations top up the remaining top rank.
    """
    n = target.ambient
    if n < 2:
        raise InfeasibleTargetError(f"free-rank realization needs ambient >= 2, got {n}")
    if target.torsion_targets:
        raise InfeasibleTargetError("free-rank realization takes no torsion targets")
    g = target.ranks
    if g[n] < 1:
        raise InfeasibleTargetError(f"requires ranks[{n}] >= 1, got {g[n]}")
    middle = sum(g[1:n])
    if middle > g[n]:
        raise InfeasibleTargetError(
            f"requires sum(ranks[1:{n}]) <= ranks[{n}]; got {middle} > {g[n]}"
        )
    ops = []
    for j in range(1, n):
        ops.extend([normal_op(sphere(n - j))] * g[j])
    ops.extend([normal_op(point())] * (g[n] - middle))
    script = BubblingScript(n, tuple(ops))
    achieved = run_script(script).homology
    met = _ranks_met(achieved, g)
    notes = [f"{middle} sphere operation(s), {g[n] - middle} point operation(s)"]
    if ring != INTEGERS:
        met = met and all(
            change_coefficients(achieved, ring).at(j).rank == g[j] for j in range(n + 1)
        )
        notes.append(f"ranks checked over {ring} as well")
    return PlanReport(script, achieved, met, tuple(notes))


def plan_euler_target(n: int, target: int) -> PlanReport:
    """Hit any integer Euler characteristic with ambient dimension >= 3.

    Point operations move chi by (-1)^n; one genus-g surface operation
    moves it by (-1)^n (2 - 2g).  Solve 1 + (-1)^n (p + (2 - 2g)) = target
    with p >= 0 points and at most one surface of genus g >= 2.
    """
    if not isinstance(n, int) or n < 3:
        raise InfeasibleTargetError(
            f"arbitrary Euler targets need ambient >= 3 (parity bounds block some targets below), got {n}"
        )
    sign = (-1) ** n
    need = sign * (target - 1)
    ops = []
    notes = []
    if need >= 0:
        points = need
    elif need % 2 == 0:
        genus = 1 - need // 2
        points = 0
        ops.append(normal_op(surface(genus)))
        notes.append(f"one genus-{genus} surface operation")
    else:
        genus = (3 - need) // 2
        points = 1
        ops.append(normal_op(surface(genus)))
        notes.append(f"one genus-{genus} surface operation")
    ops.extend([normal_op(point())] * points)
    notes.append(f"{points} point operation(s)")
    script = BubblingScript(n, tuple(ops))
    profile = run_script(script)
    return PlanReport(script, profile.homology, profile.euler() == target, tuple(notes))


def plan_torsion_free_wedge(target: TargetSpec) -> PlanReport:
    """Free ranks via bouquet operations: no bound on intermediate ranks.

    ranks[n] bouquets are applied; across all of them there are exactly
    ranks[n-k] spheres of dimension k.  All spheres ride in the first
    bouquet and the remaining bouquets are single points, which keeps the
    plan deterministic (any distribution gives isomorphic homology).
    """
    n = target.ambient
    if target.torsion_targets:
        raise InfeasibleTargetError("wedge realization takes no torsion targets")
    g = target.ranks
    if g[n] < 1:
        raise InfeasibleTargetError(f"requires ranks[{n}] >= 1, got {g[n]}")
    spheres = [sphere(n - j) for j in range(1, n) for _ in range(g[j])]
    bouquets = [make_bouquet(spheres if spheres else [point()])]
    bouquets.extend(make_bouquet([point()]) for _ in range(g[n] - 1))
    script = BubblingScript(n, tuple(wedge_op(b) for b in bouquets))
    achieved = run_script(script).homology
    notes = (f"{len(bouquets)} bouquet(s), {len(spheres)} sphere summand(s)",)
    return PlanReport(script, achieved, _ranks_met(achieved, g), notes)


def plan_finite_torsion_products(n: int, gs, groups) -> PlanReport:
    """Finite torsion via products of 3-manifolds with standard spheres.

    For each offset j in 0..n-7 with gs[j] > -1: one operation on
    M_j x S^(n-j-4) where M_j is a 3-manifold with H_1 = groups[j], plus
    gs[j] operations on sphere-homology manifolds of dimension n-j-1.
    The report cross-checks the unambiguous profile entries: degrees 0,
    1, n-2, n-1, and the top rank sum(gs) + n - 6.
    """
    if not isinstance(n, int) or n < 7:
        raise InfeasibleTargetError(f"finite-torsion product realization needs ambient >= 7, got {n}")
    gs = list(gs)
    groups = list(groups)
    if len(gs) != n - 6:
        raise ValidationError(f"need {n - 6} rank offsets for degrees 0..{n - 7}, got {len(gs)}")
    if len(groups) != len(gs):
        raise ValidationError(f"need one torsion group per rank offset, got {len(groups)}")
    for j, (gj, G) in enumerate(zip(gs, groups)):
        if not isinstance(gj, int) or gj < -1:
            raise ValidationError(f"offset g_{j} must be an integer >= -1, got {gj!r}")
        if G.ring != INTEGERS or G.rank != 0:
            raise ValidationError(f"torsion group G_{j} must be a finite integer module, got {G}")
        if gj == -1 and G.torsion:
            raise ValidationError(f"g_{j} = -1 forces G_{j} trivial, got {module_text(G)}")
    ops = []
    for j, (gj, G) in enumerate(zip(gs, groups)):
        if gj == -1:
            continue
        ops.append(normal_op(product(realize_finite_abelian_h1(G), sphere(n - j - 4))))
        ops.extend([normal_op(homology_sphere(n - j - 1))] * gj)
    script = BubblingScript(n, tuple(ops))
    achieved = run_script(script).homology
    expected_top_rank = sum(gs) + n - 6
    checks = [
        ("degree 0", is_isomorphic(achieved.at(0), free_module(INTEGERS, 1))),
        ("degree 1", is_isomorphic(achieved.at(1), free_module(INTEGERS, gs[0] + 1))),
        (
            f"degree {n - 2}",
            is_isomorphic(achieved.at(n - 2), direct_sum_many(INTEGERS, groups)),
        ),
        (f"degree {n - 1}", achieved.at(n - 1).is_zero),
        (
            f"degree {n}",
            is_isomorphic(achieved.at(n), free_module(INTEGERS, expected_top_rank)),
        ),
    ]
    notes = [f"{len(ops)} operation(s); expected top rank {expected_top_rank}"]
    notes += [f"cross-check {name}: {'ok' if ok else 'MISMATCH'}" for name, ok in checks]
    return PlanReport(script, achieved, all(ok for _, ok in checks), tuple(notes))


def plan_bundle_bubbling(n: int, k: int, l: int, s: ManifoldDesc) -> PlanReport:
    """One operation on a sphere-bundle total space over s.

    Checks the achieved profile degreewise against the casewise form:
    Z at 0 and n, H_(j-l-1)(S) for l+1 <= j <= k-1, and
    H_(j-l-1)(S) (+) H_(j-k)(S) for k <= j <= n-1, zero elsewhere.
    """
    total = bundle_total_space(s, n, k, l)
    script = BubblingScript(n, (normal_op(total),))
    achieved = run_script(script).homology
    mismatches = []
    for j in range(n + 1):
        if j == 0 or j == n:
            expect = free_module(INTEGERS, 1)
        elif l + 1 <= j <= k - 1:
            expect = s.homology.at(j - l - 1)
        elif k <= j <= n - 1:
            expect = direct_sum(s.homology.at(j - l - 1), s.homology.at(j - k))
        else:
            expect = zero_module()
        if not is_isomorphic(achieved.at(j), expect):
            mismatches.append(j)
    notes = [
        f"total space {total.label} of dimension {total.dim}",
        (
            f"split-model note: the total space has H_{n - l - 1} = H_{n - k}(base) = Z in its "
            "top degree; a casewise formula without the shifted summand would report 0 there"
        ),
    ]
    if mismatches:
        notes.append(f"degree mismatches against the casewise form: {mismatches}")
    return PlanReport(script, achieved, not mismatches, tuple(notes))


# ---------------------------------------------------------------------------
# verifiers


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool | None  # None means not applicable / skipped
    detail: str = ""


@dataclass(frozen=True)
class VerificationReport:
    checks: tuple[CheckResult, ...]

    @property
    def passed(self) -> bool:
        return all(c.passed is not False for c in self.checks)


def verify_necessary_conditions(profile: ReebProfile) -> VerificationReport:
    """Structural conditions every bubbling-reachable profile satisfies.

    Degree 0 is one free generator; the top degree is torsion-free; the
    first nonzero intermediate degree is torsion-free with rank bounded by
    the top rank; and degree n-1 is torsion-free when the history contains
    only normal operations (wedge histories skip that check).
    """
    h = profile.homology
    n = profile.ambient
    checks = []
    h0 = h.at(0)
    checks.append(
        CheckResult(
            "degree 0 is one free generator",
            h0.rank == 1 and not h0.torsion,
            module_text(h0),
        )
    )
    top = h.at(n)
    checks.append(
        CheckResult(f"degree {n} torsion-free", not top.torsion, module_text(top))
    )
    first = next((j for j in range(1, n) if not h.at(j).is_zero), None)
    if first is None:
        checks.append(CheckResult("no nonzero intermediate degree", None, "vacuous"))
    else:
        m = h.at(first)
        checks.append(
            CheckResult(
                f"first nonzero degree {first} torsion-free",
                not m.torsion,
                module_text(m),
            )
        )
        checks.append(
            CheckResult(
                f"rank bound at first nonzero degree {first}",
                m.rank <= top.rank,
                f"{m.rank} <= {top.rank}",
            )
        )
    if all(op.kind == NORMAL for op in profile.history.ops):
        m = h.at(n - 1)
        checks.append(
            CheckResult(
                f"degree {n - 1} torsion-free (normal-only history)",
                not m.torsion,
                module_text(m),
            )
        )
    else:
        checks.append(
            CheckResult(
                f"degree {n - 1} torsion-free (normal-only history)",
                None,
                "skipped: history contains wedge operations",
            )
        )
    return VerificationReport(tuple(checks))


@dataclass(frozen=True)
class TorsionGapReport:
    """Witnesses for 'every finite nontrivial degree sits near free rank'."""

    holds: bool
    i0: int
    direction: str
    witnesses: tuple[tuple[int, int | None], ...]  # (degree, offset or None)
    longest_finite_run: int
    run_bound_ok: bool | None  # longest run <= i0, when the predicate holds


def check_torsion_gap(profile: ReebProfile, i0: int, direction: str = "below") -> TorsionGapReport:
    """For each finite nontrivial H_j, find 1 <= a <= i0 with positive free
    rank at j - a (direction 'below') or j + a ('above')."""
    if not isinstance(i0, int) or i0 < 1:
        raise ValidationError(f"offset bound must be an integer >= 1, got {i0!r}")
    if direction not in ("below", "above"):
        raise ValidationError(f"direction must be 'below' or 'above', got {direction!r}")
    step = -1 if direction == "below" else 1
    h = profile.homology
    finite = [
        j for j in range(profile.ambient + 1) if h.at(j).rank == 0 and h.at(j).torsion
    ]
    witnesses = []
    holds = True
    for j in finite:
        offset = next(
            (a for a in range(1, i0 + 1) if h.at(j + step * a).rank > 0), None
        )
        witnesses.append((j, offset))
        if offset is None:
            holds = False
    longest = run = 0
    finite_set = set(finite)
    for j in range(profile.ambient + 1):
        run = run + 1 if j in finite_set else 0
        longest = max(longest, run)
    return TorsionGapReport(
        holds, i0, direction, tuple(witnesses), longest, (longest <= i0) if holds else None
    )


@dataclass(frozen=True)
class GeneratorCandidate:
    dim: int
    required: GradedModule  # homology a single generator would need
    violations: tuple[str, ...]

    @property
    def feasible(self) -> bool:
        return not self.violations


@dataclass(frozen=True)
class FeasibilityReport:
    ambient: int
    candidates: tuple[GeneratorCandidate, ...]

    @property
    def feasible_dims(self) -> tuple[int, ...]:
        return tuple(c.dim for c in self.candidates if c.feasible)


def single_op_feasibility(n: int, target: GradedModule) -> FeasibilityReport:
    """Which generator dimensions could reach `target` in one operation.

    Inverting the normal-operation formula against a point-like base
    forces H_j(S) = H_(j+n-k)(target); the candidate survives only if the
    target vanishes below the shift, the required degree 0 is one free
    generator, and the required homology satisfies rank/torsion duality.
    These are necessary conditions; no geometric realizability is claimed.
    """
    if target.ring != INTEGERS:
        raise ValidationError("single-operation analysis works on integral homology")
    h0 = target.at(0)
    if h0.rank != 1 or h0.torsion:
        raise ValidationError(f"target must have one free generator in degree 0, got {module_text(h0)}")
    if target.at(n).rank != 1:
        raise InfeasibleTargetError(
            f"single-operation analysis needs rank 1 in degree {n}, got {target.at(n).rank}"
        )
    candidates = []
    for k in range(n):
        shift = n - k
        required = GradedModule(
            INTEGERS, tuple(target.at(j + shift) for j in range(k + 1))
        )
        violations = []
        bad = next((i for i in range(1, shift) if not target.at(i).is_zero), None)
        if bad is not None:
            violations.append(
                f"target degree {bad} must vanish below the shift {shift}"
            )
        req0 = required.at(0)
        if req0.rank != 1 or req0.torsion:
            violations.append(
                f"required degree 0 is {module_text(req0)}, needs one free generator (connected)"
            )
        if not duality_symmetric(k, required):
            violations.append(
                f"required homology violates rank/torsion duality for a closed orientable {k}-manifold"
            )
        candidates.append(GeneratorCandidate(k, required, tuple(violations)))
    return FeasibilityReport(n, tuple(candidates))
