"""reeb-forge: exact homology of Reeb spaces under bubbling operations."""

from .catalog import (
    BouquetDesc,
    ManifoldDesc,
    bundle_total_space,
    check_embeddable,
    check_poincare_duality,
    connected_sum,
    homology_sphere,
    lens,
    make_atomic,
    make_bouquet,
    manifold_from_spec,
    point,
    product,
    realize_finite_abelian_h1,
    sphere,
    standard_catalog_grid,
    surface,
)
from .engine import (
    BubblingOp,
    BubblingScript,
    ReebProfile,
    apply_normal_bubbling,
    apply_s_bubbling,
    euler_delta,
    infer_source_homology,
    initial_profile,
    normal_op,
    profile_from_json,
    profile_to_json,
    run_script,
    script_from_json,
    script_to_json,
    wedge_op,
)
from .errors import (
    ChainComplexError,
    InfeasibleTargetError,
    ReebForgeError,
    ScriptError,
    UnsupportedRingError,
    ValidationError,
)
from .oracle import ChainModel, SpaceSpec, build_model, oracle_homology, validate_catalog_entry
from .pid_algebra import (
    FGModule,
    GradedModule,
    INTEGERS,
    IntMatrix,
    RATIONALS,
    Ring,
    change_coefficients,
    cohomology_uct,
    cyclic,
    direct_sum,
    euler_characteristic,
    free_module,
    graded_isomorphic,
    homology_of_complex,
    is_isomorphic,
    kunneth,
    normalize_module,
    prime_field,
    smith_normal_form,
    tensor_product,
    torsion_product,
    zero_module,
)
from .planner import (
    PlanReport,
    TargetSpec,
    check_torsion_gap,
    plan_bundle_bubbling,
    plan_euler_target,
    plan_finite_torsion_products,
    plan_free_realization,
    plan_torsion_free_wedge,
    single_op_feasibility,
    verify_necessary_conditions,
)

__version__ = "0.1.0"
