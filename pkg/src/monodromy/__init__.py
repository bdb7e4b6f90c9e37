"""Exact symplectic models of tame inertia on abelian-variety torsion.

The package classifies a quasi-unipotent symplectic integer matrix as
an inertia action, decides semistability and potential good reduction,
computes component-group invariants of the associated special fiber,
and checks the torsion-level criteria that tie the two together.
Everything is exact integer arithmetic; nothing here floats.
"""

from .matrices import (
    DimensionError,
    IntMatrix,
    MatrixError,
    ModMatrix,
    SingularMatrixError,
    SmithDecomposition,
    char_poly,
    exterior_power,
    hermite_normal_form,
    howell_form,
    is_unipotent,
    kernel_mod_n,
    smith_normal_form,
)
from .polynomials import IntPoly, cyclotomic_poly
from .cyclotomic import (
    CyclotomicInteger,
    DegreeCertificate,
    NonCyclotomicFactor,
    PrimePowerSet,
    SweepReport,
    compute_R,
    cyclotomic_factor,
    eigenvalue_integrality,
    euler_phi,
    exceptional_prime_powers,
    power_membership,
    quasi_unipotence_sweep,
    semistability_degree,
)
from .torsion import (
    DegeneratePairingError,
    EnumerationCapError,
    Polarization,
    Subgroup,
    TorsionError,
    TorsionModule,
    dual_action,
    enumerate_subgroups,
    extend_to_maximal_isotropic,
    fixed_subgroup,
    fixes_pointwise,
    induced_pairing,
    is_isotropic,
    is_maximal_isotropic,
    orthogonal_complement,
    polarization_compatible,
    standard_module,
)
from .inertia import (
    DegreeObstruction,
    HypothesisNotMet,
    InertiaError,
    InertiaGenerator,
    NotPotentiallySemistable,
    NotQuasiUnipotent,
    NotSymplectic,
    Verdict,
    WildRamification,
    classify,
    elliptic_criteria,
    exceptional_criterion,
    find_witness_subgroup,
    galois_criterion,
    is_good,
    is_purely_additive,
    level_structure_criterion,
    minimal_semistable_degree,
    purely_additive_criteria,
    quartic_semistability_check,
    raynaud_criterion,
    semistable_after_extension,
    square_zero_mod_n,
    standard_symplectic_form,
    witness_exists,
)
from .neron import (
    NeronInvariants,
    NotPotentiallyGood,
    TorsionReport,
    cokernel_torsion_check,
    neron_invariants,
    neron_torsion,
    verify_neron2,
    verify_neron3,
    verify_neron4,
)
from .cohomology import (
    CohomologyAction,
    PreconditionExcluded,
    cohomology_action,
    higher_cohomology_criterion,
    hk_vanishing,
)
from .catalog import (
    block_sum,
    catalog_matrices,
    derive_seed,
    random_symplectic,
    random_symplectic_conjugate,
    symplectic_transvection,
)
from .scenarios import (
    HypothesisInstance,
    Scenario,
    ScenarioError,
    generate_hypothesis_instances,
    load_scenario,
    scenario_from_dict,
)
from .reports import build_report, canonical_json, render_text
from .suites import SUITE_IDS, SuiteError, SuiteReport, run_suite

__version__ = "0.1.0"
