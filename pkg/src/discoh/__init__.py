"""discoh: discordlike correlation of bipartite coherence.

A numpy/scipy toolkit for finite-dimensional bipartite density matrices:
entropy and coherence measures, the incoherent channel families (IUO, PPIO,
rank-one PPIO, physically free operations), quantum discord via basis
optimization, the closed-form discordlike coherence correlation, and
randomized suites verifying the structural theorems that tie them together.
"""

__version__ = "0.1.0"

from .channels import (
    ChannelMixture,
    KrausChannel,
    PIOSpec,
    PPIOSpec,
    apply,
    classify,
    dephasing_channel,
    lift_to_bipartite,
    make_iuo,
    make_physically_free,
    make_pio,
    make_ppio,
    make_rank_one_ppio,
    random_iuo,
    random_rank_one_ppio,
)
from .discord import (
    MeasurementBasis,
    OptimizationTrace,
    OptimizerConfig,
    ZeroSetCertificate,
    coherence_discord,
    coherence_discord_invariance,
    coherence_discord_symmetric,
    dephasing_balance,
    discord,
    discord_at_basis,
    discord_via_coherence,
    in_zero_set,
    measured_conditional_info,
    ppio_monotonicity_gap,
    qubit_discord_grid,
)
from .linalg import dephase, dephase_local, hermitian_eig, partial_trace, tensor
from .measures import (
    CSV_COLUMNS,
    MeasureReport,
    coherence_rel_ent,
    correlated_coherence,
    cq_coherence,
    entropy,
    joint_coherence,
    l1_coherence,
    l1_correlated_coherence,
    mutual_information,
    relative_entropy,
)
from .states import (
    DensityMatrix,
    ReferenceBasis,
    bell_phi_plus,
    classical_quantum,
    from_raw,
    load_state,
    marginals,
    random_state,
    save_state,
    state_from_json,
    state_to_json,
    swap_subsystems,
    werner,
)
from .verify import SUITES, SuiteResult, nonconvexity_witness, run_suite
