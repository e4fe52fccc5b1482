"""No-signaling bounds for phase-covariant cloning, unitary replication and
phase estimation, with the quantum protocols that attain them."""

from .circular import CircularDistribution
from .cloning import (
    CloneBound,
    clone_map,
    constructive_clone,
    det_1toM,
    det_NtoM_asymptotic,
    filter_success_prob,
    global_clone_fidelity,
    ns_bound_erf,
    ns_global_bound,
    optimal_input_state,
    verify_ns_mixture,
)
from .map_prepare import (
    MpOperator,
    coherence_decay,
    gaussian_state,
    mp_asymptotic,
    mp_fidelity,
    mp_fidelity_general,
    mp_operator,
    naive_mp_fidelity,
)
from .metrology import (
    LikelihoodKernel,
    alignment_fidelity,
    berry_wiseman_state,
    covariant_likelihood,
    diffusion_prior,
    jacobi_theta4,
    max_likelihood_ratio,
    ml_state,
    ns_alignment_fidelity_exact,
    ns_diffused_bound,
    ns_step_distribution,
    prior_error,
    quantum_alignment_fidelity,
    stationarity_window,
)
from .replication import choi_state, ns_replication_bound, process_fidelity
from .signaling import (
    SignalVerdict,
    ensemble_density,
    fourier_component,
    ns_compatible,
    qubit_steering,
    sinc_signal,
)
from .states import (
    Ensemble,
    PhaseAmplitudes,
    SymmetricBlockDensity,
    apply_phase,
    remote_prepare,
    twirl_u1,
    twirl_zn,
    uhlmann_fidelity,
)

__version__ = "0.1.0"
