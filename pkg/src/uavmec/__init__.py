"""Energy simulator for cellular-MEC-connected UAVs.

Computes the total energy a UAV spends to process a Q-bit workload under
hovering (onboard / offload / parallel) and move-and-return strategies,
over sub-6GHz, mmWave, and THz links with 3GPP-flavored channel models,
planar-array antenna gains, and a rotary-wing propulsion model.
"""

__version__ = "0.1.0"

from .antenna import (
    ArrayConfig,
    SteeredGain,
    array_factor,
    array_gain,
    element_gain,
    sample_mismatch,
    steered_gain_sample,
    total_gain,
)
from .channel import (
    Atmosphere,
    Band,
    BandKind,
    Geometry,
    UrbanProfile,
    absorption_coefficient,
    los_probability,
    path_loss_mmwave,
    path_loss_sub6,
    path_loss_thz,
)
from .config import ResolvedConfig, default_config, describe, load_config
from .link import Environment, LinkBudget, RadioConfig, expected_throughput, johnson_nyquist_noise, molecular_noise, snr
from .power import ComputeParams, MassBudget, PropulsionParams, compute_power, propulsion_power, rotor_speed, total_power
from .scenario import (
    Deployment,
    EnergyReport,
    R0Mode,
    ScenarioSpec,
    Strategy,
    compute_rate,
    evaluate,
    hover_energy,
    mr_energy,
    r0_distance,
    solve_mr_time,
)
from .sweep import SweepSpec, preset_sweep, run_sweep
