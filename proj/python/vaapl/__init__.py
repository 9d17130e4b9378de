# SPDX-License-Identifier: Apache-2.0
"""Omni-directional pathloss estimation from virtual-antenna-array soundings.

Thin wrapper over the compiled extension; see the package README for the
processing chain (synthesis -> beamforming -> profile -> detection ->
estimators) and the file formats.
"""

from ._core import (  # noqa: F401
    SPEED_OF_LIGHT,
    AntennaPattern,
    BeamSpectrum,
    CfrMatrix,
    DetectedPath,
    FrequencyGrid,
    Padp,
    Path,
    UcaGeometry,
    __version__,
    add_noise,
    aggregate_pdp,
    array_beam_pattern,
    array_gain,
    beamform_spectrum,
    compute_padp,
    detect_paths,
    estimate_noise_floor,
    free_space_pathloss_db,
    make_steering_grid,
    pl_omni_ref1,
    pl_omni_ref2,
    pl_omni_vaa,
    preset_json,
    preset_names,
    random_corridor_scene_json,
    run_scenario,
    synth_dss_cfr,
    synth_vaa_cfr,
    true_omni_pathloss_db,
)
