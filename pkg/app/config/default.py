"""
存储默认的配置文件
"""

from .constant import *

DEFAULT_CONFIG = {
    "solver_config": {
        "omega": 1.8,
        "tolerance": 1e-10,
        "max_iterations": 200000,
        # 诊断中 “接触/脱离” 的阈值 = activity_factor * tolerance
        "activity_factor": 10.0,
        "oracle_max_nodes": 14,
    },
    "geometry_config": {
        "min_sphere_samples": 64,
        "shell_spacing_factor": 0.5,
        "gradient_margin_factor": 2.0,
    },
    "frequency_config": {
        "r_min_factor": 4.0,
        "margin_factor": 2.0,
        "radius_count": 16,
        # 单调性容差：一次性加密研究得到的 ε(h)，键为 1/h
        "monotonicity_tolerance": {"16": 0.2, "32": 0.1, "64": 0.06, "128": 0.05},
        "monotonicity_tolerance_default": 0.05,
        "workers": 1,
    },
    "blowup_config": {
        "window_low_factor": 6.0,
        "window_high": 0.3,
        "radius_count": 12,
        "disagreement_threshold": 0.15,
        "deviation_radii": [0.25, 0.5],
        "deviation_directions": 16,
        "estimator": {
            "active": "n_extrapolation",
            "n_extrapolation": {"type": "n_extrapolation"},
            "log_slope": {"type": "log_slope"},
        },
    },
    "freeboundary_config": {
        "rho_near_factor": 3.0,
        "admissibility_tolerance": 0.1,
        "planar_interior_list": False,
    },
    "regularity_config": {
        "decay_radius_count": 8,
        "decay_radius_max": 0.4,
        "decay_correction": True,
        "stability_radius": 0.5,
        "distance_bins": 12,
    },
    "verdict_config": {
        # 恒等式残差只在 identity_min_radius <= r <= identity_max_radius 的半径上判定
        "identity_tolerance": 0.05,
        "identity_min_radius": 0.1,
        "identity_max_radius": 0.8,
        "rellich_relative_tolerance": 0.05,
        "decay_floor": 0.45,
        "phi_tolerance": 0.05,
        "energy_tolerance": 1e-8,
        "perturbation_count": 20,
        "perturbation_step": 1e-3,
    },
    "cli_config": {
        "output_dir_env": OUTPUT_DIR_ENV,
        "plots": True,
        "default_output_dir": "out",
    },
}
