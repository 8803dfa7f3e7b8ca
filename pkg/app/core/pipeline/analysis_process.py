import math
from typing import List, Optional, Tuple

import numpy as np

from app import app_config, logger
from app.core.blowup import estimate_homogeneity
from app.core.exceptions import DegenerateFieldError, LabError
from app.core.freeboundary import classify_fixed_boundary, decompose_thin
from app.core.frequency import check_monotonicity, default_monotonicity_tolerance, frequency_profile
from app.core.geometry import ScalarField
from app.core.regularity import decay_exponent, subharmonicity_check
from app.core.solver import energy_perturbation_gap
from app.schemas.freeboundary import ContactFlag, PointClass, ThinDecomposition
from app.schemas.frequency import FrequencyProfile
from app.schemas.regularity import PartSign
from app.schemas.run import RunConfig, RunSummary, Verdict
from app.schemas.solver import SolveReport


class AnalysisProcess:
    """
    分析流水线：对一个场依次做频率剖面、爆破估计、点分类、衰减拟合与结构检查，
    最后汇总成判定列表
    """

    def __init__(self):
        pass

    def analyze(
        self, field: ScalarField, config: RunConfig, solve_report: Optional[SolveReport] = None
    ) -> Tuple[RunSummary, ThinDecomposition]:
        """
        执行配置中请求的全部分析

        Args:
            field: 求解得到或从文件读入的场
            config: 运行配置
            solve_report: 求解报告，verify 时为空

        Returns:
            (结果汇总, 薄集分解)
        """
        request = config.analysis
        summary = RunSummary(
            name=config.name,
            scenario=config.scenario,
            dimension=config.dimension,
            inverse_h=config.inverse_h,
            solve=solve_report,
        )
        verdicts = app_config.section("verdict_config")

        # ------------------------------ #  频率部分
        tolerance = request.monotonicity_tolerance or default_monotonicity_tolerance(config.inverse_h)
        for index, center in enumerate(request.frequency_centers):
            key = f"c{index}"
            profile = frequency_profile(field, center, request.frequency_radii)
            summary.frequency[key] = profile
            monotonicity = check_monotonicity(profile, tolerance)
            summary.monotonicity[key] = monotonicity
            summary.verdicts.append(
                Verdict(
                    name=f"monotonicity_{key}",
                    passed=monotonicity.monotone,
                    margin=tolerance - monotonicity.delta,
                    detail=f"中心 {list(center)}，δ = {monotonicity.delta:.4g}",
                )
            )
            if request.identities:
                summary.verdicts.extend(self._identity_verdicts(key, profile, verdicts))
            if request.phi and not any(center):
                summary.verdicts.append(self._phi_verdict(key, profile, float(verdicts.get("phi_tolerance", 0.05))))
            logger.info(f"{key} {list(center)}: N ∈ [{min(profile.N):.4f}, {max(profile.N):.4f}]，δ = {monotonicity.delta:.4g}")

        # ------------------------------ #  爆破部分
        for point in request.blowup_points:
            try:
                summary.blowup.append(estimate_homogeneity(field, point))
            except LabError as e:
                logger.warning(f"{list(point)} 处无法估计 κ̂: {e}")

        # ------------------------------ #  自由边界部分
        decomposition = decompose_thin(field)
        summary.decomposition = {
            "coincidence": len(decomposition.coincidence),
            "positivity": len(decomposition.positivity),
            "free_boundary": len(decomposition.free_boundary),
            "fixed_boundary": len(decomposition.fixed_boundary),
            "contact": sum(flag == ContactFlag.CONTACT for flag in decomposition.contact_flags.values()),
            "non_contact": sum(flag == ContactFlag.NON_CONTACT for flag in decomposition.contact_flags.values()),
        }
        if request.classification:
            summary.classification = classify_fixed_boundary(field, decomposition=decomposition)
            for point in summary.classification:
                if not point.resolved:
                    continue
                verdict = point.verdict
                if point.point_class == PointClass.NON_CONTACT:
                    margin = verdict.tolerance - verdict.margin
                else:
                    margin = verdict.margin + verdict.tolerance
                summary.verdicts.append(
                    Verdict(
                        name=f"admissibility_{point.node}",
                        passed=verdict.passed,
                        margin=margin,
                        detail=f"{point.point_class.value} {list(point.location)}，κ̂ = {point.kappa_hat:.4f}",
                    )
                )

        # ------------------------------ #  正则性部分
        floor = float(verdicts.get("decay_floor", 0.45))
        for center in request.regularity_centers:
            try:
                fit = decay_exponent(field, center)
            except DegenerateFieldError as e:
                logger.warning(f"{list(center)} 处不做衰减拟合: {e}")
                continue
            summary.decay.append(fit)
            summary.verdicts.append(
                Verdict(
                    name=f"decay_floor_{len(summary.decay) - 1}",
                    passed=fit.alpha_hat >= floor,
                    margin=fit.alpha_hat - floor,
                    detail=f"中心 {list(center)}，α̂ = {fit.alpha_hat:.4f}",
                )
            )

        limit = config.solver.activity_threshold
        for sign in PartSign:
            violation = subharmonicity_check(field, sign)
            summary.subharmonicity[sign.value] = violation
            summary.verdicts.append(
                Verdict(
                    name=f"subharmonicity_{'plus' if sign == PartSign.PLUS else 'minus'}",
                    passed=violation <= limit,
                    margin=limit - violation,
                    detail=f"u{sign.value} 的最大违背 {violation:.3e}",
                )
            )

        if request.perturbations:
            tolerance = float(verdicts.get("energy_tolerance", 1e-8))
            gap = energy_perturbation_gap(
                field, request.perturbations, config.seed, float(verdicts.get("perturbation_step", 1e-3))
            )
            summary.energy_gap = gap
            summary.verdicts.append(
                Verdict(
                    name="energy_minimality",
                    passed=gap >= -tolerance,
                    margin=gap + tolerance,
                    detail=f"{request.perturbations} 次随机扰动，最小能量增量 {gap:.3e}",
                )
            )

        failed = [verdict.name for verdict in summary.verdicts if not verdict.passed]
        if failed:
            logger.warning(f"未通过的判定: {', '.join(failed)}")
        else:
            logger.info(f"全部 {len(summary.verdicts)} 项判定通过")
        return summary, decomposition

    def _identity_verdicts(self, key: str, profile: FrequencyProfile, verdicts: dict) -> List[Verdict]:
        """两个恒等式与 Rellich 余量，只看 [identity_min_radius, identity_max_radius] 内的半径

        Rellich 的左端用其 Cauchy-Schwarz 下界 2 N D 作尺度，可由 CSV 复算。
        """
        min_radius = float(verdicts.get("identity_min_radius", 0.1))
        max_radius = float(verdicts.get("identity_max_radius", 0.8))
        tolerance = float(verdicts.get("identity_tolerance", 0.05))
        relative = float(verdicts.get("rellich_relative_tolerance", 0.05))
        rows = [row for row in profile.rows() if min_radius - 1e-12 <= row[0] <= max_radius + 1e-12]
        if not rows:
            logger.debug(f"{key} 在 [{min_radius}, {max_radius}] 内没有半径，跳过恒等式判定")
            return []

        residuals = [row[5] for row in rows] + [row[6] for row in rows if not math.isnan(row[6])]
        worst = max(residuals)
        margins = [row[7] + relative * 2.0 * row[3] * row[1] for row in rows]
        slack_margin = min(margins)
        return [
            Verdict(
                name=f"identities_{key}",
                passed=worst <= tolerance,
                margin=tolerance - worst,
                detail=f"r ∈ [{min_radius:g}, {max_radius:g}] 上的最大相对残差 {worst:.4g}",
            ),
            Verdict(
                name=f"rellich_{key}",
                passed=slack_margin >= 0,
                margin=slack_margin,
                detail=f"r ∈ [{min_radius:g}, {max_radius:g}] 上 slack + {relative:g}·2ND 的最小值",
            ),
        ]

    def _phi_verdict(self, key: str, profile: FrequencyProfile, tolerance: float) -> Verdict:
        phi = np.asarray(profile.phi)
        drop = max(0.0, float((phi[:-1] - phi[1:]).max())) if phi.size > 1 else 0.0
        return Verdict(
            name=f"phi_{key}",
            passed=drop <= tolerance,
            margin=tolerance - drop,
            detail=f"φ(r) 相邻半径的最大下降 {drop:.4g}",
        )


analysis_process = AnalysisProcess()
