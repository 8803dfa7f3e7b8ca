from typing import Dict, Optional, Type

from app import app_config, logger
from app.core.blowup import KappaEstimator
from app.core.blowup.estimator_strategy import LogSlopeEstimator, NExtrapolationEstimator
from app.core.strategy_selector import StrategySelector
from app.schemas.blowup import EstimatorKind


class EstimatorFactory:
    """κ 估计器工厂类"""

    PROVIDER_MAP: Dict[str, Type[KappaEstimator]] = {
        EstimatorKind.N_EXTRAPOLATION.value: NExtrapolationEstimator,
        EstimatorKind.LOG_SLOPE.value: LogSlopeEstimator,
    }

    @staticmethod
    def selector() -> StrategySelector[KappaEstimator]:
        return StrategySelector[KappaEstimator](app_config.section("blowup_config").get("estimator", {}), "κ 估计器")

    @staticmethod
    def active_kind() -> EstimatorKind:
        """配置中的主估计器，缺失或无效时回退到 N 外推"""
        active = EstimatorFactory.selector().get_active_strategy()
        if active not in EstimatorFactory.PROVIDER_MAP:
            logger.warning(f"κ 估计器配置无效: {active}，使用 {EstimatorKind.N_EXTRAPOLATION.value}")
            return EstimatorKind.N_EXTRAPOLATION
        return EstimatorKind(active)

    @staticmethod
    def create_provider(kind: Optional[EstimatorKind] = None) -> KappaEstimator:
        """
        创建估计器实例

        Args:
            kind: 估计器类型，为None时使用配置中的活跃策略

        Returns:
            KappaEstimator 实例
        """
        kind = kind or EstimatorFactory.active_kind()
        provider = EstimatorFactory.selector().create_provider(EstimatorFactory.PROVIDER_MAP, {"type": kind.value})
        if provider is None:
            return EstimatorFactory.PROVIDER_MAP[kind.value]({"type": kind.value}, {})
        return provider
