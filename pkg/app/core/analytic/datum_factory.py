from typing import Dict, Type

from app import logger
from app.core.analytic import BoundaryDatum
from app.core.analytic.datum_strategy import ConstantDatum, ShiftedSlitDatum, SlitTraceDatum, TableDatum
from app.core.exceptions import InadmissibleScenarioError
from app.core.strategy_selector import StrategySelector
from app.schemas.scenario import Scenario, ScenarioKind


class DatumFactory:
    """边界数据工厂类，负责按场景类型创建提供者实例"""

    # 场景类型到类的映射
    PROVIDER_MAP: Dict[str, Type[BoundaryDatum]] = {
        ScenarioKind.SLIT_TRACE.value: SlitTraceDatum,
        ScenarioKind.CONSTANT.value: ConstantDatum,
        ScenarioKind.SHIFTED_SLIT.value: ShiftedSlitDatum,
        ScenarioKind.TABLE.value: TableDatum,
    }

    @staticmethod
    def create_provider(scenario: Scenario) -> BoundaryDatum:
        """
        创建边界数据提供者实例

        Args:
            scenario: 场景描述

        Returns:
            BoundaryDatum 实例
        """
        kind = scenario.kind.value
        parameters = scenario.model_dump(exclude={"name", "kind", "dimension"}, exclude_none=True)
        selector = StrategySelector[BoundaryDatum]({"active": kind, kind: parameters}, "边界数据")
        provider = selector.create_provider(DatumFactory.PROVIDER_MAP, {"type": kind})
        if provider is None:
            logger.error(f"无法为场景 {scenario.label} 创建边界数据")
            raise InadmissibleScenarioError(f"无法为场景 {scenario.label} 创建边界数据")
        return provider
