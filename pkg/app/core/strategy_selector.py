from typing import Dict, Any, Optional, TypeVar, Generic, Type

from app import logger


# 定义泛型类型变量
T = TypeVar("T")


class StrategySelector(Generic[T]):
    """
    策略选择器，从 {"active": 名称, 名称: {...}} 形式的配置节中选择策略

    泛型参数 T 代表策略提供者的类型
    """

    def __init__(self, config: Dict[str, Any], config_type: str = "strategy", settings: Optional[Dict[str, Any]] = None):
        """
        初始化策略选择器

        Args:
            config: 配置节，例如 app_config.blowup_config["estimator"]
            config_type: 配置类型(如 'estimator', 'datum')，仅用于日志
            settings: 传给提供者的全局设置
        """
        self.config = config or {}
        self.config_type = config_type
        self.settings = settings or {}

    def get_active_strategy(self) -> Optional[str]:
        """
        获取活跃策略名称

        Returns:
            活跃策略名称，如果不存在则返回None
        """
        return self.config.get("active")

    def get_strategy_config(self, strategy_name: Optional[str] = None) -> Dict[str, Any]:
        """
        获取策略配置

        Args:
            strategy_name: 策略名称，如果为None则使用活跃策略

        Returns:
            策略配置字典
        """
        name = strategy_name or self.get_active_strategy()
        if not name or name not in self.config:
            return {}
        strategy_config = self.config.get(name, {})
        return strategy_config if isinstance(strategy_config, dict) else {}

    def create_provider(self, provider_map: Dict[str, Type[T]], provider_config: Dict[str, Any]) -> Optional[T]:
        """
        创建策略提供者实例

        Args:
            provider_map: 策略名称到类的映射
            provider_config: 提供者配置，会覆盖配置节中的同名项

        Returns:
            策略提供者实例，如果创建失败则返回None
        """
        strategy_name = provider_config.get("type") or self.get_active_strategy()
        if not strategy_name:
            logger.error(f"未指定{self.config_type}策略名称，无法创建提供者")
            return None

        provider_class = provider_map.get(strategy_name)
        if not provider_class:
            logger.error(f"未找到{self.config_type}策略: {strategy_name}")
            return None

        # 合并配置
        merged_config = {**self.get_strategy_config(strategy_name), **provider_config}
        merged_config["type"] = strategy_name  # 确保type字段存在

        try:
            return provider_class(merged_config, self.settings)
        except (KeyError, TypeError, ValueError) as e:
            logger.error(f"创建{self.config_type}提供者 {strategy_name} 失败: {e}")
            return None
