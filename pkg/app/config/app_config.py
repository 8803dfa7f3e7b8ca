import os
import json
import logging
from typing import Any, Optional

from .constant import APP_CONFIG_PATH
from .default import DEFAULT_CONFIG


logger = logging.getLogger("thinlab")


class AppConfig(dict):
    """实验室的仓库配置，支持直接通过点号操作符访问根配置项。

    - 初始化时会将传入的 default_config 与配置文件进行比对，如果配置文件中缺少配置项则会自动插入默认值并进行一次写入操作。会递归检查配置项。
    - 如果配置文件路径对应的文件不存在，则会自动创建并写入默认配置。
    - 如果配置文件所在位置不可写，则只在内存中使用默认配置。
    """

    def __init__(self, config_path: str = APP_CONFIG_PATH, default_config: dict = DEFAULT_CONFIG):
        super().__init__()
        # 调用父类的 __setattr__ 方法，防止保存配置时将此属性写入配置文件
        object.__setattr__(self, "config_path", config_path)
        object.__setattr__(self, "default_config", default_config)
        object.__setattr__(self, "writable", True)

        conf = json.loads(json.dumps(default_config))
        if not self.check_exist():
            # 不存在时将默认配置写入配置文件
            self._write(default_config)
        else:
            with open(config_path, "r", encoding="utf-8-sig") as f:
                conf = json.loads(f.read())

        # 检查配置完整性，并插入
        has_new = self.check_config_integrity(default_config, conf)
        self.update(conf)
        if has_new:
            self.save_config()

    def check_config_integrity(self, refer_conf: dict, conf: dict, path=""):
        """检查配置完整性，如果有新的配置项则返回 True
        参考default配置文件，检查配置文件是否完整，以及是否有新的配置项
        """
        has_new = False
        for key, value in refer_conf.items():
            path_ = path + "." + key if path else key
            if key not in conf:
                logger.info(f"检查到配置项 {path_} 不存在，已插入默认值 {value}")
                conf[key] = value
                has_new = True
            else:
                if conf[key] is None:
                    conf[key] = value
                    has_new = True
                elif isinstance(value, dict) and isinstance(conf[key], dict):
                    has_new |= self.check_config_integrity(value, conf[key], path_)
        return has_new

    def _write(self, data: dict) -> None:
        if not self.writable:
            return
        try:
            directory = os.path.dirname(self.config_path)
            if directory:
                os.makedirs(directory, exist_ok=True)
            with open(self.config_path, "w", encoding="utf-8-sig") as f:
                json.dump(data, f, indent=2, ensure_ascii=False)
        except OSError as e:
            logger.warning(f"配置文件 {self.config_path} 无法写入（{e}），仅使用内存中的配置")
            object.__setattr__(self, "writable", False)

    def save_config(self, replace_config: Optional[dict] = None):
        """将配置写入文件

        如果传入 replace_config，则将配置替换为 replace_config
        """
        if replace_config:
            self.update(replace_config)
        self._write(dict(self))

    def section(self, name: str) -> dict:
        """取出一个配置节，缺失时回退到默认配置"""
        value = self.get(name)
        if isinstance(value, dict):
            return value
        return self.default_config.get(name, {})

    def __getattr__(self, item) -> Any:
        try:
            return self[item]
        except KeyError:
            return None

    def __delattr__(self, key):
        try:
            del self[key]
            self.save_config()
        except KeyError:
            raise AttributeError(f"没有找到 Key: '{key}'")

    def __setattr__(self, key, value):
        self[key] = value

    def check_exist(self) -> bool:
        return os.path.exists(self.config_path)
