import logging
import threading
from collections import deque
from typing import Callable, List

import colorlog

CACHED_SIZE = 2000
log_color_config = {
    "DEBUG": "bold_blue",
    "INFO": "bold_cyan",
    "WARNING": "bold_yellow",
    "ERROR": "red",
    "CRITICAL": "bold_red",
    "RESET": "reset",
    "asctime": "green",
}


class LogBroker:
    """缓存最近的日志，并分发给订阅者（例如一次运行的 run.log 收集器）"""

    def __init__(self):
        self.log_cache = deque(maxlen=CACHED_SIZE)
        self.subscribers: List[Callable[[str], None]] = []
        self._lock = threading.Lock()

    def register(self, callback: Callable[[str], None], replay: bool = False) -> Callable[[str], None]:
        """注册订阅者，replay 为 True 时先回放缓存中的日志"""
        with self._lock:
            if replay:
                for log in self.log_cache:
                    callback(log)
            self.subscribers.append(callback)
        return callback

    def unregister(self, callback: Callable[[str], None]):
        """取消订阅"""
        with self._lock:
            if callback in self.subscribers:
                self.subscribers.remove(callback)

    def publish(self, log_entry: str):
        """发布消息"""
        with self._lock:
            self.log_cache.append(log_entry)
            subscribers = list(self.subscribers)
        for callback in subscribers:
            try:
                callback(log_entry)
            except Exception:
                pass


class LogQueueHandler(logging.Handler):
    def __init__(self, log_broker: LogBroker):
        super().__init__()
        self.log_broker = log_broker

    def emit(self, record):
        log_entry = self.format(record)
        self.log_broker.publish(log_entry)


class LogManager:

    @classmethod
    def GetLogger(cls, log_name: str = "default"):
        logger = logging.getLogger(log_name)
        if logger.hasHandlers():
            return logger
        console_handler = logging.StreamHandler()
        console_handler.setLevel(logging.DEBUG)
        console_formatter = colorlog.ColoredFormatter(
            fmt="%(log_color)s [%(asctime)s| %(levelname)s] [%(filename)s:%(lineno)d]: %(message)s %(reset)s",
            datefmt="%H:%M:%S",
            log_colors=log_color_config,
        )
        console_handler.setFormatter(console_formatter)
        logger.setLevel(logging.DEBUG)
        logger.addHandler(console_handler)

        return logger

    @classmethod
    def set_queue_handler(cls, logger: logging.Logger, log_broker: LogBroker):
        handler = LogQueueHandler(log_broker)
        handler.setLevel(logging.DEBUG)
        # run.log 不需要颜色控制符
        handler.setFormatter(
            logging.Formatter("[%(asctime)s| %(levelname)s] [%(filename)s:%(lineno)d]: %(message)s", datefmt="%H:%M:%S")
        )
        logger.addHandler(handler)

    @classmethod
    def set_console_level(cls, logger: logging.Logger, level: int):
        """只调整控制台输出级别，run.log 仍保留 DEBUG"""
        for handler in logger.handlers:
            if isinstance(handler, logging.StreamHandler) and not isinstance(handler, LogQueueHandler):
                handler.setLevel(level)

    @classmethod
    def configure_library_loggers(cls, level: int = logging.WARNING):
        """配置第三方库的日志级别

        Args:
            level: 日志级别，默认为WARNING以上才输出
        """
        logging.getLogger("numba").setLevel(level)
        logging.getLogger("matplotlib").setLevel(level)
        logging.getLogger("PIL").setLevel(level)
