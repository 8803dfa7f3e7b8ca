from app.config.app_config import AppConfig
from app.utils.log import LogManager, LogBroker


app_config = AppConfig()
log_broker = LogBroker()
logger = LogManager.GetLogger(log_name="thinlab")
LogManager.set_queue_handler(logger, log_broker)
LogManager.configure_library_loggers()
