import os

APP_CONFIG_PATH = os.environ.get("THINLAB_CONFIG", "data/lab_config.json")

# 输出目录覆盖用的环境变量
OUTPUT_DIR_ENV = "THINLAB_OUTPUT_DIR"

# 场文件格式
FIELD_FILE_MAGIC = "# thinlab-field v1"
FIELD_FLOAT_FORMAT = ".17g"

# 频率 CSV 的固定列顺序
FREQUENCY_CSV_COLUMNS = ["r", "D", "H", "N", "phi", "res_id1", "res_id2", "rellich_slack"]

# 命令行退出码
EXIT_PASS = 0
EXIT_VERDICT_FAILURE = 1
EXIT_CONFIG_ERROR = 2
EXIT_SOLVER_FAILURE = 3

# H(r) 低于该值时视为退化半径
DEGENERATE_H = 1e-14

# 被积函数不带网格时，球面采样数按此步长选取
DEFAULT_QUADRATURE_SPACING = 1.0 / 128
