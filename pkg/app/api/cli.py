"""
命令行入口

    run <config>       求解并分析
    verify <config>    读取已落盘的场，只做分析
    presets            列出随仓库提供的场景

退出码：0 全部判定通过，1 有判定未通过，2 配置错误，3 求解器未收敛。
<config> 可以是文件路径，也可以是 app/presets 下的预设名（如 slit12）。
"""

import argparse
import logging
import traceback
from pathlib import Path
from typing import List, Optional, Tuple

from app import logger
from app.api.config_parser import parse_run_config
from app.config.constant import EXIT_CONFIG_ERROR, EXIT_PASS, EXIT_SOLVER_FAILURE, EXIT_VERDICT_FAILURE
from app.core.exceptions import (
    ConfigError,
    DomainError,
    FieldFormatError,
    GridError,
    InadmissibleScenarioError,
    LabError,
    SolverDivergedError,
)
from app.core.pipeline.run_process import run_process
from app.schemas.run import RunSummary
from app.utils.log import LogManager

PRESET_DIR = Path(__file__).resolve().parent.parent / "presets"

# 这些异常说明配置本身有问题
CONFIG_ERRORS = (ConfigError, GridError, DomainError, InadmissibleScenarioError, FieldFormatError, FileNotFoundError)


def resolve_config(name: str) -> Path:
    """路径存在时直接使用，否则按预设名查找"""
    path = Path(name)
    if path.is_file():
        return path
    preset = PRESET_DIR / f"{path.stem}.cfg"
    if preset.is_file():
        return preset
    raise ConfigError(f"找不到配置文件或预设: {name}")


def list_presets() -> List[Tuple[str, str]]:
    """(预设名, 说明) 列表，按名称排序"""
    presets = []
    for path in sorted(PRESET_DIR.glob("*.cfg")):
        description = ""
        for line in path.read_text(encoding="utf-8").splitlines():
            key, _, value = line.partition("=")
            if key.strip() == "description":
                description = value.strip()
                break
        presets.append((path.stem, description))
    return presets


def _report(summary: RunSummary) -> int:
    for verdict in summary.verdicts:
        mark = "PASS" if verdict.passed else "FAIL"
        print(f"  [{mark}] {verdict.name:<28} margin = {verdict.margin:+.4g}  {verdict.detail}")
    return EXIT_PASS if summary.passed else EXIT_VERDICT_FAILURE


def _execute(config_name: str, verify: bool) -> int:
    try:
        config = parse_run_config(resolve_config(config_name))
        summary = run_process.verify(config) if verify else run_process.run(config)
    except CONFIG_ERRORS as e:
        logger.error(f"配置错误: {e}")
        return EXIT_CONFIG_ERROR
    except SolverDivergedError as e:
        logger.error(f"求解失败: {e}")
        return EXIT_SOLVER_FAILURE
    except LabError as e:
        logger.error(f"运行失败: {e}")
        return EXIT_VERDICT_FAILURE
    print(f"{config.name}: {config.scenario.label}, n={config.dimension}, h={config.h}")
    return _report(summary)


def cmd_run(ns: argparse.Namespace) -> int:
    return _execute(ns.config, verify=False)


def cmd_verify(ns: argparse.Namespace) -> int:
    return _execute(ns.config, verify=True)


def cmd_presets(ns: argparse.Namespace) -> int:
    for name, description in list_presets():
        print(f"{name:<12} {description}")
    return EXIT_PASS


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="thinlab", description="夹紧固定边界的 Signorini 问题数值实验")
    parser.add_argument("-v", "--verbose", action="store_true", help="控制台输出 DEBUG 日志")
    parser.add_argument("-q", "--quiet", action="store_true", help="控制台只输出 WARNING 以上的日志")
    sub = parser.add_subparsers(dest="cmd", required=True)

    run = sub.add_parser("run", help="求解并分析一个配置")
    run.add_argument("config", help="配置文件路径或预设名")
    run.set_defaults(handler=cmd_run)

    verify = sub.add_parser("verify", help="对已落盘的场重新分析")
    verify.add_argument("config", help="配置文件路径或预设名")
    verify.set_defaults(handler=cmd_verify)

    presets = sub.add_parser("presets", help="列出预设场景")
    presets.set_defaults(handler=cmd_presets)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    ns = parser.parse_args(argv)
    if ns.verbose:
        LogManager.set_console_level(logger, logging.DEBUG)
    elif ns.quiet:
        LogManager.set_console_level(logger, logging.WARNING)
    else:
        LogManager.set_console_level(logger, logging.INFO)
    try:
        return ns.handler(ns)
    except KeyboardInterrupt:
        logger.warning("用户中断")
        return 130
    except Exception as e:
        logger.error(f"未预期的错误: {e}\n{traceback.format_exc()}")
        return EXIT_VERDICT_FAILURE
