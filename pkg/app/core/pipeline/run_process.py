import os
from contextlib import contextmanager
from pathlib import Path
from typing import List

from app import app_config, log_broker, logger
from app.core.exceptions import SolverDivergedError
from app.core.geometry import build_grid
from app.core.pipeline.analysis_process import analysis_process
from app.core.pipeline.artifact_process import artifact_process
from app.core.solver import minimize
from app.schemas.run import RunConfig, RunSummary
from app.utils.field_io import load_field


class RunProcess:
    """
    端到端流水线：建网格、求解、分析、写产物，各阶段顺序执行
    """

    def __init__(self):
        pass

    def output_dir(self, config: RunConfig) -> Path:
        """环境变量 THINLAB_OUTPUT_DIR 存在时，输出写到 $THINLAB_OUTPUT_DIR/<name>"""
        env_name = app_config.section("cli_config").get("output_dir_env", "THINLAB_OUTPUT_DIR")
        override = os.environ.get(env_name)
        if override:
            return Path(override) / config.name
        return Path(config.output_dir)

    @contextmanager
    def _collect_log(self, output_dir: Path):
        """运行期间的日志同时写入 <output_dir>/run.log"""
        lines: List[str] = []
        callback = log_broker.register(lines.append)
        try:
            yield lines
        finally:
            log_broker.unregister(callback)
            output_dir.mkdir(parents=True, exist_ok=True)
            (output_dir / "run.log").write_text("\n".join(lines) + "\n", encoding="utf-8")

    def run(self, config: RunConfig) -> RunSummary:
        """
        求解并分析一个配置

        Args:
            config: 运行配置

        Returns:
            RunSummary

        Raises:
            SolverDivergedError: 求解未收敛，部分结果已写入输出目录
        """
        output_dir = self.output_dir(config)
        with self._collect_log(output_dir):
            logger.info(f"运行 {config.name}: {config.scenario.label}, n={config.dimension}, h={config.h}")
            grid = build_grid(config.dimension, config.h)
            try:
                field, report = minimize(grid, config.scenario, config.solver)
            except SolverDivergedError as e:
                if e.field is not None:
                    partial = RunSummary(
                        name=config.name,
                        scenario=config.scenario,
                        dimension=config.dimension,
                        inverse_h=config.inverse_h,
                        solve=e.report,
                    )
                    artifact_process.emit(partial, output_dir, field=e.field)
                raise
            summary, decomposition = analysis_process.analyze(field, config, report)
            artifact_process.emit(summary, output_dir, field=field, decomposition=decomposition)
        return summary

    def verify(self, config: RunConfig) -> RunSummary:
        """
        对已落盘的场重新做分析，不求解

        场文件默认为 <output_dir>/field.txt，网格须与配置一致。
        """
        output_dir = self.output_dir(config)
        field_path = Path(config.field_path) if config.field_path else output_dir / "field.txt"
        with self._collect_log(output_dir):
            logger.info(f"校验 {config.name}: 读取 {field_path}")
            grid = build_grid(config.dimension, config.h)
            field = load_field(field_path, grid)
            summary, decomposition = analysis_process.analyze(field, config)
            artifact_process.emit(summary, output_dir, field=field, decomposition=decomposition, persist=False)
        return summary


run_process = RunProcess()
