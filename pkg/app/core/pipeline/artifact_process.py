import csv
import json
import math
from pathlib import Path
from typing import Any, List, Optional

from app import app_config, logger
from app.config.constant import FIELD_FLOAT_FORMAT, FREQUENCY_CSV_COLUMNS
from app.core.geometry import ScalarField
from app.schemas.freeboundary import ThinDecomposition
from app.schemas.run import RunSummary
from app.utils.field_io import dump_field
from app.utils.svg_plot import plot_frequency, plot_thin_profile


def _finite(value: Any) -> Any:
    """JSON 不允许 NaN / inf，统一写成 null"""
    if isinstance(value, float):
        return value if math.isfinite(value) else None
    if isinstance(value, dict):
        return {key: _finite(item) for key, item in value.items()}
    if isinstance(value, (list, tuple)):
        return [_finite(item) for item in value]
    return value


class ArtifactProcess:
    """
    把一次运行的结果写到输出目录：field.txt、frequency_c{k}.csv、summary.json 与 SVG 图

    CSV 与 JSON 不含时间戳，同一配置与种子的重复运行得到逐字节相同的文件。
    """

    def __init__(self):
        pass

    def emit(
        self,
        summary: RunSummary,
        output_dir: Path,
        field: Optional[ScalarField] = None,
        decomposition: Optional[ThinDecomposition] = None,
        persist: bool = True,
    ) -> List[Path]:
        """
        写出全部产物

        Args:
            summary: 结果汇总
            output_dir: 输出目录
            field: 场
            decomposition: 薄集分解，用于剖面图
            persist: 是否写出 field.txt，verify 时为 False

        Returns:
            已写出的文件列表
        """
        output_dir.mkdir(parents=True, exist_ok=True)
        written = []
        if field is not None and persist:
            written.append(dump_field(field, output_dir / "field.txt"))
        for key, profile in summary.frequency.items():
            written.append(self._write_csv(output_dir / f"frequency_{key}.csv", profile.rows()))
        written.append(self._write_summary(output_dir / "summary.json", summary))

        if app_config.section("cli_config").get("plots", True):
            written.extend(self._plot(summary, output_dir, field, decomposition))
        logger.info(f"已写出 {len(written)} 个文件到 {output_dir}")
        return written

    def _write_csv(self, path: Path, rows) -> Path:
        with path.open("w", encoding="utf-8", newline="") as f:
            writer = csv.writer(f, lineterminator="\n")
            writer.writerow(FREQUENCY_CSV_COLUMNS)
            for row in rows:
                writer.writerow([format(float(value), FIELD_FLOAT_FORMAT) for value in row])
        return path

    def _write_summary(self, path: Path, summary: RunSummary) -> Path:
        payload = _finite(summary.model_dump(mode="python"))
        payload["passed"] = summary.passed
        text = json.dumps(payload, sort_keys=True, indent=2, ensure_ascii=False, allow_nan=False, default=str)
        path.write_text(text + "\n", encoding="utf-8")
        return path

    def _plot(
        self,
        summary: RunSummary,
        output_dir: Path,
        field: Optional[ScalarField],
        decomposition: Optional[ThinDecomposition],
    ) -> List[Path]:
        """画图失败只记录日志，不影响退出码"""
        written = []
        try:
            if summary.frequency:
                labels = {
                    f"{key} {list(profile.center)}": profile for key, profile in summary.frequency.items()
                }
                written.append(plot_frequency(labels, output_dir / "frequency.svg"))
            if field is not None and decomposition is not None:
                written.append(plot_thin_profile(field, decomposition, output_dir / "thin_profile.svg"))
        except Exception as e:
            logger.warning(f"画图失败，已跳过: {e}")
        return written


artifact_process = ArtifactProcess()
