"""
场文件的读写

格式：
    # thinlab-field v1
    dimension = 2
    inverse_h = 64
    node_count = 6469
    之后每行一个节点值（按节点编号顺序，17 位有效数字）
"""

from pathlib import Path
from typing import Optional, Union

import numpy as np

from app import logger
from app.config.constant import FIELD_FILE_MAGIC, FIELD_FLOAT_FORMAT
from app.core.exceptions import FieldFormatError, GridError
from app.core.geometry import GridSpec, ScalarField, build_grid

_HEADER_KEYS = ("dimension", "inverse_h", "node_count")


def dump_field(field: ScalarField, path: Union[str, Path]) -> Path:
    """将场写入文本文件，读回后逐位相等"""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    grid = field.grid
    lines = [
        FIELD_FILE_MAGIC,
        f"dimension = {grid.dimension}",
        f"inverse_h = {grid.inverse_h}",
        f"node_count = {grid.node_count}",
    ]
    lines.extend(format(float(value), FIELD_FLOAT_FORMAT) for value in field.node_values)
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    logger.debug(f"场已写入 {path}（{grid.node_count} 个节点）")
    return path


def _parse_header(lines, path: Path) -> dict:
    if not lines or lines[0].strip() != FIELD_FILE_MAGIC:
        raise FieldFormatError(f"{path} 不是场文件：缺少文件头 {FIELD_FILE_MAGIC!r}")
    header = {}
    for number, key in enumerate(_HEADER_KEYS, start=2):
        if len(lines) < number:
            raise FieldFormatError(f"{path} 的文件头被截断")
        name, _, value = lines[number - 1].partition("=")
        if name.strip() != key:
            raise FieldFormatError(f"{path} 第 {number} 行应为 {key}，实际为 {lines[number - 1]!r}")
        try:
            header[key] = int(value.strip())
        except ValueError:
            raise FieldFormatError(f"{path} 第 {number} 行的 {key} 不是整数: {value.strip()!r}") from None
    return header


def load_field(path: Union[str, Path], grid: Optional[GridSpec] = None) -> ScalarField:
    """读取场文件

    Args:
        path: 文件路径
        grid: 期望的网格；给定时文件头必须与之一致

    Returns:
        ScalarField
    """
    path = Path(path)
    lines = path.read_text(encoding="utf-8").splitlines()
    header = _parse_header(lines, path)
    if grid is not None and (header["dimension"], header["inverse_h"]) != (grid.dimension, grid.inverse_h):
        raise FieldFormatError(
            f"{path} 的网格 (n={header['dimension']}, 1/h={header['inverse_h']}) "
            f"与期望的 (n={grid.dimension}, 1/h={grid.inverse_h}) 不一致"
        )
    try:
        grid = grid or build_grid(header["dimension"], f"1/{header['inverse_h']}")
    except GridError as e:
        raise FieldFormatError(f"{path} 的文件头描述了非法网格: {e}") from None
    if header["node_count"] != grid.node_count:
        raise FieldFormatError(f"{path} 的节点数 {header['node_count']} 与网格的 {grid.node_count} 不一致")

    body = [line for line in lines[len(_HEADER_KEYS) + 1 :] if line.strip()]
    if len(body) != grid.node_count:
        raise FieldFormatError(f"{path} 被截断：应有 {grid.node_count} 个值，实际 {len(body)} 个")
    try:
        values = np.array([float(line) for line in body], dtype=np.float64)
    except ValueError as e:
        raise FieldFormatError(f"{path} 含有无法解析的数值: {e}") from None
    return ScalarField(grid, values)
