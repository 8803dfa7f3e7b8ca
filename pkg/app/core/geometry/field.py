from functools import cached_property
from typing import Callable, Optional, Union

import numpy as np
from scipy.interpolate import RegularGridInterpolator

from app import app_config
from app.core.exceptions import DomainError, GridError
from app.core.geometry.grid import GridSpec, NodeClass

_EPS = 1e-12


class ScalarField:
    """网格上的解候选 u，只存 x_n >= 0 的一半，另一半由偶反射给出

    values 保存整个盒子的数组，鬼节点的值总是由球内节点推出，
    因此场完全由球内节点值决定。构造后不可修改。
    """

    def __init__(self, grid: GridSpec, values: np.ndarray):
        values = np.asarray(values, dtype=np.float64)
        if values.shape == grid.shape:
            box = values.copy()
        elif values.ndim == 1 and values.size == grid.node_count:
            box = np.zeros(grid.shape, dtype=np.float64)
            box.reshape(-1)[grid.node_ids] = values
        else:
            raise GridError(f"场数组形状 {values.shape} 与网格 {grid.shape} 不匹配")
        flat = box.reshape(-1)
        if not np.all(np.isfinite(flat[grid.node_ids])):
            raise ValueError("场在节点上必须处处有限")
        flat[grid.ghost_ids] = flat[grid.ghost_source]
        box.flags.writeable = False
        self.grid = grid
        self.values = box

    @classmethod
    def from_function(cls, grid: GridSpec, function: Callable[[np.ndarray], np.ndarray]) -> "ScalarField":
        """在球内节点上对闭式函数采样"""
        points = grid.coordinates(grid.node_ids)
        return cls(grid, np.asarray(function(points), dtype=np.float64))

    @classmethod
    def constant(cls, grid: GridSpec, value: float = 0.0) -> "ScalarField":
        return cls(grid, np.full(grid.shape, float(value)))

    @property
    def dimension(self) -> int:
        return self.grid.dimension

    @property
    def spacing(self) -> float:
        return self.grid.spacing

    @property
    def flat(self) -> np.ndarray:
        return self.values.reshape(-1)

    @property
    def node_values(self) -> np.ndarray:
        """按节点编号顺序排列的球内节点值"""
        return self.flat[self.grid.node_ids]

    def values_of(self, node_class: NodeClass) -> np.ndarray:
        return self.flat[self.grid.ids_of_class(node_class)]

    @cached_property
    def _interpolator(self) -> RegularGridInterpolator:
        return RegularGridInterpolator(self.grid.axes, self.values, method="linear", bounds_error=False, fill_value=None)

    @property
    def value_radius(self) -> float:
        """可以求值的最大 |x|"""
        return 1.0

    @property
    def gradient_radius(self) -> float:
        """可以求梯度的最大 |x|（离外球面至少 margin * h）"""
        factor = app_config.section("geometry_config").get("gradient_margin_factor", 2.0)
        return 1.0 - factor * self.spacing

    def values_at(self, points: np.ndarray) -> np.ndarray:
        """多线性插值，x_n < 0 的点按偶反射求值

        Args:
            points: 形状 (k, n) 的点坐标

        Returns:
            形状 (k,) 的插值结果
        """
        points = np.atleast_2d(np.asarray(points, dtype=np.float64))
        if points.shape[1] != self.dimension:
            raise DomainError(f"点的维数 {points.shape[1]} 与场的维数 {self.dimension} 不一致")
        norms = np.linalg.norm(points, axis=1)
        if np.any(norms > 1.0 + _EPS):
            raise DomainError(f"点超出闭单位球: max|x| = {norms.max():.6g}")
        reflected = points.copy()
        reflected[:, -1] = np.abs(reflected[:, -1])
        return self._interpolator(reflected)

    def gradient_at(self, points: np.ndarray) -> np.ndarray:
        """在所在的闭半空间内求差分梯度

        u 在 x_n >= 0 与 x_n <= 0 两侧各自光滑，∂_n u 跨过薄超平面时有折点，
        差分模板不能跨过 x_n = 0。x_n = 0 上取上侧的单侧值。

        Args:
            points: 形状 (k, n) 的点坐标

        Returns:
            形状 (k, n) 的梯度
        """
        points = np.atleast_2d(np.asarray(points, dtype=np.float64))
        norms = np.linalg.norm(points, axis=1)
        if points.size and norms.max() > self.gradient_radius + _EPS:
            raise DomainError(f"点离外球面太近，无法求梯度: max|x| = {norms.max():.6g}")
        return half_space_gradient(self.values_at, points, self.spacing)


def half_space_gradient(evaluate: Callable[[np.ndarray], np.ndarray], points: np.ndarray, step: float) -> np.ndarray:
    """偶函数的差分梯度，所有偏移点一次性求值

    先把点反射到 x_n >= 0 一侧。切向分量用中心差分；法向分量在 x_n >= step 处
    用中心差分，在 [0, step) 内由 x_n = 0 处的二阶单侧差分与 x_n = step 处的
    中心差分线性插值，模板只用上侧的值。最后对原在下侧的点翻转法向分量。
    """
    k, n = points.shape
    upper = points.copy()
    below = upper[:, -1] < 0
    upper[:, -1] = np.abs(upper[:, -1])

    offsets = np.eye(n) * step
    stacked = np.concatenate([upper + offsets[axis] for axis in range(n)] + [upper - offsets[axis] for axis in range(n)])
    values = evaluate(stacked).reshape(2, n, k)
    result = ((values[0] - values[1]) / (2.0 * step)).T

    near = upper[:, -1] < step
    if near.any():
        base = upper[near]
        t = base[:, -1] / step
        layers = []
        for level in (0.0, step, 2.0 * step):
            layer = base.copy()
            layer[:, -1] = level
            layers.append(layer)
        u0, u1, u2 = evaluate(np.concatenate(layers)).reshape(3, -1)
        one_sided = (-3.0 * u0 + 4.0 * u1 - u2) / (2.0 * step)
        centered = (u2 - u0) / (2.0 * step)
        result[near, -1] = (1.0 - t) * one_sided + t * centered

    result[below, -1] = -result[below, -1]
    return result


def reflect(point: np.ndarray) -> np.ndarray:
    """关于薄超平面 {x_n = 0} 的反射"""
    point = np.array(point, dtype=np.float64)
    point[..., -1] = -point[..., -1]
    return point


def interpolate(field: ScalarField, point) -> Union[float, np.ndarray]:
    """在单点或点组上插值场值"""
    point = np.asarray(point, dtype=np.float64)
    result = field.values_at(np.atleast_2d(point))
    return float(result[0]) if point.ndim == 1 else result


def gradient(field: ScalarField, point) -> np.ndarray:
    """在单点或点组上求差分梯度"""
    point = np.asarray(point, dtype=np.float64)
    result = field.gradient_at(np.atleast_2d(point))
    return result[0] if point.ndim == 1 else result


def stencil_average(field: ScalarField, ids: Optional[np.ndarray] = None) -> np.ndarray:
    """偶延拓模板下 2n 个邻居的平均值"""
    grid = field.grid
    ids = grid.node_ids if ids is None else np.asarray(ids, dtype=np.int64)
    return field.flat[grid.stencil[ids]].mean(axis=1)


def normal_derivative_thin(field: ScalarField, ids: Optional[np.ndarray] = None) -> np.ndarray:
    """薄节点处的单侧上法向导数 n * (模板平均 - 节点值) / h

    这是利用调和方程消去 u_nn 后的二阶单侧差分；未受约束时等于 0
    就是反射模板的 Neumann 条件。
    """
    grid = field.grid
    ids = grid.thin_ids if ids is None else np.asarray(ids, dtype=np.int64)
    return grid.dimension * (stencil_average(field, ids) - field.flat[ids]) / grid.spacing
