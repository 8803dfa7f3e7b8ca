from enum import IntEnum
from fractions import Fraction
from functools import cached_property
from typing import Tuple, Union

import numpy as np
from scipy.spatial import cKDTree

from app import logger
from app.core.exceptions import GridError


class NodeClass(IntEnum):
    """节点角色。数组中以整数存储，GHOST 表示闭球以外、仅供插值使用的盒子节点"""

    GHOST = -1
    INTERIOR = 0
    SPHERE = 1
    THIN_FREE = 2
    THIN_CLAMPED = 3


class GridSpec:
    """对称化半球的均匀笛卡尔离散

    节点覆盖 {|x| <= 1, x_n >= 0}，x_n < 0 的值由偶延拓给出。数组按盒子
    [-1, 1]^{n-1} x [0, 1] 存储，前 n-1 个轴下标为 i + N，最后一个轴为 j。
    """

    def __init__(self, dimension: int, inverse_h: int):
        self.dimension = dimension
        self.inverse_h = inverse_h
        self.spacing = 1.0 / inverse_h
        N = inverse_h
        self.shape: Tuple[int, ...] = (2 * N + 1,) * (dimension - 1) + (N + 1,)

        axes = [np.arange(-N, N + 1)] * (dimension - 1) + [np.arange(0, N + 1)]
        mesh = np.meshgrid(*axes, indexing="ij")
        # 整数坐标，形状 (n, *shape)
        self.index_coords = np.stack(mesh).astype(np.int64)
        r2 = np.sum(self.index_coords**2, axis=0)

        in_ball = r2 <= N * N
        sphere = in_ball & (r2 > (N - 1) * (N - 1))
        thin = self.index_coords[-1] == 0
        clamped = thin & (self.index_coords[0] <= 0)

        classes = np.full(self.shape, NodeClass.GHOST, dtype=np.int8)
        classes[in_ball] = NodeClass.INTERIOR
        classes[in_ball & thin & ~clamped] = NodeClass.THIN_FREE
        classes[in_ball & clamped] = NodeClass.THIN_CLAMPED
        # 最外层壳优先，携带 Dirichlet 数据
        classes[sphere] = NodeClass.SPHERE
        self.classes = classes

        flat_classes = classes.ravel()
        self.node_ids = np.flatnonzero(flat_classes >= 0)
        self.ghost_ids = np.flatnonzero(flat_classes < 0)
        self.free_ids = np.flatnonzero((flat_classes == NodeClass.INTERIOR) | (flat_classes == NodeClass.THIN_FREE))

        for array in (self.index_coords, self.classes, self.node_ids, self.ghost_ids, self.free_ids):
            array.flags.writeable = False

        logger.debug(f"网格已构建: n={dimension}, h=1/{N}, 节点数 {self.node_ids.size}")

    # ------------------------------
    #         节点查询部分
    # ------------------------------

    @property
    def node_count(self) -> int:
        return int(self.node_ids.size)

    @property
    def axes(self) -> Tuple[np.ndarray, ...]:
        """插值用的坐标轴（坐标严格等于 下标 * h）"""
        N = self.inverse_h
        h = self.spacing
        return tuple([np.arange(-N, N + 1) * h] * (self.dimension - 1) + [np.arange(0, N + 1) * h])

    def ids_of_class(self, node_class: NodeClass) -> np.ndarray:
        return np.flatnonzero(self.classes.ravel() == node_class)

    @cached_property
    def thin_ids(self) -> np.ndarray:
        """薄集上的非球面节点（THIN_FREE 与 THIN_CLAMPED）"""
        flat = self.classes.ravel()
        ids = np.flatnonzero((flat == NodeClass.THIN_FREE) | (flat == NodeClass.THIN_CLAMPED))
        ids.flags.writeable = False
        return ids

    @cached_property
    def fixed_boundary_ids(self) -> np.ndarray:
        """Π = {x_1 = 0, x_n = 0} 上的薄节点"""
        ids = self.thin_ids[self.integer_coordinates(self.thin_ids)[:, 0] == 0]
        ids.flags.writeable = False
        return ids

    def integer_coordinates(self, ids: np.ndarray) -> np.ndarray:
        """节点的整数坐标，形状 (k, n)"""
        ids = np.atleast_1d(np.asarray(ids, dtype=np.int64))
        return self.index_coords.reshape(self.dimension, -1)[:, ids].T

    def coordinates(self, ids: np.ndarray) -> np.ndarray:
        """节点的实坐标 下标 * h，形状 (k, n)"""
        return self.integer_coordinates(ids) * self.spacing

    def node_at(self, point) -> int:
        """返回恰好落在格点上的坐标对应的节点编号"""
        point = np.asarray(point, dtype=float)
        index = np.rint(point * self.inverse_h).astype(np.int64)
        if not np.allclose(index * self.spacing, point, atol=1e-12) or index[-1] < 0:
            raise GridError(f"点 {point.tolist()} 不是上半格点")
        shifted = tuple(int(i + self.inverse_h) for i in index[:-1]) + (int(index[-1]),)
        flat = int(np.ravel_multi_index(shifted, self.shape))
        if self.classes.ravel()[flat] < 0:
            raise GridError(f"点 {point.tolist()} 不在闭单位球内")
        return flat

    def class_of(self, node_id: int) -> NodeClass:
        return NodeClass(int(self.classes.ravel()[node_id]))

    # ------------------------------
    #         模板与鬼节点部分
    # ------------------------------

    @cached_property
    def stencil(self) -> np.ndarray:
        """每个盒子节点的 2n 个邻居（扁平编号），薄节点的下邻居取偶反射后的上邻居

        只对非 GHOST 节点有意义；球面节点的邻居可能越出盒子，此时填自身编号。
        """
        n = self.dimension
        total = int(np.prod(self.shape))
        idx = np.arange(total).reshape(self.shape)
        neighbours = np.empty((total, 2 * n), dtype=np.int64)
        for axis in range(n):
            size = self.shape[axis]
            forward = np.roll(idx, -1, axis=axis)
            backward = np.roll(idx, 1, axis=axis)
            position = np.indices(self.shape)[axis]
            forward = np.where(position == size - 1, idx, forward)
            if axis == n - 1:
                # 偶延拓: j = -1 处的值等于 j = 1
                backward = np.where(position == 0, np.roll(idx, -1, axis=axis), backward)
            else:
                backward = np.where(position == 0, idx, backward)
            neighbours[:, 2 * axis] = forward.ravel()
            neighbours[:, 2 * axis + 1] = backward.ravel()
        neighbours.flags.writeable = False
        return neighbours

    @cached_property
    def edges(self) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
        """球内相邻节点构成的格边 (a, b, weight)

        权重计入偶延拓的下半部分：位于薄超平面内的边权重为 1，其余为 2。
        以这些边构造的离散能量，其 Euler-Lagrange 方程恰为 2n 点模板与
        薄节点的反射模板。
        """
        n = self.dimension
        idx = np.arange(int(np.prod(self.shape))).reshape(self.shape)
        in_ball = self.classes >= 0
        thin = self.index_coords[-1] == 0
        heads, tails, weights = [], [], []
        for axis in range(n):
            lower = [slice(None)] * n
            upper = [slice(None)] * n
            lower[axis] = slice(None, -1)
            upper[axis] = slice(1, None)
            lower, upper = tuple(lower), tuple(upper)
            valid = in_ball[lower] & in_ball[upper]
            weight = np.full(valid.shape, 2.0)
            if axis < n - 1:
                weight[thin[lower]] = 1.0
            heads.append(idx[lower][valid])
            tails.append(idx[upper][valid])
            weights.append(weight[valid])
        result = (np.concatenate(heads), np.concatenate(tails), np.concatenate(weights))
        for array in result:
            array.flags.writeable = False
        return result

    @cached_property
    def ghost_source(self) -> np.ndarray:
        """每个鬼节点取值所用的球内节点：离其径向投影最近的节点"""
        if self.ghost_ids.size == 0:
            return np.empty(0, dtype=np.int64)
        tree = cKDTree(self.coordinates(self.node_ids))
        ghost_points = self.coordinates(self.ghost_ids)
        norms = np.linalg.norm(ghost_points, axis=1, keepdims=True)
        _, nearest = tree.query(ghost_points / norms)
        source = self.node_ids[nearest]
        source.flags.writeable = False
        return source

    @cached_property
    def sphere_directions(self) -> np.ndarray:
        """SPHERE 节点到单位球面的径向投影，形状 (k, n)"""
        points = self.coordinates(self.ids_of_class(NodeClass.SPHERE))
        return points / np.linalg.norm(points, axis=1, keepdims=True)


def _inverse_spacing(h: Union[float, str, Fraction]) -> int:
    try:
        value = Fraction(h) if isinstance(h, str) else Fraction(h).limit_denominator(1 << 20)
    except (ValueError, TypeError, OverflowError, ZeroDivisionError) as e:
        raise GridError(f"无法解析步长 h={h!r}: {e}")
    if value <= 0:
        raise GridError(f"步长必须为正: h={h}")
    inverse = 1 / value
    N = round(inverse)
    if N == 0 or abs(float(inverse) - N) > 1e-9 * max(N, 1):
        raise GridError(f"1/h 必须为整数: h={h}")
    return int(N)


def check_grid(dimension: int, h: Union[float, str, Fraction]) -> int:
    """只检查维数与步长，返回 1/h，不构建网格"""
    if dimension not in (2, 3):
        raise GridError(f"维数必须为 2 或 3，实际为 {dimension}")
    N = _inverse_spacing(h)
    if N < 8:
        raise GridError(f"1/h 必须不小于 8，实际为 {N}")
    return N


def build_grid(dimension: int, h: Union[float, str, Fraction]) -> GridSpec:
    """构建对称化半球网格并对节点分类

    Args:
        dimension: 空间维数，取 2 或 3
        h: 网格步长，1/h 必须为不小于 8 的整数；可以是浮点数或 "1/64" 形式的字符串

    Returns:
        GridSpec 实例
    """
    return GridSpec(dimension, check_grid(dimension, h))
