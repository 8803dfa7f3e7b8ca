"""
投影 SOR 扫描的编译内核
"""

import numpy as np
from numba import njit


@njit(cache=True)
def projected_sor_sweeps(values, free_ids, neighbours, thin_free, omega, tolerance, sweeps):
    """按节点编号的字典序做至多 sweeps 次投影 SOR 扫描

    values 原地更新；thin_free 为 True 的节点在每次更新后投影到 [0, ∞)。

    Returns:
        (实际扫描次数, 最后一次扫描的最大更新量)
    """
    width = neighbours.shape[1]
    max_update = np.inf
    done = 0
    while done < sweeps:
        max_update = 0.0
        for k in range(free_ids.size):
            node = free_ids[k]
            total = 0.0
            for m in range(width):
                total += values[neighbours[k, m]]
            current = values[node]
            updated = current + omega * (total / width - current)
            if thin_free[k] and updated < 0.0:
                updated = 0.0
            delta = abs(updated - current)
            if delta > max_update:
                max_update = delta
            values[node] = updated
        done += 1
        if max_update <= tolerance:
            break
    return done, max_update
