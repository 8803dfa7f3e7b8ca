"""
用 matplotlib 生成自包含的 SVG 图

固定 svg.hashsalt 并去掉 Date 元数据，同一输入得到逐字节相同的文件。
"""

from pathlib import Path
from typing import Dict, Union

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from app.core.geometry import ScalarField
from app.schemas.frequency import FrequencyProfile
from app.schemas.freeboundary import ThinDecomposition

SVG_RC = {"svg.hashsalt": "thinlab", "svg.fonttype": "path"}
SVG_METADATA = {"Date": None, "Creator": None}


def _save(fig, path: Path) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    fig.tight_layout()
    fig.savefig(path, format="svg", metadata=SVG_METADATA)
    plt.close(fig)
    return path


def plot_frequency(profiles: Dict[str, FrequencyProfile], path: Union[str, Path]) -> Path:
    """各中心的 N(r) 曲线"""
    with plt.rc_context(SVG_RC):
        fig, ax = plt.subplots(figsize=(7.0, 4.4))
        for label, profile in profiles.items():
            ax.plot(profile.radii, profile.N, marker="o", markersize=3, linewidth=1.6, label=label)
        ax.set_xlabel("r")
        ax.set_ylabel("N(r)")
        ax.set_title("Almgren frequency")
        ax.grid(True, alpha=0.25)
        if profiles:
            ax.legend(fontsize=8)
        return _save(fig, Path(path))


def plot_thin_profile(field: ScalarField, decomposition: ThinDecomposition, path: Union[str, Path]) -> Path:
    """薄集上 x_1 轴方向的剖面 u(x_1, 0)，标出 Λ、Ω、Γ"""
    grid = field.grid
    thin = np.asarray(grid.thin_ids)
    coords = grid.integer_coordinates(thin)
    # n=3 时只取 x_2 = 0 的那条线
    on_axis = np.all(coords[:, 1:] == 0, axis=1)
    ids = thin[on_axis]
    order = np.argsort(coords[on_axis, 0])
    ids = ids[order]
    x1 = grid.coordinates(ids)[:, 0]
    values = field.flat[ids]

    with plt.rc_context(SVG_RC):
        fig, ax = plt.subplots(figsize=(7.0, 4.0))
        ax.plot(x1, values, color="#1f77b4", linewidth=1.4, label="u(x1, 0)")
        for members, style, label in (
            (decomposition.coincidence, dict(color="#d62728", marker="s", s=8), "Lambda"),
            (decomposition.positivity, dict(color="#2ca02c", marker="o", s=6), "Omega"),
            (decomposition.free_boundary, dict(color="#000000", marker="x", s=40), "Gamma"),
        ):
            mask = np.isin(ids, members)
            ax.scatter(x1[mask], values[mask], label=label, zorder=3, **style)
        ax.axvline(0.0, linestyle=":", color="#555555", linewidth=1.0)
        ax.set_xlabel("x1")
        ax.set_ylabel("u")
        ax.set_title("Thin-set profile")
        ax.grid(True, alpha=0.25)
        ax.legend(fontsize=8)
        return _save(fig, Path(path))
