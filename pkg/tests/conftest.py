import os
import tempfile
from functools import lru_cache

# 测试使用独立的仓库配置，避免改写 data/lab_config.json
os.environ.setdefault("THINLAB_CONFIG", os.path.join(tempfile.mkdtemp(prefix="thinlab-"), "lab_config.json"))

import pytest  # noqa: E402

from app.core.analytic import slit_field  # noqa: E402
from app.core.geometry import build_grid  # noqa: E402
from app.core.solver import minimize  # noqa: E402
from app.schemas.scenario import Scenario  # noqa: E402

SCENARIOS = {
    "zero": Scenario.constant(0.0),
    "const1": Scenario.constant(1.0),
    "slit12": Scenario.slit_trace(0.5),
    "slit32": Scenario.slit_trace(1.5),
    "slit52": Scenario.slit_trace(2.5),
    "shifted32": Scenario.shifted_slit(1.5, 0.3),
}


@lru_cache(maxsize=None)
def _grid(dimension: int, inverse_h: int):
    return build_grid(dimension, f"1/{inverse_h}")


@lru_cache(maxsize=None)
def _solved(name: str, inverse_h: int):
    return minimize(_grid(2, inverse_h), SCENARIOS[name])


@pytest.fixture(scope="session")
def grid():
    """按 (维数, 1/h) 取缓存的网格"""
    return _grid


@pytest.fixture(scope="session")
def solved():
    """按 (场景名, 1/h) 取缓存的二维求解结果 (field, report)"""
    return _solved


@pytest.fixture(scope="session")
def sampled():
    """按 (κ, 1/h) 取二维网格上采样的 û_κ"""

    @lru_cache(maxsize=None)
    def _sampled(kappa: float, inverse_h: int):
        return slit_field(_grid(2, inverse_h), kappa)

    return _sampled


@pytest.fixture(scope="session")
def scenarios():
    return SCENARIOS
