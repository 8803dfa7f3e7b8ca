"""
运行配置文件的解析

格式为带节标题的扁平键值文本，不支持嵌套：

    # 注释
    [run]
    name = slit12
    description = SLIT_TRACE(1/2)，n=2，h=1/64
    [grid]
    dimension = 2
    h = 1/64
    [scenario]
    kind = SLIT_TRACE
    kappa = 1/2
    [analysis]
    frequency_centers = 0; 0.25

中心用分号分隔，每个中心只写薄超平面内的坐标：n=2 写 x_1，n=3 写 x_1,x_2。
任何错误都以 ConfigError 抛出并带上行号。
"""

from fractions import Fraction
from pathlib import Path
from typing import Dict, List, Optional, Tuple, Union

from pydantic import ValidationError

from app import app_config
from app.core.exceptions import ConfigError, GridError
from app.core.geometry import check_grid
from app.schemas.run import AnalysisRequest, RunConfig
from app.schemas.scenario import Scenario
from app.schemas.solver import SolverParams

SECTION_KEYS = {
    "run": {"name", "description", "output_dir", "seed", "field"},
    "grid": {"dimension", "h"},
    "scenario": {"kind", "kappa", "value", "shift", "table", "scale", "offset"},
    "solver": {"omega", "tolerance", "max_iterations"},
    "analysis": {
        "frequency_centers",
        "frequency_radii",
        "monotonicity_tolerance",
        "blowup_points",
        "classification",
        "regularity_centers",
        "phi",
        "identities",
        "perturbations",
    },
}

REQUIRED = {("grid", "dimension"), ("grid", "h"), ("scenario", "kind")}

# (值, 行号)
Entry = Tuple[str, int]


def read_sections(text: str) -> Dict[str, Dict[str, Entry]]:
    """按行读取节与键值，记录每个键所在的行号"""
    sections: Dict[str, Dict[str, Entry]] = {}
    current: Optional[str] = None
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("["):
            if not line.endswith("]"):
                raise ConfigError(f"节标题缺少 ']': {raw.strip()!r}", number)
            current = line[1:-1].strip().lower()
            if current not in SECTION_KEYS:
                raise ConfigError(f"未知的节 [{current}]", number)
            if current in sections:
                raise ConfigError(f"节 [{current}] 重复出现", number)
            sections[current] = {}
            continue
        if "=" not in line:
            raise ConfigError(f"应为 key = value 形式: {raw.strip()!r}", number)
        if current is None:
            raise ConfigError("键值出现在任何节之前", number)
        key, _, value = line.partition("=")
        key = key.strip().lower()
        if key not in SECTION_KEYS[current]:
            raise ConfigError(f"[{current}] 中没有键 {key!r}", number)
        if key in sections[current]:
            raise ConfigError(f"[{current}] 中的键 {key!r} 重复", number)
        sections[current][key] = (value.strip(), number)
    return sections


def _number(entry: Entry, key: str) -> float:
    value, line = entry
    try:
        return float(Fraction(value))
    except (ValueError, ZeroDivisionError):
        raise ConfigError(f"{key} 不是数: {value!r}", line) from None


def _integer(entry: Entry, key: str) -> int:
    value, line = entry
    try:
        return int(value)
    except ValueError:
        raise ConfigError(f"{key} 不是整数: {value!r}", line) from None


def _boolean(entry: Entry, key: str) -> bool:
    value, line = entry
    lowered = value.lower()
    if lowered in ("true", "yes", "on", "1"):
        return True
    if lowered in ("false", "no", "off", "0"):
        return False
    raise ConfigError(f"{key} 应为 true 或 false: {value!r}", line)


def _numbers(entry: Entry, key: str, separator: str = ",") -> List[float]:
    value, line = entry
    items = [item.strip() for item in value.split(separator) if item.strip()]
    return [_number((item, line), key) for item in items]


def _centers(entry: Entry, key: str, dimension: int) -> List[Tuple[float, ...]]:
    """形如 "0; 0.25" 或 "0,0; 0.2,0.1"，补上 x_n = 0"""
    value, line = entry
    centers = []
    for chunk in (part.strip() for part in value.split(";")):
        if not chunk:
            continue
        coordinates = _numbers((chunk, line), key)
        if len(coordinates) != dimension - 1:
            raise ConfigError(f"{key} 中的 {chunk!r} 应有 {dimension - 1} 个坐标", line)
        centers.append(tuple(coordinates) + (0.0,))
    return centers


def _validation_line(error: ValidationError, lines: Dict[str, int], fallback: int) -> Tuple[str, int]:
    """把 pydantic 的错误位置映射回配置行号"""
    first = error.errors()[0]
    for part in reversed(first.get("loc", ())):
        if isinstance(part, str) and part in lines:
            return first["msg"], lines[part]
    return first["msg"], fallback


def parse_run_config(source: Union[str, Path], text: Optional[str] = None) -> RunConfig:
    """
    解析运行配置

    Args:
        source: 配置文件路径；text 给出时只用于默认名称
        text: 配置文本，为空时从 source 读取

    Returns:
        RunConfig
    """
    path = Path(source)
    if text is None:
        try:
            text = path.read_text(encoding="utf-8")
        except OSError as e:
            raise ConfigError(f"无法读取配置文件 {path}: {e}") from None
    sections = read_sections(text)
    for section, key in sorted(REQUIRED):
        if key not in sections.get(section, {}):
            raise ConfigError(f"缺少必需的键 [{section}] {key}")

    run = sections.get("run", {})
    grid = sections["grid"]
    scenario = sections["scenario"]
    solver = sections.get("solver", {})
    analysis = sections.get("analysis", {})
    lines = {key: line for entries in sections.values() for key, (_, line) in entries.items()}

    # ------------------------------ #  网格部分
    dimension = _integer(grid["dimension"], "dimension")
    h, h_line = grid["h"]
    try:
        inverse_h = check_grid(dimension, h)
    except GridError as e:
        raise ConfigError(str(e), h_line if dimension in (2, 3) else grid["dimension"][1]) from None

    # ------------------------------ #  场景部分
    kind, kind_line = scenario["kind"]
    scenario_args = {"kind": kind.upper(), "dimension": dimension}
    for key in ("kappa", "value", "shift", "scale", "offset"):
        if key in scenario:
            scenario_args[key] = _number(scenario[key], key)
    if "table" in scenario:
        scenario_args["table"] = tuple(_numbers(scenario["table"], "table"))

    # ------------------------------ #  分析部分
    request_args = {}
    for key in ("frequency_centers", "blowup_points", "regularity_centers"):
        if key in analysis:
            request_args[key] = _centers(analysis[key], key, dimension)
    if "frequency_radii" in analysis:
        request_args["frequency_radii"] = _numbers(analysis["frequency_radii"], "frequency_radii")
    if "monotonicity_tolerance" in analysis:
        request_args["monotonicity_tolerance"] = _number(analysis["monotonicity_tolerance"], "monotonicity_tolerance")
    for key in ("classification", "phi", "identities"):
        if key in analysis:
            request_args[key] = _boolean(analysis[key], key)
    if "perturbations" in analysis:
        request_args["perturbations"] = _integer(analysis["perturbations"], "perturbations")

    name = run["name"][0] if "name" in run else path.stem
    default_root = app_config.section("cli_config").get("default_output_dir", "out")
    try:
        scenario_model = Scenario(name=name, **scenario_args)
    except ValidationError as e:
        message, line = _validation_line(e, lines, kind_line)
        raise ConfigError(f"场景不合法: {message}", line) from None
    try:
        solver_model = SolverParams.from_config(
            omega=_number(solver["omega"], "omega") if "omega" in solver else None,
            tolerance=_number(solver["tolerance"], "tolerance") if "tolerance" in solver else None,
            max_iterations=_integer(solver["max_iterations"], "max_iterations") if "max_iterations" in solver else None,
        )
        request = AnalysisRequest(**request_args)
        return RunConfig(
            name=name,
            description=run["description"][0] if "description" in run else "",
            dimension=dimension,
            h=h,
            inverse_h=inverse_h,
            scenario=scenario_model,
            solver=solver_model,
            analysis=request,
            output_dir=run["output_dir"][0] if "output_dir" in run else str(Path(default_root) / name),
            field_path=run["field"][0] if "field" in run else None,
            seed=_integer(run["seed"], "seed") if "seed" in run else 0,
        )
    except ValidationError as e:
        message, line = _validation_line(e, lines, 1)
        raise ConfigError(f"配置不合法: {message}", line) from None
