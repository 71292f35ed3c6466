"""Built-in scenario fixtures shipped under scenarios/."""
from pathlib import Path

SCENARIO_DIR = Path(__file__).resolve().parent.parent / "scenarios"

DEMOS = {
    "qubit-born": "qubit_born.scn",
    "two-sector": "two_sector.scn",
    "mppc-fail": "mppc_fail.scn",
    "angle-born": "angle_born.scn",
    "spectral": "spectral.scn",
    "reference": "reference.scn",
}


def demo_path(name: str) -> Path:
    if name not in DEMOS:
        raise KeyError(f"unknown demo '{name}'; choose from {', '.join(sorted(DEMOS))}")
    return SCENARIO_DIR / DEMOS[name]


def demo_source(name: str) -> str:
    return demo_path(name).read_text(encoding="utf-8")


def corpus() -> list[Path]:
    return sorted(SCENARIO_DIR.glob("*.scn"))
