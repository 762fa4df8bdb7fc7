import json
from dataclasses import dataclass, fields, asdict
from pathlib import Path
from typing import Optional, get_args

from src.errors import FormatError


@dataclass
class Settings:
    # Enumeration
    enum_cap: int = 200_000
    max_height: int = 3
    max_nodes: int = 6

    # Constructions
    wreath_cap: int = 4096
    closure_cap: int = 20_000

    # Path languages
    psi_max_h: int = 10
    psi_family_cap: int = 50_000

    # Decision procedures
    simk_budget: int = 10_000
    division_budget: int = 200_000
    division_max_subset: int = 2
    jobs: int = 1

    # Runs
    seed: int = 0
    log_level: str = "warning"
    log_file: Optional[str] = None
    output_directory: str = "./output"


class SettingManager:
    """Loads and stores :class:`Settings` as JSON and overlays command-line values."""

    def __init__(self, path: Optional[str] = None):
        self.path = Path(path) if path else None

    def load(self) -> Settings:
        settings = Settings()
        if self.path is None or not self.path.exists():
            return settings
        try:
            data = json.loads(self.path.read_text(encoding="utf-8"))
        except json.JSONDecodeError as e:
            raise FormatError(e.msg, str(self.path), e.lineno)
        if not isinstance(data, dict):
            raise FormatError("settings must be a JSON object", str(self.path), 0)
        known = {f.name: f.type for f in fields(Settings)}
        for key, value in data.items():
            if key not in known:
                raise FormatError(f"unknown setting '{key}'", str(self.path), 0)
            allowed = get_args(known[key]) or (known[key],)
            # JSON true/false would otherwise pass as an int
            if (isinstance(value, bool) and bool not in allowed) or not isinstance(value, allowed):
                expected = " or ".join("null" if t is type(None) else t.__name__ for t in allowed)
                raise FormatError(f"setting '{key}' must be {expected}", str(self.path), 0)
            setattr(settings, key, value)
        return settings

    def save(self, settings: Settings):
        if self.path is None:
            return
        self.path.parent.mkdir(parents=True, exist_ok=True)
        self.path.write_text(json.dumps(asdict(settings), indent=2, sort_keys=True) + "\n", encoding="utf-8")

    @staticmethod
    def from_namespace(namespace, settings: Optional[Settings] = None) -> Settings:
        """Copy every non-None attribute of ``namespace`` that names a setting onto ``settings``."""
        settings = settings if settings is not None else Settings()
        for f in fields(Settings):
            value = getattr(namespace, f.name, None)
            if value is not None:
                setattr(settings, f.name, value)
        return settings
