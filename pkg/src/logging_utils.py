import json
import sys
import threading
from datetime import datetime, timezone
from pathlib import Path
from typing import Optional

LEVELS = {"debug": 0, "info": 1, "warning": 2, "error": 3, "critical": 4}


def print_logger(message, level, *args, **kwargs):
    colors = {
        "debug": "\033[90m",
        "info": "\033[92m",
        "warning": "\033[93m",
        "error": "\033[91m",
        "critical": "\033[1;91m",
        "reset": "\033[0m",
    }
    color = colors.get(level, colors["info"])
    reset = colors["reset"]
    # stdout carries the command reports
    kwargs.setdefault("file", sys.stderr)
    print(f"{color}[{level.upper()}] {message}{reset}", *args, **kwargs)


class Logger:
    """JSON-lines logger with optional colored terminal echo.

    Every component takes one of these in its constructor and calls it as
    ``logger("[ClassName] message", level="info")``.

    :param output_path: log file to append to; ``None`` keeps the log in the terminal only.
    :param level: minimum level that is recorded.
    :param print_to_terminal: echo recorded entries to stderr.
    """

    def __init__(self, output_path: Optional[str] = None, level: Optional[str] = None, print_to_terminal: bool = True):
        self.log_level = (level or "info").lower()
        if self.log_level not in LEVELS:
            raise ValueError(f"Invalid logging level: {level}")
        self.output_path = Path(output_path) if output_path else None
        self.print_to_terminal = print_to_terminal

        if self.output_path is not None:
            self.output_path.parent.mkdir(parents=True, exist_ok=True)
            if not self.output_path.exists():
                self.output_path.touch()
        self._lock = threading.Lock()

    def _append_entry(self, entry: dict):
        if self.output_path is None:
            return
        line = json.dumps(entry, ensure_ascii=False) + "\n"
        with self._lock:
            try:
                with open(self.output_path, "a", encoding="utf-8") as f:
                    f.write(line)
            except OSError as e:
                print(f"[Logger] Failed to write to log file: {e}", file=sys.stderr)

    def enabled(self, level: str) -> bool:
        return LEVELS.get(level, 1) >= LEVELS.get(self.log_level, 1)

    def __call__(self, message: str, level: str = "info"):
        level = (level or "info").lower()
        if not self.enabled(level):
            return
        entry = {
            "timestamp": datetime.now(timezone.utc).isoformat(),
            "level": level,
            "data": message,
        }
        self._append_entry(entry)
        if self.print_to_terminal:
            print_logger(message, level)

    def set_system_log_level(self, level: str):
        if level not in LEVELS:
            raise ValueError(f"Invalid logging level: {level}")
        self.log_level = level


def quiet_logger() -> Logger:
    """Terminal-only logger that records warnings and worse."""
    return Logger(level="warning")
