import argparse
import json

import pytest

from src.errors import (
    ForestAlgError, FormatError, PartialAssignmentError, ResourceLimitError, UnknownLabelError, UsageError,
)
from src.logging_utils import Logger
from src.settings import SettingManager, Settings
from src.utils import compact_timestamp, iter_bits, parse_index_list


class TestSettings:
    def test_defaults(self):
        settings = Settings()
        assert (settings.psi_max_h, settings.wreath_cap, settings.jobs) == (10, 4096, 1)

    def test_missing_file_gives_defaults(self, tmp_path):
        assert SettingManager(str(tmp_path / "absent.json")).load() == Settings()
        assert SettingManager().load() == Settings()

    def test_save_and_load(self, tmp_path):
        path = tmp_path / "nested" / "settings.json"
        SettingManager(str(path)).save(Settings(seed=7, log_level="debug"))
        assert json.loads(path.read_text(encoding="utf-8"))["seed"] == 7
        assert SettingManager(str(path)).load() == Settings(seed=7, log_level="debug")

    def test_bad_json(self, tmp_path):
        path = tmp_path / "settings.json"
        path.write_text("{\n  seed: 1\n}", encoding="utf-8")
        with pytest.raises(FormatError):
            SettingManager(str(path)).load()

    @pytest.mark.parametrize("text, message", [
        ('{"psi_max_h": "ten"}', "setting 'psi_max_h' must be int"),
        ('{"jobs": true}', "setting 'jobs' must be int"),
        ('{"log_file": 3}', "setting 'log_file' must be str or null"),
        ('[1, 2]', "settings must be a JSON object"),
    ])
    def test_mistyped_values(self, tmp_path, text, message):
        path = tmp_path / "settings.json"
        path.write_text(text, encoding="utf-8")
        with pytest.raises(FormatError) as info:
            SettingManager(str(path)).load()
        assert str(info.value).endswith(message)
        assert info.value.exit_code == 3

    def test_optional_accepts_null(self, tmp_path):
        path = tmp_path / "settings.json"
        path.write_text('{"log_file": null, "log_level": "info"}', encoding="utf-8")
        assert SettingManager(str(path)).load() == Settings(log_level="info")

    def test_namespace_overlay(self):
        namespace = argparse.Namespace(seed=3, jobs=None, command="oracle")
        settings = SettingManager.from_namespace(namespace, Settings(jobs=2))
        assert (settings.seed, settings.jobs) == (3, 2)


class TestLogger:
    def test_json_lines(self, tmp_path):
        path = tmp_path / "logs" / "run.log"
        logger = Logger(str(path), "info", print_to_terminal=False)
        logger("[Test] kept", level="info")
        logger("[Test] dropped", level="debug")
        entries = [json.loads(line) for line in path.read_text(encoding="utf-8").splitlines()]
        assert [(e["level"], e["data"]) for e in entries] == [("info", "[Test] kept")]

    def test_terminal_echo_goes_to_stderr(self, capsys):
        Logger(level="warning")("[Test] careful", level="warning")
        out, err = capsys.readouterr()
        assert out == ""
        assert "[WARNING] [Test] careful" in err

    def test_levels(self):
        logger = Logger(level="error", print_to_terminal=False)
        assert not logger.enabled("warning")
        logger.set_system_log_level("debug")
        assert logger.enabled("debug")
        with pytest.raises(ValueError):
            logger.set_system_log_level("loud")
        with pytest.raises(ValueError):
            Logger(level="loud")


class TestErrors:
    @pytest.mark.parametrize("error, code", [
        (UsageError("x"), 3), (UnknownLabelError("z"), 3), (FormatError("bad", "a.fa", 2), 3),
        (ResourceLimitError("wreath cap", 10, 27), 4), (PartialAssignmentError("x"), 1),
    ])
    def test_exit_codes(self, error, code):
        assert isinstance(error, ForestAlgError)
        assert error.exit_code == code

    def test_resource_limit_message(self):
        error = ResourceLimitError("wreath cap", 10, 27)
        assert str(error) == "wreath cap exceeded (cap 10, reached 27)"
        assert error.partial == 27


class TestUtils:
    def test_index_list(self):
        assert parse_index_list("1,3") == [1, 3]
        assert parse_index_list(" 2 4 ") == [2, 4]
        assert parse_index_list("") == []
        with pytest.raises(ValueError):
            parse_index_list("1,x")

    def test_bits(self):
        assert list(iter_bits(0b10110)) == [1, 2, 4]
        assert list(iter_bits(0)) == []

    def test_timestamp(self):
        stamp = compact_timestamp()
        assert len(stamp) == len("20250101-120000000")
        assert stamp[8] == "-"
