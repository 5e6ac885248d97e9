# utils/settings_manager.py

from __future__ import annotations

import json
import logging
import os
import platform
from pathlib import Path
from typing import Any, Optional

logger = logging.getLogger(__name__)

DEFAULTS: dict[str, Any] = {
    "budget_nodes": 200000,
    "format": "text",
    "seed": 0,
    "last_output_dir": None,
}


class SettingsManager:
    """
    Handles persistence of user defaults.

    - <data dir>/settings.json : budget, output format, seed, last output dir

    CLI flags override these values and these values override :data:`DEFAULTS`.
    """

    def __init__(self, base_dir: Optional[Path] = None) -> None:
        """
        Initialize the settings directory and load persisted data.

        :param base_dir: Directory to use instead of the per-platform one
        :type base_dir: Optional[Path]
        """
        # =================================================
        # User data folder (single source of truth)
        # =================================================
        if base_dir is not None:
            self.base_dir: Path = Path(base_dir)
        elif os.getenv("DEGENERACY_LAB_HOME"):
            self.base_dir = Path(os.environ["DEGENERACY_LAB_HOME"])
        elif platform.system() == "Windows":
            self.base_dir = Path(os.getenv("LOCALAPPDATA", Path.home() / "AppData" / "Local")) / "DegeneracyLab"
        elif platform.system() == "Darwin":
            self.base_dir = Path.home() / "Library/Application Support/DegeneracyLab"
        else:
            self.base_dir = Path.home() / ".degeneracy_lab"

        self.settings_file: Path = self.base_dir / "settings.json"
        self._settings: dict[str, Any] = {}
        self._load_settings()

    # ================= SETTINGS =================

    def _load_settings(self) -> None:
        if not self.settings_file.exists():
            return
        try:
            with open(self.settings_file, "r", encoding="utf-8") as file:
                data = json.load(file)
        except (OSError, ValueError) as exc:
            logger.warning("ignoring unreadable settings file %s: %s", self.settings_file, exc)
            return
        if not isinstance(data, dict):
            logger.warning("ignoring settings file %s: not a JSON object", self.settings_file)
            return
        self._settings = data

    def save(self, data: Optional[dict[str, Any]] = None) -> None:
        if data:
            self._settings.update(data)
        try:
            self.base_dir.mkdir(parents=True, exist_ok=True)
            with open(self.settings_file, "w", encoding="utf-8") as file:
                json.dump(self._settings, file, indent=4, sort_keys=True)
        except OSError as exc:
            logger.warning("could not save settings to %s: %s", self.settings_file, exc)

    def get(self, key: str, default: Any = None) -> Any:
        if key in self._settings:
            return self._settings[key]
        return default if default is not None else DEFAULTS.get(key)

    def set(self, key: str, value: Any) -> None:
        self._settings[key] = value
        self.save()

    def defaults(self) -> dict[str, Any]:
        """Built-in defaults overlaid with the persisted values."""
        return {**DEFAULTS, **self._settings}
