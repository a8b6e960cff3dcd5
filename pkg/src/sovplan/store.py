"""On-disk scenario store: one YAML document per id, versioned writes.

Updates are compare-and-set on the document version: a writer must submit
the version it read, and the store bumps it on success. Stale writers get
a conflict instead of silently clobbering newer work. Writes go through a
lock and land atomically via rename.
"""

from __future__ import annotations

import dataclasses
import os
import re
import threading
from pathlib import Path
from typing import Dict, List, Tuple

from .scenario import Scenario, load_scenario, serialize_scenario

_ID_PATTERN = re.compile(r"^[a-z0-9][a-z0-9_-]*$")


class ScenarioNotFound(KeyError):
    def __init__(self, scenario_id: str):
        super().__init__(scenario_id)
        self.scenario_id = scenario_id

    def __str__(self) -> str:
        return f"no scenario with id {self.scenario_id!r}"


class VersionConflict(RuntimeError):
    def __init__(self, scenario_id: str, submitted: int, current: int):
        super().__init__(
            f"scenario {scenario_id!r}: submitted version {submitted} but current is {current}"
        )
        self.scenario_id = scenario_id
        self.submitted = submitted
        self.current = current


def _check_id(scenario_id: str) -> str:
    if not _ID_PATTERN.match(scenario_id):
        raise ValueError(
            f"scenario id must be a slug of lowercase letters, digits, '-' or '_', got {scenario_id!r}"
        )
    return scenario_id


class ScenarioStore:
    """Directory-backed scenario collection with versioned writes."""

    def __init__(self, root: str | os.PathLike):
        self.root = Path(root)
        self.root.mkdir(parents=True, exist_ok=True)
        self._lock = threading.Lock()
        self._index: Dict[str, Tuple[int, Path]] = {}
        for path in sorted(self.root.glob("*.scn")):
            scenario = load_scenario(path.read_text())
            self._index[scenario.id] = (scenario.version, path)

    def _path_for(self, scenario_id: str) -> Path:
        return self.root / f"{scenario_id}.scn"

    def list_ids(self) -> List[str]:
        with self._lock:
            return sorted(self._index)

    def list(self) -> List[Scenario]:
        return [self.get(sid) for sid in self.list_ids()]

    def get(self, scenario_id: str) -> Scenario:
        with self._lock:
            entry = self._index.get(scenario_id)
        if entry is None:
            raise ScenarioNotFound(scenario_id)
        return load_scenario(entry[1].read_text())

    def put(self, scenario: Scenario) -> Scenario:
        """Create or update a scenario with compare-and-set on version.

        For an existing id the submitted version must equal the stored
        one; the stored copy comes back with the version incremented.
        New ids are stored at their submitted version.
        """
        _check_id(scenario.id)
        with self._lock:
            entry = self._index.get(scenario.id)
            if entry is None:
                stored = scenario
            else:
                current = entry[0]
                if scenario.version != current:
                    raise VersionConflict(scenario.id, scenario.version, current)
                stored = dataclasses.replace(scenario, version=current + 1)
            path = self._path_for(scenario.id)
            tmp = path.with_suffix(".scn.tmp")
            tmp.write_text(serialize_scenario(stored))
            os.replace(tmp, path)
            self._index[scenario.id] = (stored.version, path)
            return stored

    def delete(self, scenario_id: str) -> None:
        with self._lock:
            entry = self._index.pop(scenario_id, None)
            if entry is None:
                raise ScenarioNotFound(scenario_id)
            entry[1].unlink(missing_ok=True)

    def seed(self, scenarios) -> None:
        """Insert the given scenarios where the id is not already present."""
        for scenario in scenarios:
            with self._lock:
                present = scenario.id in self._index
            if not present:
                self.put(scenario)
