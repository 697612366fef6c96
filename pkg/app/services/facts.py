import json
import logging
from pathlib import Path
from typing import Optional

from pydantic import ValidationError

from app import config
from app.exceptions import UsageError
from app.models import Fact, FactEntry, FactLedger

logger = logging.getLogger(__name__)


class FactStore:
    """The expected-facts ledger on disk."""

    def __init__(self, path: Optional[Path] = None):
        self.path = Path(path) if path else config.FACTS_PATH

    def load(self) -> FactLedger:
        if not self.path.is_file():
            raise UsageError(f"fact ledger not found: {self.path}")
        try:
            ledger = FactLedger.model_validate_json(self.path.read_text(encoding="utf-8"))
        except ValidationError as e:
            raise UsageError(f"malformed fact ledger {self.path}: {e.error_count()} errors")
        if ledger.schema_version != config.SCHEMA_VERSION:
            raise UsageError(
                f"fact ledger {self.path} has schema_version {ledger.schema_version}, expected {config.SCHEMA_VERSION}"
            )
        logger.debug(f"Loaded {sum(len(e.facts) for e in ledger.algebras)} facts from {self.path}")
        return ledger

    def save(self, ledger: FactLedger):
        self.path.parent.mkdir(parents=True, exist_ok=True)
        payload = ledger.model_dump(mode="json", exclude_none=True)
        self.path.write_text(json.dumps(payload, indent=2) + "\n", encoding="utf-8")
        logger.info(f"Wrote fact ledger to {self.path}")

    def add(self, slug: str, fact: Fact):
        """Append (or replace by key) one fact and save."""
        ledger = self.load() if self.path.is_file() else FactLedger()
        entry = ledger.entry(slug)
        if entry is None:
            entry = FactEntry(algebra=slug)
            ledger.algebras.append(entry)
        entry.facts = [f for f in entry.facts if f.key != fact.key] + [fact]
        self.save(ledger)
