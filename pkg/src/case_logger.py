"""Case logger persisting campaign results as JSON lines."""

import json
import logging
from collections import Counter, deque
from datetime import datetime, timezone
from pathlib import Path
from threading import Lock
from typing import Any, Dict, Iterable, List, Optional
from uuid import uuid4


logger = logging.getLogger(__name__)


class CaseLogger:
    """
    Append-only log of campaign cases.

    Each case is recorded with its theorem, index, seed, deviation and outcome.
    """

    def __init__(self, log_file: str = "logs/cases.jsonl"):
        self.log_file = Path(log_file)
        self.lock = Lock()
        self.log_file.parent.mkdir(parents=True, exist_ok=True)
        logger.info(f"Case logger initialized: {self.log_file}")

    def log_case(
        self,
        theorem: str,
        index: int,
        seed: int,
        deviation: Optional[float],
        passed: bool,
        error: Optional[str] = None,
    ) -> None:
        record = {
            'timestamp': datetime.now(timezone.utc).isoformat(),
            'theorem': theorem,
            'index': index,
            'seed': seed,
            'deviation': deviation,
            'passed': passed,
            'error': error,
        }
        self._write_record(record)

    def _write_record(self, record: Dict[str, Any]) -> None:
        with self.lock:
            try:
                record = dict(record, id=uuid4().hex[:12])
                with open(self.log_file, 'a', encoding='utf-8') as f:
                    f.write(json.dumps(record, ensure_ascii=False) + '\n')
            except OSError as e:
                logger.error(f"Failed to write case log: {e}")

    def load_records(
        self,
        limit: Optional[int] = None,
        theorems: Optional[Iterable[str]] = None,
    ) -> List[Dict[str, Any]]:
        """Load records, keeping the last ``limit`` when given."""
        if not self.log_file.exists():
            return []

        wanted = set(theorems) if theorems else None
        buffer = deque(maxlen=limit) if limit is not None else []
        try:
            with open(self.log_file, 'r', encoding='utf-8') as f:
                for line in f:
                    try:
                        record = json.loads(line.strip())
                    except json.JSONDecodeError:
                        continue
                    if wanted and record.get('theorem') not in wanted:
                        continue
                    buffer.append(record)
        except OSError as e:
            logger.error(f"Failed to load case records: {e}")
            return []
        return list(buffer)

    def get_statistics(self) -> Dict[str, Any]:
        records = self.load_records()
        deviations = [r['deviation'] for r in records if r.get('deviation') is not None]
        return {
            'total_cases': len(records),
            'failures': sum(1 for r in records if not r.get('passed')),
            'max_deviation': max(deviations) if deviations else None,
            'by_theorem': dict(Counter(r.get('theorem') for r in records)),
        }
