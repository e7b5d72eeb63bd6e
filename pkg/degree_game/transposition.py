import threading
from typing import Any, Dict, Hashable, Optional


class TranspositionTable:
    """
    Transposition table for the solver and the exhaustive adversary.

    Entries are final game values, so concurrent writers storing the same key always store
    the same value and the table never needs eviction beyond the size cap.
    """
    def __init__(self, max_size: int = 5000000):
        self.max_size = max_size
        self.table: Dict[Hashable, Any] = {}
        self.lock = threading.RLock()
        self.hits = 0

    def lookup(self, key: Hashable) -> Optional[Any]:
        with self.lock:
            value = self.table.get(key)
            if value is not None:
                self.hits += 1
            return value

    def store(self, key: Hashable, value: Any) -> None:
        with self.lock:
            if len(self.table) >= self.max_size:
                return
            self.table[key] = value

    def clear(self) -> None:
        with self.lock:
            self.table.clear()
            self.hits = 0

    def size(self) -> int:
        with self.lock:
            return len(self.table)

    def __contains__(self, key: Hashable) -> bool:
        with self.lock:
            return key in self.table
