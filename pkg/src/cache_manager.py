import hashlib
import json
import logging
import sqlite3
import time
from pathlib import Path
from typing import Any, Optional

from config import CACHE_DB_PATH

logger = logging.getLogger(__name__)


class CacheManager:
    """SQLite-based caching for enumeration results (operation tables)"""

    def __init__(self, db_path: str = CACHE_DB_PATH):
        self.db_path = Path(db_path)
        self.db_path.parent.mkdir(parents=True, exist_ok=True)
        self.db = sqlite3.connect(self.db_path)
        self._init_tables()

    def _init_tables(self):
        """Create cache tables if they don't exist"""
        self.db.execute("""
            CREATE TABLE IF NOT EXISTS enumeration_cache (
                key_hash TEXT PRIMARY KEY,
                cache_key TEXT NOT NULL,
                payload TEXT NOT NULL,
                timestamp REAL NOT NULL
            )
        """)
        self.db.commit()

    @staticmethod
    def _hash(key: str) -> str:
        return hashlib.md5(key.encode()).hexdigest()

    def put_enumeration(self, key: str, tables: Any):
        """Cache a JSON-serializable enumeration result"""
        self.db.execute(
            "INSERT OR REPLACE INTO enumeration_cache VALUES (?, ?, ?, ?)",
            (self._hash(key), key, json.dumps(tables), time.time())
        )
        self.db.commit()

    def get_enumeration(self, key: str) -> Optional[Any]:
        cursor = self.db.execute(
            "SELECT payload FROM enumeration_cache WHERE key_hash = ?",
            (self._hash(key),)
        )
        row = cursor.fetchone()
        if row:
            logger.info("cache hit for %s", key)
            return json.loads(row[0])
        return None

    def clear_old_cache(self, max_age_hours: float = 24) -> int:
        """Clear entries older than max_age_hours; returns how many were removed"""
        cutoff_time = time.time() - (max_age_hours * 3600)
        cursor = self.db.execute("DELETE FROM enumeration_cache WHERE timestamp < ?", (cutoff_time,))
        self.db.commit()
        logger.info("cleared %d entries older than %sh", cursor.rowcount, max_age_hours)
        return cursor.rowcount

    def close(self):
        self.db.close()

    def __enter__(self):
        return self

    def __exit__(self, *exc):
        self.close()
