# In-memory result cache for the HTTP surface
import hashlib
import logging
import threading
from collections import OrderedDict
from functools import wraps
from typing import Callable, Optional

from pydantic import BaseModel

from api.config import CACHE_CONFIG
from models.response import OutputRecord

logger = logging.getLogger(__name__)

# Least recently used entries are evicted first
_memory_cache: "OrderedDict[str, OutputRecord]" = OrderedDict()
_lock = threading.Lock()


class CacheManager:
    """
    Bounded LRU cache of OutputRecords. Results depend only on the request,
    so entries never expire.
    """

    @staticmethod
    def _hash_key(key: str) -> str:
        """Generate a hash for the cache key"""
        return hashlib.sha256(key.encode()).hexdigest()

    @staticmethod
    def get_cache(key: str) -> Optional[OutputRecord]:
        if not CACHE_CONFIG["enabled"]:
            return None
        hashed_key = CacheManager._hash_key(key)
        with _lock:
            record = _memory_cache.get(hashed_key)
            if record is not None:
                _memory_cache.move_to_end(hashed_key)
            return record

    @staticmethod
    def set_cache(key: str, value: OutputRecord) -> bool:
        """
        Store a record, evicting the oldest entries beyond max_entries

        Returns:
            True if cached, False when caching is disabled
        """
        if not CACHE_CONFIG["enabled"]:
            return False
        hashed_key = CacheManager._hash_key(key)
        with _lock:
            _memory_cache[hashed_key] = value
            _memory_cache.move_to_end(hashed_key)
            while len(_memory_cache) > CACHE_CONFIG["max_entries"]:
                _memory_cache.popitem(last=False)
        return True

    @staticmethod
    def invalidate_cache(key: str) -> bool:
        hashed_key = CacheManager._hash_key(key)
        with _lock:
            return _memory_cache.pop(hashed_key, None) is not None

    @staticmethod
    def clear() -> None:
        with _lock:
            _memory_cache.clear()

    @staticmethod
    def size() -> int:
        return len(_memory_cache)


def cached(func: Callable[[BaseModel], OutputRecord]) -> Callable[[BaseModel], OutputRecord]:
    """Cache a command keyed by its name and the JSON of its request model"""

    @wraps(func)
    def wrapper(request: BaseModel) -> OutputRecord:
        cache_key = f"{func.__name__}:{request.model_dump_json()}"
        cached_result = CacheManager.get_cache(cache_key)
        if cached_result is not None:
            logger.info(f"Cache hit for {func.__name__}")
            return cached_result

        logger.info(f"Cache miss for {func.__name__}")
        result = func(request)
        CacheManager.set_cache(cache_key, result)
        return result

    return wrapper
