# cache_service.py
"""
Redis Caching Service for deterministic search results
Rank reports of the same graph never change, so exact clique searches are stored once
"""

import hashlib
import json
import logging
from typing import Any, Callable, Optional

import redis

from config import Settings, get_settings

logger = logging.getLogger(__name__)


class CacheService:
    """Redis cache for expensive, deterministic computations"""

    def __init__(self, settings: Optional[Settings] = None):
        settings = settings or get_settings()
        self.ttl = settings.cache_ttl
        self.client = None

        if not settings.cache_enabled:
            logger.debug("Cache disabled (RAAG_CACHE_ENABLED not set)")
            return

        try:
            self.client = redis.from_url(settings.redis_url, decode_responses=True)
            self.client.ping()
            logger.info(f"✅ Cache service connected: {settings.redis_url}")
        except Exception as e:
            logger.error(f"❌ Redis connection failed: {e}")
            self.client = None

    @property
    def available(self) -> bool:
        return self.client is not None

    def make_key(self, prefix: str, data: Any) -> str:
        """raag:<prefix>:<md5 of the sorted JSON payload>"""
        content = json.dumps(data, sort_keys=True)
        return f"raag:{prefix}:{hashlib.md5(content.encode()).hexdigest()}"

    def get(self, key: str) -> Optional[dict]:
        if not self.client:
            return None

        try:
            data = self.client.get(key)
            if data:
                logger.info(f"💾 Cache HIT: {key}")
                return json.loads(data)
            return None
        except Exception as e:
            logger.error(f"Cache get error: {e}")
            return None

    def set(self, key: str, value: dict, ttl: Optional[int] = None) -> bool:
        if not self.client:
            return False

        try:
            self.client.setex(key, ttl or self.ttl, json.dumps(value))
            logger.info(f"💾 Cache SET: {key} (TTL: {ttl or self.ttl}s)")
            return True
        except Exception as e:
            logger.error(f"Cache set error: {e}")
            return False

    def fetch(self, prefix: str, payload: Any, compute: Callable[[], dict]) -> dict:
        """Cached value for payload, computing and storing it on a miss"""
        key = self.make_key(prefix, payload)
        cached = self.get(key)
        if cached is not None:
            return cached
        if self.client:
            logger.info(f"🔄 Cache MISS: {key}")
        value = compute()
        self.set(key, value)
        return value

    def get_stats(self) -> dict:
        if not self.client:
            return {"error": "Redis not connected"}

        try:
            info = self.client.info("stats")
            return {
                "hits": info.get("keyspace_hits", 0),
                "misses": info.get("keyspace_misses", 0),
                "keys": self.client.dbsize(),
            }
        except Exception as e:
            return {"error": str(e)}


_cache: Optional[CacheService] = None


def get_cache() -> CacheService:
    """Global cache service, created on first use"""
    global _cache
    if _cache is None:
        _cache = CacheService()
    return _cache
