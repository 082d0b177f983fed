"""
Tests for the Redis cache wrapper (no Redis server needed)
"""

import json

import pytest

from cache_service import CacheService
from config import Settings


class FakeRedis:
    """In-memory stand-in for the few redis calls the cache makes"""

    def __init__(self):
        self.store = {}

    def get(self, key):
        return self.store.get(key)

    def setex(self, key, ttl, value):
        self.store[key] = value

    def info(self, section):
        return {"keyspace_hits": 0, "keyspace_misses": 0}

    def dbsize(self):
        return len(self.store)


# ============================================================================
# FIXTURES
# ============================================================================

@pytest.fixture
def disabled():
    return CacheService(Settings(cache_enabled=False))


@pytest.fixture
def cache():
    service = CacheService(Settings(cache_enabled=False))
    service.client = FakeRedis()
    return service


class TestCacheService:
    """Keys, hits and the disabled path"""

    def test_disabled_cache_computes(self, disabled):
        calls = []
        value = disabled.fetch("ranks", {"graph": "x"}, lambda: calls.append(1) or {"vcd": 1})
        assert value == {"vcd": 1}
        assert not disabled.available
        assert disabled.get_stats() == {"error": "Redis not connected"}

    def test_key_ignores_payload_order(self, disabled):
        a = disabled.make_key("ranks", {"graph": "g", "budget": 5})
        b = disabled.make_key("ranks", {"budget": 5, "graph": "g"})
        assert a == b
        assert a.startswith("raag:ranks:")

    def test_second_fetch_hits(self, cache):
        calls = []

        def compute():
            calls.append(1)
            return {"m_all": 3}

        assert cache.fetch("ranks", {"graph": "g"}, compute) == {"m_all": 3}
        assert cache.fetch("ranks", {"graph": "g"}, compute) == {"m_all": 3}
        assert len(calls) == 1

    def test_values_are_json(self, cache):
        cache.set("raag:test:k", {"a": [1, 2]})
        assert json.loads(cache.client.store["raag:test:k"]) == {"a": [1, 2]}
        assert cache.get_stats()["keys"] == 1
