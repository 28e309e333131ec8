"""Result cache: roundtrip, version tags, atomic writes, failure modes."""

import json
import os

from ns2engine.cache import (ENGINE_VERSION, ENV_CACHE_DIR, ResultCache,
                             cache_roundtrip, default_cache_dir)


def test_roundtrip(tmp_path):
    cache = ResultCache(str(tmp_path))
    assert cache.get("k") is None
    cache.put("k", "payload")
    assert cache.get("k") == "payload"


def test_cache_roundtrip_helper(tmp_path):
    cache = ResultCache(str(tmp_path))
    calls = []

    def compute():
        calls.append(1)
        return "result"

    payload, hit = cache_roundtrip(cache, "key", compute)
    assert (payload, hit) == ("result", False)
    payload, hit = cache_roundtrip(cache, "key", compute)
    assert (payload, hit) == ("result", True)
    assert len(calls) == 1


def test_distinct_keys_do_not_collide(tmp_path):
    cache = ResultCache(str(tmp_path))
    cache.put("a", "1")
    cache.put("b", "2")
    assert cache.get("a") == "1"
    assert cache.get("b") == "2"


def test_version_tag_mismatch_ignored(tmp_path):
    cache = ResultCache(str(tmp_path))
    cache.put("k", "payload")
    path = cache._path("k")
    entry = json.loads(open(path).read())
    entry["version"] = "stale"
    with open(path, "w") as fh:
        fh.write(json.dumps(entry))
    assert cache.get("k") is None
    # recompute overwrites the stale entry
    payload, hit = cache_roundtrip(cache, "k", lambda: "fresh")
    assert (payload, hit) == ("fresh", False)
    assert cache.get("k") == "fresh"
    assert json.loads(open(path).read())["version"] == ENGINE_VERSION


def test_corrupt_entry_is_a_miss(tmp_path):
    cache = ResultCache(str(tmp_path))
    cache.put("k", "payload")
    with open(cache._path("k"), "w") as fh:
        fh.write("{not json")
    assert cache.get("k") is None


def test_no_partial_files_after_put(tmp_path):
    cache = ResultCache(str(tmp_path))
    cache.put("k", "x" * 10000)
    names = os.listdir(str(tmp_path))
    assert all(not n.endswith(".tmp") for n in names)


def test_unusable_directory_disables_cache(tmp_path, capsys):
    # a path below a regular file cannot be created (works even as root,
    # unlike permission bits)
    blocker = tmp_path / "blocker"
    blocker.write_text("")
    cache = ResultCache(str(blocker / "sub"))
    assert not cache.enabled
    cache.put("k", "payload")  # no-op, no exception
    assert cache.get("k") is None
    assert "cache disabled" in capsys.readouterr().err


def test_env_override(tmp_path, monkeypatch):
    monkeypatch.setenv(ENV_CACHE_DIR, str(tmp_path / "envcache"))
    assert default_cache_dir() == str(tmp_path / "envcache")
    cache = ResultCache()
    cache.put("k", "v")
    assert os.path.isdir(str(tmp_path / "envcache"))
    assert cache.get("k") == "v"
