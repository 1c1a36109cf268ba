from verba.config import DEFAULT_MAP_CAP, Limits


def test_defaults(monkeypatch):
    for var in ("VERBA_MAP_CAP", "VERBA_TUPLE_BUDGET", "VERBA_THREADS"):
        monkeypatch.delenv(var, raising=False)
    assert Limits.from_env().map_cap == DEFAULT_MAP_CAP


def test_environment_and_override(monkeypatch):
    monkeypatch.setenv("VERBA_MAP_CAP", "123")
    monkeypatch.setenv("VERBA_TUPLE_BUDGET", "456")
    monkeypatch.setenv("VERBA_THREADS", "3")
    lim = Limits.from_env()
    assert (lim.map_cap, lim.tuple_budget, lim.threads) == (123, 456, 3)
    assert Limits.from_env(map_cap=7, threads=None).map_cap == 7
    assert Limits.from_env(map_cap=7).threads == 3
