"""
설정 관리 테스트
"""

from kappalat.config import KappaLatSettings, get_settings, load_settings, use_settings


def test_defaults():
    settings = KappaLatSettings()
    assert settings.chain_cap == settings.budget == 1_000_000
    assert settings.max_indecomposables == 20


def test_environment_overrides(monkeypatch):
    monkeypatch.setenv("KAPPALAT_BUDGET", "500")
    monkeypatch.setenv("KAPPALAT_MAX_SETS", "7")
    settings = KappaLatSettings()
    assert settings.chain_cap == 500
    assert settings.set_cap == 7


def test_use_settings_overrides_cached_instance():
    override = get_settings().model_copy(update={"max_chains": 3})
    use_settings(override)
    assert get_settings().chain_cap == 3
    use_settings(None)
    assert get_settings() is load_settings()
