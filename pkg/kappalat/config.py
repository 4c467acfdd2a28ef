"""
KappaLat - 설정 관리
환경 변수(KAPPALAT_*)와 .env 파일에서 열거 상한 및 실행 옵션을 읽어온다
"""

from functools import lru_cache
from typing import Optional

from dotenv import load_dotenv
from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict

# 환경 변수 로드
load_dotenv()


class KappaLatSettings(BaseSettings):
    """분석 예산 및 실행 설정"""

    model_config = SettingsConfigDict(env_prefix="KAPPALAT_", env_file=".env", extra="ignore")

    budget: int = Field(default=1_000_000, ge=1)  # 공통 열거 상한
    max_chains: Optional[int] = Field(default=None, ge=1)
    max_sets: Optional[int] = Field(default=None, ge=1)
    max_linear_extensions: Optional[int] = Field(default=None, ge=1)
    max_indecomposables: int = Field(default=20, ge=1)
    lambda_search_max_ji: int = Field(default=8, ge=0)
    max_generated_elements: int = Field(default=2 ** 16, ge=1)
    jobs: int = Field(default=1, ge=1)
    log_level: str = "WARNING"

    @property
    def chain_cap(self) -> int:
        return self.max_chains or self.budget

    @property
    def set_cap(self) -> int:
        return self.max_sets or self.budget

    @property
    def linext_cap(self) -> int:
        return self.max_linear_extensions or self.budget


_override: Optional[KappaLatSettings] = None


@lru_cache()
def load_settings() -> KappaLatSettings:
    return KappaLatSettings()


def get_settings() -> KappaLatSettings:
    """CLI 플래그로 덮어쓴 설정이 있으면 그것을, 없으면 환경 기반 설정을 반환"""
    return _override or load_settings()


def use_settings(settings: Optional[KappaLatSettings]) -> None:
    global _override
    _override = settings
