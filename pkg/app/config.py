import enum
from functools import lru_cache

from pydantic import BaseModel, Field, field_validator
from pydantic_settings import BaseSettings as PydanticBaseSettings
from pydantic_settings import SettingsConfigDict


class Environment(str, enum.Enum):
    TEST = "test"
    LOCAL = "local"
    PRODUCTION = "production"


class BaseSettings(PydanticBaseSettings):
    model_config = SettingsConfigDict(
        env_file=".env",
        env_file_encoding="utf-8",
        extra="ignore",
    )


class BaseAppSettings(BaseSettings):
    VERSION: str = "0.1.0"
    APP_NAME: str = "Finsler Submanifold Engine"

    DEBUG: bool = False
    ENV: Environment = Environment.LOCAL
    LOG_DIR: str = "logs"

    model_config = SettingsConfigDict(env_prefix="APP_")


class EngineSettings(BaseSettings):
    JET_ORDER: int = Field(default=6, ge=6, le=8)
    MAX_PARTIAL_ORDER: int = 4
    EPS_NULL: float = 1e-6
    LIFT_P: float = Field(default=1.0, gt=0)
    DEGENERACY_THRESHOLD: float = 1e-12
    FRAME_PIVOT_THRESHOLD: float = 1e-6

    model_config = SettingsConfigDict(env_prefix="ENGINE_")


class HarnessSettings(BaseSettings):
    DEFAULT_SEED: int = 0xF175
    DEFAULT_POINTS: int = 10
    ASSERTED_TOLERANCE: float = 1e-8
    ORACLE_TOLERANCE: float = 1e-6
    BOUNDARY_MARGIN: float = 1e-3
    MAX_DRAWS: int = 1000
    TEST_FUNCTIONS: int = 5
    COBASIS_DIRECTIONS: int = 20
    DEFINITIONAL_TOLERANCE: float = 1e-9
    VANISHING_TOLERANCE: float = 1e-10
    SCENARIO_DIR: str | None = None

    model_config = SettingsConfigDict(env_prefix="HARNESS_")

    @field_validator("DEFAULT_SEED", mode="before")
    @classmethod
    def parse_hex_seed(cls, value):
        if isinstance(value, str):
            return int(value, 16)
        return value


class Settings(BaseModel):
    BASE: BaseAppSettings = BaseAppSettings()
    ENGINE: EngineSettings = EngineSettings()
    HARNESS: HarnessSettings = HarnessSettings()


@lru_cache()
def get_settings():
    return Settings()
