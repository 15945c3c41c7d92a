from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict


class EngineSettings(BaseSettings):
    """Resolution engine settings."""

    model_config = SettingsConfigDict(
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=True,
        extra="ignore",
    )

    ENGINE_NAME: str = Field(default="Prologue", description="Engine name reported by the engine info")
    ENGINE_VERSION: str = Field(default="0.1.0", description="Engine version reported by the engine info")
    ENGINE_LICENSE: str = Field(default="MIT", description="License of the engine")
    ENGINE_ISO_COMPLIANT: bool = Field(default=False, description="Only a core subset of ISO Prolog is implemented")
    ENGINE_INDEXING: bool = Field(default=True, description="First argument indexing of clause families")
    ENGINE_OCCURS_CHECK: bool = Field(default=False, description="Reject cyclic bindings during unification")
