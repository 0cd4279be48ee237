"""Application configuration using Pydantic Settings."""

from pydantic import Field, field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """Application settings loaded from environment variables."""

    model_config = SettingsConfigDict(
        env_prefix="STREAMSUM_",
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=False,
        extra="ignore",
    )

    # Application Settings
    debug: bool = Field(
        default=False,
        description="Enable debug logging for the streamsum package",
    )
    log_level: str = Field(
        default="INFO",
        description="Logging level (DEBUG, INFO, WARNING, ERROR, CRITICAL)",
    )

    # Ingestion Settings
    strict_order: bool = Field(
        default=False,
        description="Reject out-of-order records instead of reordering them",
    )
    reorder_window_seconds: int = Field(
        default=5,
        ge=0,
        description="Lenient-mode reorder window in seconds",
    )

    # Pipeline Defaults
    languages: str = Field(
        default="es,en,pt",
        description="Comma-separated language codes to summarize",
    )
    warmup_seconds: int = Field(
        default=900,
        gt=0,
        description="Seconds before the start time used to learn the audience rate",
    )
    kld_epsilon: float = Field(
        default=1e-6,
        gt=0.0,
        lt=1.0,
        description="Smoothing floor for game-so-far relative frequencies",
    )
    min_token_len: int = Field(
        default=2,
        ge=1,
        description="Shortest token kept by the tokenizer",
    )

    @field_validator("log_level")
    @classmethod
    def validate_log_level(cls, v: str) -> str:
        """Validate log level is one of the standard levels."""
        valid_levels = ["DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"]
        v_upper = v.upper()
        if v_upper not in valid_levels:
            raise ValueError(f"log_level must be one of {valid_levels}")
        return v_upper

    @property
    def language_list(self) -> list[str]:
        """Configured languages as an ordered, de-duplicated list."""
        return parse_languages(self.languages)


def parse_languages(raw: str) -> list[str]:
    """Split a comma-separated language list.

    Args:
        raw: Value such as "es,en,pt"

    Returns:
        Lowercase codes in their original order, duplicates removed
    """
    seen: list[str] = []
    for part in raw.split(","):
        code = part.strip().lower()
        if code and code not in seen:
            seen.append(code)
    return seen


# Global settings instance
settings = Settings()
