"""Settings configuration for the USV autonomy stack"""

import os
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """Process-level settings; run-level parameters live in the JSON configs"""

    # Logging Configuration
    LOG_LEVEL: str = os.getenv("LOG_LEVEL", "INFO")
    LOG_FILE: str = os.getenv("LOG_FILE", "logs/usv_agent.log")
    LOG_JSON: bool = os.getenv("LOG_JSON", "false").lower() == "true"

    # Output
    OUTPUT_DIR: str = os.getenv("OUTPUT_DIR", "out")
    CSV_FLOAT_FORMAT: str = os.getenv("CSV_FLOAT_FORMAT", "%.6f")
    SCHEMA_VERSION: int = int(os.getenv("SCHEMA_VERSION", "1"))

    # Simulation
    SIM_DT: float = float(os.getenv("SIM_DT", "0.1"))

    # Parallelism
    DEFAULT_JOBS: int = int(os.getenv("DEFAULT_JOBS", "1"))

    model_config = SettingsConfigDict(
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=True,
        extra="ignore",
    )


# Create settings instance
settings = Settings()
