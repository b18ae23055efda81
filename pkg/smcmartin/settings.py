# smcmartin/settings.py
import os
from fractions import Fraction
from functools import lru_cache

from dotenv import load_dotenv, find_dotenv  # type: ignore
from pydantic import BaseModel, ConfigDict

# Load .env (if present)
dotenv_path = find_dotenv(usecwd=True)
if dotenv_path:
    load_dotenv(dotenv_path)
else:
    load_dotenv()


class Settings(BaseModel):
    """Runtime knobs, each overridable through an SMC_* environment variable."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    log_level: str = "WARNING"
    level_cap: int = 1_000_000
    max_target_length: int = 64
    intermediate_cap: int = 1_000_000
    dyadic_precision: int = 16
    series_cap: int = 64
    stream_scan_limit: int = 4096
    harmonic_k: Fraction = Fraction(1, 2)
    cloud_chunk: int = 10_000

    @classmethod
    def from_env(cls) -> "Settings":
        defaults = cls()
        return cls(
            log_level=os.getenv("SMC_LOG_LEVEL", defaults.log_level).upper(),
            level_cap=int(os.getenv("SMC_LEVEL_CAP", defaults.level_cap)),
            max_target_length=int(os.getenv("SMC_MAX_TARGET_LENGTH", defaults.max_target_length)),
            intermediate_cap=int(os.getenv("SMC_INTERMEDIATE_CAP", defaults.intermediate_cap)),
            dyadic_precision=int(os.getenv("SMC_DYADIC_PRECISION", defaults.dyadic_precision)),
            series_cap=int(os.getenv("SMC_SERIES_CAP", defaults.series_cap)),
            stream_scan_limit=int(os.getenv("SMC_STREAM_SCAN_LIMIT", defaults.stream_scan_limit)),
            harmonic_k=Fraction(os.getenv("SMC_HARMONIC_K", str(defaults.harmonic_k))),
            cloud_chunk=int(os.getenv("SMC_CLOUD_CHUNK", defaults.cloud_chunk)),
        )


@lru_cache(maxsize=1)
def get_settings() -> Settings:
    return Settings.from_env()
