"""Configuration management using Pydantic Settings"""
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """Engine settings loaded from environment variables (prefix CQ_)"""

    model_config = SettingsConfigDict(
        env_file=".env",
        env_prefix="CQ_",
        case_sensitive=False,
        extra="ignore",
    )

    # Logging
    log_level: str = "info"

    # Contour quadrature
    contour_eps: float = 2.0 ** -52  # R = eps^(1/((k+1)(N+1))) on k(N+1) nodes
    contour_oversampling: int = 1

    # Parallelism (results never depend on these)
    max_workers: int = 1
    fft_workers: int = 1

    # Look-ahead solver
    default_block_size: int = 32

    # Runge-Kutta spectral decompositions
    eigvec_cond_limit: float = 1e8
    radius_nudge_factor: float = 0.995
    radius_nudge_retries: int = 5

    # Bessel kernels: ascending series inside this radius, continued fraction outside
    bessel_series_radius: float = 2.0

    # Reference quadrature
    oracle_tol: float = 1e-12

    # Artifacts
    output_dir: str = "output"

    # HTTP service
    api_title: str = "Convolution Quadrature Engine"
    api_version: str = "1.0.0"


# Global settings instance
settings = Settings()
