"""Configuration module for blockadepy."""

import logging

import pydantic_settings


class Settings(pydantic_settings.BaseSettings):
    """Settings for blockadepy.

    Values may be overridden through environment variables prefixed with
    `BLOCKADEPY_`, e.g. `BLOCKADEPY_N_WORKERS=4`.
    """

    model_config = pydantic_settings.SettingsConfigDict(env_prefix="BLOCKADEPY_")

    N_WORKERS: int = 1

    STEADY_STATE_TOLERANCE: float = 1e-9
    HERMITIZATION_LIMIT: float = 1e-8
    G2_FLOOR: float = 1e-12

    EVOLVE_RTOL: float = 1e-10
    EVOLVE_ATOL: float = 1e-12
    EVOLVE_TOLERANCE: float = 1e-8
    EVOLVE_T_MAX: float = 2000.0

    POINTS_1D: int = 201
    POINTS_2D: int = 101

    LOGGING_LEVEL: int = logging.INFO


def get_logger() -> logging.Logger:
    """Gets the blockadepy logger."""
    logger = logging.getLogger("blockadepy")
    if logger.handlers:
        return logger

    logger.setLevel(Settings().LOGGING_LEVEL)
    formatter = logging.Formatter(
        "%(asctime)s - %(name)s - %(levelname)s - %(filename)s:%(lineno)s - %(funcName)s - %(message)s",  # noqa: E501
    )

    handler = logging.StreamHandler()
    handler.setFormatter(formatter)
    logger.addHandler(handler)
    return logger
