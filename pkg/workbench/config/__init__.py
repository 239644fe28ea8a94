import logging.config

from . import settings


def setup(level: str | None = None) -> None:
    """Apply the logging configuration from settings."""
    config = dict(settings.LOGGING)
    if level is not None:
        config["root"] = {**config["root"], "level": level}
        config["loggers"] = {
            name: {**logger, "level": level}
            for name, logger in config["loggers"].items()
        }
    logging.config.dictConfig(config)
