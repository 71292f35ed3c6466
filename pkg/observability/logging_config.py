import logging

import toolkit_config


def setup_logging(level: str | None = None):
    """
    Configure basic logging format for the whole toolkit.
    Call this once from app.py before running anything.
    """
    logging.basicConfig(
        level=getattr(logging, (level or toolkit_config.log_level).upper(), logging.INFO),
        format="%(asctime)s [%(levelname)s] %(name)s - %(message)s",
    )
