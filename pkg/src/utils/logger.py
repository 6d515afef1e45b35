import logging
from typing import Any, Optional, Union

from src.utils.config import get_settings

Payload = Union[str, dict, Any]


class NicLogger:
    """Structured logging for niclab components"""

    def __init__(self, name: str = "niclab"):
        self.logger = logging.getLogger(name)
        self._configure_logger()

    def _configure_logger(self) -> None:
        """Initialize logger configuration once"""
        if not self.logger.handlers:
            handler = logging.StreamHandler()
            formatter = logging.Formatter(
                '%(asctime)s | %(levelname)-8s | %(action)-22s | %(response)s',
                datefmt='%Y-%m-%d %H:%M:%S'
            )
            handler.setFormatter(formatter)
            self.logger.addHandler(handler)
            self.logger.setLevel(get_settings().log_level)

    def _log(
        self,
        level: int,
        action: str,
        response: Payload,
        exc_info: Optional[Exception] = None
    ) -> None:
        self.logger.log(
            level,
            "-",  # msg is unused, the formatter reads the extras
            extra={'action': action, 'response': response},
            exc_info=exc_info
        )

    def debug(self, action: str, response: Payload) -> None:
        self._log(logging.DEBUG, action, response)

    def info(self, action: str, response: Payload) -> None:
        self._log(logging.INFO, action, response)

    def warn(self, action: str, response: Payload) -> None:
        self._log(logging.WARNING, action, response)

    def error(self, action: str, response: Payload, exc: Optional[Exception] = None) -> None:
        self._log(logging.ERROR, action, response, exc_info=exc)
