from .config import Settings, get_settings
from .errors import InputError, NicLabError, PreconditionError, ResourceLimitError
from .logger import NicLogger
