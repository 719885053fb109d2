# qh_moduli/config.py
import logging
import sys

# --- General Configuration ---
APP_NAME = "QHModuli"
VERSION = "1.0.0"

# --- Logging ---
ENGINE_LOG_FILE = "qh_moduli.log"
ENGINE_LOG_LEVEL = logging.INFO
CLI_LOG_FILE = "qh_moduli_cli.log"
CLI_LOG_LEVEL = logging.INFO
# Log Format - Consistent across modules
LOG_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'

# --- Engine Limits ---
# Standard monomials are enumerated breadth first; a quotient larger than this
# is treated as infinite-dimensional.
MAX_STANDARD_MONOMIALS = 5000

# --- Genus / Presentation Defaults ---
DEFAULT_GENUS = 3
SUPPORTED_BUILTINS = {
    (2, 'floer'),
    (3, 'classical'),
    (3, 'quantum'),
}
RING_KINDS = ('classical', 'quantum', 'floer')

# --- Series ---
DEFAULT_SERIES_ORDER = 10
MAX_SERIES_ORDER = 12

# --- Verification ---
VERIFY_RANDOM_SEED = 20240611
VERIFY_RANDOM_SAMPLES = 100
# Brute-force reduction is compared against the Groebner normal form up to this weight.
VERIFY_ORACLE_WEIGHT = 16

# --- CLI Exit Codes ---
EXIT_OK = 0
EXIT_USAGE = 1
EXIT_COMPUTATION = 2
EXIT_VERIFY_FAILED = 3

# --- Output Formats ---
OUTPUT_FORMATS = ('text', 'json', 'csv')


# --- Utility Functions ---
def setup_logger(name: str, level: int, log_file: str | None, console: bool = True):
    """Configures and returns a logger instance."""
    logger = logging.getLogger(name)
    logger.setLevel(level)
    formatter = logging.Formatter(LOG_FORMAT)

    # Handlers are attached once per logger name
    if logger.handlers:
        return logger

    # File Handler
    if log_file:
        try:
            fh = logging.FileHandler(log_file)
            fh.setFormatter(formatter)
            logger.addHandler(fh)
        except Exception as e:
            print(f"Warning: Could not set up file logging to {log_file}: {e}", file=sys.stderr)

    # Console Handler
    if console:
        ch = logging.StreamHandler(sys.stderr)
        ch.setFormatter(formatter)
        logger.addHandler(ch)

    if not logger.handlers:
        logger.addHandler(logging.NullHandler())

    # Prevent duplicate logging if called multiple times
    logger.propagate = False
    return logger


def disable_file_logging(logger: logging.Logger) -> None:
    """Removes file handlers from a logger (used by --no-log-file)."""
    for handler in list(logger.handlers):
        if isinstance(handler, logging.FileHandler):
            logger.removeHandler(handler)
            handler.close()
    if not logger.handlers:
        logger.addHandler(logging.NullHandler())
