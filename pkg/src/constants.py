"""Shared constants used across the package."""

# Symbols
EMPTY_WORD_TOKEN = "e"
BITS = "01"

# Default limits
DEFAULT_ORDER_CAP = 4096
DEFAULT_SIZE_CAP = 65536
DEFAULT_CLOSURE_ORDER_CAP = 1_000_000
DEFAULT_SVG_SIZE = 512

# Element document grammar
HEADER_KEYWORD = "NV"
MAP_KEYWORD = "MAP"
BLOCK_KEYWORD = "BLOCK"
ARROW = "->"
COMMENT_CHAR = "#"

# Certificate keys
CERT_DIMENSION = "dimension"
CERT_INVARIANT_BLOCK = "invariant_block"
CERT_GENERATOR_PERMUTATIONS = "generator_permutations"
CERT_GROUP_ORDER = "group_order"
CERT_STATUS = "status"
CERT_ELEMENTS = "elements"

# CLI exit codes
EXIT_OK = 0
EXIT_FALSE = 1
EXIT_PARSE_ERROR = 2
EXIT_CAP_EXCEEDED = 3
EXIT_INVALID_ELEMENT = 4

# Configuration field names
CONFIG_ORDER_CAP = "order_cap"
CONFIG_SIZE_CAP = "size_cap"
CONFIG_CLOSURE_ORDER_CAP = "closure_order_cap"
CONFIG_SVG_SIZE = "svg_size"
CONFIG_LOG_LEVEL = "log_level"
CONFIG_LOG_DIR = "log_dir"

# Environment
ENV_PREFIX = "NV_"
ENV_CONFIG_FILE = "NV_CONFIG"
DOTENV_FILE = ".env"
DEFAULT_LOG_LEVEL = "WARNING"
LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL")

# Logging
LOGGER_NAME = "nv_blocks"
LOG_FILE_PREFIX = "nv_blocks_"
LOG_DATE_FORMAT = "%Y%m%d_%H%M%S"
LOG_MESSAGE_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"
LOG_TIMESTAMP_FORMAT = "%Y-%m-%d %H:%M:%S"

# Rendering
SVG_NAMESPACE = "http://www.w3.org/2000/svg"
SVG_GAP_FRACTION = 8  # gap between the two squares is size / SVG_GAP_FRACTION
SVG_LABEL_FONT_SIZE = 14
GOLDEN_ANGLE_DEGREES = 137.508
