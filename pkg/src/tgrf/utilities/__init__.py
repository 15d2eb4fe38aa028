from .directories import (
    tgrf_directory, read_config, write_config, setting, DEFAULTS
)
from .files import (
    md5checksum, array_checksum, lock_file_manager
)
from .converters import (
    format_float, parse_float, parse_float_list, parse_window
)
