from pesim._core import *  # noqa: F401,F403
from pesim._core import CSV_HEADER, CSV_SCHEMA_VERSION

COLUMNS = CSV_HEADER.split(",")
