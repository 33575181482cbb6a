"""Exact quantum trace and quantum holonomy of stated tangles on triangulated surfaces"""

__version__ = "0.1.0"

from .cli import create_cli as create_cli
from .cli import set_env_config as set_env_config
from .engines import bw_trace as bw_trace
from .engines import check_main_theorem as check_main_theorem
from .engines import trhol as trhol
from .surface import parse_surface as parse_surface
from .tangle import parse_tangle as parse_tangle
