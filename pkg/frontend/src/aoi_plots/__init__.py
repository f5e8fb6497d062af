"""Static figure rendering for AoI experiment result CSVs."""

from .panels import PANELS, MissingAxisError, panel_series, render_panel
from .results import EXPECTED_HEADER, ResultRow, ResultTable, SchemaError, read_table

__version__ = "0.1.0"
