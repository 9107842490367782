from formal_path_integral.green.representation import GreenRep, GreenValue, build, MODES
from formal_path_integral.green.table import green_rows, green_header, parse_columns, DERIVATIVE_COLUMNS
