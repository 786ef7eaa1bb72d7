"""Linear nonlocal games over Z_d: classical values, certificates, bounds."""

from lingames.core import GameMatrix, parse_game, serialize_game, standard_form
from lingames.classical import classical_value, contradiction_number

__all__ = [
    "GameMatrix",
    "classical_value",
    "contradiction_number",
    "parse_game",
    "serialize_game",
    "standard_form",
]

__version__ = "0.1.0"
