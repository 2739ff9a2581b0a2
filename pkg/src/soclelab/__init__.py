"""soclelab: exact-arithmetic verification toolkit over small finite fields."""

__version__ = "0.1.0"
