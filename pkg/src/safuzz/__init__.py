"""Risk-guided adaptive fuzzing of MiniLang programs."""

__version__ = "0.1.0"
