"""Shallow-transfer language accessor.

Renders source-language text as a faithful, annotated image in a
target-language dialect, driven entirely by declarative lexical data.
"""

from .lexicon import Lexicon, load_lexicon, validate_lexicon
from .pipeline import run_pipeline, translate_text

__version__ = "0.1.0"

__all__ = [
    "Lexicon",
    "load_lexicon",
    "validate_lexicon",
    "run_pipeline",
    "translate_text",
    "__version__",
]
