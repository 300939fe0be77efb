"""Exact invariants of linking forms: Witt and double Witt classes, the
covering correspondence between Seifert-type and autometric forms, and the
slice / doubly-slice obstructions they induce for knots.

Everything is computed in exact rational arithmetic.  Approximate numbers
appear only as reporting decorations (angle brackets for certified roots).
"""

__version__ = "1.0.0"
