"""groovegan: adversarial generation and evaluation of two-bar EDM drum patterns."""

__version__ = "0.1.0"
