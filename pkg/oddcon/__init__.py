"""oddcon: exact odd quasi-connections on superdomains."""

__version__ = "0.1.0"
