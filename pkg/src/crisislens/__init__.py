"""Text analytics and network tools for bilingual crisis-period tweet archives."""
__version__ = "0.1.0"
