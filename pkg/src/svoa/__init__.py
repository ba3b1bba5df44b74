"""Exact free-field superconformal algebra sectors, twisted modules and q-characters."""

__version__ = "0.1.0"
