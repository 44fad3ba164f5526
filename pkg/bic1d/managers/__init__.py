"""Managers package."""
