"""Mechanics package."""
