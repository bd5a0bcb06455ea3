"""Budgeted Muchnik definability test and non-periodic witness extraction."""
