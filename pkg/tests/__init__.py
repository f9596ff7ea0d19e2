"""Tests for the Aw-Rascle Riemann toolkit."""
