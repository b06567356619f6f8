"""Tests for the Menger toolkit."""
