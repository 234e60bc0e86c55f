"""Test suite for gammalab."""
