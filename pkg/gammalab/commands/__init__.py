"""Command package for gammalab."""
