"""Test package for the verification toolkit."""
