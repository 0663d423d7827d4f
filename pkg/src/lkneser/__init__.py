"""Verification laboratory for local Kneser graphs."""
