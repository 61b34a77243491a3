"""Test suite for anisolp."""
