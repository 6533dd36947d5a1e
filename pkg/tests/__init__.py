"""Tests for Revolving Fractals."""
