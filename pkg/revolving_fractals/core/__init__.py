"""Angles, revolving groups, sequence grammars, IFS and series evaluation."""
